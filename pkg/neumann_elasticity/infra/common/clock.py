"""Clock abstraction so timings and timestamps can be pinned in tests."""
import time
from abc import ABC, abstractmethod
from datetime import datetime, timezone
from typing import Optional


class Clock(ABC):
    """Abstract clock interface for wall time and elapsed-time measurement."""

    @abstractmethod
    def now(self) -> datetime:
        """Get current UTC datetime."""
        pass

    @abstractmethod
    def ticks_ms(self) -> float:
        """Monotonic milliseconds, only meaningful as differences."""
        pass

    def now_iso(self) -> str:
        """Get current UTC datetime as ISO string."""
        return self.now().isoformat()

    def stamp(self) -> str:
        """Timestamp safe for file names."""
        return self.now().isoformat().replace(":", "-").split(".")[0]


class SystemClock(Clock):
    """System clock implementation using real time."""

    def now(self) -> datetime:
        return datetime.now(timezone.utc)

    def ticks_ms(self) -> float:
        return time.perf_counter() * 1000.0


class FrozenClock(Clock):
    """Clock that never advances."""

    def __init__(self, at: datetime | None = None):
        self._at = at or datetime(2024, 1, 1, tzinfo=timezone.utc)

    def now(self) -> datetime:
        return self._at

    def ticks_ms(self) -> float:
        return 0.0


# Default instance
_default_clock: Optional[Clock] = None


def get_clock() -> Clock:
    """Get the default clock instance."""
    global _default_clock
    if _default_clock is None:
        _default_clock = SystemClock()
    return _default_clock


def set_clock(clock: Clock | None) -> None:
    """Set the default clock instance (None restores the system clock)."""
    global _default_clock
    _default_clock = clock
