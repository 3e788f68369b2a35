"""Convergence rate arithmetic."""
import math
from typing import Optional, Sequence


def convergence_rate(coarse: Optional[float], fine: Optional[float], ratio: float = 2.0) -> Optional[float]:
    """log(e_coarse / e_fine) / log(ratio); None when either error is missing or not positive."""
    if coarse is None or fine is None or coarse <= 0.0 or fine <= 0.0:
        return None
    return math.log(coarse / fine) / math.log(ratio)


def compute_rates(errors: Sequence[Optional[float]], ratio: float = 2.0) -> list[Optional[float]]:
    """Rates between consecutive levels; the first level has none."""
    rates: list[Optional[float]] = [None]
    for coarse, fine in zip(errors[:-1], errors[1:]):
        rates.append(convergence_rate(coarse, fine, ratio))
    return rates[: len(errors)]
