"""CLI entry point: one subcommand per study."""
from typing import Annotated, Any, Optional

import typer
from pydantic import ValidationError

import neumann_elasticity.infra.plugins

from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.study import ExperimentConfig
from neumann_elasticity.infra.common import (
    NeumannError,
    get_logger,
    load_app_config,
    load_study_config,
    setup_logging,
)
from neumann_elasticity.infra.table_io import TableIO
from neumann_elasticity.use_cases.run_study import run_eigen_bounds, run_lambda_sweep, run_study

setup_logging()
logger = get_logger(__name__)

app = typer.Typer(help="Pure-Neumann elasticity: kernel handling, solvers and convergence studies.")

MeshOpt = Annotated[str, typer.Option("--mesh", help="Mesh family: uniform or graded")]
LevelsOpt = Annotated[int, typer.Option("--levels", help="Number of refinement levels (>= 2)")]
FirstLevelOpt = Annotated[int, typer.Option("--first-level", help="Refinement level of the coarsest mesh")]
RtolOpt = Annotated[Optional[float], typer.Option("--rtol", help="Relative tolerance on the preconditioned residual")]
AtolOpt = Annotated[Optional[float], typer.Option("--atol", help="Absolute tolerance on the preconditioned residual")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Seed for random initial guesses")]
OutOpt = Annotated[Optional[str], typer.Option("--out", help="Output directory")]
FormatOpt = Annotated[str, typer.Option("--format", help="Table format: csv, json or parquet")]
VtkOpt = Annotated[bool, typer.Option("--vtk", help="Export the finest solution as legacy VTK")]
ParallelOpt = Annotated[bool, typer.Option("--parallel-levels", help="Solve levels concurrently")]
LogLevelOpt = Annotated[Optional[str], typer.Option("--log-level", help="Logging level")]
EnvOpt = Annotated[Optional[str], typer.Option("--env", help="Application environment: local or ci")]
PerturbOpt = Annotated[
    Optional[str], typer.Option("--perturb", help="Six comma-separated rigid-motion coefficients added to f")
]
NameOpt = Annotated[Optional[str], typer.Option("--name", help="Study name used for output files")]


def _parse_lam(value: str) -> Optional[float]:
    if value.strip().lower() in ("inf", "infinity"):
        return None
    try:
        return float(value)
    except ValueError as e:
        raise typer.BadParameter(f"lambda must be a number or 'inf', got '{value}'") from e


def _parse_perturb(value: Optional[str]) -> Optional[list[float]]:
    if value is None:
        return None
    try:
        return [float(v) for v in value.split(",")]
    except ValueError as e:
        raise typer.BadParameter(f"perturb must be comma-separated numbers, got '{value}'") from e


def _stop_rule(rtol: Optional[float], atol: Optional[float], app_config: AppConfig) -> Optional[dict]:
    if rtol is not None and atol is not None:
        raise typer.BadParameter("--rtol and --atol are mutually exclusive")
    if atol is not None:
        return {"mode": "absolute", "tolerance": atol, "max_iterations": app_config.max_iterations}
    if rtol is not None:
        return {"mode": "relative", "tolerance": rtol, "max_iterations": app_config.max_iterations}
    return None


def _build_config(
    name: str,
    formulation: dict[str, Any],
    app_config: AppConfig,
    mesh: str,
    levels: int,
    first_level: int,
    rtol: Optional[float],
    atol: Optional[float],
    seed: Optional[int],
    out: Optional[str],
    fmt: str,
    vtk: bool,
    parallel_levels: bool,
    geometry: str = "example-box",
) -> ExperimentConfig:
    stop = _stop_rule(rtol, atol, app_config)
    if stop is not None:
        formulation["stop"] = stop
    try:
        return ExperimentConfig(
            name=name,
            formulation=formulation,
            mesh={"kind": mesh, "geometry": geometry, "first_level": first_level},
            levels=levels,
            seed=app_config.default_seed if seed is None else seed,
            output={"out_dir": out, "format": fmt, "vtk": vtk},
            parallel_levels=parallel_levels,
        )
    except ValidationError as e:
        raise typer.BadParameter(str(e)) from e


def _prepare(env: Optional[str], log_level: Optional[str]) -> AppConfig:
    app_config = load_app_config(env)
    setup_logging(level=log_level or app_config.log_level, force=True)
    return app_config


def _finish(tables: list) -> None:
    io = TableIO()
    for table in tables:
        typer.echo(io.to_frame(table).to_string(index=False))
    if not all(table.all_converged for table in tables):
        typer.echo("Some solves did not converge", err=True)
        raise typer.Exit(code=1)


def _execute(config: ExperimentConfig, app_config: AppConfig) -> None:
    try:
        if config.formulation.formulation == "eigenbounds":
            table = run_eigen_bounds(config, app_config)
        else:
            table = run_study(config, app_config)
    except NeumannError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e
    _finish([table])


@app.command("poisson-pinpoint")
def poisson_pinpoint(
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 3,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    x0: Annotated[str, typer.Option("--x0", help="Initial guess: zero or random")] = "zero",
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Neumann Poisson problem on the unit cube with the corner value prescribed."""
    app_config = _prepare(env, log_level)
    formulation = {"formulation": "pinpoint-poisson", "strategy": "poisson-corner", "x0": x0}
    config = _build_config(
        name or f"poisson-pinpoint_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels, geometry="unit-cube",
    )
    _execute(config, app_config)


@app.command("elasticity-pinpoint")
def elasticity_pinpoint(
    strategy: Annotated[str, typer.Option("--strategy", help="3circ, 1tri, 3tri or 3dot")] = "3circ",
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 3,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    x0: Annotated[str, typer.Option("--x0", help="Initial guess: zero, rhs or random")] = "zero",
    perturb: PerturbOpt = None,
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Elasticity with the exact displacement prescribed at a few boundary points."""
    app_config = _prepare(env, log_level)
    formulation = {"formulation": "pinpoint-elasticity", "strategy": strategy, "x0": x0, "perturb": _parse_perturb(perturb)}
    config = _build_config(
        name or f"elasticity-pinpoint_{strategy}_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels,
    )
    _execute(config, app_config)


@app.command("lagrange")
def lagrange(
    precond: Annotated[str, typer.Option("--precond", help="b1, be or bm")] = "bm",
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 3,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    perturb: PerturbOpt = None,
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Lagrange multiplier saddle point system solved with MinRes."""
    app_config = _prepare(env, log_level)
    formulation = {"formulation": "lagrange", "precond": precond, "perturb": _parse_perturb(perturb)}
    config = _build_config(
        name or f"lagrange_{precond}_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels,
    )
    _execute(config, app_config)


@app.command("cg-singular")
def cg_singular(
    rhs_proj: Annotated[str, typer.Option("--rhs-proj", help="pz or pt")] = "pt",
    sol_proj: Annotated[str, typer.Option("--sol-proj", help="pz, p or none")] = "p",
    precond: Annotated[str, typer.Option("--precond", help="pzam or pseudo")] = "pzam",
    x0: Annotated[str, typer.Option("--x0", help="Initial guess: zero, rhs or random")] = "zero",
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 3,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    perturb: PerturbOpt = None,
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """CG on the singular system with explicit kernel projectors."""
    app_config = _prepare(env, log_level)
    formulation = {
        "formulation": "cg-singular",
        "rhs_projector": rhs_proj,
        "sol_projector": sol_proj,
        "precond": precond,
        "x0": x0,
        "perturb": _parse_perturb(perturb),
    }
    config = _build_config(
        name or f"cg-singular_{rhs_proj}-{sol_proj}_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels,
    )
    _execute(config, app_config)


@app.command("natural-norm")
def natural_norm(
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 3,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    perturb: PerturbOpt = None,
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """SPD natural-norm system A + W W^T solved with CG."""
    app_config = _prepare(env, log_level)
    formulation = {"formulation": "natural-norm", "perturb": _parse_perturb(perturb)}
    config = _build_config(
        name or f"natural-norm_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels,
    )
    _execute(config, app_config)


@app.command("mixed")
def mixed(
    formulation_kind: Annotated[str, typer.Option("--formulation", help="double or single")] = "double",
    lam: Annotated[str, typer.Option("--lam", help="Lame lambda, a number or 'inf'")] = "1e4",
    lam_sweep: Annotated[bool, typer.Option("--lam-sweep", help="Run lambda in 1, 1e4, 1e8, 1e12, inf")] = False,
    mu: Annotated[float, typer.Option("--mu", help="Shear modulus")] = 1.0,
    mesh: MeshOpt = "uniform",
    levels: LevelsOpt = 2,
    first_level: FirstLevelOpt = 1,
    rtol: RtolOpt = None,
    atol: AtolOpt = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    vtk: VtkOpt = False,
    parallel_levels: ParallelOpt = False,
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Taylor-Hood mixed formulation, double or single saddle point."""
    app_config = _prepare(env, log_level)
    if formulation_kind not in ("double", "single"):
        raise typer.BadParameter(f"--formulation must be double or single, got '{formulation_kind}'")
    formulation = {
        "formulation": f"mixed-{formulation_kind}",
        "material": {"mu": mu, "lam": _parse_lam(lam)},
    }
    config = _build_config(
        name or f"mixed-{formulation_kind}_{mesh}", formulation, app_config, mesh, levels, first_level,
        rtol, atol, seed, out, fmt, vtk, parallel_levels,
    )
    if not lam_sweep:
        _execute(config, app_config)
        return
    try:
        results = run_lambda_sweep(config, app_config)
    except NeumannError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e
    for value, table in results:
        typer.echo(f"lambda = {'inf' if value is None else f'{value:g}'}: iterations {[row.iters for row in table.rows]}")
    _finish([table for _, table in results])


@app.command("eigenbounds")
def eigenbounds(
    precond: Annotated[str, typer.Option("--precond", help="be or bm")] = "be",
    levels: LevelsOpt = 2,
    first_level: FirstLevelOpt = 0,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
    name: NameOpt = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Spectral bounds of the preconditioned Lagrange system on the unit cube."""
    app_config = _prepare(env, log_level)
    formulation = {"formulation": "eigenbounds", "precond": precond}
    config = _build_config(
        name or f"eigenbounds_{precond}", formulation, app_config, "uniform", levels, first_level,
        None, None, None, out, fmt, False, False, geometry="unit-cube",
    )
    _execute(config, app_config)


@app.command("run-study")
def run_preset(
    study_id: str = typer.Argument(..., help="Study preset under config/studies/"),
    config_path: Annotated[Optional[str], typer.Option("--config", help="Explicit preset path")] = None,
    log_level: LogLevelOpt = None,
    env: EnvOpt = None,
):
    """Run a study preset."""
    app_config = _prepare(env, log_level)
    try:
        config = load_study_config(study_id, config_path)
    except NeumannError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e
    _execute(config, app_config)


if __name__ == "__main__":
    app()
