"""Study orchestrator."""
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from neumann_elasticity import __version__
from neumann_elasticity.domain.entities.app_config import AppConfig
from neumann_elasticity.domain.entities.forms import ElasticStiffness, VectorMass
from neumann_elasticity.domain.entities.study import (
    LAMBDA_SWEEP,
    ConvergenceRow,
    ConvergenceTable,
    EigenBoundsRow,
    EigenBoundsTable,
    ExperimentConfig,
)
from neumann_elasticity.domain.formulations.eigen_bounds import eigen_bounds
from neumann_elasticity.domain.formulations.lagrange import build_lagrange
from neumann_elasticity.domain.formulations.preconditioners import riesz_matrix_BE, riesz_matrix_BM
from neumann_elasticity.domain.plugins.base import LevelSolution, StudyPlugin, StudyProblem
from neumann_elasticity.domain.services.assembly import assemble_form
from neumann_elasticity.domain.services.convergence_service import compute_rates
from neumann_elasticity.domain.services.function_space import Family, FunctionSpace
from neumann_elasticity.domain.services.rigid import rigid_basis
from neumann_elasticity.infra.common import ConfigError, OutputPathBuilder, get_clock, get_logger
from neumann_elasticity.infra.plugins import registry
from neumann_elasticity.use_cases.steps.build_levels import LevelMesh, build_levels
from neumann_elasticity.use_cases.steps.emit_table import emit_field, emit_table
from neumann_elasticity.use_cases.steps.measure_level import measure_level

logger = get_logger(__name__)


def run_study(config: ExperimentConfig, app_config: AppConfig, emit: bool = True) -> ConvergenceTable:
    """
    Run a convergence study.

    Args:
        config: Study configuration
        app_config: Application configuration
        emit: Write the table (and VTK, if requested) to the output directory

    Returns:
        Convergence table; non-converged solves are recorded in their rows
    """
    formulation = config.formulation.formulation
    if formulation == "eigenbounds":
        raise ConfigError("eigenbounds studies produce spectral tables, use run_eigen_bounds")
    plugin = registry.get_study(formulation)

    logger.info("Starting study: %s (%s, %s mesh, %d levels)", config.name, formulation, config.mesh.kind, config.levels)
    clock = get_clock()
    study_start = clock.ticks_ms()

    levels = step_build_meshes(config)
    problem = step_prepare(plugin, config, levels[-1])
    solutions = step_solve_levels(plugin, problem, levels, config, app_config)
    table = ConvergenceTable(rows=step_measure(problem, levels, solutions), config=config, version=__version__)

    if emit:
        step_emit(table, config, app_config, levels[-1].level, solutions[-1][0])

    logger.info(
        "Study completed: %s, rates %s, all converged: %s (total time: %.2f seconds)",
        config.name,
        ["-" if r is None else f"{r:.2f}" for r in table.rates()],
        table.all_converged,
        (clock.ticks_ms() - study_start) / 1000.0,
    )
    return table


def step_build_meshes(config: ExperimentConfig) -> list[LevelMesh]:
    """Step: Build the mesh sequence."""
    return build_levels(config.mesh, config.levels)


def step_prepare(plugin: StudyPlugin, config: ExperimentConfig, finest: LevelMesh) -> StudyProblem:
    """Step: Level-independent setup on the finest mesh."""
    return plugin.prepare(config, finest.mesh)


def _solve_one(
    plugin: StudyPlugin,
    problem: StudyProblem,
    item: LevelMesh,
    config: ExperimentConfig,
    app_config: AppConfig,
) -> tuple[LevelSolution, float]:
    clock = get_clock()
    start = clock.ticks_ms()
    rng = np.random.default_rng([config.seed, item.level])
    solution = plugin.solve_level(problem, item.mesh, config, app_config, rng)
    wall_ms = clock.ticks_ms() - start
    logger.info(
        "Level %d: %d dofs, %d iterations (%s) in %.1f ms",
        item.level,
        solution.ndof,
        solution.report.iterations,
        solution.report.stop_reason,
        wall_ms,
    )
    if not solution.report.converged:
        logger.warning("Level %d did not converge: %s", item.level, solution.report.stop_reason)
    return solution, wall_ms


def step_solve_levels(
    plugin: StudyPlugin,
    problem: StudyProblem,
    levels: Sequence[LevelMesh],
    config: ExperimentConfig,
    app_config: AppConfig,
) -> list[tuple[LevelSolution, float]]:
    """Step: Assemble and solve every level, concurrently if configured."""
    if config.parallel_levels and len(levels) > 1:
        with ThreadPoolExecutor(max_workers=len(levels)) as pool:
            return list(pool.map(lambda item: _solve_one(plugin, problem, item, config, app_config), levels))
    return [_solve_one(plugin, problem, item, config, app_config) for item in levels]


def step_measure(
    problem: StudyProblem,
    levels: Sequence[LevelMesh],
    solutions: Sequence[tuple[LevelSolution, float]],
) -> list[ConvergenceRow]:
    """Step: Errors, orthogonality residuals and rates."""
    rows = []
    for item, (solution, wall_ms) in zip(levels, solutions):
        measures = measure_level(problem, solution)
        rows.append(
            ConvergenceRow(
                level=item.level,
                ndof=solution.ndof,
                h1_error=measures.h1_error,
                iters=solution.report.iterations,
                orth_L2=measures.orth_L2,
                orth_l2=measures.orth_l2,
                wall_ms=wall_ms,
                converged=solution.report.converged,
            )
        )
    for row, rate in zip(rows, compute_rates([row.h1_error for row in rows])):
        row.rate = rate
    return rows


def step_emit(
    table: ConvergenceTable,
    config: ExperimentConfig,
    app_config: AppConfig,
    finest_level: int,
    finest_solution: Optional[LevelSolution],
    suffix: Optional[str] = None,
) -> None:
    """Step: Write the table and, if requested, the finest solution."""
    emit_table(table, config.output, app_config, config.name, suffix)
    if config.output.vtk and finest_solution is not None:
        emit_field(finest_solution.field, config.output, app_config, config.name, finest_level)


def run_lambda_sweep(
    config: ExperimentConfig,
    app_config: AppConfig,
    lams: Sequence[Optional[float]] = LAMBDA_SWEEP,
    emit: bool = True,
) -> list[tuple[Optional[float], ConvergenceTable]]:
    """Run a mixed study once per lambda; tables are suffixed with the lambda value."""
    results = []
    for lam in lams:
        material = config.formulation.material.model_copy(update={"lam": lam})
        formulation = config.formulation.model_copy(update={"material": material})
        study = config.model_copy(update={"formulation": formulation})
        table = run_study(study, app_config, emit=False)
        if emit:
            emit_table(table, config.output, app_config, config.name, OutputPathBuilder.lam_suffix(lam))
        results.append((lam, table))
    return results


def run_eigen_bounds(config: ExperimentConfig, app_config: AppConfig, emit: bool = True) -> EigenBoundsTable:
    """
    Spectral bounds of the preconditioned Lagrange system over a mesh sequence.

    Preconditioner ``be`` uses diag(A + W W^T, I), ``bm`` uses diag(A + M, I).
    """
    precond_id = config.formulation.precond or "be"
    if precond_id not in ("be", "bm"):
        raise ConfigError(f"Eigen bounds support preconditioners be and bm, got '{precond_id}'")
    material = config.formulation.material

    logger.info("Starting eigen bounds: %s (%s, %d levels)", config.name, precond_id, config.levels)
    rows = []
    for item in step_build_meshes(config):
        space = FunctionSpace(item.mesh, Family.P1_VECTOR)
        A = assemble_form(ElasticStiffness(mu=material.mu, lam=material.lam), space, space)
        M = assemble_form(VectorMass(), space, space)
        W = rigid_basis(space, "L2", mass=M).W
        system = build_lagrange(A, W)
        N = riesz_matrix_BE(A, W) if precond_id == "be" else riesz_matrix_BM(A, M)
        bounds = eigen_bounds(system, N, app_config.dense_limit)
        logger.info(
            "Level %d: [%.6f, %.6f] U [%.6f, %.6f], kappa %.6f",
            item.level, bounds.neg_min, bounds.neg_max, bounds.pos_min, bounds.pos_max, bounds.kappa,
        )
        rows.append(EigenBoundsRow(level=item.level, ndof=system.dim, **bounds.model_dump()))

    table = EigenBoundsTable(rows=rows, config=config, version=__version__)
    if emit:
        emit_table(table, config.output, app_config, config.name)
    return table
