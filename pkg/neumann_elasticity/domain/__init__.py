"""Pure numerical domain: entities, services, solvers and formulations."""
