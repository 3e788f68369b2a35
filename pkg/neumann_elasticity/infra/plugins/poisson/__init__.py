"""Scalar Poisson studies."""
from neumann_elasticity.infra.plugins.poisson.pinpoint import PoissonPinpointStudy
from neumann_elasticity.infra.plugins.registry import register_study

register_study(PoissonPinpointStudy("pinpoint-poisson"))
