"""P1 elasticity studies on the manufactured box."""
from neumann_elasticity.infra.plugins.elasticity.cg_singular import CgSingularStudy
from neumann_elasticity.infra.plugins.elasticity.lagrange import LagrangeStudy
from neumann_elasticity.infra.plugins.elasticity.natural_norm import NaturalNormStudy
from neumann_elasticity.infra.plugins.elasticity.pinpoint import ElasticityPinpointStudy
from neumann_elasticity.infra.plugins.registry import register_study

register_study(ElasticityPinpointStudy("pinpoint-elasticity"))
register_study(LagrangeStudy("lagrange"))
register_study(CgSingularStudy("cg-singular"))
register_study(NaturalNormStudy("natural-norm"))
