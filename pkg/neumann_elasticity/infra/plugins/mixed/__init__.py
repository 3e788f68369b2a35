"""Mixed displacement-pressure studies."""
from neumann_elasticity.infra.plugins.mixed.study import MixedStudy
from neumann_elasticity.infra.plugins.registry import register_study

register_study(MixedStudy("mixed-double", single_saddle=False))
register_study(MixedStudy("mixed-single", single_saddle=True))
