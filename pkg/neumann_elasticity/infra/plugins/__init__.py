"""Study registry and formulation plugins."""

import neumann_elasticity.infra.plugins.poisson
import neumann_elasticity.infra.plugins.elasticity
import neumann_elasticity.infra.plugins.mixed
