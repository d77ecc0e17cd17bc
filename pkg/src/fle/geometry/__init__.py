import numpy as np

from .cones import (ActiveSet, ConeError, ConeGenerators, approx_active_sets,
                    extreme_rays, normal_cone_generators, sample_polling_directions,
                    tangent_cone_generators)
from .io import FormatError, dumps_region, load_region, loads_region, save_region
from .projection import ProjectionError, project, project_with_active
from .region import (FeasibleRegion, InfeasiblePointError, RegionError,
                     null_space_basis)


def criticality_measure(region, x, grad):
    """``||P[x - grad] - x||``: zero exactly at first-order stationary points."""
    return float(np.linalg.norm(project(region, x - grad, start=x) - x))


__all__ = [
    "ActiveSet", "ConeError", "ConeGenerators", "FeasibleRegion", "FormatError",
    "InfeasiblePointError", "ProjectionError", "RegionError", "approx_active_sets",
    "criticality_measure", "dumps_region", "extreme_rays", "load_region",
    "loads_region", "normal_cone_generators", "null_space_basis", "project",
    "project_with_active", "sample_polling_directions", "save_region",
    "tangent_cone_generators",
]
