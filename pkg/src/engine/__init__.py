from .integrator import (
    default_grid,
    endpoint_values,
    integrate_adjoint,
    integrate_fundamental,
    propagate,
    wronskian,
    wronskian_profile,
)
from .solutions import AdjointSolutions, FundamentalSolutions, SolutionSample, WeylData
from .weyl import adjoint_weyl_solution, boundary_form, weyl_matrix, weyl_solution

__all__ = [
    "AdjointSolutions",
    "FundamentalSolutions",
    "SolutionSample",
    "WeylData",
    "adjoint_weyl_solution",
    "boundary_form",
    "default_grid",
    "endpoint_values",
    "integrate_adjoint",
    "integrate_fundamental",
    "propagate",
    "weyl_matrix",
    "weyl_solution",
    "wronskian",
    "wronskian_profile",
]
