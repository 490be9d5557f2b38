"""Weaving-link complements: triangulation, angle structures, volumes, bounds."""

__version__ = "0.1.0"

from .angles import AnglePolytope, AngleStructure, assemble_constraints, initial_structure
from .bounds import axis_bounds, bound_report, density_table, filled_bounds
from .diagram import WeaveSpec, make_weave_spec
from .errors import (BoundaryCollapse, DegenerateShape, DomainError, InfeasibleError,
                     MaxIterations, PathError, TopologyError, WeaverError)
from .triangulation import IdealTriangulation, build
from .volume import V_OCT, V_TET, lobachevsky, maximize, volume_of

__all__ = [
    "AnglePolytope", "AngleStructure", "BoundaryCollapse", "DegenerateShape", "DomainError",
    "IdealTriangulation", "InfeasibleError", "MaxIterations", "PathError", "TopologyError",
    "V_OCT", "V_TET", "WeaveSpec", "WeaverError", "assemble_constraints", "axis_bounds",
    "bound_report", "build", "density_table", "filled_bounds", "initial_structure",
    "lobachevsky", "make_weave_spec", "maximize", "volume_of",
]
