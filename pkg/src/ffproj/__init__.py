"""Exact experiments on projections of point sets over prime fields."""
from .errors import FFError
from .families import SubspaceFamily
from .gen import Rng
from .project import PointSet
from .report import Report
from .subspace import Subspace, from_vectors

__all__ = ["FFError", "PointSet", "Report", "Rng", "Subspace", "SubspaceFamily", "from_vectors"]
__version__ = "0.1.0"
