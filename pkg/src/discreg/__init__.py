"""Exact higher discrete derivatives of indicator functions of finite integer sets."""

from .diffcalc import LatticeFn, chi_derivative, forward_difference, kth_derivative
from .intset import IntSet, boundary_left, boundary_right, parse_set
from .norms import INF, NormValue, lp_norm
from .report import BoundReport

__all__ = ["IntSet", "LatticeFn", "NormValue", "BoundReport", "INF", "parse_set",
           "boundary_left", "boundary_right", "chi_derivative", "forward_difference",
           "kth_derivative", "lp_norm"]
__version__ = "0.1.0"
