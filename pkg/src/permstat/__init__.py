"""Eulerian and Mahonian permutation statistics, their bijections, and exhaustive checks."""

from .perm import Permutation, CyclePathNotation
from .codes import Code, InsertProfile
from .stats import StatDescriptor
from .dist import DistPolynomial, VerificationReport, distribution, verify

__version__ = "0.1.0"
