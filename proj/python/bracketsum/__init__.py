"""Exponential sums with phase xi*n*floor(n*sqrt(k)) and their
circle-method decomposition: exact Q(sqrt(k)) frequency arithmetic,
Gauss/Fresnel factors, arc classification, Heisenberg-orbit diagnostics
and oscillation-seminorm experiments."""

from ._bracketsum import *  # noqa: F401,F403
from ._bracketsum import __doc__ as _core_doc  # noqa: F401
