"""Construct, verify, bound, search and simulate multichannel conflict-avoiding codes."""

from .bounds import (
    BoundResult,
    bound,
    bound_restricted,
    bound_weight3,
    bound_weight4,
    bound_weight4_derived,
    j_indicator,
)
from .core import (
    Code,
    CodeParams,
    DifferenceArray,
    PatternType,
    SchedulingPattern,
    VerificationReport,
    canonicalize,
    classify,
    cross_correlation,
    difference_array,
    difference_profile,
    difference_set,
    type_census,
    verify_code,
    verify_definitional,
)

__version__ = "0.1.0"
