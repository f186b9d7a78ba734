"""Traces of inverse Gram powers of positive upper bidiagonal matrices.

Four recurrence engines compute ``J_M(B) = Tr((B^T B)^-M)``:

``kyn11``   subtractive diagonal recurrence (:mod:`bidiagtrace.kyn11`)
``ykn12``   subtraction-free diagonal recurrence (:mod:`bidiagtrace.ykn12`)
``ykyy14``  determinant-derivative formula with factorial scaling (:mod:`bidiagtrace.ykyy14`)
``new``     factorial-free, subtraction-free formula (:mod:`bidiagtrace.unified`)

and :mod:`bidiagtrace.oracle` checks them densely.  ``theta_M = J_M^(-1/(2M))``
is an increasing sequence of lower bounds of the smallest singular value.
"""

from ._backend import active as active_kernels
from .bounds import BoundSequence, bound_report, theta, theta_sequence
from .core import BidiagonalMatrix, Ratios, make_bidiagonal, ratios
from .engines import METHODS, TraceTable, trace_table
from .errors import (
    BidiagError,
    CancellationWarning,
    ComplexityGuard,
    DimensionMismatch,
    FactorialOverflow,
    MonotonicityViolation,
    NonFiniteEntry,
    NonPositiveEntry,
    Overflow,
    ParseError,
    TraceBreakdown,
    ValidationError,
)
from .kyn11 import DiagTable, diag_first_order, diag_powers_subtractive, trace_kyn11
from .oracle import (
    gram_inverse_power,
    invert_bidiagonal,
    path_sum_g,
    path_sum_gtilde,
    sigma_min_oracle,
    trace_oracle,
)
from .unified import (
    UnifiedTables,
    trace_identities_j2_j3,
    trace_new,
    unified_tables,
    verify_transforms,
)
from .ykn12 import GTables, diag_powers_subfree, g_tables, trace_ykn12
from .ykyy14 import BinomialCache, HTables, h_tables, trace_ykyy14

__version__ = "0.1.0"
