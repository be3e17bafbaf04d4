"""Exact digit-level bijection between the reals and a double-covered Sierpinski set,
with the arithmetic it induces and a calculus built on that arithmetic."""

from .arithmetic import (
    REAL,
    SIERPINSKI,
    BijectionContext,
    embed_natural,
    negate,
    odot,
    ominus,
    oplus,
    oslash,
    power,
    repeated_sum,
)
from .calculus import PullbackFunction, derivative, integrate, integral_function, laplacian
from .digits import PeriodicDigits, evaluate, expand, merge_binary, normalize, rebase_tag, split_binary, truncate
from .errors import (
    DigitOutOfRange,
    DivisionByZeroPrime,
    ExpansionTooLong,
    ForbiddenPair,
    InconsistentSide,
    InvalidResolution,
    MissingAntiderivative,
    MissingDerivative,
    NotDifferentiable,
    NotInSet,
    SierpcalcError,
    ToleranceNotMet,
)
from .figures import RenderConfig
from .fourier import FourierSeries, analyze, basis_on_S, reconstruct, scalar_product
from .functions import from_definition, from_expression, from_piecewise, step_function
from .sierpinski import (
    Case,
    Side,
    SierpinskiPoint,
    classify_side,
    forward,
    inverse,
    sample_cells,
)

__version__ = "0.1.0"
