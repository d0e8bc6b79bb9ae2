"""Self-recursive radix-2 algorithms for Vandermonde matrices on circular nodes."""

from .complexity import Arithmetic, GdbCount, direct_count, formula_count, measured_count
from .core import (
    Direction,
    Factor,
    FactorKind,
    VanSpec,
    build_factors,
    explicit_matrix,
    make_spec,
    nodes,
    spec_from_delay,
)
from .error_bounds import (
    ErrorModel,
    Sign,
    direct_bound,
    fft_bound,
    gamma,
    measure_forward_error,
    radix2_bound,
)
from .estimator import VandermondeTransformer
from .exceptions import *  # noqa: F401,F403
from .sfg import build_sfg, export_dot, to_json
from .transform import TransformKind, direct_matvec, transform, vanc, vancc, vanccr, vancr

__version__ = "0.1.0"
