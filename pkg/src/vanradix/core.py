"""Vandermonde instances on equally spaced circular nodes and their sparse factors.

A :class:`VanSpec` fixes ``N = 2**t`` nodes ``r * exp(+-j(theta + 2 pi k / N))``.
:func:`build_factors` unrolls the radix-2 recursion into an ordered list of
:class:`Factor` stages whose product (applied first to last) is the full
Vandermonde matrix. The transform, the GDB counter and the signal flow graph
exporter all consume the same stage list.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._validation import check_power_of_two
from .exceptions import RadiusOutOfRange, SizeTooLarge

TWO_PI = 2.0 * math.pi
DEFAULT_MAX_DENSE = 8192

# theta is split as hi + lo with hi on a 2**-30 grid, so l * hi is exact in
# double precision for every l below 2**20.
_THETA_SPLIT = 2.0**30
_LOG_MAX = math.log(np.finfo(np.float64).max)


class Direction(enum.Enum):
    COUNTERCLOCKWISE = "ccw"
    CLOCKWISE = "cw"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.COUNTERCLOCKWISE else -1

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "ccw": cls.COUNTERCLOCKWISE,
            "counterclockwise": cls.COUNTERCLOCKWISE,
            "cw": cls.CLOCKWISE,
            "clockwise": cls.CLOCKWISE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown direction {value!r}") from None


@dataclass(frozen=True)
class VanSpec:
    """One Vandermonde instance. Build through :func:`make_spec`."""

    n: int
    theta: float
    radius: float
    direction: Direction

    def __post_init__(self):
        check_power_of_two(self.n)
        if not 0.0 <= self.theta < TWO_PI:
            raise ValueError(f"theta must lie in [0, 2pi), got {self.theta!r}")
        if not self.radius >= 1.0 or not math.isfinite(self.radius):
            raise RadiusOutOfRange(f"radius must be a finite real >= 1, got {self.radius!r}")

    @property
    def t(self) -> int:
        return self.n.bit_length() - 1

    @property
    def sign(self) -> int:
        return self.direction.sign

    def half(self) -> "VanSpec":
        """Spec of the even-node subproblem: same theta, half the size, unit radius."""
        return VanSpec(self.n // 2, self.theta, 1.0, self.direction)


def _normalize_theta(theta: float) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    reduced = theta % TWO_PI
    # a tiny negative theta rounds up to exactly 2pi
    return 0.0 if reduced >= TWO_PI else reduced


def make_spec(n, theta=0.0, radius=1.0, direction=Direction.CLOCKWISE) -> VanSpec:
    check_power_of_two(n)
    radius = float(radius)
    if not radius >= 1.0:
        raise RadiusOutOfRange(f"radius must be >= 1, got {radius!r}")
    return VanSpec(int(n), _normalize_theta(theta), radius, Direction.parse(direction))


def spec_from_delay(n, freq_hz, tau_seconds, radius=1.0) -> VanSpec:
    """Clockwise spec whose rotation is the phase ``2 pi f tau`` of a true time delay."""
    if freq_hz < 0 or tau_seconds < 0:
        raise ValueError("frequency and delay must be non-negative")
    turns = (float(freq_hz) * float(tau_seconds)) % 1.0
    return make_spec(n, TWO_PI * turns, radius, Direction.CLOCKWISE)


def unit_roots(k, n: int, sign: int = 1) -> np.ndarray:
    """``exp(sign * 2 pi j k / n)`` for integer ``k``, accurate to a couple of ulps.

    The index is reduced exactly in integer arithmetic to an angle of at most
    pi/4, and the remaining quarter turns are applied by swapping/negating
    components, which is exact.
    """
    k = np.asarray(k, dtype=np.int64)
    m = np.mod(k, n)
    m = np.where(2 * m > n, m - n, m)  # (-n/2, n/2]
    quarter = np.rint(4 * m / n).astype(np.int64)  # nearest multiple of n/4
    rem = 4 * m - quarter * n  # |rem| <= n/2
    angle = (math.pi / 2.0) * (rem / n)
    c, s = np.cos(angle), np.sin(angle)
    q = np.mod(quarter, 4)
    re = np.select([q == 0, q == 1, q == 2], [c, -s, -c], s)
    im = np.select([q == 0, q == 1, q == 2], [s, c, -s], -c)
    return re + 1j * (im if sign > 0 else -im)


def nodes(spec: VanSpec) -> np.ndarray:
    """The ``N`` nodes, node ``k`` being ``r * exp(+-j(theta + 2 pi k / N))``."""
    rotation = np.exp(spec.sign * 1j * spec.theta)
    return spec.radius * (rotation * unit_roots(np.arange(spec.n), spec.n, spec.sign))


class FactorKind(enum.Enum):
    RADIUS_DIAGONAL = "radius_diagonal"
    SCALAR_BLOCK = "scalar_block"
    BUTTERFLY = "butterfly"
    DELAY_DIAGONAL = "delay_diagonal"
    BASE = "base"
    EVEN_ODD_PERMUTATION_TRANSPOSE = "even_odd_permutation_transpose"


@dataclass(frozen=True, eq=False)
class Factor:
    """One sparse stage: ``blocks`` copies of a ``size``-square block on the diagonal.

    Payload by kind:

    * RADIUS_DIAGONAL: float array ``r**l``, ``l < N`` (``blocks == 1``)
    * SCALAR_BLOCK: complex ``c`` scaling the lower half of each block
    * DELAY_DIAGONAL: complex array of length ``size // 2`` scaling the lower half
    * BASE: complex ``w`` of the 2x2 leaf ``[[1, w], [1, -w]]``
    * BUTTERFLY, EVEN_ODD_PERMUTATION_TRANSPOSE: ``None``
    """

    kind: FactorKind
    size: int
    blocks: int
    level: int
    payload: Any = None

    @property
    def n(self) -> int:
        return self.size * self.blocks

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply the stage along the last axis. ``x`` is not modified."""
        kind, h = self.kind, self.size // 2
        if kind is FactorKind.RADIUS_DIAGONAL:
            return x * self.payload
        lead = x.shape[:-1]
        xb = x.reshape(*lead, self.blocks, self.size)
        if kind is FactorKind.SCALAR_BLOCK:
            out = xb.copy()
            out[..., h:] = self.payload * xb[..., h:]
        elif kind is FactorKind.BUTTERFLY:
            a, b = xb[..., :h], xb[..., h:]
            out = np.concatenate([a + b, a - b], axis=-1)
        elif kind is FactorKind.DELAY_DIAGONAL:
            out = xb.copy()
            out[..., h:] = self.payload * xb[..., h:]
        elif kind is FactorKind.BASE:
            a, b = xb[..., 0], xb[..., 1]
            p = self.payload * b
            out = np.stack([a + p, a - p], axis=-1)
        else:
            out = xb[..., _interleave(self.size)]
        return out.reshape(x.shape)

    def to_dense(self) -> np.ndarray:
        return self.apply(np.eye(self.n, dtype=np.complex128)).T


@functools.lru_cache(maxsize=None)
def _interleave(size: int) -> np.ndarray:
    """Gather index of the transposed even-odd permutation on one block."""
    h = size // 2
    idx = np.empty(size, dtype=np.intp)
    idx[0::2] = np.arange(h)
    idx[1::2] = np.arange(h, size)
    idx.flags.writeable = False
    return idx


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def radius_powers(spec: VanSpec) -> np.ndarray:
    """``r**l`` for ``l < N``; raises if ``r**(N-1)`` overflows."""
    if (spec.n - 1) * math.log(spec.radius) >= _LOG_MAX:
        raise RadiusOutOfRange(f"radius**{spec.n - 1} overflows for radius {spec.radius!r}")
    return np.power(spec.radius, np.arange(spec.n, dtype=np.float64))


@functools.lru_cache(maxsize=256)
def build_factors(spec: VanSpec) -> tuple[Factor, ...]:
    """Fully unrolled factorization, in application order.

    Optional radius diagonal, then per level ``s = 0..t-2`` the triple
    (scalar block, butterfly, delay diagonal) on ``2**s`` blocks of size
    ``N / 2**s``, then the ``N/2`` leaves, then the transposed even-odd
    permutations from the innermost level outwards.
    """
    n, t, sign = spec.n, spec.t, spec.sign
    stages: list[Factor] = []
    if spec.radius != 1.0:
        gains = radius_powers(spec)
        stages.append(Factor(FactorKind.RADIUS_DIAGONAL, n, 1, 0, _frozen(gains)))
    for s in range(t - 1):
        size, blocks = n >> s, 1 << s
        h = size // 2
        # theta * h is exact: h is a power of two
        c = complex(np.exp(sign * 1j * (spec.theta * h)))
        delays = _frozen(unit_roots(np.arange(h), size, sign))
        stages.append(Factor(FactorKind.SCALAR_BLOCK, size, blocks, s, c))
        stages.append(Factor(FactorKind.BUTTERFLY, size, blocks, s))
        stages.append(Factor(FactorKind.DELAY_DIAGONAL, size, blocks, s, delays))
    leaf = complex(np.exp(sign * 1j * spec.theta))
    stages.append(Factor(FactorKind.BASE, 2, n // 2, t - 1, leaf))
    for s in reversed(range(t - 1)):
        stages.append(Factor(FactorKind.EVEN_ODD_PERMUTATION_TRANSPOSE, n >> s, 1 << s, s))
    return tuple(stages)


@functools.lru_cache(maxsize=None)
def output_gather(n: int) -> np.ndarray:
    """Single gather equivalent to all permutation stages of an ``n``-point factorization."""
    t = check_power_of_two(n)
    idx = np.arange(n)
    for s in reversed(range(t - 1)):
        perm = Factor(FactorKind.EVEN_ODD_PERMUTATION_TRANSPOSE, n >> s, 1 << s, s)
        idx = perm.apply(idx)
    return _frozen(np.ascontiguousarray(idx))


def _column_phases(spec: VanSpec) -> np.ndarray:
    """``r**l * exp(+-j l theta)`` for every column ``l``, with exact argument reduction."""
    sign, n = spec.sign, spec.n
    l = np.arange(n, dtype=np.float64)
    hi = math.floor(spec.theta * _THETA_SPLIT) / _THETA_SPLIT
    lo = spec.theta - hi
    phase = np.exp(sign * 1j * (l * hi)) * np.exp(sign * 1j * (l * lo))
    if spec.radius != 1.0:
        phase = phase * radius_powers(spec)
    return phase


def _check_dense_size(spec: VanSpec, max_size: int):
    if spec.n > max_size:
        raise SizeTooLarge(f"N={spec.n} exceeds the dense oracle cap {max_size}")


def explicit_matrix(spec: VanSpec, max_size: int = DEFAULT_MAX_DENSE) -> np.ndarray:
    """Dense ``N x N`` matrix ``[node_k ** l]``, each entry from exponentials (no power chains)."""
    _check_dense_size(spec, max_size)
    n = spec.n
    k = np.arange(n)
    roots = unit_roots(k, n, spec.sign)
    return roots[np.outer(k, k) % n] * _column_phases(spec)
