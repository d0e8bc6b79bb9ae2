"""Fast radix-2 Vandermonde matrix-vector products and the direct oracle.

All entry points accept a single vector of length ``N`` or a batch of shape
``(m, N)`` (one vector per row) and never modify their input.
"""

from __future__ import annotations

import enum

import numpy as np

from ._validation import check_vectors
from .core import (
    DEFAULT_MAX_DENSE,
    Direction,
    FactorKind,
    VanSpec,
    _check_dense_size,
    _column_phases,
    build_factors,
    output_gather,
    unit_roots,
)
from .exceptions import SpecMismatch


class TransformKind(enum.Enum):
    VANC = "vanc"
    VANCC = "vancc"
    VANCR = "vancr"
    VANCCR = "vanccr"

    @property
    def direction(self) -> Direction:
        if self in (TransformKind.VANC, TransformKind.VANCR):
            return Direction.CLOCKWISE
        return Direction.COUNTERCLOCKWISE

    @property
    def allows_radius(self) -> bool:
        return self in (TransformKind.VANCR, TransformKind.VANCCR)

    @classmethod
    def parse(cls, value) -> "TransformKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown transform kind {value!r}") from None


def check_compatible(kind, spec: VanSpec) -> TransformKind:
    kind = TransformKind.parse(kind)
    if spec.direction is not kind.direction:
        raise SpecMismatch(f"{kind.value} needs {kind.direction.name.lower()} nodes, "
                           f"spec is {spec.direction.name.lower()}")
    if not kind.allows_radius and spec.radius != 1.0:
        raise SpecMismatch(f"{kind.value} needs radius 1, got {spec.radius}")
    return kind


def _run_stages(x: np.ndarray, spec: VanSpec) -> np.ndarray:
    for factor in build_factors(spec):
        if factor.kind is FactorKind.EVEN_ODD_PERMUTATION_TRANSPOSE:
            continue
        x = factor.apply(x)
    return x[..., output_gather(spec.n)]


def _fast(kind, z, spec):
    check_compatible(kind, spec)
    return _run_stages(check_vectors(z, spec.n), spec)


def vancc(z, spec: VanSpec) -> np.ndarray:
    """``V_N z`` for counterclockwise unit-circle nodes."""
    return _fast(TransformKind.VANCC, z, spec)


def vanc(z, spec: VanSpec) -> np.ndarray:
    """``V_N z`` for clockwise unit-circle nodes; the DFT when theta is 0."""
    return _fast(TransformKind.VANC, z, spec)


def vanccr(z, spec: VanSpec) -> np.ndarray:
    """``V_N diag(r**l) z`` for counterclockwise nodes on a circle of radius ``r``.

    The radius diagonal is the first stage of the factor list, so this is the
    counterclockwise kernel applied to the pre-scaled input.
    """
    return _fast(TransformKind.VANCCR, z, spec)


def vancr(z, spec: VanSpec) -> np.ndarray:
    """Clockwise counterpart of :func:`vanccr`."""
    return _fast(TransformKind.VANCR, z, spec)


_DISPATCH = {
    TransformKind.VANC: vanc,
    TransformKind.VANCC: vancc,
    TransformKind.VANCR: vancr,
    TransformKind.VANCCR: vanccr,
}


def transform(kind, z, spec: VanSpec) -> np.ndarray:
    kind = check_compatible(kind, spec)
    return _DISPATCH[kind](z, spec)


def direct_matvec(z, spec: VanSpec, max_size: int = DEFAULT_MAX_DENSE) -> np.ndarray:
    """O(N^2) reference product with plain left-to-right accumulation over columns.

    Matrix entries are generated one column at a time exactly as in
    :func:`~vanradix.core.explicit_matrix`, so memory stays O(N) per vector.
    """
    _check_dense_size(spec, max_size)
    x = check_vectors(z, spec.n)
    n = spec.n
    k = np.arange(n)
    roots = unit_roots(k, n, spec.sign)
    phases = _column_phases(spec)
    y = np.zeros_like(x)
    for l in range(n):
        column = roots[(k * l) % n] * phases[l]
        if x.ndim == 1:
            y += column * x[l]
        else:
            y += column[None, :] * x[:, l:l + 1]
    return y
