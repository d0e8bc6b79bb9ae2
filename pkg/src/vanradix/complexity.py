"""Gain-delay-block (GDB) counts: closed forms, a structural counter, and the count tables.

Multiplications by +-1 and permutations are free. Counting assumes generic
parameters: the scalar-block constant is not +-1 and, for the radius kinds,
``r > 1``. The closed forms are independent of theta, so a degenerate theta
(e.g. 0, where some weights become 1) still reports the generic count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ._validation import check_power_of_two
from .core import FactorKind, VanSpec, build_factors
from .transform import TransformKind, check_compatible

TABLE_SIZES = tuple(2**t for t in range(2, 13))


class Arithmetic(enum.Enum):
    COMPLEX = "complex"
    REAL = "real"

    @classmethod
    def parse(cls, value) -> "Arithmetic":
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class GdbCount:
    additions: int
    multiplications: int
    arithmetic: Arithmetic = Arithmetic.COMPLEX


def formula_count(kind, n, arithmetic=Arithmetic.COMPLEX) -> GdbCount:
    kind, arithmetic = TransformKind.parse(kind), Arithmetic.parse(arithmetic)
    t = check_power_of_two(n)
    adds = n * t
    if arithmetic is Arithmetic.COMPLEX:
        mults = n * t - n // 2 if kind.allows_radius else n * t - n + 1
    else:
        # 2Nt - 3N/2 + 1 and 2Nt - 5N/2 + 2, in integers (N is even)
        mults = 2 * n * t - 3 * n // 2 + 1 if kind.allows_radius else 2 * n * t - 5 * n // 2 + 2
    return GdbCount(adds, mults, arithmetic)


def direct_count(n, arithmetic=Arithmetic.COMPLEX) -> GdbCount:
    """Cost of the plain matrix-vector product (first column of ones is free)."""
    arithmetic = Arithmetic.parse(arithmetic)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if arithmetic is Arithmetic.COMPLEX:
        return GdbCount(n * (n - 1), n * (n - 1), arithmetic)
    return GdbCount(n * (2 * n - 1), 2 * n * (n - 1), arithmetic)


def measured_count(kind, spec: VanSpec, arithmetic=Arithmetic.COMPLEX) -> GdbCount:
    """Tally GDBs by walking the factor stages of ``spec``.

    Per-stage allocation (complex / real-input):

    ========================  ===============  ===============  ========
    stage (block size M)      complex mults    real mults       adds
    ========================  ===============  ===============  ========
    radius diagonal (N)       N/2 - 1          N - 1            0
    scalar block              M/2              M                0
    butterfly                 0                0                M
    delay diagonal            M/2 - 1          M - 2            0
    2x2 leaf                  1                1                2
    ========================  ===============  ===============  ========

    The radius diagonal costs only its upper half against complex data: the
    lower-half gains ``r**(N/2 + l)`` sit directly in front of the scalar
    block and share its GDBs. In the real-input model each twiddle on a real
    rail costs two real multiplications, the leaf's single twiddle one.
    """
    kind, arithmetic = check_compatible(kind, spec), Arithmetic.parse(arithmetic)
    real = arithmetic is Arithmetic.REAL
    adds = mults = 0
    for f in build_factors(spec):
        per_block_adds = per_block_mults = 0
        if f.kind is FactorKind.RADIUS_DIAGONAL:
            per_block_mults = f.size - 1 if real else f.size // 2 - 1
        elif f.kind is FactorKind.SCALAR_BLOCK:
            per_block_mults = f.size if real else f.size // 2
        elif f.kind is FactorKind.BUTTERFLY:
            per_block_adds = f.size
        elif f.kind is FactorKind.DELAY_DIAGONAL:
            per_block_mults = f.size - 2 if real else f.size // 2 - 1
        elif f.kind is FactorKind.BASE:
            per_block_adds, per_block_mults = 2, 1
        adds += f.blocks * per_block_adds
        mults += f.blocks * per_block_mults
    return GdbCount(adds, mults, arithmetic)


TABLE_HEADERS = {
    1: ("N", "direct_add_mult", "add_all_kinds", "mult_vanc_vancc", "mult_vancr_vanccr"),
    2: ("N", "direct_add", "add_vanc_vancc", "direct_mult", "mult_vanc_vancc"),
    3: ("N", "direct_add", "add_vancr_vanccr", "direct_mult", "mult_vancr_vanccr"),
}


def count_table(table: int, sizes=TABLE_SIZES) -> list[tuple[int, ...]]:
    """Rows of the complex (1), real unit-circle (2) or real radius-r (3) count table."""
    rows = []
    for n in sizes:
        if table == 1:
            direct = direct_count(n, Arithmetic.COMPLEX)
            plain = formula_count(TransformKind.VANC, n, Arithmetic.COMPLEX)
            radial = formula_count(TransformKind.VANCR, n, Arithmetic.COMPLEX)
            rows.append((n, direct.additions, plain.additions, plain.multiplications,
                         radial.multiplications))
        elif table in (2, 3):
            kind = TransformKind.VANC if table == 2 else TransformKind.VANCR
            direct = direct_count(n, Arithmetic.REAL)
            fast = formula_count(kind, n, Arithmetic.REAL)
            rows.append((n, direct.additions, fast.additions, direct.multiplications,
                         fast.multiplications))
        else:
            raise ValueError(f"no count table {table!r}; choose 1, 2 or 3")
    return rows
