"""Input validation helpers shared by the functional API and the estimator."""

import numbers

import numpy as np

from .exceptions import LengthMismatch, NonPowerOfTwo


def check_power_of_two(n, min_exponent=1):
    """Return ``t`` with ``n == 2**t``, raising :class:`NonPowerOfTwo` otherwise."""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise NonPowerOfTwo(f"size must be an integer power of two, got {n!r}")
    n = int(n)
    if n < 1 or n & (n - 1):
        raise NonPowerOfTwo(f"size must be a power of two, got {n}")
    t = n.bit_length() - 1
    if t < min_exponent:
        raise NonPowerOfTwo(f"size must be at least {2 ** min_exponent}, got {n}")
    return t


def check_vectors(z, n):
    """Coerce ``z`` to a fresh complex128 array of shape ``(n,)`` or ``(m, n)``.

    The caller's data is always copied, so downstream stages may work in place.
    """
    arr = np.array(z, dtype=np.complex128, copy=True)
    if arr.ndim not in (1, 2):
        raise LengthMismatch(f"expected a vector or a 2-D batch of vectors, got ndim={arr.ndim}")
    if arr.shape[-1] != n:
        raise LengthMismatch(f"expected length {n}, got {arr.shape[-1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("input contains NaN or infinity")
    return arr
