"""Forward-error bounds for the radix-2 kernels, the radix-2 FFT and the direct product.

All bounds are normwise relative errors ``||y - fl(y)||_2 / ||y||_2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_power_of_two
from .core import VanSpec
from .exceptions import BoundDiverges, DivergentGamma
from .transform import check_compatible, direct_matvec, transform

MACHINE_U = float(np.finfo(np.float64).eps) / 2.0


class Sign(enum.Enum):
    PLUS = "plus"    # counterclockwise weights exp(+2 pi j l / N)
    MINUS = "minus"  # clockwise weights exp(-2 pi j l / N)


@dataclass(frozen=True)
class ErrorModel:
    """Unit roundoff ``u`` and weight-error bounds ``mu_plus``/``mu_minus``."""

    u: float
    mu_plus: float
    mu_minus: float

    def __post_init__(self):
        if not 0.0 < self.u < 1e-6:
            raise ValueError(f"unit roundoff must lie in (0, 1e-6), got {self.u!r}")
        if self.mu_plus < 0 or self.mu_minus < 0:
            raise ValueError("weight error bounds must be non-negative")

    @classmethod
    def uniform(cls, u: float, mu: float) -> "ErrorModel":
        return cls(u, mu, mu)

    @classmethod
    def machine(cls, mu_ulps: float = 8.0) -> "ErrorModel":
        """IEEE double roundoff, weights accurate to ``mu_ulps`` units of roundoff."""
        return cls.uniform(MACHINE_U, mu_ulps * MACHINE_U)

    def mu(self, sign=Sign.PLUS) -> float:
        return self.mu_plus if Sign(sign) is Sign.PLUS else self.mu_minus


def gamma(k: int, model: ErrorModel) -> float:
    ku = k * model.u
    if ku >= 1.0:
        raise DivergentGamma(f"gamma_{k} undefined: k*u = {ku} >= 1")
    return ku / (1.0 - ku)


def _eta(mu: float, model: ErrorModel) -> float:
    return mu + gamma(4, model) * (1.0 + mu)


def _log_bound(n: int, per_level: float) -> float:
    t = check_power_of_two(n)
    tv = t * per_level
    if tv >= 1.0:
        raise BoundDiverges(f"t*nu = {tv} >= 1 for N={n}")
    return tv / (1.0 - tv) * math.sqrt(n)


def radix2_bound(n: int, model: ErrorModel, sign=Sign.PLUS) -> float:
    """Bound for the unit-circle kernels: ``t nu / (1 - t nu) * sqrt(N)``.

    ``nu = eta gamma_3 + eta + gamma_3`` and ``eta = mu + gamma_4 (1 + mu)``;
    PLUS uses ``mu_plus`` (counterclockwise), MINUS ``mu_minus`` (clockwise).
    """
    eta = _eta(model.mu(sign), model)
    g3 = gamma(3, model)
    return _log_bound(n, eta * g3 + eta + g3)


def fft_bound(n: int, model: ErrorModel) -> float:
    """Classical radix-2 FFT bound ``t eta / (1 - t eta) * sqrt(N)`` (uses ``mu_plus``)."""
    return _log_bound(n, _eta(model.mu_plus, model))


def direct_bound(n: int, model: ErrorModel) -> float:
    return gamma(n + 2, model) * math.sqrt(n)


@dataclass(frozen=True)
class ForwardErrorSummary:
    max_rel_error: float
    mean_rel_error: float
    trials: int


def random_inputs(n: int, trials: int, seed: int) -> np.ndarray:
    """``trials`` vectors with entries uniform on the complex unit square ``[0,1) + j[0,1)``.

    Each trial has its own generator spawned from ``seed``, so a trial's
    vector does not depend on how many trials are drawn.
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    rows = []
    for child in children:
        rng = np.random.default_rng(child)
        rows.append(rng.random(n) + 1j * rng.random(n))
    return np.array(rows)


def measure_forward_error(kind, spec: VanSpec, trials: int, rng_seed: int = 0) -> ForwardErrorSummary:
    """Relative l2 error of the fast kernel against :func:`direct_matvec` over random inputs."""
    check_compatible(kind, spec)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    z = random_inputs(spec.n, trials, rng_seed)
    fast = transform(kind, z, spec)
    ref = direct_matvec(z, spec)
    rel = np.linalg.norm(fast - ref, axis=1) / np.linalg.norm(ref, axis=1)
    return ForwardErrorSummary(float(rel.max()), float(rel.mean()), trials)
