"""True-time-delay multibeam responses computed through the fast clockwise kernel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import spec_from_delay
from .transform import vanc


@dataclass(frozen=True)
class BeamResponse:
    k: int
    omega_x_grid: np.ndarray
    response: np.ndarray  # complex H_k over the grid

    @property
    def magnitude_db(self) -> np.ndarray:
        mag = np.abs(self.response)
        return 20.0 * np.log10(np.maximum(mag, np.finfo(float).tiny))


def spatial_grid(points: int) -> np.ndarray:
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points}")
    return np.linspace(-np.pi, np.pi, points)


def steering_vectors(omega_x: np.ndarray, n: int) -> np.ndarray:
    """Rows ``exp(-j omega_x i)``, ``i = 0..n-1``, one per spatial frequency."""
    return np.exp(-1j * np.outer(omega_x, np.arange(n)))


def beam_responses(n, freq_hz, tau_seconds, grid_points) -> list[BeamResponse]:
    """Responses ``H_k(omega_x) = sum_i v_k**i exp(-j omega_x i)`` of all ``n`` beams.

    ``v_k = exp(-j(2 pi f tau + 2 pi k / n))`` are the clockwise nodes of the
    delay spec. Beam ``k`` peaks at magnitude ``n`` where
    ``exp(-j omega_x) = conj(v_k)``.
    """
    spec = spec_from_delay(n, freq_hz, tau_seconds)
    omega = spatial_grid(grid_points)
    h = vanc(steering_vectors(omega, spec.n), spec)
    return [BeamResponse(k, omega, h[:, k]) for k in range(spec.n)]
