import math

import mpmath
import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from vanradix.core import Direction, make_spec, unit_roots

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

U = np.finfo(np.float64).eps / 2


def pytest_configure(config):
    config.addinivalue_line("markers", "property: randomized invariant checks (>= 100 cases)")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rel_err(a, b):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) / np.linalg.norm(np.asarray(b))


def mp_matvec(z, spec, dps=40):
    """High precision brute force ``sum_l node_k**l z_l``, independent of the package's weights."""
    with mpmath.workdps(dps):
        theta = mpmath.mpf(spec.theta)
        r = mpmath.mpf(spec.radius)
        out = []
        for k in range(spec.n):
            node = r * mpmath.expj(spec.sign * (theta + 2 * mpmath.pi * k / spec.n))
            acc = mpmath.mpc(0)
            for l, zl in enumerate(z):
                acc += node**l * mpmath.mpc(complex(zl))
            out.append(complex(acc))
    return np.array(out)


def recursive_reference(z, spec):
    """Literal self-recursive kernel: C, butterfly, D, two half-size calls, interleave."""
    z = np.asarray(z, dtype=np.complex128)
    if spec.radius != 1.0:
        z = z * np.power(spec.radius, np.arange(spec.n, dtype=np.float64))
    return _recurse(z, spec.n, spec.theta, spec.sign)


def _recurse(z, n, theta, sign):
    if n == 2:
        w = complex(np.exp(sign * 1j * theta))
        p = w * z[1:]
        return np.concatenate([z[:1] + p, z[:1] - p])
    h = n // 2
    c = complex(np.exp(sign * 1j * (theta * h)))
    u = z.copy()
    u[h:] = c * z[h:]
    v = np.concatenate([u[:h] + u[h:], u[:h] - u[h:]])
    w = v.copy()
    w[h:] = unit_roots(np.arange(h), n, sign) * v[h:]
    s1 = _recurse(w[:h], h, theta, sign)
    s2 = _recurse(w[h:], h, theta, sign)
    y = np.empty(n, dtype=np.complex128)
    y[0::2], y[1::2] = s1, s2
    return y


thetas = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True)
directions = st.sampled_from(list(Direction))


@st.composite
def specs(draw, max_t=7, min_t=1, radius=None):
    t = draw(st.integers(min_t, max_t))
    r = 1.0 if radius is None else draw(radius)
    return make_spec(2**t, draw(thetas), r, draw(directions))
