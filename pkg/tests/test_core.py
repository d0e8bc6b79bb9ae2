import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vanradix.core import (
    Direction,
    FactorKind,
    build_factors,
    explicit_matrix,
    make_spec,
    nodes,
    output_gather,
    spec_from_delay,
    unit_roots,
)
from vanradix.exceptions import NonPowerOfTwo, RadiusOutOfRange, SizeTooLarge

from conftest import U, specs

CW, CCW = Direction.CLOCKWISE, Direction.COUNTERCLOCKWISE


def dense_product(spec):
    m = np.eye(spec.n, dtype=np.complex128)
    for f in build_factors(spec):
        m = f.to_dense() @ m
    return m


def dft(n):
    # reference with exact integer reduction of k*l, high precision exponentials
    with mpmath.workdps(30):
        roots = [complex(mpmath.expj(-2 * mpmath.pi * m / n)) for m in range(n)]
    k = np.arange(n)
    return np.array(roots)[np.outer(k, k) % n]


class TestMakeSpec:
    def test_identity(self):
        spec = make_spec(4, 0, 1, CW)
        assert (spec.n, spec.theta, spec.radius, spec.direction) == (4, 0.0, 1.0, CW)

    def test_theta_wraps(self):
        assert make_spec(4, 2 * math.pi + 0.5, 1, CW).theta == pytest.approx(0.5, abs=4 * U * 8)

    def test_negative_theta_normalized(self):
        theta = make_spec(4, -1e-300, 1, CW).theta
        assert 0.0 <= theta < 2 * math.pi

    @pytest.mark.parametrize("n", [0, 1, 3, 6, 12, 2.0, "4"])
    def test_rejects_non_power_of_two(self, n):
        with pytest.raises(NonPowerOfTwo):
            make_spec(n, 0, 1, CW)

    def test_rejects_small_radius(self):
        with pytest.raises(RadiusOutOfRange):
            make_spec(4, 0, 0.99, CW)

    def test_rejects_overflowing_radius(self):
        with pytest.raises(RadiusOutOfRange):
            build_factors(make_spec(4096, 0, 1.5, CW))

    def test_direction_strings(self):
        assert make_spec(2, direction="counterclockwise").direction is CCW
        assert make_spec(2, direction="cw").direction is CW


class TestSpecFromDelay:
    def test_quarter_turn(self):
        spec = spec_from_delay(8, 2.5e9, 1e-10)
        assert spec.theta == pytest.approx(2 * math.pi * 0.25, rel=4 * U)
        assert spec.direction is CW

    def test_zero_frequency(self):
        assert spec_from_delay(8, 0.0, 3e-9).theta == 0.0

    def test_full_turn_wraps(self):
        assert spec_from_delay(8, 1e9, 1e-9).theta == 0.0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            spec_from_delay(8, -1.0, 1e-9)


class TestNodes:
    def test_fourth_roots_ccw(self):
        np.testing.assert_allclose(nodes(make_spec(4, 0, 1, CCW)), [1, 1j, -1, -1j], atol=2 * U)

    def test_fourth_roots_cw(self):
        np.testing.assert_allclose(nodes(make_spec(4, 0, 1, CW)), [1, -1j, -1, 1j], atol=2 * U)

    def test_rotated_pair(self):
        # exp(j(pi/2 + pi k)) for k = 0, 1
        np.testing.assert_allclose(nodes(make_spec(2, math.pi / 2, 1, CCW)), [1j, -1j], atol=4 * U)

    def test_radius_scales_modulus(self):
        np.testing.assert_allclose(np.abs(nodes(make_spec(16, 1.0, 1.5, CW))), 1.5, rtol=4 * U)


def test_unit_roots_accuracy():
    n = 512
    with mpmath.workdps(30):
        ref = np.array([complex(mpmath.expj(2 * mpmath.pi * k / n)) for k in range(-n, 2 * n)])
    got = unit_roots(np.arange(-n, 2 * n), n, 1)
    assert np.max(np.abs(got - ref)) <= 2 * U


def test_unit_roots_exact_quadrants():
    np.testing.assert_array_equal(unit_roots([0, 2, 4, 6], 8, -1), [1, -1j, -1, 1j])


class TestBuildFactors:
    def test_two_point_is_single_base_stage(self):
        theta = 0.8
        (stage,) = build_factors(make_spec(2, theta, 1, CCW))
        assert stage.kind is FactorKind.BASE
        np.testing.assert_allclose(stage.to_dense(),
                                   [[1, np.exp(1j * theta)], [1, -np.exp(1j * theta)]], atol=2 * U)

    def test_dft4(self):
        np.testing.assert_allclose(dense_product(make_spec(4, 0, 1, CW)), dft(4), atol=4 * U)

    def test_radius_stage_first(self):
        first = build_factors(make_spec(4, 0.3, 2, CW))[0]
        assert first.kind is FactorKind.RADIUS_DIAGONAL
        np.testing.assert_array_equal(np.diag(first.to_dense()), [1, 2, 4, 8])

    def test_stage_layout(self):
        stages = build_factors(make_spec(16, 0.2, 1, CW))
        kinds = [f.kind for f in stages]
        assert kinds[:3] == [FactorKind.SCALAR_BLOCK, FactorKind.BUTTERFLY, FactorKind.DELAY_DIAGONAL]
        assert [(f.size, f.blocks) for f in stages if f.kind is FactorKind.BUTTERFLY] == [(16, 1), (8, 2), (4, 4)]
        assert kinds[9] is FactorKind.BASE and stages[9].blocks == 8
        perms = stages[10:]
        assert [(f.size, f.blocks) for f in perms] == [(4, 4), (8, 2), (16, 1)]

    def test_butterfly_structure(self):
        f = next(f for f in build_factors(make_spec(8, 0.1, 1, CW)) if f.kind is FactorKind.BUTTERFLY)
        d = f.to_dense()
        assert np.all(np.count_nonzero(d, axis=1) == 2)
        assert set(np.unique(d[d != 0]).real) == {-1.0, 1.0}

    def test_delay_diagonal_starts_at_one(self):
        for f in build_factors(make_spec(64, 1.3, 1, CCW)):
            if f.kind is FactorKind.DELAY_DIAGONAL:
                assert f.payload[0] == 1

    def test_payloads_read_only(self):
        f = build_factors(make_spec(8, 0.1, 2, CW))[0]
        with pytest.raises(ValueError):
            f.payload[0] = 3.0

    def test_output_gather_is_bit_reversal(self):
        n, bits = 64, 6
        rev = [int(format(i, f"0{bits}b")[::-1], 2) for i in range(n)]
        np.testing.assert_array_equal(output_gather(n), rev)


class TestExplicitMatrix:
    def test_dft2(self):
        np.testing.assert_array_equal(explicit_matrix(make_spec(2, 0, 1, CW)), [[1, 1], [1, -1]])

    def test_first_column_ones(self):
        m = explicit_matrix(make_spec(32, 4.1, 1.3, CCW))
        np.testing.assert_array_equal(m[:, 0], np.ones(32))

    def test_dft4(self):
        np.testing.assert_allclose(explicit_matrix(make_spec(4, 0, 1, CW)), dft(4), atol=2 * U)

    def test_matches_high_precision(self):
        spec = make_spec(64, 5.9, 1.1, CCW)
        m = explicit_matrix(spec)
        with mpmath.workdps(40):
            th = mpmath.mpf(spec.theta)
            ref = np.array([[complex(mpmath.mpf(1.1) ** l * mpmath.expj(l * (th + 2 * mpmath.pi * k / 64)))
                             for l in range(64)] for k in range(64)])
        assert np.max(np.abs(m - ref) / np.abs(ref)) <= 8 * U

    def test_size_cap(self):
        with pytest.raises(SizeTooLarge):
            explicit_matrix(make_spec(64, 0, 1, CW), max_size=32)


@pytest.mark.property
@given(spec=specs(max_t=6, radius=st.floats(1.0, 1.5)))
def test_I1_factor_completeness(spec):
    e = explicit_matrix(spec)
    err = np.max(np.abs(dense_product(spec) - e) / np.abs(e))
    assert err <= 64 * spec.n * U


def test_I1_factor_completeness_up_to_256():
    for t in (7, 8):
        for d in (CW, CCW):
            spec = make_spec(2**t, 2.7, 1.01, d)
            e = explicit_matrix(spec)
            assert np.max(np.abs(dense_product(spec) - e) / np.abs(e)) <= 64 * spec.n * U


@pytest.mark.property
@given(spec=specs(max_t=8))
def test_I2_scaled_unitarity(spec):
    v = explicit_matrix(spec)
    gram = v @ v.conj().T
    assert np.max(np.abs(gram - spec.n * np.eye(spec.n))) <= 64 * spec.n * U


@pytest.mark.property
@given(t=st.integers(1, 8))
def test_I3_dft_reduction(t):
    n = 2**t
    assert np.max(np.abs(explicit_matrix(make_spec(n, 0, 1, CW)) - dft(n))) <= 8 * U


@pytest.mark.property
@given(spec=specs(max_t=10, radius=st.floats(1.0, 4.0)))
def test_I4_node_spacing(spec):
    v = nodes(spec)
    step = np.exp(spec.sign * 2j * math.pi / spec.n)
    assert np.max(np.abs(v[1:] / v[:-1] - step)) <= 8 * U


@pytest.mark.property
@given(spec=specs(max_t=10))
def test_I5_scalar_block_value(spec):
    with mpmath.workdps(40):
        for f in build_factors(spec):
            if f.kind is FactorKind.SCALAR_BLOCK:
                exact = complex(mpmath.expj(spec.sign * mpmath.mpf(spec.theta) * (f.size // 2)))
                assert abs(f.payload - exact) <= 8 * U
