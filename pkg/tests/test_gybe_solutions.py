import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gaussian_gybe import matrix_core as mc
from gaussian_gybe.fz_coefficients import ModulusConfig, alpha_of
from gaussian_gybe.gybe_solutions import (GENERIC_A, Residual, check_additive_ybe,
                                          check_braid_relations, check_far_commutativity,
                                          check_gybe, check_mult_ybe, check_unitary_family,
                                          gaussian_s, gaussian_site_operator,
                                          inverse_parameter_residual, make_family, r_tilde,
                                          sample_pairs)
from gaussian_gybe.torus_rep import build_site_system


def family(m, N, z, n):
    return make_family(build_site_system(ModulusConfig(m), N, z, n))


def dense_mult_ybe(fam, i, a, b):
    lhs = r_tilde(fam, i, a) @ r_tilde(fam, i + 1, a * b) @ r_tilde(fam, i, b)
    rhs = r_tilde(fam, i + 1, b) @ r_tilde(fam, i, a * b) @ r_tilde(fam, i + 1, a)
    return mc.relative_residual(lhs, rhs)


def test_r_tilde_identity_point():
    fam = family(3, 2, 1, 3)
    for i in (1, 2):
        assert mc.frobenius_distance(r_tilde(fam, i, 1.0), np.eye(27)) < 1e-10


@pytest.mark.parametrize("m", [2, 4])
def test_r_tilde_minus_one_even(m):
    fam = family(m, 2, 1, 3)
    T = fam.sys.generator(1)
    expected = 1j * np.linalg.matrix_power(-T, m // 2)
    assert mc.frobenius_distance(r_tilde(fam, 1, -1.0), expected) < 1e-8


@pytest.mark.parametrize("m", [2, 3, 5])
def test_r_tilde_zero_point(m):
    fam = family(m, 2, 1, 3)
    T = fam.sys.generator(2)
    Q = cmath.exp(1j * math.pi / m)
    expected = sum(Q ** (m * j - j * j) * np.linalg.matrix_power(T, j) for j in range(m)) / math.sqrt(m)
    assert mc.frobenius_distance(r_tilde(fam, 2, 0.0), expected) < 1e-12
    # entrywise equal to the Gaussian generator
    assert mc.frobenius_distance(gaussian_s(fam, 2), expected) < 1e-12


def test_gaussian_m2_order_exceeds_two():
    fam = family(2, 2, 1, 2)
    S = fam.site_s()
    assert mc.is_unitary(S, 1e-12)[0]
    assert mc.frobenius_distance(S @ S, np.eye(4)) > 0.5


def test_gaussian_m3_not_order_three():
    fam = family(3, 2, 1, 3)
    S = gaussian_s(fam, 1)
    assert mc.is_unitary(S, 1e-10)[0]
    assert mc.frobenius_distance(np.linalg.matrix_power(S, 3), np.eye(27)) > 0.5


@pytest.mark.parametrize("m,N", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_gaussian_site_operator_matches_family(m, N):
    fam = family(m, N, max(1, math.ceil(N / 2)), 2)
    assert mc.frobenius_distance(gaussian_site_operator(ModulusConfig(m), N), fam.site_s()) < 1e-12


def test_mult_ybe_examples():
    assert check_mult_ybe(family(2, 2, 1, 3), 1, 2.0, 3.0) <= 1e-9
    assert check_mult_ybe(family(2, 2, 1, 3), 1, 1.0, 1.0) == 0
    assert check_mult_ybe(family(3, 3, 2, 3), 1, 0.5, -2.0) <= 1e-9


def test_mult_ybe_index_range():
    with pytest.raises(IndexError):
        check_mult_ybe(family(2, 2, 1, 3), 2, 2.0, 3.0)


@pytest.mark.parametrize("m,N,z,n", [(2, 2, 1, 3), (3, 2, 1, 4), (2, 3, 2, 3), (2, 4, 2, 3)])
def test_mult_ybe_window_matches_dense(m, N, z, n):
    fam = family(m, N, z, n)
    for a, b in [(2.0, 3.0), (-0.4, 1.7), (-3.0, 0.2)]:
        for i in range(1, n - 1):
            assert abs(check_mult_ybe(fam, i, a, b) - dense_mult_ybe(fam, i, a, b)) < 1e-12


def test_mult_ybe_breaks_with_wrong_product_parameter():
    # sanity: the relation is sensitive to the middle parameter
    fam = family(3, 2, 1, 3)
    from gaussian_gybe.gybe_solutions import _ybe_residual
    r = _ybe_residual(fam.sys, 1, fam.site_r(2.0), fam.site_r(2.0 + 3.0), fam.site_r(3.0))
    assert r > 1e-3


def test_additive_ybe_examples():
    assert check_additive_ybe(family(2, 2, 1, 3), 1, 0.3 + 0.2j, -0.7 + 0.1j) <= 1e-9
    assert check_additive_ybe(family(3, 2, 1, 3), 1, 0.0, 0.0) == 0
    fam5 = family(5, 2, 1, 3)
    cfg = ModulusConfig(5)
    assert check_additive_ybe(fam5, 1, alpha_of(cfg, 2.0), alpha_of(cfg, 3.0)) <= 1e-9
    assert check_mult_ybe(fam5, 1, 2.0, 3.0) <= 1e-9


def test_additive_matches_multiplicative_operator():
    fam = family(4, 2, 1, 3)
    for a in (0.3, 2.0, 7.0):
        assert mc.frobenius_distance(fam.site_r_additive(alpha_of(fam.cfg, a)),
                                     fam.site_r_multiplicative(a)) < 1e-10


def test_far_commutativity_examples():
    assert check_far_commutativity(family(2, 2, 1, 4), 1, 3, 2.0, 5.0) <= 1e-10
    assert check_far_commutativity(family(2, 2, 1, 4), 1, 3, 1.0, 1.0) == 0
    rng = np.random.default_rng(11)
    a, b = sample_pairs(rng, 1)[0]
    assert check_far_commutativity(family(3, 2, 1, 4), 1, 3, a, b) <= 1e-10
    with pytest.raises(ValueError):
        check_far_commutativity(family(2, 2, 1, 4), 1, 2, 2.0, 5.0)


def test_gybe_identity():
    g = check_gybe(ModulusConfig(2), 3, 2, np.eye(8))
    assert g.triple == 0 and g.far == 0


@pytest.mark.parametrize("m,N,z", [(2, 2, 1), (3, 2, 1), (2, 3, 2), (3, 3, 2), (2, 4, 3), (2, 4, 2)])
def test_gybe_gaussian(m, N, z):
    g = check_gybe(ModulusConfig(m), N, z, gaussian_site_operator(ModulusConfig(m), N))
    assert g.triple <= 1e-9 and g.far <= 1e-9


def test_gybe_dense_cross_check():
    cfg = ModulusConfig(2)
    R = gaussian_site_operator(cfg, 3)
    A, B = np.kron(R, np.eye(4)), np.kron(np.eye(4), R)
    dense = mc.relative_residual(A @ B @ A, B @ A @ B)
    assert abs(check_gybe(cfg, 3, 2, R).triple - dense) < 1e-12


def test_gybe_detects_non_solution():
    rng = np.random.default_rng(0)
    R = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
    assert check_gybe(ModulusConfig(2), 2, 1, R).triple > 1e-3


@pytest.mark.parametrize("m,N,z", [(2, 2, 1), (3, 3, 2)])
def test_braid_relations(m, N, z):
    rep = check_braid_relations(family(m, N, z, 4))
    assert rep.special_points_ok(1e-9)
    assert rep.rtilde_braid[GENERIC_A] > 1e-3


def test_braid_needs_three_strands():
    with pytest.raises(ValueError):
        check_braid_relations(family(2, 2, 1, 2))


def test_unitary_family_examples():
    fam2 = family(2, 2, 1, 3)
    assert check_unitary_family(fam2, [float(a) for a in range(-5, 6)]) <= 1e-9
    assert check_unitary_family(fam2, [1.0]) == 0
    assert check_unitary_family(family(4, 2, 1, 3), [-1.0]) <= 1e-8


def test_inverse_parameter():
    fam = family(3, 2, 1, 3)
    for a in (-3.0, -0.2, 0.5, 4.0):
        assert inverse_parameter_residual(fam, a) < 1e-12


def test_residual_record():
    r = Residual("x", {}, 0.5, 1e-3, expect_pass=False)
    assert r.passed and r.to_dict()["pass"] is True
    assert not Residual("y", {}, 0.5, 1e-3).passed


def test_sample_pairs_avoid():
    rng = np.random.default_rng(3)
    pairs = sample_pairs(rng, 200, low=-1.01, high=1.01, margin=1e-2)
    assert len(pairs) == 200
    assert all(abs(abs(v) - 1) > 1e-2 for p in pairs for v in p)


param = st.floats(-4, 4).filter(lambda a: abs(abs(a) - 1) > 1e-6)


@settings(max_examples=40)
@given(st.sampled_from([(2, 2, 1), (3, 2, 1), (2, 3, 2)]), param, param)
def test_mult_ybe_property(cfg, a, b):
    m, N, z = cfg
    assume(abs(abs(a * b) - 1) > 1e-6)
    assert check_mult_ybe(family(m, N, z, 3), 1, a, b) <= 1e-9


@settings(max_examples=40)
@given(st.integers(2, 7), st.floats(-1e6, 1e6, allow_nan=False))
def test_unitarity_property(m, a):
    assert check_unitary_family(family(m, 2, 1, 2), [a]) <= 1e-9
