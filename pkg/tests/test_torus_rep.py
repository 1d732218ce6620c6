import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussian_gybe import matrix_core as mc
from gaussian_gybe.errors import WindowViolation
from gaussian_gybe.fz_coefficients import ModulusConfig
from gaussian_gybe.torus_rep import (build_paulis, build_site_operator, build_site_system,
                                     site_operator_power, site_phase, verify_torus_relations)


def dense_report(sys):
    """Torus residuals from dense full-space generators, no windowing."""
    T = sys.generators
    eye = np.eye(sys.dim)
    e1 = max(mc.relative_residual(np.linalg.matrix_power(t, sys.m), eye) for t in T)
    e3 = max((mc.relative_residual(T[i] @ T[i + 1], sys.cfg.q2 * T[i + 1] @ T[i])
              for i in range(len(T) - 1)), default=0.0)
    e2 = max((mc.relative_residual(T[i] @ T[j], T[j] @ T[i])
              for i in range(len(T)) for j in range(i + 2, len(T))), default=0.0)
    return e1, e2, e3


def test_paulis_m2():
    p = build_paulis(ModulusConfig(2))
    assert np.allclose(p.sigma_x, [[0, 1j], [1, 0]], atol=1e-15)
    assert np.allclose(p.sigma_y, [[0, -1j], [1, 0]], atol=1e-15)


@pytest.mark.parametrize("m", range(2, 10))
def test_pauli_relations(m):
    cfg = ModulusConfig(m)
    p = build_paulis(cfg)
    assert mc.is_unitary(p.sigma_x, 1e-12)[0] and mc.is_unitary(p.sigma_y, 1e-12)[0]
    assert mc.frobenius_distance(p.sigma_x @ p.sigma_y, cfg.q ** -2 * p.sigma_y @ p.sigma_x) < 1e-12
    power = np.linalg.matrix_power(p.sigma_x, m)
    assert mc.frobenius_distance(power, cfg.q_pow(m * (m - 1) // 2) * np.eye(m)) < 1e-12
    # defining action on the basis, columns are images
    for i in range(m):
        assert p.sigma_x[(i - 1) % m, i] == pytest.approx(cmath.exp(1j * math.pi * (m - 1) * i / m))


@pytest.mark.parametrize("m", range(2, 8))
def test_site_operator_N2_has_unit_phase(m):
    cfg = ModulusConfig(m)
    p = build_paulis(cfg)
    assert site_phase(cfg, 2) == 1
    assert np.array_equal(build_site_operator(cfg, 2), np.kron(p.sigma_x, p.sigma_y))


def test_site_operator_m2_N3_squares_to_identity():
    M = build_site_operator(ModulusConfig(2), 3)
    assert mc.frobenius_distance(M @ M, np.eye(8)) < 1e-12


def test_site_operator_m3_N3():
    M = build_site_operator(ModulusConfig(3), 3)
    assert mc.is_unitary(M, 1e-12)[0]
    assert mc.frobenius_distance(np.linalg.matrix_power(M, 3), np.eye(27)) < 1e-10


@pytest.mark.parametrize("m,N", [(2, 2), (2, 5), (3, 3), (4, 3), (5, 2), (6, 2)])
def test_site_order_m(m, N):
    M = build_site_operator(ModulusConfig(m), N)
    assert mc.relative_residual(np.linalg.matrix_power(M, m), np.eye(m**N)) < 1e-12


@pytest.mark.parametrize("m,N", [(2, 3), (3, 3), (4, 2), (5, 2)])
def test_site_operator_power_matches_matrix_power(m, N):
    cfg = ModulusConfig(m)
    M = build_site_operator(cfg, N)
    for j in range(2 * m):
        assert mc.frobenius_distance(site_operator_power(cfg, N, j), np.linalg.matrix_power(M, j)) < 1e-11


def test_build_site_operator_rejects_N1():
    with pytest.raises(ValueError):
        build_site_operator(ModulusConfig(2), 1)


def test_system_examples():
    s = build_site_system(ModulusConfig(2), 2, 1, 3)
    assert [g.shape for g in s.generators] == [(8, 8), (8, 8)]
    s = build_site_system(ModulusConfig(2), 3, 2, 3)
    assert s.dim == 32 and all(g.shape == (32, 32) for g in s.generators)
    s = build_site_system(ModulusConfig(3), 2, 1, 4)
    # three generators on 3^{2+1*(4-2)} = 81 dimensions
    assert len(s.generators) == 3 and s.dim == 81


def test_generator_layout():
    cfg = ModulusConfig(3)
    s = build_site_system(cfg, 3, 2, 4)
    M = build_site_operator(cfg, 3)
    assert s.total_arity == 7
    for i in s.indices:
        left, right = 3 ** (2 * (i - 1)), 3 ** (2 * (4 - i - 1))
        assert np.array_equal(s.generator(i), np.kron(np.eye(left), np.kron(M, np.eye(right))))


@pytest.mark.parametrize("N,z", [(4, 1), (3, 1), (2, 2), (3, 3)])
def test_window_enforced(N, z):
    with pytest.raises(WindowViolation):
        build_site_system(ModulusConfig(2), N, z, 4)


def test_window_message_names_condition():
    with pytest.raises(WindowViolation, match="2z >= N"):
        build_site_system(ModulusConfig(2), 4, 1, 4)


@pytest.mark.parametrize("m,N,z,n", [(2, 2, 1, 3), (2, 2, 1, 5), (3, 2, 1, 4), (2, 3, 2, 4),
                                     (3, 3, 2, 3), (2, 4, 2, 4), (2, 4, 3, 3), (4, 2, 1, 4)])
def test_window_residuals_match_dense(m, N, z, n):
    s = build_site_system(ModulusConfig(m), N, z, n)
    rep = verify_torus_relations(s)
    e1, e2, e3 = dense_report(s)
    assert rep.ok(1e-10)
    assert abs(rep.E1 - e1) < 1e-12 and abs(rep.E2 - e2) < 1e-12 and abs(rep.E3 - e3) < 1e-12


def test_m3_N3_z2_n4_all_small():
    rep = verify_torus_relations(build_site_system(ModulusConfig(3), 3, 2, 4))
    assert rep.ok(1e-10) and rep.pairs_E2 == 1 and rep.pairs_E3 == 2


def test_out_of_window_far_commutation_fails():
    s = build_site_system(ModulusConfig(2), 4, 1, 4, enforce_window=False)
    rep = verify_torus_relations(s)
    assert rep.E2 > 0.1
    assert abs(rep.E2 - dense_report(s)[1]) < 1e-12


def test_out_of_window_no_overlap_breaks_q_commutation():
    # z > N-1: adjacent generators act on disjoint qudits and simply commute
    s = build_site_system(ModulusConfig(3), 2, 2, 3, enforce_window=False)
    rep = verify_torus_relations(s)
    assert rep.E3 > 0.1
    assert abs(rep.E3 - dense_report(s)[2]) < 1e-12


@settings(max_examples=15)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(3, 4), st.data())
def test_in_window_relations_hold(m, N, n, data):
    z = data.draw(st.integers(max(1, math.ceil(N / 2)), N - 1))
    if m ** (N + z * (n - 2)) > 1024:
        return
    assert verify_torus_relations(build_site_system(ModulusConfig(m), N, z, n)).ok(1e-10)
