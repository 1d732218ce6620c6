"""GHZ-like states produced by the Gaussian operator, and evolution in the parameter a."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import matrix_core as mc
from .errors import NotDiagonalSupport, UnsupportedParity
from .fz_coefficients import ModulusConfig
from .gybe_solutions import ParamOperatorFamily

DIAGONAL_TOL = 1e-8
CSV_AMP_FLOOR = 1e-12


def diagonal_index(m: int, N: int, j: int) -> int:
    """Row of ``|j>^{(x) N}``."""
    return j * (m**N - 1) // (m - 1)


@dataclass(frozen=True)
class GhzLikeState:
    m: int
    N: int
    amplitudes: np.ndarray  # coefficient of |j>^{(x) N}
    full_vector: mc.StateVector


def apply_to_product_state(S, m: int, N: int, k: int) -> GhzLikeState:
    """``S |k>^{(x) N}`` decomposed on the diagonal states ``|j>^{(x) N}``."""
    S = mc.as_matrix(S)
    if S.shape[0] != m**N:
        raise mc.DimensionMismatch(f"operator has dim {S.shape[0]}, expected {m**N}")
    if not 0 <= k < m:
        raise ValueError(f"k={k} outside [0, {m})")
    out = S[:, diagonal_index(m, N, k)].copy()
    diag = [diagonal_index(m, N, j) for j in range(m)]
    off = out.copy()
    off[diag] = 0
    leak = float(np.linalg.norm(off))
    if leak > DIAGONAL_TOL:
        raise NotDiagonalSupport(f"image has off-diagonal weight {leak:.3e}")
    return GhzLikeState(m, N, out[diag], mc.StateVector(m, N, out))


def phase_exponents(k: int, m: int, N: int) -> list[Fraction]:
    """``c_j(k, m, N) = (k-j)^2 + [m - 1 + (j-k)(j+k+1)](N-2)/2`` for ``j = 0..m-1``."""
    return [Fraction((k - j) ** 2) + Fraction((m - 1 + (j - k) * (j + k + 1)) * (N - 2), 2)
            for j in range(m)]


def analytic_amplitudes(cfg: ModulusConfig, k: int, N: int) -> np.ndarray:
    """``q^{c_j(k,m,N)} / sqrt(m)``; the closed form is only asserted for odd ``m``."""
    m = cfg.m
    if m % 2 == 0:
        raise UnsupportedParity(f"amplitude formula is stated for odd m only, got m={m}")
    if not 0 <= k < m:
        raise ValueError(f"k={k} outside [0, {m})")
    return np.array([cfg.q_pow(c) for c in phase_exponents(k, m, N)]) / math.sqrt(m)


def fix_global_phase(v: np.ndarray, floor: float = 1e-12) -> np.ndarray:
    """Rotate ``v`` so its first non-negligible entry is real-positive."""
    v = np.asarray(v, dtype=np.complex128)
    nz = np.flatnonzero(np.abs(v) > floor)
    if nz.size == 0:
        return v
    z = v[nz[0]]
    return v * (abs(z) / z)


def verify_state_formula(fam: ParamOperatorFamily, k: int) -> float:
    """Max componentwise gap between ``S|k>^N`` and the closed form, modulo a global phase."""
    cfg, N = fam.cfg, fam.sys.N
    state = apply_to_product_state(fam.site_s(), cfg.m, N, k)
    expected = analytic_amplitudes(cfg, k, N)
    return float(np.max(np.abs(fix_global_phase(state.amplitudes) - fix_global_phase(expected))))


def reduced_density(amps: np.ndarray, m: int, arity: int, site: int) -> np.ndarray:
    psi = np.moveaxis(np.asarray(amps).reshape((m,) * arity), site, 0).reshape(m, -1)
    return psi @ psi.conj().T


def reduced_density_check(state, site: int) -> float:
    """``||rho_site - Id/m||_F`` for a ``GhzLikeState`` or ``StateVector``."""
    vec = state.full_vector if isinstance(state, GhzLikeState) else state
    if not 0 <= site < vec.arity:
        raise ValueError(f"site {site} outside [0, {vec.arity})")
    rho = reduced_density(vec.amps, vec.m, vec.arity, site)
    return float(np.linalg.norm(rho - np.eye(vec.m) / vec.m))


@dataclass(frozen=True)
class Trajectory:
    a_grid: list
    states: list  # StateVector per grid point

    def norms(self) -> np.ndarray:
        return np.array([s.norm for s in self.states])

    def to_csv(self, floor: float = CSV_AMP_FLOOR) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "basis_index", "re", "im"])
        for a, s in zip(self.a_grid, self.states):
            for idx in np.flatnonzero(np.abs(s.amps) > floor):
                z = s.amps[idx]
                w.writerow([repr(float(a)), int(idx), repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


def evolve(fam: ParamOperatorFamily, i: int, phi0: mc.StateVector, a_grid) -> Trajectory:
    """``phi(a) = R~_i(a) phi0`` at every grid point."""
    sys = fam.sys
    if phi0.m != sys.m or phi0.arity != sys.total_arity:
        raise mc.DimensionMismatch(
            f"state on (C^{phi0.m})^{phi0.arity}, system on (C^{sys.m})^{sys.total_arity}")
    if not phi0.is_normalized(1e-10):
        raise ValueError(f"initial state has norm {phi0.norm}")
    grid = list(a_grid)
    states = [mc.StateVector(sys.m, sys.total_arity, sys.apply(fam.site_r(a), i, phi0.amps))
              for a in grid]
    return Trajectory(grid, states)


def parse_a_range(text: str) -> list[float]:
    """``"start:stop:steps"`` with both endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"a-range must be start:stop:steps, got {text!r}")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise ValueError("a-range needs at least one step")
    if steps == 1:
        return [start]
    return [float(v) for v in np.linspace(start, stop, steps)]
