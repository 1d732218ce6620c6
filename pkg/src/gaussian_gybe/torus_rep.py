"""Generalized Pauli operators, the site operator M_{m^N}, and embedded torus generators.

Generator ``T_i`` (``1 <= i <= n-1``) acts as ``M`` on qudits
``z(i-1) .. z(i-1)+N-1`` of a chain of ``N + z(n-2)`` qudits.  Relations
between generators are evaluated on the smallest window of qudits covering
their supports; :func:`~gaussian_gybe.matrix_core.relative_residual` rescales
the result to the full space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import matrix_core as mc
from .errors import WindowViolation
from .fz_coefficients import ModulusConfig


@dataclass(frozen=True)
class PauliPair:
    sigma_x: np.ndarray
    sigma_y: np.ndarray


def build_paulis(cfg: ModulusConfig) -> PauliPair:
    """``sigma_x|i> = q^i |i-1>`` and ``sigma_y|i> = q^-i |i-1>``, indices mod m."""
    m = cfg.m
    sx = np.zeros((m, m), dtype=np.complex128)
    sy = np.zeros((m, m), dtype=np.complex128)
    for i in range(m):
        sx[(i - 1) % m, i] = cfg.q_pow(i)
        sy[(i - 1) % m, i] = cfg.q_pow(-i)
    return PauliPair(sx, sy)


def site_phase(cfg: ModulusConfig, N: int) -> complex:
    """``q^{(m-1)(N-2)/2}`` on the branch ``exp(i pi (m-1)^2 (N-2) / 2m)``."""
    m = cfg.m
    return complex(np.exp(1j * np.pi * ((m - 1) ** 2 * (N - 2)) / (2 * m)))


def _site_factors(cfg: ModulusConfig, N: int, power: int = 1) -> list[np.ndarray]:
    p = build_paulis(cfg)
    sx = np.linalg.matrix_power(p.sigma_x, power)
    sy = np.linalg.matrix_power(p.sigma_y, power)
    return [sx] + [sy] * (N - 1)


def build_site_operator(cfg: ModulusConfig, N: int) -> np.ndarray:
    """``M = q^{(m-1)(N-2)/2} sigma_x (x) sigma_y^{(x) N-1}`` on ``(C^m)^{(x) N}``."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    mc.check_dim(cfg.m**N)
    return site_phase(cfg, N) * reduce(np.kron, _site_factors(cfg, N))


def site_operator_power(cfg: ModulusConfig, N: int, j: int) -> np.ndarray:
    """``M^j`` assembled factor by factor (mixed-product property), exact for any ``j``."""
    mc.check_dim(cfg.m**N)
    return site_phase(cfg, N) ** j * reduce(np.kron, _site_factors(cfg, N, j))


def check_window(N: int, z: int):
    if 2 * z < N:
        raise WindowViolation(f"z={z} < N/2={N / 2}: violates 2z >= N (far generators fail to commute)")
    if z > N - 1:
        raise WindowViolation(f"z={z} > N-1={N - 1}: adjacent generators no longer overlap")


@dataclass(frozen=True)
class SiteSystem:
    """An ``(m, N, z, n)`` chain with generators ``T_1 .. T_{n-1}``."""

    cfg: ModulusConfig
    N: int
    z: int
    n: int
    site: np.ndarray = field(repr=False)
    _dense: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.cfg.m

    @property
    def total_arity(self) -> int:
        return self.N + self.z * (self.n - 2)

    @property
    def dim(self) -> int:
        return self.m**self.total_arity

    @property
    def indices(self) -> range:
        return range(1, self.n)

    def offset(self, i: int) -> int:
        """First qudit acted on by ``T_i``."""
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"generator index {i} outside [1, {self.n - 1}]")
        return self.z * (i - 1)

    def window(self, *gens: int) -> tuple[int, int]:
        """``(start, width)`` in qudits of the smallest window covering ``gens``."""
        start = min(self.offset(i) for i in gens)
        stop = max(self.offset(i) for i in gens) + self.N
        return start, stop - start

    def outer_dim(self, width: int) -> int:
        return self.m ** (self.total_arity - width)

    def local(self, op: np.ndarray, i: int, window: tuple[int, int]) -> np.ndarray:
        """Embed a site-level operator placed at generator ``i`` into ``window``."""
        start, width = window
        left = self.offset(i) - start
        return mc.embed(op, left, width - left - self.N, self.m)

    def product(self, factors, window: tuple[int, int]) -> np.ndarray:
        """Window-level product of ``(site_op, generator)`` pairs, left to right.

        Only the rightmost factor is materialized; the rest are applied locally.
        """
        start, width = window
        *rest, (op, i) = factors
        out = self.local(op, i, window)
        for op, i in reversed(rest):
            left = self.m ** (self.offset(i) - start)
            right = self.m ** (start + width - self.offset(i) - self.N)
            out = mc.apply_embedded(op, left, right, out)
        return out

    def embed_site(self, op: np.ndarray, i: int) -> np.ndarray:
        """Full-space ``Id^{(x) z(i-1)} (x) op (x) Id^{(x) z(n-i-1)}``."""
        return self.local(op, i, (0, self.total_arity))

    def apply(self, op: np.ndarray, i: int, x: np.ndarray) -> np.ndarray:
        """``embed_site(op, i) @ x`` without forming the full-space operator."""
        left = self.m ** self.offset(i)
        right = self.m ** (self.total_arity - self.offset(i) - self.N)
        return mc.apply_embedded(op, left, right, x)

    def generator(self, i: int) -> np.ndarray:
        if i not in self._dense:
            self._dense[i] = self.embed_site(self.site, i)
        return self._dense[i]

    @property
    def generators(self) -> list[np.ndarray]:
        return [self.generator(i) for i in self.indices]


def build_site_system(cfg: ModulusConfig, N: int, z: int, n: int,
                      enforce_window: bool = True) -> SiteSystem:
    if N < 2 or z < 1 or n < 2:
        raise ValueError(f"need N >= 2, z >= 1, n >= 2; got N={N}, z={z}, n={n}")
    if enforce_window:
        check_window(N, z)
    mc.check_dim(cfg.m ** (N + z * (n - 2)))
    return SiteSystem(cfg, N, z, n, build_site_operator(cfg, N))


@dataclass(frozen=True)
class TorusReport:
    E1: float
    E2: float
    E3: float
    unitarity: float
    pairs_E2: int
    pairs_E3: int

    def ok(self, tol: float = 1e-10) -> bool:
        return max(self.E1, self.E2, self.E3, self.unitarity) <= tol


def _commutation_residual(sys: SiteSystem, i: int, j: int, factor: complex) -> float:
    """Relative residual of ``T_i T_j = factor * T_j T_i``."""
    w = sys.window(i, j)
    M = sys.site
    lhs = sys.product([(M, i), (M, j)], w)
    rhs = factor * sys.product([(M, j), (M, i)], w)
    return mc.relative_residual(lhs, rhs, sys.outer_dim(w[1]))


def verify_torus_relations(sys: SiteSystem) -> TorusReport:
    """Max relative residuals of (E1) ``T^m = Id``, (E2) far commutation, (E3) ``q^2``-commutation."""
    m = sys.m
    # every generator is the same site operator, so E1 and unitarity reduce to one window
    w = sys.window(1)
    outer = sys.outer_dim(w[1])
    power = np.linalg.matrix_power(sys.site, m)
    eye = np.eye(sys.site.shape[0])
    e1 = mc.relative_residual(power, eye, outer)
    unit = mc.relative_residual(sys.site @ sys.site.conj().T, eye, outer)
    e3 = [_commutation_residual(sys, i, i + 1, sys.cfg.q2) for i in range(1, sys.n - 1)]
    e2 = [_commutation_residual(sys, i, j, 1.0)
          for i in sys.indices for j in sys.indices if j >= i + 2]
    return TorusReport(e1, max(e2, default=0.0), max(e3, default=0.0), unit, len(e2), len(e3))
