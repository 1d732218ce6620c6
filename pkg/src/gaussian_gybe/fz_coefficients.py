"""Fateev-Zamolodchikov spectral coefficients and their scalar identities.

Three parameterizations are provided:

* ``x_additive(cfg, j, alpha)``   -- the trigonometric product in ``alpha``;
* ``x_multiplicative(cfg, j, a)`` -- the same after ``alpha = m i log(1/a)``;
* ``x_tilde(cfg, a)``             -- the unitarity-normalized vector for real ``a``.

Coefficient subscripts are residues mod ``m``: the coefficients multiply
powers of an order-``m`` generator.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, SingularDenominator

SINGULAR_TOL = 1e-14
# width of the band around a special parameter value that is routed to its closed form
GUARD = 1e-9


@dataclass(frozen=True)
class ModulusConfig:
    """Root-of-unity conventions for level ``m``.

    ``Q = exp(i pi/m)`` enters the coefficients, ``q = exp(i pi (m-1)/m)`` the
    Pauli operators and braid generators, and ``q2 = q**2`` is a primitive
    ``m``-th root of unity.
    """

    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise ValueError(f"m must be an integer >= 2, got {self.m!r}")

    @cached_property
    def Q(self) -> complex:
        return cmath.exp(1j * math.pi / self.m)

    @cached_property
    def q(self) -> complex:
        return cmath.exp(1j * math.pi * (self.m - 1) / self.m)

    @cached_property
    def q2(self) -> complex:
        return cmath.exp(2j * math.pi * (self.m - 1) / self.m)

    def Q_pow(self, k) -> complex:
        """``Q**k`` with the exponent reduced mod ``2m`` before exponentiating."""
        return cmath.exp(1j * math.pi * (k % (2 * self.m)) / self.m)

    def q_pow(self, e) -> complex:
        """``q**e`` on the branch ``exp(i pi (m-1) e / m)``; ``e`` may be fractional."""
        return cmath.exp(1j * math.pi * (((self.m - 1) * e) % (2 * self.m)) / self.m)

    def q2_pow(self, k: int) -> complex:
        return cmath.exp(2j * math.pi * (((self.m - 1) * k) % self.m) / self.m)


class CoefficientKind(str, enum.Enum):
    regular = "regular"
    limit_a_eq_1 = "limit_a_eq_1"
    limit_a_eq_minus1 = "limit_a_eq_minus1"
    limit_a_eq_0 = "limit_a_eq_0"
    limit_a_to_infinity = "limit_a_to_infinity"


@dataclass(frozen=True)
class SpectralCoefficients:
    m: int
    a: float
    values: np.ndarray
    kind: CoefficientKind

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j):
        return self.values[j]


def _check_index(cfg: ModulusConfig, j: int):
    if not 0 <= j < cfg.m:
        raise ValueError(f"coefficient index {j} outside [0, {cfg.m - 1}]")


def x_additive(cfg: ModulusConfig, j: int, alpha: complex) -> complex:
    """``prod_{k<j} sin((2k pi + alpha)/2m) / sin((2(k+1) pi - alpha)/2m)``."""
    _check_index(cfg, j)
    m = cfg.m
    out = 1.0 + 0j
    for k in range(j):
        den = cmath.sin((2 * (k + 1) * math.pi - alpha) / (2 * m))
        if abs(den) < SINGULAR_TOL:
            raise SingularDenominator(f"x_{j}({alpha}) is undefined for m={m}")
        out *= cmath.sin((2 * k * math.pi + alpha) / (2 * m)) / den
    return out


def alpha_of(cfg: ModulusConfig, a: float) -> complex:
    """Additive parameter ``m i log(1/a)`` (principal logarithm)."""
    if a == 0:
        raise DomainError("alpha is undefined at a = 0")
    return cfg.m * 1j * cmath.log(1 / complex(a))


def _factor(cfg: ModulusConfig, k: int, a: float) -> tuple[complex, complex]:
    # (a Q^k - Q^-k) / (Q^{k+1} - a Q^{-k-1}), divided through by a when |a| > 1
    if abs(a) > 1:
        b = 1 / a
        return cfg.Q_pow(k) - b * cfg.Q_pow(-k), b * cfg.Q_pow(k + 1) - cfg.Q_pow(-k - 1)
    return a * cfg.Q_pow(k) - cfg.Q_pow(-k), cfg.Q_pow(k + 1) - a * cfg.Q_pow(-k - 1)


def x_multiplicative(cfg: ModulusConfig, j: int, a: float) -> complex:
    """``X_j(a) = prod_{k<j} (a Q^k - Q^-k) / (Q^{k+1} - a Q^{-k-1})``.

    For even ``m`` the numerator at ``k = m/2`` and the denominator at
    ``k = m/2 - 1`` both equal ``i(a+1)`` and are cancelled, so only
    ``X_{m/2}`` is singular at ``a = -1``.
    """
    _check_index(cfg, j)
    m = cfg.m
    half = m // 2 if m % 2 == 0 else None
    cancel = half is not None and j > half
    out = 1.0 + 0j
    for k in range(j):
        num, den = _factor(cfg, k, a)
        if cancel and k == half:
            num = 1.0
        if cancel and k == half - 1:
            den = 1.0
        if abs(den) < SINGULAR_TOL:
            raise SingularDenominator(f"X_{j}({a}) has a pole for m={m}")
        out *= num / den
    return out


def _radicand(m: int, a: float) -> float:
    # (a+1)(a^m-1) / (m (a-1)(a^m+1)), written with the geometric sum to survive a -> 1;
    # invariant under a -> 1/a, which keeps a^m from overflowing
    if abs(a) > 1:
        a = 1 / a
    geom = sum(a**k for k in range(m))
    return (a + 1) * geom / (m * (a**m + 1))


def normalization_factor(cfg: ModulusConfig, a: float) -> float:
    """Positive square root of ``(a+1)(a^m-1) / (m(a-1)(a^m+1))``.

    The radicand is positive for every real ``a`` other than ``+-1``, where
    callers must use the closed forms in :func:`x_tilde`.
    """
    if abs(a - 1) < GUARD or abs(a + 1) < GUARD:
        raise DomainError(f"normalization factor is not evaluated at a = {a}; use x_tilde")
    if math.isinf(a):
        return 1 / math.sqrt(cfg.m)
    return math.sqrt(_radicand(cfg.m, a))


def parse_parameter(a) -> float:
    """Accept floats and the tokens ``inf``, ``+inf``, ``-inf``."""
    if isinstance(a, str):
        token = a.strip().lower()
        if token in {"inf", "+inf", "infinity", "+infinity"}:
            return math.inf
        if token in {"-inf", "-infinity"}:
            return -math.inf
        return float(token)
    a = float(a)
    if math.isnan(a):
        raise DomainError("parameter a is NaN")
    return a


def x_tilde(cfg: ModulusConfig, a) -> SpectralCoefficients:
    """Normalized coefficients ``X~_j(a)`` for ``j = 0..m-1``.

    Special points use closed forms: ``a = 1`` gives the identity, ``a = 0``
    gives ``Q^{mj - j^2}/sqrt(m)``, ``a = +-inf`` gives ``(-1)^j Q^{j^2}/sqrt(m)``
    and ``a = -1`` gives ``i (-1)^{m/2}`` on ``j = m/2`` for even ``m`` (the
    limit from ``a < -1``) or ``X_j(-1)/m`` for odd ``m``.
    """
    a = parse_parameter(a)
    m = cfg.m
    j = np.arange(m)
    if math.isinf(a):
        vals = np.array([(-1) ** int(t) * cfg.Q_pow(int(t) ** 2) for t in j]) / math.sqrt(m)
        return SpectralCoefficients(m, a, vals, CoefficientKind.limit_a_to_infinity)
    if abs(a - 1) < GUARD:
        vals = np.zeros(m, dtype=np.complex128)
        vals[0] = 1.0
        return SpectralCoefficients(m, a, vals, CoefficientKind.limit_a_eq_1)
    if abs(a + 1) < GUARD:
        if m % 2 == 0:
            vals = np.zeros(m, dtype=np.complex128)
            vals[m // 2] = 1j * (-1) ** (m // 2)
        else:
            vals = np.array([x_multiplicative(cfg, int(t), -1.0) for t in j]) / m
        return SpectralCoefficients(m, a, vals, CoefficientKind.limit_a_eq_minus1)
    if abs(a) < GUARD:
        vals = np.array([cfg.Q_pow(m * int(t) - int(t) ** 2) for t in j]) / math.sqrt(m)
        return SpectralCoefficients(m, a, vals, CoefficientKind.limit_a_eq_0)
    norm = normalization_factor(cfg, a)
    vals = np.array([norm * x_multiplicative(cfg, int(t), a) for t in j], dtype=np.complex128)
    return SpectralCoefficients(m, a, vals, CoefficientKind.regular)


def x_additive_vector(cfg: ModulusConfig, alpha: complex) -> np.ndarray:
    return np.array([x_additive(cfg, j, alpha) for j in range(cfg.m)], dtype=np.complex128)


def x_multiplicative_vector(cfg: ModulusConfig, a: float) -> np.ndarray:
    return np.array([x_multiplicative(cfg, j, a) for j in range(cfg.m)], dtype=np.complex128)


# scalar identities ---------------------------------------------------------


def unitarity_target(cfg: ModulusConfig, a: float) -> float:
    """``m(a-1)(a^m+1) / ((a+1)(a^m-1))``, the reciprocal of the squared normalization."""
    return 1.0 / _radicand(cfg.m, a)


def verify_unitarity_sum(cfg: ModulusConfig, a: float, j: int) -> float:
    """``|sum_n X_n(a) X_{n+j}(1/a) - target|`` with target 0 for ``j > 0``."""
    if abs(a - 1) < GUARD or abs(a + 1) < GUARD or a == 0:
        raise DomainError(f"unitarity sum is stated for real a outside {{-1, 0, 1}}, got {a}")
    _check_index(cfg, j)
    m = cfg.m
    xa = x_multiplicative_vector(cfg, a)
    xinv = x_multiplicative_vector(cfg, 1 / a)
    total = sum(xa[n] * xinv[(n + j) % m] for n in range(m))
    target = unitarity_target(cfg, a) if j == 0 else 0.0
    return abs(total - target)


def star_triangle_sides(cfg: ModulusConfig, n1: int, n2: int, n3: int, alpha: complex,
                        alpha_prime: complex, form: str = "printed") -> tuple[complex, complex]:
    """Both sides of the scalar star-triangle consistency identity.

    ``form="printed"`` uses the phases ``(q2)^{-n3 l}`` and ``(q2)^{-l(n1-n3) - n1 n3}``.
    That identity already fails for ``m = 2`` at ``(n1, n2, n3) = (0, 1, 0)``.
    ``form="corrected"`` uses ``(q2)^{-n2 l}`` and ``(q2)^{-l(n1-n3) - n2 n3}``,
    which holds for every index triple.
    """
    if form not in ("printed", "corrected"):
        raise ValueError(f"unknown form {form!r}")
    m = cfg.m
    xa = x_additive_vector(cfg, alpha)
    xb = x_additive_vector(cfg, alpha_prime)
    xab = x_additive_vector(cfg, alpha + alpha_prime)
    n1, n2, n3 = n1 % m, n2 % m, n3 % m
    lhs_phase = n3 if form == "printed" else n2
    cross = n1 if form == "printed" else n2
    lhs = sum(xa[(n1 - l) % m] * xab[n2] * xb[(n3 - l) % m] * cfg.q2_pow(-lhs_phase * l)
              for l in range(m))
    rhs = sum(xb[l] * xab[(n1 - n3) % m] * xa[(l - n2) % m]
              * cfg.q2_pow(-l * (n1 - n3) - cross * n3) for l in range(m))
    return lhs, rhs


def verify_star_triangle_scalar(cfg: ModulusConfig, n1: int, n2: int, n3: int, alpha: complex,
                                alpha_prime: complex, form: str = "printed") -> float:
    lhs, rhs = star_triangle_sides(cfg, n1, n2, n3, alpha, alpha_prime, form)
    return abs(lhs - rhs)


def verify_operator_coefficients(cfg: ModulusConfig, n1: int, n2: int, alpha: complex,
                                 alpha_prime: complex) -> float:
    """Coefficient of ``T1^{n1} T2^{n2}`` on both sides of the star-triangle relation.

    Uses only ``T2^b T1^c = q2^{-bc} T1^c T2^b``; this is the two-index identity
    that the operator relation reduces to on the quantum torus.
    """
    m = cfg.m
    xa = x_additive_vector(cfg, alpha)
    xb = x_additive_vector(cfg, alpha_prime)
    xab = x_additive_vector(cfg, alpha + alpha_prime)
    lhs = sum(xa[(n1 - c) % m] * xab[n2 % m] * xb[c] * cfg.q2_pow(-n2 * c) for c in range(m))
    rhs = sum(xb[c] * xab[n1 % m] * xa[(n2 - c) % m] * cfg.q2_pow(-c * n1) for c in range(m))
    return abs(lhs - rhs)
