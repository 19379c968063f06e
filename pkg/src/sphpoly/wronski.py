"""Developing maps ``f = z**alpha * P/Q`` as fibers of the Wronski-type map.

``W_alpha(P, Q) = z (P'Q - PQ') + alpha P Q``.  Writing ``P = sum p_i z^i``
and ``Q = sum q_j z^j`` gives ``W = sum (i - j + alpha) p_i q_j z^(i+j)``,
which is the form used everywhere below.

Fibers ``W_alpha(P, Q) = c R`` are computed in the chart where ``P`` and
``Q`` are monic.  That chart never degenerates: the top coefficient of
``W`` is ``(p - q + alpha) p_p q_q`` and ``deg R = p + q``.
"""

from __future__ import annotations

import cmath
import math
import os
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from sphpoly.errors import (
    AmbiguousMultiplicityWarning,
    ContinuationError,
    IncompleteFiberWarning,
    NumericalError,
    ValidationError,
)
from sphpoly.feasibility import DegreeSolution
from sphpoly.polynomial import Polynomial

INFINITY = complex(math.inf, 0.0)


@dataclass(frozen=True)
class SolverConfig:
    residual_tol: float = 1e-10
    realness_tol: float = 1e-8
    dedup_tol: float = 1e-6
    max_newton_iters: int = 60
    num_starts: int = 2000
    rng_seed: int = 0
    continuation_step: float = 0.05

    def __post_init__(self) -> None:
        for name in ("residual_tol", "realness_tol", "dedup_tol", "continuation_step"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        if self.num_starts < 1 or self.max_newton_iters < 1:
            raise ValidationError("num_starts and max_newton_iters must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "SolverConfig":
        """Defaults, then ``SPHPOLY_*`` environment variables, then ``overrides``."""
        env = {
            "residual_tol": "SPHPOLY_RESIDUAL_TOL",
            "realness_tol": "SPHPOLY_REALNESS_TOL",
            "dedup_tol": "SPHPOLY_DEDUP_TOL",
        }
        values = {}
        for name, var in env.items():
            if var in os.environ:
                try:
                    values[name] = float(os.environ[var])
                except ValueError as exc:
                    raise ValidationError(f"{var} is not a number") from exc
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def tolerances(self) -> dict:
        return {
            "residualTol": self.residual_tol,
            "realnessTol": self.realness_tol,
            "dedupTol": self.dedup_tol,
        }


@dataclass(frozen=True)
class PolynomialPair:
    """Numerator, denominator and exponent of ``f = z**alpha * P/Q``."""

    P: Polynomial
    Q: Polynomial
    alpha: Fraction | float

    def __post_init__(self) -> None:
        if self.P.is_zero or self.Q.is_zero:
            raise ValidationError("P and Q must be nonzero")
        if not 0 < self.alpha < 1:
            raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def degrees(self) -> tuple[int, int]:
        return self.P.degree(), self.Q.degree()

    def normalized(self) -> "PolynomialPair":
        """Both polynomials scaled to be monic."""
        return replace(self, P=self.P.scaled_to_monic(), Q=self.Q.scaled_to_monic())


@dataclass(frozen=True)
class Realized:
    """Orders at zero and the corner angles at 0 and infinity they produce."""

    p0: int
    q0: int
    alpha0: Fraction | float
    alpha_inf: Fraction | float
    ambiguous: bool = False


@dataclass(frozen=True)
class SolutionReport:
    pair: PolynomialPair
    residual: float
    is_real: bool
    realized: Realized


# --------------------------------------------------------------------------
# The map itself
# --------------------------------------------------------------------------


def wronski_map(pair: PolynomialPair) -> Polynomial:
    """Coefficients of ``z (P'Q - PQ') + alpha P Q``; exact for exact inputs."""
    P, Q, alpha = pair.P.coeffs, pair.Q.coeffs, pair.alpha
    out = [0 * alpha] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        for j, b in enumerate(Q):
            out[i + j] = out[i + j] + (i - j + alpha) * a * b
    return Polynomial(tuple(out))


def critical_polynomial(
    corners: Sequence[float], mults: Sequence[int], degree_sol: DegreeSolution
) -> Polynomial:
    """Monic ``z**max(p0, q0) * prod (z - a_j)**mults[j]``.

    ``mults[j]`` is the critical multiplicity ``alpha_j - 1`` at corner
    ``a_j``; corners must be positive and strictly increasing.
    """
    if len(corners) != len(mults):
        raise ValidationError("corners and mults differ in length")
    if any(a <= 0 for a in corners) or any(b <= a for a, b in zip(corners, corners[1:])):
        raise ValidationError("corners must be positive and strictly increasing")
    if any(int(m) < 1 for m in mults):
        raise ValidationError("multiplicities must be >= 1")
    zero_order = max(degree_sol.p0, degree_sol.q0)
    if sum(mults) + zero_order != degree_sol.degree:
        raise ValidationError(
            f"degree mismatch: sum(mults) + {zero_order} != p + q = {degree_sol.degree}"
        )
    roots = [a for a, m in zip(corners, mults) for _ in range(int(m))]
    return Polynomial.from_roots(roots).shift(zero_order)


def _exponent_matrix(p: int, q: int, alpha: float) -> np.ndarray:
    i = np.arange(p + 1)[:, None]
    j = np.arange(q + 1)[None, :]
    return (i - j + alpha).astype(complex)


def _apply(M: np.ndarray, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    p, q = len(P) - 1, len(Q) - 1
    out = np.zeros(p + q + 1, dtype=complex)
    for i in range(p + 1):
        out[i : i + q + 1] += M[i] * P[i] * Q
    return out


class _FiberSystem:
    """Square system ``W_alpha(P, Q) - c R = 0`` in the monic chart.

    Unknowns: ``p_0..p_{p-1}``, ``q_0..q_{q-1}``, ``c``.
    """

    def __init__(self, R: np.ndarray, p: int, q: int, alpha: float):
        self.R = R
        self.p, self.q = p, q
        self.set_alpha(alpha)

    def set_alpha(self, alpha: float) -> None:
        self.alpha = alpha
        self.M = _exponent_matrix(self.p, self.q, alpha)

    def split(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, complex]:
        P = np.append(x[: self.p], 1.0)
        Q = np.append(x[self.p : self.p + self.q], 1.0)
        return P, Q, x[-1]

    def pack(self, P: np.ndarray, Q: np.ndarray, c: complex) -> np.ndarray:
        return np.concatenate([P[:-1] / P[-1], Q[:-1] / Q[-1], [c / (P[-1] * Q[-1])]])

    def residual(self, x: np.ndarray) -> np.ndarray:
        P, Q, c = self.split(x)
        return _apply(self.M, P, Q) - c * self.R

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        P, Q, _ = self.split(x)
        p, q = self.p, self.q
        J = np.zeros((p + q + 1, p + q + 1), dtype=complex)
        for i in range(p):
            J[i : i + q + 1, i] = self.M[i] * Q
        for j in range(q):
            J[j : j + p + 1, p + j] = self.M[:, j] * P
        J[:, -1] = -self.R
        return J

    def alpha_derivative(self, x: np.ndarray) -> np.ndarray:
        P, Q, _ = self.split(x)
        return np.convolve(P, Q)

    def newton(self, x: np.ndarray, iters: int, tol: float = 1e-14) -> tuple[np.ndarray, bool]:
        """Damped Newton; returns the iterate and whether it converged."""
        f = self.residual(x)
        norm = np.linalg.norm(f)
        for _ in range(iters):
            try:
                step = np.linalg.solve(self.jacobian(x), f)
            except np.linalg.LinAlgError:
                return x, False
            t = 1.0
            while True:
                trial = x - t * step
                f_trial = self.residual(trial)
                n_trial = np.linalg.norm(f_trial)
                if n_trial < norm or t < 1e-4:
                    break
                t *= 0.5
            x, f, norm = trial, f_trial, n_trial
            if not np.all(np.isfinite(x)):
                return x, False
            if norm < tol * (1 + np.linalg.norm(x)) or np.linalg.norm(t * step) < 1e-15 * (
                1 + np.linalg.norm(x)
            ):
                return x, bool(norm < 1e-8)
        return x, bool(norm < tol * 1e3 * (1 + np.linalg.norm(x)))


def _residual(pair: PolynomialPair, R: Polynomial) -> float:
    """Distance from ``W(P, Q)`` to the best scalar multiple of ``R``, relative to ``|W|``."""
    W = np.asarray(wronski_map(pair).to_array())
    Rv = R.to_array()
    n = max(len(W), len(Rv))
    W = np.pad(W, (0, n - len(W)))
    Rv = np.pad(Rv, (0, n - len(Rv)))
    wn = np.linalg.norm(W)
    if wn == 0:
        return math.inf
    c = np.vdot(Rv, W) / np.vdot(Rv, Rv)
    return float(np.linalg.norm(W - c * Rv) / wn)


def _is_real(poly: Polynomial, tol: float) -> bool:
    c = poly.to_array()
    k = int(np.argmax(np.abs(c)))
    rotated = c * np.conj(c[k]) / abs(c[k])
    return bool(np.max(np.abs(rotated.imag)) <= tol * abs(c[k]))


def _pair_is_real(pair: PolynomialPair, tol: float) -> bool:
    return _is_real(pair.P, tol) and _is_real(pair.Q, tol)


def classify_solution(pair: PolynomialPair, dedup_tol: float = 1e-6) -> Realized:
    """Measured ``(p0, q0)`` and the angles ``|p0 - q0 + alpha|``, ``|p - q + alpha|``.

    Orders at zero count roots within ``dedup_tol`` of the origin.  Roots in
    ``[dedup_tol, sqrt(dedup_tol))`` make the count ambiguous; this is
    flagged and warned about rather than guessed.
    """
    orders = []
    ambiguous = False
    for poly in (pair.P, pair.Q):
        radii = np.abs(poly.roots())
        orders.append(int(np.sum(radii < dedup_tol)))
        if np.any((radii >= dedup_tol) & (radii < math.sqrt(dedup_tol))):
            ambiguous = True
    if ambiguous:
        warnings.warn(
            "a root lies near 0 but outside the clustering radius",
            AmbiguousMultiplicityWarning,
            stacklevel=2,
        )
    p0, q0 = orders
    p, q = pair.degrees
    alpha = pair.alpha
    return Realized(p0, q0, abs(p0 - q0 + alpha), abs(p - q + alpha), ambiguous)


def _report(pair: PolynomialPair, R: Polynomial, config: SolverConfig) -> SolutionReport:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AmbiguousMultiplicityWarning)
        realized = classify_solution(pair, config.dedup_tol)
    return SolutionReport(
        pair=pair,
        residual=_residual(pair, R),
        is_real=_pair_is_real(pair, config.realness_tol),
        realized=realized,
    )


def _sort_key(report: SolutionReport) -> tuple:
    key = []
    for poly in (report.pair.P, report.pair.Q):
        for c in poly.to_array():
            key.extend((round(c.real, 8), round(c.imag, 8)))
    return tuple(key)


def _pair_from_vector(system: _FiberSystem, x: np.ndarray, alpha) -> PolynomialPair:
    P, Q, _ = system.split(x)
    return PolynomialPair(
        Polynomial(tuple(complex(c) for c in P)), Polynomial(tuple(complex(c) for c in Q)), alpha
    )


def _random_monic(rng: np.random.Generator, degree: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0, 1, degree))
    roots = r * np.exp(2j * np.pi * rng.uniform(0, 1, degree))
    return np.polynomial.polynomial.polyfromroots(roots) if degree else np.ones(1, complex)


def solve_wronski(
    R: Polynomial, degree_sol: DegreeSolution, config: SolverConfig | None = None
) -> list[SolutionReport]:
    """All ``(P, Q)`` with ``deg P <= p``, ``deg Q <= q`` and ``W_alpha(P, Q) = c R``.

    Newton multistart from seeded random monic pairs; stops once
    ``binom(p+q, p)`` distinct points are found.  Falling short after
    ``num_starts`` attempts emits :class:`IncompleteFiberWarning` and
    returns what was found.
    """
    config = config or SolverConfig()
    p, q = degree_sol.p, degree_sol.q
    if p < 0 or q < 0 or p + q < 1:
        raise ValidationError(f"need p, q >= 0 and p + q >= 1, got p={p}, q={q}")
    if R.degree() != p + q:
        raise ValidationError(f"deg R = {R.degree()} but p + q = {p + q}")
    alpha = degree_sol.alpha
    if not 0 < alpha < 1:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")

    Rv = R.to_array()
    Rn = Rv / np.linalg.norm(Rv)
    system = _FiberSystem(Rn, p, q, float(alpha))
    expected = math.comb(p + q, p)
    radius = 1.5 * max(1.0, float(np.max(np.abs(R.roots()), initial=1.0)))
    rng = np.random.default_rng(config.rng_seed)

    found: list[np.ndarray] = []
    for _ in range(config.num_starts):
        if len(found) == expected:
            break
        P0 = _random_monic(rng, p, radius)
        Q0 = _random_monic(rng, q, radius)
        W0 = _apply(system.M, P0, Q0)
        c0 = np.vdot(Rn, W0)
        x, ok = system.newton(system.pack(P0, Q0, c0), config.max_newton_iters)
        if not ok:
            continue
        scale = 1 + np.linalg.norm(x)
        if any(np.linalg.norm(x - y) < config.dedup_tol * scale for y in found):
            continue
        found.append(x)

    if len(found) < expected:
        warnings.warn(
            f"found {len(found)} of {expected} fiber points after {config.num_starts} starts",
            IncompleteFiberWarning,
            stacklevel=2,
        )
    reports = [_report(_pair_from_vector(system, x, alpha), R, config) for x in found]
    reports = [r for r in reports if r.residual <= config.residual_tol]
    reports.sort(key=_sort_key)
    return reports


def continue_alpha(
    pair: PolynomialPair,
    target_alpha,
    R: Polynomial,
    config: SolverConfig | None = None,
) -> SolutionReport:
    """Follow a fiber point as ``alpha`` moves to ``target_alpha`` with ``R`` fixed.

    RK4 tangent predictor with a Newton corrector and step halving.  Raises
    :class:`ContinuationError` carrying the last accepted ``alpha`` when the
    step underflows or the endpoint residual exceeds ``residual_tol``.
    """
    config = config or SolverConfig()
    if not 0 < target_alpha < 1:
        raise ValidationError(f"target alpha must lie in (0, 1), got {target_alpha}")
    start_residual = _residual(pair, R)
    if start_residual > config.residual_tol:
        raise ValidationError(f"start pair is not a fiber point (residual {start_residual:.2e})")

    pair = pair.normalized()
    p, q = pair.degrees
    Rv = R.to_array()
    Rn = Rv / np.linalg.norm(Rv)
    a = float(pair.alpha)
    target = float(target_alpha)
    system = _FiberSystem(Rn, p, q, a)
    P, Q = pair.P.to_array(), pair.Q.to_array()
    c = np.vdot(Rn, _apply(system.M, P, Q))
    x = system.pack(P, Q, c)

    def tangent(x_: np.ndarray, alpha_: float) -> np.ndarray:
        system.set_alpha(alpha_)
        return -np.linalg.solve(system.jacobian(x_), system.alpha_derivative(x_))

    h_max = config.continuation_step
    h = min(h_max, abs(target - a))
    direction = 1.0 if target >= a else -1.0
    while abs(target - a) > 1e-15:
        h = min(h, abs(target - a))
        step = direction * h
        try:
            k1 = tangent(x, a)
            k2 = tangent(x + 0.5 * step * k1, a + 0.5 * step)
            k3 = tangent(x + 0.5 * step * k2, a + 0.5 * step)
            k4 = tangent(x + step * k3, a + step)
            predicted = x + step * (k1 + 2 * k2 + 2 * k3 + k4) / 6
            accepted = _correct(system, predicted, a + step)
        except np.linalg.LinAlgError:
            accepted = None
        if accepted is None:
            h *= 0.5
            if h < 1e-10:
                raise ContinuationError(f"step size underflow near alpha={a:.12g}", a)
            continue
        x = accepted
        a = a + step if abs(target - (a + step)) > 1e-15 else target
        h = min(1.5 * h, h_max)

    system.set_alpha(target)
    x, _ = system.newton(x, 5)
    end_pair = _pair_from_vector(system, x, target_alpha)
    report = _report(end_pair, R, config)
    if report.residual > config.residual_tol:
        raise ContinuationError(
            f"endpoint residual {report.residual:.2e} exceeds {config.residual_tol:.1e}", target
        )
    return report


def _correct(system: _FiberSystem, x: np.ndarray, alpha: float) -> np.ndarray | None:
    """Newton corrector that refuses to wander.

    The first update must be small relative to ``x`` and later updates must
    contract until they reach the conditioning-limited noise floor.
    Acceptance is decided on the residual, not on the update size.
    """
    system.set_alpha(alpha)
    scale = 1 + np.linalg.norm(x)
    previous = math.inf
    for k in range(8):
        f = system.residual(x)
        if np.linalg.norm(f) < 1e-15 * scale:
            return x
        delta = np.linalg.solve(system.jacobian(x), f)
        size = np.linalg.norm(delta)
        if k == 0 and size > 0.05 * scale:
            return None
        if size > 0.5 * previous and size > 1e-9 * scale:
            return None
        x = x - delta
        previous = size
        if size < 1e-13 * scale:
            break
    return x if np.linalg.norm(system.residual(x)) < 1e-13 * scale else None


def evaluate_developing_map(pair: PolynomialPair, z: complex) -> complex:
    """Principal branch of ``z**alpha * P(z)/Q(z)``; :data:`INFINITY` at poles."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise ValidationError(f"z={z} lies on the branch cut (-inf, 0]")
    den = pair.Q(z)
    if den == 0:
        return INFINITY
    return cmath.exp(float(pair.alpha) * cmath.log(z)) * pair.P(z) / den


def developing_map_derivative(pair: PolynomialPair, z):
    """``f'(z)`` by the product rule on ``z**alpha``, ``P`` and ``1/Q``."""
    alpha = float(pair.alpha)
    P, Q = pair.P, pair.Q
    za = np.exp(alpha * np.log(z))
    Qz = Q(z)
    return za * (P.derivative()(z) * Qz - P(z) * Q.derivative()(z)) / Qz**2 + alpha * za / z * P(z) / Qz


@dataclass(frozen=True)
class VerificationReport:
    residual: float
    ok: bool
    residual_ok: bool
    orders: tuple[tuple[complex, int, int], ...] = field(default=())


def _cluster(roots: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda w: (w.real, w.imag)):
        for group in clusters:
            if abs(np.mean(group) - r) < tol:
                group.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(g)), len(g)) for g in clusters]


def verify_solution(
    pair: PolynomialPair, R: Polynomial, tol: float = 1e-10, zero_tol: float = 1e-6
) -> VerificationReport:
    """Residual against ``R`` plus a numerical order-of-vanishing check.

    For each root ``a`` of ``R`` away from 0, ``|f'|`` is averaged on circles of
    radius ``rho`` and ``rho/10`` around ``a``; the base-10 log of the ratio
    estimates the vanishing order, which must equal the multiplicity of ``a``.
    """
    residual = _residual(pair, R)
    residual_ok = residual <= tol
    roots = [(a, m) for a, m in _cluster(R.roots(), 1e-4) if abs(a) > zero_tol]
    checks = []
    theta = np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)
    special = [0.0] + [a for a, _ in roots] + list(pair.Q.roots())
    for a, m in roots:
        others = [abs(a - s) for s in special if abs(a - s) > 1e-9]
        rho = 1e-2 * min(others + [1.0])
        means = []
        for radius in (rho, rho / 10):
            pts = a + radius * theta
            if np.any((pts.imag == 0) & (pts.real <= 0)):
                pts = pts * np.exp(1e-9j)
            means.append(np.mean(np.abs(developing_map_derivative(pair, pts))))
        measured = int(round(math.log10(means[0] / means[1]))) if means[1] > 0 else -1
        checks.append((a, m, measured))
    orders_ok = all(m == measured for _, m, measured in checks)
    return VerificationReport(residual, residual_ok and orders_ok, residual_ok, tuple(checks))


# --------------------------------------------------------------------------
# Seeded targets
# --------------------------------------------------------------------------


def random_real_target(degree: int, rng: np.random.Generator) -> Polynomial:
    """Monic polynomial with simple roots drawn uniformly from [0.5, 3.5]."""
    roots = np.sort(rng.uniform(0.5, 3.5, degree))
    return Polynomial(tuple(np.polynomial.polynomial.polyfromroots(roots).real))


def random_complex_target(degree: int, rng: np.random.Generator) -> Polynomial:
    """Monic polynomial with roots drawn from the annulus 0.5 <= |z| <= 2."""
    radius = rng.uniform(0.5, 2.0, degree)
    roots = radius * np.exp(2j * np.pi * rng.uniform(0, 1, degree))
    return Polynomial(tuple(np.polynomial.polynomial.polyfromroots(roots)))
