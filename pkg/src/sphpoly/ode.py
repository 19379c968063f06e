"""Schwarzian derivatives, the Fuchsian normal form and numerical monodromy.

The normal form integrated here is

    w'' + sum_j (1 - alpha_j)/(z - a_j) w'
        + (alpha' alpha'' z^(n-3) + lam_{n-4} z^(n-4) + ... + lam_0)
          / prod_j (z - a_j) w = 0,

with finite singularities ``a_0 = 0, a_1, ..., a_{n-2}`` and exponents
``alpha'', alpha'`` at infinity.  For ``y'' + p y' + q y = 0`` the ratio of
two solutions has Schwarzian ``2q - p'- p**2/2``; this is how the accessory
parameters are read off from a developing map.
"""

from __future__ import annotations

import cmath
import decimal
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from sphpoly.errors import InconsistencyError, NumericalError, ValidationError
from sphpoly.feasibility import AngleSignature, exponents_at_infinity
from sphpoly.polynomial import Polynomial
from sphpoly.wronski import PolynomialPair, wronski_map


def _is_exact(poly: Polynomial) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in poly.coeffs)


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.scaled_to_monic()


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self) -> None:
        if self.denominator.is_zero:
            raise ValidationError("denominator must be nonzero")

    def __call__(self, z):
        return self.numerator(z) / self.denominator(z)

    def reduced(self) -> "RationalFunction":
        """Cancel the common factor and make the denominator monic.

        Exact (Fraction) coefficients get a full polynomial gcd; float
        coefficients only shed common powers of ``z``.
        """
        num, den = self.numerator, self.denominator
        if num.is_zero:
            return RationalFunction(num, Polynomial((1,)))
        if _is_exact(num) and _is_exact(den):
            g = _gcd(num, den)
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        else:
            k = min(num.order_at_zero(), den.order_at_zero())
            num = Polynomial(num.coeffs[k:])
            den = Polynomial(den.coeffs[k:])
        lead = den.coeffs[-1]
        inv = 1 / Fraction(lead) if isinstance(lead, (int, Fraction)) else 1 / lead
        return RationalFunction(num * inv, den * inv)

    def equals(self, other: "RationalFunction") -> bool:
        """Exact equality by cross-multiplication."""
        return (self.numerator * other.denominator).coeffs == (
            other.numerator * self.denominator
        ).coeffs


def schwarzian_of_pair(pair: PolynomialPair) -> RationalFunction:
    """Schwarzian of ``f = z**alpha * P/Q`` as an explicit rational function.

    With ``W = W_alpha(P, Q)`` one has ``f' = z**(alpha-1) W / Q**2``, so
    ``f''/f' = A/B`` where ``B = z W Q`` and
    ``A = (alpha-1) W Q + z W' Q - 2 z W Q'``; then
    ``S = (A'B - AB' - A**2/2) / B**2``.  No branch of ``z**alpha`` is needed.
    """
    W = wronski_map(pair)
    Q = pair.Q
    z = Polynomial.monomial(1)
    B = z * W * Q
    A = W * Q * (pair.alpha - 1) + z * W.derivative() * Q - z * W * Q.derivative() * 2
    half = Fraction(1, 2) if isinstance(pair.alpha, Fraction) else 0.5
    num = A.derivative() * B - A * B.derivative() - A * A * half
    return RationalFunction(num, B * B)


def schwarzian_value(pair: PolynomialPair, z):
    """Pointwise Schwarzian from ``f''/f' = (alpha-1)/z + W'/W - 2Q'/Q``.

    Numerically kinder than evaluating :func:`schwarzian_of_pair` away from
    the origin, where its numerator and denominator cancel heavily.
    """
    W = wronski_map(pair)
    Q = pair.Q
    a1 = float(pair.alpha) - 1
    W1, W2 = W.derivative(), W.derivative().derivative()
    Q1, Q2 = Q.derivative(), Q.derivative().derivative()
    w, w1, w2 = W(z), W1(z), W2(z)
    v, v1, v2 = Q(z), Q1(z), Q2(z)
    L = a1 / z + w1 / w - 2 * v1 / v
    dL = -a1 / z**2 + (w2 * w - w1 * w1) / w**2 - 2 * (v2 * v - v1 * v1) / v**2
    return dL - 0.5 * L * L


def schwarzian_numeric(func, z: complex, radius: float = 1e-2, points: int = 64) -> complex:
    """Schwarzian of an analytic ``func`` at ``z`` from Cauchy-integral derivatives."""
    w = np.exp(2j * np.pi * np.arange(points) / points)
    values = np.array([func(z + radius * wk) for wk in w])
    coeffs = np.fft.fft(values) / points
    d1 = coeffs[1] / radius
    d2 = 2 * coeffs[2] / radius**2
    d3 = 6 * coeffs[3] / radius**3
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


@dataclass(frozen=True)
class FuchsianEquation:
    """``w'' + p w' + q w = 0`` with ``p = sum (1 - angle_j)/(z - a_j)``.

    ``q * prod (z - a_j)`` is the polynomial whose top coefficient (degree
    ``n - 3``) is ``alpha' alpha''`` and whose lower coefficients are the
    ``accessory`` parameters.  Equivalently ``q = sum C_j / (z - a_j)`` with
    ``residues`` ``C_j``; either description may be given and the other is
    derived.  Evaluation goes through the residues, which stay accurate near
    clustered singular points where the polynomial form cancels.
    """

    singularities: tuple[complex, ...]
    angles: tuple
    alpha_prime: Fraction
    alpha_double_prime: Fraction
    accessory: tuple[complex, ...] = field(default=())
    residues: tuple[complex, ...] = field(default=())

    def __post_init__(self) -> None:
        pts = np.array(self.singularities, dtype=complex)
        if len(self.angles) != len(pts):
            raise ValidationError("need one angle per singular point")
        if len(set(self.singularities)) != len(self.singularities):
            raise ValidationError("singular points must be distinct")
        if self.residues and not self.accessory:
            if len(self.residues) != len(pts):
                raise ValidationError("need one residue per singular point")
            T = np.zeros(len(pts), dtype=complex)
            for j, c in enumerate(self.residues):
                others = np.delete(pts, j)
                T = T + c * np.polynomial.polynomial.polyfromroots(others)
            object.__setattr__(self, "accessory", tuple(complex(c) for c in T[: len(pts) - 2]))
        elif self.accessory and not self.residues:
            if len(self.accessory) != self.n - 3:
                raise ValidationError(f"need {self.n - 3} accessory parameters")
            num = self.numerator()
            res = []
            for j, a in enumerate(pts):
                others = np.delete(pts, j)
                res.append(complex(np.polynomial.polynomial.polyval(a, num) / np.prod(a - others)))
            object.__setattr__(self, "residues", tuple(res))

    @property
    def n(self) -> int:
        return len(self.singularities) + 1

    def fuchs_relation_holds(self) -> bool:
        return sum(self.angles) + self.alpha_prime + self.alpha_double_prime == self.n - 2

    def numerator(self) -> np.ndarray:
        """Ascending coefficients of ``q * prod (z - a_j)``."""
        lead = complex(self.alpha_prime * self.alpha_double_prime)
        return np.array(list(self.accessory) + [lead], dtype=complex)

    def p(self, z):
        return sum(float(1 - a) / (z - s) for a, s in zip(self.angles, self.singularities))

    def dp(self, z):
        return sum(-float(1 - a) / (z - s) ** 2 for a, s in zip(self.angles, self.singularities))

    def q(self, z):
        if self.residues:
            return sum(c / (z - s) for c, s in zip(self.residues, self.singularities))
        num = np.polynomial.polynomial.polyval(z, self.numerator())
        den = 1
        for s in self.singularities:
            den = den * (z - s)
        return num / den

    def schwarzian(self, z):
        """Schwarzian of a solution ratio, ``2q - p' - p**2/2``."""
        p = self.p(z)
        return 2 * self.q(z) - self.dp(z) - 0.5 * p * p


def _choose_solution(pair: PolynomialPair, z: complex, zero_tol: float) -> tuple[Polynomial, float]:
    """Polynomial part and power of ``z`` of the better conditioned solution at ``z``.

    ``w1 = z**beta Q`` and ``w2 = z**(beta + alpha) P`` both solve the
    equation, with ``beta = 0`` when ``Q(0) != 0`` and ``-alpha`` otherwise.
    """
    alpha = float(pair.alpha)
    beta = -alpha if pair.Q.order_at_zero(zero_tol) > 0 else 0.0
    choices = ((pair.Q, beta), (pair.P, beta + alpha))
    return max(choices, key=lambda c: abs(c[0](z)) / max(abs(x) for x in c[0].coeffs))


def _log_derivative(pair: PolynomialPair, z: complex, zero_tol: float) -> complex:
    """``w'/w`` at ``z`` for the better conditioned of the two solutions."""
    F, b = _choose_solution(pair, z, zero_tol)
    return b / z + F.derivative()(z) / F(z)


_DIGITS = 50


def _is_real(pair: PolynomialPair) -> bool:
    coeffs = [complex(c) for c in pair.P.coeffs + pair.Q.coeffs]
    size = max(abs(c) for c in coeffs)
    return all(abs(c.imag) <= 1e-13 * size for c in coeffs)


def _refine_corner(
    pair: PolynomialPair, corner: float, order: int, zero_tol: float
) -> tuple[float, complex]:
    """Critical point of ``f`` near ``corner`` and ``w'/w`` there, in 50-digit arithmetic.

    Next to a pole or zero of ``f`` the log-derivative changes like
    ``1/distance**2``, so a corner that is off by rounding error gives a
    residue whose error breaks the trivial-monodromy condition.  The corner is
    therefore polished as a root of multiplicity ``order`` of the Wronskian of
    the pair itself, computed exactly from its binary coefficients.
    """
    D = decimal.Decimal
    with decimal.localcontext() as ctx:
        ctx.prec = _DIGITS
        P = [D(complex(c).real) for c in pair.P.coeffs]
        Q = [D(complex(c).real) for c in pair.Q.coeffs]
        alpha = D(pair.alpha.numerator) / D(pair.alpha.denominator) if isinstance(
            pair.alpha, Fraction
        ) else D(float(pair.alpha))
        W = [D(0)] * (len(P) + len(Q) - 1)
        for i, a in enumerate(P):
            for j, b in enumerate(Q):
                W[i + j] += (i - j + alpha) * a * b

        def deriv(c):
            return [k * x for k, x in enumerate(c)][1:]

        def ev(c, x):
            out = D(0)
            for coef in reversed(c):
                out = out * x + coef
            return out

        G = W
        for _ in range(order - 1):
            G = deriv(G)
        G1 = deriv(G)
        x = D(corner)
        for _ in range(60):
            d1 = ev(G1, x)
            if d1 == 0:
                break
            step = ev(G, x) / d1
            x -= step
            if abs(step) <= abs(x) * D(10) ** (-_DIGITS + 5):
                break
        F, b = _choose_solution(pair, float(x), zero_tol)
        Fd = [D(complex(c).real) for c in F.coeffs]
        logder = D(b) / x + ev(deriv(Fd), x) / ev(Fd, x)
        return float(x), complex(float(logder))


def build_fuchsian(
    sig: AngleSignature,
    corners: Sequence[complex],
    pair: PolynomialPair,
    tol: float = 1e-8,
    zero_tol: float = 1e-6,
) -> FuchsianEquation:
    """Normal-form equation whose solution ratio is the developing map of ``pair``.

    A solution ``w`` that is analytic and nonzero at a corner ``a_j`` gives the
    residue ``C_j = (angle_j - 1) w'(a_j)/w(a_j)`` of ``q`` there; the residue
    at 0 follows from ``sum C_j = 0``.  The result must satisfy
    ``sum C_j a_j = alpha' alpha''`` and reproduce ``(S + p' + p**2/2) / 2``
    for the pair's Schwarzian ``S``; otherwise :class:`InconsistencyError`.
    """
    if len(corners) != len(sig.interior):
        raise ValidationError("need one corner per interior angle")
    alpha_p, alpha_pp, _ = exponents_at_infinity(sig)
    angles = (sig.alpha0,) + tuple(sig.interior)
    if _is_real(pair) and all(abs(complex(a).imag) == 0 for a in corners):
        refined = [_refine_corner(pair, complex(a).real, m - 1, zero_tol) for a, m in zip(corners, angles[1:])]
        for a, (x, _) in zip(corners, refined):
            if abs(x - complex(a).real) > 1e-6 * max(1.0, abs(x)):
                raise InconsistencyError(f"the pair has no critical point near the corner {a}")
        points = (0j,) + tuple(complex(x) for x, _ in refined)
        res = [(m - 1) * ld for m, (_, ld) in zip(angles[1:], refined)]
    else:
        points = (0j,) + tuple(complex(a) for a in corners)
        res = [(m - 1) * _log_derivative(pair, a, zero_tol) for a, m in zip(points[1:], angles[1:])]
    residues = (-sum(res),) + tuple(res)
    eq = FuchsianEquation(points, angles, alpha_p, alpha_pp, residues=residues)

    lead = complex(alpha_p * alpha_pp)
    moment = sum(c * a for c, a in zip(residues, points))
    scale = max(1.0, max(abs(c) * max(1.0, abs(a)) for c, a in zip(residues, points)))
    if abs(moment - lead) > tol * scale:
        raise InconsistencyError(
            f"sum C_j a_j = {moment:.6g} differs from alpha' alpha'' = {lead:.6g}"
        )
    # independent check against the Schwarzian on a circle clear of everything
    radius = 1.5 * max(1.0, max(abs(s) for s in points))
    avoid = [abs(r) for r in list(pair.Q.roots()) + list(pair.P.roots())]
    while any(abs(r - radius) < 0.1 * radius for r in avoid):
        radius *= 1.2
    z = radius * np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)
    p = eq.p(z)
    direct = 0.5 * (schwarzian_value(pair, z) + eq.dp(z) + 0.5 * p * p)
    size = np.abs(eq.dp(z)) + np.abs(p) ** 2 + np.abs(eq.q(z))
    if float(np.max(np.abs(direct - eq.q(z)) / size)) > tol:
        raise InconsistencyError("equation does not reproduce the Schwarzian of the pair")
    return eq


# --------------------------------------------------------------------------
# Loops and monodromy
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def point(self, t):
        return self.start + t * (self.end - self.start)

    def velocity(self, t):
        return self.end - self.start

    def distance_to(self, w: complex) -> float:
        d = self.end - self.start
        if d == 0:
            return abs(w - self.start)
        t = min(1.0, max(0.0, ((w - self.start) * d.conjugate()).real / abs(d) ** 2))
        return abs(w - self.point(t))


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    @property
    def start(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta0)

    @property
    def end(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta1)

    def point(self, t):
        return self.center + self.radius * np.exp(1j * (self.theta0 + t * (self.theta1 - self.theta0)))

    def velocity(self, t):
        dtheta = self.theta1 - self.theta0
        return 1j * dtheta * self.radius * np.exp(1j * (self.theta0 + t * dtheta))

    def distance_to(self, w: complex) -> float:
        # the arcs built here are full circles, so the radial gap is exact
        return abs(abs(w - self.center) - self.radius)


@dataclass(frozen=True)
class Loop:
    base_point: complex
    pieces: tuple
    clearance: float

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValidationError("a loop needs at least one piece")
        if self.clearance <= 0:
            raise ValidationError("clearance must be positive")
        ends = [self.base_point] + [p.end for p in self.pieces]
        starts = [p.start for p in self.pieces] + [self.base_point]
        if any(abs(a - b) > 1e-12 * (1 + abs(a)) for a, b in zip(ends, starts)):
            raise ValidationError("loop pieces do not join up into a closed path")

    def check_clearance(self, singularities: Sequence[complex]) -> None:
        for piece in self.pieces:
            for s in singularities:
                if piece.distance_to(s) < self.clearance:
                    raise ValidationError(
                        f"loop passes within {piece.distance_to(s):.3g} of singular point {s}"
                    )

    def then(self, other: "Loop") -> "Loop":
        """This loop followed by ``other``; both must share a base point."""
        if abs(self.base_point - other.base_point) > 1e-12:
            raise ValidationError("loops have different base points")
        return Loop(self.base_point, self.pieces + other.pieces, min(self.clearance, other.clearance))

    @classmethod
    def around(
        cls,
        center: complex,
        singularities: Sequence[complex],
        base_point: complex,
        radius: float | None = None,
    ) -> "Loop":
        """Counterclockwise circle about ``center`` reached by a straight spoke.

        The default radius is half the distance to the nearest other singular
        point; clearance is half the radius.
        """
        others = [abs(s - center) for s in singularities if abs(s - center) > 1e-12]
        if radius is None:
            radius = 0.5 * min(others) if others else 1.0
        direction = base_point - center
        theta = cmath.phase(direction)
        touch = center + radius * cmath.exp(1j * theta)
        pieces = (
            Segment(base_point, touch),
            Arc(center, radius, theta, theta + 2 * math.pi),
            Segment(touch, base_point),
        )
        loop = cls(complex(base_point), pieces, 0.5 * radius)
        loop.check_clearance(singularities)
        return loop


def default_base_point(singularities: Sequence[complex]) -> complex:
    """A point in the upper half-plane well clear of the real singular points."""
    xs = [complex(s).real for s in singularities]
    spread = max(xs) - min(xs)
    return complex(0.5 * (max(xs) + min(xs)), 0.5 * spread + 1.0)


@dataclass(frozen=True)
class MonodromyMatrix:
    """Transport matrix of a fundamental system, scaled to determinant one."""

    matrix: np.ndarray
    raw_determinant: complex

    @classmethod
    def normalize(cls, raw: np.ndarray) -> "MonodromyMatrix":
        det = complex(np.linalg.det(raw))
        if abs(det) == 0:
            raise ValidationError("monodromy matrix is singular")
        return cls(raw / np.sqrt(det), det)

    @property
    def determinant_error(self) -> float:
        return float(abs(np.linalg.det(self.matrix) - 1))

    def eigenvalue_ratio(self) -> complex:
        lam = np.linalg.eigvals(self.matrix)
        return complex(lam[0] / lam[1])

    def projectively_trivial(self, tol: float) -> bool:
        M = self.matrix
        return bool(
            min(np.max(np.abs(M - np.eye(2))), np.max(np.abs(M + np.eye(2)))) <= tol
        )

    def __matmul__(self, other: "MonodromyMatrix") -> "MonodromyMatrix":
        return MonodromyMatrix.normalize(self.matrix @ other.matrix)


def _transport(eq: FuchsianEquation, piece, Y: np.ndarray, rtol: float, atol: float) -> np.ndarray:
    def rhs(t, y):
        z = piece.point(t)
        dz = piece.velocity(t)
        a = np.array([[0, 1], [-eq.q(z), -eq.p(z)]], dtype=complex)
        return (dz * (a @ y.reshape(2, 2))).ravel()

    sol = solve_ivp(rhs, (0.0, 1.0), Y.ravel(), method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise NumericalError(f"integration failed: {sol.message}")
    return sol.y[:, -1].reshape(2, 2)


def integrate_monodromy(
    eq: FuchsianEquation, loop: Loop, rtol: float = 1e-12, atol: float = 1e-14
) -> MonodromyMatrix:
    """Continue the fundamental system with identity data at the base point.

    The first-order system for ``(w, w')`` is integrated piece by piece along
    the loop with an adaptive 8th-order Dormand-Prince scheme.  A segment that
    retraces an earlier one uses the inverse of that segment's transport, so
    a spoke-circle-spoke loop is exactly ``T^-1 C T`` and the two passes along
    the spoke cannot disagree.  For a loop ``l1.then(l2)`` the result equals
    ``M(l2) @ M(l1)``.
    """
    loop.check_clearance(eq.singularities)
    done: dict[tuple[complex, complex], np.ndarray] = {}
    Y = np.eye(2, dtype=complex)
    for piece in loop.pieces:
        if isinstance(piece, Segment) and (piece.end, piece.start) in done:
            step = np.linalg.inv(done[(piece.end, piece.start)])
        else:
            step = _transport(eq, piece, np.eye(2, dtype=complex), rtol, atol)
            if isinstance(piece, Segment):
                done[(piece.start, piece.end)] = step
        Y = step @ Y
    return MonodromyMatrix.normalize(Y)


def local_monodromy(
    eq: FuchsianEquation, loop: Loop, rtol: float = 1e-12, atol: float = 1e-14
) -> MonodromyMatrix:
    """Transport around the circular piece of ``loop`` in a basis scaled to it.

    The state ``(w, r w')`` on a circle of radius ``r`` has entries of
    comparable size, and no spoke transport is applied.  The result is
    conjugate to :func:`integrate_monodromy` of the same loop, so it decides
    projective triviality without the conditioning of the spokes, which can
    reach 1e9 next to clustered singular points.
    """
    loop.check_clearance(eq.singularities)
    arcs = [piece for piece in loop.pieces if isinstance(piece, Arc)]
    if len(arcs) != 1:
        return integrate_monodromy(eq, loop, rtol, atol)
    arc = arcs[0]
    C = _transport(eq, arc, np.eye(2, dtype=complex), rtol, atol)
    D = np.diag([1.0, arc.radius])
    return MonodromyMatrix.normalize(D @ C @ np.linalg.inv(D))


# --------------------------------------------------------------------------
# Unitarizability
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitarizabilityReport:
    commuting: bool
    certified: bool | None
    screen_passed: bool | None
    ratios: tuple[complex, ...]
    detail: str

    @property
    def verdict(self) -> str:
        if self.commuting:
            return "certified true" if self.certified else "certified false"
        return "screen passed" if self.screen_passed else "screen failed"


def unitarizability_check(
    generators: Sequence[MonodromyMatrix | np.ndarray], tol: float = 1e-6
) -> UnitarizabilityReport:
    """Is the generated group conjugate into ``PSU(2)``?

    Commuting generators are diagonalized simultaneously and certified by
    ``|lambda_1/lambda_2| = 1``.  For non-commuting input only a necessary
    trace screen is applied and no certificate is given.
    """
    if not generators:
        raise ValidationError("need at least one generator")
    mats = []
    for g in generators:
        raw = g.matrix if isinstance(g, MonodromyMatrix) else np.asarray(g, dtype=complex)
        if abs(np.linalg.det(raw)) < 1e-300:
            raise ValidationError("generator is not invertible")
        mats.append(MonodromyMatrix.normalize(raw).matrix)

    # central elements (projectively trivial) commute with everything
    scalar = [min(np.max(np.abs(m - np.eye(2))), np.max(np.abs(m + np.eye(2)))) <= tol for m in mats]
    active = [m for m, sc in zip(mats, scalar) if not sc]
    norm = lambda m: float(np.linalg.norm(m, 2))
    commuting = all(
        np.linalg.norm(a @ b - b @ a, 2) <= tol * norm(a) * norm(b)
        for i, a in enumerate(active)
        for b in active[i + 1 :]
    )
    if commuting:
        if not active:
            return UnitarizabilityReport(True, True, None, tuple(1 + 0j for _ in mats), "all scalar")
        lam, V = np.linalg.eig(active[0])
        if abs(lam[0] - lam[1]) <= tol or abs(np.linalg.det(V)) < tol:
            return UnitarizabilityReport(True, False, None, (), "parabolic generator")
        Vinv = np.linalg.inv(V)
        cond = norm(V) * norm(Vinv)
        ratios = []
        for m, sc in zip(mats, scalar):
            if sc:
                ratios.append(1 + 0j)
                continue
            D = Vinv @ m @ V
            if abs(D[0, 1]) + abs(D[1, 0]) > tol * cond * norm(m):
                return UnitarizabilityReport(True, False, None, (), "not simultaneously diagonal")
            ratios.append(complex(D[0, 0] / D[1, 1]))
        ok = all(abs(abs(r) - 1) <= tol for r in ratios)
        return UnitarizabilityReport(True, ok, None, tuple(ratios), "diagonalized")

    products = list(mats) + [a @ b for i, a in enumerate(mats) for b in mats[i + 1 :]]
    traces = [complex(np.trace(m)) for m in products]
    passed = all(abs(t.imag) <= tol and abs(t.real) <= 2 + tol for t in traces)
    return UnitarizabilityReport(False, None, passed, (), "trace screen")


def corner_loops(eq: FuchsianEquation, base_point: complex | None = None) -> list[Loop]:
    """One loop per finite singular point, all from a shared base point."""
    base = default_base_point(eq.singularities) if base_point is None else base_point
    return [Loop.around(s, eq.singularities, base) for s in eq.singularities]


def projective_ratio_matches(M: MonodromyMatrix, target: complex, tol: float) -> bool:
    """Whether the eigenvalue ratio is ``target`` or its inverse, within ``tol``."""
    r = M.eigenvalue_ratio()
    return min(abs(r - target), abs(1 / r - target)) <= tol


@dataclass(frozen=True)
class MonodromyCertificate:
    """Outcome of the monodromy checks for one constructed metric."""

    equation: FuchsianEquation
    matrices: tuple[MonodromyMatrix, ...]
    zero_ratio_ok: bool
    corners_trivial: tuple[bool, ...]
    unitarizability: UnitarizabilityReport

    @property
    def ok(self) -> bool:
        return (
            self.zero_ratio_ok
            and all(self.corners_trivial)
            and self.unitarizability.verdict == "certified true"
        )


def certify_monodromy(
    sig: AngleSignature,
    corners: Sequence[complex],
    pair: PolynomialPair,
    tol: float = 1e-6,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> MonodromyCertificate:
    """Build the equation for ``pair`` and check every loop around a finite corner.

    The loop about 0 must have eigenvalue ratio ``exp(2 pi i alpha0)`` (or its
    inverse), the interior corners must be projectively trivial, and the
    generated group must be certified unitarizable.  Triviality is decided on
    :func:`local_monodromy`; the reported matrices are the base-point ones.
    """
    eq = build_fuchsian(sig, corners, pair)
    loops = corner_loops(eq)
    mats = tuple(integrate_monodromy(eq, loop, rtol, atol) for loop in loops)
    target = cmath.exp(2j * math.pi * float(sig.alpha0))
    trivial = tuple(local_monodromy(eq, loop, rtol, atol).projectively_trivial(tol) for loop in loops[1:])
    # corners shown to be +-I are central and do not affect the group
    generators = [mats[0]] + [m for m, t in zip(mats[1:], trivial) if not t]
    return MonodromyCertificate(
        equation=eq,
        matrices=mats,
        zero_ratio_ok=projective_ratio_matches(mats[0], target, tol),
        corners_trivial=trivial,
        unitarizability=unitarizability_check(generators, tol),
    )
