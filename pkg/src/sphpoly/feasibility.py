"""Existence test and integer degree data for two non-integer corner angles.

Angles are measured in units of ``2*pi``.  The corners with non-integer
angles sit at ``0`` and ``infinity``; every interior corner has an integer
angle ``>= 2``.  A metric exists iff the system

    alpha0   = |p0 - q0 + alpha|
    sigma    = p + q - max(p0, q0)
    alphaInf = |p - q + alpha|

has a solution in non-negative integers with ``min(p0, q0) = 0``,
``p0 <= p``, ``q0 <= q`` and ``0 < alpha < 1``.  All arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from sphpoly.errors import ValidationError


def parse_angle(value: str | int | float | Fraction) -> Fraction:
    """Exact rational from ``"3/2"``, ``"1.5"``, an int, a float or a Fraction.

    Floats go through their shortest decimal repr, so ``0.1`` means 1/10.
    """
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"angle must be finite, got {value}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse angle {value!r}") from exc


def _floor(x: Fraction) -> int:
    return math.floor(x)


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class AngleSignature:
    """Corner angles ``alpha0`` at 0, ``interior`` at ``a_j``, ``alpha_inf`` at infinity."""

    alpha0: Fraction
    interior: tuple[int, ...]
    alpha_inf: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha0", parse_angle(self.alpha0))
        object.__setattr__(self, "alpha_inf", parse_angle(self.alpha_inf))
        object.__setattr__(self, "interior", tuple(int(a) for a in self.interior))
        for name in ("alpha0", "alpha_inf"):
            value = getattr(self, name)
            if value <= 0:
                raise ValidationError(f"{name} must be positive, got {value}")
            if value.denominator == 1:
                raise ValidationError(f"{name} must not be an integer, got {value}")
        if not self.interior:
            raise ValidationError("at least one interior corner is required (n >= 3)")
        if any(a < 2 for a in self.interior):
            raise ValidationError(
                f"interior angles must be integers >= 2, got {self.interior}"
            )

    @property
    def n(self) -> int:
        return len(self.interior) + 2


def sigma(sig: AngleSignature) -> int:
    """Total interior excess ``sum(alpha_j) - (n - 2)``."""
    return sum(sig.interior) - (sig.n - 2)


@dataclass(frozen=True)
class DegreeSolution:
    """Degrees ``p, q``, orders at zero ``p0, q0`` and the rotation exponent."""

    p: int
    q: int
    p0: int
    q0: int
    alpha: Fraction
    case_id: int
    canonical: bool = False

    @property
    def degree(self) -> int:
        """Degree ``p + q`` of the target polynomial."""
        return self.p + self.q

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.p0, self.q0, self.alpha)

    def inverted(self) -> "DegreeSolution":
        """Degree data of ``1/f`` (``P/Q`` replaced by ``z Q / P``, exponent ``1 - alpha``)."""
        if self.q0 == 0:
            p, q, p0, q0 = self.q, self.p + 1, 0, self.p0 + 1
        else:
            p, q, p0, q0 = self.q - 1, self.p, self.q0 - 1, 0
        case_id = {1: 4, 4: 1, 2: 3, 3: 2}.get(self.case_id, 0)
        return DegreeSolution(p, q, p0, q0, 1 - self.alpha, case_id)


def satisfies_system(sig: AngleSignature, sol: DegreeSolution) -> bool:
    """Exact check of the degree system and the side conditions."""
    if min(sol.p, sol.q, sol.p0, sol.q0) < 0:
        return False
    if min(sol.p0, sol.q0) != 0 or sol.p0 > sol.p or sol.q0 > sol.q:
        return False
    if not 0 < sol.alpha < 1:
        return False
    return (
        sig.alpha0 == abs(sol.p0 - sol.q0 + sol.alpha)
        and sigma(sig) == sol.p + sol.q - max(sol.p0, sol.q0)
        and sig.alpha_inf == abs(sol.p - sol.q + sol.alpha)
    )


def solve_degree_system(sig: AngleSignature) -> list[DegreeSolution]:
    """All solutions of the degree system, ordered by case (1, 2, 3, 4).

    Cases 1/4 and 2/3 come in pairs related by ``f -> 1/f``; case 1 (even
    branch) or case 2 (odd branch) is flagged ``canonical``.
    """
    s = sigma(sig)
    a0, ai = _floor(sig.alpha0), _floor(sig.alpha_inf)
    f0, fi = _frac(sig.alpha0), _frac(sig.alpha_inf)
    found: list[DegreeSolution] = []

    def attempt(case_id: int, alpha: Fraction, p0: int, q0: int, total: int, diff: int) -> None:
        # diff = p - q
        if (total + diff) % 2:
            return
        p, q = (total + diff) // 2, (total - diff) // 2
        sol = DegreeSolution(p, q, p0, q0, alpha, case_id, canonical=case_id in (1, 2))
        if satisfies_system(sig, sol):
            found.append(sol)

    # p >= q, q0 = 0
    if fi == f0:
        attempt(1, f0, a0, 0, s + a0, ai)
    # p >= q, p0 = 0
    if fi == 1 - f0:
        attempt(2, 1 - f0, 0, a0 + 1, s + a0 + 1, ai)
    # p < q, q0 = 0
    if fi == 1 - f0:
        attempt(3, f0, a0, 0, s + a0, -(ai + 1))
    # p < q, p0 = 0
    if fi == f0:
        attempt(4, 1 - f0, 0, a0 + 1, s + a0 + 1, -(ai + 1))
    return found


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    branch: str
    reason: str
    solutions: tuple[DegreeSolution, ...] = field(default=())

    @property
    def canonical(self) -> DegreeSolution | None:
        for sol in self.solutions:
            if sol.canonical:
                return sol
        return None


def check_angles(sig: AngleSignature) -> FeasibilityReport:
    """Existence criterion for a spherical metric with the given angles.

    Branch ``'a'`` (``sigma + [alpha0] + [alphaInf]`` even) needs
    ``alpha0 - alphaInf`` integral and ``|[alpha0] - [alphaInf]| <= sigma``.
    Branch ``'b'`` needs ``alpha0 + alphaInf`` integral and
    ``[alpha0] + [alphaInf] + 1 <= sigma``.

    ``reason`` is one of ``"ok"``, ``"not-integral"``, ``"inequality"``.
    """
    s = sigma(sig)
    a0, ai = _floor(sig.alpha0), _floor(sig.alpha_inf)
    if (s + a0 + ai) % 2 == 0:
        branch = "a"
        integral = (sig.alpha0 - sig.alpha_inf).denominator == 1
        bounded = abs(a0 - ai) <= s
    else:
        branch = "b"
        integral = (sig.alpha0 + sig.alpha_inf).denominator == 1
        bounded = a0 + ai + 1 <= s
    if not integral:
        return FeasibilityReport(False, branch, "not-integral")
    if not bounded:
        return FeasibilityReport(False, branch, "inequality")
    solutions = tuple(solve_degree_system(sig))
    if not solutions:
        # the criterion and the case analysis disagree; never expected
        raise AssertionError(f"criterion holds but degree system unsolved for {sig}")
    return FeasibilityReport(True, branch, "ok", solutions)


def exponents_at_infinity(sig: AngleSignature) -> tuple[Fraction, Fraction, bool]:
    """Exponents ``(alpha', alpha'')`` at infinity and the sign test ``alpha'' < 0``.

    The finite angles are ``alpha0`` together with the interior angles.
    """
    finite = sig.alpha0 + sum(sig.interior)
    n = sig.n
    hi = Fraction(n - 2 + sig.alpha_inf - finite, 2)
    lo = Fraction(n - 2 - sig.alpha_inf - finite, 2)
    return hi, lo, lo < 0


def signature(alpha0, interior: Sequence[int], alpha_inf) -> AngleSignature:
    """Convenience constructor accepting strings, floats or Fractions."""
    return AngleSignature(parse_angle(alpha0), tuple(interior), parse_angle(alpha_inf))
