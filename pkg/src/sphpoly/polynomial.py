"""Dense univariate polynomials with ascending coefficients.

Arithmetic is written against plain Python numbers so that ``Fraction``
coefficients stay exact; numerical helpers (roots, evaluation on arrays)
go through numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def _trim(coeffs: Sequence, tol: float = 0.0) -> tuple:
    coeffs = list(coeffs)
    while coeffs and abs(coeffs[-1]) <= tol:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending powers; the zero polynomial is ``()``."""

    coeffs: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Polynomial":
        out = cls((leading,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls((0,) * k + (c,))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self, tol: float = 0.0) -> int:
        """Index of the last coefficient above ``tol * max|c|``; ``-1`` for zero."""
        if not self.coeffs:
            return -1
        scale = max(abs(c) for c in self.coeffs)
        return len(_trim(self.coeffs, tol * scale)) - 1

    def order_at_zero(self, tol: float = 0.0) -> int:
        scale = max((abs(c) for c in self.coeffs), default=0)
        for k, c in enumerate(self.coeffs):
            if abs(c) > tol * scale:
                return k
        return 0

    def __call__(self, z):
        acc = 0 * z
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self), len(other))
        return Polynomial(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [0 * self.coeffs[0]] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``z**k``."""
        return Polynomial((0,) * k + self.coeffs) if self.coeffs else self

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division; exact for Fraction coefficients."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(other) - 1
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            factor = rem[k] / lead
            quot[k - dq] = factor
            for i, c in enumerate(other.coeffs):
                rem[k - dq + i] -= factor * c
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def to_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def roots(self) -> np.ndarray:
        if len(self) <= 1:
            return np.zeros(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(self.to_array())

    def trimmed(self, tol: float) -> "Polynomial":
        scale = max((abs(c) for c in self.coeffs), default=0)
        return Polynomial(_trim(self.coeffs, tol * scale))

    def scaled_to_monic(self) -> "Polynomial":
        return self * (1 / self.coeffs[-1])

    def __str__(self) -> str:
        terms = [f"({c})*z^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) or "0"


def poly(coeffs: Iterable) -> Polynomial:
    return Polynomial(tuple(coeffs))
