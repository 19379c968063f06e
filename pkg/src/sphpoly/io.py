"""JSON documents for solutions, equations and monodromy results.

Floats are written with ``repr`` (the json default), so a document read back
reproduces every coefficient bit for bit.  Exact angles are strings such as
``"1/2"``; complex numbers are ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from sphpoly.errors import ValidationError
from sphpoly.feasibility import DegreeSolution, parse_angle
from sphpoly.ode import FuchsianEquation, MonodromyMatrix
from sphpoly.polynomial import Polynomial
from sphpoly.wronski import PolynomialPair, Realized, SolutionReport

SCHEMA_VERSION = 1


def encode_number(x) -> str | float | int:
    """Fractions become ``"p/q"`` strings, everything else a float."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    return float(x)


def decode_number(x) -> Fraction | float:
    if isinstance(x, str):
        return parse_angle(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, float):
        return x
    raise ValidationError(f"expected a number, got {x!r}")


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValidationError(f"expected [re, im], got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def encode_poly(poly: Polynomial) -> list[list[float]]:
    return [encode_complex(c) for c in poly.coeffs]


def decode_poly(data) -> Polynomial:
    if not isinstance(data, list):
        raise ValidationError("polynomial must be a list of [re, im] pairs")
    return Polynomial(tuple(decode_complex(c) for c in data))


def encode_matrix(M: np.ndarray) -> list[list[list[float]]]:
    return [[encode_complex(v) for v in row] for row in M]


def decode_matrix(data) -> np.ndarray:
    return np.array([[decode_complex(v) for v in row] for row in data], dtype=complex)


def encode_degree_solution(sol: DegreeSolution) -> dict:
    return {
        "p": sol.p,
        "q": sol.q,
        "p0": sol.p0,
        "q0": sol.q0,
        "alpha": encode_number(sol.alpha),
        "case": sol.case_id,
        "canonical": sol.canonical,
    }


def decode_degree_solution(data: dict) -> DegreeSolution:
    try:
        return DegreeSolution(
            int(data["p"]),
            int(data["q"]),
            int(data["p0"]),
            int(data["q0"]),
            decode_number(data["alpha"]),
            int(data.get("case", 0)),
            bool(data.get("canonical", False)),
        )
    except KeyError as exc:
        raise ValidationError(f"degree solution is missing {exc}") from exc


def encode_report(report: SolutionReport) -> dict:
    r = report.realized
    return {
        "alpha": encode_number(report.pair.alpha),
        "P": encode_poly(report.pair.P),
        "Q": encode_poly(report.pair.Q),
        "residual": report.residual,
        "isReal": report.is_real,
        "realized": {
            "p0": r.p0,
            "q0": r.q0,
            "alpha0": encode_number(r.alpha0),
            "alphaInf": encode_number(r.alpha_inf),
            "ambiguous": r.ambiguous,
        },
    }


def decode_report(data: dict) -> SolutionReport:
    try:
        pair = PolynomialPair(
            decode_poly(data["P"]), decode_poly(data["Q"]), decode_number(data["alpha"])
        )
        r = data["realized"]
        realized = Realized(
            int(r["p0"]),
            int(r["q0"]),
            decode_number(r["alpha0"]),
            decode_number(r["alphaInf"]),
            bool(r.get("ambiguous", False)),
        )
        return SolutionReport(pair, float(data["residual"]), bool(data.get("isReal", False)), realized)
    except KeyError as exc:
        raise ValidationError(f"solution is missing {exc}") from exc


@dataclass(frozen=True)
class Problem:
    """Angle data and corner positions a solution set was computed for."""

    alpha0: Fraction
    interior: tuple[int, ...]
    alpha_inf: Fraction
    corners: tuple[float, ...]
    degree_solution: DegreeSolution
    target: Polynomial

    def to_dict(self) -> dict:
        return {
            "alpha0": encode_number(self.alpha0),
            "interior": list(self.interior),
            "alphaInf": encode_number(self.alpha_inf),
            "corners": [float(a) for a in self.corners],
            "degreeSolution": encode_degree_solution(self.degree_solution),
            "R": encode_poly(self.target),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Problem":
        try:
            return cls(
                decode_number(data["alpha0"]),
                tuple(int(a) for a in data["interior"]),
                decode_number(data["alphaInf"]),
                tuple(float(a) for a in data["corners"]),
                decode_degree_solution(data["degreeSolution"]),
                decode_poly(data["R"]),
            )
        except KeyError as exc:
            raise ValidationError(f"problem is missing {exc}") from exc


@dataclass(frozen=True)
class SolutionDocument:
    problem: Problem
    solutions: tuple[SolutionReport, ...]
    seed: int
    tolerances: dict = field(default_factory=dict)
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "kind": "solutions",
            "problem": self.problem.to_dict(),
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "complete": self.complete,
            "solutions": [encode_report(s) for s in self.solutions],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SolutionDocument":
        _check_header(data, "solutions")
        return cls(
            Problem.from_dict(data["problem"]),
            tuple(decode_report(s) for s in data.get("solutions", [])),
            int(data.get("seed", 0)),
            dict(data.get("tolerances", {})),
            bool(data.get("complete", True)),
        )


def encode_equation(eq: FuchsianEquation) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "kind": "equation",
        "singularities": [encode_complex(s) for s in eq.singularities],
        "angles": [encode_number(a) for a in eq.angles],
        "alphaPrime": encode_number(eq.alpha_prime),
        "alphaDoublePrime": encode_number(eq.alpha_double_prime),
        "accessory": [encode_complex(c) for c in eq.accessory],
    }


def decode_equation(data: dict) -> FuchsianEquation:
    _check_header(data, "equation")
    try:
        return FuchsianEquation(
            tuple(decode_complex(s) for s in data["singularities"]),
            tuple(decode_number(a) for a in data["angles"]),
            decode_number(data["alphaPrime"]),
            decode_number(data["alphaDoublePrime"]),
            tuple(decode_complex(c) for c in data["accessory"]),
        )
    except KeyError as exc:
        raise ValidationError(f"equation is missing {exc}") from exc


def encode_monodromy(M: MonodromyMatrix) -> dict:
    return {
        "matrix": encode_matrix(M.matrix),
        "determinantError": M.determinant_error,
        "eigenvalueRatio": encode_complex(M.eigenvalue_ratio()),
    }


def _check_header(data: Any, kind: str) -> None:
    if not isinstance(data, dict):
        raise ValidationError("document must be a JSON object")
    version = data.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schemaVersion {version!r}")
    if data.get("kind") != kind:
        raise ValidationError(f"expected a {kind!r} document, got {data.get('kind')!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc


def document_kind(data: dict) -> str:
    if not isinstance(data, dict):
        raise ValidationError("document must be a JSON object")
    return str(data.get("kind", ""))


def reports_equal(a: Sequence[SolutionReport], b: Sequence[SolutionReport]) -> bool:
    """Coefficient-for-coefficient equality, used to check round-trips."""
    return len(a) == len(b) and all(
        x.pair.P.coeffs == y.pair.P.coeffs
        and x.pair.Q.coeffs == y.pair.Q.coeffs
        and x.pair.alpha == y.pair.alpha
        and x.residual == y.residual
        and x.realized == y.realized
        for x, y in zip(a, b)
    )
