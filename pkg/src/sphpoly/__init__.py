"""Spherical polygons with two non-integer corners: counting, construction, certification."""

from sphpoly.combinatorics import (
    enumerate_diagrams,
    enumerate_odd_diagrams,
    enumerate_ssyt,
    kostka,
    odd_count_formula,
)
from sphpoly.feasibility import AngleSignature, DegreeSolution, check_angles, signature
from sphpoly.ode import build_fuchsian, certify_monodromy, integrate_monodromy, schwarzian_of_pair
from sphpoly.polynomial import Polynomial
from sphpoly.wronski import (
    PolynomialPair,
    SolverConfig,
    continue_alpha,
    solve_wronski,
    verify_solution,
    wronski_map,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSignature",
    "DegreeSolution",
    "Polynomial",
    "PolynomialPair",
    "SolverConfig",
    "build_fuchsian",
    "certify_monodromy",
    "check_angles",
    "continue_alpha",
    "enumerate_diagrams",
    "enumerate_odd_diagrams",
    "enumerate_ssyt",
    "integrate_monodromy",
    "kostka",
    "odd_count_formula",
    "schwarzian_of_pair",
    "signature",
    "solve_wronski",
    "verify_solution",
    "wronski_map",
]
