"""Brute-force reference implementations, independent of the package code."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def ssyt_count(mult) -> int:
    """Two-row rectangular tableaux by choosing the top row outright."""
    letters = [i for i, m in enumerate(mult) for _ in range(m)]
    if len(letters) % 2:
        return 0
    width = len(letters) // 2
    count = 0
    for top in set(itertools.combinations(letters, width)):
        rest = list(letters)
        for v in top:
            rest.remove(v)
        if all(a < b for a, b in zip(top, sorted(rest))):
            count += 1
    return count


def _owners(mult):
    return [v for v, m in enumerate(mult) for _ in range(m)]


def _all_matchings(n: int):
    if n == 0:
        yield []
        return
    items = list(range(n))

    def rec(free):
        if not free:
            yield []
            return
        first = free[0]
        for k in range(1, len(free)):
            rest = free[1:k] + free[k + 1 :]
            for m in rec(rest):
                yield [(first, free[k])] + m

    yield from rec(items)


def _noncrossing(arcs) -> bool:
    for (a, b), (c, d) in itertools.combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def diagram_count(mult) -> int:
    """Perfect matchings of all slots filtered for loops and crossings."""
    owners = _owners(mult)
    if len(owners) % 2:
        return 0
    return sum(
        1
        for arcs in _all_matchings(len(owners))
        if all(owners[i] != owners[j] for i, j in arcs) and _noncrossing(arcs)
    )


def odd_diagrams(m0: int, interior, m_inf: int) -> list[tuple[list, int]]:
    """Reflection-invariant diagrams found by placing slots on a circle.

    Slot ``i`` sits at angle ``2 pi (i + 1/2 - m0/2) / N``, so the axis
    through 0 and infinity is the real line and the reflection is
    ``theta -> -theta``.  Returns ``(arcs, crossing count)`` pairs.
    """
    mult = [m0, *interior, m_inf, *reversed(interior)]
    k = len(interior)
    sign = [0] + [1] * k + [0] + [-1] * k
    owners = _owners(mult)
    n = len(owners)
    if n % 2:
        return []
    angles = [2 * math.pi * (i + 0.5 - m0 / 2) / n for i in range(n)]

    def mirror(i):
        target = -angles[i]
        return min(range(n), key=lambda j: abs(math.remainder(angles[j] - target, 2 * math.pi)))

    out = []
    for arcs in _all_matchings(n):
        if any(owners[i] == owners[j] for i, j in arcs) or not _noncrossing(arcs):
            continue
        image = {tuple(sorted((mirror(i), mirror(j)))) for i, j in arcs}
        if image != {tuple(sorted(a)) for a in arcs}:
            continue
        nu = sum(1 for i, j in arcs if sign[owners[i]] * sign[owners[j]] < 0)
        out.append((arcs, nu))
    return out


def system_solutions(alpha0: Fraction, interior, alpha_inf: Fraction, bound: int = 20):
    """Every ``(p, q, p0, q0, alpha)`` satisfying the degree system by search."""
    n = len(interior) + 2
    sig = sum(interior) - (n - 2)
    found = []
    for p0 in range(bound + 1):
        for q0 in range(bound + 1):
            if min(p0, q0) != 0:
                continue
            for alpha in {alpha0 - (p0 - q0), -alpha0 - (p0 - q0)}:
                if not 0 < alpha < 1:
                    continue
                for p in range(p0, bound + 1):
                    q = sig + max(p0, q0) - p
                    if q < q0 or q > bound:
                        continue
                    if abs(p - q + alpha) == alpha_inf:
                        found.append((p, q, p0, q0, alpha))
    return sorted(set(found))


def taylor_of_map(pair, z: complex, order: int = 3) -> np.ndarray:
    """Taylor coefficients of z**alpha P/Q at ``z`` via power-series algebra."""
    def shifted(poly):
        c = np.zeros(order + 1, dtype=complex)
        d = poly
        fact = 1.0
        for k in range(order + 1):
            c[k] = d(z) / fact
            d = d.derivative()
            fact *= k + 1
        return c

    p, q = shifted(pair.P), shifted(pair.Q)
    h = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        h[k] = (p[k] - sum(h[j] * q[k - j] for j in range(k))) / q[0]
    a = float(pair.alpha)
    powr = np.array([z**a] + [0j] * order)
    for k in range(1, order + 1):
        powr[k] = powr[k - 1] * (a - k + 1) / k / z
    return np.convolve(powr, h)[: order + 1]


def mobius_schwarzian(pair, z, m):
    """Schwarzian of ``M o f`` with all derivatives from the chain rule."""
    a, b, c, d = m
    t = taylor_of_map(pair, z)
    f, f1, f2, f3 = t[0], t[1], 2 * t[2], 6 * t[3]
    det = a * d - b * c
    u = c * f + d
    m1, m2, m3 = det / u**2, -2 * c * det / u**3, 6 * c * c * det / u**4
    g1 = m1 * f1
    g2 = m2 * f1**2 + m1 * f2
    g3 = m3 * f1**3 + 3 * m2 * f1 * f2 + m1 * f3
    return g3 / g1 - 1.5 * (g2 / g1) ** 2
