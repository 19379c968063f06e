"""Exact enumeration of two-row tableaux and non-crossing chord diagrams.

A multiplicity vector ``m = (m_0, ..., m_{n-1})`` lists the number of arc
ends at each of ``n`` boundary vertices, in boundary order.  The same vector
is the content of a semistandard tableau of shape ``2 x (d-1)`` with
``2d - 2 = sum(m)``.  Both families have the same size; the tests check this
by brute force rather than assuming it.

Odd diagrams live on the doubled vertex set ``0, a_1, ..., a_k, inf,
-a_k, ..., -a_1`` and are invariant under the reflection ``z -> -conj(z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Sequence

from sphpoly.errors import ValidationError

MultiplicityVector = tuple[int, ...]
Arc = tuple[int, int]


def as_multiplicities(values: Iterable[int]) -> MultiplicityVector:
    """Coerce ``values`` to a tuple of non-negative ints."""
    out = tuple(int(v) for v in values)
    if any(v < 0 for v in out):
        raise ValidationError(f"multiplicities must be non-negative, got {out}")
    return out


# --------------------------------------------------------------------------
# Tableaux
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """Semistandard tableau with two rows of equal length."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    @property
    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.top, self.bottom)

    @property
    def columns(self) -> int:
        return len(self.top)

    def content(self, length: int) -> MultiplicityVector:
        counts = [0] * length
        for value in self.top + self.bottom:
            counts[value - 1] += 1
        return tuple(counts)

    def is_semistandard(self) -> bool:
        if len(self.top) != len(self.bottom):
            return False
        for row in self.rows:
            if any(a > b for a, b in zip(row, row[1:])):
                return False
        return all(a < b for a, b in zip(self.top, self.bottom))

    def __str__(self) -> str:
        return " ".join(map(str, self.top)) + " / " + " ".join(map(str, self.bottom))


def enumerate_ssyt(mult: Sequence[int]) -> list[Tableau]:
    """All semistandard tableaux of shape ``2 x (d-1)`` with content ``mult``.

    Value ``k`` appears ``mult[k-1]`` times.  An odd total returns ``[]``; an
    all-zero (or empty) vector returns the single empty tableau.  Results are
    sorted row-major lexicographically.
    """
    mult = as_multiplicities(mult)
    total = sum(mult)
    if total % 2:
        return []
    length = total // 2
    found: list[Tableau] = []

    def extend(k: int, top: list[int], bottom: list[int]) -> None:
        if k == len(mult):
            if len(top) == len(bottom) == length:
                found.append(Tableau(tuple(top), tuple(bottom)))
            return
        value = k + 1
        n_top_before = len(top)
        for in_top in range(mult[k], -1, -1):
            in_bottom = mult[k] - in_top
            if len(top) + in_top > length or len(bottom) + in_bottom > length:
                continue
            # column strictness: bottom cells holding `value` need a top cell
            # holding something smaller directly above them
            if len(bottom) + in_bottom > n_top_before:
                continue
            extend(k + 1, top + [value] * in_top, bottom + [value] * in_bottom)

    extend(0, [], [])
    found.sort(key=lambda t: t.top + t.bottom)
    return found


def kostka(mult: Sequence[int]) -> int:
    """Number of two-row semistandard tableaux with content ``mult``.

    Counted by a dynamic program over (top, bottom) row fill levels, so it
    stays cheap where :func:`enumerate_ssyt` would not.
    """
    mult = as_multiplicities(mult)
    total = sum(mult)
    if total % 2:
        return 0
    length = total // 2
    states = {(0, 0): 1}
    for m in mult:
        nxt: dict[tuple[int, int], int] = {}
        for (top, bottom), ways in states.items():
            for in_top in range(m + 1):
                t, b = top + in_top, bottom + m - in_top
                if t > length or b > top:
                    continue
                nxt[(t, b)] = nxt.get((t, b), 0) + ways
        states = nxt
    return states.get((length, length), 0)


def catalan(d: int) -> int:
    if d < 1:
        raise ValidationError("catalan requires d >= 1")
    return comb(2 * d, d) // (d + 1)


def binomial_count(m: int) -> int:
    """Closed form ``binom(m, floor(m/2))`` for ``E(0, 1, ..., 1, 0)``."""
    if m < 1:
        raise ValidationError("binomial_count requires m >= 1")
    return comb(m, m // 2)


# --------------------------------------------------------------------------
# Chord diagrams
# --------------------------------------------------------------------------


def _slot_owners(mult: Sequence[int]) -> tuple[int, ...]:
    return tuple(v for v, m in enumerate(mult) for _ in range(m))


@lru_cache(maxsize=4096)
def _matchings(owners: tuple[int, ...]) -> tuple[tuple[Arc, ...], ...]:
    """Non-crossing perfect matchings of the slot sequence with no loops.

    Slot ``i`` belongs to vertex ``owners[i]``; an arc may not join two slots
    of the same vertex.  The leftmost free slot is paired with every
    admissible partner, which splits the rest into two independent intervals.
    """

    @lru_cache(maxsize=None)
    def solve(lo: int, hi: int) -> tuple[tuple[Arc, ...], ...]:
        if lo == hi:
            return ((),)
        if (hi - lo) % 2:
            return ()
        counts: dict[int, int] = {}
        for i in range(lo, hi):
            counts[owners[i]] = counts.get(owners[i], 0) + 1
        if 2 * max(counts.values()) > hi - lo:
            return ()
        out = []
        for j in range(lo + 1, hi, 2):
            if owners[j] == owners[lo]:
                continue
            inner = solve(lo + 1, j)
            if not inner:
                continue
            outer = solve(j + 1, hi)
            for a in inner:
                for b in outer:
                    out.append(((lo, j),) + a + b)
        return tuple(out)

    return tuple(tuple(sorted(arcs)) for arcs in solve(0, len(owners)))


@dataclass(frozen=True)
class ChordDiagram:
    """Non-crossing arc system on boundary vertices.

    ``vertices`` holds ``(position, multiplicity)`` in boundary order;
    slots are numbered consecutively around the circle and ``arcs`` pairs
    slot indices ``(i, j)`` with ``i < j``.
    """

    vertices: tuple[tuple[int, int], ...]
    arcs: tuple[Arc, ...]

    @property
    def multiplicities(self) -> MultiplicityVector:
        return tuple(m for _, m in self.vertices)

    @property
    def owners(self) -> tuple[int, ...]:
        return _slot_owners(self.multiplicities)

    @property
    def word(self) -> str:
        """Balanced-parenthesis encoding; canonical for a fixed vertex set."""
        chars = [""] * (2 * len(self.arcs))
        for i, j in self.arcs:
            chars[i], chars[j] = "(", ")"
        return "".join(chars)

    def vertex_arcs(self) -> list[tuple[int, int]]:
        """Arcs as pairs of vertex indices."""
        owners = self.owners
        return [(owners[i], owners[j]) for i, j in self.arcs]

    def is_valid(self) -> bool:
        owners = self.owners
        used = sorted(s for arc in self.arcs for s in arc)
        if used != list(range(len(owners))):
            return False
        if any(owners[i] == owners[j] for i, j in self.arcs):
            return False
        for (a, b), (c, d) in _pairs(self.arcs):
            if a < c < b < d or c < a < d < b:
                return False
        return True


def _pairs(items: Sequence[Arc]) -> Iterable[tuple[Arc, Arc]]:
    for i, x in enumerate(items):
        for y in items[i + 1 :]:
            yield x, y


def enumerate_diagrams(mult: Sequence[int]) -> list[ChordDiagram]:
    """All non-crossing, loop-free chord diagrams with slot counts ``mult``."""
    mult = as_multiplicities(mult)
    vertices = tuple(enumerate(mult))
    diagrams = [ChordDiagram(vertices, arcs) for arcs in _matchings(_slot_owners(mult))]
    diagrams.sort(key=lambda d: d.word)
    return diagrams


# --------------------------------------------------------------------------
# Odd diagrams
# --------------------------------------------------------------------------


def _check_axis(m0: int, m_inf: int) -> None:
    if m0 < 0 or m_inf < 0:
        raise ValidationError("axis multiplicities must be non-negative")
    if m0 % 2 or m_inf % 2:
        raise ValidationError(
            f"axis multiplicities must be even, got m0={m0}, mInf={m_inf}"
        )


@dataclass(frozen=True)
class OddDiagram:
    """Reflection-invariant diagram on ``0, a_1..a_k, inf, -a_k..-a_1``.

    Vertex positions in ``diagram.vertices`` are signed: ``0`` for the two
    axis vertices, ``+j`` for ``a_j`` and ``-j`` for ``-a_j``.
    """

    m0: int
    interior: MultiplicityVector
    m_inf: int
    diagram: ChordDiagram

    @property
    def crossing_count(self) -> int:
        """Number of arcs with one positive and one negative endpoint."""
        signs = [(pos > 0) - (pos < 0) for pos, _ in self.diagram.vertices]
        return sum(1 for u, v in self.diagram.vertex_arcs() if signs[u] * signs[v] < 0)

    def reflect(self) -> ChordDiagram:
        n = 2 * len(self.diagram.arcs)
        flip = lambda i: (self.m0 - 1 - i) % n  # noqa: E731
        arcs = tuple(sorted(tuple(sorted((flip(i), flip(j)))) for i, j in self.diagram.arcs))
        return ChordDiagram(self.diagram.vertices, arcs)

    def is_valid(self) -> bool:
        return (
            self.diagram.is_valid()
            and self.m0 % 2 == 0
            and self.m_inf % 2 == 0
            and self.reflect().arcs == self.diagram.arcs
        )


def odd_vertices(m0: int, interior: Sequence[int], m_inf: int) -> tuple[tuple[int, int], ...]:
    k = len(interior)
    return (
        ((0, m0),)
        + tuple((j + 1, interior[j]) for j in range(k))
        + ((0, m_inf),)
        + tuple((-(j + 1), interior[j]) for j in reversed(range(k)))
    )


def enumerate_odd_diagrams(m0: int, interior: Sequence[int], m_inf: int) -> list[OddDiagram]:
    """Reflection-invariant diagrams counted by ``E(m0, interior, mInf)``."""
    _check_axis(m0, m_inf)
    interior = as_multiplicities(interior)
    vertices = odd_vertices(m0, interior, m_inf)
    mult = tuple(m for _, m in vertices)
    total = sum(mult)
    result = []
    seen = set()
    for arcs in _matchings(_slot_owners(mult)):
        candidate = OddDiagram(m0, interior, m_inf, ChordDiagram(vertices, arcs))
        if candidate.reflect().arcs != arcs:
            continue
        key = candidate.diagram.word
        if key not in seen:
            seen.add(key)
            result.append(candidate)
    assert all(2 * len(d.diagram.arcs) == total for d in result)
    result.sort(key=lambda d: d.diagram.word)
    return result


@dataclass(frozen=True)
class KostkaReduction:
    mu: int
    mu_even: bool
    r: int
    s: int
    k: int


def reduction_params(
    m0: int, interior: Sequence[int], m_inf: int, k: int | None = None
) -> KostkaReduction:
    """Parameters ``(r, s)`` reducing an odd-diagram count to a Kostka number.

    With ``k=None`` the smallest ``k >= 0`` is chosen for which ``r`` and ``s``
    are positive and ``r + s`` exceeds the interior total.  An explicit ``k``
    below that threshold is rejected.
    """
    _check_axis(m0, m_inf)
    interior = as_multiplicities(interior)
    inner = sum(interior)
    mu = (m0 + m_inf) // 2 + inner

    def build(k_: int) -> KostkaReduction:
        if mu % 2 == 0:
            r, s = m0 // 2 + k_, m_inf // 2 + k_
        else:
            r, s = (m0 + m_inf) // 2 + k_ + 1, k_
        return KostkaReduction(mu=mu, mu_even=mu % 2 == 0, r=r, s=s, k=k_)

    def admissible(red: KostkaReduction) -> bool:
        return red.r >= 1 and red.s >= 1 and red.r + red.s > inner

    k_min = 0
    while not admissible(build(k_min)):
        k_min += 1
    if k is None:
        return build(k_min)
    if k < k_min:
        raise ValidationError(f"k={k} is below the admissible minimum {k_min}")
    return build(k)


def odd_count_formula(
    m0: int, interior: Sequence[int], m_inf: int, k: int | None = None
) -> int:
    """``E(m0, interior, mInf)`` as the Kostka number ``K(r, interior, s)``."""
    red = reduction_params(m0, interior, m_inf, k)
    return kostka((red.r, *as_multiplicities(interior), red.s))


def compositions(total: int) -> Iterable[MultiplicityVector]:
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for cuts in product((False, True), repeat=total - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def crossing_parity_counts(m0: int, interior: Sequence[int], m_inf: int) -> tuple[int, int]:
    """Numbers of odd diagrams with an even and with an odd crossing count."""
    counts = [0, 0]
    for d in enumerate_odd_diagrams(m0, interior, m_inf):
        counts[d.crossing_count % 2] += 1
    return counts[0], counts[1]
