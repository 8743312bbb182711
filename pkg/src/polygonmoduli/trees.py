"""Triangulations of the reference n-gon and their dual trivalent trees.

The reference polygon has vertices V_1, ..., V_n in cyclic order; side i joins
V_i to V_{i+1} (side n closes up to V_1) and carries leaf index i.  A diagonal
is the chord (a, b) cutting off the sides a, a+1, ..., b-1, stored as that
cyclic interval of leaf indices.  A triangulation consists of n-3 pairwise
noncrossing diagonals; its dual graph is a trivalent tree with n leaves.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

from .errors import LimitExceeded

MAX_ENUM_N = 10


@dataclass(frozen=True, order=True)
class Diagonal:
    """A cyclic interval of leaf indices (canonical representative).

    Of the interval and its complement (which name the same chord), the
    lexicographically smaller leaf tuple is stored.
    """

    n: int
    leaves: tuple

    @staticmethod
    def from_interval(n: int, start: int, length: int) -> "Diagonal":
        if not 2 <= length <= n - 2:
            raise ValueError(f"diagonal interval length {length} out of range for n={n}")
        a = tuple((start - 1 + j) % n + 1 for j in range(length))
        b = tuple((start - 1 + length + j) % n + 1 for j in range(n - length))
        return Diagonal(n, min(a, b))

    @staticmethod
    def from_chord(n: int, a: int, b: int) -> "Diagonal":
        """Chord joining polygon vertices a < b cuts off leaves a..b-1."""
        if not 1 <= a < b <= n:
            raise ValueError("chord endpoints must satisfy 1 <= a < b <= n")
        return Diagonal.from_interval(n, a, b - a)

    def chord(self) -> tuple:
        """Polygon-vertex endpoints (a, b) with a < b of this diagonal."""
        start = self.leaves[0]
        end = (start - 1 + len(self.leaves)) % self.n + 1
        return (start, end) if start < end else (end, start)

    def complement_leaves(self) -> tuple:
        start = (self.leaves[-1] % self.n) + 1
        return tuple((start - 1 + j) % self.n + 1 for j in range(self.n - len(self.leaves)))

    def crosses(self, other: "Diagonal") -> bool:
        """True when the two chords cross in the interior of the polygon."""
        if self.n != other.n:
            raise ValueError("diagonals of different polygons")
        a, b = set(self.leaves), set(other.leaves)
        nested_or_disjoint = (
            a <= b or b <= a or not (a & b) or (a | b) == set(range(1, self.n + 1))
        )
        return not nested_or_disjoint

    def __str__(self):
        return f"{self.leaves[0]}-{self.leaves[-1]}"


def parse_diagonal(n: int, text: str) -> Diagonal:
    """Parse "i-j" as the leaf interval i..j (cyclic)."""
    lo, hi = text.split("-")
    start = int(lo)
    length = (int(hi) - start) % n + 1
    return Diagonal.from_interval(n, start, length)


@dataclass(frozen=True)
class TrivalentTree:
    """A triangulation given by its n-3 noncrossing diagonals."""

    n: int
    diagonals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 leaves")
        if len(self.diagonals) != self.n - 3:
            raise ValueError(f"expected {self.n - 3} diagonals, got {len(self.diagonals)}")
        diags = sorted(self.diagonals)
        for i, d in enumerate(diags):
            if d.n != self.n:
                raise ValueError("diagonal size mismatch")
            for e in diags[i + 1 :]:
                if d.crosses(e):
                    raise ValueError(f"crossing diagonals {d} and {e}")

    @property
    def sorted_diagonals(self) -> list:
        return sorted(self.diagonals)

    def triangles(self) -> list:
        """Triangles (a, b, c) of the triangulation, by ear clipping."""
        chords = {d.chord() for d in self.diagonals}

        def is_edge(p, q):
            p, q = min(p, q), max(p, q)
            if q - p == 1 or (p, q) == (1, self.n):
                return True
            return (p, q) in chords

        cycle = list(range(1, self.n + 1))
        out = []
        while len(cycle) > 3:
            for i, v in enumerate(cycle):
                p = cycle[i - 1]
                q = cycle[(i + 1) % len(cycle)]
                if is_edge(p, q):
                    out.append(tuple(sorted((p, v, q))))
                    cycle.pop(i)
                    break
            else:
                raise AssertionError("no ear found; diagonal set is not a triangulation")
        out.append(tuple(sorted(cycle)))
        return out

    def _edge_of(self, p: int, q: int):
        """Leaf index for a polygon side, Diagonal for a chord."""
        p, q = min(p, q), max(p, q)
        if q - p == 1:
            return p
        if (p, q) == (1, self.n):
            return self.n
        return Diagonal.from_chord(self.n, p, q)

    def node_incidences(self) -> list:
        """Per internal node, the triple of incident edges.

        A leaf edge is its integer leaf index; an internal edge is a Diagonal.
        """
        nodes = []
        for a, b, c in self.triangles():
            nodes.append((self._edge_of(a, b), self._edge_of(b, c), self._edge_of(a, c)))
        return nodes

    def __str__(self):
        return ",".join(str(d) for d in self.sorted_diagonals)


def caterpillar(n: int) -> TrivalentTree:
    """The fan triangulation: diagonals [1..2], [1..3], ..., [1..n-2]."""
    diags = frozenset(Diagonal.from_interval(n, 1, k) for k in range(2, n - 2 + 1))
    return TrivalentTree(n, diags)


def parse_tree(n: int, text: str) -> TrivalentTree:
    """Parse a comma-separated diagonal list, e.g. "1-2,1-3"."""
    if not text.strip():
        return TrivalentTree(n, frozenset())
    diags = frozenset(parse_diagonal(n, part.strip()) for part in text.split(","))
    return TrivalentTree(n, diags)


@functools.lru_cache(maxsize=None)
def _chord_sets(verts: tuple) -> tuple:
    """All ways to triangulate the convex sub-polygon on these vertices."""
    m = len(verts)
    if m < 3:
        return (frozenset(),)
    a, b = verts[0], verts[-1]
    out = []
    for k in range(1, m - 1):
        c = verts[k]
        extra = []
        if k > 1:
            extra.append(tuple(sorted((a, c))))
        if k < m - 2:
            extra.append(tuple(sorted((c, b))))
        for left in _chord_sets(verts[: k + 1]):
            for right in _chord_sets(verts[k:]):
                out.append(left | right | frozenset(extra))
    return tuple(out)


def enumerate_trees(n: int) -> list:
    """All triangulations of the n-gon; there are Catalan(n-2) of them."""
    if n < 3:
        raise ValueError("need at least 3 leaves")
    if n > MAX_ENUM_N:
        raise LimitExceeded(f"tree enumeration capped at n = {MAX_ENUM_N}")
    trees = []
    for chords in _chord_sets(tuple(range(1, n + 1))):
        diags = frozenset(Diagonal.from_chord(n, a, b) for a, b in chords)
        trees.append(TrivalentTree(n, diags))
    return trees


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)
