"""Moment polytopes of the bending and Goldman systems.

For a triangulation with dual tree Gamma, the bending polytope is cut out by
the Euclidean triangle inequalities at each trivalent node (leaf slots frozen
at the weights alpha); the Goldman polytope additionally imposes the quantum
upper bound a + b + c <= 1 per node and the box 0 <= u <= 1/2.  Everything is
exact rational except Monte-Carlo volume.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimTooLarge
from .trees import TrivalentTree
from .weights import WeightVector

MAX_VERTEX_DIM = 4
MAX_EXACT_VOLUME_DIM = 3


@dataclass
class HPolytope:
    """{x : rows[i] . x <= rhs[i]}, one coordinate per diagonal of the tree."""

    tree: TrivalentTree
    rows: list  # list of (tuple of Fractions, Fraction)

    @property
    def dim(self) -> int:
        return self.tree.n - 3

    @property
    def variables(self) -> list:
        return self.tree.sorted_diagonals

    def contains(self, point, slack=Fraction(0)) -> bool:
        """Exact membership for rational points; slack > 0 demands interior room."""
        point = [Fraction(x) for x in point]
        return all(
            sum(c * x for c, x in zip(row, point)) <= rhs - slack
            for row, rhs in self.rows
        )

    def contains_float(self, point, tol=0.0) -> bool:
        A, b = self.float_arrays()
        return bool(np.all(A @ np.asarray(point, dtype=float) <= b + tol))

    def float_arrays(self):
        A = np.array([[float(c) for c in row] for row, _ in self.rows], dtype=float)
        b = np.array([float(rhs) for _, rhs in self.rows], dtype=float)
        return A, b

    def bounding_box(self) -> list:
        """Per-variable (lo, hi) extracted from the single-variable rows."""
        lo = [Fraction(0)] * self.dim
        hi = [None] * self.dim
        for row, rhs in self.rows:
            support = [j for j, c in enumerate(row) if c != 0]
            if len(support) != 1:
                continue
            (j,) = support
            c = row[j]
            if c > 0:
                bound = rhs / c
                hi[j] = bound if hi[j] is None else min(hi[j], bound)
            else:
                bound = rhs / c
                lo[j] = max(lo[j], bound)
        if any(h is None for h in hi):
            raise AssertionError("polytope is missing an upper box bound")
        return list(zip(lo, hi))

    def to_json(self, include_vertices=False) -> dict:
        data = {
            "variables": [str(d) for d in self.variables],
            "inequalities": [
                [str(c) for c in row] + [str(rhs)] for row, rhs in self.rows
            ],
        }
        if include_vertices:
            data["vertices"] = [[str(c) for c in v] for v in vertices(self)]
        return data


def _node_rows(tree: TrivalentTree, alpha: WeightVector, quantum: bool) -> list:
    """Triangle-inequality rows per node; leaf slots are frozen at alpha."""
    var_index = {d: j for j, d in enumerate(tree.sorted_diagonals)}
    dim = tree.n - 3
    rows = []

    def term(edge):
        """(coefficient vector, constant) for the value of one node edge."""
        coeffs = [Fraction(0)] * dim
        if isinstance(edge, int):
            return coeffs, alpha[edge - 1]
        coeffs[var_index[edge]] = Fraction(1)
        return coeffs, Fraction(0)

    for node in tree.node_incidences():
        terms = [term(e) for e in node]
        for i in range(3):
            # edge_i <= sum of the other two
            row = [Fraction(0)] * dim
            const = Fraction(0)
            for k in range(3):
                sign = 1 if k == i else -1
                row = [r + sign * c for r, c in zip(row, terms[k][0])]
                const += sign * terms[k][1]
            rows.append((tuple(row), -const))
        if quantum:
            # a + b + c <= 1 per pair-of-pants
            row = [Fraction(0)] * dim
            const = Fraction(0)
            for k in range(3):
                row = [r + c for r, c in zip(row, terms[k][0])]
                const += terms[k][1]
            rows.append((tuple(row), Fraction(1) - const))
    return rows


def _box_rows(tree: TrivalentTree, alpha: WeightVector, cap=None) -> list:
    dim = tree.n - 3
    rows = []
    for j, d in enumerate(tree.sorted_diagonals):
        inner = sum((alpha[i - 1] for i in d.leaves), Fraction(0))
        outer = alpha.total() - inner
        upper = min(inner, outer)
        if cap is not None:
            upper = min(upper, cap)
        row = [Fraction(0)] * dim
        row[j] = Fraction(-1)
        rows.append((tuple(row), Fraction(0)))
        row = [Fraction(0)] * dim
        row[j] = Fraction(1)
        rows.append((tuple(row), upper))
    return rows


def build_delta(tree: TrivalentTree, alpha: WeightVector) -> HPolytope:
    """Bending moment polytope: triangle inequalities at every node."""
    if len(alpha) != tree.n:
        raise ValueError("weight count does not match leaf count")
    rows = _node_rows(tree, alpha, quantum=False) + _box_rows(tree, alpha)
    return HPolytope(tree, rows)


def build_goldman(tree: TrivalentTree, alpha: WeightVector) -> HPolytope:
    """Goldman moment polytope: triangle plus quantum inequalities, box [0, 1/2]."""
    if len(alpha) != tree.n:
        raise ValueError("weight count does not match leaf count")
    rows = _node_rows(tree, alpha, quantum=True) + _box_rows(
        tree, alpha, cap=Fraction(1, 2)
    )
    return HPolytope(tree, rows)


def _solve_square(rows, rhs):
    """Exact Gaussian elimination; returns None for singular systems."""
    d = len(rhs)
    M = [list(row) + [r] for row, r in zip(rows, rhs)]
    for col in range(d):
        pivot = next((r for r in range(col, d) if M[r][col] != 0), None)
        if pivot is None:
            return None
        M[col], M[pivot] = M[pivot], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(d):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[r][d] for r in range(d))


def vertices(p: HPolytope) -> list:
    """Exact vertex enumeration by d-subset intersection plus feasibility filter."""
    d = p.dim
    if d > MAX_VERTEX_DIM:
        raise DimTooLarge(f"vertex enumeration capped at dimension {MAX_VERTEX_DIM}")
    if d == 0:
        return [()]
    seen = set()
    out = []
    for combo in itertools.combinations(range(len(p.rows)), d):
        rows = [p.rows[i][0] for i in combo]
        rhs = [p.rows[i][1] for i in combo]
        point = _solve_square(rows, rhs)
        if point is None or point in seen:
            continue
        if p.contains(point):
            seen.add(point)
            out.append(point)
    return sorted(out)


def is_empty(p: HPolytope) -> bool:
    """Exact emptiness test.

    For dimensions with exact vertex support, empty iff no vertex exists (the
    polytope is bounded by construction).  Larger dimensions fall back to
    scipy's LP on the rational data converted to floats.
    """
    if p.dim <= MAX_VERTEX_DIM:
        return len(vertices(p)) == 0
    from scipy.optimize import linprog

    A, b = p.float_arrays()
    res = linprog(np.zeros(p.dim), A_ub=A, b_ub=b, bounds=[(None, None)] * p.dim)
    return not res.success


def volume(p: HPolytope, method="mc", samples=100_000, rng=None):
    """Volume of the polytope.

    method="exact": exact rational volume (dim <= 3) via a Delaunay
    triangulation of the exact vertex set.  method="mc": Monte-Carlo estimate;
    returns (estimate, standard_error).
    """
    if method == "exact":
        return _volume_exact(p)
    if method != "mc":
        raise ValueError(f"unknown method {method!r}")
    if rng is None:
        rng = np.random.default_rng(0)
    box = p.bounding_box()
    lo = np.array([float(a) for a, _ in box])
    hi = np.array([float(b) for _, b in box])
    box_vol = float(np.prod(hi - lo))
    if box_vol == 0.0:
        return 0.0, 0.0
    A, b = p.float_arrays()
    pts = rng.uniform(lo, hi, size=(samples, p.dim))
    inside = np.all(pts @ A.T <= b + 1e-12, axis=1)
    frac = float(np.mean(inside))
    est = frac * box_vol
    se = box_vol * math.sqrt(max(frac * (1.0 - frac), 0.0) / samples)
    return est, se


def _volume_exact(p: HPolytope) -> Fraction:
    if p.dim > MAX_EXACT_VOLUME_DIM:
        raise DimTooLarge(f"exact volume capped at dimension {MAX_EXACT_VOLUME_DIM}")
    verts = vertices(p)
    if len(verts) <= p.dim:
        return Fraction(0)
    if p.dim == 0:
        return Fraction(1)
    if p.dim == 1:
        xs = [v[0] for v in verts]
        return max(xs) - min(xs)
    from scipy.spatial import Delaunay, QhullError

    pts = np.array([[float(c) for c in v] for v in verts])
    try:
        tri = Delaunay(pts)
    except QhullError:
        return Fraction(0)
    total = Fraction(0)
    fact = math.factorial(p.dim)
    for simplex in tri.simplices:
        base = verts[simplex[0]]
        mat = [
            [verts[i][k] - base[k] for k in range(p.dim)] for i in simplex[1:]
        ]
        total += abs(_det(mat))
    return total / fact


def _det(mat) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    m = [row[:] for row in mat]
    d = len(m)
    det = Fraction(1)
    for col in range(d):
        pivot = next((r for r in range(col, d) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for r in range(col + 1, d):
            if m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


@dataclass(frozen=True)
class FusionInstance:
    """Integer leaf labels at a fixed level on a triangulation."""

    tree: TrivalentTree
    labels: tuple  # one nonnegative integer per leaf
    level: int

    def __post_init__(self):
        if len(self.labels) != self.tree.n:
            raise ValueError("label count does not match leaf count")
        if self.level < 1:
            raise ValueError("level must be positive")
        if any(l < 0 or l > self.level for l in self.labels):
            raise ValueError("labels must lie in [0, level]")


def _node_admissible(a: int, b: int, c: int, level: int) -> bool:
    """Level-truncated Clebsch-Gordan rule with parity constraint."""
    return (
        (a + b + c) % 2 == 0
        and abs(a - b) <= c <= a + b
        and a + b + c <= 2 * level
    )


def fusion_count(inst: FusionInstance) -> int:
    """Number of admissible integer labelings of the internal edges.

    Tree-independent (fusion associativity); equals the lattice-point count of
    the level-scaled Goldman polytope.
    """
    tree = inst.tree
    diags = tree.sorted_diagonals
    index = {d: j for j, d in enumerate(diags)}
    nodes = tree.node_incidences()

    def value(edge, assignment):
        if isinstance(edge, int):
            return inst.labels[edge - 1]
        return assignment[index[edge]]

    count = 0
    for assignment in itertools.product(range(inst.level + 1), repeat=len(diags)):
        if all(
            _node_admissible(*(value(e, assignment) for e in node), inst.level)
            for node in nodes
        ):
            count += 1
    return count


def polytope_report(p: HPolytope, include_vertices: bool) -> str:
    return json.dumps(p.to_json(include_vertices=include_vertices), indent=2)
