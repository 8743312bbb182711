"""SU(2) holonomy tuples on the n-punctured sphere and Goldman functions.

A point of the representation space is a tuple (g_1, ..., g_n) with g_i in the
conjugacy class of angle alpha_i and g_1 ... g_n = 1, up to overall
conjugation.  The Goldman function of a curve enclosing punctures i..i+k is
the class angle of the partial product g_i ... g_{i+k}.  Tuples are built by
solving one pair of pants per trivalent node and gluing along the tree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import su2
from .errors import DegenerateAxis, EmptyPolytope, NotRealizable
from .polygons import Polygon, bending_hamiltonian
from .polytopes import build_goldman
from .su2 import SU2
from .trees import Diagonal, TrivalentTree
from .weights import WeightVector

ANGLE_TOL = 1e-10
CLOSURE_TOL = 1e-9
MAX_REJECTIONS = 1_000_000


@dataclass
class HolonomyTuple:
    g: list  # n SU2 elements
    alpha: WeightVector

    def __post_init__(self):
        if len(self.g) != len(self.alpha):
            raise ValueError("holonomy count does not match weight count")
        for gi, ai in zip(self.g, self.alpha):
            if abs(su2.angle(gi) - float(ai)) > ANGLE_TOL:
                raise ValueError("holonomy class angle does not match weight")
        prod = su2.identity()
        for gi in self.g:
            prod = prod * gi
        if not prod.is_identity(CLOSURE_TOL):
            raise ValueError("holonomies do not multiply to the identity")

    @property
    def n(self) -> int:
        return len(self.g)

    def conjugated(self, h: SU2) -> "HolonomyTuple":
        return HolonomyTuple([su2.conjugate(gi, h) for gi in self.g], self.alpha)

    def to_json(self) -> dict:
        return {
            "alpha": [str(a) for a in self.alpha],
            "quaternions": [gi.q.tolist() for gi in self.g],
        }


@dataclass
class GoldmanVector:
    tree: TrivalentTree
    u: np.ndarray  # one value in [0, 1/2] per sorted diagonal

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        if self.u.shape != (self.tree.n - 3,):
            raise ValueError(f"expected {self.tree.n - 3} Goldman values")
        if np.any(self.u < -ANGLE_TOL) or np.any(self.u > 0.5 + ANGLE_TOL):
            raise ValueError("Goldman values must lie in [0, 1/2]")

    def to_json(self) -> dict:
        return {"tree": str(self.tree), "u": self.u.tolist()}


def partial_product(g: list, d: Diagonal) -> SU2:
    """g_i g_{i+1} ... g_{i+k} over the diagonal's cyclic leaf interval."""
    prod = su2.identity()
    for j in d.leaves:
        prod = prod * g[j - 1]
    return prod


def goldman(t: HolonomyTuple, d: Diagonal) -> float:
    """Class angle of the holonomy around the curve enclosing the interval."""
    return su2.angle(partial_product(t.g, d))


def goldman_vector(t: HolonomyTuple, tree: TrivalentTree) -> GoldmanVector:
    return GoldmanVector(tree, [goldman(t, d) for d in tree.sorted_diagonals])


def _check_triangle(a: float, b: float, c: float, slack=1e-12):
    """SU(2) triangle inequalities in alcove units; names the violated one."""
    if c < abs(a - b) - slack:
        raise NotRealizable(f"|{a} - {b}| <= {c} fails")
    if c > a + b + slack:
        raise NotRealizable(f"{c} <= {a} + {b} fails")
    if a + b + c > 1.0 + slack:
        raise NotRealizable(f"{a} + {b} + {c} <= 1 fails")


def _standard_pair(a: float, b: float, c: float):
    """g1 in C_a, g2 in C_b with angle(g1 g2) = c, in a fixed frame."""
    two_pi = 2.0 * np.pi
    sa, sb = np.sin(two_pi * a), np.sin(two_pi * b)
    if sa < 1e-13 or sb < 1e-13:
        # One class is (near) central; the product angle is forced.
        g1 = su2.exp_su2(np.array([0.0, 0.0, a]))
        g2 = su2.exp_su2(np.array([0.0, 0.0, b]))
        return g1, g2
    cos_psi = (np.cos(two_pi * a) * np.cos(two_pi * b) - np.cos(two_pi * c)) / (sa * sb)
    cos_psi = float(np.clip(cos_psi, -1.0, 1.0))
    sin_psi = np.sqrt(max(1.0 - cos_psi * cos_psi, 0.0))
    g1 = su2.exp_su2(np.array([0.0, 0.0, a]))
    g2 = su2.exp_su2(b * np.array([sin_psi, 0.0, cos_psi]))
    return g1, g2


def solve_pants(a: float, b: float, c: float, twist: float = 0.0):
    """A pair of pants: (g1, g2, g3) with class angles (a, b, c), g1 g2 g3 = 1.

    Exists iff |a - b| <= c <= min(a + b, 1 - (a + b)) in alcove units.  The
    twist rotates the solution about the axis of g1 g2, which fixes g3 and
    moves g1, g2 within their classes.
    """
    _check_triangle(a, b, c)
    g1, g2 = _standard_pair(a, b, c)
    g3 = (g1 * g2).inverse()
    if twist != 0.0:
        try:
            ax = su2.axis(g1 * g2)
        except DegenerateAxis:
            ax = None
        if ax is not None:
            q = su2.rotation_about(ax, twist)
            g1 = su2.conjugate(g1, q)
            g2 = su2.conjugate(g2, q)
            g3 = su2.conjugate(g3, q)
    return g1, g2, g3


def _split(h: SU2, v1: float, v2: float, twist: float):
    """(p1, p2) with p1 p2 = h and class angles (v1, v2), twisted about axis(h)."""
    w = su2.angle(h)
    _check_triangle(v1, v2, w)
    t1, t2 = _standard_pair(v1, v2, w)
    prod = t1 * t2
    # Rotate the standard frame so the product lands exactly on h.
    try:
        q = su2.rotation_between(su2.axis(prod), su2.axis(h))
    except DegenerateAxis:
        q = su2.identity()
    p1 = su2.conjugate(t1, q)
    p2 = su2.conjugate(t2, q)
    if twist != 0.0:
        try:
            ax = su2.axis(h)
        except DegenerateAxis:
            ax = None
        if ax is not None:
            r = su2.rotation_about(ax, twist)
            p1 = su2.conjugate(p1, r)
            p2 = su2.conjugate(p2, r)
    return p1, p2


def reconstruct_holonomy(
    tree: TrivalentTree, alpha: WeightVector, u, twists
) -> HolonomyTuple:
    """Glue pair-of-pants solutions along the tree.

    u and twists are indexed by tree.sorted_diagonals; leaf edges carry the
    weights.  Raises NotRealizable (naming the node) when some node's SU(2)
    triangle inequalities fail.
    """
    n = tree.n
    u = np.asarray(u, dtype=float)
    twists = np.asarray(twists, dtype=float)
    diags = tree.sorted_diagonals
    if u.shape != (n - 3,) or twists.shape != (n - 3,):
        raise ValueError(f"expected {n - 3} Goldman values and twists")
    index = {d: j for j, d in enumerate(diags)}
    alpha_f = alpha.floats()

    def edge_value(a: int, b: int) -> float:
        if b - a == 1:
            return alpha_f[a - 1]
        return float(u[index[Diagonal.from_chord(n, a, b)]])

    # chord (a, b) -> the triangles containing it
    tri_of_chord = {}
    for tri in tree.triangles():
        for p, q in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            tri_of_chord.setdefault((p, q), []).append(tri)

    g = [None] * n
    g[n - 1] = su2.exp_su2(np.array([0.0, 0.0, alpha_f[n - 1]]))

    def descend(a: int, b: int, h: SU2, from_tri):
        """h is the partial product g_a ... g_{b-1}; split it across the tree."""
        nodes = [t for t in tri_of_chord[(a, b)] if t != from_tri]
        if not nodes:
            raise AssertionError(f"no triangle beyond chord ({a}, {b})")
        tri = nodes[0]
        (m,) = [q for q in tri if q not in (a, b)]
        twist = float(twists[index[Diagonal.from_chord(n, a, b)]])
        try:
            p1, p2 = _split(h, edge_value(a, m), edge_value(m, b), twist)
        except NotRealizable as exc:
            raise NotRealizable(f"node {tri}: {exc}") from exc
        for lo, hi, part in ((a, m, p1), (m, b, p2)):
            if hi - lo == 1:
                g[lo - 1] = part
            else:
                descend(lo, hi, part, tri)

    root = tri_of_chord[(1, n)][0]
    # The full product is 1, so g_1 ... g_{n-1} is the inverse of g_n.
    h_root = g[n - 1].inverse()
    (m,) = [q for q in root if q not in (1, n)]
    try:
        p1, p2 = _split(h_root, edge_value(1, m), edge_value(m, n), 0.0)
    except NotRealizable as exc:
        raise NotRealizable(f"node {root}: {exc}") from exc
    for lo, hi, part in ((1, m, p1), (m, n, p2)):
        if hi - lo == 1:
            g[lo - 1] = part
        else:
            descend(lo, hi, part, root)

    return HolonomyTuple(g, alpha)


def sample_goldman(alpha: WeightVector, tree: TrivalentTree, rng, min_slack=1e-7):
    """Uniform point of the Goldman polytope by rejection in its bounding box."""
    poly = build_goldman(tree, alpha)
    box = poly.bounding_box()
    lo = np.array([float(a) for a, _ in box])
    hi = np.array([float(b) for _, b in box])
    A, bvec = poly.float_arrays()
    row_norms = np.linalg.norm(A, axis=1)
    row_norms[row_norms == 0.0] = 1.0
    for _ in range(MAX_REJECTIONS):
        pt = rng.uniform(lo, hi)
        if np.all(A @ pt <= bvec - min_slack * row_norms):
            return pt
    raise EmptyPolytope("rejection sampling failed; polytope has no usable interior")


def sample_holonomy(
    alpha: WeightVector, tree: TrivalentTree, rng, min_slack=1e-7
) -> HolonomyTuple:
    """Uniform Goldman values in the polytope plus uniform twists."""
    u = sample_goldman(alpha, tree, rng, min_slack=min_slack)
    twists = rng.uniform(0.0, 2.0 * np.pi, size=tree.n - 3)
    return reconstruct_holonomy(tree, alpha, u, twists)


def compare_goldman_bending(p: Polygon, tree: TrivalentTree, t: float) -> float:
    """Max over diagonals of |(1/t) * goldman(exp(t x_i)) - bending value|.

    The exponentiated tuple closes only up to O(t^2); Goldman values of its
    partial products are still well-defined.
    """
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0, 1]")
    g = [su2.exp_su2(t * p.x[i]) for i in range(p.n)]
    defect = 0.0
    for d in tree.sorted_diagonals:
        theta = su2.angle(partial_product(g, d))
        defect = max(defect, abs(theta / t - bending_hamiltonian(p, d)))
    return defect
