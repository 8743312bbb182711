"""Weighted polygon spaces and bending flows.

A point of the polygon space is a closed n-gon in R^3 with side lengths
alpha_i, up to rotation.  Diagonal lengths of a fixed triangulation are the
action variables; their flows bend the polygon about the diagonals.  Angle
variables are signed dihedral angles between adjacent triangles of the
triangulated polygon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDiagonal,
    DegenerateTriangle,
    EmptyPolytope,
    OutsidePolytope,
)
from .polytopes import build_delta
from .trees import Diagonal, TrivalentTree
from .weights import WeightVector

CLOSURE_TOL = 1e-10
DIAGONAL_TOL = 1e-9
MAX_REJECTIONS = 1_000_000


@dataclass
class Polygon:
    """Side vectors x (n, 3) with |x_i| = alpha_i and sum x_i = 0."""

    x: np.ndarray
    alpha: WeightVector

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        n = len(self.alpha)
        if self.x.shape != (n, 3):
            raise ValueError(f"expected side array of shape ({n}, 3)")
        lengths = np.linalg.norm(self.x, axis=1)
        target = np.array(self.alpha.floats())
        if np.max(np.abs(lengths - target)) > CLOSURE_TOL:
            raise ValueError("side lengths do not match the weights")
        if np.linalg.norm(self.x.sum(axis=0)) > CLOSURE_TOL:
            raise ValueError("polygon does not close up")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def gram(self) -> np.ndarray:
        """Rotation-invariant fingerprint: all pairwise dot products."""
        return self.x @ self.x.T


@dataclass
class ActionAngle:
    """Action-angle coordinates w.r.t. a triangulation.

    lengths[j] is the diagonal length and angles[j] the dihedral angle (rad)
    at tree.sorted_diagonals[j].
    """

    tree: TrivalentTree
    lengths: np.ndarray
    angles: np.ndarray

    def __post_init__(self):
        self.lengths = np.asarray(self.lengths, dtype=float)
        self.angles = np.asarray(self.angles, dtype=float)
        m = self.tree.n - 3
        if self.lengths.shape != (m,) or self.angles.shape != (m,):
            raise ValueError(f"expected {m} lengths and {m} angles")

    def to_json(self) -> dict:
        return {
            "tree": str(self.tree),
            "lengths": self.lengths.tolist(),
            "angles": self.angles.tolist(),
        }


def diagonal_vector(p: Polygon, d: Diagonal) -> np.ndarray:
    idx = [j - 1 for j in d.leaves]
    return p.x[idx].sum(axis=0)


def bending_hamiltonian(p: Polygon, d: Diagonal) -> float:
    """Length of the diagonal: |x_i + ... + x_{i+k}|."""
    return float(np.linalg.norm(diagonal_vector(p, d)))


def _rodrigues(v: np.ndarray, axis_unit: np.ndarray, t: float) -> np.ndarray:
    c, s = np.cos(t), np.sin(t)
    return (
        c * v
        + s * np.cross(np.broadcast_to(axis_unit, v.shape), v)
        + (1.0 - c) * (v @ axis_unit)[:, None] * axis_unit
    )


def bend(p: Polygon, d: Diagonal, t: float) -> Polygon:
    """Bending flow: rotate the sides in d by angle t about the diagonal."""
    u = diagonal_vector(p, d)
    norm = float(np.linalg.norm(u))
    if norm <= DIAGONAL_TOL:
        raise DegenerateDiagonal(f"diagonal {d} has zero length")
    idx = [j - 1 for j in d.leaves]
    x = p.x.copy()
    x[idx] = _rodrigues(x[idx], u / norm, t)
    return Polygon(x, p.alpha)


def _triangle_slack(a: float, b: float, c: float) -> float:
    """Smallest slack among the three triangle inequalities."""
    return min(a + b - c, b + c - a, c + a - b)


def _flat_vertices(tree: TrivalentTree, alpha: WeightVector, lengths) -> np.ndarray:
    """Planar polygon vertices with all triangles counterclockwise."""
    n = tree.n
    diags = tree.sorted_diagonals
    edge_len = {d: float(lengths[j]) for j, d in enumerate(diags)}

    def elen(edge):
        if isinstance(edge, int):
            return float(alpha[edge - 1])
        return edge_len[edge]

    def vpair(edge):
        """Polygon-vertex endpoints of a node edge."""
        if isinstance(edge, Diagonal):
            return edge.chord()
        if edge == n:
            return (n, 1)
        return (edge, edge + 1)

    triangles = tree.triangles()
    nodes = tree.node_incidences()
    for tri, node in zip(triangles, nodes):
        sides = [elen(e) for e in node]
        slack = _triangle_slack(*sides)
        if slack < -DIAGONAL_TOL:
            raise OutsidePolytope(f"triangle inequality fails at node {tri}")
        if slack <= DIAGONAL_TOL:
            raise DegenerateTriangle(f"triangle inequality tight at node {tri}")

    # Distance between two polygon vertices along any triangle edge.
    def vdist(p_, q_, tri):
        for edge in nodes[triangles.index(tri)]:
            if set(vpair(edge)) == {p_, q_}:
                return elen(edge)
        raise AssertionError("edge not found in triangle")

    pos = {}

    def place_third(tri):
        u, v, w = tri  # ascending order must come out counterclockwise
        missing = [q for q in tri if q not in pos]
        if not missing:
            return
        (r,) = missing
        p_, q_ = [q for q in tri if q != r]
        A, B = pos[p_], pos[q_]
        ra, rb = vdist(p_, r, tri), vdist(q_, r, tri)
        dvec = B - A
        dlen = float(np.linalg.norm(dvec))
        e1 = dvec / dlen
        e2 = np.array([-e1[1], e1[0]])
        xi = (dlen * dlen + ra * ra - rb * rb) / (2.0 * dlen)
        eta2 = ra * ra - xi * xi
        eta = np.sqrt(max(eta2, 0.0))
        for sign in (+1.0, -1.0):
            cand = A + xi * e1 + sign * eta * e2
            trial = {**{p_: A, q_: B}, r: cand}
            s1, s2 = trial[v] - trial[u], trial[w] - trial[u]
            cr = s1[0] * s2[1] - s1[1] * s2[0]
            if cr >= 0.0:
                pos[r] = cand
                return
        raise AssertionError("no counterclockwise placement found")

    # Seed with the first triangle, then grow across shared chords.
    first = triangles[0]
    a, b, c = first
    pos[a] = np.zeros(2)
    pos[b] = np.array([vdist(a, b, first), 0.0])
    place_third(first)
    remaining = list(triangles[1:])
    while remaining:
        for tri in remaining:
            if sum(q in pos for q in tri) >= 2:
                place_third(tri)
                remaining.remove(tri)
                break
        else:
            raise AssertionError("triangulation is not connected")

    return np.array([pos[i] for i in range(1, n + 1)])


def _adjacent_triangles(tree: TrivalentTree, d: Diagonal):
    """(inside, outside) triangles at a chord; inside has its apex between a and b."""
    a, b = d.chord()
    inside = outside = None
    for tri in tree.triangles():
        if a in tri and b in tri:
            (r,) = [q for q in tri if q not in (a, b)]
            if a < r < b:
                inside = tri
            else:
                outside = tri
    if inside is None or outside is None:
        raise ValueError(f"{d} is not a diagonal of the tree")
    return inside, outside


def _triangle_normal(verts3d: dict, tri) -> np.ndarray:
    u, v, w = tri
    nvec = np.cross(verts3d[v] - verts3d[u], verts3d[w] - verts3d[u])
    norm = float(np.linalg.norm(nvec))
    if norm <= 1e-14:
        raise DegenerateTriangle(f"flat triangle {tri}")
    return nvec / norm


def measure_action_angle(p: Polygon, tree: TrivalentTree) -> ActionAngle:
    """Diagonal lengths and signed dihedral angles of p w.r.t. the tree."""
    verts = np.concatenate([[np.zeros(3)], np.cumsum(p.x[:-1], axis=0)])
    vpos = {i + 1: verts[i] for i in range(p.n)}
    lengths = []
    angles = []
    for d in tree.sorted_diagonals:
        a, b = d.chord()
        u = vpos[b] - vpos[a]
        norm = float(np.linalg.norm(u))
        if norm <= DIAGONAL_TOL:
            raise DegenerateDiagonal(f"diagonal {d} has zero length")
        u = u / norm
        inside, outside = _adjacent_triangles(tree, d)
        n_in = _triangle_normal(vpos, inside)
        n_out = _triangle_normal(vpos, outside)
        angles.append(float(np.arctan2(u @ np.cross(n_out, n_in), n_out @ n_in)))
        lengths.append(norm)
    return ActionAngle(tree, np.array(lengths), np.array(angles))


def reconstruct(aa: ActionAngle, alpha: WeightVector) -> Polygon:
    """Rebuild a polygon from action-angle data.

    The flat (all dihedrals zero) polygon is assembled triangle by triangle,
    then each diagonal is bent by its angle; bending flows of one triangulation
    commute, so the order is immaterial.
    """
    tree = aa.tree
    verts2d = _flat_vertices(tree, alpha, aa.lengths)
    verts = np.hstack([verts2d, np.zeros((tree.n, 1))])
    x = np.roll(verts, -1, axis=0) - verts
    p = Polygon(x, alpha)
    for j, d in enumerate(tree.sorted_diagonals):
        theta = float(aa.angles[j])
        if theta != 0.0:
            p = bend(p, d, theta)
    return p


def sample_lengths(alpha: WeightVector, tree: TrivalentTree, rng, min_slack=1e-7):
    """Uniform point of the bending polytope by rejection in its bounding box."""
    poly = build_delta(tree, alpha)
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


def sample_polygon(
    alpha: WeightVector, tree: TrivalentTree, rng, min_slack=1e-7
) -> Polygon:
    """Liouville-measure sample: uniform actions in the polytope, uniform angles."""
    lengths = sample_lengths(alpha, tree, rng, min_slack=min_slack)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=tree.n - 3)
    return reconstruct(ActionAngle(tree, lengths, angles), alpha)


def bending_field(x: np.ndarray, d: Diagonal) -> np.ndarray:
    """Hamiltonian vector field of the diagonal length on raw side vectors."""
    idx = [j - 1 for j in d.leaves]
    u = x[idx].sum(axis=0)
    norm = float(np.linalg.norm(u))
    if norm <= DIAGONAL_TOL:
        raise DegenerateDiagonal(f"diagonal {d} has zero length")
    v = np.zeros_like(x)
    v[idx] = np.cross(u / norm, x[idx])
    return v


def poisson_bracket_fd(p: Polygon, f: Diagonal, g: Diagonal, h: float) -> float:
    """Commutator defect of one explicit Euler step of each bending field.

    For Poisson-commuting Hamiltonians the defect is O(h^3); for crossing
    diagonals (non-commuting flows) it is Theta(h^2).
    """

    def euler(x, d):
        return x + h * bending_field(x, d)

    fg = euler(euler(p.x, f), g)
    gf = euler(euler(p.x, g), f)
    return float(np.max(np.linalg.norm(fg - gf, axis=1)))


def polygon_csv_row(p: Polygon, tree: TrivalentTree) -> list:
    """Flat CSV row: 3n coordinates followed by the n-3 bending values."""
    row = [f"{v:.17g}" for v in p.x.reshape(-1)]
    row += [f"{bending_hamiltonian(p, d):.17g}" for d in tree.sorted_diagonals]
    return row
