import numpy as np
import pytest

from polygonmoduli.errors import (
    DegenerateDiagonal,
    DegenerateTriangle,
    OutsidePolytope,
)
from polygonmoduli.polygons import (
    ActionAngle,
    Polygon,
    bend,
    bending_hamiltonian,
    measure_action_angle,
    poisson_bracket_fd,
    reconstruct,
    sample_polygon,
)
from polygonmoduli.polytopes import build_delta
from polygonmoduli.trees import Diagonal, caterpillar, enumerate_trees, parse_tree
from polygonmoduli.weights import WeightVector


def square(side=0.2):
    alpha = WeightVector(["1/5"] * 4)
    x = side * np.array([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], float)
    return Polygon(x, alpha)


def test_bending_hamiltonian_direct_norm():
    p = square()
    d = Diagonal.from_interval(4, 1, 2)
    assert bending_hamiltonian(p, d) == pytest.approx(
        np.linalg.norm(p.x[0] + p.x[1]), abs=1e-15
    )
    assert bending_hamiltonian(p, d) == pytest.approx(0.2 * np.sqrt(2), abs=1e-14)


def test_bending_degenerate_diagonal_value():
    alpha = WeightVector(["1/5", "1/5", "1/4", "1/4"])
    x = np.array(
        [[0.2, 0, 0], [-0.2, 0, 0], [0.25, 0, 0], [-0.25, 0, 0]], float
    )
    p = Polygon(x, alpha)
    d = Diagonal.from_interval(4, 1, 2)
    assert bending_hamiltonian(p, d) == 0.0
    with pytest.raises(DegenerateDiagonal):
        bend(p, d, 0.3)


def test_bending_equals_complement_value():
    rng = np.random.default_rng(0)
    alpha = WeightVector(["1/5"] * 6)
    tree = caterpillar(6)
    p = sample_polygon(alpha, tree, rng)
    for d in tree.sorted_diagonals:
        comp = np.linalg.norm(p.x[[j - 1 for j in d.complement_leaves()]].sum(axis=0))
        assert bending_hamiltonian(p, d) == pytest.approx(comp, abs=1e-12)


def test_bend_identity_and_period():
    rng = np.random.default_rng(1)
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    p = sample_polygon(alpha, tree, rng)
    d = tree.sorted_diagonals[0]
    assert np.max(np.abs(bend(p, d, 0.0).x - p.x)) == 0.0
    assert np.max(np.abs(bend(p, d, 2 * np.pi).x - p.x)) < 1e-10


def test_bend_one_parameter_group():
    rng = np.random.default_rng(2)
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    p = sample_polygon(alpha, tree, rng)
    d = tree.sorted_diagonals[1]
    ab = bend(bend(p, d, 0.4), d, 0.9)
    once = bend(p, d, 1.3)
    assert np.max(np.abs(ab.x - once.x)) < 1e-12


def test_bend_preserves_closure_sides_and_commuting_hamiltonians():
    rng = np.random.default_rng(3)
    alpha = WeightVector(["1/5"] * 6)
    tree = caterpillar(6)
    for _ in range(50):
        p = sample_polygon(alpha, tree, rng)
        d = tree.sorted_diagonals[rng.integers(0, 3)]
        t = rng.uniform(0, 2 * np.pi)
        q = bend(p, d, t)
        assert np.linalg.norm(q.x.sum(axis=0)) < 1e-10
        assert np.max(
            np.abs(np.linalg.norm(q.x, axis=1) - np.linalg.norm(p.x, axis=1))
        ) < 1e-10
        for e in tree.sorted_diagonals:
            assert bending_hamiltonian(q, e) == pytest.approx(
                bending_hamiltonian(p, e), abs=1e-10
            )


def test_reconstruct_n4_planar():
    alpha = WeightVector(["1/5"] * 4)
    tree = caterpillar(4)
    aa = ActionAngle(tree, [0.3], [0.0])
    p = reconstruct(aa, alpha)
    d = tree.sorted_diagonals[0]
    assert bending_hamiltonian(p, d) == pytest.approx(0.3, abs=1e-12)
    assert np.max(np.abs(p.x[:, 2])) < 1e-12  # flat build stays planar


def test_reconstruct_n5_closure():
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    aa = ActionAngle(tree, [0.3, 0.3], [1.0, 2.5])
    p = reconstruct(aa, alpha)
    assert np.linalg.norm(p.x.sum(axis=0)) < 1e-10
    for d, l in zip(tree.sorted_diagonals, aa.lengths):
        assert bending_hamiltonian(p, d) == pytest.approx(l, abs=1e-10)


def test_reconstruct_angle_periodicity():
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    p1 = reconstruct(ActionAngle(tree, [0.3, 0.25], [0.7, 1.1]), alpha)
    p2 = reconstruct(
        ActionAngle(tree, [0.3, 0.25], [0.7 + 2 * np.pi, 1.1]), alpha
    )
    assert np.max(np.abs(p1.x - p2.x)) < 1e-10


def test_reconstruct_errors():
    alpha = WeightVector(["1/5"] * 4)
    tree = caterpillar(4)
    with pytest.raises(OutsidePolytope):
        reconstruct(ActionAngle(tree, [0.9], [0.0]), alpha)
    with pytest.raises(DegenerateTriangle):
        reconstruct(ActionAngle(tree, [0.4], [0.0]), alpha)


def test_measure_reconstruct_round_trip():
    # up to rotation: compare Gram matrices
    rng = np.random.default_rng(4)
    for n, diagonals in [(5, None), (6, "1-2,4-5,4-6")]:
        alpha = WeightVector(["1/5"] * n)
        tree = caterpillar(n) if diagonals is None else parse_tree(n, diagonals)
        for _ in range(20):
            p = sample_polygon(alpha, tree, rng)
            aa = measure_action_angle(p, tree)
            q = reconstruct(aa, alpha)
            assert np.max(np.abs(p.gram() - q.gram())) < 1e-9


def test_sample_respects_polytope_and_invariants():
    rng = np.random.default_rng(5)
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    poly = build_delta(tree, alpha)
    A, b = poly.float_arrays()
    for _ in range(200):
        p = sample_polygon(alpha, tree, rng)
        u = [bending_hamiltonian(p, d) for d in tree.sorted_diagonals]
        assert np.all(A @ u <= b + 1e-9)


def test_sample_n4_uniform_action():
    # single action variable uniform on (0, 2/5) under Liouville sampling
    rng = np.random.default_rng(6)
    alpha = WeightVector(["1/5"] * 4)
    tree = caterpillar(4)
    d = tree.sorted_diagonals[0]
    vals = np.array(
        [bending_hamiltonian(sample_polygon(alpha, tree, rng), d) for _ in range(4000)]
    )
    hist, _ = np.histogram(vals, bins=8, range=(0, 0.4))
    assert hist.min() > 0.5 * hist.mean()  # crude uniformity check
    assert abs(vals.mean() - 0.2) < 0.01


def test_sample_hull_covers_polytope_n5():
    from scipy.spatial import ConvexHull

    from polygonmoduli.polytopes import volume

    rng = np.random.default_rng(7)
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    pts = np.array(
        [
            [bending_hamiltonian(p, d) for d in tree.sorted_diagonals]
            for p in (sample_polygon(alpha, tree, rng) for _ in range(2000))
        ]
    )
    hull = ConvexHull(pts)
    assert hull.volume >= 0.95 * float(volume(build_delta(tree, alpha), "exact"))


def test_poisson_bracket_same_diagonal_zero():
    rng = np.random.default_rng(8)
    alpha = WeightVector(["1/5"] * 5)
    tree = caterpillar(5)
    p = sample_polygon(alpha, tree, rng)
    d = tree.sorted_diagonals[0]
    assert poisson_bracket_fd(p, d, d, 1e-2) == 0.0


def test_poisson_bracket_noncrossing_cubic():
    rng = np.random.default_rng(9)
    alpha = WeightVector(["1/5"] * 6)
    tree = caterpillar(6)
    f, g = tree.sorted_diagonals[0], tree.sorted_diagonals[1]
    for _ in range(10):
        p = sample_polygon(alpha, tree, rng, min_slack=0.02)
        d1 = poisson_bracket_fd(p, f, g, 1e-2)
        d2 = poisson_bracket_fd(p, f, g, 5e-3)
        assert d1 <= 1e-5
        if d2 > 0:
            assert d1 / d2 == pytest.approx(8.0, rel=0.25)


def test_poisson_bracket_crossing_quadratic():
    rng = np.random.default_rng(10)
    alpha = WeightVector(["1/5"] * 6)
    tree = caterpillar(6)
    f = tree.sorted_diagonals[0]  # [1..2]
    g = Diagonal.from_interval(6, 2, 2)  # [2..3], crosses f
    assert f.crosses(g)
    ratios = []
    for _ in range(10):
        p = sample_polygon(alpha, tree, rng, min_slack=0.02)
        d1 = poisson_bracket_fd(p, f, g, 1e-2)
        d2 = poisson_bracket_fd(p, f, g, 5e-3)
        ratios.append(d1 / d2)
    # quadratic scaling: ratio near 4, strictly below the cubic ratio 8
    assert np.median(ratios) == pytest.approx(4.0, rel=0.3)


def test_phi_image_within_polytope_all_trees_n6():
    rng = np.random.default_rng(11)
    alpha = WeightVector(["1/6"] * 6)
    for tree in enumerate_trees(6):
        poly = build_delta(tree, alpha)
        A, b = poly.float_arrays()
        for _ in range(20):
            p = sample_polygon(alpha, tree, rng)
            u = [bending_hamiltonian(p, d) for d in tree.sorted_diagonals]
            assert np.all(A @ u <= b + 1e-9)
