"""Numerical verification suites tying the two integrable systems together.

Three suites: flow commutation of the bending fields, the polytope image of
sampled Goldman vectors, and the small-scale comparison of Goldman functions
with bending Hamiltonians.  Each returns a SuiteResult with measured defects;
the CLI turns these into pass/fail lines and exit codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import holonomy, polygons, polytopes
from .trees import TrivalentTree
from .weights import WeightVector


@dataclass
class SuiteResult:
    name: str
    passed: bool
    skipped: bool = False
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        extras = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"[{status}] {self.name}: {extras}"


def _fit_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def flow_commutation_suite(
    alpha: WeightVector,
    tree: TrivalentTree,
    rng,
    samples: int = 50,
    steps=(1e-2, 5e-3),
    defect_tol: float = 1e-5,
    slope_range=(2.5, 3.5),
    min_slack: float = 0.02,
) -> SuiteResult:
    """Euler-step commutator defect for every noncrossing diagonal pair.

    Commuting bending fields give an O(s^3) defect; the suite checks the
    absolute defect at the largest step and the log-log slope across steps.
    """
    diags = tree.sorted_diagonals
    pairs = list(itertools.combinations(diags, 2))
    rows = []  # (s, defect)
    slopes = []
    max_defect = 0.0
    for _ in range(samples):
        p = polygons.sample_polygon(alpha, tree, rng, min_slack=min_slack)
        for f, g in pairs:
            defects = [polygons.poisson_bracket_fd(p, f, g, s) for s in steps]
            for s, d in zip(steps, defects):
                rows.append((s, d))
            max_defect = max(max_defect, defects[0])
            if min(defects) > 0.0:
                slopes.append(_fit_slope(steps, defects))
    median_slope = float(np.median(slopes)) if slopes else float("nan")
    passed = max_defect <= defect_tol and (
        not slopes or slope_range[0] <= median_slope <= slope_range[1]
    )
    return SuiteResult(
        "flow-commutation",
        passed,
        details={
            "max_defect": f"{max_defect:.3e}",
            "median_slope": f"{median_slope:.3f}",
            "tol": f"{defect_tol:.1e}",
            "pairs": len(pairs),
        },
    ), rows


def polytope_image_suite(
    alpha: WeightVector,
    tree: TrivalentTree,
    rng,
    samples: int = 10_000,
    membership_tol: float = 1e-9,
    coverage: float = 0.95,
) -> SuiteResult:
    """Goldman vectors of sampled holonomy tuples fill the bending polytope.

    Checks membership of every sample and compares the sample hull volume with
    the polytope volume.  Only meaningful for |alpha| < 1 (the caller gates).
    """
    delta = polytopes.build_delta(tree, alpha)
    A, b = delta.float_arrays()
    dim = delta.dim
    points = np.empty((samples, dim))
    worst = -np.inf
    for i in range(samples):
        t = holonomy.sample_holonomy(alpha, tree, rng)
        u = holonomy.goldman_vector(t, tree).u
        points[i] = u
        worst = max(worst, float(np.max(A @ u - b)))
    all_inside = worst <= membership_tol

    if dim == 0:
        ratio = 1.0
    elif dim == 1:
        vol = float(polytopes.volume(delta, "exact"))
        ratio = (points.max() - points.min()) / vol if vol > 0 else 1.0
    else:
        from scipy.spatial import ConvexHull

        hull = ConvexHull(points)
        if dim <= polytopes.MAX_EXACT_VOLUME_DIM:
            vol = float(polytopes.volume(delta, "exact"))
        else:
            vol, _ = polytopes.volume(delta, "mc", 200_000, rng)
        ratio = hull.volume / vol if vol > 0 else 1.0

    passed = all_inside and ratio >= coverage
    return SuiteResult(
        "polytope-image",
        passed,
        details={
            "max_violation": f"{worst:.3e}",
            "hull_coverage": f"{ratio:.4f}",
            "required": f"{coverage:.2f}",
            "samples": samples,
        },
    )


def goldman_bending_suite(
    alpha: WeightVector,
    tree: TrivalentTree,
    rng,
    samples: int = 100,
    scales=(0.1, 0.05, 0.025),
    slope_min: float = 0.8,
    good_fraction: float = 0.9,
    abs_tol: float = 0.02,
    min_slack: float = 1e-3,
) -> SuiteResult:
    """Scaled Goldman values converge to bending values at first order in t."""
    scales = np.asarray(scales, dtype=float)
    rows = []  # (t, defect)
    n_good = 0
    max_small = 0.0
    for _ in range(samples):
        p = polygons.sample_polygon(alpha, tree, rng, min_slack=min_slack)
        defects = np.array(
            [holonomy.compare_goldman_bending(p, tree, t) for t in scales]
        )
        for t, d in zip(scales, defects):
            rows.append((float(t), float(d)))
        max_small = max(max_small, float(defects[-1]))
        if np.all(defects > 0.0) and _fit_slope(scales, defects) >= slope_min:
            n_good += 1
        elif np.all(defects <= abs_tol):
            # Defects at rounding level carry no slope information.
            n_good += 1
    frac = n_good / samples
    passed = frac >= good_fraction and max_small <= abs_tol
    return SuiteResult(
        "goldman-bending",
        passed,
        details={
            "slope_ok_fraction": f"{frac:.2f}",
            "required_fraction": f"{good_fraction:.2f}",
            "max_defect_smallest_t": f"{max_small:.4f}",
            "tol": f"{abs_tol:.3f}",
        },
    ), rows


def run_verification(
    alpha: WeightVector,
    tree: TrivalentTree,
    seed: int,
    samples: int = 200,
    commutation_tol: float = 1e-5,
    identification_tol: float = 0.02,
):
    """Run all suites with one seeded RNG; returns (results, sweep, commutation)."""
    rng = np.random.default_rng(seed)
    results = []

    res, commutation_rows = flow_commutation_suite(
        alpha, tree, rng, samples=min(samples, 200), defect_tol=commutation_tol
    )
    results.append(res)

    # |alpha| = 1 is the boundary case where the identification still holds;
    # only strictly larger weights are skipped.
    small_weight = alpha.total() <= 1
    if small_weight:
        # the hull-coverage check needs enough points to fill the polytope
        image_samples = min(max(samples * 10, 2_000), 10_000)
        results.append(polytope_image_suite(alpha, tree, rng, samples=image_samples))
        res, sweep_rows = goldman_bending_suite(
            alpha, tree, rng, samples=min(samples, 200), abs_tol=identification_tol
        )
        results.append(res)
    else:
        sweep_rows = []
        for name in ("polytope-image", "goldman-bending"):
            results.append(
                SuiteResult(
                    name,
                    passed=True,
                    skipped=True,
                    details={"reason": "identification requires |alpha| <= 1"},
                )
            )

    return results, sweep_rows, commutation_rows
