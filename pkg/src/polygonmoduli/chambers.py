"""Walls, chambers and wall-crossing paths in stability-parameter space.

All arithmetic is exact rational: wall membership is equality-sensitive.  The
wall-crossing path starts from the distinguished chamber (the moduli space is
a projective space there) and records blow-ups and flips together with the
running Poincare polynomial.  Two independent descriptions are implemented:
one in the weights alpha directly, one in the GIT normalization w = 2a/|a|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotSmallWeight, OnWall
from .weights import WeightVector


@dataclass(frozen=True, order=True)
class Wall:
    """The wall sum_J alpha_j - sum_I alpha_i = k, canonicalized.

    For k > 0 the representative is forced; for k = 0 the lexicographically
    smaller of I and its complement is stored.
    """

    n: int
    I: tuple
    k: int

    @staticmethod
    def canonical(n: int, I, k) -> "Wall":
        I = tuple(sorted(I))
        if k < 0:
            J = tuple(i for i in range(1, n + 1) if i not in I)
            return Wall(n, J, -k)
        if k == 0:
            J = tuple(i for i in range(1, n + 1) if i not in I)
            return Wall(n, min(I, J), 0)
        return Wall(n, I, k)

    def __str__(self):
        return f"H({{{','.join(map(str, self.I))}}}, {self.k})"


def walls_hit(alpha: WeightVector) -> list:
    """All walls containing alpha; empty iff alpha is generic."""
    n = alpha.n
    total = alpha.total()
    found = set()
    for r in range(n + 1):
        for I in itertools.combinations(range(1, n + 1), r):
            s = total - 2 * sum((alpha[i - 1] for i in I), Fraction(0))
            if s.denominator == 1:
                found.add(Wall.canonical(n, I, int(s)))
    return sorted(found)


def is_generic(alpha: WeightVector) -> bool:
    return not walls_hit(alpha)


def chamber_signature(alpha: WeightVector) -> dict:
    """Sign of sum_{i in S} w_i - 1 for every proper subset S containing n.

    Equal signatures characterize the chamber for |alpha| < 1.  Raises OnWall
    (listing the walls) when some functional vanishes.
    """
    n = alpha.n
    w = alpha.normalized()
    signature = {}
    on_wall = []
    for r in range(0, n - 1):
        for rest in itertools.combinations(range(1, n), r):
            S = tuple(sorted(rest + (n,)))
            value = sum((w[i - 1] for i in S), Fraction(0)) - 1
            if value == 0:
                on_wall.append(S)
            signature[S] = -1 if value < 0 else (1 if value > 0 else 0)
    if on_wall:
        raise OnWall([Wall.canonical(n, S, 0) for S in on_wall])
    return signature


@dataclass(frozen=True)
class BirationalStep:
    """One wall-crossing: a point blow-up or a flip P^{r-1} -> P^{n-r-4}.

    index_set holds original labels, always including the label sorted last.
    inserted_dim = -1 marks a pure blow-down (empty replacement locus).
    """

    kind: str  # "BlowUpPoint" or "Flip"
    index_set: tuple
    removed_dim: int = 0
    inserted_dim: int = 0

    @property
    def is_pure_blowdown(self) -> bool:
        return self.kind == "Flip" and self.inserted_dim == -1

    def to_json(self) -> dict:
        data = {"kind": self.kind, "index_set": list(self.index_set)}
        if self.kind == "Flip":
            data["removed_dim"] = self.removed_dim
            data["inserted_dim"] = self.inserted_dim
            data["pure_blowdown"] = self.is_pure_blowdown
        return data


@dataclass
class ModuliDescription:
    """Birational description: start from P^{n-3}, apply the steps in order.

    poincare[j] is the coefficient of t^{2j} of the Poincare polynomial.
    """

    n: int
    steps: list = field(default_factory=list)
    poincare: list = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return sum(self.poincare)

    def is_palindromic(self) -> bool:
        return self.poincare == self.poincare[::-1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "start": f"P^{self.n - 3}",
            "steps": [s.to_json() for s in self.steps],
            "poincare": list(self.poincare),
        }


def _sorted_order(alpha: WeightVector) -> list:
    """Original labels sorted by ascending weight, ties by label."""
    return sorted(range(1, alpha.n + 1), key=lambda i: (alpha[i - 1], i))


def _apply_step(poincare: list, step: BirationalStep, n: int):
    if step.kind == "BlowUpPoint":
        # blow up a point: add t^2 + ... + t^(2(n-4))
        for j in range(1, n - 3):
            poincare[j] += 1
    else:
        r = step.removed_dim + 1
        for j in range(0, n - r - 3):
            poincare[j] += 1
        for j in range(0, r):
            poincare[j] -= 1


def _path_from_predicate(alpha: WeightVector, crosses) -> ModuliDescription:
    """Shared step enumeration; `crosses(I)` decides if the wall at the sorted
    subset I (labels, excluding the last one) is crossed on the way in."""
    n = alpha.n
    order = _sorted_order(alpha)
    last = order[-1]
    desc = ModuliDescription(n=n, poincare=[1] * (n - 2))
    for r in range(1, n - 2):
        for subset in itertools.combinations(order[:-1], r):
            if not crosses(subset):
                continue
            index_set = tuple(sorted(subset + (last,)))
            if r == 1:
                step = BirationalStep("BlowUpPoint", index_set)
            else:
                step = BirationalStep(
                    "Flip", index_set, removed_dim=r - 1, inserted_dim=n - r - 4
                )
            _apply_step(desc.poincare, step, n)
            desc.steps.append(step)
    return desc


def _check_path_preconditions(alpha: WeightVector):
    if alpha.total() > 1:
        raise NotSmallWeight(f"|alpha| = {alpha.total()} > 1")
    blocking = [w for w in walls_hit(alpha) if w.k == 0]
    if blocking:
        raise OnWall(blocking)


def wall_path(alpha: WeightVector) -> ModuliDescription:
    """Wall-crossing path from the distinguished chamber to alpha.

    Crosses the walls indexed by subsets I (together with the largest weight)
    with |alpha| - 2 sum_I alpha_i - 2 alpha_last > 0, in increasing |I|.

    Requires |alpha| <= 1 and alpha off every k = 0 wall.  (|alpha| = 1 is the
    k = 1 wall with empty index set; it never makes a step inequality vanish,
    so the path is still well-defined there.)
    """
    _check_path_preconditions(alpha)
    total = alpha.total()
    last = _sorted_order(alpha)[-1]

    def crosses(subset) -> bool:
        s = sum((alpha[i - 1] for i in subset), Fraction(0))
        return total - 2 * s - 2 * alpha[last - 1] > 0

    return _path_from_predicate(alpha, crosses)


def _wall_path_git(alpha: WeightVector) -> ModuliDescription:
    """Same path computed on the GIT side: w = 2a/|a|, cross when
    w_{i_1} + ... + w_{i_r} + w_last < 1."""
    _check_path_preconditions(alpha)
    w = alpha.normalized()
    last = _sorted_order(alpha)[-1]

    def crosses(subset) -> bool:
        s = sum((w[i - 1] for i in subset), Fraction(0))
        return s + w[last - 1] < 1

    return _path_from_predicate(alpha, crosses)


def compare_descriptions(alpha: WeightVector) -> bool:
    """Check that the parabolic-side and GIT-side paths agree step by step."""
    a = wall_path(alpha)
    b = _wall_path_git(alpha)
    return a.steps == b.steps and a.poincare == b.poincare


INFINITY = "inf"


def is_semistable(points, w) -> str:
    """Classify a configuration of points on the projective line.

    points: exact rationals or the string "inf"; w: weights with |w| = 2.
    Returns "stable", "strictly-semistable" or "unstable" according to the
    maximal coincidence mass (threshold 1).
    """
    w = [Fraction(v) for v in w]
    if len(points) != len(w):
        raise ValueError("point and weight counts differ")
    if sum(w, Fraction(0)) != 2:
        raise ValueError("weights must be normalized to |w| = 2")
    mass = {}
    for x, wi in zip(points, w):
        key = INFINITY if x == INFINITY else Fraction(x)
        mass[key] = mass.get(key, Fraction(0)) + wi
    worst = max(mass.values())
    if worst < 1:
        return "stable"
    if worst == 1:
        return "strictly-semistable"
    return "unstable"
