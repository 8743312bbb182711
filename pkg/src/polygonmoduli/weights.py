"""Exact rational stability parameters."""

from __future__ import annotations

from fractions import Fraction


class WeightVector:
    """A weight vector alpha in (0, 1/2)^n, stored as exact rationals."""

    __slots__ = ("alpha",)

    def __init__(self, alpha):
        alpha = tuple(Fraction(a) for a in alpha)
        if len(alpha) < 3:
            raise ValueError("need at least 3 weights")
        for a in alpha:
            if not 0 < a < Fraction(1, 2):
                raise ValueError(f"weight {a} outside (0, 1/2)")
        self.alpha = alpha

    @property
    def n(self) -> int:
        return len(self.alpha)

    def total(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def normalized(self) -> tuple:
        """GIT normalization w = 2*alpha/|alpha|, so that |w| = 2 exactly."""
        s = self.total()
        return tuple(2 * a / s for a in self.alpha)

    def floats(self):
        return [float(a) for a in self.alpha]

    def __getitem__(self, i):
        return self.alpha[i]

    def __iter__(self):
        return iter(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self.alpha == other.alpha

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return "WeightVector(%s)" % ",".join(str(a) for a in self.alpha)


def parse_rational_list(text: str) -> list:
    """Parse comma-separated exact rationals with "p/q x m" repetition shorthand.

    Examples: "1/5,1/5,1/5,1/5,1/5" or "1/5x5" (also spelled "1/5*5").
    Floats are rejected; wall logic is equality-sensitive.
    """
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        rep = 1
        for sep in ("x", "*"):
            if sep in part:
                part, count = part.split(sep)
                rep = int(count)
                break
        if "." in part or "e" in part.lower():
            raise ValueError(f"weights must be exact rationals p/q, got {part!r}")
        value = Fraction(part)
        out.extend([value] * rep)
    return out
