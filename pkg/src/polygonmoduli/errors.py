"""Exception hierarchy shared by all modules."""


class PolygonModuliError(Exception):
    """Base class for all library errors."""


class DegenerateAxis(PolygonModuliError):
    """Group element has trace -2; its rotation axis is undefined."""


class DegenerateDiagonal(PolygonModuliError):
    """A diagonal has (numerically) zero length, so its bending axis is undefined."""


class DegenerateTriangle(PolygonModuliError):
    """A triangle inequality is tight within tolerance; the build is singular there."""


class OutsidePolytope(PolygonModuliError):
    """Requested action values lie outside the moment polytope."""


class EmptyPolytope(PolygonModuliError):
    """The moment polytope has no interior; sampling cannot proceed."""


class NotRealizable(PolygonModuliError):
    """An SU(2) triangle inequality fails; no holonomy solution exists."""


class OnWall(PolygonModuliError):
    """The stability parameter lies on one or more walls."""

    def __init__(self, walls):
        self.walls = list(walls)
        super().__init__(f"parameter lies on {len(self.walls)} wall(s): {self.walls}")


class NotSmallWeight(PolygonModuliError):
    """Wall-crossing path requires total weight < 1."""


class LimitExceeded(PolygonModuliError):
    """Combinatorial enumeration size guard tripped."""


class DimTooLarge(PolygonModuliError):
    """Exact geometry routine called above its supported dimension."""
