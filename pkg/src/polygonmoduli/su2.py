"""Unit-quaternion model of SU(2) and its Lie algebra.

Lie-algebra 3-vectors are kept in "alcove units": a vector v with |v| = a
exponentiates to a group element of class angle a, where the class angle of g
is arccos(trace(g)/2) / (2*pi) and lives in [0, 1/2].  With this scaling the
weight parameters of the rest of the library are literal vector lengths.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateAxis

_TWO_PI = 2.0 * np.pi


class SU2:
    """A unit quaternion (w, x, y, z); renormalized after every operation."""

    __slots__ = ("q",)

    def __init__(self, w, x=None, y=None, z=None):
        if x is None:
            q = np.asarray(w, dtype=float)
        else:
            q = np.array([w, x, y, z], dtype=float)
        norm = float(np.linalg.norm(q))
        if norm == 0.0:
            raise ValueError("zero quaternion is not a group element")
        self.q = q / norm

    @property
    def w(self):
        return float(self.q[0])

    @property
    def vec(self):
        return self.q[1:].copy()

    def trace(self):
        return 2.0 * self.w

    def __mul__(self, other: "SU2") -> "SU2":
        w1, x1, y1, z1 = self.q
        w2, x2, y2, z2 = other.q
        return SU2(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def inverse(self) -> "SU2":
        w, x, y, z = self.q
        return SU2(w, -x, -y, -z)

    def distance(self, other: "SU2") -> float:
        """Plain quaternion distance; g and -g are distinct group elements."""
        return float(np.linalg.norm(self.q - other.q))

    def is_identity(self, tol=1e-9) -> bool:
        return self.distance(identity()) <= tol

    def __repr__(self):
        w, x, y, z = self.q
        return f"SU2({w:.6g}, {x:.6g}, {y:.6g}, {z:.6g})"


def identity() -> SU2:
    return SU2(1.0, 0.0, 0.0, 0.0)


def exp_su2(v) -> SU2:
    """exp(v) = (cos(2*pi*|v|), sin(2*pi*|v|) * v/|v|)."""
    v = np.asarray(v, dtype=float)
    r = float(np.linalg.norm(v))
    if r == 0.0:
        return identity()
    phase = _TWO_PI * r
    s = np.sin(phase) / r
    return SU2(np.cos(phase), s * v[0], s * v[1], s * v[2])


def log_su2(g: SU2) -> np.ndarray:
    """Inverse of exp_su2 on the alcove branch |v| in [0, 1/2].

    Raises DegenerateAxis near trace = -2, where the axis is undefined.
    """
    w = float(np.clip(g.w, -1.0, 1.0))
    if g.trace() <= -2.0 + 1e-9:
        raise DegenerateAxis("log undefined at trace = -2")
    a = np.arccos(w) / _TWO_PI
    vec = g.vec
    s = float(np.linalg.norm(vec))
    if s < 1e-15:
        return np.zeros(3)
    return (a / s) * vec


def angle(g: SU2) -> float:
    """Class angle arccos(trace/2)/(2*pi), in [0, 1/2]; conjugation-invariant."""
    return float(np.arccos(np.clip(g.w, -1.0, 1.0)) / _TWO_PI)


def axis(g: SU2) -> np.ndarray:
    """Unit rotation axis of g; raises DegenerateAxis when undefined."""
    vec = g.vec
    s = float(np.linalg.norm(vec))
    if s < 1e-12:
        if g.w < 0.0:
            raise DegenerateAxis("axis undefined at -identity")
        raise DegenerateAxis("axis undefined at identity")
    return vec / s


def sample_class(alpha: float, rng) -> SU2:
    """Random element of the conjugacy class with class angle alpha.

    The axis is uniform on the 2-sphere; alpha = 0 gives the identity.
    """
    if not 0.0 <= alpha <= 0.5:
        raise ValueError("class angle must lie in [0, 1/2]")
    if alpha == 0.0:
        return identity()
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    return exp_su2(alpha * n)


def conjugate(g: SU2, h: SU2) -> SU2:
    """h g h^-1."""
    return h * g * h.inverse()


def adjoint(g: SU2, v) -> np.ndarray:
    """Rotate the 3-vector v by g (quaternion sandwich g (0,v) g^-1)."""
    v = np.asarray(v, dtype=float)
    w = g.w
    u = g.q[1:]
    # Expanded sandwich product; avoids building pure quaternions.
    return (w * w - u @ u) * v + 2.0 * (u @ v) * u + 2.0 * w * np.cross(u, v)


def rotation_about(axis_unit, angle_rad: float) -> SU2:
    """Group element whose adjoint action rotates R^3 by angle_rad about axis_unit."""
    axis_unit = np.asarray(axis_unit, dtype=float)
    axis_unit = axis_unit / np.linalg.norm(axis_unit)
    half = 0.5 * angle_rad
    s = np.sin(half)
    return SU2(np.cos(half), s * axis_unit[0], s * axis_unit[1], s * axis_unit[2])


def rotation_between(a, b) -> SU2:
    """Group element rotating unit vector a onto unit vector b (adjoint action)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    c = float(a @ b)
    if c > 1.0 - 1e-14:
        return identity()
    if c < -1.0 + 1e-14:
        # 180-degree turn about any axis orthogonal to a.
        helper = np.array([1.0, 0.0, 0.0])
        if abs(a[0]) > 0.9:
            helper = np.array([0.0, 1.0, 0.0])
        perp = np.cross(a, helper)
        return rotation_about(perp, np.pi)
    ax = np.cross(a, b)
    return rotation_about(ax, np.arccos(np.clip(c, -1.0, 1.0)))
