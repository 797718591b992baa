"""Conic z-slices of the C11 level set kappa = c.

Fixing z turns kappa = c into the conic ``x^2 + y^2 - z*x*y = R`` with
``R = z^2 - c - 2``. In the rotated frame ``xt = (y - x)/sqrt2``,
``yt = (x + y)/sqrt2`` this reads

    xt^2 (2 + z) / (2R) + yt^2 (2 - z) / (2R) = 1,

an ellipse for |z| < 2 and a hyperbola for |z| > 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import Character, Component, tau
from .errors import (
    ComponentMismatch,
    CoverFailure,
    DegenerateSlice,
    KindMismatch,
    NotHyperbolicSlice,
    OutOfRange,
)
from .numeric import DEFAULT_TOLERANCE, Tolerance

SQRT_HALF = math.sqrt(0.5)


class SliceKind(str, Enum):
    HYPERBOLA = "hyperbola"
    ELLIPSE = "ellipse"
    DEGENERATE = "degenerate"


class Branch(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


class PointType(str, Enum):
    PP = "PP"
    PM = "PM"
    MP = "MP"
    # both tau differences negative; cannot happen for c < 2
    MM = "MM"
    ZERO = "Zero"


@dataclass(frozen=True)
class ConicSlice:
    """``a, b`` are the hyperbola semi-axes (or ellipse ``A, B``) along the
    rotated axes ``xt`` and ``yt``; both are ``None`` for degenerate slices."""

    c: float
    z: float
    kind: SliceKind
    a: float | None = None
    b: float | None = None

    @property
    def R(self) -> float:
        return self.z * self.z - self.c - 2


def slice(c, z) -> ConicSlice:
    c, z = float(c), float(z)
    r = z * z - c - 2
    if r <= 0 or abs(z) == 2:
        return ConicSlice(c, z, SliceKind.DEGENERATE)
    a = math.sqrt(2 * r / abs(z + 2))
    b = math.sqrt(2 * r / abs(z - 2))
    kind = SliceKind.HYPERBOLA if abs(z) > 2 else SliceKind.ELLIPSE
    return ConicSlice(c, z, kind, a, b)


def hyperbola_point(s: ConicSlice, t, branch: Branch | str = Branch.PLUS) -> tuple[float, float]:
    if s.kind is not SliceKind.HYPERBOLA:
        raise KindMismatch(f"expected a hyperbola slice, got {s.kind.value}")
    sign = 1.0 if Branch(branch) is Branch.PLUS else -1.0
    ch, sh = math.cosh(t), math.sinh(t)
    if s.z < -2:
        x = SQRT_HALF * (-s.a * sh + sign * s.b * ch)
        y = SQRT_HALF * (s.a * sh + sign * s.b * ch)
    else:
        x = SQRT_HALF * (-sign * s.a * ch + s.b * sh)
        y = SQRT_HALF * (sign * s.a * ch + s.b * sh)
    return x, y


def ellipse_point(s: ConicSlice, theta) -> tuple[float, float]:
    if s.kind is not SliceKind.ELLIPSE:
        raise KindMismatch(f"expected an ellipse slice, got {s.kind.value}")
    ca, sb = s.a * math.cos(theta), s.b * math.sin(theta)
    return SQRT_HALF * (-ca + sb), SQRT_HALF * (ca + sb)


def ellipse_angle(s: ConicSlice, x, y) -> float:
    """Inverse of ``ellipse_point``; returns theta in (-pi, pi]."""
    if s.kind is not SliceKind.ELLIPSE:
        raise KindMismatch(f"expected an ellipse slice, got {s.kind.value}")
    return math.atan2((x + y) * SQRT_HALF / s.b, (y - x) * SQRT_HALF / s.a)


def tau_differences(u: Character):
    """``tau(Qx u) - tau(u)`` and ``tau(Qy u) - tau(u)`` in factored form."""
    x, y, z, _ = u
    return y * z * (y * z - 2 * x), x * z * (x * z - 2 * y)


def point_type(u: Character, tol: Tolerance = DEFAULT_TOLERANCE) -> PointType:
    if u.component is not Component.C11:
        raise ComponentMismatch("point types are defined on component 11")
    if not abs(u.z) > 2:
        raise NotHyperbolicSlice(f"|z| = {abs(float(u.z))} is not > 2")
    dx, dy = tau_differences(u)
    if isinstance(dx, float):
        if abs(dx) <= tol.eps_eq or abs(dy) <= tol.eps_eq:
            return PointType.ZERO
    elif dx == 0 or dy == 0:
        return PointType.ZERO
    if dx > 0:
        return PointType.PP if dy > 0 else PointType.PM
    return PointType.MP if dy > 0 else PointType.MM


def point_type_by_region(x, y, z) -> PointType:
    """Cone/quadrant description of the point types on a hyperbolic slice.

    Points in the two quadrants avoided by the asymptotes are PP. Of the
    other two quadrants, the part with |y| > |x| is PM and |y| < |x| is MP.
    """
    if x == 0 or y == 0:
        return PointType.ZERO
    if x * y * z < 0:
        return PointType.PP
    if abs(y) > abs(x):
        return PointType.PM
    if abs(y) < abs(x):
        return PointType.MP
    return PointType.ZERO


def zbar_extrema(c, z):
    """Range of zbar over the elliptic slice at height z."""
    if not -2 < z < 2:
        raise DegenerateSlice(f"z = {z} does not give an elliptic slice")
    if z * z - c - 2 <= 0:
        raise DegenerateSlice(f"slice z = {z} of kappa = {c} is empty or a point")
    return 2 + (c - 2) / (2 - z), -2 - (c - 2) / (2 + z)


def rotation_angle(z) -> float:
    """Angle of the rotation Qy o Qx on an elliptic slice, in (0, 2pi)."""
    if not -2 < z < 2:
        raise OutOfRange(f"rotation angle needs -2 < z < 2, got {z}")
    return 2 * math.acos(float(z) / 2)


def asymptote_slopes(z) -> tuple[float, float]:
    z = float(z)
    if abs(z) <= 2:
        raise NotHyperbolicSlice(f"|z| = {abs(z)} is not > 2")
    d = math.sqrt(z * z - 4)
    return (z - d) / 2, (z + d) / 2


def axis_intersections(s: ConicSlice) -> dict[str, tuple[float, float] | None]:
    """Where the slice meets the diagonals ``x = y`` and ``x = -y``; each entry
    is one intersection point or ``None``."""
    if s.kind is SliceKind.DEGENERATE:
        raise DegenerateSlice("degenerate slice")
    r = s.R
    out: dict[str, tuple[float, float] | None] = {"x=y": None, "x=-y": None}
    if 2 - s.z > 0:
        t = math.sqrt(r / (2 - s.z))
        out["x=y"] = (t, t)
    if 2 + s.z > 0:
        t = math.sqrt(r / (2 + s.z))
        out["x=-y"] = (t, -t)
    return out


@dataclass(frozen=True)
class CoverInterval:
    z: float
    lo: float
    hi: float

    def __contains__(self, w) -> bool:
        return self.lo < w < self.hi


def cover_target(c, margin: float = 1e-3) -> list[tuple[float, float]]:
    """Part of (-2, 2) the cover has to reach.

    For c >= -2 the slices with z^2 <= c + 2 are empty, so zbar never enters
    [-s, s] with s = sqrt(c + 2); the target stops ``margin`` short of +-s.
    """
    c = float(c)
    if c < -2:
        return [(-2.0, 2.0)]
    s = math.sqrt(c + 2)
    return [(-2.0, -s - margin), (s + margin, 2.0)]


def interval_cover(c, margin: float = 1e-3, eta: float = 1e-9, max_intervals: int = 100000) -> list[CoverInterval]:
    """Finite chain of overlapping intervals I(z_n) = (zbar_min, zbar_max) & (-2, 2).

    The chain starts at z = 0 when that slice exists (c < -2) and otherwise
    at the inner edge of the target. Each new slice is the one of largest
    reach whose interval still overlaps the current frontier. The chain is
    symmetric under z -> -z.
    """
    c = float(c)
    if c >= 2:
        raise CoverFailure(f"no elliptic slices cover (-2, 2) for c = {c} >= 2")

    def lo(z):
        return 2 + (c - 2) / (2 - z)

    def hi(z):
        return -2 - (c - 2) / (2 + z)

    s = math.sqrt(c + 2) if c >= -2 else None
    right: list[CoverInterval] = []
    if s is None:
        right.append(CoverInterval(0.0, max(lo(0.0), -2.0), min(hi(0.0), 2.0)))
        frontier = right[0].hi
    else:
        frontier = s + margin
    while frontier < 2:
        if len(right) >= max_intervals:
            raise CoverFailure(f"cover did not close after {max_intervals} intervals")
        # smallest z whose interval still starts strictly below the frontier
        z_star = 2 - (2 - c) / (2 - frontier)
        z = z_star + max(eta, 1e-9 * abs(z_star))
        # slices with z <= z_final already reach 2; take the tightest one
        z_final = (-c - 6) / 4
        if z_final > z_star:
            z = z_final
        upper = 0.0 if s is None else -s
        z = max(z, -2 + eta)
        if not z < upper:
            raise CoverFailure(f"cover stalled at frontier {frontier}")
        new = CoverInterval(z, max(lo(z), -2.0), min(hi(z), 2.0))
        if not new.hi > frontier or not new.lo < frontier:
            raise CoverFailure(f"cover stalled at frontier {frontier}")
        right.append(new)
        frontier = new.hi
    left = [CoverInterval(-iv.z, -iv.hi, -iv.lo) for iv in right if iv.z != 0.0]
    return sorted(left + right, key=lambda iv: iv.lo)


def cover_contains(cover: list[CoverInterval], w: float) -> bool:
    return any(w in iv for iv in cover)


def slice_rows(s: ConicSlice, params, branch: Branch | str = Branch.PLUS) -> list[tuple]:
    """Sample rows ``(param, x, y, z, zbar, tau, kappa_residual)``."""
    rows = []
    for p in params:
        if s.kind is SliceKind.ELLIPSE:
            x, y = ellipse_point(s, p)
        else:
            x, y = hyperbola_point(s, p, branch)
        z = s.z
        zb = -x * y - z
        kappa = -x * x - y * y + z * z + x * y * z - 2
        rows.append((p, x, y, z, zb, tau(Character(x, y, z)), kappa - s.c))
    return rows
