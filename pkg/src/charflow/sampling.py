"""Float samplers for named regions of the C11 level set kappa = c."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .core import Character
from .errors import EmptyRegion
from .geometry import Branch, SliceKind, ellipse_point, hyperbola_point, slice


class Region(str, Enum):
    OMEGA_M = "omegaM"
    OMEGA_K = "omegaK"
    ELLIPTIC = "E"
    HYPERBOLIC = "H"


MAX_ROUNDS = 2000


def _z_roots(x, y, c):
    """Both roots of ``z^2 + xy z - (x^2 + y^2 + 2 + c) = 0`` (NaN if complex)."""
    p = x * y
    q = x * x + y * y + 2 + c
    disc = p * p + 4 * q
    r = np.sqrt(np.where(disc >= 0, disc, np.nan))
    # cancellation-free pair: the large root directly, the small one via the product
    big = -(p + np.copysign(r, p)) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0, -q / big, 0.0)
    return big, small


def sample_omega_M(c, n, rng: np.random.Generator) -> list[Character]:
    """Points with ``z < -2`` and ``zbar < -2``.

    With ``s = x + y`` and ``p = xy`` both roots lie below -2 exactly when
    ``p > 4`` and ``s^2 < 2 - c`` (plus a real discriminant), so candidates
    are drawn in (s, x - y) and both roots are kept in play.
    """
    c = float(c)
    if not c < -14:
        raise EmptyRegion(f"the Moebius domain meets kappa = {c} only for c < -14")
    s_max = math.sqrt(2 - c)
    d_max = math.sqrt(s_max * s_max - 16)
    out: list[Character] = []
    for _ in range(MAX_ROUNDS):
        m = max(64, 4 * (n - len(out)))
        s = rng.uniform(4, s_max, m)
        d = rng.uniform(-d_max, d_max, m)
        x, y = (s + d) / 2, (s - d) / 2
        flip = rng.random(m) < 0.5
        x, y = np.where(flip, -x, x), np.where(flip, -y, y)
        z1, z2 = _z_roots(x, y, c)
        z = np.where(rng.random(m) < 0.5, z1, z2)
        zb = -x * y - z
        ok = (z < -2) & (zb < -2) & np.isfinite(z)
        for xi, yi, zi in zip(x[ok], y[ok], z[ok]):
            out.append(Character(float(xi), float(yi), float(zi)))
            if len(out) == n:
                return out
    raise EmptyRegion(f"no Moebius-domain points found on kappa = {c}")


def sample_omega_K(c, n, rng: np.random.Generator) -> list[Character]:
    """Points with ``x^2 + y^2 - xyz + 4 < 0``; these need kappa > 6 and
    approach it only for large |x|, |y|, so magnitudes are log-uniform."""
    c = float(c)
    if not c > 6:
        raise EmptyRegion(f"the Klein domain meets kappa = {c} only for c > 6")
    out: list[Character] = []
    for _ in range(MAX_ROUNDS):
        m = max(256, 8 * (n - len(out)))
        mag = np.exp(rng.uniform(-1, 8, (2, m)))
        sgn = np.where(rng.random((2, m)) < 0.5, -1.0, 1.0)
        x, y = mag * sgn
        z1, z2 = _z_roots(x, y, c)
        z = np.where(rng.random(m) < 0.5, z1, z2)
        ok = np.isfinite(z) & (x * x + y * y - x * y * z + 4 < 0)
        for xi, yi, zi in zip(x[ok], y[ok], z[ok]):
            out.append(Character(float(xi), float(yi), float(zi)))
            if len(out) == n:
                return out
    raise EmptyRegion(f"no Klein-domain points found on kappa = {c}")


def sample_elliptic(c, n, rng: np.random.Generator) -> list[Character]:
    """Points with ``|zbar| < 2``: a point on an elliptic slice, moved by Qz."""
    c = float(c)
    if not c < 2:
        raise EmptyRegion(f"kappa = {c} has no elliptic slices (needs c < 2)")
    out: list[Character] = []
    while len(out) < n:
        w = float(rng.uniform(-2, 2))
        s = slice(c, w)
        if s.kind is not SliceKind.ELLIPSE:
            continue
        x, y = ellipse_point(s, float(rng.uniform(0, 2 * math.pi)))
        out.append(Character(x, y, -x * y - w))
    return out


def sample_hyperbolic(c, n, rng: np.random.Generator, z_max: float = 12.0, t_max: float = 3.0) -> list[Character]:
    """Points with ``|z| > 2`` and ``|zbar| > 2`` outside the Moebius domain."""
    c = float(c)
    out: list[Character] = []
    for _ in range(MAX_ROUNDS * 50):
        z = float(rng.uniform(2, z_max)) * (1 if rng.random() < 0.5 else -1)
        s = slice(c, z)
        if s.kind is not SliceKind.HYPERBOLA:
            continue
        branch = Branch.PLUS if rng.random() < 0.5 else Branch.MINUS
        x, y = hyperbola_point(s, float(rng.uniform(-t_max, t_max)), branch)
        zb = -x * y - z
        if abs(zb) > 2 and not (z < -2 and zb < -2):
            out.append(Character(x, y, z))
            if len(out) == n:
                return out
    raise EmptyRegion(f"no hyperbolic-region points found on kappa = {c}")


def sample_region(c, region: Region | str, n: int, rng: np.random.Generator) -> list[Character]:
    region = Region(region)
    if region is Region.OMEGA_M:
        return sample_omega_M(c, n, rng)
    if region is Region.OMEGA_K:
        return sample_omega_K(c, n, rng)
    if region is Region.ELLIPTIC:
        return sample_elliptic(c, n, rng)
    return sample_hyperbolic(c, n, rng)
