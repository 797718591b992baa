"""Numerical experiments on the non-wandering part of a level set.

On an elliptic slice (|z| < 2) the product Qy o Qx is a rotation by
``2 acos(z/2)``; Qz hops between slices whenever ``|zbar| < 2``. The
experiments here iterate those maps in floating point and summarize what
they visit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Character
from .errors import DegenerateSlice, OutOfRange
from .geometry import SliceKind, ellipse_angle, ellipse_point, interval_cover, rotation_angle, slice, zbar_extrema
from .reduction import TerminatorClass, tau_reduce

RENORMALIZE_EVERY = 10_000
DEFAULT_BINS = 200


@dataclass
class ErgodicReport:
    c: float
    z_or_slice: float | str
    iterations: int
    discrepancy: float
    zbar_coverage: float
    histogram: list[tuple[float, float, int]]
    seed: int | None
    variable: str = "zbar"
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {
            "c": self.c,
            "z": self.z_or_slice,
            "iterations": self.iterations,
            "discrepancy": None if math.isnan(self.discrepancy) else self.discrepancy,
            "coverage": self.zbar_coverage,
            "variable": self.variable,
            "seed": self.seed,
        }
        d.update(self.flags)
        return d


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def project_z(x: float, y: float, z: float, c: float) -> float:
    """Nearest root of ``z^2 + xy z - (x^2 + y^2 + 2 + c) = 0`` to ``z``."""
    p = x * y
    disc = p * p + 4 * (x * x + y * y + 2 + c)
    if disc < 0:
        return z
    r = math.sqrt(disc)
    z1, z2 = (-p + r) / 2, (-p - r) / 2
    return z1 if abs(z1 - z) <= abs(z2 - z) else z2


def _kappa(x, y, z):
    return -x * x - y * y + z * z + x * y * z - 2


def _elliptic_slice(c, z):
    s = slice(c, z)
    if s.kind is not SliceKind.ELLIPSE:
        raise DegenerateSlice(f"slice z = {z} of kappa = {c} is not an ellipse")
    return s


def rotation_orbit(c, z, theta0, n: int) -> np.ndarray:
    """``n + 1`` points of the orbit of ``ellipse_point(theta0)`` under Qy o Qx."""
    s = _elliptic_slice(c, z)
    z = s.z
    x, y = ellipse_point(s, theta0)
    out = np.empty((n + 1, 2))
    out[0] = x, y
    for k in range(1, n + 1):
        x = y * z - x
        y = x * z - y
        out[k] = x, y
    return out


def orbit_angles(c, z, points: np.ndarray) -> np.ndarray:
    s = _elliptic_slice(c, z)
    return np.array([ellipse_angle(s, x, y) for x, y in points])


def orbit_period(c, z, theta0=0.3, max_period: int = 1000, atol: float = 1e-9) -> int | None:
    pts = rotation_orbit(c, z, theta0, max_period)
    scale = max(1.0, float(np.abs(pts[0]).max()))
    for k in range(1, max_period + 1):
        if np.abs(pts[k] - pts[0]).max() <= atol * scale:
            return k
    return None


def star_discrepancy(samples) -> float:
    """Star discrepancy of points in [0, 1)."""
    u = np.sort(np.asarray(samples, dtype=float))
    n = len(u)
    i = np.arange(1, n + 1)
    return float(max((i / n - u).max(), (u - (i - 1) / n).max()))


def _histogram(values, lo, hi, bins):
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    return counts, [(float(edges[k]), float(edges[k + 1]), int(counts[k])) for k in range(bins)]


def zbar_coverage(c, z, n: int, bins: int = DEFAULT_BINS, seed: int = 0) -> ErgodicReport:
    s = _elliptic_slice(c, z)
    rng = make_rng(seed)
    theta0 = float(rng.uniform(-math.pi, math.pi))
    pts = rotation_orbit(c, z, theta0, n)
    zb = -pts[:, 0] * pts[:, 1] - s.z
    lo, hi = zbar_extrema(s.c, s.z)
    counts, hist = _histogram(zb, lo, hi, bins)
    alpha = rotation_angle(s.z)
    frac = (theta0 / (2 * math.pi) + np.arange(n + 1) * (alpha / (2 * math.pi))) % 1.0
    return ErgodicReport(
        c=s.c,
        z_or_slice=s.z,
        iterations=n,
        discrepancy=star_discrepancy(frac),
        zbar_coverage=float((counts > 0).mean()),
        histogram=hist,
        seed=seed,
        variable="zbar",
        flags={
            "zbar_min": lo,
            "zbar_max": hi,
            "zbar_seen_min": float(zb.min()),
            "zbar_seen_max": float(zb.max()),
            "max_kappa_drift": float(np.abs(_kappa(pts[:, 0], pts[:, 1], s.z) - s.c).max()),
        },
    )


def slice_chain_walk(c, start: Character, n: int, seed: int = 0, bins: int = DEFAULT_BINS,
                     p_jump: float = 0.1, subsample: int = 200) -> ErgodicReport:
    """Random walk over elliptic slices.

    Each step either rotates (Qx then Qy) or, with probability ``p_jump`` and
    only when ``|zbar| < 2``, applies Qz to move to the slice at height zbar.
    The histogram records the height z of every visited point.
    """
    c = float(c)
    x, y, z = (float(v) for v in start.coords)
    if not -2 < z < 2:
        raise OutOfRange(f"walk must start on an elliptic slice, got z = {z}")
    rng = make_rng(seed)
    counts = [0] * bins
    scale = bins / 4.0
    jumps = 0
    omega_hits = 0
    max_drift = 0.0
    sample_every = max(1, n // subsample) if subsample else 0
    samples: list[Character] = []
    chunk = 1 << 16
    done = 0
    while done < n:
        m = min(chunk, n - done)
        coins = (rng.random(m) < p_jump).tolist()
        for k in range(m):
            zb = -x * y - z
            if coins[k] and -2 < zb < 2:
                z = zb
                jumps += 1
            else:
                x = y * z - x
                y = x * z - y
            b = int((z + 2) * scale)
            counts[b if b < bins else bins - 1] += 1
            if z < -2 and -x * y - z < -2:
                omega_hits += 1
            step = done + k + 1
            if step % RENORMALIZE_EVERY == 0:
                max_drift = max(max_drift, abs(_kappa(x, y, z) - c))
                z = project_z(x, y, z, c)
            if sample_every and step % sample_every == 0:
                samples.append(Character(x, y, z))
        done += m
    max_drift = max(max_drift, abs(_kappa(x, y, z) - c))
    edges = np.linspace(-2, 2, bins + 1)
    hist = [(float(edges[k]), float(edges[k + 1]), counts[k]) for k in range(bins)]
    visited = [k for k in range(bins) if counts[k]]
    classes = [tau_reduce(v).cls for v in samples]
    flags = {
        "jumps": jumps,
        "escaped": jumps > 0,
        "omega_hits": omega_hits,
        "subsample_fricke": sum(cl is TerminatorClass.FRICKE_M for cl in classes),
        "subsample_size": len(classes),
        "max_kappa_drift": max_drift,
    }
    if -14 < c < 2:
        cover = interval_cover(c)
        centers = [(edges[k] + edges[k + 1]) / 2 for k in visited]
        flags["meets_cover"] = all(any(iv.lo < w < iv.hi for w in centers) for iv in cover)
    return ErgodicReport(
        c=c,
        z_or_slice="sweep",
        iterations=n,
        discrepancy=float("nan"),
        zbar_coverage=len(visited) / bins,
        histogram=hist,
        seed=seed,
        variable="z",
        flags=flags,
    )


def elliptic_start(c, z, theta) -> Character:
    s = _elliptic_slice(c, z)
    x, y = ellipse_point(s, theta)
    return Character(x, y, s.z)


def markoff_root(x: float, y: float) -> float | None:
    """Smaller-magnitude z with ``-x^2 - y^2 + z^2 + xyz = 0``."""
    p = x * y
    r = math.sqrt(p * p + 4 * (x * x + y * y))
    z1, z2 = (-p + r) / 2, (-p - r) / 2
    return z1 if abs(z1) <= abs(z2) else z2


def _surface_cells(radius: float, grid: int, density: int = 400) -> set[tuple[int, int, int]]:
    cells = set()
    h = 2 * radius / grid
    ts = np.linspace(-radius, radius, density)
    for x in ts:
        for y in ts:
            p = x * y
            r = math.sqrt(p * p + 4 * (x * x + y * y))
            for z in ((-p + r) / 2, (-p - r) / 2):
                if x * x + y * y + z * z < radius * radius:
                    cells.add((int((x + radius) / h), int((y + radius) / h), int((z + radius) / h)))
    return cells


def markoff_probe(radius: float, n: int, seed: int = 0, grid: int = 16) -> ErgodicReport:
    """Random reduced reflection words on ``kappa = -2`` inside a ball.

    Moves that would leave the ball, or push a coordinate past 2, are
    rejected and counted as escapes. Coverage is the fraction of grid cells
    meeting the surface inside the ball that the walk has visited.
    """
    if not radius > 0:
        raise OutOfRange("radius must be positive")
    rng = make_rng(seed)
    r2 = radius * radius
    while True:
        x, y = rng.uniform(-radius, radius, 2)
        z = markoff_root(x, y)
        if x * x + y * y + z * z < r2:
            break
    x, y, z = float(x), float(y), float(z)
    h = 2 * radius / grid
    visited = set()
    escapes = 0
    last = -1
    picks = rng.integers(0, 2, n).tolist()
    for k in range(n):
        g = (last + 1 + picks[k]) % 3 if last >= 0 else picks[k]
        if g == 0:
            nx, ny, nz = y * z - x, y, z
        elif g == 1:
            nx, ny, nz = x, x * z - y, z
        else:
            nx, ny, nz = x, y, -x * y - z
        if nx * nx + ny * ny + nz * nz >= r2 or max(abs(nx), abs(ny), abs(nz)) > 2:
            escapes += 1
        else:
            x, y, z = nx, ny, nz
        last = g
        visited.add((int((x + radius) / h), int((y + radius) / h), int((z + radius) / h)))
    cells = _surface_cells(radius, grid)
    return ErgodicReport(
        c=-2.0,
        z_or_slice="ball",
        iterations=n,
        discrepancy=float("nan"),
        zbar_coverage=len(visited & cells) / max(1, len(cells)),
        histogram=[],
        seed=seed,
        variable="cells",
        flags={"escapes": escapes, "surface_cells": len(cells), "visited_cells": len(visited)},
    )
