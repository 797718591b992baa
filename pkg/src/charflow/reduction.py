"""tau-reduction: descend the orbit of a C11 character by decreasing tau.

Each pass of the loop applies whichever of Qx, Qy lowers ``tau = -z*zbar``
(Qx first), or Qz otherwise. Qz and the sign changes leave tau fixed. The
loop stops when ``|zbar| <= 2`` or when one of the early exits fires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import Character, Component, kappa, sign_change, normalize_signs, tau, zbar
from .errors import ComponentMismatch, OutOfRange, PreconditionViolated
from .geometry import tau_differences
from .group import Generator, GroupWord, apply
from .numeric import (
    DEFAULT_TOLERANCE,
    Tolerance,
    format_scalar,
    is_zero,
    strictly_greater,
    strictly_less,
)

DEFAULT_MAX_STEPS = 10**6


class TerminatorClass(str, Enum):
    FRICKE_M = "fricke_M"
    ELLIPTIC_E = "elliptic_E"
    SIGMA_ZERO = "sigma_zero"
    # |zbar| == 2 at exit: on the boundary of the elliptic region
    PARABOLIC = "parabolic"
    ITERATION_CAP = "iteration_cap"


@dataclass(frozen=True)
class Step:
    letter: Generator
    point: Character
    tau: object


@dataclass
class ReductionTrace:
    input: Character
    steps: list[Step]
    terminator: Character
    cls: TerminatorClass
    word: GroupWord
    kappa: object
    supported: bool = True
    stalled: bool = False

    @property
    def points(self) -> list[Character]:
        return [self.input] + [s.point for s in self.steps]

    def summary(self) -> dict:
        from .core import character_to_json

        return {
            "class": self.cls.value,
            "kappa": format_scalar(self.kappa),
            "word": str(self.word),
            "terminator": character_to_json(self.terminator),
            "steps": len(self.steps),
            "supported": self.supported,
            "stalled": self.stalled,
        }

    def rows(self) -> list[tuple]:
        """CSV rows ``(step, letter, x, y, z, zbar, tau)``; row 0 is the input."""
        out = [(0, "", *self.input.coords, zbar(self.input), tau(self.input))]
        for i, s in enumerate(self.steps, start=1):
            out.append((i, s.letter.value, *s.point.coords, zbar(s.point), s.tau))
        return out


def _finish(u0, steps, cls, c, **flags) -> ReductionTrace:
    terminator = steps[-1].point if steps else u0
    word = GroupWord(tuple(s.letter for s in steps))
    return ReductionTrace(u0, steps, terminator, cls, word, c, supported=c < 2, **flags)


def tau_reduce(u: Character, tol: Tolerance = DEFAULT_TOLERANCE, max_steps: int = DEFAULT_MAX_STEPS) -> ReductionTrace:
    if u.component is not Component.C11:
        raise ComponentMismatch("tau_reduce works on component 11; transpose first")
    c = kappa(u)
    u0 = u
    steps: list[Step] = []

    def push(g: Generator, v: Character) -> Character:
        steps.append(Step(g, v, tau(v)))
        return v

    # a start in -2 < z < 2 is one Qz away from the elliptic region
    if strictly_less(-2, u.z, tol) and strictly_less(u.z, 2, tol):
        push(Generator.Qz, apply(Generator.Qz, u))
        return _finish(u0, steps, TerminatorClass.ELLIPTIC_E, c)

    last = None
    for _ in range(max_steps):
        x, y, z, _comp = u
        zb = -x * y - z
        if not strictly_greater(abs(zb), 2, tol):
            if strictly_less(abs(zb), 2, tol):
                return _finish(u0, steps, TerminatorClass.ELLIPTIC_E, c)
            return _finish(u0, steps, TerminatorClass.PARABOLIC, c)
        if is_zero(x, tol) or is_zero(y, tol):
            return _finish(u0, steps, TerminatorClass.SIGMA_ZERO, c)
        if strictly_less(z, -2, tol) and strictly_less(zb, -2, tol):
            return _finish(u0, steps, TerminatorClass.FRICKE_M, c)
        if strictly_greater(z, 2, tol) and strictly_greater(zb, 2, tol):
            push(Generator.SigmaXZ, sign_change(u, "xz"))
            return _finish(u0, steps, TerminatorClass.FRICKE_M, c)
        dx, dy = tau_differences(u)
        if strictly_less(dx, 0, tol):
            g = Generator.Qx
        elif strictly_less(dy, 0, tol):
            g = Generator.Qy
        else:
            g = Generator.Qz
        if g is last:
            # two Qz in a row undo each other; only possible off the c < 2 range
            return _finish(u0, steps, TerminatorClass.ITERATION_CAP, c, stalled=True)
        u = push(g, apply(g, u))
        last = g
    return _finish(u0, steps, TerminatorClass.ITERATION_CAP, c)


def classify(u: Character, tol: Tolerance = DEFAULT_TOLERANCE, max_steps: int = DEFAULT_MAX_STEPS) -> ReductionTrace:
    """Normalize signs so that ``z <= 0``, then run tau_reduce.

    The returned trace starts at the original input and its word includes the
    normalizing sign change.
    """
    v, applied = normalize_signs(u)
    trace = tau_reduce(v, tol, max_steps)
    if not applied:
        return trace
    head = [Step(Generator.SigmaXZ, v, tau(v))]
    steps = head + trace.steps
    return ReductionTrace(u, steps, trace.terminator, trace.cls,
                          GroupWord(tuple(s.letter for s in steps)), trace.kappa,
                          trace.supported, trace.stalled)


def _check_growth_hypotheses(u: Character):
    if u.component is not Component.C11:
        raise ComponentMismatch("growth bounds are stated on component 11")
    if not abs(u.z) > 2:
        raise PreconditionViolated("growth bound needs |z| > 2")
    c = kappa(u)
    if not c < 2:
        raise PreconditionViolated("growth bound needs kappa < 2")
    return float(c)


def growth_lower_bound(u: Character, g: Generator | str) -> float:
    """Lower bound on ``|tau(g u) - tau(u)|`` for g in {Qx, Qy} on a hyperbolic slice."""
    c = _check_growth_hypotheses(u)
    g = Generator(g)
    x, y, z = (float(v) for v in u.coords)
    other = {Generator.Qx: y, Generator.Qy: x}
    if g not in other:
        raise ValueError("growth bounds exist for Qx and Qy only")
    w = other[g]
    return abs(w * z) * max(abs(w) * math.sqrt(z * z - 4), 2 * math.sqrt(z * z - c - 2))


def growth_floor(u: Character, g: Generator | str, constant: float = 4.0) -> float:
    """z-free weakening ``constant * |y| * sqrt(2 - c)`` (|x| for Qy).

    Using |z| > 2 in ``growth_lower_bound`` gives this with constant 4.
    """
    c = _check_growth_hypotheses(u)
    g = Generator(g)
    w = float(u.y) if g is Generator.Qx else float(u.x)
    return constant * abs(w) * math.sqrt(2 - c)


def omega_coordinate_bounds(c) -> tuple[float, float]:
    """Band containing |x| and |y| for every Moebius-domain point on kappa = c."""
    c = float(c)
    if not c < -14:
        raise OutOfRange(f"the Moebius domain on kappa = {c} is empty (needs c < -14)")
    r = math.sqrt(-c - 6)
    return 4 / r, r


@dataclass(frozen=True)
class TerminalPlane:
    axis: str
    value: object
    entry_step: int


def detect_terminal_plane(trace: ReductionTrace) -> TerminalPlane | None:
    """Longest suffix of the reduction holding x (or y) fixed inside the
    strip ``|coord| < sqrt(2 - c)``. A trailing sign change is ignored."""
    points = trace.points
    if trace.steps and trace.steps[-1].letter is Generator.SigmaXZ:
        points = points[:-1]
    if len(points) < 2:
        return None
    c = float(trace.kappa)
    if not c < 2:
        return None
    width = math.sqrt(2 - c)
    best = None
    for axis, idx in (("X", 0), ("Y", 1)):
        value = points[-1][idx]
        k = len(points) - 1
        while k > 0 and points[k - 1][idx] == value:
            k -= 1
        if len(points) - k >= 2 and abs(float(value)) < width:
            if best is None or k < best.entry_step:
                best = TerminalPlane(axis, value, k)
    return best
