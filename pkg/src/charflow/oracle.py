"""Independent checks for the reduction pipeline.

``certify`` replays a reduction witness in exact arithmetic,
``classify_bruteforce`` searches the reflection orbit breadth-first without
looking at tau, and ``threshold_search`` locates the level where a base
Fricke domain stops meeting kappa = c by sampling and local optimization.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core import Character, kappa, zbar
from .errors import BackendMismatch, VerificationFailed
from .fricke import Surface
from .group import GroupWord, apply, apply_word, bfs_orbit
from .numeric import Backend, to_scalar
from .parallel import pmap
from .reduction import ReductionTrace, TerminatorClass, tau_reduce


@dataclass(frozen=True)
class Certificate:
    input: Character
    word: GroupWord
    terminator: Character
    cls: TerminatorClass
    verified: bool


def class_holds(cls: TerminatorClass, v: Character) -> bool:
    """Exact check of the defining inequality of a terminator class."""
    zb = zbar(v)
    if cls is TerminatorClass.FRICKE_M:
        return v.z < -2 and zb < -2
    if cls is TerminatorClass.ELLIPTIC_E:
        return -2 < zb < 2
    if cls is TerminatorClass.SIGMA_ZERO:
        return v.x == 0 or v.y == 0
    if cls is TerminatorClass.PARABOLIC:
        return abs(zb) == 2
    return False


def certify(trace: ReductionTrace) -> Certificate:
    u = trace.input
    if u.backend is not Backend.EXACT:
        raise BackendMismatch("certificates need an exact trace")
    c = kappa(u)
    letters = trace.word.letters
    if len(letters) != len(trace.steps):
        raise VerificationFailed("word length differs from the recorded steps",
                                 step=min(len(letters), len(trace.steps)) + 1)
    v = u
    for i, (g, step) in enumerate(zip(letters, trace.steps), start=1):
        v = apply(g, v)
        if v != step.point or kappa(v) != c:
            raise VerificationFailed(f"replay diverges at step {i}", step=i)
    if v != trace.terminator:
        raise VerificationFailed("replayed word does not reach the terminator", step=len(letters))
    if trace.cls is TerminatorClass.ITERATION_CAP:
        return Certificate(u, trace.word, v, trace.cls, False)
    if not class_holds(trace.cls, v):
        raise VerificationFailed(f"terminator fails the {trace.cls.value} inequalities")
    return Certificate(u, trace.word, v, trace.cls, True)


@dataclass(frozen=True)
class BruteForceResult:
    cls: TerminatorClass | None
    found_M: bool
    found_E: bool
    word_M: str | None
    word_E: str | None
    orbit_size: int


def bruteforce_search(u: Character, max_len: int) -> BruteForceResult:
    """Search all reduced reflection words up to ``max_len`` for a point of the
    Moebius domain (up to sigma_xz) or of the elliptic region."""
    orbit = bfs_orbit(u, max_len)
    word_m = word_e = None
    for word, v in orbit.items():
        zb = zbar(v)
        if word_m is None and ((v.z < -2 and zb < -2) or (v.z > 2 and zb > 2)):
            word_m = word
        if word_e is None and -2 < zb < 2:
            word_e = word
    cls = None
    if word_m is not None:
        cls = TerminatorClass.FRICKE_M
    elif word_e is not None:
        cls = TerminatorClass.ELLIPTIC_E
    return BruteForceResult(cls, word_m is not None, word_e is not None, word_m, word_e, len(orbit))


def classify_bruteforce(u: Character, max_len: int) -> TerminatorClass | None:
    return bruteforce_search(u, max_len).cls


# -- threshold search ------------------------------------------------------

def _roots(p, q):
    """Roots of ``z^2 + p z - q = 0`` without cancellation, or None if complex."""
    disc = p * p + 4 * q
    if disc < 0:
        return None
    big = -(p + math.copysign(math.sqrt(disc), p)) / 2
    return big, (-q / big if big else 0.0)


def _moebius_margin(xy, c):
    x, y = xy
    roots = _roots(x * y, x * x + y * y + 2 + c)
    if roots is None:
        return -1.0
    # both roots below -2 iff the larger one is; zbar is the other root
    return -2 - max(roots)


KLEIN_LOG_MAX = 7.0


def _klein_margin(logxy, c):
    # beyond e^7 float cancellation in x^2 + y^2 - xyz swamps the margin
    if max(logxy) > KLEIN_LOG_MAX:
        return -1.0
    x, y = math.exp(logxy[0]), math.exp(logxy[1])
    p = x * y
    roots = _roots(p, x * x + y * y + 2 + c)
    if roots is None:
        return -1.0
    best = -math.inf
    for z in roots:
        f = x * x + y * y - p * z + 4
        # scale-free margin so that far-out members are not swamped
        best = max(best, -f / (x * x + y * y))
    return best


def _margin_batch(surface, c, pts):
    x, y = pts
    if surface is Surface.KLEIN:
        x, y = np.exp(x), np.exp(y)
    p = x * y
    q = x * x + y * y + 2 + c
    disc = p * p + 4 * q
    r = np.sqrt(np.where(disc >= 0, disc, np.nan))
    big = -(p + np.copysign(r, p)) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0, -q / big, 0.0)
    if surface is Surface.MOEBIUS:
        m = -2 - np.maximum(big, small)
    else:
        f1 = x * x + y * y - p * big + 4
        f2 = x * x + y * y - p * small + 4
        m = -np.minimum(f1, f2) / (x * x + y * y)
    return np.where(np.isfinite(m), m, -np.inf)


def has_member(surface: Surface | str, c, grid: int, rng: np.random.Generator, starts: int = 8) -> bool:
    """Look for a base-domain point on kappa = c: random sampling of (x, y),
    then Nelder-Mead on the inequality margin from the best samples.

    For the Klein domain only x, y > 0 is searched (in log coordinates):
    sign changes preserve kappa and the defining inequality, and any member
    can be moved to x, y > 0 by one of them.
    """
    surface = Surface(surface)
    c = float(c)
    if surface is Surface.MOEBIUS:
        pts = rng.uniform(-8, 8, (2, grid))
        pts[:, : grid // 2] = np.abs(pts[:, : grid // 2])
        fn = _moebius_margin
    else:
        pts = rng.uniform(-1, 6, (2, grid))
        fn = _klein_margin
    m = _margin_batch(surface, c, pts)
    if np.nanmax(m) > 0:
        return True
    order = np.argsort(-m)[:starts]
    for k in order:
        x0 = pts[:, k]
        res = minimize(lambda v: -fn(v, c), x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000})
        if -res.fun > 0:
            return True
    return False


def threshold_search(surface: Surface | str, c_lo, c_hi, grid: int = 100_000, seed: int = 0,
                     iterations: int = 14) -> float | None:
    """Bisect for the level where members appear or disappear.

    Returns ``None`` when neither end (or both ends) of the bracket has
    members, i.e. no crossing is visible in ``[c_lo, c_hi]``.
    """
    surface = Surface(surface)
    rng = np.random.Generator(np.random.PCG64(seed))
    lo, hi = float(c_lo), float(c_hi)
    at_lo = has_member(surface, lo, grid, rng)
    at_hi = has_member(surface, hi, grid, rng)
    if at_lo == at_hi:
        return None
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if has_member(surface, mid, grid, rng) == at_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# -- suites ------------------------------------------------------------------

def _rand_q(rng: random.Random, lo: int, hi: int, den: int = 8):
    d = rng.randint(1, den)
    return to_scalar(f"{rng.randint(lo * d, hi * d)}/{d}", Backend.EXACT)


def random_omega_point(rng: random.Random) -> Character:
    """Exact point of the Moebius domain: pick xy > 4, then z in (2 - xy, -2)."""
    while True:
        x = _rand_q(rng, 1, 6, 3)
        y = _rand_q(rng, 1, 6, 3)
        if x * y > 4:
            break
    if rng.random() < 0.5:
        x, y = -x, -y
    gap = x * y - 4
    t = to_scalar(f"{rng.randint(1, 9)}/10", Backend.EXACT)
    return Character(x, y, -2 - t * gap)


def random_lambda_word(rng: random.Random, length: int) -> str:
    out = []
    for _ in range(length):
        out.append(rng.choice([g for g in "xyz" if not out or g != out[-1]]))
    return "".join(out)


def agreement_inputs(seed: int, count: int = 500) -> list[Character]:
    """Exact inputs with kappa < -14: half are words applied to Moebius-domain
    points, half are random rational triples."""
    rng = random.Random(seed)
    out: list[Character] = []
    while len(out) < count:
        if len(out) % 2 == 0:
            u = random_omega_point(rng)
            u = apply_word(random_lambda_word(rng, rng.randint(0, 6)), u)
        else:
            u = Character(_rand_q(rng, -8, 8, 4), _rand_q(rng, -8, 8, 4), _rand_q(rng, -8, 8, 4))
            # skip the measure-zero loci x = 0, y = 0, |z| = 2
            if not kappa(u) < -14 or u.x == 0 or u.y == 0 or abs(u.z) == 2:
                continue
        out.append(u)
    return out


def _agreement_case(args):
    u, max_len = args
    fast = tau_reduce(u).cls
    slow = bruteforce_search(u, max_len)
    return fast, slow


def run_agreement(seed: int = 0, count: int = 500, max_len: int = 12) -> dict:
    inputs = agreement_inputs(seed, count)
    results = pmap(_agreement_case, [(u, max_len) for u in inputs])
    checked = agree = 0
    both = 0
    mismatches = []
    for i, (fast, slow) in enumerate(results):
        both += slow.found_M and slow.found_E
        if slow.cls is None or fast not in (TerminatorClass.FRICKE_M, TerminatorClass.ELLIPTIC_E):
            continue
        checked += 1
        if fast is slow.cls:
            agree += 1
        else:
            mismatches.append(i)
    return {"suite": "agreement", "seed": seed, "inputs": len(inputs), "checked": checked,
            "agree": agree, "both_flags": int(both), "mismatches": mismatches,
            "ok": checked == agree}


def run_certify(seed: int = 0, count: int = 200) -> dict:
    inputs = agreement_inputs(seed, count)
    failures = []
    classes: dict[str, int] = {}
    for i, u in enumerate(inputs):
        trace = tau_reduce(u)
        classes[trace.cls.value] = classes.get(trace.cls.value, 0) + 1
        try:
            cert = certify(trace)
            if not cert.verified and trace.cls is not TerminatorClass.ITERATION_CAP:
                failures.append(i)
        except VerificationFailed:
            failures.append(i)
    return {"suite": "certify", "seed": seed, "inputs": len(inputs), "classes": classes,
            "failures": failures, "ok": not failures}


def run_threshold(seed: int = 0, grid: int = 100_000) -> dict:
    m = threshold_search(Surface.MOEBIUS, -20, -10, grid, seed)
    k = threshold_search(Surface.KLEIN, 2, 10, grid, seed)
    ok = m is not None and k is not None and abs(m + 14) <= 0.05 and abs(k - 6) <= 0.05
    return {"suite": "threshold", "seed": seed, "moebius": m, "klein": k, "ok": ok}
