"""Scalar backends and the tolerance policy.

Two backends are supported:

* ``Backend.FLOAT`` -- plain Python floats, used for experiments.
* ``Backend.EXACT`` -- ``gmpy2.mpq`` rationals (always reduced, positive
  denominator), used wherever an exact oracle is needed.

Every quadratic reflection is an integer polynomial map, so rational inputs
stay rational and no precision is ever lost on the exact backend.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction

from gmpy2 import mpq, mpz

from .errors import BackendMismatch, NonFiniteScalar

Rational = type(mpq(0))
_EXACT_TYPES = (Rational, int, type(mpz(0)), Fraction)


class Backend(str, Enum):
    FLOAT = "float"
    EXACT = "exact"


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Tolerance:
    """Slack used by float comparisons; ignored on the exact backend.

    ``eps_eq`` decides equality, ``eps_strict`` is the margin demanded by
    strict inequalities such as ``|zbar| > 2``.
    """

    eps_eq: float = 1e-9
    eps_strict: float = 1e-9

    def __post_init__(self):
        if not (0 < self.eps_eq <= self.eps_strict):
            raise ValueError("tolerance requires 0 < eps_eq <= eps_strict")


DEFAULT_TOLERANCE = Tolerance()


def backend_of(value) -> Backend:
    if isinstance(value, float):
        return Backend.FLOAT
    if isinstance(value, _EXACT_TYPES) and not isinstance(value, bool):
        return Backend.EXACT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def common_backend(*values) -> Backend:
    backends = {backend_of(v) for v in values}
    if len(backends) != 1:
        raise BackendMismatch("scalars mix float and exact backends")
    return backends.pop()


def to_scalar(value, backend: Backend | str):
    """Coerce ``value`` into ``backend``.

    Strings are accepted in ``"p/q"`` or terminating-decimal form. Floats
    converted to the exact backend go through their shortest repr, so
    ``0.1`` becomes ``1/10`` rather than its binary expansion.
    """
    backend = Backend(backend)
    if backend is Backend.FLOAT:
        if isinstance(value, str):
            value = float(mpq(value)) if "/" in value else float(value)
        else:
            value = float(value)
        if not math.isfinite(value):
            raise NonFiniteScalar(f"non-finite float {value!r}")
        return value
    if isinstance(value, Rational):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFiniteScalar(f"non-finite float {value!r}")
        return mpq(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if text.lower().lstrip("+-") in {"nan", "inf", "infinity"}:
            raise NonFiniteScalar(f"non-finite scalar {value!r}")
        try:
            return mpq(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, numbers.Integral):
        return mpq(int(value))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_scalar(text: str, backend: Backend | str):
    return to_scalar(text, backend)


def format_scalar(value):
    """Serialize for JSON/CSV: rationals as ``"p/q"`` strings, floats as-is."""
    if isinstance(value, float):
        return value
    q = to_scalar(value, Backend.EXACT)
    return str(q)


def as_float(value) -> float:
    return float(value)


def compare(a, b, tol: Tolerance = DEFAULT_TOLERANCE) -> Ordering:
    backend = common_backend(a, b)
    if backend is Backend.FLOAT and abs(a - b) <= tol.eps_eq:
        return Ordering.EQUAL
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_zero(a, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    if isinstance(a, float):
        return abs(a) <= tol.eps_eq
    return a == 0


def strictly_less(a, b, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """``a < b``, demanding a margin of ``eps_strict`` on floats."""
    if isinstance(a, float) or isinstance(b, float):
        return a < b - tol.eps_strict
    return a < b


def strictly_greater(a, b, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return a > b + tol.eps_strict
    return a > b
