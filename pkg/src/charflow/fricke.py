"""Membership in the base Fricke domains and the associated trace maps.

The Moebius-band domain is ``z < -2 and zbar < -2`` on C11. The Klein-bottle
domain is ``x^2 + y^2 - xyz + 4 < 0`` on C11 and ``y^2 + z^2 - xyz + 4 < 0``
on C01. Both are open, so boundary points count as non-members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import Character, Component, kappa, zbar
from .errors import ComponentMismatch
from .group import apply_word, as_word
from .numeric import DEFAULT_TOLERANCE, Tolerance, format_scalar, strictly_less


class Surface(str, Enum):
    MOEBIUS = "moebius"
    KLEIN = "klein"


@dataclass(frozen=True)
class InequalityRecord:
    expr: str
    value: object
    ok: bool

    def to_json(self) -> dict:
        return {"expr": self.expr, "value": format_scalar(self.value), "ok": self.ok}


@dataclass(frozen=True)
class FrickeVerdict:
    member: bool
    surface: Surface
    witness: list[InequalityRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "surface": self.surface.value,
            "member": self.member,
            "inequalities": [r.to_json() for r in self.witness],
        }


def _verdict(surface: Surface, records: list[InequalityRecord]) -> FrickeVerdict:
    return FrickeVerdict(all(r.ok for r in records), surface, records)


def in_omega0_M(u: Character, tol: Tolerance = DEFAULT_TOLERANCE) -> FrickeVerdict:
    if u.component is not Component.C11:
        raise ComponentMismatch("the Moebius domain is defined on component 11")
    zb = zbar(u)
    return _verdict(
        Surface.MOEBIUS,
        [
            InequalityRecord("z < -2", u.z, strictly_less(u.z, -2, tol)),
            InequalityRecord("zbar < -2", zb, strictly_less(zb, -2, tol)),
        ],
    )


def klein_form(u: Character):
    x, y, z, comp = u
    if comp is Component.C11:
        return x * x + y * y - x * y * z + 4
    if comp is Component.C01:
        return y * y + z * z - x * y * z + 4
    raise ComponentMismatch("the Klein domain has no direct chart on component 10; transpose first")


def in_omega0_K(u: Character, tol: Tolerance = DEFAULT_TOLERANCE) -> FrickeVerdict:
    value = klein_form(u)
    expr = "x^2 + y^2 - xyz + 4 < 0" if u.component is Component.C11 else "y^2 + z^2 - xyz + 4 < 0"
    return _verdict(Surface.KLEIN, [InequalityRecord(expr, value, strictly_less(value, 0, tol))])


def in_base_domain(u: Character, surface: Surface | str, tol: Tolerance = DEFAULT_TOLERANCE) -> FrickeVerdict:
    if Surface(surface) is Surface.MOEBIUS:
        return in_omega0_M(u, tol)
    return in_omega0_K(u, tol)


def pants_pullback(u: Character, tol: Tolerance = DEFAULT_TOLERANCE):
    """Pull a C01 character back to the three-holed sphere double cover.

    Returns the boundary traces ``(x, x, y^2 + z^2 - xyz + 2)`` and whether
    they describe a discrete embedding (``|x| > 2`` and third trace ``< -2``).
    """
    if u.component is not Component.C01:
        raise ComponentMismatch("the pants pullback is defined on component 01")
    x, y, z, _ = u
    third = y * y + z * z - x * y * z + 2
    discrete = strictly_less(2, abs(x), tol) and strictly_less(third, -2, tol)
    return (x, x, third), discrete


@dataclass(frozen=True)
class QpsTraces:
    """Traces of a four-holed sphere representation: four boundary traces
    and the three pairwise product traces."""

    a: object
    b: object
    c_: object
    d: object
    t_AB: object
    t_BC: object
    t_CA: object

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c_, self.d, self.t_AB, self.t_BC, self.t_CA)

    def fricke_residual(self):
        a, b, c, d, tab, tbc, tca = self.as_tuple()
        lhs = tab * tab + tbc * tbc + tca * tca + tab * tbc * tca
        rhs = (
            (a * b + c * d) * tab
            + (a * d + b * c) * tbc
            + (a * c + b * d) * tca
            - (a * a + b * b + c * c + d * d + a * b * c * d - 4)
        )
        return lhs - rhs


def qps_pushforward(u: Character) -> QpsTraces:
    if u.component is not Component.C11:
        raise ComponentMismatch("the four-holed sphere map is defined on component 11")
    x, y, z, _ = u
    zb = zbar(u)
    return QpsTraces(z, zb, z, zb, -x * x - 2, -y * y - 2, kappa(u))


def keen_check(q: QpsTraces, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return all(strictly_less(v, -2, tol) for v in q.as_tuple()[:6])


def translate_fricke(u: Character, w, surface: Surface | str = Surface.MOEBIUS,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> FrickeVerdict:
    """Is ``u`` in the translate ``w . Omega_0``? Tests ``w^-1 u`` against the base."""
    return in_base_domain(apply_word(as_word(w).inverse(), u), surface, tol)
