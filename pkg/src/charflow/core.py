"""Characters on the three non-trivial components and their invariants.

A character is a triple of traces ``(x, y, z)`` tagged with the component
it lives on. The commutator trace ``kappa`` takes a different sign pattern
on each component:

    C11: -x^2 - y^2 + z^2 + xyz - 2
    C01:  x^2 - y^2 - z^2 + xyz - 2
    C10: -x^2 + y^2 - z^2 + xyz - 2

``zbar`` and ``tau`` are only defined on C11. The other two components are
carried onto C11 by swapping a coordinate with ``z`` (see ``to_c11``).
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

from .errors import ComponentMismatch
from .numeric import Backend, Rational, common_backend, format_scalar, to_scalar


class Component(str, Enum):
    C01 = "01"
    C10 = "10"
    C11 = "11"


class SignChange(str, Enum):
    XZ = "xz"
    YZ = "yz"
    XY = "xy"


def _neg(v):
    # avoid producing -0.0 on the float backend
    return -v if v else v


class Character(NamedTuple):
    x: object
    y: object
    z: object
    component: Component = Component.C11

    @classmethod
    def make(cls, x, y, z, component="11", backend=None) -> "Character":
        """Build a validated character.

        Without ``backend`` any float makes the character a float one, and
        ints or strings such as ``"-3/2"`` give an exact one. Mixing floats
        with rationals is refused.
        """
        comp = Component(component)
        if backend is None:
            if any(isinstance(v, float) for v in (x, y, z)):
                # plain ints mixed with floats are promoted; rationals are not
                if any(isinstance(v, Rational) for v in (x, y, z)):
                    common_backend(x, y, z)
                backend = Backend.FLOAT
            else:
                backend = Backend.EXACT
        return cls(*(to_scalar(v, backend) for v in (x, y, z)), comp)

    @property
    def backend(self) -> Backend:
        return common_backend(self.x, self.y, self.z)

    @property
    def coords(self) -> tuple:
        return (self.x, self.y, self.z)

    def with_coords(self, x, y, z) -> "Character":
        return Character(x, y, z, self.component)

    def to_float(self) -> "Character":
        return Character(float(self.x), float(self.y), float(self.z), self.component)

    def to_exact(self) -> "Character":
        return Character.make(self.x, self.y, self.z, self.component, Backend.EXACT)


def kappa(u: Character):
    x, y, z, comp = u
    if comp is Component.C11:
        return -x * x - y * y + z * z + x * y * z - 2
    if comp is Component.C01:
        return x * x - y * y - z * z + x * y * z - 2
    return -x * x + y * y - z * z + x * y * z - 2


def _require_c11(u: Character, what: str):
    if u.component is not Component.C11:
        raise ComponentMismatch(f"{what} is defined on component 11 only, got {u.component.value}")


def zbar(u: Character):
    """The other root of kappa = c as a quadratic in z: ``-xy - z``."""
    _require_c11(u, "zbar")
    return -u.x * u.y - u.z


def tau(u: Character):
    """``-z * zbar``; equals ``x^2 + y^2 + kappa + 2`` on C11."""
    _require_c11(u, "tau")
    x, y, z, _ = u
    return z * (x * y + z)


def sign_change(u: Character, which: SignChange | str) -> Character:
    which = SignChange(which)
    x, y, z, comp = u
    if which is SignChange.XZ:
        return Character(_neg(x), y, _neg(z), comp)
    if which is SignChange.YZ:
        return Character(x, _neg(y), _neg(z), comp)
    return Character(_neg(x), _neg(y), z, comp)


def normalize_signs(u: Character) -> tuple[Character, list[SignChange]]:
    """Move ``u`` within its sign-change orbit so that ``z <= 0``.

    The sign changes act on the pair ``(z, zbar)`` only by a joint flip, so
    one flip of ``sigma_xz`` is all that is ever needed; when both roots are
    outside ``[-2, 2]`` with opposite signs the result therefore has
    ``z < 0 < zbar``.
    """
    _require_c11(u, "normalize_signs")
    if u.z > 0:
        return sign_change(u, SignChange.XZ), [SignChange.XZ]
    return u, []


def transpose_xz(u: Character) -> Character:
    """Swap x and z; exchanges C01 and C11 and fixes C10 setwise."""
    target = {Component.C01: Component.C11, Component.C11: Component.C01}
    if u.component not in target:
        raise ComponentMismatch("t_xz acts between components 01 and 11")
    return Character(u.z, u.y, u.x, target[u.component])


def transpose_yz(u: Character) -> Character:
    """Swap y and z; exchanges C10 and C11."""
    target = {Component.C10: Component.C11, Component.C11: Component.C10}
    if u.component not in target:
        raise ComponentMismatch("t_yz acts between components 10 and 11")
    return Character(u.x, u.z, u.y, target[u.component])


def to_c11(u: Character) -> Character:
    if u.component is Component.C01:
        return transpose_xz(u)
    if u.component is Component.C10:
        return transpose_yz(u)
    return u


def character_to_json(u: Character) -> dict:
    return {
        "x": format_scalar(u.x),
        "y": format_scalar(u.y),
        "z": format_scalar(u.z),
        "component": u.component.value,
    }


def character_from_json(obj: dict, backend: Backend | str) -> Character:
    try:
        comp = obj.get("component", "11")
        return Character.make(obj["x"], obj["y"], obj["z"], str(comp), backend)
    except KeyError as exc:
        raise ValueError(f"character is missing coordinate {exc}") from exc
