import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given

from charflow.core import (
    Character,
    Component,
    SignChange,
    character_from_json,
    character_to_json,
    kappa,
    normalize_signs,
    sign_change,
    tau,
    to_c11,
    transpose_xz,
    transpose_yz,
    zbar,
)
from charflow.errors import BackendMismatch, ComponentMismatch
from charflow.group import apply
from charflow.numeric import Backend
from conftest import c11_characters, characters


def ex(x, y, z, comp="11"):
    return Character.make(x, y, z, comp, Backend.EXACT)


def test_kappa_examples():
    assert kappa(ex(1, 1, -1)) == -4
    assert kappa(ex(3, 2, -3)) == -24
    assert kappa(ex("-0.2", 12, -10)) == mpq(-2204, 100)


def test_kappa_component_polynomials_match_symbolic_forms():
    x, y, z = sp.symbols("x y z")
    forms = {
        "11": -x**2 - y**2 + z**2 + x * y * z - 2,
        "01": x**2 - y**2 - z**2 + x * y * z - 2,
        "10": -x**2 + y**2 - z**2 + x * y * z - 2,
    }
    for comp, form in forms.items():
        u = ex(mpq(7, 3), mpq(-5, 2), mpq(11, 4), comp)
        value = form.subs({x: sp.Rational(7, 3), y: sp.Rational(-5, 2), z: sp.Rational(11, 4)})
        assert sp.Rational(str(kappa(u))) == value


def test_zbar_examples():
    assert zbar(ex(3, 2, -3)) == -3
    assert zbar(ex("-0.2", 12, -10)) == mpq(62, 5)
    assert zbar(ex(0, 7, mpq(5, 3))) == mpq(-5, 3)


def test_tau_examples():
    assert tau(ex(3, 2, -3)) == -9
    assert tau(ex("-0.2", 12, -10)) == 124
    assert tau(ex(0, 4, 9)) == 81


def test_zbar_and_tau_require_c11():
    with pytest.raises(ComponentMismatch):
        zbar(ex(1, 2, 3, "01"))
    with pytest.raises(ComponentMismatch):
        tau(ex(1, 2, 3, "10"))


def test_sign_change_examples():
    assert sign_change(ex(3, 2, -3), "xz") == ex(-3, 2, 3)
    assert kappa(ex(-3, 2, 3)) == -24
    assert sign_change(ex(0, 5, 1), "yz") == ex(0, -5, -1)
    v = sign_change(ex(1, 1, -1), "xy")
    assert v == ex(-1, -1, -1) and kappa(v) == -4


def test_normalize_signs_examples():
    assert normalize_signs(ex(3, 2, 3)) == (ex(-3, 2, -3), [SignChange.XZ])
    assert normalize_signs(ex(3, 2, -3)) == (ex(3, 2, -3), [])
    assert normalize_signs(ex(0, 0, 5)) == (ex(0, 0, -5), [SignChange.XZ])


def test_float_sign_change_does_not_create_negative_zero():
    v = sign_change(Character(0.0, 1.0, 2.0), "xz")
    assert str(v.x) == "0.0"


def test_make_refuses_mixed_backends():
    with pytest.raises(BackendMismatch):
        Character.make(0.5, mpq(1, 2), 1)
    assert Character.make(0.5, 8, -9).backend is Backend.FLOAT


def test_transpositions_move_between_components():
    u = ex(2, 3, 5, "01")
    v = transpose_xz(u)
    assert v.component is Component.C11 and kappa(v) == kappa(u)
    w = ex(2, 3, 5, "10")
    assert kappa(transpose_yz(w)) == kappa(w)
    assert to_c11(w).component is Component.C11
    with pytest.raises(ComponentMismatch):
        transpose_xz(w)


def test_json_round_trip():
    u = ex(mpq(-3, 2), 4, mpq(1, 7), "10")
    assert character_from_json(character_to_json(u), "exact") == u
    f = Character(0.25, -1.5, 3.0)
    assert character_from_json(character_to_json(f), "float") == f


@given(c11_characters)
def test_vieta_pair(u):
    c = kappa(u)
    zb = zbar(u)
    assert u.z + zb == -u.x * u.y
    assert u.z * zb == -u.x**2 - u.y**2 - 2 - c


@given(c11_characters)
def test_tau_alternate_form(u):
    assert tau(u) == u.x**2 + u.y**2 + kappa(u) + 2


@given(characters())
def test_sign_changes_are_involutions_and_commute_with_qz(u):
    for s in SignChange:
        assert sign_change(sign_change(u, s), s) == u
        assert kappa(sign_change(u, s)) == kappa(u)
        assert sign_change(apply("z", u), s) == apply("z", sign_change(u, s))


@given(c11_characters)
def test_sigma_xz_negates_zbar(u):
    assert zbar(sign_change(u, "xz")) == -zbar(u)
    assert zbar(sign_change(u, "yz")) == -zbar(u)


@given(c11_characters)
def test_normalize_signs_postconditions(u):
    v, applied = normalize_signs(u)
    assert v.z <= 0 and kappa(v) == kappa(u)
    assert len(applied) <= 1
    if abs(v.z) > 2 and abs(zbar(v)) > 2 and v.z * zbar(v) < 0:
        assert v.z < 0 < zbar(v)
