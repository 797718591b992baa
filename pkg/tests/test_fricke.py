import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given

from charflow.core import Character, Component, kappa, to_c11, zbar
from charflow.errors import ComponentMismatch
from charflow.fricke import (
    QpsTraces,
    Surface,
    in_base_domain,
    in_omega0_K,
    in_omega0_M,
    keen_check,
    klein_form,
    pants_pullback,
    qps_pushforward,
    translate_fricke,
)
from charflow.group import apply
from charflow.numeric import Backend
from conftest import c11_characters, omega_points


def ex(x, y, z, comp="11"):
    return Character.make(x, y, z, comp, Backend.EXACT)


def rand_q(rng, span=12, den=6):
    return mpq(rng.randint(-span * den, span * den), rng.randint(1, den))


def test_omega_M_examples():
    v = in_omega0_M(ex(3, 2, -3))
    assert v.member and [r.expr for r in v.witness] == ["z < -2", "zbar < -2"]
    assert not in_omega0_M(ex(1, 1, -1)).member
    v = in_omega0_M(ex("-0.2", 12, -10))
    assert not v.member and [r.ok for r in v.witness] == [True, False]


def test_omega_M_is_open():
    # z = zbar = -2 boundary
    assert not in_omega0_M(ex(2, 2, -2)).member
    assert not in_omega0_M(Character(2.0, 2.0, -2.0 - 1e-12)).member


def test_omega_M_needs_c11():
    with pytest.raises(ComponentMismatch):
        in_omega0_M(ex(3, 2, -3, "01"))


def test_omega_K_examples():
    u = ex(3, 3, 3)
    assert in_omega0_K(u).member and kappa(u) == 16
    assert not in_omega0_K(ex(0, 0, 0)).member
    assert in_omega0_K(ex(3, 3, 3, "01")).member
    with pytest.raises(ComponentMismatch):
        in_omega0_K(ex(3, 3, 3, "10"))


def test_c10_reaches_klein_by_transposition():
    u = ex(3, 3, 3, "10")
    assert in_omega0_K(apply("T", u)).member


def test_verdict_json_shape():
    j = in_base_domain(ex(3, 2, -3), Surface.MOEBIUS).to_json()
    assert j["surface"] == "moebius" and j["member"] is True
    assert j["inequalities"][0] == {"expr": "z < -2", "value": "-3", "ok": True}
    j = in_base_domain(ex(3, 3, 3), "klein").to_json()
    assert j["inequalities"][0]["value"] == "-5"


def test_pants_pullback_examples():
    triple, discrete = pants_pullback(ex(5, 3, 3, "01"))
    assert triple == (5, 5, -25) and discrete
    triple, discrete = pants_pullback(ex(1, 0, 0, "01"))
    assert triple == (1, 1, 2) and not discrete
    with pytest.raises(ComponentMismatch):
        pants_pullback(ex(5, 3, 3))


def test_pants_discreteness_matches_klein_membership():
    rng = random.Random(41)
    members = 0
    for _ in range(10_000):
        u = Character(rand_q(rng), rand_q(rng), rand_q(rng), Component.C01)
        _, discrete = pants_pullback(u)
        k = in_omega0_K(u).member
        assert discrete == k
        members += k
    assert members > 100


def test_qps_examples():
    q = qps_pushforward(ex(3, 2, -3))
    assert q.as_tuple() == (-3, -3, -3, -3, -11, -6, -24)
    z = mpq(5, 3)
    assert qps_pushforward(ex(0, 0, z)).as_tuple() == (z, -z, z, -z, -2, -2, z * z - 2)


def test_fricke_relation_holds_symbolically():
    x, y, z = sp.symbols("x y z")
    zb = -x * y - z
    k = -x**2 - y**2 + z**2 + x * y * z - 2
    a, b, c, d, tab, tbc, tca = z, zb, z, zb, -x**2 - 2, -y**2 - 2, k
    lhs = tab**2 + tbc**2 + tca**2 + tab * tbc * tca
    rhs = (a * b + c * d) * tab + (a * d + b * c) * tbc + (a * c + b * d) * tca - (
        a**2 + b**2 + c**2 + d**2 + a * b * c * d - 4)
    assert sp.expand(lhs - rhs) == 0


def test_fricke_relation_exact_on_random_points():
    rng = random.Random(2)
    for _ in range(1000):
        u = Character(rand_q(rng), rand_q(rng), rand_q(rng))
        assert qps_pushforward(u).fricke_residual() == 0


def test_fricke_residual_detects_bad_traces():
    q = QpsTraces(*(mpq(v) for v in (-3, -3, -3, -3, -11, -6, -25)))
    assert q.fricke_residual() != 0


def test_keen_examples():
    assert keen_check(qps_pushforward(ex(3, 2, -3)))
    assert not keen_check(qps_pushforward(Character(0.1, 0.1, 1.0)))


def test_keen_matches_omega_M():
    rng = random.Random(9)
    hits = 0
    for i in range(10_000):
        if i % 2:
            x = mpq(rng.randint(5, 80), rng.randint(1, 4))
            y = 4 / x + mpq(rng.randint(-20, 60), rng.randint(1, 4))
            z = -2 - mpq(rng.randint(-10, 30), 20) * (x * y - 4)
            u = Character(x, y, z)
        else:
            u = Character(rand_q(rng), rand_q(rng), rand_q(rng))
        if u.x == 0 or u.y == 0:
            continue
        m = in_omega0_M(u).member
        assert keen_check(qps_pushforward(u)) == m
        hits += m
    assert hits > 500


def test_translate_examples():
    u = ex(3, 2, -3)
    assert translate_fricke(u, "").member == in_omega0_M(u).member
    assert translate_fricke(u, "z").member


@given(omega_points())
def test_qz_stabilizes_and_qx_qy_escape(u):
    assert in_omega0_M(u).member
    assert translate_fricke(u, "z").member
    assert in_omega0_M(apply("z", u)).member
    for g in ("x", "y"):
        v = apply(g, u)
        assert not in_omega0_M(v).member
        assert not translate_fricke(u, g).member
        # the image leaves the elliptic region too
        assert abs(v.z) > 2 and abs(zbar(v)) > 2
    assert zbar(apply("x", u)) > 6


@given(omega_points())
def test_omega_M_points_have_kappa_below_minus_fourteen(u):
    assert kappa(u) < -14


def test_klein_minimum_above_six():
    # on the discriminant grid no Klein member has kappa <= 6
    rng = random.Random(6)
    seen = 0
    for _ in range(20_000):
        u = Character(rand_q(rng, 20, 4), rand_q(rng, 20, 4), rand_q(rng, 20, 4))
        if in_omega0_K(u).member:
            seen += 1
            assert kappa(u) > 6
    assert seen > 100


@given(c11_characters)
def test_klein_form_c11_and_c01_agree_under_transposition(u):
    v = Character(u.x, u.y, u.z, Component.C01)
    assert klein_form(to_c11(v)) == klein_form(v)
