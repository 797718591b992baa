import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from charflow.core import Character, Component, kappa
from charflow.errors import BackendMismatch, DepthCapExceeded
from charflow.group import (
    ALL_GENERATORS,
    Generator,
    GroupWord,
    apply,
    apply_letters,
    apply_word,
    bfs_orbit,
    is_reduced_lambda,
    orbit_tree,
    reduce_word,
)
from charflow.numeric import Backend
from conftest import characters


def ex(x, y, z, comp="11"):
    return Character.make(x, y, z, comp, Backend.EXACT)


def rand_char(rng, comp=None):
    comp = comp or rng.choice(list(Component))
    return Character(*(mpq(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(3)), comp)


def reduced_lambda_words(max_len):
    out = [""]
    for n in range(1, max_len + 1):
        for letters in itertools.product("xyz", repeat=n):
            w = "".join(letters)
            if is_reduced_lambda(w):
                out.append(w)
    return out


U = ex(3, 2, -3)


def test_apply_examples():
    assert apply(Generator.Qx, U) == ex(-9, 2, -3)
    assert apply(Generator.Qz, ex(1, 1, -1)) == ex(1, 1, 0)
    assert apply(Generator.Qy, U) == ex(3, -11, -3)


def test_apply_word_examples():
    assert apply_word("zz", U) == U
    assert apply_word([Generator.Qx, Generator.Qy], U) == ex(-9, 25, -3)
    assert apply_word(GroupWord(), U) == U


def test_transposition_swaps_components():
    u = ex(1, 2, 3, "01")
    v = apply("T", u)
    assert v.component is Component.C10 and kappa(v) == kappa(u)


def test_every_generator_is_an_involution_and_preserves_kappa():
    rng = random.Random(7)
    for _ in range(10_000):
        u = rand_char(rng)
        k = kappa(u)
        for g in ALL_GENERATORS:
            v = apply(g, u)
            assert kappa(v) == k
            assert apply(g, v) == u


def test_reduce_word_examples():
    assert str(reduce_word("xxy")) == "y"
    assert str(reduce_word("xyz")) == "xyz"
    assert reduce_word([Generator.Qz, Generator.SigmaXZ]).letters == (Generator.SigmaXZ, Generator.Qz)


def test_reduce_word_commutation_example_pointwise():
    rng = random.Random(11)
    for _ in range(100):
        u = rand_char(rng, Component.C11)
        assert apply_word("zX", u) == apply_word("Xz", u)


@given(characters(), st.text(alphabet="xyzXYST", max_size=20))
def test_reduce_word_preserves_action(u, text):
    assert apply_word(reduce_word(text), u) == apply_word(text, u)


@given(st.text(alphabet="xyzXYST", max_size=16), st.text(alphabet="xyzXYST", max_size=16))
def test_reduce_word_is_a_normal_form(a, b):
    # equal normal forms for w and w.s.s^-1 style insertions
    w = a + b
    padded = a + "TT" + "XX" + "zz" + b
    assert reduce_word(w) == reduce_word(padded)
    r = reduce_word(w)
    assert r.reduced
    text = str(r)
    lam = text.lstrip("T").lstrip("XYS")
    assert is_reduced_lambda(lam)
    assert len(text) - len(lam) <= 2


def test_inverse_word_undoes_word():
    rng = random.Random(3)
    for _ in range(200):
        u = rand_char(rng)
        w = GroupWord.parse("".join(rng.choice("xyzXYST") for _ in range(rng.randint(0, 12))))
        assert apply_word(w.inverse(), apply_word(w, u)) == u


def test_word_parse_and_format():
    assert str(GroupWord.parse("xyzXYST")) == "xyzXYST"
    assert len(GroupWord.parse("")) == 0
    with pytest.raises(ValueError):
        GroupWord.parse("xq")


def test_free_product_faithful_on_short_words():
    rng = random.Random(50)
    chars = [rand_char(rng, Component.C11) for _ in range(50)]
    words = reduced_lambda_words(6)
    assert len(words) == 190
    signatures = {}
    for w in words:
        sig = tuple(apply_letters(w, u) for u in chars)
        assert sig not in signatures, (w, signatures.get(sig))
        signatures[sig] = w


def test_orbit_tree_examples():
    assert orbit_tree(U, 0).nodes == {"": U}
    assert set(orbit_tree(U, 1).nodes.values()) == {U, ex(-9, 2, -3), ex(3, -11, -3)}
    tree = orbit_tree(U, 2)
    assert len(tree.nodes) == 7
    assert all(kappa(v) == -24 for v in tree.nodes.values())


def test_orbit_tree_node_counts_and_words():
    for depth in range(0, 7):
        tree = orbit_tree(U, depth)
        assert len(tree.nodes) == 2 ** (depth + 1) - 1
        for w, v in tree.nodes.items():
            assert apply_word(w, U) == v
            assert w == "" or w[0] in "xy"
    tree = orbit_tree(U, 3)
    assert tree.children("") == ["x", "y"]
    assert tree.children("xy") == ["xyx", "xyz"]


def test_orbit_tree_depth_cap():
    with pytest.raises(DepthCapExceeded):
        orbit_tree(U, 25)


def test_bfs_orbit_examples():
    assert bfs_orbit(U, 0) == {"": U}
    # Qz fixes (3,2,-3) because zbar = z = -3
    assert bfs_orbit(U, 1) == {"": U, "x": ex(-9, 2, -3), "y": ex(3, -11, -3)}
    v = ex(0, 0, mpq(7, 3))
    assert len(bfs_orbit(v, 5)) <= 2


def test_bfs_orbit_rejects_floats():
    with pytest.raises(BackendMismatch):
        bfs_orbit(Character(3.0, 2.0, -3.0), 2)


def test_bfs_orbit_matches_word_enumeration():
    rng = random.Random(5)
    for _ in range(5):
        u = rand_char(rng, Component.C11)
        for length in range(0, 6):
            points = set(bfs_orbit(u, length).values())
            brute = {apply_letters(w, u) for w in reduced_lambda_words(length)}
            assert points == brute
        for w, v in bfs_orbit(u, 5).items():
            assert apply_word(w, u) == v


def test_bfs_orbit_deduplicates_fixed_points():
    orbit = bfs_orbit(U, 4)
    assert len(set(orbit.values())) == len(orbit)
    assert len(orbit) < len(reduced_lambda_words(4))
