"""Generators of the modular group, words, normal forms and orbit enumeration.

Words act left to right: ``apply_word([a, b], u) == apply(b, apply(a, u))``.
The serialized alphabet is ``x y z`` for the quadratic reflections,
``X Y S`` for the sign changes (xz, yz, xy) and ``T`` for the xy transposition.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .core import Character, Component, kappa
from .errors import BackendMismatch, DepthCapExceeded
from .numeric import Backend, to_scalar


class Generator(str, Enum):
    Qx = "x"
    Qy = "y"
    Qz = "z"
    SigmaXZ = "X"
    SigmaYZ = "Y"
    SigmaXY = "S"
    Txy = "T"

    @property
    def is_reflection(self) -> bool:
        return self.value in "xyz"

    @property
    def is_sign_change(self) -> bool:
        return self.value in "XYS"


REFLECTIONS = (Generator.Qx, Generator.Qy, Generator.Qz)
ALL_GENERATORS = tuple(Generator)

_C11, _C01, _C10 = Component.C11, Component.C01, Component.C10


def _neg(v):
    return -v if v else v


# Each quadratic reflection swaps the two roots of kappa = c seen as a
# quadratic in one coordinate; the linear coefficient differs by component.
_REFLECT = {
    (_C11, "x"): lambda x, y, z: (y * z - x, y, z),
    (_C11, "y"): lambda x, y, z: (x, x * z - y, z),
    (_C11, "z"): lambda x, y, z: (x, y, -x * y - z),
    (_C01, "x"): lambda x, y, z: (-y * z - x, y, z),
    (_C01, "y"): lambda x, y, z: (x, x * z - y, z),
    (_C01, "z"): lambda x, y, z: (x, y, x * y - z),
    (_C10, "x"): lambda x, y, z: (y * z - x, y, z),
    (_C10, "y"): lambda x, y, z: (x, -x * z - y, z),
    (_C10, "z"): lambda x, y, z: (x, y, x * y - z),
}
_SIGN = {
    "X": lambda x, y, z: (_neg(x), y, _neg(z)),
    "Y": lambda x, y, z: (x, _neg(y), _neg(z)),
    "S": lambda x, y, z: (_neg(x), _neg(y), z),
}
_SWAP_XY = {_C11: _C11, _C01: _C10, _C10: _C01}


def apply(g: Generator | str, u: Character) -> Character:
    letter = g.value if isinstance(g, Generator) else Generator(g).value
    x, y, z, comp = u
    if letter == "T":
        return Character(y, x, z, _SWAP_XY[comp])
    fn = _SIGN.get(letter) or _REFLECT[(comp, letter)]
    return Character(*fn(x, y, z), comp)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[Generator, ...] = ()
    reduced: bool = False

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        if text in ("", "e", "ε"):
            return cls((), True)
        try:
            letters = tuple(Generator(ch) for ch in text)
        except ValueError as exc:
            raise ValueError(f"bad word {text!r}: letters must be in 'xyzXYST'") from exc
        return cls(letters)

    @classmethod
    def of(cls, letters) -> "GroupWord":
        return cls(tuple(Generator(g) for g in letters))

    def __str__(self) -> str:
        return "".join(g.value for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "GroupWord":
        # every generator is an involution
        return GroupWord(tuple(reversed(self.letters)))

    def then(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + tuple(other.letters))


def as_word(w) -> GroupWord:
    if isinstance(w, GroupWord):
        return w
    if isinstance(w, str):
        return GroupWord.parse(w)
    return GroupWord.of(w)


def apply_word(w, u: Character) -> Character:
    for g in as_word(w).letters:
        u = apply(g, u)
    return u


def apply_letters(letters: str, u: Character) -> Character:
    """Fast path for a plain string of reflection letters on one component."""
    x, y, z, comp = u
    fns = [_REFLECT[(comp, ch)] for ch in letters]
    for fn in fns:
        x, y, z = fn(x, y, z)
    return Character(x, y, z, comp)


# Normal form is T^t, then one sign change, then a reduced reflection word.
# Sign changes commute with every reflection; T conjugates Qx <-> Qy, fixes Qz
# and conjugates sigma_xz <-> sigma_yz.
_SIGN_PRODUCT = {
    ("", ""): "", ("", "X"): "X", ("", "Y"): "Y", ("", "S"): "S",
    ("X", "X"): "", ("Y", "Y"): "", ("S", "S"): "",
    ("X", "Y"): "S", ("Y", "X"): "S",
    ("X", "S"): "Y", ("S", "X"): "Y",
    ("Y", "S"): "X", ("S", "Y"): "X",
}
_T_CONJ = {"": "", "X": "Y", "Y": "X", "S": "S", "x": "y", "y": "x", "z": "z"}

_relations_checked = False


def _check_relations(samples: int = 24, seed: int = 0x5EED) -> None:
    """Verify the rewriting rules pointwise on random exact characters."""
    rng = random.Random(seed)
    pairs = [(s, q) for s in "XYS" for q in "xyz"]
    for _ in range(samples):
        for comp in Component:
            u = Character(
                *(to_scalar(f"{rng.randint(-50, 50)}/{rng.randint(1, 9)}", Backend.EXACT)
                  for _ in range(3)),
                comp,
            )
            for s, q in pairs:
                if apply_word(s + q, u) != apply_word(q + s, u):
                    raise AssertionError(f"{s} and {q} do not commute on {comp.value}")
            for g in "xyzXYS":
                if apply_word(g + "T", u) != apply_word("T" + _T_CONJ.get(g, g), u):
                    raise AssertionError(f"T does not conjugate {g} as expected")


def reduce_word(w) -> GroupWord:
    global _relations_checked
    if not _relations_checked:
        _check_relations()
        _relations_checked = True
    t = False
    sign = ""
    lam: list[str] = []
    for g in as_word(w).letters:
        ch = g.value
        if ch in "xyz":
            if lam and lam[-1] == ch:
                lam.pop()
            else:
                lam.append(ch)
        elif ch in "XYS":
            sign = _SIGN_PRODUCT[(sign, ch)]
        else:
            lam = [_T_CONJ[c] for c in lam]
            sign = _T_CONJ[sign]
            t = not t
    text = ("T" if t else "") + sign + "".join(lam)
    return GroupWord(tuple(Generator(c) for c in text), True)


def is_reduced_lambda(w) -> bool:
    letters = str(as_word(w))
    return all(c in "xyz" for c in letters) and all(a != b for a, b in zip(letters, letters[1:]))


@dataclass
class OrbitTree:
    root: Character
    depth: int
    nodes: dict[str, Character] = field(default_factory=dict)

    def children(self, word: str) -> list[str]:
        if word == "":
            kids = ["x", "y"]
        else:
            kids = [word + g for g in "xyz" if g != word[-1]]
        return [k for k in kids if k in self.nodes]


DEFAULT_TREE_CAP = 24
DEFAULT_BFS_CAP = 14


def orbit_tree(u: Character, depth: int, cap: int = DEFAULT_TREE_CAP) -> OrbitTree:
    """Word-indexed binary tree below ``u``: root children Qx u, Qy u, and each
    child reached by a letter branches on the two other letters."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > cap:
        raise DepthCapExceeded(f"depth {depth} exceeds cap {cap}")
    nodes = {"": u}
    level = [("", u)]
    for _ in range(depth):
        nxt = []
        for word, v in level:
            letters = "xy" if word == "" else [g for g in "xyz" if g != word[-1]]
            for g in letters:
                child = (word + g, apply(g, v))
                nodes[child[0]] = child[1]
                nxt.append(child)
        level = nxt
    return OrbitTree(u, depth, nodes)


def bfs_orbit(u: Character, max_len: int, cap: int = DEFAULT_BFS_CAP) -> dict[str, Character]:
    """Distinct points reachable by reduced reflection words of length
    ``<= max_len``, each keyed by a shortest word reaching it."""
    if u.backend is not Backend.EXACT:
        raise BackendMismatch("bfs_orbit needs exact coordinates")
    if max_len > cap:
        raise DepthCapExceeded(f"word length {max_len} exceeds cap {cap}")
    seen = {u: ""}
    queue = deque([("", u)])
    while queue:
        word, v = queue.popleft()
        if len(word) >= max_len:
            continue
        for g in "xyz":
            if word and word[-1] == g:
                continue
            w = apply(g, v)
            if w not in seen:
                seen[w] = word + g
                queue.append((word + g, w))
    return {word: v for v, word in seen.items()}


def kappa_preserved(w, u: Character) -> bool:
    return kappa(apply_word(w, u)) == kappa(u)
