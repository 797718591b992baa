"""Modular group dynamics on the real character varieties of the rank-2 free group."""

from .core import Character, Component, kappa, normalize_signs, sign_change, tau, zbar
from .group import Generator, GroupWord, apply, apply_word, bfs_orbit, orbit_tree, reduce_word
from .numeric import Backend, Tolerance
from .reduction import ReductionTrace, TerminatorClass, classify, tau_reduce

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "Character",
    "Component",
    "Generator",
    "GroupWord",
    "ReductionTrace",
    "TerminatorClass",
    "Tolerance",
    "apply",
    "apply_word",
    "bfs_orbit",
    "classify",
    "kappa",
    "normalize_signs",
    "orbit_tree",
    "reduce_word",
    "sign_change",
    "tau",
    "tau_reduce",
    "zbar",
]
