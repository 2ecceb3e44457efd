"""Dehn-type surgeries of the Gieseking ideal simplex manifold."""

from .ideal_simplex import DihedralAngles, dihedral_angles, gieseking_residual, lobachevsky, volume
from .moebius import INFINITY, ExtendedMoebius, GroupWord, apply, compose, evaluate_word, inverse
from .surgery import Branch, Classification, Region, SurgerySolution, classify, limit, solve

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "Branch",
    "Classification",
    "DihedralAngles",
    "ExtendedMoebius",
    "GroupWord",
    "Region",
    "SurgerySolution",
    "apply",
    "classify",
    "compose",
    "dihedral_angles",
    "evaluate_word",
    "gieseking_residual",
    "inverse",
    "limit",
    "lobachevsky",
    "solve",
    "volume",
]
