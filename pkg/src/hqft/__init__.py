"""Finite-group 1+1D homotopy quantum field theories.

Groups, phase-valued cocycles, crossed group-algebras, a cobordism
expression language with its interpreter, rank-one state sums on branched
triangulations, and the abelian-label (pi2) sector.
"""

from .group import FiniteGroup, GroupError, build_cyclic, build_from_table, build_product, dihedral_group_4, \
    klein_four, symmetric_group_3
from .phase import Cyclotomic, OneCochain, Phase, TwoCocycle, coboundary, cohomologous, is_cocycle, normalize, \
    random_cocycle
from .crossed import CrossedAlgebra, from_cocycle, group_algebra, verify
from .cobordism import GSurface, evaluate, invariant_closed, parse, to_text, typecheck
from .pi2 import PiTwoFrobenius, verify_pi2

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "GroupError", "build_cyclic", "build_from_table", "build_product", "dihedral_group_4",
    "klein_four", "symmetric_group_3", "Cyclotomic", "OneCochain", "Phase", "TwoCocycle", "coboundary",
    "cohomologous", "is_cocycle", "normalize", "random_cocycle", "CrossedAlgebra", "from_cocycle",
    "group_algebra", "verify", "GSurface", "evaluate", "invariant_closed", "parse", "to_text", "typecheck",
    "PiTwoFrobenius", "verify_pi2",
]
