"""Crossed simplicial groups, involutive non-commutative sets and the
homology of small involutive algebras, by exact computation."""

from .exactlinalg import GF, QQ, ZZ, ExactMatrix, HomologyGroup, Ring
from .groups import GroupFamily, SignedPermutation, canonical_R, canonical_T
from .invalg import InvolutiveAlgebra, InvolutiveBimodule, builtin
from .ncsets import CategoryTag, NCMorphism, parse_morphism

__version__ = "0.1.0"
