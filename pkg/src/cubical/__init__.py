"""Cubical sets with connections: box-category normal forms, finite
presentations, Moore complexes and exact integer homology."""

from .boxcat import BoxMorphism, compose, enumerate_morphisms, from_word, identity
from .chains import AbelianGroup, ChainComplexRep, homology_at, snf
from .cset import Cube, CubePresentation, CubicalMap, builtin, product
from .cubfile import parse_cub, serialize
from .moore import Variant, build_complex, normalized_complex, reduced_homology

__all__ = [
    "AbelianGroup", "BoxMorphism", "ChainComplexRep", "Cube", "CubePresentation", "CubicalMap",
    "Variant", "build_complex", "builtin", "compose", "enumerate_morphisms", "from_word",
    "homology_at", "identity", "normalized_complex", "parse_cub", "product", "reduced_homology",
    "serialize", "snf",
]
