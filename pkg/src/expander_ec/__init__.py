"""Expander codes over bipartite graphs: construction, erasure decoding, list decoding."""

from __future__ import annotations

from .gf2 import AffineSpace, BitMatrix, BitVector, affine_equal, rref, solve_affine
from .graphs import (
    BipartiteGraph,
    RegularGraph,
    bipartite_lambda,
    double_cover,
    expansion_lambda,
    make_graph,
)
from .inner import ErasedWord, LinearCode, erasure_list_decode_inner, make_code

__all__ = [
    "AffineSpace",
    "BipartiteGraph",
    "BitMatrix",
    "BitVector",
    "ErasedWord",
    "LinearCode",
    "RegularGraph",
    "affine_equal",
    "bipartite_lambda",
    "double_cover",
    "erasure_list_decode_inner",
    "expansion_lambda",
    "make_code",
    "make_graph",
    "rref",
    "solve_affine",
]
