"""Exact algebra of quadratic spaces over GF(2).

Spaces and their classification live in :mod:`quadf2.quadform`, embeddings
in :mod:`quadf2.qmorph`, the span and cospan categories in
:mod:`quadf2.spancat` and :mod:`quadf2.cospancat`, and the isotropic functors
in :mod:`quadf2.isofunc`.
"""

from .f2core import BitMatrix, Subspace, enumerate_subspaces, kernel, rank, solve
from .limits import EnumerationLimitError
from .qmorph import QuadMap, enumerate_homs, orthogonal_group
from .quadform import (
    H0,
    H1,
    POINT0,
    POINT1,
    ZERO,
    DegenerateSpaceError,
    IsoClass,
    QuadSpace,
    arf,
    decompose,
    iso_class,
    is_isometric,
    orthogonal_sum,
    parse_descriptor,
    standard,
)

__all__ = [
    "BitMatrix",
    "Subspace",
    "enumerate_subspaces",
    "kernel",
    "rank",
    "solve",
    "EnumerationLimitError",
    "QuadMap",
    "enumerate_homs",
    "orthogonal_group",
    "H0",
    "H1",
    "POINT0",
    "POINT1",
    "ZERO",
    "DegenerateSpaceError",
    "IsoClass",
    "QuadSpace",
    "arf",
    "decompose",
    "iso_class",
    "is_isometric",
    "orthogonal_sum",
    "parse_descriptor",
    "standard",
]
