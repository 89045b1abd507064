"""Exact bit operators (rotation and two-shift dispersion) with GF(2) analysis."""

from drtbench.core.gf2 import Gf2Matrix
from drtbench.core.ops import (
    BijectivityReport,
    Block,
    BlockDecomposition,
    DispersionProfile,
    apply_map,
    block_decompose,
    build_gf2_matrix,
    dispersion_profile,
    drt,
    drt_inverse,
    graph_points,
    is_bijective,
    kernel_basis,
    rot_left,
    rot_right,
)
from drtbench.core.types import Drt, MapDescriptor, Rot, ShiftPair, WordSpec

__all__ = [
    "BijectivityReport",
    "Block",
    "BlockDecomposition",
    "DispersionProfile",
    "Drt",
    "Gf2Matrix",
    "MapDescriptor",
    "Rot",
    "ShiftPair",
    "WordSpec",
    "apply_map",
    "block_decompose",
    "build_gf2_matrix",
    "dispersion_profile",
    "drt",
    "drt_inverse",
    "graph_points",
    "is_bijective",
    "kernel_basis",
    "rot_left",
    "rot_right",
]
