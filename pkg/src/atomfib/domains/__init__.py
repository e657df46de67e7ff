"""Right-hand-side domains: lattices and finitely generated monoids."""

from .base import RhsContext
from .lattice import LatticeContext
from .monoid import MonoidContext
from .sbar import SbarContext, member, preceq, refine_cover, sbar_member

__all__ = [
    "RhsContext",
    "LatticeContext",
    "MonoidContext",
    "SbarContext",
    "member",
    "sbar_member",
    "preceq",
    "refine_cover",
]
