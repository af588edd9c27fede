"""Semilinear maps, generic real/complex inner product spaces, spectral
decomposition, and Witt vectors with one-dimensional isocrystals."""

from .finite_field import GF, FFElement, FieldSpec, UPoly, find_roots, pth_root
from .inner_product import (
    InnerProductSpace, adjoint, gram_schmidt, inner, is_self_adjoint, is_star_normal, norm,
    riesz_representative, to_dual,
)
from .isocrystal import (
    FieldTooSmallError, Isocrystal1D, IsocrystalEquivalence, StandardIsocrystal, classify,
    solve_frobenius_twist, verify_equivalence,
)
from .scalar import COMPLEX, REAL, RingHom, resolve_comp_triple, resolve_inv_pair
from .semilinear import SemilinearEquiv, SemilinearMap, apply, compose, inverse
from .spectral import (
    diagonalize_normal, diagonalize_self_adjoint, max_eigenpair, rayleigh_quotient,
)
from .witt import (
    FractionFieldElement, WittContext, WittVector, ghost_components, valuation, witt_add,
    witt_frobenius, witt_mul, witt_neg, witt_structure_polys, witt_verschiebung,
)

__all__ = [
    "GF", "FFElement", "FieldSpec", "UPoly", "find_roots", "pth_root", "InnerProductSpace",
    "adjoint", "gram_schmidt", "inner", "is_self_adjoint", "is_star_normal", "norm",
    "riesz_representative", "to_dual", "FieldTooSmallError", "Isocrystal1D",
    "IsocrystalEquivalence", "StandardIsocrystal", "classify", "solve_frobenius_twist",
    "verify_equivalence", "COMPLEX", "REAL", "RingHom", "resolve_comp_triple",
    "resolve_inv_pair", "SemilinearEquiv", "SemilinearMap", "apply", "compose", "inverse",
    "diagonalize_normal", "diagonalize_self_adjoint", "max_eigenpair", "rayleigh_quotient",
    "FractionFieldElement", "WittContext", "WittVector", "ghost_components", "valuation",
    "witt_add", "witt_frobenius", "witt_mul", "witt_neg", "witt_structure_polys",
    "witt_verschiebung",
]

__version__ = "0.1.0"
