"""secantkit: exact verification of syzygy conditions, secant-variety
geometry, ideal-sheaf cohomology vanishing, and blow-up Picard arithmetic,
over Q (with a GF(p) fast path), served over HTTP with a thin CLI."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, field_from_tag
from .groebner import DegreeCapExceeded, Ideal, kernel_of_map
from .poly import GREVLEX, LEX, Monomial, MonomialOrder, Polynomial, Ring, block_order

__all__ = [
    "QQ",
    "PrimeField",
    "field_from_tag",
    "DegreeCapExceeded",
    "Ideal",
    "kernel_of_map",
    "GREVLEX",
    "LEX",
    "Monomial",
    "MonomialOrder",
    "Polynomial",
    "Ring",
    "block_order",
    "__version__",
]
