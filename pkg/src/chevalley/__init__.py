"""Exact computations with Chevalley-type groups, Weyl modules and their coordinate rings."""

from .exactring import LaurentPoly, RingDescriptor, q_binom, q_int
from .rootdatum import RootDatum, load_datum

__all__ = ["LaurentPoly", "RingDescriptor", "RootDatum", "load_datum", "q_binom", "q_int"]
