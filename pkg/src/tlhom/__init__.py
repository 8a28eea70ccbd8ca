"""
tlhom - homology of Temperley-Lieb algebras

Exact arithmetic over Z, Q and F_p for planar diagrams, the Temperley-Lieb
algebra, the complexes W(n), C(m), D(m) and Tor/Ext of the trivial module.
"""

__version__ = "0.1.0"

from .coeff import DirectA, FromUnit, ParamContext, RingSpec, make_context, parse_ring_tag
from .complex import ChainComplex, build_C, build_D, build_W
from .homology import HomologyGroup, ext_trivial, free_resolution, tor_trivial, trivial_module
from .tlalg import TLElement, multiply

__all__ = [
    "DirectA",
    "FromUnit",
    "ParamContext",
    "RingSpec",
    "make_context",
    "parse_ring_tag",
    "ChainComplex",
    "build_C",
    "build_D",
    "build_W",
    "HomologyGroup",
    "ext_trivial",
    "free_resolution",
    "tor_trivial",
    "trivial_module",
    "TLElement",
    "multiply",
]
