"""
weylgraphs - commuting graphs of reflections in Weyl groups

Bichromatic graphs, a canonical-labeling isomorphism engine, root systems
and their Weyl graphs, the Kneser/symplectic/orthogonal families, and the
local recognition toolkit for graphs locally like W(F4) and W(B4).
"""

__version__ = '1.0.0'

from .errors import (ExprSyntaxError, InputError, ResourceError, StructureError,  # noqa: F401
                     UnsupportedInputError, WeylGraphError)
from .graph import LONG, SHORT, BichromaticGraph, Color, ContractedGraph  # noqa: F401
from .iso import are_isomorphic, automorphism_group, canonical_form  # noqa: F401
from .roots import root_system, weyl_graph  # noqa: F401
