"""Verification workbench for finite order structures.

Finite transitive relations with a minimum element, their Stone-style
duality with finite spaces, interpolator morphisms, saturation frames,
regular-open enveloping algebras, and tight character spectra, all
checked exhaustively at desk scale.
"""

from . import axioms, lab, morphisms, saturation, spectrum, stone, suites, tight
from .core import (
    MAX_SIZE,
    DerivedRels,
    P0Set,
    SubsetMask,
    derived_relations,
    dump_structure,
    join,
    load_structure,
    meet,
    order_predicates,
    p0set,
    relative_complement,
)
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "MAX_SIZE",
    "Check",
    "DerivedRels",
    "P0Set",
    "Report",
    "SubsetMask",
    "axioms",
    "derived_relations",
    "dump_structure",
    "join",
    "lab",
    "load_structure",
    "meet",
    "morphisms",
    "order_predicates",
    "p0set",
    "relative_complement",
    "saturation",
    "spectrum",
    "stone",
    "suites",
    "tight",
    "__version__",
]
