"""Bi-orders on free groups, surface groups and the pure surface braid kernel."""

__version__ = "0.1.0"

from .words import Generator, GeneratorMap, Word, WordParseError, abelianize, gens, is_h1_trivial, parse_word
from .series import Order, Series, VariableOrder, mul, series_compare
from .magnus import (OrderedGroup, Report, UndecidedAtCap, check_cone_axioms, check_gt_absence,
                     check_order_preserved_by, extension_compare, free_group, magnus_compare,
                     magnus_expand)
from .surface import (SurfaceElem, SurfacePresentation, build_reduction_system, is_trivial,
                      pi1_compare, presentation, surface_expand, surface_group)
from .knorder import (ActionLabel, FGen, KnElement, SemidirectOrderDatum, fgen_compare, kn_compare,
                      parse_kn, psi_action, semidirect_compare)
from .braid import (BraidWord, GtCertificate, artin_action, braid_equal, check_delta_relation,
                    delta_word, make_gt_certificate, mirror, presentation_equal,
                    verify_generalized_torsion)

__all__ = [
    "Generator",
    "GeneratorMap",
    "Word",
    "WordParseError",
    "abelianize",
    "gens",
    "is_h1_trivial",
    "parse_word",
    "Order",
    "Series",
    "VariableOrder",
    "mul",
    "series_compare",
    "OrderedGroup",
    "Report",
    "UndecidedAtCap",
    "check_cone_axioms",
    "check_gt_absence",
    "check_order_preserved_by",
    "extension_compare",
    "free_group",
    "magnus_compare",
    "magnus_expand",
    "SurfaceElem",
    "SurfacePresentation",
    "build_reduction_system",
    "is_trivial",
    "pi1_compare",
    "presentation",
    "surface_expand",
    "surface_group",
    "ActionLabel",
    "FGen",
    "KnElement",
    "SemidirectOrderDatum",
    "fgen_compare",
    "kn_compare",
    "parse_kn",
    "psi_action",
    "semidirect_compare",
    "BraidWord",
    "GtCertificate",
    "artin_action",
    "braid_equal",
    "check_delta_relation",
    "delta_word",
    "make_gt_certificate",
    "mirror",
    "presentation_equal",
    "verify_generalized_torsion",
]
