"""Quantum invariants of handlebody-links from trivalent spatial-graph diagrams."""

from .diagram import (DiagramCode, DiagramError, ParseError, ValidationError,
                      load_path, parse, parse_json, serialize, serialize_json)
from .evaluate import bracket, reduce_planar
from .invariant import (InvariantReport, enumerate_colorings, four_one_closed_form,
                        hk_invariant, split_reducible, trivial_genus2_closed_form,
                        yokota_value)
from .skein import AdmissibilityError, EvaluationError, QuantumParams
from .tloracle import brute_bracket, jw_expand

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "DiagramCode", "DiagramError", "EvaluationError",
    "InvariantReport", "ParseError", "QuantumParams", "ValidationError",
    "bracket", "brute_bracket", "enumerate_colorings", "four_one_closed_form",
    "hk_invariant", "jw_expand", "load_path", "parse", "parse_json",
    "reduce_planar", "serialize", "serialize_json", "split_reducible",
    "trivial_genus2_closed_form", "yokota_value",
]
