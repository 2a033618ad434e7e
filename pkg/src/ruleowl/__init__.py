"""Convert IF/THEN rules into OWL ontologies and extract them back."""

from .diagnostics import Diagnostic, Severity
from .extract import extract_rules
from .ontology import (
    ClassDecl,
    DatatypePropertyDecl,
    FragmentDelta,
    LinkDecl,
    LinkKind,
    OntologyGraph,
    graph_isomorphic,
    merge_delta,
)
from .parser import normalize_notation, parse_line, parse_lines, parse_rule, tokenize
from .rules import Fact, Rule, RuleKind, canonical_form
from .serializer import Format, SerializationConfig, parse_subset, serialize, structural_equal
from .transform import Mode, TransformConfig, classify, convert, refine, transform

__all__ = [
    "ClassDecl", "DatatypePropertyDecl", "Diagnostic", "Fact", "Format", "FragmentDelta",
    "LinkDecl", "LinkKind", "Mode", "OntologyGraph", "Rule", "RuleKind", "SerializationConfig",
    "Severity", "TransformConfig", "canonical_form", "classify", "convert", "extract_rules",
    "graph_isomorphic", "merge_delta", "normalize_notation", "parse_line", "parse_lines",
    "parse_rule", "parse_subset", "refine", "serialize", "structural_equal", "tokenize",
    "transform",
]
