"""Rule abstract syntax: facts, premise/conclusion terms, rule kinds.

All values are frozen dataclasses. Identifiers are normalized on
construction (whitespace deleted, NFC), so ``Fact("has Vechicle")`` and
``Fact("hasVechicle")`` are the same fact.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field
from typing import Optional, Union

RESERVED_WORDS = frozenset({"if", "then", "and", "equivalent", "part_of", "not", "in"})

# XML 1.0 (5th ed.) NameStartChar ranges, minus ':' (NCName).
_NAME_START_RANGES = (
    (0xC0, 0xD6), (0xD8, 0xF6), (0xF8, 0x2FF), (0x370, 0x37D), (0x37F, 0x1FFF),
    (0x200C, 0x200D), (0x2070, 0x218F), (0x2C00, 0x2FEF), (0x3001, 0xD7FF),
    (0xF900, 0xFDCF), (0xFDF0, 0xFFFD), (0x10000, 0xEFFFF),
)
_NAME_EXTRA_RANGES = ((0x300, 0x36F), (0x203F, 0x2040))


def _is_name_start(ch: str) -> bool:
    if ch == "_" or ("A" <= ch <= "Z") or ("a" <= ch <= "z"):
        return True
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _NAME_START_RANGES)


def _is_name_char(ch: str) -> bool:
    if _is_name_start(ch) or ch in "-.0123456789" or ch == "·":
        return True
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _NAME_EXTRA_RANGES)


def is_ncname(text: str) -> bool:
    """True if ``text`` is a legal XML NCName (usable as an rdf:ID)."""
    return bool(text) and _is_name_start(text[0]) and all(_is_name_char(c) for c in text[1:])


def normalize(name: str) -> str:
    """Delete all whitespace and NFC-normalize. Idempotent."""
    return unicodedata.normalize("NFC", "".join(name.split()))


def is_word_char(ch: str) -> bool:
    return ch == "_" or ch.isalpha() or unicodedata.category(ch) == "Nd"


def identifier_problem(name: str) -> Optional[str]:
    """Why ``name`` (already normalized) is not a valid identifier, or None."""
    if not name:
        return "empty identifier"
    if name.lower() in RESERVED_WORDS:
        return f"reserved word {name!r} cannot be used as an identifier"
    bad = next((c for c in name if not is_word_char(c)), None)
    if bad is not None:
        return f"illegal character {bad!r} in identifier {name!r}"
    if name[0] != "_" and not name[0].isalpha():
        return f"identifier {name!r} must start with a letter or underscore"
    # '__' is the separator of qualified property IDs in serialized output
    if "__" in name:
        return f"identifier {name!r} must not contain '__'"
    if not is_ncname(name):
        return f"identifier {name!r} is not a legal XML name"
    return None


@dataclass(frozen=True, order=True)
class Fact:
    name: str

    def __post_init__(self) -> None:
        norm = normalize(self.name)
        problem = identifier_problem(norm)
        if problem:
            raise ValueError(problem)
        object.__setattr__(self, "name", norm)

    def __str__(self) -> str:
        return self.name


class RelationKind(enum.Enum):
    EQUIVALENT = "equivalent"
    MEMBER_OF = "in"
    PART_OF = "part_of"
    NOT = "not"
    NAMED = "named"


@dataclass(frozen=True)
class RelationKeyword:
    kind: RelationKind
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind is RelationKind.NAMED:
            if self.name is None:
                raise ValueError("NAMED relation needs a name")
            norm = normalize(self.name)
            problem = identifier_problem(norm)
            if problem:
                raise ValueError(problem)
            object.__setattr__(self, "name", norm)
        elif self.name is not None:
            raise ValueError(f"{self.kind.name} relation takes no name")

    @classmethod
    def named(cls, name: str) -> "RelationKeyword":
        return cls(RelationKind.NAMED, name)

    def render(self) -> str:
        return self.name if self.kind is RelationKind.NAMED else self.kind.value


PART_OF = RelationKeyword(RelationKind.PART_OF)
NOT = RelationKeyword(RelationKind.NOT)


@dataclass(frozen=True)
class Equivalence:
    """``(left equivalent right)`` premise term."""

    left: Fact
    right: Fact


@dataclass(frozen=True)
class Membership:
    """``(m1, m2, ... in container)``; usable in premise and conclusion."""

    members: tuple[Fact, ...]
    container: Fact

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("membership needs at least one member")
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class VarSubset:
    """``x ⊂ Fact`` premise term of the variable notation."""

    variable: Fact
    fact: Fact


@dataclass(frozen=True)
class VarEquals:
    """``x = Fact`` conclusion of the variable notation."""

    variable: Fact
    fact: Fact


@dataclass(frozen=True)
class Relation:
    """Conclusion made of a relation keyword and its target fact."""

    keyword: RelationKeyword
    target: Fact


PremiseTerm = Union[Fact, Equivalence, Membership, VarSubset]
Conclusion = Union[Fact, Relation, Membership, VarEquals]


class RuleKind(enum.Enum):
    CLASS_WITH_PROPERTIES = "class_with_properties"
    EQUIVALENCE = "equivalence"
    OBJECT_RELATION = "object_relation"
    PART_OF = "part_of"
    COMPLEMENT = "complement"
    BARE_SUBSUMPTION = "bare_subsumption"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class Rule:
    premise: tuple[PremiseTerm, ...]
    conclusion: Conclusion
    kind: RuleKind = RuleKind.UNCLASSIFIED
    source_text: str = field(default="", compare=False)
    line: int = field(default=1, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", tuple(self.premise))
        if not self.premise:
            raise ValueError("empty premise")
        if self.conclusion is None:
            raise ValueError("missing conclusion")

    def with_kind(self, kind: RuleKind) -> "Rule":
        return Rule(self.premise, self.conclusion, kind, self.source_text, self.line)

    def facts(self) -> set[Fact]:
        """Every fact mentioned by the rule."""
        out: set[Fact] = set()
        for term in (*self.premise, self.conclusion):
            out.update(_term_facts(term))
        return out

    def __str__(self) -> str:
        return render(self)


def _term_facts(term) -> tuple[Fact, ...]:
    if isinstance(term, Fact):
        return (term,)
    if isinstance(term, Equivalence):
        return (term.left, term.right)
    if isinstance(term, Membership):
        return (*term.members, term.container)
    if isinstance(term, (VarSubset, VarEquals)):
        return (term.fact,)
    if isinstance(term, Relation):
        return (term.target,)
    raise TypeError(f"not a rule term: {term!r}")


def render_term(term, *, sort_members: bool = True) -> str:
    if isinstance(term, Fact):
        return term.name
    if isinstance(term, Equivalence):
        return f"({term.left} equivalent {term.right})"
    if isinstance(term, Membership):
        names = [m.name for m in term.members]
        if sort_members:
            names.sort()
        return f"({', '.join(names)} in {term.container})"
    if isinstance(term, VarSubset):
        return f"{term.variable} ⊂ {term.fact}"
    if isinstance(term, VarEquals):
        return f"{term.variable} = {term.fact}"
    if isinstance(term, Relation):
        return f"{term.keyword.render()} {term.target}"
    raise TypeError(f"not a rule term: {term!r}")


def render(rule: Rule, *, sort: bool = True) -> str:
    """Single-line rendering; ``sort`` orders conjuncts and member lists."""
    terms = [render_term(t, sort_members=sort) for t in rule.premise]
    if sort:
        terms.sort()
    return f"IF {' and '.join(terms)} THEN {render_term(rule.conclusion, sort_members=sort)}"


def canonical_form(rule: Rule) -> str:
    if rule.kind is RuleKind.UNCLASSIFIED:
        raise ValueError("cannot canonicalize unclassified rule")
    if rule.kind is RuleKind.EQUIVALENCE:
        rule = _orient_equivalence(rule)
    return render(rule, sort=True)


def _orient_equivalence(rule: Rule) -> Rule:
    # equivalence is symmetric, so the smaller class always leads
    (eq,) = [t for t in rule.premise if isinstance(t, Equivalence)]
    (mem,) = [t for t in rule.premise if isinstance(t, Membership)]
    a, b = sorted((eq.left, eq.right))
    return Rule(
        (Equivalence(a, b), Membership(mem.members, a)),
        Membership(rule.conclusion.members, b),
        rule.kind,
        rule.source_text,
        rule.line,
    )
