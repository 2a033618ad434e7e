"""Tokenizer and recursive-descent parser for the IF/THEN rule notation.

Grammar (one rule per line)::

    rule       := "IF" premise "THEN" conclusion
    premise    := pterm ("and" pterm)*
    pterm      := IDENT ["⊂" IDENT]
                | "(" IDENT "equivalent" IDENT ")"
                | "(" IDENT ("," IDENT)* ("∈" | "in") IDENT ")"
    conclusion := IDENT | IDENT "=" IDENT
                | ("not" | "part_of") IDENT
                | IDENT IDENT+                       (named relation + target)
                | "(" IDENT ("," IDENT)* ("∈" | "in") IDENT ")"

Reserved words match case-insensitively. ``x ⊂ A and B THEN x = C`` is the
variable notation; :func:`normalize_notation` rewrites it to the plain form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .diagnostics import Diagnostic, DiagnosticError, error
from .rules import (
    NOT,
    PART_OF,
    Equivalence,
    Fact,
    Membership,
    Relation,
    RelationKeyword,
    Rule,
    VarEquals,
    VarSubset,
    identifier_problem,
    is_word_char,
    normalize,
)


class TokenKind(enum.Enum):
    IF = "IF"
    THEN = "THEN"
    AND = "and"
    EQUIVALENT = "equivalent"
    PART_OF = "part_of"
    NOT = "not"
    IN = "in"
    SUBSET = "⊂"
    EQUALS = "="
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    IDENT = "IDENT"


_KEYWORDS = {
    "if": TokenKind.IF,
    "then": TokenKind.THEN,
    "and": TokenKind.AND,
    "equivalent": TokenKind.EQUIVALENT,
    "part_of": TokenKind.PART_OF,
    "not": TokenKind.NOT,
    "in": TokenKind.IN,
}

_SYMBOLS = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    "∈": TokenKind.IN,
    "⊂": TokenKind.SUBSET,
    "=": TokenKind.EQUALS,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    column: int

    def describe(self) -> str:
        return repr(self.text) if self.kind is TokenKind.IDENT else self.kind.value


class RuleSyntaxError(DiagnosticError):
    pass


def tokenize(line: str, *, lineno: int = 1) -> list[Token]:
    """Split one rule line into tokens; raises RuleSyntaxError on bad input."""
    tokens: list[Token] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, col))
            i += 1
            continue
        if not is_word_char(ch):
            raise RuleSyntaxError(error(f"illegal character {ch!r}", line=lineno, column=col, source_text=line))
        j = i
        while j < n and is_word_char(line[j]):
            j += 1
        word = line[i:j]
        kind = _KEYWORDS.get(word.lower())
        if kind is None:
            problem = identifier_problem(normalize(word))
            if problem:
                raise RuleSyntaxError(error(problem, line=lineno, column=col, source_text=line))
            kind = TokenKind.IDENT
        tokens.append(Token(kind, word, col))
        i = j
    return tokens


class _Cursor:
    def __init__(self, tokens: Sequence[Token], lineno: int, source: str):
        self.tokens = list(tokens)
        self.pos = 0
        self.lineno = lineno
        self.source = source

    def peek(self, offset: int = 0) -> Optional[Token]:
        k = self.pos + offset
        return self.tokens[k] if k < len(self.tokens) else None

    def at(self, *kinds: TokenKind) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind in kinds

    def _end_column(self) -> int:
        if self.source:
            return len(self.source.rstrip()) + 1
        if self.tokens:
            last = self.tokens[-1]
            return last.column + len(last.text)
        return 1

    def fail(self, message: str, tok: Optional[Token] = None) -> RuleSyntaxError:
        tok = tok if tok is not None else self.peek()
        col = tok.column if tok is not None else self._end_column()
        return RuleSyntaxError(error(message, line=self.lineno, column=col, source_text=self.source))

    def expect(self, *kinds: TokenKind) -> Token:
        tok = self.peek()
        if tok is None or tok.kind not in kinds:
            found = "end of line" if tok is None else tok.describe()
            wanted = ", ".join(repr(k.value) for k in kinds)
            raise self.fail(f"expected {wanted} but found {found}")
        self.pos += 1
        return tok

    def fact(self) -> Fact:
        return Fact(self.expect(TokenKind.IDENT).text)


def _parse_group_tail(cur: _Cursor, first: Fact) -> Membership:
    members = [first]
    while cur.at(TokenKind.COMMA):
        cur.pos += 1
        members.append(cur.fact())
    cur.expect(TokenKind.IN)
    container = cur.fact()
    cur.expect(TokenKind.RPAREN)
    return Membership(tuple(members), container)


def _parse_pterm(cur: _Cursor):
    if cur.at(TokenKind.LPAREN):
        cur.pos += 1
        first = cur.fact()
        if cur.at(TokenKind.EQUIVALENT):
            cur.pos += 1
            other = cur.fact()
            cur.expect(TokenKind.RPAREN)
            return Equivalence(first, other)
        if cur.at(TokenKind.COMMA, TokenKind.IN):
            return _parse_group_tail(cur, first)
        cur.expect(TokenKind.EQUIVALENT, TokenKind.COMMA, TokenKind.IN)
    first = Fact(cur.expect(TokenKind.IDENT, TokenKind.LPAREN).text)
    if cur.at(TokenKind.SUBSET):
        cur.pos += 1
        return VarSubset(first, cur.fact())
    return first


def _parse_conclusion(cur: _Cursor):
    tok = cur.peek()
    if tok is None:
        raise cur.fail("empty conclusion")
    if tok.kind is TokenKind.LPAREN:
        cur.pos += 1
        return _parse_group_tail(cur, cur.fact())
    if tok.kind in (TokenKind.NOT, TokenKind.PART_OF):
        cur.pos += 1
        keyword = NOT if tok.kind is TokenKind.NOT else PART_OF
        return Relation(keyword, cur.fact())
    words = [cur.expect(TokenKind.IDENT, TokenKind.LPAREN, TokenKind.NOT, TokenKind.PART_OF)]
    if cur.at(TokenKind.EQUALS):
        cur.pos += 1
        return VarEquals(Fact(words[0].text), cur.fact())
    while cur.at(TokenKind.IDENT):
        words.append(cur.expect(TokenKind.IDENT))
    if len(words) == 1:
        return Fact(words[0].text)
    name = "".join(w.text for w in words[:-1])
    problem = identifier_problem(normalize(name))
    if problem:
        raise cur.fail(problem, words[0])
    return Relation(RelationKeyword.named(name), Fact(words[-1].text))


def _check_parens(cur: _Cursor) -> None:
    depth = 0
    opener = None
    for tok in cur.tokens:
        if tok.kind is TokenKind.LPAREN:
            if depth:
                raise cur.fail("nested parentheses are not supported", tok)
            depth, opener = 1, tok
        elif tok.kind is TokenKind.RPAREN:
            if not depth:
                raise cur.fail("unbalanced parentheses: unexpected ')'", tok)
            depth = 0
    if depth:
        raise cur.fail("unbalanced parentheses: missing ')'", opener)


def parse_rule(tokens: Sequence[Token], *, lineno: int = 1, source_text: str = "") -> Rule:
    """Parse a token sequence into an unclassified Rule."""
    cur = _Cursor(tokens, lineno, source_text)
    _check_parens(cur)
    cur.expect(TokenKind.IF)
    if cur.at(TokenKind.THEN) or cur.peek() is None:
        raise cur.fail("empty premise")
    premise = [_parse_pterm(cur)]
    while cur.at(TokenKind.AND):
        cur.pos += 1
        premise.append(_parse_pterm(cur))
    cur.expect(TokenKind.THEN, TokenKind.AND)
    conclusion = _parse_conclusion(cur)
    extra = cur.peek()
    if extra is not None:
        if extra.kind is TokenKind.AND:
            raise cur.fail("multi-term conclusions are not supported")
        raise cur.fail(f"expected end of line but found {extra.describe()}")
    return Rule(tuple(premise), conclusion, source_text=source_text, line=lineno)


def parse_line(line: str, *, lineno: int = 1) -> Rule:
    """Tokenize and parse one line; raises RuleSyntaxError."""
    try:
        return parse_rule(tokenize(line, lineno=lineno), lineno=lineno, source_text=line)
    except ValueError as exc:
        # identifier validation inside Fact/RelationKeyword
        raise RuleSyntaxError(error(str(exc), line=lineno, source_text=line)) from exc


def iter_rule_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield (line number, line) for lines holding a rule; skips blanks and # comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, raw.rstrip("\r\n")


def parse_lines(lines: Iterable[tuple[int, str]] | str) -> tuple[list[Rule], list[Diagnostic]]:
    """Parse many lines, isolating failures per line."""
    if isinstance(lines, str):
        lines = iter_rule_lines(lines)
    rules: list[Rule] = []
    diagnostics: list[Diagnostic] = []
    for lineno, line in lines:
        try:
            rules.append(parse_line(line, lineno=lineno))
        except RuleSyntaxError as exc:
            diagnostics.append(exc.diagnostic)
    return rules, diagnostics


def normalize_notation(rule: Rule) -> Rule:
    """Rewrite ``IF x ⊂ A and B THEN x = C`` into ``IF A and B THEN C``."""
    subsets = [t for t in rule.premise if isinstance(t, VarSubset)]
    concl = rule.conclusion
    if not subsets and not isinstance(concl, VarEquals):
        return rule
    variables = {t.variable for t in subsets}
    if not subsets or not isinstance(concl, VarEquals) or variables != {concl.variable}:
        raise RuleSyntaxError(error("unbound notation variable", line=rule.line, source_text=rule.source_text))
    premise = tuple(t.fact if isinstance(t, VarSubset) else t for t in rule.premise)
    return Rule(premise, concl.fact, rule.kind, rule.source_text, rule.line)
