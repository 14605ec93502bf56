"""Descriptive names: conjunctive attribute queries with =, order, and regex.

Grammar (also the wire syntax used by the CLI and HTTP API):

    query := '*' | term ('&' term)*
    term  := tag op value | tag '~' '/' regex '/'
    op    := '=' | '<' | '<=' | '>' | '>='
    value := bare token | '"' text '"'

Whitespace around terms and '&' is ignored. Bare values that look like
integers or ISO dates are auto-typed; quoted values are always text. The
regex dialect is Python's ``re`` with search semantics (anchors available,
full match not required), case-sensitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .context import ManyValuedContext
from .errors import IdentifierError, QuerySyntaxError, QueryTypeError
from .scaling import NOMINAL, ORDINAL, ScalePlan
from .values import DATE, INTEGER, TEXT, AttributeValue, parse_literal, would_autotype

EQ, LT, LE, GT, GE, MATCH = "=", "<", "<=", ">", ">=", "~"
ORDER_OPS = (LT, LE, GT, GE)


class _Unrepresentable:
    """Returned when a query has no exact counterpart among scaled attributes."""

    def __repr__(self):
        return "UNREPRESENTABLE"

    def __bool__(self):
        return False


UNREPRESENTABLE = _Unrepresentable()


@dataclass(frozen=True)
class Predicate:
    tag: str
    op: str
    operand: Union[AttributeValue, str]  # str only for regex patterns

    def __post_init__(self):
        if self.op == MATCH and not isinstance(self.operand, str):
            raise TypeError("regex predicate needs a pattern string")
        if self.op != MATCH and not isinstance(self.operand, AttributeValue):
            raise TypeError("comparison predicate needs an AttributeValue")
        if self.op in ORDER_OPS and self.operand.kind not in (INTEGER, DATE):
            raise QueryTypeError(
                f"order operator {self.op!r} needs an integer or date operand, "
                f"got {self.operand.kind}"
            )


@dataclass(frozen=True)
class DescriptiveName:
    """A conjunction of predicates; the match-everything query has is_all set."""

    terms: Tuple[Predicate, ...]
    is_all: bool = False

    def __post_init__(self):
        if self.is_all and self.terms:
            raise ValueError("the all-query carries no terms")
        if not self.is_all and not self.terms:
            raise ValueError("empty conjunction must be the all-query")

    @classmethod
    def match_all(cls) -> "DescriptiveName":
        return cls((), is_all=True)


_TAG_RE = re.compile(r"[A-Za-z0-9_.\-]+")
_BARE_RE = re.compile(r"[^\s&\"]+")


class _Scanner:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.src)

    def fail(self, message: str, expected: Tuple[str, ...] = ()):
        raise QuerySyntaxError(message, self.pos, expected)

    def take(self, pattern: re.Pattern) -> Optional[str]:
        m = pattern.match(self.src, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group(0)


def parse(src: str) -> DescriptiveName:
    """Parse descriptive-name text; errors carry the byte offset."""
    sc = _Scanner(src)
    sc.skip_ws()
    if sc.at_end():
        sc.fail("empty query", ("*", "tag"))
    if sc.src[sc.pos] == "*":
        sc.pos += 1
        sc.skip_ws()
        if not sc.at_end():
            sc.fail("trailing input after '*'", ("end of input",))
        return DescriptiveName.match_all()

    terms = [_parse_term(sc)]
    while True:
        sc.skip_ws()
        if sc.at_end():
            return DescriptiveName(tuple(terms))
        if sc.src[sc.pos] != "&":
            sc.fail("expected conjunction or end", ("&", "end of input"))
        sc.pos += 1
        sc.skip_ws()
        terms.append(_parse_term(sc))


def _parse_term(sc: _Scanner) -> Predicate:
    tag = sc.take(_TAG_RE)
    if tag is None:
        sc.fail("expected a tag", ("tag",))
    if sc.at_end():
        sc.fail("expected an operator", ("=", "<", "<=", ">", ">=", "~"))
    c = sc.src[sc.pos]
    if c == "~":
        sc.pos += 1
        return Predicate(tag, MATCH, _parse_regex(sc))
    if c in "<>":
        sc.pos += 1
        op = c
        if not sc.at_end() and sc.src[sc.pos] == "=":
            sc.pos += 1
            op += "="
    elif c == "=":
        sc.pos += 1
        op = EQ
    else:
        sc.fail(f"unknown operator {c!r}", ("=", "<", "<=", ">", ">=", "~"))
    value = _parse_value(sc)
    if op in ORDER_OPS and value.kind not in (INTEGER, DATE):
        raise QueryTypeError(
            f"order operator {op!r} on tag {tag!r} needs an integer or date value"
        )
    return Predicate(tag, op, value)


def _parse_value(sc: _Scanner) -> AttributeValue:
    if sc.at_end():
        sc.fail("expected a value", ("value",))
    if sc.src[sc.pos] == '"':
        start = sc.pos
        sc.pos += 1
        end = sc.src.find('"', sc.pos)
        if end < 0:
            sc.pos = start
            sc.fail("unterminated quoted value", ('"',))
        raw = sc.src[sc.pos:end]
        sc.pos = end + 1
        return AttributeValue(TEXT, raw)
    raw = sc.take(_BARE_RE)
    if raw is None:
        sc.fail("expected a value", ("value",))
    return parse_literal(raw)


def _parse_regex(sc: _Scanner) -> str:
    if sc.at_end() or sc.src[sc.pos] != "/":
        sc.fail("regex must be delimited by '/'", ("/",))
    sc.pos += 1
    out = []
    while True:
        if sc.at_end():
            sc.fail("unterminated regex", ("/",))
        c = sc.src[sc.pos]
        if c == "\\" and sc.pos + 1 < len(sc.src) and sc.src[sc.pos + 1] == "/":
            out.append("/")
            sc.pos += 2
            continue
        if c == "/":
            sc.pos += 1
            break
        out.append(c)
        sc.pos += 1
    pattern = "".join(out)
    try:
        re.compile(pattern)
    except re.error as exc:
        sc.fail(f"bad regex: {exc}", ())
    return pattern


def render(q: DescriptiveName) -> str:
    """Inverse of parse: render(q) reparses to a structurally equal query."""
    if q.is_all:
        return "*"
    parts = []
    for p in q.terms:
        if p.op == MATCH:
            escaped = p.operand.replace("/", "\\/")
            parts.append(f"{p.tag}~/{escaped}/")
        else:
            parts.append(f"{p.tag}{p.op}{_render_value(p.operand)}")
    return " & ".join(parts)


def _render_value(v: AttributeValue) -> str:
    s = v.render()
    if v.kind == TEXT and (s == "" or would_autotype(s) or _BARE_RE.fullmatch(s) is None):
        if '"' in s:
            raise ValueError(f"text value {s!r} cannot be rendered in query syntax")
        return f'"{s}"'
    return s


def _match_one(p: Predicate, v: AttributeValue, tag: str, obj: str) -> bool:
    if v.is_missing:
        return False
    if p.op == EQ:
        return v == p.operand
    if p.op == MATCH:
        if v.kind != TEXT:
            raise QueryTypeError(
                f"regex on tag {tag!r}: object {obj!r} has a {v.kind} value"
            )
        return re.search(p.operand, v.value) is not None
    if v.kind != p.operand.kind:
        raise QueryTypeError(
            f"order comparison on tag {tag!r}: object {obj!r} has a {v.kind} value, "
            f"operand is {p.operand.kind}"
        )
    if p.op == LT:
        return v.value < p.operand.value
    if p.op == LE:
        return v.value <= p.operand.value
    if p.op == GT:
        return v.value > p.operand.value
    return v.value >= p.operand.value


def evaluate(q: DescriptiveName, mv: ManyValuedContext, scope=None) -> frozenset:
    """Objects in scope satisfying every predicate; missing never matches.

    Equality terms are answered from index postings; order and regex terms
    scan the surviving candidates.
    """
    if scope is None:
        candidates = frozenset(mv.objects)
    else:
        candidates = frozenset(scope)
        for g in candidates:
            if not mv.has_object(g):
                raise IdentifierError("object", g)
    if q.is_all:
        return candidates
    for p in q.terms:
        if p.tag not in mv.sorts:
            raise IdentifierError("tag", p.tag)
        if p.op == EQ:
            candidates = candidates & mv.index(p.tag).lookup(p.operand)
        else:
            candidates = frozenset(
                g for g in candidates if _match_one(p, mv.value(g, p.tag), p.tag, g)
            )
        if not candidates:
            break
    return candidates


def to_scaled_attributes(q: DescriptiveName, plan: ScalePlan):
    """Scaled attribute names equivalent to q, or UNREPRESENTABLE.

    Equality terms need a nominal scale on their tag; <= terms need an
    ordinal scale with the operand among the cut values. Anything else
    (regex, other order operators, skipped sorts) has no exact image and
    the query can only be evaluated extensionally.
    """
    if q.is_all:
        return frozenset()
    names = set()
    for p in q.terms:
        s = plan.scales.get(p.tag)
        if s is None:
            return UNREPRESENTABLE
        if p.op == EQ and s.kind == NOMINAL:
            names.add(f"{p.tag}={p.operand.render()}")
        elif p.op == LE and s.kind == ORDINAL and s.cuts and p.operand in s.cuts:
            names.add(f"{p.tag}<={p.operand.render()}")
        else:
            return UNREPRESENTABLE
    return frozenset(names)
