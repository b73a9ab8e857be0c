"""Concrete syntax: lexer, parser and pretty-printer.

Grammar (one program per file, `--` line comments):

    type    := sum ("->" type)?                      -- "->" right-assoc
    sum     := prod ("+" sum)?
    prod    := tatom ("*" prod)?
    tatom   := "0" | "1" | "Bool" | "Nat" | IDENT
             | "mu" IDENT "." type | "(" type ")"

    term    := "fn" IDENT ":" type "=>" term
             | "let" IDENT "=" term "in" term
             | "case" term "of" "inl" IDENT "=>" term "|" "inr" IDENT "=>" term
             | orterm
    orterm  := appterm ("or" "[" rational "]" appterm)*     -- left-assoc
    appterm := operand+                                     -- left-assoc
    operand := ("fst" | "snd" | "unfold") operand
             | ("inl" | "inr") ("[" type "]")? operand
             | ("fold" | "fix") "[" type "]" operand
             | atom
    atom    := IDENT | "()" | "tt" | "ff" | INT
             | "(" term ")" | "(" term "," term ")"
    rational:= INT "/" INT | DECIMAL | INT

Notes.  `tt`/`ff` abbreviate the annotated injections `inr[Bool] ()` /
`inl[Bool] ()`; an integer literal in term position abbreviates the
corresponding Nat value; `fix[A -> B] M` expands to the fixpoint combinator
applied to M; a unary keyword also accepts a trailing fn/let/case without
parentheses.  Decimal probability literals are read as exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import prelude
from .syntax import (
    App, Arrow, Case, Fold, Inj, Lam, Let, Mu, Or, Pair, Prod, Proj, Sum,
    Term, TVar, Type, Unfold, Var, types_equal,
)


class ParseError(Exception):
    """Syntax error with 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


# --------------------------------------------------------------------------
# Lexer
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Tok:
    kind: str  # 'ident', 'int', 'decimal', 'punct', 'eof'
    text: str
    line: int
    col: int


_KEYWORDS = frozenset({
    "fn", "let", "in", "case", "of", "inl", "inr", "fold", "unfold",
    "fix", "or", "mu", "tt", "ff", "Bool", "Nat",
})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>--[^\n]*)
  | (?P<nl>\n)
  | (?P<decimal>\d+\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>=>|->|\(\)|[()\[\],.:|+*/=])
""", re.VERBOSE)


def _lex(source: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        text = m.group(0)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(text)
        else:
            toks.append(_Tok(kind, text, line, col))
            col += len(text)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text or t.kind == "eof":
            raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def expect_ident(self) -> str:
        t = self.peek()
        if t.kind != "ident" or t.text in _KEYWORDS:
            raise self.error(f"expected an identifier, found {t.text or 'end of input'!r}")
        return self.next().text

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    # ---------------------------------------------------------------- types

    def type_(self) -> Type:
        left = self.sum_()
        if self.at("->"):
            self.next()
            return Arrow(left, self.type_())
        return left

    def sum_(self) -> Type:
        left = self.prod_()
        if self.at("+"):
            self.next()
            return Sum(left, self.sum_())
        return left

    def prod_(self) -> Type:
        left = self.tatom()
        if self.at("*"):
            self.next()
            return Prod(left, self.prod_())
        return left

    def tatom(self) -> Type:
        t = self.peek()
        if t.text == "0" and t.kind == "int":
            self.next()
            return prelude.ZERO_T
        if t.text == "1" and t.kind == "int":
            self.next()
            return prelude.UNIT_T
        if t.text == "Bool":
            self.next()
            return prelude.BOOL_T
        if t.text == "Nat":
            self.next()
            return prelude.NAT_T
        if t.text == "mu":
            self.next()
            var = self.expect_ident()
            self.expect(".")
            return Mu(var, self.type_())
        if t.text == "(":
            self.next()
            inner = self.type_()
            self.expect(")")
            return inner
        if t.kind == "ident" and t.text not in _KEYWORDS:
            return TVar(self.next().text)
        raise self.error(f"expected a type, found {t.text or 'end of input'!r}")

    # ---------------------------------------------------------------- terms

    def term(self) -> Term:
        t = self.peek()
        if t.text == "fn":
            self.next()
            var = self.expect_ident()
            self.expect(":")
            ann = self.type_()
            self.expect("=>")
            return Lam(var, ann, self.term())
        if t.text == "let":
            self.next()
            var = self.expect_ident()
            self.expect("=")
            bound = self.term()
            self.expect("in")
            return Let(var, bound, self.term())
        if t.text == "case":
            self.next()
            scrutinee = self.term()
            self.expect("of")
            self.expect("inl")
            x1 = self.expect_ident()
            self.expect("=>")
            n1 = self.term()
            self.expect("|")
            self.expect("inr")
            x2 = self.expect_ident()
            self.expect("=>")
            n2 = self.term()
            return Case(scrutinee, x1, n1, x2, n2)
        return self.orterm()

    def orterm(self) -> Term:
        left = self.appterm()
        while self.at("or"):
            self.next()
            self.expect("[")
            p = self.rational()
            self.expect("]")
            right = self.appterm()
            left = Or(p, left, right)
        return left

    def rational(self) -> Fraction:
        t = self.peek()
        if t.kind == "decimal":
            self.next()
            return Fraction(t.text)
        if t.kind == "int":
            self.next()
            num = int(t.text)
            if self.at("/"):
                self.next()
                den = self.peek()
                if den.kind != "int":
                    raise self.error("expected a denominator")
                self.next()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.col)
                return Fraction(num, int(den.text))
            return Fraction(num)
        raise self.error(f"expected a rational, found {t.text or 'end of input'!r}")

    _UNARY = frozenset({"fst", "snd", "inl", "inr", "fold", "unfold", "fix"})

    def _starts_operand(self) -> bool:
        t = self.peek()
        if t.kind in ("int",):
            return True
        if t.kind == "ident":
            return t.text in self._UNARY or t.text not in _KEYWORDS or t.text in ("tt", "ff")
        return t.text in ("(", "()")

    def appterm(self) -> Term:
        out = self.operand()
        while self._starts_operand():
            out = App(out, self.operand())
        return out

    def _unary_arg(self) -> Term:
        # allow a trailing binder form without parentheses: `inl fn x:1 => x`
        if self.peek().text in ("fn", "let", "case"):
            return self.term()
        return self.operand()

    def operand(self) -> Term:
        t = self.peek()
        if t.text == "fst":
            self.next()
            return Proj(1, self._unary_arg())
        if t.text == "snd":
            self.next()
            return Proj(2, self._unary_arg())
        if t.text in ("inl", "inr"):
            self.next()
            ann = None
            if self.at("["):
                self.next()
                ann = self.type_()
                self.expect("]")
            index = 1 if t.text == "inl" else 2
            return Inj(index, self._unary_arg(), ann)
        if t.text == "fold":
            self.next()
            self.expect("[")
            ann = self.type_()
            self.expect("]")
            return Fold(ann, self._unary_arg())
        if t.text == "unfold":
            self.next()
            return Unfold(self._unary_arg())
        if t.text == "fix":
            self.next()
            self.expect("[")
            ann = self.type_()
            self.expect("]")
            if not isinstance(ann, Arrow):
                raise self.error("fix needs a function type A -> B in brackets")
            return App(prelude.fix_term(ann.dom, ann.cod), self._unary_arg())
        return self.atom()

    def atom(self) -> Term:
        t = self.peek()
        if t.text == "()":
            self.next()
            return prelude.UNIT
        if t.text == "tt":
            self.next()
            return prelude.TT
        if t.text == "ff":
            self.next()
            return prelude.FF
        if t.kind == "int":
            self.next()
            return prelude.nat_value(int(t.text))
        if t.kind == "ident" and t.text not in _KEYWORDS:
            return Var(self.next().text)
        if t.text == "(":
            self.next()
            first = self.term()
            if self.at(","):
                self.next()
                second = self.term()
                self.expect(")")
                return Pair(first, second)
            self.expect(")")
            return first
        raise self.error(f"expected a term, found {t.text or 'end of input'!r}")


def parse_term(source: str) -> Term:
    """Parse a complete term; raises ParseError with position on bad input."""
    p = _Parser(_lex(source))
    out = p.term()
    if p.peek().kind != "eof":
        raise p.error(f"unexpected trailing input {p.peek().text!r}")
    return out


def parse_type(source: str) -> Type:
    p = _Parser(_lex(source))
    out = p.type_()
    if p.peek().kind != "eof":
        raise p.error(f"unexpected trailing input {p.peek().text!r}")
    return out


def parse_file(path: str) -> Term:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_term(fh.read())


# --------------------------------------------------------------------------
# Pretty-printer
# --------------------------------------------------------------------------

# Term precedence levels: 0 binder forms, 1 or-chains, 2 application,
# 3 unary keyword operands, 4 atoms.

def _is_unit_lam(t: Term) -> bool:
    return (isinstance(t, Lam) and t.body == Var(t.var)
            and types_equal(t.ann, prelude.ZERO_T))


def _bool_sugar(t: Term) -> str | None:
    if (isinstance(t, Inj) and t.ann is not None
            and types_equal(t.ann, prelude.BOOL_T) and _is_unit_lam(t.value)):
        return "ff" if t.index == 1 else "tt"
    return None


def _nat_sugar(t: Term) -> str | None:
    # only for fully annotated chains, so parsing the numeral reproduces t
    def nat_anns(fold_ann: Type | None, inj_ann: Type | None) -> bool:
        return (fold_ann is not None and inj_ann is not None
                and types_equal(fold_ann, prelude.NAT_T)
                and types_equal(inj_ann, prelude.NAT_UNFOLDED))

    n = 0
    while True:
        match t:
            case Fold(ann, Inj(1, payload, inj_ann)):
                if nat_anns(ann, inj_ann) and _is_unit_lam(payload):
                    return str(n)
                return None
            case Fold(ann, Inj(2, rest, inj_ann)):
                if not nat_anns(ann, inj_ann):
                    return None
                t = rest
                n += 1
            case _:
                return None


def _frac(p: Fraction) -> str:
    return str(p)  # "1/2", or "1" for integral values


def pretty(t: Term, prec: int = 0) -> str:
    s, level = _pretty(t)
    return f"({s})" if level < prec else s


def _pretty(t: Term) -> tuple[str, int]:
    if _is_unit_lam(t):
        return "()", 4
    sugar = _bool_sugar(t)
    if sugar is not None:
        return sugar, 4
    sugar = _nat_sugar(t)
    if sugar is not None:
        return sugar, 4
    match t:
        case Var(name):
            return name, 4
        case Pair(a, b):
            return f"({pretty(a)}, {pretty(b)})", 4
        case Proj(i, m):
            op = "fst" if i == 1 else "snd"
            return f"{op} {pretty(m, 3)}", 3
        case Inj(i, m, ann):
            op = "inl" if i == 1 else "inr"
            if ann is not None:
                op += f"[{pretty_type(ann)}]"
            return f"{op} {pretty(m, 3)}", 3
        case Fold(ann, m):
            if ann is None:
                return f"fold {pretty(m, 3)}", 3  # semantic normal forms only
            return f"fold[{pretty_type(ann)}] {pretty(m, 3)}", 3
        case Unfold(m):
            return f"unfold {pretty(m, 3)}", 3
        case App(f, a):
            return f"{pretty(f, 2)} {pretty(a, 3)}", 2
        case Or(p, a, b):
            return f"{pretty(a, 1)} or[{_frac(p)}] {pretty(b, 2)}", 1
        case Lam(x, ann, body):
            return f"fn {x}:{pretty_type(ann)} => {pretty(body)}", 0
        case Case(s, x1, n1, x2, n2):
            return (f"case {pretty(s)} of inl {x1} => {pretty(n1, 1)} "
                    f"| inr {x2} => {pretty(n2)}"), 0
        case Let(x, bound, body):
            return f"let {x} = {pretty(bound)} in {pretty(body)}", 0
    raise TypeError(f"not a term: {t!r}")


# Type precedence levels: 0 arrow/mu, 1 sum, 2 product, 3 atoms.

def pretty_type(a: Type, prec: int = 0) -> str:
    s, level = _pretty_type(a)
    return f"({s})" if level < prec else s


_NAMED_TYPES: list[tuple[Type, str]] | None = None


def _named_types() -> list[tuple[Type, str]]:
    global _NAMED_TYPES
    if _NAMED_TYPES is None:
        _NAMED_TYPES = [
            (prelude.ZERO_T, "0"),
            (prelude.UNIT_T, "1"),
            (prelude.BOOL_T, "Bool"),
            (prelude.NAT_T, "Nat"),
        ]
    return _NAMED_TYPES


def _pretty_type(a: Type) -> tuple[str, int]:
    for named, name in _named_types():
        if types_equal(a, named):
            return name, 3
    match a:
        case TVar(name):
            return name, 3
        case Arrow(d, c):
            return f"{pretty_type(d, 1)} -> {pretty_type(c)}", 0
        case Sum(l, r):
            return f"{pretty_type(l, 2)} + {pretty_type(r, 1)}", 1
        case Prod(l, r):
            return f"{pretty_type(l, 3)} * {pretty_type(r, 2)}", 2
        case Mu(x, body):
            return f"mu {x}. {pretty_type(body)}", 0
    raise TypeError(f"not a type: {a!r}")
