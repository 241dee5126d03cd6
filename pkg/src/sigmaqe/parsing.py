"""Parser for the formula grammar.

Vocabularies:

* ``order``       -- linear orders with the automorphism: variables, ``s``,
                     ``<`` and ``=`` between shifted variables.
* ``group``       -- ordered groups with the automorphism: ``0``, ``+``,
                     ``-``, integer multiples, ``s^k``.
* ``graded``      -- group vocabulary plus the grading predicates ``Un``.
* ``graded_star`` -- graded plus kernel/range predicates ``K[op]``/``R[op]``
                     and the projection functions ``k[op]``/``r[op]``.

``parse(print_formula(f))`` returns ``f`` for every AST the toolkit builds,
and printing a parsed string reparses to the identical AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FormulaSyntaxError, VocabularyError
from .formulas import (
    FALSE,
    TRUE,
    And,
    Exists,
    Forall,
    Formula,
    Implies,
    KPred,
    Key,
    LinearTerm,
    Not,
    Or,
    OrderEq,
    OrderLt,
    OrderTerm,
    RPred,
    TermEq,
    TermLt,
    UPred,
    normalize_atom,
)
from .operators import LaurentOperator

VOCABULARIES = ("order", "group", "graded", "graded_star")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<sym>[()\[\]<=&|!+\-*^.,]))"
)


@dataclass
class _Token:
    kind: str  # "int" | "ident" | symbol text | "eof"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", where)
        if m.group("arrow"):
            tokens.append(_Token("->", "->", m.start("arrow")))
        elif m.group("int"):
            tokens.append(_Token("int", m.group("int"), m.start("int")))
        elif m.group("ident"):
            tokens.append(_Token("ident", m.group("ident"), m.start("ident")))
        else:
            sym = m.group("sym")
            tokens.append(_Token(sym, sym, m.start("sym")))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


_U_RE = re.compile(r"^U(\d+)$")


class _Parser:
    def __init__(self, text: str, vocab: str):
        if vocab not in VOCABULARIES:
            raise VocabularyError(f"unknown vocabulary {vocab!r}")
        self.vocab = vocab
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token helpers

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return tok

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.peek().pos)

    # -- formulas

    def parse_formula(self) -> Formula:
        return self.implication()

    def implication(self) -> Formula:
        lhs = self.disjunction()
        if self.peek().kind == "->":
            self.next()
            return Implies(lhs, self.implication())
        return lhs

    def disjunction(self) -> Formula:
        first = self.conjunction()
        parts = [first]
        while self.peek().kind == "|":
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek().kind == "&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.next()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in ("E", "A"):
            self.next()
            var = self.variable_name()
            self.expect(".")
            body = self.parse_formula()
            return Exists(var, body) if tok.text == "E" else Forall(var, body)
        return self.atom_or_paren()

    def atom_or_paren(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            # try a parenthesized formula, fall back to an atom whose
            # left-hand term is parenthesized
            mark = self.i
            try:
                self.next()
                inner = self.parse_formula()
                self.expect(")")
                return inner
            except FormulaSyntaxError:
                self.i = mark
                return self.atom()
        if tok.kind == "ident" and tok.text == "true":
            self.next()
            return TRUE
        if tok.kind == "ident" and tok.text == "false":
            self.next()
            return FALSE
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident":
            m = _U_RE.match(tok.text)
            if m:
                if self.vocab not in ("graded", "graded_star"):
                    raise VocabularyError(
                        f"grading predicate {tok.text} needs a graded vocabulary"
                    )
                self.next()
                self.expect("(")
                term = self.group_term()
                self.expect(")")
                return UPred(int(m.group(1)), term)
            if tok.text in ("K", "R") and self.tokens[self.i + 1].kind == "[":
                if self.vocab != "graded_star":
                    raise VocabularyError(
                        f"predicate {tok.text}[...] needs the graded_star vocabulary"
                    )
                self.next()
                self.expect("[")
                op = self.operator()
                self.expect("]")
                self.expect("(")
                term = self.group_term()
                self.expect(")")
                cls = KPred if tok.text == "K" else RPred
                return cls(op, term)
        if self.vocab == "order":
            lhs = self.order_term()
            rel = self.next()
            if rel.kind not in ("<", "="):
                raise FormulaSyntaxError("expected '<' or '='", rel.pos)
            rhs = self.order_term()
            return OrderLt(lhs, rhs) if rel.kind == "<" else OrderEq(lhs, rhs)
        lhs = self.group_term()
        rel = self.next()
        if rel.kind not in ("<", "="):
            raise FormulaSyntaxError("expected '<' or '='", rel.pos)
        rhs = self.group_term()
        return normalize_atom(lhs, rel.kind, rhs)

    # -- names

    def variable_name(self) -> str:
        tok = self.expect("ident")
        if tok.text in ("E", "A", "s", "true", "false") or _U_RE.match(tok.text):
            raise FormulaSyntaxError(f"{tok.text!r} is reserved", tok.pos)
        return tok.text

    # -- order terms

    def order_term(self) -> OrderTerm:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "s":
            self.next()
            shift = 1
            if self.peek().kind == "^":
                self.next()
                shift = self.signed_int()
            self.expect("(")
            inner = self.order_term()
            self.expect(")")
            return inner.shifted(shift)
        name = self.variable_name()
        return OrderTerm(name, 0)

    # -- group terms

    def group_term(self) -> LinearTerm:
        negate = False
        if self.peek().kind == "-":
            self.next()
            negate = True
        term = self.group_product()
        if negate:
            term = -term
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.group_product()
            term = term + rhs if op == "+" else term - rhs
        return term

    def group_product(self) -> LinearTerm:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            n = int(tok.text)
            if n == 0 and self.peek().kind != "*":
                return LinearTerm.zero()
            self.expect("*")
            base = self.group_primary()
            return base.apply(LaurentOperator.constant(n))
        return self.group_primary()

    def group_primary(self) -> LinearTerm:
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            inner = self.group_term()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text == "s":
            self.next()
            shift = 1
            if self.peek().kind == "^":
                self.next()
                shift = self.signed_int()
            self.expect("(")
            inner = self.group_term()
            self.expect(")")
            return inner.apply(LaurentOperator.sigma_power(shift))
        if tok.kind == "ident" and tok.text in ("k", "r") and self.tokens[self.i + 1].kind == "[":
            if self.vocab != "graded_star":
                raise VocabularyError(
                    f"projection {tok.text}[...] needs the graded_star vocabulary"
                )
            self.next()
            self.expect("[")
            op = self.operator()
            self.expect("]")
            self.expect("(")
            inner = self.group_term()
            self.expect(")")
            return inner.wrap(tok.text, op)
        name = self.variable_name()
        return LinearTerm.var(name)

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        tok = self.expect("int")
        return sign * int(tok.text)

    # -- operators (integer Laurent polynomials in s)

    def operator(self) -> LaurentOperator:
        total: dict[int, int] = {}

        def accumulate(sign: int):
            coeff = 1
            exp = 0
            tok = self.peek()
            if tok.kind == "int":
                self.next()
                coeff = int(tok.text)
                if self.peek().kind == "*":
                    self.next()
            if self.peek().kind == "ident" and self.peek().text == "s":
                self.next()
                exp = 1
                if self.peek().kind == "^":
                    self.next()
                    exp = self.signed_int()
            elif tok.kind != "int":
                self.fail("expected an operator monomial")
            total[exp] = total.get(exp, 0) + sign * coeff

        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        accumulate(sign)
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.next().kind == "+" else -1
            accumulate(sign)
        return LaurentOperator.from_dict(total)


def _check_vocab(f: Formula, vocab: str) -> None:
    from .formulas import children, is_atom

    def walk(g: Formula):
        if isinstance(g, (OrderLt, OrderEq)) and vocab != "order":
            raise VocabularyError("order atoms need the order vocabulary")
        if isinstance(g, (TermEq, TermLt)) and vocab == "order":
            raise VocabularyError("group terms are not part of the order vocabulary")
        if isinstance(g, (TermEq, TermLt, UPred, KPred, RPred)) and vocab != "graded_star":
            if any(k.projs for k, _ in g.term.entries):
                raise VocabularyError("projection terms need the graded_star vocabulary")
        for c in children(g):
            walk(c)

    walk(f)


def parse(text: str, vocab: str = "group") -> Formula:
    """Parse a formula; raises FormulaSyntaxError or VocabularyError."""
    p = _Parser(text, vocab)
    f = p.parse_formula()
    tok = p.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.pos)
    _check_vocab(f, vocab)
    return f


def parse_operator(text: str) -> LaurentOperator:
    """Parse a bare operator such as ``s^2 - 2*s + 3``."""
    p = _Parser(text, "graded_star")
    op = p.operator()
    tok = p.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.pos)
    return op
