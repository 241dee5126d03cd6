"""Variable elimination and sentence decision over divisible ordered
difference groups of a fixed species.

The eliminator is a pairing procedure over exact operator arithmetic: an
equality whose coefficient has nonzero sign pins the variable and is
substituted away; otherwise every lower/upper pair of strict bounds is
cross-multiplied, and disequalities disappear because any nonempty open
interval of a nontrivial divisible ordered group is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FreeVariables, NotConjunctive, VocabularyError
from .formulas import (
    FALSE,
    TRUE,
    And,
    Exists,
    FalseF,
    Forall,
    Formula,
    Implies,
    LinearTerm,
    Not,
    Or,
    TermEq,
    TermLt,
    TrueF,
    children,
    conj,
    disj,
    dnf_cubes,
    free_vars,
    is_atom,
    rebuild,
    simplify,
    standardize_apart,
)
from .operators import LaurentOperator
from .species import Sign, Species, op_sign, require_valid

EQ, LT, NE = "=", "<", "!="


@dataclass(frozen=True)
class Literal:
    term: LinearTerm
    rel: str

    def to_formula(self) -> Formula:
        if self.rel == EQ:
            return TRUE if self.term.is_zero else TermEq(self.term)
        if self.rel == LT:
            return FALSE if self.term.is_zero else TermLt(self.term)
        return FALSE if self.term.is_zero else Not(TermEq(self.term))


@dataclass(frozen=True)
class LinearConstraintSet:
    literals: tuple[Literal, ...]
    target: str | None = None

    @staticmethod
    def from_formula(f: Formula, target: str | None = None) -> "LinearConstraintSet":
        lits: list[Literal] = []

        def add(g: Formula):
            if isinstance(g, And):
                for a in g.args:
                    add(a)
            elif isinstance(g, TermEq):
                lits.append(Literal(g.term, EQ))
            elif isinstance(g, TermLt):
                lits.append(Literal(g.term, LT))
            elif isinstance(g, Not) and isinstance(g.arg, TermEq):
                lits.append(Literal(g.arg.term, NE))
            elif isinstance(g, TrueF):
                pass
            else:
                raise NotConjunctive(
                    f"not a conjunction of group literals: {type(g).__name__}"
                )

        add(f)
        return LinearConstraintSet(tuple(lits), target)

    def to_formula(self) -> Formula:
        return conj([lit.to_formula() for lit in self.literals])


def _split_on(lit: Literal, x: str, species: Species):
    """Return (coefficient, sign, rest) for the target variable, dropping
    the variable when its coefficient has sign zero."""
    c = lit.term.coefficient(x)
    if c is None:
        return None
    s = op_sign(c, species)
    if s == Sign.ZERO:
        return None
    return c, s, lit.term.drop_var(x)


def eliminate_exists(x: str, constraints: LinearConstraintSet, species: Species) -> Formula:
    """Quantifier-free equivalent of "some value of x satisfies all the
    literals", over every divisible model of the given species."""
    require_valid(species)
    passthrough: list[Formula] = []
    pivots: list[tuple[LaurentOperator, Sign, LinearTerm]] = []
    lowers: list[tuple[LaurentOperator, LinearTerm]] = []  # c*x > bound
    uppers: list[tuple[LaurentOperator, LinearTerm]] = []  # c*x < bound
    others: list[tuple[LaurentOperator, LinearTerm, str]] = []

    for lit in constraints.literals:
        if any(k.projs for k, _ in lit.term.entries):
            raise VocabularyError("projection terms are not part of this vocabulary")
        split = _split_on(lit, x, species)
        if split is None:
            reduced = Literal(lit.term.drop_var(x) if lit.term.mentions(x) else lit.term, lit.rel)
            passthrough.append(reduced.to_formula())
            continue
        c, s, rest = split
        if lit.rel == EQ:
            pivots.append((c, s, rest))
        elif lit.rel == NE:
            others.append((c, rest, NE))
        else:
            # c*x + rest < 0; normalize so the coefficient is positive
            if s == Sign.POS:
                uppers.append((c, -rest))  # c*x < -rest
            else:
                lowers.append((-c, rest))  # (-c)*x > rest

    if pivots:
        c0, s0, r0 = pivots[0]
        rhs = -r0  # c0 * x = rhs
        out = list(passthrough)
        for c, _s, rest in pivots[1:]:
            out.append(Literal(rest.apply(c0) + rhs.apply(c), EQ).to_formula())
        for c, rest, _ in others:
            out.append(Literal(rest.apply(c0) + rhs.apply(c), NE).to_formula())
        for c, bound in uppers:
            # c*x < bound becomes c(rhs) <> c0(bound), oriented by sign(c0)
            lhs_t = rhs.apply(c) - bound.apply(c0)
            out.append(Literal(lhs_t if s0 == Sign.POS else -lhs_t, LT).to_formula())
        for c, bound in lowers:
            lhs_t = bound.apply(c0) - rhs.apply(c)
            out.append(Literal(lhs_t if s0 == Sign.POS else -lhs_t, LT).to_formula())
        return simplify(conj(out))

    out = list(passthrough)
    for cl, low in lowers:
        for cu, up in uppers:
            # cl*x > low and cu*x < up force cu(low) < cl(up)
            out.append(Literal(low.apply(cu) - up.apply(cl), LT).to_formula())
    # strict bounds leave an infinite set, so disequalities never bind
    return simplify(conj(out))


def _prepare_matrix(f: Formula) -> Formula:
    """Negation normal form with negated order literals split, leaving only
    =, <, and != literals."""

    def split(g: Formula) -> Formula:
        if isinstance(g, Not):
            a = g.arg
            if isinstance(a, TermLt):
                return disj([TermLt(-a.term), TermEq(a.term)])
            if isinstance(a, TermEq):
                return g
            if isinstance(a, (TrueF, FalseF)):
                return FALSE if isinstance(a, TrueF) else TRUE
            raise VocabularyError(f"unexpected literal {type(a).__name__}")
        if is_atom(g):
            if not isinstance(g, (TermEq, TermLt, TrueF, FalseF)):
                raise VocabularyError(
                    f"{type(g).__name__} is not part of the group vocabulary"
                )
            return g
        return rebuild(g, [split(c) for c in children(g)])

    from .formulas import nnf

    return split(nnf(f))


def _eliminate_block(x: str, matrix: Formula, species: Species) -> Formula:
    prepared = simplify(_prepare_matrix(matrix))
    if isinstance(prepared, (TrueF, FalseF)):
        return prepared
    cubes = dnf_cubes(prepared)
    results = []
    for cube in cubes:
        cs = LinearConstraintSet.from_formula(conj(cube), x)
        results.append(eliminate_exists(x, cs, species))
    return simplify(disj(results))


def qe(f: Formula, species: Species) -> Formula:
    """Quantifier-free equivalent of ``f`` over divisible models of the
    species; innermost quantifiers are eliminated first."""
    require_valid(species)
    g = standardize_apart(f)

    def rec(h: Formula) -> Formula:
        if is_atom(h):
            return h
        if isinstance(h, Exists):
            return _eliminate_block(h.var, rec(h.body), species)
        if isinstance(h, Forall):
            inner = _eliminate_block(h.var, simplify(Not(rec(h.body))), species)
            return simplify(Not(inner))
        return rebuild(h, [rec(c) for c in children(h)])

    return simplify(rec(g))


def _eval_ground(f: Formula) -> bool:
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, TermEq):
        return f.term.is_zero
    if isinstance(f, TermLt):
        return False  # ground group terms are zero
    if isinstance(f, Not):
        return not _eval_ground(f.arg)
    if isinstance(f, And):
        return all(_eval_ground(a) for a in f.args)
    if isinstance(f, Or):
        return any(_eval_ground(a) for a in f.args)
    if isinstance(f, Implies):
        return (not _eval_ground(f.lhs)) or _eval_ground(f.rhs)
    raise VocabularyError(f"cannot evaluate ground {type(f).__name__}")


def decide_sentence(f: Formula, species: Species) -> bool:
    """Truth value of a sentence in the (complete) theory of divisible
    models of the species."""
    if free_vars(f):
        raise FreeVariables(f"free variables: {sorted(free_vars(f))}")
    return _eval_ground(qe(f, species))
