"""Concrete rational models for evaluating quantifier-free formulas.

Two families are provided, matching the two vocabularies:

* :class:`GradedModel` -- tuples of rationals ordered so that the highest
  nonzero coordinate decides the sign, with the automorphism acting as a
  per-coordinate rational multiplier.  Supports the grading predicates and
  the kernel/range projections, so quantifier-free formulas of the starred
  vocabulary evaluate directly.
* :class:`OrderModel` -- rationals with the automorphism acting as a shift,
  covering the increasing, decreasing and identity cases.

Quantifiers are deliberately unsupported: these models exist to check
eliminated or sampled instances, not to decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formulas import (
    And,
    FalseF,
    Formula,
    Implies,
    KPred,
    LinearTerm,
    Not,
    Or,
    OrderEq,
    OrderLt,
    RPred,
    TermEq,
    TermLt,
    TrueF,
    UPred,
)
from .operators import LaurentOperator


@dataclass(frozen=True)
class GradedModel:
    multipliers: tuple[Fraction, ...]

    @property
    def width(self) -> int:
        return len(self.multipliers)

    def zero(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(0) for _ in self.multipliers)

    def point(self, *coords) -> tuple[Fraction, ...]:
        if len(coords) != self.width:
            raise ValueError("wrong arity")
        return tuple(Fraction(c) for c in coords)

    def apply_op(self, op: LaurentOperator, v):
        return tuple(op.eval_at(m) * c for m, c in zip(self.multipliers, v))

    def project(self, kind: str, op: LaurentOperator, v):
        keep_zero = kind == "k"
        return tuple(
            c if (op.eval_at(m) == 0) == keep_zero else Fraction(0)
            for m, c in zip(self.multipliers, v)
        )

    def eval_term(self, t: LinearTerm, env: dict):
        acc = list(self.zero())
        for key, op in t.entries:
            val = env[key.var]
            for kind, pop in reversed(key.projs):
                val = self.project(kind, pop, val)
            val = self.apply_op(op, val)
            for i, c in enumerate(val):
                acc[i] += c
        return tuple(acc)

    def sign(self, v) -> int:
        for c in reversed(v):
            if c != 0:
                return 1 if c > 0 else -1
        return 0

    def in_level(self, i: int, v) -> bool:
        return all(c == 0 for c in v[i:])

    def eval_qf(self, f: Formula, env: dict) -> bool:
        if isinstance(f, TrueF):
            return True
        if isinstance(f, FalseF):
            return False
        if isinstance(f, TermEq):
            return self.sign(self.eval_term(f.term, env)) == 0
        if isinstance(f, TermLt):
            return self.sign(self.eval_term(f.term, env)) < 0
        if isinstance(f, UPred):
            return self.in_level(f.index, self.eval_term(f.term, env))
        if isinstance(f, KPred):
            v = self.apply_op(f.op, self.eval_term(f.term, env))
            return self.sign(v) == 0
        if isinstance(f, RPred):
            v = self.project("k", f.op, self.eval_term(f.term, env))
            return self.sign(v) == 0
        if isinstance(f, Not):
            return not self.eval_qf(f.arg, env)
        if isinstance(f, And):
            return all(self.eval_qf(a, env) for a in f.args)
        if isinstance(f, Or):
            return any(self.eval_qf(a, env) for a in f.args)
        if isinstance(f, Implies):
            return (not self.eval_qf(f.lhs, env)) or self.eval_qf(f.rhs, env)
        raise ValueError(f"cannot evaluate {type(f).__name__} in a concrete model")


@dataclass(frozen=True)
class OrderModel:
    """The rationals with the automorphism x -> x + step."""

    step: Fraction

    def eval_term(self, t, env: dict) -> Fraction:
        return env[t.var] + t.shift * self.step

    def eval_qf(self, f: Formula, env: dict) -> bool:
        if isinstance(f, TrueF):
            return True
        if isinstance(f, FalseF):
            return False
        if isinstance(f, OrderLt):
            return self.eval_term(f.lhs, env) < self.eval_term(f.rhs, env)
        if isinstance(f, OrderEq):
            return self.eval_term(f.lhs, env) == self.eval_term(f.rhs, env)
        if isinstance(f, Not):
            return not self.eval_qf(f.arg, env)
        if isinstance(f, And):
            return all(self.eval_qf(a, env) for a in f.args)
        if isinstance(f, Or):
            return any(self.eval_qf(a, env) for a in f.args)
        if isinstance(f, Implies):
            return (not self.eval_qf(f.lhs, env)) or self.eval_qf(f.rhs, env)
        raise ValueError(f"cannot evaluate {type(f).__name__} in a concrete model")
