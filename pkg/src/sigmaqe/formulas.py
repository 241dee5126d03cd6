"""First-order formula ASTs over ordered groups and orders with an
automorphism, plus the normal-form machinery used by the eliminators.

Group-language terms are kept in a linear normal form: a finite map from
keys to operator coefficients, where a key is a variable optionally wrapped
in kernel/range projections.  Order-language terms are a variable with an
integer automorphism shift.  Atoms over groups always have everything moved
to the left of the relation, so ``t = 0`` and ``t < 0`` are the only shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import QuantifierPresent
from .operators import ONE_OP, LaurentOperator

# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Key:
    """A variable under a (possibly empty) chain of projections, outermost
    first; each projection is ('k'|'r', operator)."""

    projs: tuple[tuple[str, LaurentOperator], ...]
    var: str

    def sort_token(self):
        return (self.var, len(self.projs), tuple((k, op.coeffs) for k, op in self.projs))


def plain(var: str) -> Key:
    return Key((), var)


@dataclass(frozen=True)
class LinearTerm:
    entries: tuple[tuple[Key, LaurentOperator], ...]

    @staticmethod
    def make(pairs) -> "LinearTerm":
        acc: dict[Key, LaurentOperator] = {}
        for key, op in pairs:
            cur = acc.get(key)
            acc[key] = op if cur is None else cur + op
        items = [(k, op) for k, op in acc.items() if not op.is_zero]
        items.sort(key=lambda kv: kv[0].sort_token())
        return LinearTerm(tuple(items))

    @staticmethod
    def zero() -> "LinearTerm":
        return LinearTerm(())

    @staticmethod
    def var(name: str, op: LaurentOperator = ONE_OP) -> "LinearTerm":
        return LinearTerm.make([(plain(name), op)])

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "LinearTerm") -> "LinearTerm":
        return LinearTerm.make(list(self.entries) + list(other.entries))

    def __neg__(self) -> "LinearTerm":
        return LinearTerm(tuple((k, -op) for k, op in self.entries))

    def __sub__(self, other: "LinearTerm") -> "LinearTerm":
        return self + (-other)

    def apply(self, op: LaurentOperator) -> "LinearTerm":
        return LinearTerm.make([(k, op * c) for k, c in self.entries])

    def wrap(self, kind: str, op: LaurentOperator) -> "LinearTerm":
        """Apply a kernel/range projection to the whole term; projections
        commute with sums and with every operator, so wrapping the keys is
        enough."""
        return LinearTerm.make(
            [(Key(((kind, op),) + k.projs, k.var), c) for k, c in self.entries]
        )

    def coefficient(self, var: str) -> LaurentOperator | None:
        for k, c in self.entries:
            if k.projs == () and k.var == var:
                return c
        return None

    def drop_var(self, var: str) -> "LinearTerm":
        return LinearTerm(
            tuple((k, c) for k, c in self.entries if k.projs or k.var != var)
        )

    def vars(self) -> set[str]:
        return {k.var for k in (key for key, _ in self.entries)}

    def mentions(self, var: str) -> bool:
        return any(k.var == var for k, _ in self.entries)

    def subst(self, var: str, replacement: "LinearTerm") -> "LinearTerm":
        """Substitute a term for every occurrence of a variable, pushing the
        occurrence's projections and coefficient onto the replacement."""
        out: list[tuple[Key, LaurentOperator]] = []
        for k, c in self.entries:
            if k.var != var:
                out.append((k, c))
                continue
            sub = replacement
            for kind, op in reversed(k.projs):
                sub = sub.wrap(kind, op)
            out.extend(sub.apply(c).entries)
        return LinearTerm.make(out)


@dataclass(frozen=True)
class OrderTerm:
    var: str
    shift: int = 0

    def shifted(self, d: int) -> "OrderTerm":
        return OrderTerm(self.var, self.shift + d)


# ---------------------------------------------------------------------------
# formulas


class Formula:
    pass


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class TermEq(Formula):
    term: LinearTerm


@dataclass(frozen=True)
class TermLt(Formula):
    term: LinearTerm


@dataclass(frozen=True)
class OrderLt(Formula):
    lhs: OrderTerm
    rhs: OrderTerm


@dataclass(frozen=True)
class OrderEq(Formula):
    lhs: OrderTerm
    rhs: OrderTerm


@dataclass(frozen=True)
class UPred(Formula):
    index: int
    term: LinearTerm


@dataclass(frozen=True)
class KPred(Formula):
    op: LaurentOperator
    term: LinearTerm


@dataclass(frozen=True)
class RPred(Formula):
    op: LaurentOperator
    term: LinearTerm


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


TRUE = TrueF()
FALSE = FalseF()

ATOMS = (TrueF, FalseF, TermEq, TermLt, OrderLt, OrderEq, UPred, KPred, RPred)


def conj(args) -> Formula:
    flat = [a for a in args if not isinstance(a, TrueF)]
    if any(isinstance(a, FalseF) for a in flat):
        return FALSE
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(args) -> Formula:
    flat = [a for a in args if not isinstance(a, FalseF)]
    if any(isinstance(a, TrueF) for a in flat):
        return TRUE
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def is_atom(f: Formula) -> bool:
    return isinstance(f, ATOMS)


def normalize_atom(lhs: LinearTerm, rel: str, rhs: LinearTerm) -> Formula:
    """Group atom ``lhs rel rhs`` with everything collected on the left."""
    t = lhs - rhs
    if rel == "=":
        return TRUE if t.is_zero else TermEq(t)
    if rel == "<":
        return FALSE if t.is_zero else TermLt(t)
    raise ValueError(f"unknown relation {rel!r}")


# ---------------------------------------------------------------------------
# structural walks


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Implies):
        return (f.lhs, f.rhs)
    if isinstance(f, (Exists, Forall)):
        return (f.body,)
    return ()


def rebuild(f: Formula, kids: list[Formula]) -> Formula:
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, And):
        return And(tuple(kids))
    if isinstance(f, Or):
        return Or(tuple(kids))
    if isinstance(f, Implies):
        return Implies(kids[0], kids[1])
    if isinstance(f, Exists):
        return Exists(f.var, kids[0])
    if isinstance(f, Forall):
        return Forall(f.var, kids[0])
    return f


def map_atoms(f: Formula, fn) -> Formula:
    if is_atom(f):
        return fn(f)
    return rebuild(f, [map_atoms(c, fn) for c in children(f)])


def atom_vars(f: Formula) -> set[str]:
    if isinstance(f, (TermEq, TermLt, UPred, KPred, RPred)):
        return f.term.vars()
    if isinstance(f, (OrderLt, OrderEq)):
        return {f.lhs.var, f.rhs.var}
    return set()


def free_vars(f: Formula) -> set[str]:
    if is_atom(f):
        return atom_vars(f)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    out: set[str] = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f: Formula) -> set[str]:
    if is_atom(f):
        return atom_vars(f)
    out: set[str] = set()
    if isinstance(f, (Exists, Forall)):
        out.add(f.var)
    for c in children(f):
        out |= all_vars(c)
    return out


def quantifier_rank(f: Formula) -> int:
    if is_atom(f):
        return 0
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_rank(f.body)
    return max((quantifier_rank(c) for c in children(f)), default=0)


def has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return True
    return any(has_quantifier(c) for c in children(f))


def fresh_name(base: str, used: set[str]) -> str:
    if base not in used:
        used.add(base)
        return base
    i = 1
    while f"{base}{i}" in used:
        i += 1
    used.add(f"{base}{i}")
    return f"{base}{i}"


def rename_var_in_atom(f: Formula, old: str, new: str) -> Formula:
    repl = LinearTerm.var(new)

    def walk_term(t: LinearTerm) -> LinearTerm:
        return t.subst(old, repl) if t.mentions(old) else t

    if isinstance(f, (TermEq, TermLt)):
        return type(f)(walk_term(f.term))
    if isinstance(f, UPred):
        return UPred(f.index, walk_term(f.term))
    if isinstance(f, (KPred, RPred)):
        return type(f)(f.op, walk_term(f.term))
    if isinstance(f, (OrderLt, OrderEq)):
        lhs = OrderTerm(new, f.lhs.shift) if f.lhs.var == old else f.lhs
        rhs = OrderTerm(new, f.rhs.shift) if f.rhs.var == old else f.rhs
        return type(f)(lhs, rhs)
    return f


def rename_free(f: Formula, old: str, new: str) -> Formula:
    if is_atom(f):
        return rename_var_in_atom(f, old, new)
    if isinstance(f, (Exists, Forall)) and f.var == old:
        return f
    return rebuild(f, [rename_free(c, old, new) for c in children(f)])


def standardize_apart(f: Formula) -> Formula:
    """Rename bound variables so they are pairwise distinct and disjoint
    from the free variables."""
    used = set(free_vars(f))

    def walk(g: Formula) -> Formula:
        if is_atom(g):
            return g
        if isinstance(g, (Exists, Forall)):
            body = g.body
            if g.var in used:
                nv = fresh_name(g.var, used)
                body = rename_free(body, g.var, nv)
                return type(g)(nv, walk(body))
            used.add(g.var)
            return type(g)(g.var, walk(body))
        return rebuild(g, [walk(c) for c in children(g)])

    return walk(f)


def substitute(f: Formula, var: str, term: LinearTerm) -> Formula:
    """Capture-avoiding substitution of a group term for a free variable."""
    term_vars = term.vars()

    def walk(g: Formula, used: set[str]) -> Formula:
        if is_atom(g):
            if isinstance(g, (TermEq, TermLt)):
                return type(g)(g.term.subst(var, term))
            if isinstance(g, UPred):
                return UPred(g.index, g.term.subst(var, term))
            if isinstance(g, (KPred, RPred)):
                return type(g)(g.op, g.term.subst(var, term))
            if isinstance(g, (OrderLt, OrderEq)):
                raise ValueError("cannot substitute a group term into an order atom")
            return g
        if isinstance(g, (Exists, Forall)):
            if g.var == var:
                return g
            if g.var in term_vars:
                nv = fresh_name(g.var, used | term_vars | {var})
                body = rename_free(g.body, g.var, nv)
                return type(g)(nv, walk(body, used | {nv}))
            return type(g)(g.var, walk(g.body, used | {g.var}))
        return rebuild(g, [walk(c, used) for c in children(g)])

    return walk(f, set(all_vars(f)))


# ---------------------------------------------------------------------------
# negation normal form / disjunctive normal form


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Push negations down to literals; negated atoms stay as Not(atom)."""
    if is_atom(f):
        if not negate:
            return f
        if isinstance(f, TrueF):
            return FALSE
        if isinstance(f, FalseF):
            return TRUE
        return Not(f)
    if isinstance(f, Not):
        return nnf(f.arg, not negate)
    if isinstance(f, And):
        parts = [nnf(a, negate) for a in f.args]
        return disj(parts) if negate else conj(parts)
    if isinstance(f, Or):
        parts = [nnf(a, negate) for a in f.args]
        return conj(parts) if negate else disj(parts)
    if isinstance(f, Implies):
        if negate:
            return conj([nnf(f.lhs), nnf(f.rhs, True)])
        return disj([nnf(f.lhs, True), nnf(f.rhs)])
    if isinstance(f, Exists):
        inner = nnf(f.body, negate)
        return Forall(f.var, inner) if negate else Exists(f.var, inner)
    if isinstance(f, Forall):
        inner = nnf(f.body, negate)
        return Exists(f.var, inner) if negate else Forall(f.var, inner)
    raise TypeError(f"not a formula: {f!r}")


def to_dnf(f: Formula) -> Formula:
    """Disjunctive normal form of a quantifier-free formula."""
    if has_quantifier(f):
        raise QuantifierPresent("input to to_dnf must be quantifier-free")
    g = nnf(f)

    def walk(h: Formula) -> list[list[Formula]]:
        if isinstance(h, TrueF):
            return [[]]
        if isinstance(h, FalseF):
            return []
        if is_atom(h) or isinstance(h, Not):
            return [[h]]
        if isinstance(h, Or):
            out: list[list[Formula]] = []
            for a in h.args:
                out.extend(walk(a))
            return out
        if isinstance(h, And):
            cubes: list[list[Formula]] = [[]]
            for a in h.args:
                nxt = walk(a)
                cubes = [c + d for c in cubes for d in nxt]
            return cubes
        raise TypeError(f"unexpected node in NNF: {h!r}")

    cubes = walk(g)
    out = []
    seen = set()
    for cube in cubes:
        lits = []
        lit_set = set()
        for lit in cube:
            if lit not in lit_set:
                lit_set.add(lit)
                lits.append(lit)
        key = frozenset(lit_set)
        if key not in seen:
            seen.add(key)
            out.append(conj(lits))
    return disj(out)


def dnf_cubes(f: Formula) -> list[list[Formula]]:
    """The conjuncts of the DNF, each as a list of literals."""
    d = to_dnf(f)
    if isinstance(d, FalseF):
        return []
    disjuncts = d.args if isinstance(d, Or) else (d,)
    out = []
    for cube in disjuncts:
        if isinstance(cube, TrueF):
            out.append([])
        elif isinstance(cube, And):
            out.append(list(cube.args))
        else:
            out.append([cube])
    return out


def simplify(f: Formula) -> Formula:
    """Constant folding and trivial-atom removal; no semantic search."""
    if isinstance(f, TermEq):
        return TRUE if f.term.is_zero else f
    if isinstance(f, TermLt):
        return FALSE if f.term.is_zero else f
    if isinstance(f, UPred):
        return TRUE if f.term.is_zero else f
    if isinstance(f, (OrderLt, OrderEq)):
        if f.lhs == f.rhs:
            return TRUE if isinstance(f, OrderEq) else FALSE
        return f
    if is_atom(f):
        return f
    if isinstance(f, Not):
        a = simplify(f.arg)
        if isinstance(a, TrueF):
            return FALSE
        if isinstance(a, FalseF):
            return TRUE
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    if isinstance(f, And):
        parts = []
        for a in f.args:
            s = simplify(a)
            if isinstance(s, FalseF):
                return FALSE
            if isinstance(s, And):
                parts.extend(s.args)
            elif not isinstance(s, TrueF):
                parts.append(s)
        uniq = list(dict.fromkeys(parts))
        return conj(uniq)
    if isinstance(f, Or):
        parts = []
        for a in f.args:
            s = simplify(a)
            if isinstance(s, TrueF):
                return TRUE
            if isinstance(s, Or):
                parts.extend(s.args)
            elif not isinstance(s, FalseF):
                parts.append(s)
        uniq = list(dict.fromkeys(parts))
        return disj(uniq)
    if isinstance(f, Implies):
        lhs, rhs = simplify(f.lhs), simplify(f.rhs)
        if isinstance(lhs, FalseF) or isinstance(rhs, TrueF):
            return TRUE
        if isinstance(lhs, TrueF):
            return rhs
        if isinstance(rhs, FalseF):
            return Not(lhs) if not isinstance(lhs, Not) else lhs.arg
        return Implies(lhs, rhs)
    if isinstance(f, (Exists, Forall)):
        body = simplify(f.body)
        # the domain is never empty, so a vacuous quantifier folds away
        if isinstance(body, (TrueF, FalseF)):
            return body
        return type(f)(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# printing


def format_operator(op: LaurentOperator) -> str:
    return str(op)


def _format_monomial(coeff: int, exp: int, base: str) -> str:
    body = base if exp == 0 else (f"s({base})" if exp == 1 else f"s^{exp}({base})")
    mag = abs(coeff)
    return body if mag == 1 else f"{mag}*{body}"


def _key_base(key: Key) -> str:
    body = key.var
    for kind, op in reversed(key.projs):
        body = f"{kind}[{op}]({body})"
    return body


def format_term(t: LinearTerm) -> str:
    if t.is_zero:
        return "0"
    pieces: list[str] = []
    for key, op in t.entries:
        base = _key_base(key)
        for exp, coeff in sorted(op.coeffs, reverse=True):
            body = _format_monomial(coeff, exp, base)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


def format_order_term(t: OrderTerm) -> str:
    if t.shift == 0:
        return t.var
    if t.shift == 1:
        return f"s({t.var})"
    return f"s^{t.shift}({t.var})"


_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4


def _fmt(f: Formula, min_prec: int) -> str:
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, TermEq):
        return f"{format_term(f.term)} = 0"
    if isinstance(f, TermLt):
        return f"{format_term(f.term)} < 0"
    if isinstance(f, OrderLt):
        return f"{format_order_term(f.lhs)} < {format_order_term(f.rhs)}"
    if isinstance(f, OrderEq):
        return f"{format_order_term(f.lhs)} = {format_order_term(f.rhs)}"
    if isinstance(f, UPred):
        return f"U{f.index}({format_term(f.term)})"
    if isinstance(f, KPred):
        return f"K[{f.op}]({format_term(f.term)})"
    if isinstance(f, RPred):
        return f"R[{f.op}]({format_term(f.term)})"
    if isinstance(f, Not):
        return f"!{_fmt(f.arg, _PREC_NOT)}"
    if isinstance(f, And):
        body = " & ".join(_fmt(a, _PREC_AND + 1) for a in f.args)
        return body if min_prec <= _PREC_AND else f"({body})"
    if isinstance(f, Or):
        body = " | ".join(_fmt(a, _PREC_OR + 1) for a in f.args)
        return body if min_prec <= _PREC_OR else f"({body})"
    if isinstance(f, Implies):
        body = f"{_fmt(f.lhs, _PREC_IMPLIES + 1)} -> {_fmt(f.rhs, _PREC_IMPLIES)}"
        return body if min_prec <= _PREC_IMPLIES else f"({body})"
    if isinstance(f, (Exists, Forall)):
        q = "E" if isinstance(f, Exists) else "A"
        body = f"{q} {f.var}. {_fmt(f.body, 0)}"
        return body if min_prec == 0 else f"({body})"
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    return _fmt(f, 0)


# ---------------------------------------------------------------------------
# unpacked atomic formulas


@dataclass(frozen=True)
class UnpackedAtom:
    """One of the six primitive shapes: a+b=c, a-b=c, s(a)=b, a=b, a<b, a=0."""

    shape: str  # "add" | "sub" | "sigma" | "eq" | "lt" | "zero"
    args: tuple[str, ...]

    def __str__(self) -> str:
        a = self.args
        if self.shape == "add":
            return f"{a[0]} + {a[1]} = {a[2]}"
        if self.shape == "sub":
            return f"{a[0]} - {a[1]} = {a[2]}"
        if self.shape == "sigma":
            return f"s({a[0]}) = {a[1]}"
        if self.shape == "eq":
            return f"{a[0]} = {a[1]}"
        if self.shape == "lt":
            return f"{a[0]} < {a[1]}"
        return f"{a[0]} = 0"

    def vars(self) -> set[str]:
        return set(self.args)


def unpacked_to_formula(atoms) -> Formula:
    out = []
    for a in atoms:
        v = a.args
        if a.shape == "add":
            t = LinearTerm.var(v[0]) + LinearTerm.var(v[1]) - LinearTerm.var(v[2])
            out.append(TermEq(t))
        elif a.shape == "sub":
            t = LinearTerm.var(v[0]) - LinearTerm.var(v[1]) - LinearTerm.var(v[2])
            out.append(TermEq(t))
        elif a.shape == "sigma":
            t = LinearTerm.var(v[0], LaurentOperator.sigma_power(1)) - LinearTerm.var(v[1])
            out.append(TermEq(t))
        elif a.shape == "eq":
            out.append(TermEq(LinearTerm.var(v[0]) - LinearTerm.var(v[1])))
        elif a.shape == "lt":
            out.append(TermLt(LinearTerm.var(v[0]) - LinearTerm.var(v[1])))
        elif a.shape == "zero":
            out.append(TermEq(LinearTerm.var(v[0])))
        else:
            raise ValueError(f"unknown shape {a.shape!r}")
    return conj(out)


def _shortcut_shape(term: LinearTerm, rel: str) -> UnpackedAtom | None:
    """Recognize atoms that already are one of the primitive shapes."""
    entries = term.entries
    if any(k.projs for k, _ in entries):
        return None
    ops = [(k.var, dict(c.coeffs)) for k, c in entries]
    if rel == "=":
        if len(ops) == 1:
            (v, c), = ops
            if c in ({0: 1}, {0: -1}):
                return UnpackedAtom("zero", (v,))
        if len(ops) == 2:
            (v1, c1), (v2, c2) = ops
            if c1 == {0: 1} and c2 == {0: -1}:
                return UnpackedAtom("eq", (v1, v2))
            if c1 == {0: -1} and c2 == {0: 1}:
                return UnpackedAtom("eq", (v2, v1))
            if c1 == {1: 1} and c2 == {0: -1}:
                return UnpackedAtom("sigma", (v1, v2))
            if c1 == {0: -1} and c2 == {1: 1}:
                return UnpackedAtom("sigma", (v2, v1))
        if len(ops) == 3:
            pos = [v for v, c in ops if c == {0: 1}]
            neg = [v for v, c in ops if c == {0: -1}]
            if len(pos) == 2 and len(neg) == 1:
                return UnpackedAtom("add", (pos[0], pos[1], neg[0]))
            if len(pos) == 1 and len(neg) == 2:
                return UnpackedAtom("sub", (pos[0], neg[0], neg[1]))
    if rel == "<":
        if len(ops) == 2:
            (v1, c1), (v2, c2) = ops
            if c1 == {0: 1} and c2 == {0: -1}:
                return UnpackedAtom("lt", (v1, v2))
            if c1 == {0: -1} and c2 == {0: 1}:
                return UnpackedAtom("lt", (v2, v1))
    return None


def unpack(atom: Formula) -> tuple[tuple[str, ...], tuple[UnpackedAtom, ...]]:
    """Rewrite a group atom as an equivalent conjunction of primitive shapes
    over fresh variables; each fresh variable is determined by the originals,
    so the equivalence is checkable by forward evaluation.
    """
    if isinstance(atom, TermEq):
        term, rel = atom.term, "="
    elif isinstance(atom, TermLt):
        term, rel = atom.term, "<"
    else:
        raise ValueError("unpack expects a group atom (t = 0 or t < 0)")
    if any(k.projs for k, _ in term.entries):
        raise ValueError("unpack expects projection-free terms")

    if term.is_zero:
        return (), ()
    short = _shortcut_shape(term, rel)
    if short is not None:
        return (), (short,)

    # clear negative powers of the automorphism; the shift is an
    # order-preserving bijection, so both relations survive it
    min_exp = min(op.min_exp for _, op in term.entries)
    if min_exp < 0:
        term = term.apply(LaurentOperator.sigma_power(-min_exp))

    fresh: list[str] = []
    atoms: list[UnpackedAtom] = []
    counter = [0]

    def new_var() -> str:
        counter[0] += 1
        name = f"z{counter[0]}"
        fresh.append(name)
        return name

    # per-variable chains of automorphism applications
    monomials: list[tuple[int, str]] = []  # (sign, variable holding |m| s^e v)
    for key, op in term.entries:
        base = key.var
        chain = {0: base}
        top = max(e for e, _ in op.coeffs)
        prev = base
        for e in range(1, top + 1):
            nv = new_var()
            atoms.append(UnpackedAtom("sigma", (prev, nv)))
            chain[e] = nv
            prev = nv
        for e, coeff in sorted(op.coeffs):
            mag, sign = abs(coeff), (1 if coeff > 0 else -1)
            acc = chain[e]
            for _ in range(mag - 1):
                nv = new_var()
                atoms.append(UnpackedAtom("add", (acc, chain[e], nv)))
                acc = nv
            monomials.append((sign, acc))

    # combine the monomials, putting a positive one first when possible
    monomials.sort(key=lambda sv: -sv[0])
    negated = monomials[0][0] < 0
    if negated:
        monomials = [(-s, v) for s, v in monomials]
    acc_var = monomials[0][1]
    for sign, v in monomials[1:]:
        nv = new_var()
        shape = "add" if sign > 0 else "sub"
        atoms.append(UnpackedAtom(shape, (acc_var, v, nv)))
        acc_var = nv

    if rel == "=":
        atoms.append(UnpackedAtom("zero", (acc_var,)))
    else:
        zv = new_var()
        atoms.append(UnpackedAtom("zero", (zv,)))
        if negated:
            atoms.append(UnpackedAtom("lt", (zv, acc_var)))
        else:
            atoms.append(UnpackedAtom("lt", (acc_var, zv)))
    return tuple(fresh), tuple(atoms)
