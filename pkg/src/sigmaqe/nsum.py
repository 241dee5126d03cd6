"""Graded finite sums of divisible ordered difference groups.

A sum is described by the species of its coordinates; the order is decided
by the highest nonzero coordinate and the automorphism acts coordinatewise.
The vocabulary adds grading predicates ``U_i`` (the subgroup supported on
the first ``i`` coordinates), kernel/range predicates ``K[L]``/``R[L]`` and
the matching projection functions ``k[L]``/``r[L]``.

Elimination works by recursion on the kernel decomposition: when some
operator has a kernel that is neither trivial nor everything, every formula
splits into a kernel part and a range part, and the two parts are handled
in strictly smaller sums.  When no such operator exists (the "dull" case),
every nonzero coefficient acts bijectively and a virtual-substitution pass
with grading-aware test points finishes the job.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .errors import (
    FreeVariables,
    IndexOutOfRange,
    NotQuantifierFree,
    NotReduced,
    Unresolvable,
    VocabularyError,
)
from .formulas import (
    FALSE,
    TRUE,
    And,
    Exists,
    FalseF,
    Forall,
    Formula,
    Implies,
    KPred,
    Key,
    LinearTerm,
    Not,
    Or,
    RPred,
    TermEq,
    TermLt,
    TrueF,
    UPred,
    children,
    conj,
    disj,
    dnf_cubes,
    free_vars,
    fresh_name,
    is_atom,
    all_vars,
    map_atoms,
    nnf,
    rebuild,
    simplify,
    standardize_apart,
)
from .operators import ONE_OP, LaurentOperator
from .species import (
    AlgebraicEq,
    AlgebraicGt,
    AlgebraicLt,
    AlgebraicPoint,
    Infinite,
    Sign,
    Species,
    Transcendental,
    compare_points,
    minpoly_operator,
    op_sign,
    points_equal,
    refine_root_interval,
    require_valid,
    species_equiv,
)

_ALGEBRAIC = (AlgebraicEq, AlgebraicLt, AlgebraicGt)


@dataclass(frozen=True)
class NSumSpec:
    coords: tuple[Species, ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("a sum needs at least one coordinate")

    @property
    def width(self) -> int:
        return len(self.coords)


def validate_nsum(g: NSumSpec):
    from .species import validate_species

    reports = [validate_species(s) for s in g.coords]
    return reports


def require_valid_spec(g: NSumSpec) -> None:
    for s in g.coords:
        require_valid(s)


def reduce_spec(g: NSumSpec) -> NSumSpec:
    """Collapse adjacent coordinates of equivalent species; the reduced sum
    has the same first-order theory in the plain group vocabulary."""
    out: list[Species] = []
    for s in g.coords:
        if out and species_equiv(out[-1], s):
            continue
        out.append(s)
    return NSumSpec(tuple(out))


@dataclass(frozen=True)
class DullResult:
    dull: bool
    witness: LaurentOperator | None = None


def _minpoly_key(s: Species):
    return tuple(P.primitive(P.strip(s.minpoly)))


def is_dull(g: NSumSpec) -> DullResult:
    """A sum is dull when every operator kernel is trivial or everything.

    Operator kernels are spanned by the exact-multiplication coordinates the
    operator annihilates, so dullness holds exactly when either no
    coordinate is of exact type, or all of them share one minimal
    polynomial (annihilation only sees the polynomial, not the root).
    """
    eq_coords = [i for i, s in enumerate(g.coords) if isinstance(s, AlgebraicEq)]
    if not eq_coords:
        return DullResult(True)
    if len(eq_coords) < g.width:
        return DullResult(False, minpoly_operator(g.coords[eq_coords[0]]))
    keys = [_minpoly_key(g.coords[i]) for i in eq_coords]
    if all(k == keys[0] for k in keys):
        return DullResult(True)
    return DullResult(False, minpoly_operator(g.coords[eq_coords[0]]))


@dataclass(frozen=True)
class SplitData:
    witness: LaurentOperator
    s: frozenset[int]
    t: frozenset[int]


def split_data(g: NSumSpec, witness: LaurentOperator) -> SplitData:
    zeros = frozenset(
        i for i, sp in enumerate(g.coords) if op_sign(witness, sp) == Sign.ZERO
    )
    if not zeros or len(zeros) == g.width:
        raise ValueError("witness kernel must be proper and nontrivial")
    others = frozenset(range(g.width)) - zeros
    return SplitData(witness, zeros, others)


# ---------------------------------------------------------------------------
# atom normalization shared by the eliminators


def _norm_atom(a: Formula, n: int) -> Formula:
    """Rewrite kernel/range predicates into term atoms and normalize the
    extreme grading indices."""
    if isinstance(a, KPred):
        return _norm_atom(TermEq(a.term.apply(a.op)), n)
    if isinstance(a, RPred):
        return _norm_atom(TermEq(a.term.wrap("k", a.op)), n)
    if isinstance(a, UPred):
        if a.index > n or a.index < 0:
            raise IndexOutOfRange(f"grading index {a.index} exceeds arity {n}")
        if a.index == n:
            return TRUE
        if a.index == 0:
            return TermEq(a.term)
        return a
    if isinstance(a, (TermEq, TermLt, TrueF, FalseF)):
        return a
    raise VocabularyError(f"{type(a).__name__} is not part of the graded vocabulary")


def _proj_zeros(op: LaurentOperator, coords) -> set[int]:
    return {i for i, sp in enumerate(coords) if op_sign(op, sp) == Sign.ZERO}


def _key_reach(key: Key, coords) -> set[int]:
    reach = set(range(len(coords)))
    for kind, op in key.projs:
        zeros = _proj_zeros(op, coords)
        reach &= zeros if kind == "k" else (set(range(len(coords))) - zeros)
    return reach


def _prune_term(t: LinearTerm, coords) -> LinearTerm:
    """Drop entries whose coefficient vanishes on every coordinate the key
    can reach."""
    kept = []
    for key, op in t.entries:
        reach = _key_reach(key, coords)
        if not reach:
            continue
        if all(op_sign(op, coords[i]) == Sign.ZERO for i in reach):
            continue
        kept.append((key, op))
    return LinearTerm(tuple(kept))


def _unit_coefficient(t: LinearTerm, coords) -> LinearTerm:
    """In an equation with a single surviving entry whose coefficient acts
    injectively everywhere it reaches, the coefficient can be dropped."""
    if len(t.entries) != 1:
        return t
    key, op = t.entries[0]
    reach = _key_reach(key, coords)
    if reach and all(op_sign(op, coords[i]) != Sign.ZERO for i in reach):
        return LinearTerm(((key, ONE_OP),))
    return t


# ---------------------------------------------------------------------------
# kernel/range splitting


def _u_split_atom(alpha: int, term: LinearTerm, sd: SplitData, n: int) -> Formula:
    """Projected form of a grading atom: the kernel side keeps the index,
    the range side vanishes above the least range coordinate at or above it
    (and dually)."""
    if alpha == 0:
        return And((TermEq(term.wrap("k", sd.witness)), TermEq(term.wrap("r", sd.witness))))
    if alpha >= n:
        return TRUE
    k_term = term.wrap("k", sd.witness)
    r_term = term.wrap("r", sd.witness)
    if alpha in sd.s:
        delta = min((b for b in sd.t if b >= alpha), default=n)
        k_part: Formula = UPred(alpha, k_term)
        r_part: Formula = TRUE if delta >= n else UPred(delta, r_term)
    else:
        gamma = min((b for b in sd.s if b >= alpha), default=n)
        k_part = TRUE if gamma >= n else UPred(gamma, k_term)
        r_part = UPred(alpha, r_term)
    return conj([k_part, r_part])


def kr_split(f: Formula, sd: SplitData, g: NSumSpec, *, project_guards: bool = False) -> Formula:
    """Rewrite a quantifier-free formula as a boolean combination in which
    every atom sits under the kernel or the range projection of the split
    witness.

    Order atoms expand into a disjunction over the grading level of their
    term, with the sign read off the projection holding that level.  With
    ``project_guards`` the level guards themselves are rewritten as well,
    which is the form the recursive eliminator needs.
    """
    if not isinstance(f, Formula):
        raise TypeError("expected a formula")
    from .formulas import has_quantifier

    if has_quantifier(f):
        raise NotQuantifierFree("the split operates on quantifier-free formulas")
    n = g.width
    coords = g.coords

    def split_atom(a: Formula) -> Formula:
        a = _norm_atom(a, n)
        if isinstance(a, (TrueF, FalseF)):
            return a
        if isinstance(a, TermEq):
            parts = [
                TermEq(_prune_term(a.term.wrap("k", sd.witness), coords)),
                TermEq(_prune_term(a.term.wrap("r", sd.witness), coords)),
            ]
            fixed = [
                TRUE if p.term.is_zero else TermEq(_unit_coefficient(p.term, coords))
                for p in parts
            ]
            return conj(fixed)
        if isinstance(a, UPred):
            out = _u_split_atom(a.index, a.term, sd, n)
            return map_atoms(out, lambda atom: _tidy(atom, coords))
        if isinstance(a, TermLt):
            branches = []
            for alpha in range(1, n + 1):
                side = "k" if (alpha - 1) in sd.s else "r"
                delta = TermLt(_prune_term(a.term.wrap(side, sd.witness), coords))
                if project_guards:
                    level: Formula = TRUE if alpha == n else split_atom(UPred(alpha, a.term))
                    below = split_atom(
                        TermEq(a.term) if alpha == 1 else UPred(alpha - 1, a.term)
                    )
                else:
                    level = UPred(alpha, a.term)
                    below = UPred(alpha - 1, a.term)
                branches.append(conj([level, Not(below), delta]))
            return disj(branches)
        raise VocabularyError(f"unexpected atom {type(a).__name__}")

    return simplify(map_atoms(f, split_atom))


def _tidy(atom: Formula, coords) -> Formula:
    if isinstance(atom, (TermEq, TermLt)):
        pruned = _prune_term(atom.term, coords)
        if pruned.is_zero:
            return TRUE if isinstance(atom, TermEq) else FALSE
        if isinstance(atom, TermEq):
            return TermEq(_unit_coefficient(pruned, coords))
        return TermLt(pruned)
    if isinstance(atom, UPred):
        pruned = _prune_term(atom.term, coords)
        return TRUE if pruned.is_zero else UPred(atom.index, pruned)
    return atom


# ---------------------------------------------------------------------------
# dull-case elimination by virtual substitution


def _dull_normalize(f: Formula, coords) -> Formula:
    """In a dull sum every projection is the identity or zero, so wrapped
    keys and kernel/range predicates reduce to plain terms."""
    n = len(coords)

    def norm_term(t: LinearTerm) -> LinearTerm:
        out = []
        for key, op in t.entries:
            alive = True
            for kind, pop in key.projs:
                zeros = _proj_zeros(pop, coords)
                keeps = len(zeros) == n if kind == "k" else len(zeros) == 0
                if not keeps:
                    alive = False
                    break
            if not alive:
                continue
            if all(op_sign(op, sp) == Sign.ZERO for sp in coords):
                continue
            out.append((Key((), key.var), op))
        return LinearTerm.make(out)

    def at_atom(a: Formula) -> Formula:
        a = _norm_atom(a, n)
        if isinstance(a, TermEq):
            t = norm_term(a.term)
            return TRUE if t.is_zero else TermEq(t)
        if isinstance(a, TermLt):
            t = norm_term(a.term)
            return FALSE if t.is_zero else TermLt(t)
        if isinstance(a, UPred):
            t = norm_term(a.term)
            return TRUE if t.is_zero else UPred(a.index, t)
        return a

    return simplify(map_atoms(f, at_atom))


def _u_atom(beta: int, t: LinearTerm) -> Formula:
    if t.is_zero:
        return TRUE
    if beta == 0:
        return TermEq(t)
    return UPred(beta, t)


def _not_u_atom(beta: int, t: LinearTerm) -> Formula:
    inner = _u_atom(beta, t)
    if isinstance(inner, TrueF):
        return FALSE
    return Not(inner)


@dataclass(frozen=True)
class _Candidate:
    kind: str  # "point" | "eps" | "inf"
    base: LinearTerm | None = None
    level: int = 0
    direction: int = 1


def _vs_eliminate(x: str, matrix: Formula, coords) -> Formula:
    n = len(coords)
    f = _dull_normalize(matrix, coords)
    if isinstance(f, (TrueF, FalseF)):
        return f

    # collect the distinct coefficient operators of the target variable
    ops: list[LaurentOperator] = []

    def collect(g: Formula):
        if isinstance(g, (TermEq, TermLt, UPred)):
            c = g.term.coefficient(x)
            if c is not None and c not in ops:
                ops.append(c)
        for ch in children(g):
            collect(ch)

    collect(f)
    if not ops:
        return f  # the variable does not occur; the domain is nonempty

    product = ONE_OP
    for c in ops:
        product = product * c

    def cofactor(c: LaurentOperator) -> LaurentOperator:
        out = ONE_OP
        for other in ops:
            if other != c:
                out = out * other
        return out

    y = fresh_name("y_", set(all_vars(f)) | {x})
    yvar = LinearTerm.var(y)

    def scale_atom(a: Formula) -> Formula:
        """Rewrite each atom so the target occurs with unit coefficient in
        a fresh variable related to the original by the coefficient
        product, which acts bijectively on a dull sum."""
        if not isinstance(a, (TermEq, TermLt, UPred)):
            return a
        c = a.term.coefficient(x)
        if c is None:
            return a
        p = cofactor(c)
        rest = a.term.drop_var(x).apply(p)
        arg = yvar + rest
        if isinstance(a, TermEq):
            return TermEq(arg)
        if isinstance(a, UPred):
            return UPred(a.index, arg)
        # order atom: the sign after multiplying depends on the grading
        # level of the value, which the cofactor preserves
        branches = []
        for alpha in range(1, n + 1):
            level = conj([_u_atom(alpha, arg) if alpha < n else TRUE,
                          _not_u_atom(alpha - 1, arg)])
            sgn = op_sign(p, coords[alpha - 1])
            body = TermLt(arg) if sgn == Sign.POS else TermLt(-arg)
            branches.append(conj([level, body]))
        return disj(branches)

    g = simplify(map_atoms(f, scale_atom))

    # test points: every atom root, perturbed at each grading level, plus
    # the two extremes
    bases: list[LinearTerm] = []

    def collect_bases(h: Formula):
        if isinstance(h, (TermEq, TermLt, UPred)):
            c = h.term.coefficient(y)
            if c is not None:
                rest = h.term.drop_var(y)
                base = -rest if c == ONE_OP else rest
                if base not in bases:
                    bases.append(base)
        for ch in children(h):
            collect_bases(ch)

    collect_bases(g)
    candidates: list[_Candidate] = []
    for b in bases:
        candidates.append(_Candidate("point", b))
        for alpha in range(1, n + 1):
            candidates.append(_Candidate("eps", b, alpha, 1))
            candidates.append(_Candidate("eps", b, alpha, -1))
    candidates.append(_Candidate("inf", None, 0, 1))
    candidates.append(_Candidate("inf", None, 0, -1))

    def subst_atom(a: Formula, cand: _Candidate) -> Formula:
        if not isinstance(a, (TermEq, TermLt, UPred)):
            return a
        c = a.term.coefficient(y)
        if c is None:
            return a
        eps = 1 if c == ONE_OP else -1
        rest = a.term.drop_var(y)
        if cand.kind == "inf":
            direction = cand.direction * eps
            if isinstance(a, (TermEq, UPred)):
                return FALSE
            return TRUE if direction < 0 else FALSE
        # candidate is y = base + delta, so the atom argument becomes
        # (rest + eps*base) + eps*delta with the first part variable-free
        d = rest + cand.base if eps == 1 else rest - cand.base
        if cand.kind == "point":
            if isinstance(a, TermEq):
                return TermEq(d) if not d.is_zero else TRUE
            if isinstance(a, UPred):
                return _u_atom(a.index, d)
            return TermLt(d) if not d.is_zero else FALSE
        direction = cand.direction * eps
        alpha = cand.level
        if isinstance(a, TermEq):
            return FALSE
        if isinstance(a, UPred):
            return _u_atom(a.index, d) if alpha <= a.index else FALSE
        lt_d: Formula = TermLt(d) if not d.is_zero else FALSE
        if direction > 0:
            return conj([lt_d, _not_u_atom(alpha - 1, d)])
        return disj([lt_d, _u_atom(alpha - 1, d)])

    results = []
    for cand in candidates:
        results.append(simplify(map_atoms(g, lambda a, c=cand: subst_atom(a, c))))
    return simplify(disj(results))


# ---------------------------------------------------------------------------
# the recursive eliminator


def _side_of_atom(a: Formula, witness: LaurentOperator) -> str:
    term = a.term if isinstance(a, (TermEq, TermLt, UPred)) else None
    if term is None or not term.entries:
        return "ground"
    sides = set()
    for key, _ in term.entries:
        if not key.projs:
            return "mixed"
        kind, op = key.projs[0]
        sides.add(kind if op == witness else "mixed")
    if sides == {"k"}:
        return "k"
    if sides == {"r"}:
        return "r"
    return "mixed"


def _strip_side(f: Formula, witness: LaurentOperator, index_map: dict[int, int]) -> Formula:
    def at_atom(a: Formula) -> Formula:
        if isinstance(a, (TermEq, TermLt, UPred)):
            entries = []
            for key, op in a.term.entries:
                entries.append((Key(key.projs[1:], key.var), op))
            t = LinearTerm.make(entries)
            if isinstance(a, UPred):
                return _u_atom(index_map[a.index], t)
            return type(a)(t)
        return a

    return map_atoms(f, at_atom)


def _wrap_side(f: Formula, kind: str, witness: LaurentOperator, back_map: dict[int, int]) -> Formula:
    def at_atom(a: Formula) -> Formula:
        if isinstance(a, (TermEq, TermLt, UPred)):
            t = a.term.wrap(kind, witness)
            if isinstance(a, UPred):
                return UPred(back_map[a.index], t)
            return type(a)(t)
        return a

    return map_atoms(f, at_atom)


def _exists_over(x: str, matrix: Formula, coords: tuple[Species, ...]) -> Formula:
    spec = NSumSpec(coords)
    result = is_dull(spec)
    if result.dull:
        return _vs_eliminate(x, matrix, coords)

    sd = split_data(spec, result.witness)
    s_sorted = sorted(sd.s)
    t_sorted = sorted(sd.t)
    split = kr_split(simplify(matrix), sd, spec, project_guards=True)
    prepared = simplify(_split_group_negations(split))
    if isinstance(prepared, (TrueF, FalseF)):
        return prepared

    # local grading views of the two projections
    k_coords = tuple(coords[i] for i in s_sorted)
    t_coords = tuple(coords[i] for i in t_sorted)
    k_down = {alpha: sum(1 for b in s_sorted if b < alpha) for alpha in range(len(coords) + 1)}
    t_down = {alpha: sum(1 for b in t_sorted if b < alpha) for alpha in range(len(coords) + 1)}
    k_up = {local: s_sorted[local] for local in range(len(s_sorted))}
    t_up = {local: t_sorted[local] for local in range(len(t_sorted))}

    out = []
    for cube in dnf_cubes(prepared):
        k_lits: list[Formula] = []
        r_lits: list[Formula] = []
        ground: list[Formula] = []
        for lit in cube:
            atom = lit.arg if isinstance(lit, Not) else lit
            side = _side_of_atom(atom, sd.witness)
            if side == "ground":
                ground.append(lit)
            elif side == "k":
                k_lits.append(lit)
            elif side == "r":
                r_lits.append(lit)
            else:
                raise AssertionError("split produced a mixed atom")
        theta_k = _strip_side(conj(k_lits), sd.witness, k_down)
        theta_r = _strip_side(conj(r_lits), sd.witness, t_down)
        psi_k = _exists_over(x, theta_k, k_coords)
        psi_r = _exists_over(x, theta_r, t_coords)
        back_k = _wrap_side(psi_k, "k", sd.witness, k_up)
        back_r = _wrap_side(psi_r, "r", sd.witness, t_up)
        out.append(simplify(conj(ground + [back_k, back_r])))
    return simplify(disj(out))


def _split_group_negations(f: Formula) -> Formula:
    """NNF with negated order atoms expanded; negated equations and negated
    grading atoms stay as literals."""
    g = nnf(f)

    def walk(h: Formula) -> Formula:
        if isinstance(h, Not):
            a = h.arg
            if isinstance(a, TermLt):
                return disj([TermLt(-a.term), TermEq(a.term)])
            if isinstance(a, (TermEq, UPred)):
                return h
            if isinstance(a, (TrueF, FalseF)):
                return FALSE if isinstance(a, TrueF) else TRUE
            raise VocabularyError(f"unexpected literal {type(a).__name__}")
        if is_atom(h):
            return h
        return rebuild(h, [walk(c) for c in children(h)])

    return walk(g)


def _check_graded_vocab(f: Formula, n: int) -> None:
    def walk(g: Formula):
        if is_atom(g):
            _ = _norm_atom(g, n) if not isinstance(g, (TrueF, FalseF)) else g
            return
        for c in children(g):
            walk(c)

    walk(f)


def qe_nsum(f: Formula, g: NSumSpec) -> Formula:
    """Quantifier-free equivalent of ``f`` over the graded sum of ``g``."""
    require_valid_spec(g)
    n = g.width
    _check_graded_vocab(f, n)
    h = standardize_apart(map_atoms(f, lambda a: _norm_atom(a, n)))

    def rec(k: Formula) -> Formula:
        if is_atom(k):
            return k
        if isinstance(k, Exists):
            body = simplify(_split_group_negations(rec(k.body)))
            return _exists_over(k.var, body, g.coords)
        if isinstance(k, Forall):
            body = simplify(_split_group_negations(simplify(Not(rec(k.body)))))
            return simplify(Not(_exists_over(k.var, body, g.coords)))
        return rebuild(k, [rec(c) for c in children(k)])

    return simplify(rec(h))


def _eval_ground(f: Formula) -> bool:
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, TermEq):
        return f.term.is_zero
    if isinstance(f, TermLt):
        return False
    if isinstance(f, UPred):
        return f.term.is_zero
    if isinstance(f, Not):
        return not _eval_ground(f.arg)
    if isinstance(f, And):
        return all(_eval_ground(a) for a in f.args)
    if isinstance(f, Or):
        return any(_eval_ground(a) for a in f.args)
    if isinstance(f, Implies):
        return (not _eval_ground(f.lhs)) or _eval_ground(f.rhs)
    raise VocabularyError(f"cannot evaluate ground {type(f).__name__}")


def decide_nsum(f: Formula, g: NSumSpec) -> bool:
    """Truth of a sentence in the graded sum described by ``g``."""
    if free_vars(f):
        raise FreeVariables(f"free variables: {sorted(free_vars(f))}")
    return _eval_ground(qe_nsum(f, g))


# ---------------------------------------------------------------------------
# representative sequences


@dataclass(frozen=True)
class PlanEntry:
    lower: Fraction
    upper: Fraction | None  # None encodes an unbounded multiplier
    clause: str  # "eq" | "lt" | "gt" | "none"


@dataclass(frozen=True)
class RepresentativePlan:
    entries: tuple[PlanEntry, ...]


def _species_locator(s: Species):
    """Grouping data for a species' multiplier: ('alg', point),
    ('name', name) or ('inf', None)."""
    if isinstance(s, _ALGEBRAIC):
        return ("alg", AlgebraicPoint(P.strip(s.minpoly), s.interval))
    if isinstance(s, Transcendental):
        return ("name", s.name)
    return ("inf", None)


def representative_theta(g: NSumSpec) -> tuple[RepresentativePlan, Formula]:
    """Rational windows isolating each coordinate's multiplier, plus the
    quantifier-free formula asserting that a tuple is a representative
    sequence: positive increasing entries whose growth sits in the window,
    with the exact/below/above clause for algebraic multipliers.
    """
    require_valid_spec(g)
    for a, b in zip(g.coords, g.coords[1:]):
        if species_equiv(a, b):
            raise NotReduced("adjacent coordinates are equivalent")

    # group coordinates by the underlying multiplier
    group_of: list[int] = []
    reps: list[tuple] = []
    for s in g.coords:
        kind, data = _species_locator(s)
        found = None
        for idx, (rk, rd) in enumerate(reps):
            if rk != kind:
                continue
            if kind == "alg" and points_equal(rd, data):
                found = idx
            elif kind == "name" and rd == data:
                found = idx
            elif kind == "inf":
                found = idx
        if found is None:
            reps.append((kind, data))
            found = len(reps) - 1
        group_of.append(found)

    # a rational bracket per group; algebraic brackets are refinable
    brackets: list[list[Fraction] | None] = []
    refinable: list[tuple | None] = []
    for kind, data in reps:
        if kind == "alg":
            brackets.append(list(data.interval))
            refinable.append(data.poly)
        elif kind == "name":
            sp = next(
                s for s in g.coords if isinstance(s, Transcendental) and s.name == data
            )
            brackets.append(list(sp.intervals[-1]))
            refinable.append(None)
        else:
            brackets.append(None)
            refinable.append(None)

    finite = [i for i, b in enumerate(brackets) if b is not None]
    for _ in range(256):
        clash = False
        for ii in range(len(finite)):
            for jj in range(ii + 1, len(finite)):
                a, b = brackets[finite[ii]], brackets[finite[jj]]
                if a[0] < b[1] and b[0] < a[1]:
                    clash = True
        if not clash:
            break
        progressed = False
        for idx in finite:
            if refinable[idx] is not None:
                lo, hi = refine_root_interval(refinable[idx], *brackets[idx])
                brackets[idx] = [lo, hi]
                progressed = True
        if not progressed:
            raise Unresolvable("cannot separate the coordinate multipliers")
    else:
        raise Unresolvable("cannot separate the coordinate multipliers")

    order = sorted(finite, key=lambda idx: brackets[idx][0])
    bounds: dict[int, tuple[Fraction, Fraction | None]] = {}
    prev_hi: Fraction | None = None
    lowers: list[Fraction] = []
    for pos, idx in enumerate(order):
        lo, hi = brackets[idx]
        if pos == 0:
            left = P.simplest_at_most(lo)
        else:
            left = P.simplest_between(prev_hi, lo)
        lowers.append(left)
        prev_hi = hi
    for pos, idx in enumerate(order):
        right: Fraction | None
        if pos + 1 < len(order):
            right = lowers[pos + 1]
        else:
            right = Fraction(P.ceil_frac(brackets[idx][1]))
            if right == lowers[pos]:
                right = right + 1
        bounds[idx] = (lowers[pos], right)
    for idx, (kind, _) in enumerate(reps):
        if kind == "inf":
            if order:
                top = bounds[order[-1]][1]
            else:
                top = Fraction(1)
            bounds[idx] = (top, None)

    entries = []
    clauses: list[Formula] = []
    names = [f"a{i}" for i in range(g.width)]
    clauses.append(TermLt(-LinearTerm.var(names[0])))
    for i in range(g.width - 1):
        clauses.append(TermLt(LinearTerm.var(names[i]) - LinearTerm.var(names[i + 1])))
    for i, s in enumerate(g.coords):
        lo, hi = bounds[group_of[i]]
        av = names[i]
        low_op = LaurentOperator.from_dict({0: lo.numerator, 1: -lo.denominator})
        clauses.append(TermLt(LinearTerm.var(av, low_op)))
        if hi is not None:
            up_op = LaurentOperator.from_dict({1: hi.denominator, 0: -hi.numerator})
            clauses.append(TermLt(LinearTerm.var(av, up_op)))
        if isinstance(s, AlgebraicEq):
            clauses.append(TermEq(LinearTerm.var(av, minpoly_operator(s))))
            clause = "eq"
        elif isinstance(s, (AlgebraicLt, AlgebraicGt)):
            op = minpoly_operator(s)
            sgn = op_sign(op, s)
            clauses.append(
                TermLt(LinearTerm.var(av, op if sgn == Sign.NEG else -op))
            )
            clause = "lt" if isinstance(s, AlgebraicLt) else "gt"
        else:
            clause = "none"
        entries.append(PlanEntry(lo, hi, clause))
    return RepresentativePlan(tuple(entries)), conj(clauses)


def u_alpha_defs(alpha: int, g: NSumSpec) -> tuple[Formula, Formula]:
    """Existential and universal definitions of the grading subgroup in the
    plain group vocabulary, via representative sequences applied to the
    absolute value of the argument (the subgroup is closed under negation).
    """
    n = g.width
    if not 0 <= alpha <= n:
        raise IndexOutOfRange(f"grading index {alpha} out of range 0..{n}")
    if alpha == 0:
        atom = TermEq(LinearTerm.var("x"))
        return atom, atom
    if alpha == n:
        return TRUE, TRUE
    _, theta = representative_theta(g)
    names = [f"a{i}" for i in range(n)]
    x = LinearTerm.var("x")

    def abs_below(bound: str) -> Formula:
        b = LinearTerm.var(bound)
        return And((TermLt(x - b), TermLt(-x - b)))

    exist_body = conj([theta, abs_below(names[alpha - 1])])
    univ_body = Implies(theta, abs_below(names[alpha]))
    exist: Formula = exist_body
    univ: Formula = univ_body
    for name in reversed(names):
        exist = Exists(name, exist)
        univ = Forall(name, univ)
    return exist, univ
