"""Dense linear orders with a monotone automorphism: elimination, decision,
block-pattern theories and the split-cut counter.

Modes fix how the automorphism compares with the identity:

* ``increasing`` -- every point moves strictly up,
* ``decreasing`` -- strictly down,
* ``plain``      -- the automorphism is the identity, plain dense order.

In each mode a comparison between two shifts of the same variable resolves
to a truth value, which is what makes one-variable elimination terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    FreeVariables,
    IndexOutOfRange,
    InvalidPattern,
    UnsupportedVocabulary,
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
    Not,
    Or,
    OrderEq,
    OrderLt,
    OrderTerm,
    TrueF,
    children,
    conj,
    disj,
    dnf_cubes,
    free_vars,
    is_atom,
    nnf,
    rebuild,
    simplify,
    standardize_apart,
)
from .report import ValidationReport

MODES = ("plain", "increasing", "decreasing")


def _check_vocab(f: Formula) -> None:
    if is_atom(f):
        if not isinstance(f, (OrderLt, OrderEq, TrueF, FalseF)):
            raise UnsupportedVocabulary(
                f"{type(f).__name__} is not part of the order vocabulary"
            )
        return
    for c in children(f):
        _check_vocab(c)


def _make_lt(a: OrderTerm, b: OrderTerm, mode: str) -> Formula:
    """Order literal with same-variable comparisons resolved by the mode."""
    if mode == "plain":
        a, b = OrderTerm(a.var, 0), OrderTerm(b.var, 0)
    if a.var == b.var:
        if mode == "increasing":
            return TRUE if a.shift < b.shift else FALSE
        if mode == "decreasing":
            return TRUE if a.shift > b.shift else FALSE
        return FALSE  # identity automorphism: x < x
    return OrderLt(a, b)


def _make_eq(a: OrderTerm, b: OrderTerm, mode: str) -> Formula:
    if mode == "plain":
        a, b = OrderTerm(a.var, 0), OrderTerm(b.var, 0)
    if a.var == b.var:
        if mode == "plain":
            return TRUE
        return TRUE if a.shift == b.shift else FALSE
    return OrderEq(a, b)


def _normalize(f: Formula, mode: str) -> Formula:
    def at_atom(g: Formula) -> Formula:
        if isinstance(g, OrderLt):
            return _make_lt(g.lhs, g.rhs, mode)
        if isinstance(g, OrderEq):
            return _make_eq(g.lhs, g.rhs, mode)
        return g

    from .formulas import map_atoms

    return map_atoms(f, at_atom)


def _split_negations(f: Formula, mode: str) -> Formula:
    """NNF where a negated order atom is expanded by totality."""
    g = nnf(f)

    def walk(h: Formula) -> Formula:
        if isinstance(h, Not):
            a = h.arg
            if isinstance(a, OrderLt):
                return disj([_make_lt(a.rhs, a.lhs, mode), _make_eq(a.lhs, a.rhs, mode)])
            if isinstance(a, OrderEq):
                return disj([_make_lt(a.lhs, a.rhs, mode), _make_lt(a.rhs, a.lhs, mode)])
            if isinstance(a, (TrueF, FalseF)):
                return FALSE if isinstance(a, TrueF) else TRUE
            raise UnsupportedVocabulary(f"unexpected literal {type(a).__name__}")
        if is_atom(h):
            return h
        return rebuild(h, [walk(c) for c in children(h)])

    return walk(g)


def _subst_order(f: Formula, var: str, repl: OrderTerm, mode: str) -> Formula:
    def at_atom(g: Formula) -> Formula:
        if isinstance(g, (OrderLt, OrderEq)):
            lhs, rhs = g.lhs, g.rhs
            if lhs.var == var:
                lhs = repl.shifted(lhs.shift)
            if rhs.var == var:
                rhs = repl.shifted(rhs.shift)
            make = _make_lt if isinstance(g, OrderLt) else _make_eq
            return make(lhs, rhs, mode)
        return g

    from .formulas import map_atoms

    return map_atoms(f, at_atom)


def _eliminate_cube(x: str, cube: list[Formula], mode: str) -> Formula:
    passthrough: list[Formula] = []
    eqs: list[OrderTerm] = []
    lowers: list[OrderTerm] = []
    uppers: list[OrderTerm] = []
    neqs: list[OrderTerm] = []

    def on_x(t: OrderTerm) -> bool:
        return t.var == x

    for lit in cube:
        if isinstance(lit, TrueF):
            continue
        if isinstance(lit, FalseF):
            return FALSE
        if isinstance(lit, Not) and isinstance(lit.arg, OrderEq):
            a = lit.arg
            if on_x(a.lhs) and on_x(a.rhs):
                raise AssertionError("same-variable atom survived normalization")
            if on_x(a.lhs):
                neqs.append(a.rhs.shifted(-a.lhs.shift))
            elif on_x(a.rhs):
                neqs.append(a.lhs.shifted(-a.rhs.shift))
            else:
                passthrough.append(lit)
            continue
        if isinstance(lit, OrderEq):
            if on_x(lit.lhs) and on_x(lit.rhs):
                raise AssertionError("same-variable atom survived normalization")
            if on_x(lit.lhs):
                eqs.append(lit.rhs.shifted(-lit.lhs.shift))
            elif on_x(lit.rhs):
                eqs.append(lit.lhs.shifted(-lit.rhs.shift))
            else:
                passthrough.append(lit)
            continue
        if isinstance(lit, OrderLt):
            if on_x(lit.lhs) and on_x(lit.rhs):
                raise AssertionError("same-variable atom survived normalization")
            if on_x(lit.lhs):
                uppers.append(lit.rhs.shifted(-lit.lhs.shift))
            elif on_x(lit.rhs):
                lowers.append(lit.lhs.shifted(-lit.rhs.shift))
            else:
                passthrough.append(lit)
            continue
        raise UnsupportedVocabulary(f"unexpected literal {type(lit).__name__}")

    if eqs:
        pivot = eqs[0]
        rest = conj(
            [OrderEq(OrderTerm(x, 0), e) for e in eqs[1:]]
            + [Not(OrderEq(OrderTerm(x, 0), d)) for d in neqs]
            + [OrderLt(l, OrderTerm(x, 0)) for l in lowers]
            + [OrderLt(OrderTerm(x, 0), u) for u in uppers]
        )
        substituted = _subst_order(rest, x, pivot, mode)
        return simplify(conj(passthrough + [substituted]))

    # without a pinning equality the feasible set is open, hence infinite,
    # and finitely many excluded points never matter
    cross = [_make_lt(l, u, mode) for l in lowers for u in uppers]
    return simplify(conj(passthrough + cross))


def _eliminate_exists(x: str, matrix: Formula, mode: str) -> Formula:
    prepared = simplify(_split_negations(matrix, mode))
    if isinstance(prepared, (TrueF, FalseF)):
        return prepared
    results = [_eliminate_cube(x, cube, mode) for cube in dnf_cubes(prepared)]
    return simplify(disj(results))


def qe_dlo(f: Formula, mode: str = "increasing") -> Formula:
    """Quantifier-free equivalent over dense orders with the given kind of
    automorphism."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    _check_vocab(f)
    g = standardize_apart(_normalize(f, mode))

    def rec(h: Formula) -> Formula:
        if is_atom(h):
            return h
        if isinstance(h, Exists):
            return _eliminate_exists(h.var, rec(h.body), mode)
        if isinstance(h, Forall):
            inner = _eliminate_exists(h.var, simplify(Not(rec(h.body))), mode)
            return simplify(Not(inner))
        return rebuild(h, [rec(c) for c in children(h)])

    return simplify(rec(g))


def decide_block_sentence(f: Formula, mode: str = "increasing") -> bool:
    """Truth of a sentence in the dense-order theory selected by the mode."""
    if free_vars(f):
        raise FreeVariables(f"free variables: {sorted(free_vars(f))}")
    result = qe_dlo(f, mode)
    if isinstance(result, TrueF):
        return True
    if isinstance(result, FalseF):
        return False
    raise AssertionError(f"sentence did not reduce to a truth value: {result!r}")


# ---------------------------------------------------------------------------
# block patterns


class BlockLetter(Enum):
    C1 = "C1"
    CEMPTY = "Cempty"
    I = "I"  # noqa: E741
    D = "D"

    @property
    def base(self) -> str:
        return "C" if self in (BlockLetter.C1, BlockLetter.CEMPTY) else self.value


@dataclass(frozen=True)
class BlockPattern:
    word: tuple[BlockLetter, ...]

    @staticmethod
    def parse(text: str) -> "BlockPattern":
        text = text.strip()
        if not text:
            raise InvalidPattern("empty pattern")
        if "," in text:
            names = {b.value: b for b in BlockLetter}
            letters = []
            for piece in text.split(","):
                piece = piece.strip()
                if piece not in names:
                    raise InvalidPattern(f"unknown block letter {piece!r}")
                letters.append(names[piece])
            return BlockPattern(tuple(letters))
        letters = []
        for ch in text:
            if ch == "I":
                letters.append(BlockLetter.I)
            elif ch == "D":
                letters.append(BlockLetter.D)
            else:
                raise InvalidPattern(
                    f"letter {ch!r} needs the comma-separated form (C1 or Cempty)"
                )
        return BlockPattern(tuple(letters))

    def __str__(self) -> str:
        return ",".join(b.value for b in self.word)


def validate_pattern(p: BlockPattern) -> ValidationReport:
    report = ValidationReport()
    if not p.word:
        report.add("Empty", "a pattern needs at least one block")
        return report
    for i in range(len(p.word) - 1):
        if p.word[i].base == p.word[i + 1].base:
            report.add(
                "AdjacentSameType",
                f"blocks {i} and {i + 1} share base type {p.word[i].base}"
                " and would merge into one class",
            )
    return report


def count_patterns(n: int) -> int:
    """Number of valid patterns with exactly ``n`` blocks."""
    if n < 1:
        raise ValueError("need n >= 1")
    # weight 2 for the two constant-block variants, 1 for I and D
    counts = {"C": 2, "I": 1, "D": 1}
    for _ in range(n - 1):
        counts = {
            base: sum(v for b, v in counts.items() if b != base) * (2 if base == "C" else 1)
            for base in counts
        }
    return sum(counts.values())


class ClassWord:
    """Word over C/I/D, one letter per automorphism-growth class."""

    def __init__(self, letters: str):
        letters = letters.strip().replace(",", "")
        if not letters:
            raise InvalidPattern("empty class word")
        for ch in letters:
            if ch not in "CID":
                raise InvalidPattern(f"unknown class letter {ch!r}")
        self.letters = letters

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class SplitCutCounts:
    increasing: int  # x < s(x) holds below the cut, fails above
    constant: int  # s(x) = x
    decreasing: int  # s(x) < x
    total: int


def count_split_cuts(word: ClassWord | str) -> SplitCutCounts:
    w = word.letters if isinstance(word, ClassWord) else ClassWord(word).letters
    inc = const = dec = 0
    for lo, hi in zip(w, w[1:]):
        if lo == hi:
            continue
        if lo == "I":
            inc += 1
        elif lo == "C":
            const += 1
        else:
            dec += 1
    total = sum(1 for lo, hi in zip(w, w[1:]) if lo != hi)
    return SplitCutCounts(inc, const, dec, total)


# ---------------------------------------------------------------------------
# the first-order block machinery


def _ot(var: str, shift: int = 0) -> OrderTerm:
    return OrderTerm(var, shift)


def _iff(a: Formula, b: Formula) -> Formula:
    return And((Implies(a, b), Implies(b, a)))


def _behavior(var: str, letter: str) -> Formula:
    if letter == "C":
        return OrderEq(_ot(var, 1), _ot(var))
    if letter == "I":
        return OrderLt(_ot(var), _ot(var, 1))
    return OrderLt(_ot(var, 1), _ot(var))


def _relate(a: str, b: str) -> Formula:
    """The directed neighbor relation: a < b and one growth behavior holds
    uniformly on a, on b, and on everything in between."""
    e = "e_"
    same = []
    for letter in "CID":
        pa, pe, pb = _behavior(a, letter), _behavior(e, letter), _behavior(b, letter)
        same.append(And((_iff(pa, pe), _iff(pe, pb))))
    guard = And((OrderLt(_ot(a), _ot(e)), OrderLt(_ot(e), _ot(b))))
    return And((OrderLt(_ot(a), _ot(b)), Forall(e, Implies(guard, disj(same)))))


def _equivalent(a: str, b: str) -> Formula:
    return disj([OrderEq(_ot(a), _ot(b)), _relate(a, b), _relate(b, a)])


def block_membership_formula(k: int, n: int) -> Formula:
    """Free variable ``x`` lies in the k-th growth class of an order with
    exactly n classes (classes counted from below, k between 1 and n).

    Built from chains of representatives at or below x: there are k pairwise
    inequivalent points at or below x, and no k+1 such points.
    """
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"block index {k} out of range 1..{n}")

    def chain(count: int) -> tuple[list[str], Formula]:
        names = [f"y{i + 1}" for i in range(count)]
        ordered = [OrderLt(_ot(a), _ot(b)) for a, b in zip(names, names[1:])]
        ordered.append(Not(OrderLt(_ot("x"), _ot(names[-1]))))  # last one <= x
        return names, conj(ordered)

    parts = []
    if k >= 1:
        names, guard = chain(k)
        distinct = [
            Not(_equivalent(a, b)) for i, a in enumerate(names) for b in names[i + 1:]
        ]
        body = conj([guard] + distinct)
        for name in reversed(names):
            body = Exists(name, body)
        parts.append(body)
    names, guard = chain(k + 1)
    collapse = disj(
        [_equivalent(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    )
    body = Implies(guard, collapse)
    for name in reversed(names):
        body = Forall(name, body)
    parts.append(body)
    return conj(parts)


def block_count_sentence(n: int) -> Formula:
    """There are exactly n growth classes."""
    some_block = disj([block_membership_formula(k, n) for k in range(1, n + 1)])
    top = block_membership_formula(n, n)
    return And((Forall("x", some_block), Exists("x", top)))


def dlo_axioms() -> list[Formula]:
    x, y, z = _ot("x"), _ot("y"), _ot("z")
    return [
        Forall("x", Not(OrderLt(x, x))),
        Forall(
            "x",
            Forall(
                "y",
                Forall(
                    "z",
                    Implies(And((OrderLt(x, y), OrderLt(y, z))), OrderLt(x, z)),
                ),
            ),
        ),
        Forall(
            "x",
            Forall(
                "y",
                disj([OrderLt(x, y), OrderEq(x, y), OrderLt(y, x)]),
            ),
        ),
        Forall(
            "x",
            Forall(
                "y",
                Implies(
                    OrderLt(x, y),
                    Exists("z", And((OrderLt(x, z), OrderLt(z, y)))),
                ),
            ),
        ),
        Forall("x", Exists("y", OrderLt(x, y))),
        Forall("x", Exists("y", OrderLt(y, x))),
        Exists("x", Exists("y", OrderLt(_ot("x"), _ot("y")))),
    ]


def automorphism_axioms() -> list[Formula]:
    x, y = _ot("x"), _ot("y")
    return [
        Forall("x", Forall("y", Implies(OrderLt(x, y), OrderLt(_ot("x", 1), _ot("y", 1))))),
        Forall("y", Exists("x", OrderEq(_ot("x", 1), y))),
    ]


def pattern_axioms(p: BlockPattern) -> list[Formula]:
    """Axioms of the complete theory described by a block pattern: dense
    order, automorphism, exact class count, per-class growth behavior, and
    the singleton/dense split for constant classes."""
    report = validate_pattern(p)
    if not report.ok:
        raise InvalidPattern(str(report))
    n = len(p.word)
    axioms = dlo_axioms() + automorphism_axioms() + [block_count_sentence(n)]
    for idx, letter in enumerate(p.word, start=1):
        member = block_membership_formula(idx, n)
        axioms.append(Forall("x", Implies(member, _behavior("x", letter.base))))
        if letter == BlockLetter.C1:
            other = block_membership_formula(idx, n)
            both = And((member, rename_to(other, "x", "w")))
            axioms.append(
                Forall("x", Forall("w", Implies(both, OrderEq(_ot("x"), _ot("w")))))
            )
        elif letter == BlockLetter.CEMPTY:
            inner = rename_to(block_membership_formula(idx, n), "x", "w")
            above = Exists("w", And((inner, OrderLt(_ot("x"), _ot("w")))))
            below = Exists("w", And((inner, OrderLt(_ot("w"), _ot("x")))))
            axioms.append(Forall("x", Implies(member, And((above, below)))))
    return axioms


def rename_to(f: Formula, old: str, new: str) -> Formula:
    from .formulas import rename_free

    return rename_free(f, old, new)
