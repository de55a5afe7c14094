"""Canonical forms for the six congruences on closed conditional
expressions, ordered by increasing identification power:

    free < rp < cr < wm < mem < st

free treats every atom evaluation as observable; rp identifies the
replies of immediately repeated atoms; cr contracts such repetitions;
wm also contracts across one intervening evaluation; mem contracts any
recurrence along an evaluation path; st ignores evaluation order and
side effects entirely (plain truth tables).

Each canonical form starts from the shared basic form (conditions are
single atoms) and then applies the class-specific collapse bottom-up.
For free and st the canonical form is complete for the congruence; for
the intermediate classes it realizes the published normalization step
and equivalence checking backs it with a state-based oracle.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from itertools import permutations

from .rewriting import CP_TRS, normal_form
from .terms import (
    FALSE,
    TRUE,
    Alphabet,
    Atom,
    AtomLeaf,
    BoolLeaf,
    Conditional,
    Term,
    atoms_of,
    is_basic_form,
    neg,
    pos,
    substitute_constant,
)


class Congruence(enum.Enum):
    FREE = "free"
    RP = "rp"
    CR = "cr"
    WM = "wm"
    MEM = "mem"
    ST = "st"

    def __str__(self) -> str:
        return self.value


LADDER: tuple[Congruence, ...] = (
    Congruence.FREE,
    Congruence.RP,
    Congruence.CR,
    Congruence.WM,
    Congruence.MEM,
    Congruence.ST,
)


def congruence_by_name(name: str) -> Congruence:
    for k in LADDER:
        if k.value == name:
            return k
    raise ValueError(f"unknown congruence: {name!r}")


def _atoms_to_conditionals(t: Term) -> Term:
    # memoized on object identity: normal forms of large terms are
    # heavily shared DAGs, and a plain tree recursion would re-promote
    # every shared subterm once per path
    memo: dict[int, Term] = {}
    keep: list[Term] = []

    def go(s: Term) -> Term:
        if isinstance(s, AtomLeaf):
            return Conditional(TRUE, s, FALSE)
        if not isinstance(s, Conditional):
            return s
        k = id(s)
        got = memo.get(k)
        if got is not None:
            return got
        th = go(s.then_branch)
        el = go(s.else_branch)
        out = (
            s
            if th is s.then_branch and el is s.else_branch
            else Conditional(th, s.condition, el)
        )
        memo[k] = out
        keep.append(s)
        return out

    return go(t)


def basic_form(t: Term) -> Term:
    """The unique basic form: normalize under the directed conditional
    laws, then promote bare atoms in branch positions to T <| a |> F."""
    return _atoms_to_conditionals(normal_form(t, CP_TRS))


def _central(t: Term) -> Atom | None:
    if isinstance(t, Conditional) and isinstance(t.condition, AtomLeaf):
        return t.condition.atom
    return None


def rp_basic_form(t: Term) -> Term:
    """Children sharing the node's atom get equal branches: a repeated
    atom may reply either way, but replies the same on both asks."""

    def fix(s: Term) -> Term:
        if not isinstance(s, Conditional):
            return s
        left = fix(s.then_branch)
        right = fix(s.else_branch)
        a = s.condition
        assert isinstance(a, AtomLeaf)
        if _central(left) == a.atom:
            assert isinstance(left, Conditional)
            left = Conditional(left.then_branch, a, left.then_branch)
        if _central(right) == a.atom:
            assert isinstance(right, Conditional)
            right = Conditional(right.else_branch, a, right.else_branch)
        return Conditional(left, a, right)

    return fix(basic_form(t))


def cr_basic_form(t: Term) -> Term:
    """Immediately repeated atoms contract away entirely."""

    def fix(s: Term) -> Term:
        if not isinstance(s, Conditional):
            return s
        left = fix(s.then_branch)
        right = fix(s.else_branch)
        a = s.condition
        assert isinstance(a, AtomLeaf)
        while _central(left) == a.atom:
            assert isinstance(left, Conditional)
            left = left.then_branch
        while _central(right) == a.atom:
            assert isinstance(right, Conditional)
            right = right.else_branch
        return Conditional(left, a, right)

    return fix(basic_form(t))


def _prune_pos(t: Term, a: Atom) -> Term:
    if not isinstance(t, Conditional):
        return t
    assert isinstance(t.condition, AtomLeaf)
    if t.condition.atom == a:
        return _prune_pos(t.then_branch, a)
    return Conditional(_prune_pos(t.then_branch, a), t.condition, t.else_branch)


def _prune_neg(t: Term, a: Atom) -> Term:
    if not isinstance(t, Conditional):
        return t
    assert isinstance(t.condition, AtomLeaf)
    if t.condition.atom == a:
        return _prune_neg(t.else_branch, a)
    return Conditional(t.then_branch, t.condition, _prune_neg(t.else_branch, a))


def wm_basic_form(t: Term) -> Term:
    """An atom just evaluated cannot recur as the next evaluation after
    one intervening atom with the same outcome: prune the node's atom
    from the left child's true-spine and the right child's false-spine."""

    def fix(s: Term) -> Term:
        if not isinstance(s, Conditional):
            return s
        left = fix(s.then_branch)
        right = fix(s.else_branch)
        a = s.condition
        assert isinstance(a, AtomLeaf)
        return Conditional(_prune_pos(left, a.atom), a, _prune_neg(right, a.atom))

    return fix(basic_form(t))


def mem_basic_form(t: Term) -> Term:
    """No atom recurs on any evaluation path: below a node with atom a,
    a is resolved to T on the left and F on the right."""

    def fix(s: Term) -> Term:
        if not isinstance(s, Conditional):
            return s
        a = s.condition
        assert isinstance(a, AtomLeaf)
        left = fix(basic_form(substitute_constant(s.then_branch, a.atom, True)))
        right = fix(basic_form(substitute_constant(s.else_branch, a.atom, False)))
        return Conditional(left, a, right)

    return fix(basic_form(t))


def static_eval(t: Term, assignment: dict[Atom, bool]) -> bool:
    if isinstance(t, BoolLeaf):
        return t.value
    if isinstance(t, AtomLeaf):
        return assignment[t.atom]
    assert isinstance(t, Conditional)
    if static_eval(t.condition, assignment):
        return static_eval(t.then_branch, assignment)
    return static_eval(t.else_branch, assignment)


def st_canonical(t: Term, order: Alphabet | None = None) -> Term:
    """Truth-table form: a full conditional tree over the given atom
    order (sorted atoms of t by default) with constant leaves."""
    present = atoms_of(t)
    if order is None:
        if not present:
            return TRUE if static_eval(t, {}) else FALSE
        order = Alphabet.from_atoms(present)
    uncovered = present - frozenset(order)
    if uncovered:
        names = ", ".join(sorted(a.name for a in uncovered))
        raise ValueError(f"order does not cover atoms: {names}")
    ordered = tuple(order)
    assignment: dict[Atom, bool] = {}

    def build(i: int) -> Term:
        if i == len(ordered):
            return TRUE if static_eval(t, assignment) else FALSE
        a = ordered[i]
        assignment[a] = True
        then_branch = build(i + 1)
        assignment[a] = False
        else_branch = build(i + 1)
        del assignment[a]
        return Conditional(then_branch, AtomLeaf(a), else_branch)

    return build(0)


def canonical_form(
    t: Term, congruence: Congruence, order: Alphabet | None = None
) -> Term:
    if congruence is Congruence.FREE:
        return basic_form(t)
    if congruence is Congruence.RP:
        return rp_basic_form(t)
    if congruence is Congruence.CR:
        return cr_basic_form(t)
    if congruence is Congruence.WM:
        return wm_basic_form(t)
    if congruence is Congruence.MEM:
        return mem_basic_form(t)
    return st_canonical(t, order)


def is_rp_basic_form(t: Term) -> bool:
    if not is_basic_form(t):
        return False

    def ok(s: Term) -> bool:
        if not isinstance(s, Conditional):
            return True
        a = s.condition
        assert isinstance(a, AtomLeaf)
        for child in (s.then_branch, s.else_branch):
            if _central(child) == a.atom:
                assert isinstance(child, Conditional)
                if child.then_branch != child.else_branch:
                    return False
        return ok(s.then_branch) and ok(s.else_branch)

    return ok(t)


def is_cr_basic_form(t: Term) -> bool:
    if not is_basic_form(t):
        return False

    def ok(s: Term) -> bool:
        if not isinstance(s, Conditional):
            return True
        a = s.condition
        assert isinstance(a, AtomLeaf)
        if _central(s.then_branch) == a.atom or _central(s.else_branch) == a.atom:
            return False
        return ok(s.then_branch) and ok(s.else_branch)

    return ok(t)


def is_wm_basic_form(t: Term) -> bool:
    if not is_basic_form(t):
        return False

    def ok(s: Term) -> bool:
        if not isinstance(s, Conditional):
            return True
        a = s.condition
        assert isinstance(a, AtomLeaf)
        if a.atom in pos(s.then_branch) or a.atom in neg(s.else_branch):
            return False
        return ok(s.then_branch) and ok(s.else_branch)

    return ok(t)


def is_mem_basic_form(t: Term) -> bool:
    if not is_basic_form(t):
        return False

    def ok(s: Term, banned: frozenset[Atom]) -> bool:
        if not isinstance(s, Conditional):
            return True
        a = s.condition
        assert isinstance(a, AtomLeaf)
        if a.atom in banned:
            return False
        deeper = banned | {a.atom}
        return ok(s.then_branch, deeper) and ok(s.else_branch, deeper)

    return ok(t, frozenset())


def is_st_canonical(t: Term, order: Alphabet) -> bool:
    ordered = tuple(order)

    def ok(s: Term, i: int) -> bool:
        if i == len(ordered):
            return isinstance(s, BoolLeaf)
        if not isinstance(s, Conditional) or s.condition != AtomLeaf(ordered[i]):
            return False
        return ok(s.then_branch, i + 1) and ok(s.else_branch, i + 1)

    return ok(t, 0)


def count_mem_basic_forms(n: int) -> int:
    """Number of mem-basic forms over an n-atom alphabet:
    2 constants plus, per choice of root atom, a pair of forms over the
    remaining atoms."""
    if n < 0:
        raise ValueError("alphabet size must be nonnegative")
    count = 2
    for i in range(1, n + 1):
        count = i * count * count + 2
    return count


def count_core_strings(n: int) -> int:
    """Number of nonempty strings of distinct atoms from an n-atom
    alphabet (evaluation histories with every atom remembered)."""
    if n < 0:
        raise ValueError("alphabet size must be nonnegative")
    count = 0
    for i in range(1, n + 1):
        count = i * (count + 1)
    return count


@lru_cache(maxsize=None)
def _mem_forms(atoms: frozenset[Atom]) -> tuple[Term, ...]:
    out: list[Term] = [TRUE, FALSE]
    for a in sorted(atoms):
        rest = _mem_forms(atoms - {a})
        leaf = AtomLeaf(a)
        out.extend(
            Conditional(left, leaf, right) for left in rest for right in rest
        )
    return tuple(out)


def enumerate_mem_basic_forms(alphabet: Alphabet) -> tuple[Term, ...]:
    return _mem_forms(frozenset(alphabet))


def enumerate_core_strings(alphabet: Alphabet) -> tuple[tuple[Atom, ...], ...]:
    atoms = tuple(alphabet)
    out: list[tuple[Atom, ...]] = []
    for k in range(1, len(atoms) + 1):
        out.extend(permutations(atoms, k))
    return tuple(out)
