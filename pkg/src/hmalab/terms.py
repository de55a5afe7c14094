"""Core term model for conditional expressions.

Terms are closed expressions over atoms and the truth constants, built
from the ternary conditional: ``cond(x, y, z)`` evaluates y first and
then picks x or z.  Everything here is immutable and hashable.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Atom:
    """A named basic proposition; evaluating one may change the state."""

    name: str

    def __post_init__(self) -> None:
        if not _ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


class Term:
    """Base class for closed conditional expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class BoolLeaf(Term):
    value: bool

    def __str__(self) -> str:
        return "T" if self.value else "F"


@dataclass(frozen=True)
class AtomLeaf(Term):
    atom: Atom

    def __str__(self) -> str:
        return self.atom.name


@dataclass(frozen=True)
class Conditional(Term):
    """then_branch if condition evaluates true, else else_branch."""

    then_branch: Term
    condition: Term
    else_branch: Term

    def __str__(self) -> str:
        from .syntax import print_term

        return print_term(self)


TRUE = BoolLeaf(True)
FALSE = BoolLeaf(False)


def atom(name: str) -> AtomLeaf:
    return AtomLeaf(Atom(name))


def cond(then_branch: Term, condition: Term, else_branch: Term) -> Conditional:
    return Conditional(then_branch, condition, else_branch)


def subterms(t: Term) -> Iterator[Term]:
    """All subterm occurrences of t, including t itself, preorder."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Conditional):
            stack.extend((s.else_branch, s.condition, s.then_branch))


def atoms_of(t: Term) -> frozenset[Atom]:
    return frozenset(s.atom for s in subterms(t) if isinstance(s, AtomLeaf))


def is_basic_form(t: Term) -> bool:
    """Basic forms: T, F, or a conditional whose condition is a bare atom
    and whose branches are again basic forms."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, BoolLeaf):
            continue
        if not isinstance(s, Conditional) or not isinstance(s.condition, AtomLeaf):
            return False
        stack.append(s.then_branch)
        stack.append(s.else_branch)
    return True


def query_bound(t: Term) -> int:
    """Worst-case number of atom evaluations one run of t can perform."""
    if isinstance(t, BoolLeaf):
        return 0
    if isinstance(t, AtomLeaf):
        return 1
    assert isinstance(t, Conditional)
    return query_bound(t.condition) + max(
        query_bound(t.then_branch), query_bound(t.else_branch)
    )


def pos(t: Term) -> frozenset[Atom]:
    """Atoms on the positive spine of a basic form: the condition, then
    recursively the condition of the then-branch, and so on."""
    if not is_basic_form(t):
        raise ValueError("pos is defined on basic forms only")
    out: set[Atom] = set()
    while isinstance(t, Conditional):
        assert isinstance(t.condition, AtomLeaf)
        out.add(t.condition.atom)
        t = t.then_branch
    return frozenset(out)


def neg(t: Term) -> frozenset[Atom]:
    """Atoms on the negative spine of a basic form (else-branch side)."""
    if not is_basic_form(t):
        raise ValueError("neg is defined on basic forms only")
    out: set[Atom] = set()
    while isinstance(t, Conditional):
        assert isinstance(t.condition, AtomLeaf)
        out.add(t.condition.atom)
        t = t.else_branch
    return frozenset(out)


def substitute_constant(t: Term, a: Atom, value: bool) -> Term:
    """Replace every occurrence of atom a by the constant T or F.

    Occurrences in condition position are replaced like any other, so the
    atom is eliminated from the result entirely.
    """
    leaf = TRUE if value else FALSE
    if isinstance(t, AtomLeaf):
        return leaf if t.atom == a else t
    if isinstance(t, Conditional):
        return Conditional(
            substitute_constant(t.then_branch, a, value),
            substitute_constant(t.condition, a, value),
            substitute_constant(t.else_branch, a, value),
        )
    return t


@dataclass(frozen=True)
class Alphabet:
    """A finite, ordered set of atoms.  Order is significant: canonical
    constructions (truth-table layering, state enumeration) follow it."""

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("alphabet atoms must be distinct")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        return cls(tuple(Atom(n) for n in names))

    @classmethod
    def from_atoms(cls, atoms: Sequence[Atom] | frozenset[Atom]) -> "Alphabet":
        return cls(tuple(sorted(atoms)))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, a: Atom) -> bool:
        return a in self.atoms

    def __str__(self) -> str:
        return ",".join(a.name for a in self.atoms)


def random_term(
    rng: random.Random,
    alphabet: Alphabet,
    max_depth: int,
    leaf_bias: float = 0.35,
) -> Term:
    """Random closed term of depth at most max_depth."""
    if max_depth <= 0 or rng.random() < leaf_bias:
        k = rng.randrange(3)
        if k == 0:
            return TRUE
        if k == 1:
            return FALSE
        return AtomLeaf(rng.choice(alphabet.atoms))
    return Conditional(
        random_term(rng, alphabet, max_depth - 1, leaf_bias),
        random_term(rng, alphabet, max_depth - 1, leaf_bias),
        random_term(rng, alphabet, max_depth - 1, leaf_bias),
    )
