"""Valuation states: finite truncations of the side-effecting valuation
functions that interpret atoms, one state class per congruence.

A state holds a boolean table over admissible evaluation histories
(non-empty atom strings) up to a depth budget.  Atom evaluation both
replies (a table lookup) and applies (shifts the table, class
specific).  The class determines the admissible histories and the
shift:

    FREE  all strings; shift prepends the atom
    RP    all strings; same shift, but the reply of an atom is stable
          under immediate repetition (trailing runs carry one value)
    CR    strings without adjacent repeats; repeats contract away
    WM    as CR, plus contraction across one intervening atom with the
          same outcome (checked as an implication family)
    MEM   strings of distinct atoms; every atom's first reply persists
    ST    single atoms; applying never changes the state

States here are finite tables, so every query and probe is bounded by
the depth budget chosen when the state is built.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Literal, Optional

from .normalform import Congruence, congruence_by_name
from .terms import Alphabet, Atom, AtomLeaf, BoolLeaf, Conditional, Term, query_bound

AtomString = tuple[Atom, ...]

DEFAULT_MAX_CHOICES = 24


def max_choices() -> int:
    raw = os.environ.get("HMALAB_MAX_CHOICES")
    if raw is None:
        return DEFAULT_MAX_CHOICES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"HMALAB_MAX_CHOICES must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("HMALAB_MAX_CHOICES must be positive")
    return value


class GuardError(RuntimeError):
    """Enumeration would take more boolean choices than allowed."""

    def __init__(self, required: int, limit: int, what: str = "boolean choices"):
        super().__init__(
            f"state enumeration requires {required} {what}, limit is {limit}"
        )
        self.required = required
        self.limit = limit


class InsufficientDepthError(RuntimeError):
    """The state's depth budget cannot cover the term's query bound."""

    def __init__(self, needed: int, available: int):
        super().__init__(
            f"evaluation needs depth {needed}, state budget is {available}"
        )
        self.needed = needed
        self.available = available


class StateFormatError(ValueError):
    pass


def contract_runs(sigma: AtomString) -> AtomString:
    out: list[Atom] = []
    for a in sigma:
        if not out or out[-1] != a:
            out.append(a)
    return tuple(out)


def tail_contract(sigma: AtomString) -> AtomString:
    """Collapse only the trailing run of equal atoms to one occurrence."""
    if not sigma:
        return sigma
    i = len(sigma) - 1
    while i > 0 and sigma[i - 1] == sigma[-1]:
        i -= 1
    return sigma[: i + 1]


def leadsto(a: Atom, sigma: AtomString) -> AtomString:
    """Left-concatenation with absorption of a leading repeat."""
    if sigma and sigma[0] == a:
        return sigma
    return (a,) + sigma


def leadsto_string(prefix: AtomString, sigma: AtomString) -> AtomString:
    for a in reversed(prefix):
        sigma = leadsto(a, sigma)
    return sigma


def remove_atom(sigma: AtomString, a: Atom) -> AtomString:
    return tuple(x for x in sigma if x != a)


def _all_strings(alphabet: Alphabet, low: int, high: int) -> Iterator[AtomString]:
    atoms = tuple(alphabet)
    for k in range(low, high + 1):
        yield from product(atoms, repeat=k)


def _cr_strings(alphabet: Alphabet, limit: int) -> tuple[AtomString, ...]:
    atoms = tuple(alphabet)
    out: list[AtomString] = []
    layer: list[AtomString] = [()]
    for _ in range(limit):
        layer = [s + (a,) for s in layer for a in atoms if not s or s[-1] != a]
        out.extend(layer)
    return tuple(out)


def _core_strings(alphabet: Alphabet, limit: int) -> tuple[AtomString, ...]:
    atoms = tuple(alphabet)
    out: list[AtomString] = []
    layer: list[AtomString] = [()]
    for _ in range(min(limit, len(atoms))):
        layer = [s + (a,) for s in layer for a in atoms if a not in s]
        out.extend(layer)
    return tuple(out)


def admissible_strings(
    congruence: Congruence, alphabet: Alphabet, limit: int
) -> tuple[AtomString, ...]:
    """The query domain of a depth-`limit` table of the given class,
    in shortlex order."""
    if limit < 0:
        raise ValueError("depth budget must be nonnegative")
    if congruence in (Congruence.FREE, Congruence.RP):
        return tuple(_all_strings(alphabet, 1, limit))
    if congruence in (Congruence.CR, Congruence.WM):
        return _cr_strings(alphabet, limit)
    if congruence is Congruence.MEM:
        return _core_strings(alphabet, limit)
    return tuple((a,) for a in alphabet) if limit >= 1 else ()


def free_choice_count(congruence: Congruence, alphabet: Alphabet, limit: int) -> int:
    """Number of independent boolean choices that pin down one state."""
    n = len(alphabet)
    if congruence is Congruence.FREE:
        return sum(n**k for k in range(1, limit + 1))
    if congruence is Congruence.RP:
        # one choice per string whose last two atoms differ
        return n + sum(n ** (k - 1) * (n - 1) for k in range(2, limit + 1))
    if congruence in (Congruence.CR, Congruence.WM):
        return len(_cr_strings(alphabet, limit))
    if congruence is Congruence.MEM:
        return len(_core_strings(alphabet, limit))
    return n if limit >= 1 else 0


@dataclass(frozen=True)
class TruncatedState:
    congruence: Congruence
    alphabet: Alphabet
    depth_budget: int
    table: dict[AtomString, bool] = field(hash=False)

    def __post_init__(self) -> None:
        expected = admissible_strings(self.congruence, self.alphabet, self.depth_budget)
        if len(self.table) != len(expected) or any(
            s not in self.table for s in expected
        ):
            raise ValueError("table domain does not match the admissible strings")

    def lookup(self, sigma: AtomString) -> bool:
        return self.table[sigma]


def _wm_constraint_instances(
    alphabet: Alphabet, limit: int
) -> tuple[tuple[AtomString, AtomString, tuple[tuple[AtomString, AtomString], ...]], ...]:
    """Instances (premise-pair, forced-pairs): if f(rho+a+b) = f(rho+a)
    then every forced pair must carry equal values.  Only instances whose
    strings fit the depth budget are produced."""
    strings = set(_cr_strings(alphabet, limit))
    sigmas = _cr_strings(alphabet, limit)
    out = []
    rhos: list[AtomString] = [()]
    rhos.extend(_cr_strings(alphabet, limit - 2))
    for a in alphabet:
        for b in alphabet:
            if a == b:
                continue
            for rho in rhos:
                if rho and rho[-1] == a:
                    continue
                ra = rho + (a,)
                rab = ra + (b,)
                if rab not in strings:
                    continue
                raba = rab + (a,)
                forced: list[tuple[AtomString, AtomString]] = []
                if raba in strings:
                    forced.append((raba, ra))
                for sigma in sigmas:
                    lhs = leadsto_string(raba, sigma)
                    rhs = leadsto_string(rab, sigma)
                    if lhs == rhs:
                        continue
                    if lhs in strings and rhs in strings:
                        forced.append((lhs, rhs))
                if forced:
                    out.append((ra, rab, tuple(forced)))
    return tuple(out)


def class_constraint_check(state: TruncatedState) -> bool:
    return first_constraint_violation(state) is None


def first_constraint_violation(state: TruncatedState) -> Optional[str]:
    """None when the table satisfies its class constraint, else a
    description of the first violated instance."""
    table = state.table
    if state.congruence is Congruence.RP:
        for sigma in admissible_strings(
            state.congruence, state.alphabet, state.depth_budget
        ):
            contracted = tail_contract(sigma)
            if table[sigma] != table[contracted]:
                return (
                    f"repetition stability: f({format_atom_string(sigma)}) != "
                    f"f({format_atom_string(contracted)})"
                )
        return None
    if state.congruence is Congruence.WM:
        for ra, rab, forced in _wm_constraint_instances(
            state.alphabet, state.depth_budget
        ):
            if table[rab] != table[ra]:
                continue
            for lhs, rhs in forced:
                if table[lhs] != table[rhs]:
                    return (
                        f"weak memory: f({format_atom_string(rab)}) = "
                        f"f({format_atom_string(ra)}) but "
                        f"f({format_atom_string(lhs)}) != f({format_atom_string(rhs)})"
                    )
        return None
    return None


@lru_cache(maxsize=None)
def wm_table_masks(alphabet: Alphabet, limit: int) -> tuple[int, ...]:
    """All weak-memory tables over the CR strings of the given budget,
    as bitmasks over admissible_strings(CR) in shortlex order.

    Forced strings are strictly longer than their premise strings, so in
    shortlex key order every constraint reads "bit p must equal bit q"
    with p past both premise bits and q.  Enumeration is a forward scan
    assigning one bit at a time, never revisiting a dead prefix."""
    keys = _cr_strings(alphabet, limit)
    index = {s: i for i, s in enumerate(keys)}
    # forcings[p] = (i, j, q): if bits i and j agree, bit p must copy bit q
    forcings: list[list[tuple[int, int, int]]] = [[] for _ in keys]
    for ra, rab, forced in _wm_constraint_instances(alphabet, limit):
        i, j = index[ra], index[rab]
        for lhs, rhs in forced:
            p, q = index[lhs], index[rhs]
            assert p > i and p > j and p > q
            forcings[p].append((i, j, q))
    survivors = []
    n = len(keys)
    stack: list[tuple[int, int]] = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        while k < n:
            allowed = {0, 1}
            for i, j, q in forcings[k]:
                if (mask >> i) & 1 == (mask >> j) & 1:
                    allowed &= {(mask >> q) & 1}
            if not allowed:
                break
            if len(allowed) == 2:
                stack.append((k + 1, mask | (1 << k)))
                k += 1
            else:
                mask |= allowed.pop() << k
                k += 1
        else:
            survivors.append(mask)
    return tuple(sorted(survivors))


def enumerate_states(
    congruence: Congruence, alphabet: Alphabet, limit: int
) -> Iterator[TruncatedState]:
    """Every class-valid truncated state exactly once.  Guarded: the
    number of free boolean choices must not exceed max_choices()."""
    choices = free_choice_count(congruence, alphabet, limit)
    limit_choices = max_choices()
    if choices > limit_choices:
        raise GuardError(choices, limit_choices)
    domain = admissible_strings(congruence, alphabet, limit)
    if congruence is Congruence.RP:
        keys = [s for s in domain if s == tail_contract(s)]
        for values in product((False, True), repeat=len(keys)):
            chosen = dict(zip(keys, values))
            table = {s: chosen[tail_contract(s)] for s in domain}
            yield TruncatedState(congruence, alphabet, limit, table)
        return
    if congruence is Congruence.WM:
        keys = _cr_strings(alphabet, limit)
        for mask in wm_table_masks(alphabet, limit):
            table = {s: bool((mask >> i) & 1) for i, s in enumerate(keys)}
            yield TruncatedState(congruence, alphabet, limit, table)
        return
    for values in product((False, True), repeat=len(domain)):
        yield TruncatedState(congruence, alphabet, limit, dict(zip(domain, values)))


def apply_atom(a: Atom, state: TruncatedState) -> TruncatedState:
    """The state after evaluating atom a, with the budget reduced by
    one.  Static states are returned unchanged: their lookups are single
    atoms, so nothing can run out."""
    if a not in state.alphabet:
        raise ValueError(f"atom {a.name!r} is outside the state's alphabet")
    k = state.congruence
    if k is Congruence.ST:
        return state
    if state.depth_budget < 1:
        raise InsufficientDepthError(1, state.depth_budget)
    new_budget = state.depth_budget - 1
    domain = admissible_strings(k, state.alphabet, new_budget)
    old = state.table
    if k in (Congruence.FREE, Congruence.RP):
        table = {s: old[(a,) + s] for s in domain}
    elif k in (Congruence.CR, Congruence.WM):
        table = {s: old[leadsto(a, s)] for s in domain}
    else:
        table = {}
        for s in domain:
            if s[-1] == a:
                table[s] = old[(a,)]
            else:
                table[s] = old[(a,) + remove_atom(s, a)]
    return TruncatedState(k, state.alphabet, new_budget, table)


def evaluate(t: Term, state: TruncatedState) -> tuple[bool, TruncatedState]:
    """Reply and resulting state, by structural recursion: the central
    condition is evaluated first and selects the branch."""
    needed = query_bound(t)
    if state.congruence is Congruence.ST:
        # static lookups never drain the budget
        needed = min(needed, 1)
    if needed > state.depth_budget:
        raise InsufficientDepthError(needed, state.depth_budget)
    return _evaluate(t, state)


def _evaluate(t: Term, state: TruncatedState) -> tuple[bool, TruncatedState]:
    if isinstance(t, BoolLeaf):
        return t.value, state
    if isinstance(t, AtomLeaf):
        return state.lookup((t.atom,)), apply_atom(t.atom, state)
    assert isinstance(t, Conditional)
    branch_value, mid = _evaluate(t.condition, state)
    return _evaluate(t.then_branch if branch_value else t.else_branch, mid)


def reply(t: Term, state: TruncatedState) -> bool:
    return evaluate(t, state)[0]


def apply(t: Term, state: TruncatedState) -> TruncatedState:
    return evaluate(t, state)[1]


def agree_on_common_domain(s1: TruncatedState, s2: TruncatedState) -> bool:
    """Table agreement where both states are defined (the admissible
    strings of the smaller budget)."""
    if s1.congruence is not s2.congruence or s1.alphabet != s2.alphabet:
        return False
    budget = min(s1.depth_budget, s2.depth_budget)
    shared = admissible_strings(s1.congruence, s1.alphabet, budget)
    return all(s1.table[s] == s2.table[s] for s in shared)


def format_atom_string(sigma: AtomString) -> str:
    return ".".join(a.name for a in sigma)


def parse_atom_string(text: str) -> AtomString:
    parts = text.split(".")
    if not all(parts):
        raise StateFormatError(f"malformed atom string: {text!r}")
    try:
        return tuple(Atom(p) for p in parts)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from None


Probe = Literal["reply"] | AtomString

_ENTRY_RE = re.compile(r"([a-z0-9_.]+)\s*=\s*([TF])\Z")


def format_state(state: TruncatedState, probe: Optional[Probe] = None) -> str:
    lines = [
        f"class: {state.congruence.value.upper()}",
        f"alphabet: {state.alphabet}",
        f"depth: {state.depth_budget}",
    ]
    for sigma in admissible_strings(
        state.congruence, state.alphabet, state.depth_budget
    ):
        value = "T" if state.table[sigma] else "F"
        lines.append(f"{format_atom_string(sigma)} = {value}")
    if probe is not None:
        lines.append(f"probe: {probe if probe == 'reply' else format_atom_string(probe)}")
    return "\n".join(lines) + "\n"


def parse_state_text(text: str) -> tuple[TruncatedState, Optional[Probe]]:
    congruence: Optional[Congruence] = None
    alphabet: Optional[Alphabet] = None
    depth: Optional[int] = None
    entries: dict[AtomString, bool] = {}
    probe: Optional[Probe] = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("class:"):
            name = line.removeprefix("class:").strip().lower()
            try:
                congruence = congruence_by_name(name)
            except ValueError as exc:
                raise StateFormatError(str(exc)) from None
            continue
        if line.startswith("alphabet:"):
            names = [p.strip() for p in line.removeprefix("alphabet:").split(",")]
            try:
                alphabet = Alphabet.of(*names)
            except ValueError as exc:
                raise StateFormatError(str(exc)) from None
            continue
        if line.startswith("depth:"):
            raw_depth = line.removeprefix("depth:").strip()
            if not raw_depth.isdigit():
                raise StateFormatError(f"malformed depth: {raw_depth!r}")
            depth = int(raw_depth)
            continue
        if line.startswith("probe:"):
            raw_probe = line.removeprefix("probe:").strip()
            probe = "reply" if raw_probe == "reply" else parse_atom_string(raw_probe)
            continue
        m = _ENTRY_RE.match(line)
        if m is None:
            raise StateFormatError(f"malformed line: {line!r}")
        entries[parse_atom_string(m.group(1))] = m.group(2) == "T"
    if congruence is None or alphabet is None or depth is None:
        raise StateFormatError("missing class, alphabet, or depth header")
    try:
        state = TruncatedState(congruence, alphabet, depth, entries)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from None
    violation = first_constraint_violation(state)
    if violation is not None:
        raise StateFormatError(violation)
    return state, probe
