"""Deciding whether two closed terms are congruent, per congruence.

Two independent methods:

  * canonical comparison: structural equality of the class canonical
    forms.  Complete for free and st; for rp, cr, wm and mem it is a
    sound approximation (equal forms imply congruence).

  * state oracle: search for a truncated state of the class that
    separates the terms, either by reply or by a bounded probe of the
    states after evaluation.  A found witness refutes congruence; an
    exhausted search certifies it at the chosen depth.

The oracle walks reply branches adaptively: an evaluation only ever
consults the underlying choice function at canonically reduced keys,
and for every class except wm those keys carry independent values, so
exploring assignments of consulted keys covers all states without
enumerating full tables.  wm states satisfy a coupling constraint, so
they are enumerated from the precomputed constraint-respecting tables
instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .axioms import Axiom, axioms_for
from .normalform import (
    Congruence,
    LADDER,
    canonical_form,
    st_canonical,
    static_eval,
)
from .rewriting import instantiate, pattern_variables
from .states import (
    AtomString,
    GuardError,
    Probe,
    TruncatedState,
    admissible_strings,
    apply,
    max_choices,
    reply,
    tail_contract,
    wm_table_masks,
)
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
    query_bound,
)


@dataclass(frozen=True)
class Witness:
    """A separating state, plus what separates: the reply itself or a
    probe string on which the states after evaluation disagree."""

    state: TruncatedState
    probe: Probe


@dataclass(frozen=True)
class Verdict:
    congruence: Congruence
    equivalent: bool
    method: str
    witness: Optional[Witness] = None


class _NeedValue(Exception):
    def __init__(self, key: AtomString):
        self.key = key


class _Calculus:
    """Key calculus of one state class: how an evaluation history
    reduces to the table keys the class actually consults."""

    probes = True

    def initial(self):
        return ()

    def step(self, sym, a: Atom) -> tuple[AtomString, object]:
        raise NotImplementedError

    def probe_key(self, sym, sigma: AtomString) -> AtomString:
        raise NotImplementedError


class _FreeCalculus(_Calculus):
    def step(self, sym, a):
        grown = sym + (a,)
        return grown, grown

    def probe_key(self, sym, sigma):
        return sym + sigma


class _RpCalculus(_Calculus):
    def step(self, sym, a):
        grown = sym + (a,)
        return tail_contract(grown), grown

    def probe_key(self, sym, sigma):
        return tail_contract(sym + sigma)


class _CrCalculus(_Calculus):
    def step(self, sym, a):
        grown = sym if sym and sym[-1] == a else sym + (a,)
        return grown, grown

    def probe_key(self, sym, sigma):
        if sym and sigma and sym[-1] == sigma[0]:
            return sym + sigma[1:]
        return sym + sigma


class _MemCalculus(_Calculus):
    def step(self, sym, a):
        if a in sym:
            return sym[: sym.index(a) + 1], sym
        grown = sym + (a,)
        return grown, grown

    def probe_key(self, sym, sigma):
        last = sigma[-1]
        if last in sym:
            return sym[: sym.index(last) + 1]
        return sym + tuple(x for x in sigma if x not in sym)


class _StCalculus(_Calculus):
    probes = False

    def step(self, sym, a):
        return (a,), sym

    def probe_key(self, sym, sigma):
        raise AssertionError("static states are never probed")


_CALCULI: dict[Congruence, _Calculus] = {
    Congruence.FREE: _FreeCalculus(),
    Congruence.RP: _RpCalculus(),
    Congruence.CR: _CrCalculus(),
    Congruence.WM: _CrCalculus(),
    Congruence.MEM: _MemCalculus(),
    Congruence.ST: _StCalculus(),
}


def _sym_eval(
    t: Term, calc: _Calculus, sym, fetch: Callable[[AtomString], bool]
) -> tuple[bool, object, int]:
    """Reply, symbolic state, and number of atoms consumed."""
    if isinstance(t, BoolLeaf):
        return t.value, sym, 0
    if isinstance(t, AtomLeaf):
        key, grown = calc.step(sym, t.atom)
        return fetch(key), grown, 1
    assert isinstance(t, Conditional)
    branch_value, sym1, c1 = _sym_eval(t.condition, calc, sym, fetch)
    branch = t.then_branch if branch_value else t.else_branch
    value, sym2, c2 = _sym_eval(branch, calc, sym1, fetch)
    return value, sym2, c1 + c2


def _dfs(compare: Callable[[], Optional[Probe]], asg: dict) -> Optional[Probe]:
    """Run compare under the partial assignment, branching on every
    unassigned key it consults.  Returns the first difference found,
    with asg left at the leaf that produced it."""
    try:
        return compare()
    except _NeedValue as nv:
        key = nv.key
        for value in (False, True):
            asg[key] = value
            found = _dfs(compare, asg)
            if found is not None:
                return found
            del asg[key]
        return None


def _fresh_alphabet(
    t1: Term, t2: Term, alphabet: Optional[Alphabet], spare: bool = False
) -> Alphabet:
    """The comparison alphabet: the terms' atoms, padded to two letters.

    With spare=True at least one letter the terms never consult is
    guaranteed.  Memorizing states need it: a consulted-and-forgotten
    atom leaves the memory order changed, which only a query of a so
    far unseen atom can surface."""
    present = atoms_of(t1) | atoms_of(t2)
    if alphabet is not None:
        uncovered = present - frozenset(alphabet)
        if uncovered:
            names = ", ".join(sorted(a.name for a in uncovered))
            raise ValueError(f"alphabet does not cover atoms: {names}")
        present = frozenset(alphabet)
    pool = (Atom(name) for name in "abcdefghijklmnopqrstuvwxyz")
    padded = set(present)
    used = atoms_of(t1) | atoms_of(t2)
    while len(padded) < 2 or (spare and not (padded - used)):
        padded.add(next(a for a in pool if a not in padded))
    return Alphabet.from_atoms(frozenset(padded))


WITNESS_TABLE_CAP = 1 << 15


def _table_size(congruence: Congruence, alphabet: Alphabet, budget: int) -> int:
    n = len(alphabet)
    if congruence is Congruence.ST:
        return n
    if congruence is Congruence.MEM:
        k = min(budget, n)
        total, perms = 0, 1
        for i in range(k):
            perms *= n - i
            total += perms
        return total
    if congruence in (Congruence.CR, Congruence.WM):
        return sum(n * (n - 1) ** (k - 1) for k in range(1, budget + 1))
    return sum(n**k for k in range(1, budget + 1))


def _materialize(
    congruence: Congruence, alphabet: Alphabet, budget: int, asg: dict
) -> Optional[TruncatedState]:
    """Extend the consulted-key assignment to a full table; unassigned
    keys are filled with False.  None when the table would be too large
    to be a useful artifact."""
    if _table_size(congruence, alphabet, budget) > WITNESS_TABLE_CAP:
        return None
    domain = admissible_strings(congruence, alphabet, budget)
    if congruence is Congruence.RP:
        table = {s: bool(asg.get(tail_contract(s), False)) for s in domain}
    else:
        table = {s: bool(asg.get(s, False)) for s in domain}
    return TruncatedState(congruence, alphabet, budget, table)


def _verify_witness(t1: Term, t2: Term, witness: Witness) -> None:
    state = witness.state
    if witness.probe == "reply":
        if reply(t1, state) == reply(t2, state):
            raise RuntimeError("witness replay failed: replies agree")
        return
    after1 = apply(t1, state)
    after2 = apply(t2, state)
    if after1.table[witness.probe] == after2.table[witness.probe]:
        raise RuntimeError("witness replay failed: probe values agree")


def oracle_equivalent(
    t1: Term,
    t2: Term,
    congruence: Congruence,
    alphabet: Optional[Alphabet] = None,
    probe_depth: int = 2,
    want_witness: bool = False,
) -> Verdict:
    """Search the class's truncated states for a separator at budget
    query_bound(t1) + query_bound(t2) + probe_depth.  Reply witnesses
    are preferred over probe witnesses.  Materializing a separating
    state is optional: the table is exponential in the budget."""
    if probe_depth < 0:
        raise ValueError("probe_depth must be nonnegative")
    alphabet = _fresh_alphabet(
        t1, t2, alphabet, spare=congruence is Congruence.MEM
    )
    qb1, qb2 = query_bound(t1), query_bound(t2)
    budget = qb1 + qb2 + probe_depth
    if congruence is Congruence.WM:
        return _oracle_wm(t1, t2, alphabet, budget, probe_depth, want_witness)
    limit = max_choices()
    if qb1 + qb2 > limit:
        raise GuardError(qb1 + qb2, limit)
    calc = _CALCULI[congruence]
    asg: dict[AtomString, bool] = {}

    def fetch(key: AtomString) -> bool:
        try:
            return asg[key]
        except KeyError:
            raise _NeedValue(key) from None

    def compare_replies() -> Optional[Probe]:
        v1, _, _ = _sym_eval(t1, calc, calc.initial(), fetch)
        v2, _, _ = _sym_eval(t2, calc, calc.initial(), fetch)
        return "reply" if v1 != v2 else None

    found = _dfs(compare_replies, asg)
    if found is None and calc.probes:
        asg = {}

        def compare_probes() -> Optional[Probe]:
            _, sym1, c1 = _sym_eval(t1, calc, calc.initial(), fetch)
            _, sym2, c2 = _sym_eval(t2, calc, calc.initial(), fetch)
            remaining = min(probe_depth, budget - c1, budget - c2)
            for sigma in admissible_strings(congruence, alphabet, remaining):
                k1 = calc.probe_key(sym1, sigma)
                k2 = calc.probe_key(sym2, sigma)
                if k1 == k2:
                    continue
                if fetch(k1) != fetch(k2):
                    return sigma
            return None

        found = _dfs(compare_probes, asg)
    if found is None:
        return Verdict(congruence, True, "oracle")
    if not want_witness:
        return Verdict(congruence, False, "oracle")
    state = _materialize(congruence, alphabet, budget, asg)
    if state is None:
        return Verdict(congruence, False, "oracle")
    witness = Witness(state, found)
    _verify_witness(t1, t2, witness)
    return Verdict(congruence, False, "oracle", witness)


def _oracle_wm(
    t1: Term,
    t2: Term,
    alphabet: Alphabet,
    budget: int,
    probe_depth: int,
    want_witness: bool,
) -> Verdict:
    keys = admissible_strings(Congruence.WM, alphabet, budget)
    limit = max_choices()
    if len(keys) > limit:
        raise GuardError(len(keys), limit)
    index = {s: i for i, s in enumerate(keys)}
    calc = _CALCULI[Congruence.WM]

    def witness_from(mask: int, probe: Probe) -> Verdict:
        if not want_witness:
            return Verdict(Congruence.WM, False, "oracle")
        table = {s: bool((mask >> i) & 1) for i, s in enumerate(keys)}
        witness = Witness(
            TruncatedState(Congruence.WM, alphabet, budget, table), probe
        )
        _verify_witness(t1, t2, witness)
        return Verdict(Congruence.WM, False, "oracle", witness)

    for mask in wm_table_masks(alphabet, budget):

        def fetch(key: AtomString) -> bool:
            return bool((mask >> index[key]) & 1)

        v1, sym1, c1 = _sym_eval(t1, calc, calc.initial(), fetch)
        v2, sym2, c2 = _sym_eval(t2, calc, calc.initial(), fetch)
        if v1 != v2:
            return witness_from(mask, "reply")
        remaining = min(probe_depth, budget - c1, budget - c2)
        for sigma in admissible_strings(Congruence.WM, alphabet, remaining):
            k1 = calc.probe_key(sym1, sigma)
            k2 = calc.probe_key(sym2, sigma)
            if k1 != k2 and fetch(k1) != fetch(k2):
                return witness_from(mask, sigma)
    return Verdict(Congruence.WM, True, "oracle")


def canonical_equivalent(t1: Term, t2: Term, congruence: Congruence) -> Verdict:
    if congruence is Congruence.ST:
        union = atoms_of(t1) | atoms_of(t2)
        if union:
            order = Alphabet.from_atoms(union)
            equal = st_canonical(t1, order) == st_canonical(t2, order)
        else:
            equal = static_eval(t1, {}) == static_eval(t2, {})
    else:
        equal = canonical_form(t1, congruence) == canonical_form(t2, congruence)
    return Verdict(congruence, equal, "canonical_form")


def equivalence_profile(
    t1: Term, t2: Term, probe_depth: int = 2
) -> dict[Congruence, Verdict]:
    """Verdict per congruence, canonical cross-checked by the oracle
    where the guard permits.  The profile must be monotone along the
    ladder; a violation is an internal failure and raises."""
    out: dict[Congruence, Verdict] = {}
    for k in LADDER:
        can = canonical_equivalent(t1, t2, k)
        try:
            orc = oracle_equivalent(t1, t2, k, probe_depth=probe_depth)
        except GuardError:
            orc = None
        if orc is None:
            out[k] = can
        elif orc.equivalent != can.equivalent:
            raise RuntimeError(
                f"canonical and oracle verdicts disagree under {k}: "
                f"canonical says {can.equivalent}, oracle says {orc.equivalent}"
            )
        else:
            out[k] = Verdict(k, orc.equivalent, "both_agree", orc.witness)
    settled: Optional[Congruence] = None
    for k in LADDER:
        if out[k].equivalent:
            settled = k
        elif settled is not None:
            raise RuntimeError(
                f"non-monotone profile: equivalent under {settled} "
                f"but not under {k}"
            )
    return out


def _instance_leaf(rng: random.Random, alphabet: Alphabet) -> Term:
    """Random closed term with query bound at most 1."""
    atoms = tuple(alphabet)
    roll = rng.random()
    if roll < 0.2:
        return TRUE
    if roll < 0.4:
        return FALSE
    if roll < 0.65:
        return AtomLeaf(rng.choice(atoms))
    branches = (TRUE, FALSE)
    return Conditional(
        rng.choice(branches), AtomLeaf(rng.choice(atoms)), rng.choice(branches)
    )


def random_axiom_instance(
    axiom: Axiom, rng: random.Random, alphabet: Alphabet
) -> tuple[Term, Term]:
    binding: dict[str, Term] = {}
    atoms = tuple(alphabet)
    for name in pattern_variables(axiom.lhs) + pattern_variables(axiom.rhs):
        if name in binding:
            continue
        if name in axiom.atom_params:
            binding[name] = AtomLeaf(rng.choice(atoms))
        else:
            binding[name] = _instance_leaf(rng, alphabet)
    return instantiate(axiom.lhs, binding), instantiate(axiom.rhs, binding)


def axiom_soundness_suite(
    congruence: Congruence,
    samples: int,
    rng: Optional[random.Random] = None,
    probe_depth: int = 2,
) -> dict:
    """Oracle-check random closed instances of every axiom of the
    congruence (derived laws included).  Failures are reported, not
    raised."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if rng is None:
        rng = random.Random(0)
    alphabet = Alphabet.of("a", "b")
    results: dict[str, dict[str, int]] = {}
    failures: list[dict] = []
    for axiom in axioms_for(congruence.value, include_derived=True):
        passed = 0
        failed = 0
        for _ in range(samples):
            lhs, rhs = random_axiom_instance(axiom, rng, alphabet)
            verdict = oracle_equivalent(
                lhs, rhs, congruence, alphabet=alphabet, probe_depth=probe_depth
            )
            if verdict.equivalent:
                passed += 1
            else:
                failed += 1
                failures.append(
                    {
                        "axiom": axiom.name,
                        "lhs": lhs,
                        "rhs": rhs,
                        "witness": verdict.witness,
                    }
                )
        results[axiom.name] = {"passed": passed, "failed": failed}
    return {
        "congruence": congruence.value,
        "samples": samples,
        "results": results,
        "failures": failures,
    }
