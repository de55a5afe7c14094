"""Congruence decisions: canonical comparison vs the state oracle,
witnesses, ladder profiles, axiom soundness."""

import pytest

from hmalab.equivalence import (
    Verdict,
    Witness,
    axiom_soundness_suite,
    canonical_equivalent,
    equivalence_profile,
    oracle_equivalent,
    random_axiom_instance,
)
from hmalab.axioms import axioms_for
from hmalab.normalform import LADDER, Congruence
from hmalab.states import GuardError, TruncatedState, apply, reply
from hmalab.syntax import parse_term
from hmalab.terms import Alphabet, Atom, random_term

t = parse_term

AB = Alphabet.of("a", "b")
a, b = Atom("a"), Atom("b")


def test_redundant_guard_before_false():
    t1, t2 = t("(a && F) || b"), t("F || b")
    assert not oracle_equivalent(t1, t2, Congruence.FREE).equivalent
    # the separating valuation: b alone replies T, b after a replies F
    table = {(a,): False, (b,): True, (a, a): False, (a, b): False,
             (b, a): False, (b, b): False}
    f = TruncatedState(Congruence.FREE, AB, 2, table)
    assert reply(t1, f) is False
    assert reply(t2, f) is True


def test_guarded_conjunction_collapses_only_leftward():
    assert oracle_equivalent(t("F && a"), t("F"), Congruence.FREE).equivalent
    assert not oracle_equivalent(t("a && F"), t("F"), Congruence.FREE).equivalent
    assert oracle_equivalent(t("a && F"), t("F"), Congruence.ST).equivalent


def test_repeated_condition_contracts_at_cr():
    s = t("(T <| a |> F) <| a |> F")
    assert not oracle_equivalent(s, t("a"), Congruence.FREE).equivalent
    assert not oracle_equivalent(s, t("a"), Congruence.RP).equivalent
    assert oracle_equivalent(s, t("a"), Congruence.CR).equivalent


def test_vacuous_ask_visible_to_memory():
    assert not oracle_equivalent(t("T <| a |> T"), t("T"), Congruence.MEM).equivalent
    assert oracle_equivalent(t("T <| a |> T"), t("T"), Congruence.ST).equivalent


def test_contraction_across_intervening_atom_is_wm_not_cr():
    lhs = t("(((T <| a |> F) <| b |> F) <| c |> T) <| a |> F")
    rhs = t("((T <| b |> F) <| c |> T) <| a |> F")
    profile = equivalence_profile(lhs, rhs)
    assert not profile[Congruence.CR].equivalent
    assert profile[Congruence.CR].method == "both_agree"
    assert profile[Congruence.WM].equivalent
    assert profile[Congruence.MEM].equivalent
    assert profile[Congruence.ST].equivalent


def test_discarded_ask_reorders_memory():
    """Consulting an atom and discarding the reply is invisible to the
    terms' own atoms but changes which memory a later fresh atom sees,
    so the memorizing class must separate these."""
    t2 = t(
        "((b <| (b <| b |> b) |> (T <| T |> T)) <| (b <| F |> (b <| a |> F))"
        " |> a) <| T |> (T <| (a <| b |> (b <| F |> b)) |> T)"
    )
    v = oracle_equivalent(t("a"), t2, Congruence.MEM)
    assert not v.equivalent
    assert not canonical_equivalent(t("a"), t2, Congruence.MEM).equivalent


def test_reply_witness_materializes_and_replays():
    v = oracle_equivalent(
        t("(a && F) || b"), t("F || b"), Congruence.FREE, want_witness=True
    )
    assert not v.equivalent
    assert isinstance(v.witness, Witness)
    assert v.witness.probe == "reply"
    f = v.witness.state
    assert reply(t("(a && F) || b"), f) != reply(t("F || b"), f)


def test_probe_witness_when_replies_agree():
    v = oracle_equivalent(t("a && F"), t("F"), Congruence.FREE, want_witness=True)
    assert not v.equivalent
    probe = v.witness.probe
    assert probe != "reply"
    after1 = apply(t("a && F"), v.witness.state)
    after2 = apply(t("F"), v.witness.state)
    assert after1.table[probe] != after2.table[probe]


def test_witness_omitted_by_default():
    v = oracle_equivalent(t("a && F"), t("F"), Congruence.FREE)
    assert not v.equivalent
    assert v.witness is None


def test_oracle_guard_on_large_query_bounds():
    deep = t(" && ".join(["a"] * 13))
    with pytest.raises(GuardError):
        oracle_equivalent(deep, deep, Congruence.FREE)


def test_oracle_rejects_bad_arguments():
    with pytest.raises(ValueError):
        oracle_equivalent(t("a"), t("b"), Congruence.FREE, probe_depth=-1)
    with pytest.raises(ValueError):
        oracle_equivalent(t("a && b"), t("a"), Congruence.FREE, alphabet=Alphabet.of("a"))


def test_canonical_equivalent_closed_constants():
    assert canonical_equivalent(t("T"), t("T <| F |> T"), Congruence.ST).equivalent
    assert not canonical_equivalent(t("T"), t("F"), Congruence.ST).equivalent


def test_canonical_matches_oracle_on_random_pairs(rng):
    for _ in range(60):
        t1 = random_term(rng, AB, max_depth=3)
        t2 = random_term(rng, AB, max_depth=3)
        for k in LADDER:
            can = canonical_equivalent(t1, t2, k)
            try:
                orc = oracle_equivalent(t1, t2, k)
            except GuardError:
                continue
            assert can.equivalent == orc.equivalent, (t1, t2, k)


def test_profile_is_monotone(rng):
    for _ in range(40):
        t1 = random_term(rng, AB, max_depth=3)
        t2 = random_term(rng, AB, max_depth=3)
        profile = equivalence_profile(t1, t2)
        seen_equiv = False
        for k in LADDER:
            if profile[k].equivalent:
                seen_equiv = True
            else:
                assert not seen_equiv, (t1, t2)


def test_axiom_suite_all_pass_smoke():
    for k in (Congruence.FREE, Congruence.CR):
        report = axiom_soundness_suite(k, samples=10)
        assert report["failures"] == []
        assert all(r["failed"] == 0 for r in report["results"].values())
        assert {r["passed"] for r in report["results"].values()} == {10}


def test_axiom_suite_rejects_bad_samples():
    with pytest.raises(ValueError):
        axiom_soundness_suite(Congruence.FREE, samples=0)


def test_random_axiom_instance_is_closed(rng):
    for axiom in axioms_for("st", include_derived=True):
        lhs, rhs = random_axiom_instance(axiom, rng, AB)
        v = oracle_equivalent(lhs, rhs, Congruence.ST)
        assert v.equivalent, (axiom.name, lhs, rhs)
