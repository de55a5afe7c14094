"""Canonical forms: shape validators, worked examples, counting."""

import pytest

from hmalab.normalform import (
    LADDER,
    Congruence,
    basic_form,
    canonical_form,
    congruence_by_name,
    count_core_strings,
    count_mem_basic_forms,
    cr_basic_form,
    enumerate_core_strings,
    enumerate_mem_basic_forms,
    is_cr_basic_form,
    is_mem_basic_form,
    is_rp_basic_form,
    is_st_canonical,
    is_wm_basic_form,
    mem_basic_form,
    rp_basic_form,
    st_canonical,
    static_eval,
    wm_basic_form,
)
from hmalab.syntax import parse_term
from hmalab.terms import (
    FALSE,
    TRUE,
    Alphabet,
    Atom,
    is_basic_form,
    random_term,
)

t = parse_term

AB = Alphabet.from_atoms([Atom("a"), Atom("b")])


def test_ladder_order():
    assert [k.value for k in LADDER] == ["free", "rp", "cr", "wm", "mem", "st"]
    assert congruence_by_name("wm") is Congruence.WM
    with pytest.raises(ValueError):
        congruence_by_name("static")


def test_basic_form_promotes_bare_atoms():
    assert basic_form(t("a")) == t("T <| a |> F")
    assert basic_form(t("a <| b |> F")) == t("(T <| a |> F) <| b |> F")


def test_basic_form_examples():
    assert basic_form(t("T <| (T <| a |> F) |> F")) == t("T <| a |> F")
    assert basic_form(t("!a")) == t("F <| a |> T")
    assert basic_form(t("a && b")) == t("(T <| b |> F) <| a |> F")
    assert basic_form(t("a || b")) == t("T <| a |> (T <| b |> F)")


def test_basic_form_idempotent(rng):
    for _ in range(200):
        s = random_term(rng, AB, max_depth=5)
        b = basic_form(s)
        assert is_basic_form(b)
        assert basic_form(b) == b


def test_rp_equalizes_repeated_atom_branches():
    assert rp_basic_form(t("(T <| a |> F) <| a |> F")) == t("(T <| a |> T) <| a |> F")
    assert rp_basic_form(t("T <| a |> (T <| a |> F)")) == t("T <| a |> (F <| a |> F)")


def test_cr_contracts_repeated_atoms():
    assert cr_basic_form(t("(T <| a |> F) <| a |> F")) == t("T <| a |> F")
    # contraction cascades: two stacked repetitions strip in one pass
    nested = t("((T <| a |> F) <| a |> F) <| a |> F")
    assert cr_basic_form(nested) == t("T <| a |> F")


def test_wm_prunes_across_intervening_atoms():
    lhs = t("(((T <| a |> F) <| b |> F) <| c |> T) <| a |> F")
    rhs = t("((T <| b |> F) <| c |> T) <| a |> F")
    assert wm_basic_form(lhs) == wm_basic_form(rhs) == rhs
    # contraction-by-one-intervening is beyond cr: the cr forms stay apart
    assert cr_basic_form(lhs) != cr_basic_form(rhs)
    assert cr_basic_form(lhs) == lhs


def test_mem_resolves_atom_along_paths():
    assert mem_basic_form(t("(T <| a |> F) <| a |> F")) == t("T <| a |> F")
    # the recurring atom is fixed to its branch polarity, not just stripped
    s = t("(F <| b |> (T <| a |> F)) <| a |> T")
    out = mem_basic_form(s)
    assert out == t("(F <| b |> T) <| a |> T")
    assert is_mem_basic_form(out)


def test_st_canonical_full_tree():
    assert st_canonical(t("b && a"), AB) == t("(T <| b |> F) <| a |> (F <| b |> F)")
    assert st_canonical(t("T"), Alphabet.from_atoms([Atom("a")])) == t("T <| a |> T")
    assert st_canonical(t("T")) == TRUE
    assert st_canonical(t("F <| a |> F")) == t("F <| a |> F")


def test_st_canonical_order_must_cover():
    with pytest.raises(ValueError):
        st_canonical(t("a && b"), Alphabet.from_atoms([Atom("a")]))


def test_static_eval():
    a, b = Atom("a"), Atom("b")
    assert static_eval(t("a && b"), {a: True, b: False}) is False
    assert static_eval(t("a || b"), {a: False, b: True}) is True
    assert static_eval(t("!a"), {a: True}) is False
    assert static_eval(TRUE, {}) is True


def test_canonical_form_dispatch():
    s = t("(T <| a |> F) <| a |> F")
    assert canonical_form(s, Congruence.FREE) == basic_form(s)
    assert canonical_form(s, Congruence.RP) == rp_basic_form(s)
    assert canonical_form(s, Congruence.CR) == cr_basic_form(s)
    assert canonical_form(s, Congruence.WM) == wm_basic_form(s)
    assert canonical_form(s, Congruence.MEM) == mem_basic_form(s)
    assert canonical_form(s, Congruence.ST) == st_canonical(s)


def test_normalizers_idempotent_and_shape_valid(rng):
    validators = {
        Congruence.FREE: is_basic_form,
        Congruence.RP: is_rp_basic_form,
        Congruence.CR: is_cr_basic_form,
        Congruence.WM: is_wm_basic_form,
        Congruence.MEM: is_mem_basic_form,
    }
    for _ in range(100):
        s = random_term(rng, AB, max_depth=5)
        for k, valid in validators.items():
            out = canonical_form(s, k)
            assert valid(out), (k, out)
            assert canonical_form(out, k) == out
        full = st_canonical(s, AB)
        assert is_st_canonical(full, AB)


def test_refinement_ladder_on_random_pairs(rng):
    """Equal canonical forms at one level stay equal at every coarser
    level (free identifies least, st identifies most)."""
    normalizers = [
        lambda s: basic_form(s),
        lambda s: rp_basic_form(s),
        lambda s: cr_basic_form(s),
        lambda s: wm_basic_form(s),
        lambda s: mem_basic_form(s),
        lambda s: st_canonical(s, AB),
    ]
    for _ in range(150):
        s1 = random_term(rng, AB, max_depth=4)
        s2 = random_term(rng, AB, max_depth=4)
        agree = [f(s1) == f(s2) for f in normalizers]
        for finer, coarser in zip(agree, agree[1:]):
            assert not finer or coarser, (s1, s2, agree)


def test_validators_reject_wrong_shapes():
    assert not is_basic_form(t("a"))
    assert not is_rp_basic_form(t("(T <| a |> F) <| a |> F"))
    assert is_rp_basic_form(t("(T <| a |> T) <| a |> F"))
    assert not is_cr_basic_form(t("(T <| a |> T) <| a |> F"))
    assert is_cr_basic_form(t("T <| a |> F"))
    assert not is_wm_basic_form(t("((T <| a |> F) <| b |> F) <| a |> F"))
    assert is_wm_basic_form(t("((T <| a |> F) <| b |> F) <| c |> F"))
    assert not is_mem_basic_form(t("(F <| b |> (T <| a |> F)) <| a |> T"))
    assert not is_st_canonical(t("T <| a |> (T <| b |> F)"), AB)
    assert is_st_canonical(t("(T <| b |> F) <| a |> (F <| b |> F)"), AB)


def test_mem_count_recurrence():
    assert [count_mem_basic_forms(n) for n in range(4)] == [2, 6, 74, 16430]
    with pytest.raises(ValueError):
        count_mem_basic_forms(-1)


def test_core_count_recurrence():
    assert [count_core_strings(n) for n in range(1, 6)] == [1, 4, 15, 64, 325]
    assert count_core_strings(0) == 0
    with pytest.raises(ValueError):
        count_core_strings(-1)


def test_enumerate_mem_basic_forms():
    one = enumerate_mem_basic_forms(Alphabet.from_atoms([Atom("a")]))
    assert len(one) == len(set(one)) == 6
    two = enumerate_mem_basic_forms(AB)
    assert len(two) == len(set(two)) == 74
    assert TRUE in two and FALSE in two
    assert all(is_mem_basic_form(s) for s in two)


def test_enumerate_core_strings():
    out = enumerate_core_strings(AB)
    assert len(out) == len(set(out)) == count_core_strings(2) == 4
    a, b = Atom("a"), Atom("b")
    assert set(out) == {(a,), (b,), (a, b), (b, a)}
    three = enumerate_core_strings(Alphabet.from_atoms([a, b, Atom("c")]))
    assert len(three) == count_core_strings(3) == 15
