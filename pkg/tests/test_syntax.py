"""Parser and printer: grammar, sugar, precedence, spans, round trips."""

import pytest

from hmalab.syntax import ParseError, parse_term, parse_term_lines, print_term
from hmalab.terms import FALSE, TRUE, atom, cond, random_term, Alphabet


def test_constants_and_atoms():
    assert parse_term("T") == TRUE
    assert parse_term("F") == FALSE
    assert parse_term("a") == atom("a")
    assert parse_term("p_1") == atom("p_1")


def test_ternary():
    assert parse_term("x <| y |> z") == cond(atom("x"), atom("y"), atom("z"))
    assert parse_term("T <| a |> F") == cond(TRUE, atom("a"), FALSE)


def test_ternary_is_non_associative():
    with pytest.raises(ParseError):
        parse_term("a <| b |> c <| d |> e")
    nested = parse_term("(a <| b |> c) <| d |> e")
    assert nested == cond(cond(atom("a"), atom("b"), atom("c")), atom("d"), atom("e"))


def test_negation_desugars():
    assert parse_term("!a") == cond(FALSE, atom("a"), TRUE)
    assert parse_term("!!a") == cond(FALSE, cond(FALSE, atom("a"), TRUE), TRUE)


def test_conjunction_desugars_left_sequential():
    # x && y is y if x else F: y <| x |> F
    assert parse_term("a && b") == cond(atom("b"), atom("a"), FALSE)
    # left associative
    assert parse_term("a && b && c") == cond(
        atom("c"), cond(atom("b"), atom("a"), FALSE), FALSE
    )


def test_disjunction_desugars():
    # x || y is T if x else y: T <| x |> y
    assert parse_term("a || b") == cond(TRUE, atom("a"), atom("b"))


def test_precedence_not_over_and_over_or():
    assert parse_term("!a && b") == parse_term("(!a) && b")
    assert parse_term("a && b || c") == parse_term("(a && b) || c")
    assert parse_term("a || b && c") == parse_term("a || (b && c)")


def test_parens():
    assert parse_term("((a))") == atom("a")
    assert parse_term("(a || b) && c") == cond(
        atom("c"), cond(TRUE, atom("a"), atom("b")), FALSE
    )


def test_parse_errors_carry_spans():
    for text in ("", "a <|", "a <| b", "(a", "a)", "a b", "&& a", "T <| |> F"):
        with pytest.raises(ParseError):
            parse_term(text)
    try:
        parse_term("a <|")
    except ParseError as exc:
        assert "at" in str(exc)


def test_parse_term_lines():
    terms = parse_term_lines("a\n# comment\n\nT <| b |> F\n")
    assert terms == [atom("a"), cond(TRUE, atom("b"), FALSE)]


def test_print_ternary():
    t = cond(cond(TRUE, atom("b"), FALSE), atom("a"), TRUE)
    assert print_term(t, style="ternary") == "(T <| b |> F) <| a |> T"
    assert print_term(TRUE) == "T"
    assert print_term(atom("a")) == "a"


def test_print_sugared_round_trips():
    for text in ("a && b", "a || b", "!a", "a && (b || !c)", "T", "a"):
        t = parse_term(text)
        assert parse_term(print_term(t, style="sugared")) == t


def test_ternary_round_trip_random(rng):
    ab = Alphabet.of("a", "b", "c")
    for _ in range(300):
        t = random_term(rng, ab, max_depth=5)
        assert parse_term(print_term(t, style="ternary")) == t


def test_unknown_style_rejected():
    with pytest.raises(ValueError):
        print_term(TRUE, style="latex")
