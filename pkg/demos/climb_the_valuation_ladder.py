"""Two expressions, six notions of "the same program".

Valuation classes form a ladder: free (anything goes), repetition-proof
(immediately re-asking a question repeats the answer), contractive
(those repeats also leave no extra trace on the state), weakly
memorizing (an answer stays pinned while the questions in between stay
on one side of it), memorizing (an answer survives any detour), and
static (answers never change at all).  Each class identifies more
expressions than the one below it.

The pair below is a junction-elimination instance: the inner `a`-probe
of `left` re-checks an atom that was already read before the b/c
detour, while `right` trusts the first answer.  We print the verdict
per class, then build -- by hand, four rows -- a free state that tells
the two apart, and replay it.
"""

from hmalab import (
    Alphabet,
    Atom,
    Congruence,
    TruncatedState,
    admissible_strings,
    equivalence_profile,
    oracle_equivalent,
    parse_term,
    print_term,
    reply,
)

LEFT = "(((T <| a |> F) <| b |> F) <| c |> T) <| a |> F"
RIGHT = "((T <| b |> F) <| c |> T) <| a |> F"

ABC = Alphabet.of("a", "b", "c")
A, B, C = Atom("a"), Atom("b"), Atom("c")


def fickle_state() -> TruncatedState:
    """Answer True along the path a, c, b -- then recant.

    Everything else in the table answers False, in particular the
    fourth read a.c.b.a.  So a program that re-checks `a` after the
    detour sees False where a program that trusted the first read
    reports True.
    """
    yes = {(A,), (A, C), (A, C, B)}
    table = {
        s: s in yes
        for s in admissible_strings(Congruence.FREE, ABC, 4)
    }
    return TruncatedState(Congruence.FREE, ABC, 4, table)


def main() -> None:
    left = parse_term(LEFT)
    right = parse_term(RIGHT)
    print("left  =", print_term(left))
    print("right =", print_term(right))
    print()

    profile = equivalence_profile(left, right)
    print(f"{'class':>6} | verdict    | decided by")
    print("-" * 40)
    for congruence, verdict in profile.items():
        mark = "equivalent" if verdict.equivalent else "distinct"
        print(f"{congruence.value:>6} | {mark:<10} | {verdict.method}")
    print()

    f = fickle_state()
    print("a free state that separates them (only the rows the two")
    print("evaluations actually touch; every other row answers F):")
    print("  a       = T")
    print("  a.c     = T")
    print("  a.c.b   = T")
    print("  a.c.b.a = F     <- the recanted re-check")
    print()
    print(f"  left  replies {reply(left, f)}")
    print(f"  right replies {reply(right, f)}")
    print()

    # the decider finds such states on its own; we hand-rolled one only
    # to keep the printout small
    verdict = oracle_equivalent(left, right, Congruence.FREE, want_witness=True)
    assert verdict.witness is not None
    found = verdict.witness.state
    print(f"(oracle_equivalent(..., want_witness=True) returns its own")
    print(f" separating state: a {found.congruence.value} table with "
          f"{len(found.table)} rows at depth {found.depth_budget}.)")
    print()
    print("from the weakly memorizing class upward no separating state")
    print("exists at any depth: the valuation must repeat the first `a`")
    print("once b and c sit on one side of it, so the re-check -- and")
    print("with it the whole junction -- can be eliminated.")


if __name__ == "__main__":
    main()
