"""Why `(a && F) || b` is not the same program as `b`.

In two-valued logic the identity is trivial: `a && F` is `F`, and
`F || b` is `b`.  But if asking `a` is an *action* -- a sensor read, a
network probe, a test with a side effect -- then the left expression
performs that action and the right one does not, and a later question
to `b` may come back different because of it.

This script builds the smallest state that tells the two apart, runs
both expressions against it, and then asks the equivalence decider at
which point on the class ladder the distinction disappears.
"""

from hmalab import (
    Alphabet,
    Atom,
    Congruence,
    TruncatedState,
    admissible_strings,
    equivalence_profile,
    evaluate,
    parse_term,
    print_term,
    reply,
)

AB = Alphabet.of("a", "b")

left = parse_term("(a && F) || b")
right = parse_term("b")


def contrary_state() -> TruncatedState:
    """A free state over {a, b} where reading `a` flips later answers.

    The table maps every history of at most three reads to a yes/no
    answer: every query answers False until an `a` has been read, and
    True from then on.  So `b` asked cold answers False, `b` asked
    after an `a` answers True.
    """
    a = Atom("a")
    table = {
        s: a in s[:-1]
        for s in admissible_strings(Congruence.FREE, AB, 3)
    }
    return TruncatedState(Congruence.FREE, AB, 3, table)


def main() -> None:
    print("left  =", print_term(left))
    print("      =", print_term(left, style="sugared"))
    print("right =", print_term(right))
    print()

    f = contrary_state()
    lv, lf = evaluate(left, f)
    rv, rf = evaluate(right, f)
    print("against a state where reading `a` flips `b`:")
    print(f"  left  replies {lv}")
    print(f"  right replies {rv}")
    assert lv != rv, "the state was built to separate them"
    print()
    print("so under free valuations the classical identity fails.")
    print()

    print("climbing the ladder:")
    for congruence, verdict in equivalence_profile(left, right).items():
        mark = "equivalent" if verdict.equivalent else "distinct"
        print(f"  {congruence.value:>4}: {mark}")
    print()
    print("only the static class at the very top -- valuations whose")
    print("answers never depend on what was asked before -- validates")
    print("the classical identity.  Every class below it can remember")
    print("the read of `a`, so the dead `a && F` probe stays visible.")

    # the residual states carry the difference too: each run consumed
    # its reads, and a fresh `b` afterwards still disagrees
    print()
    print("residual replies to a bare `b` after each run:")
    print("  after left :", reply(right, lf))
    print("  after right:", reply(right, rf))


if __name__ == "__main__":
    main()
