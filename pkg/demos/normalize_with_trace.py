"""Watch a conditional expression rewrite down to its basic form.

The four directed laws push every condition down to a single atom:
choosing over T takes the then-branch, choosing over F the else-branch,
choosing between T and F just returns the condition's value, and a
compound condition unfolds into nested choices.  Each step strictly
decreases an exponential weight, which is why normalization always
terminates.

We normalize one sugared expression, print the full trace -- rule
fired, where, and the redex it contracted -- and confirm the result is
a basic form that the rewrite system cannot touch again.
"""

from hmalab import (
    CP_TRS,
    is_basic_form,
    normalize,
    parse_term,
    print_term,
    subterm_at,
    weight,
)

TERM = "!(a && (b || c))"


def fmt_pos(position) -> str:
    return ".".join(position) if position else "root"


def fmt_weight(t) -> str:
    # every weight is a power of two and the exponents get big fast,
    # so print 2^e rather than the number itself
    return f"2^{weight(t).bit_length() - 1}"


def main() -> None:
    t = parse_term(TERM)
    print("input      :", TERM)
    print("desugared  :", print_term(t))
    print("weight     :", fmt_weight(t))
    print()

    nf, trace = normalize(t, CP_TRS)

    for i, step in enumerate(trace.steps, start=1):
        redex = subterm_at(step.before, step.position)
        contractum = subterm_at(step.after, step.position)
        print(f"step {i}: {step.rule_id} at {fmt_pos(step.position)}")
        print(f"    {print_term(redex)}")
        print(f"    --> {print_term(contractum)}")
        print(f"    whole-term weight {fmt_weight(step.before)} -> {fmt_weight(step.after)}")
    print()

    print("basic form :", print_term(nf))
    print("sugared    :", print_term(nf, style="sugared"))
    assert is_basic_form(nf)

    # a basic form is a fixed point of the rewrite system
    again, idle = normalize(nf, CP_TRS)
    assert again == nf and not idle.steps
    print()
    print(f"{len(trace.steps)} steps, weight {fmt_weight(t)} -> {fmt_weight(nf)},")
    print("and the basic form admits no further step.")


if __name__ == "__main__":
    main()
