"""Confluence, checked the honest way: overlap every rule with every rule.

Two rewrite rules that can fire on overlapping parts of a term create a
critical pair -- two different one-step results from the same start.
If every critical pair rejoins at a common reduct, the system is
locally confluent, and since our weight measure proves termination,
normal forms are unique.

We run the audit for both rule systems: the four-rule basic system,
and the extended system that also evaluates conditions *inside* a
term once the surroundings guarantee they behave statically.  The
extended system is where it gets interesting: its extra rules overlap
the old ones in ways that forced one more law into the system before
everything rejoined.
"""

from hmalab import (
    CPT_TRS,
    CP_TRS,
    critical_pairs,
    join_normal_forms,
    joinable,
    normalize,
    print_term,
    vars_to_atoms,
)
from hmalab.axioms import schematic


def audit(system) -> None:
    pairs = critical_pairs(system)
    print(f"{system.system_id}: {len(system.rules)} rules, "
          f"{len(pairs)} critical pairs")
    for i, pair in enumerate(pairs, start=1):
        lnf, rnf = join_normal_forms(pair, system)
        ok = lnf == rnf
        r1, r2 = pair.rules
        print(f"  {i:>2}. {r1} vs {r2} on {schematic(pair.overlap)}"
              f" -> {'joins' if ok else 'DOES NOT JOIN'}")
        if not ok:
            print(f"      left  settles at {print_term(lnf)}")
            print(f"      right settles at {print_term(rnf)}")
    assert all(joinable(p, system) for p in pairs)
    print()


def main() -> None:
    audit(CP_TRS)
    audit(CPT_TRS)

    # pair 11 is the one that earns the collapse rule its place: both
    # branches of the unfolded term are T, and without x <| y |> x -> x
    # the two sides would settle on different normal forms
    eleven = next(
        p for p in critical_pairs(CPT_TRS)
        if p.rules == ("CP4", "TTT") and "T <| z |> T" in schematic(p.overlap)
    )
    used = set()
    for side in (eleven.left, eleven.right):
        _, trace = normalize(vars_to_atoms(side), CPT_TRS)
        used |= {step.rule_id for step in trace.steps}
    print(f"rejoining the CP4/TTT overlap fires: {', '.join(sorted(used))}")
    print()

    # the most instructive overlap: the unfolding rule against itself.
    # Both orientations unfold a doubly-compound condition, the two
    # results look nothing alike, yet they meet again.
    pairs = critical_pairs(CP_TRS)
    cp4_cp4 = next(p for p in pairs if p.rules == ("CP4", "CP4"))
    print("the self-overlap of the unfolding rule, up close:")
    print("  one step this way :", schematic(cp4_cp4.left))
    print("  one step that way :", schematic(cp4_cp4.right))
    lnf, rnf = join_normal_forms(cp4_cp4, CP_TRS)
    assert lnf == rnf
    print("  both normalize to :", print_term(lnf))


if __name__ == "__main__":
    main()
