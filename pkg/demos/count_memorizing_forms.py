"""How many memorizing basic forms are there over n atoms?

Under memorizing valuations every closed expression collapses to a
canonical shape: a chain of distinct atoms in the condition spine,
where each answer removes that atom from play.  The count over n atoms
obeys

    count(0) = 2                       (just T and F)
    count(n) = n * count(n-1)^2 + 2    (pick a head atom, then an
                                        independent tail on each side,
                                        or be a constant outright)

and grows doubly exponentially.  The non-empty junction-free strings
that a contractive valuation can tell apart obey the tamer

    strings(0) = 0
    strings(n) = n * (strings(n-1) + 1)

This script prints both sequences and cross-checks the closed-form
counters against brute-force enumeration while that is still feasible.
"""

from hmalab import (
    Alphabet,
    count_core_strings,
    count_mem_basic_forms,
    enumerate_core_strings,
    enumerate_mem_basic_forms,
    is_mem_basic_form,
    print_term,
)

NAMES = ("a", "b", "c", "d", "e")


def main() -> None:
    print("memorizing basic forms:")
    for n in range(0, 6):
        print(f"  n={n}: {count_mem_basic_forms(n)}")
    print()

    # enumeration agrees where we can afford it (n=3 already yields
    # 16430 distinct terms; n=4 would be 1 079 779 602).  The alphabet
    # type insists on at least one atom, so n=0 is counting-only.
    for n in range(1, 4):
        alphabet = Alphabet.of(*NAMES[:n])
        forms = enumerate_mem_basic_forms(alphabet)
        assert len(forms) == count_mem_basic_forms(n)
        assert len(set(forms)) == len(forms)
        assert all(is_mem_basic_form(t) for t in forms)
        print(f"  enumerated n={n}: {len(forms)} distinct forms, counter agrees")
    print()

    two = Alphabet.of("a", "b")
    print("all six forms over one atom, for the record:")
    for t in enumerate_mem_basic_forms(Alphabet.of("a")):
        print("   ", print_term(t))
    print()

    print("junction-free strings (what a contractive valuation can")
    print("discriminate):")
    for n in range(0, 6):
        print(f"  n={n}: {count_core_strings(n)}")
    print()

    strings = enumerate_core_strings(two)
    assert len(strings) == count_core_strings(2)
    print(f"over {{a,b}} these are the {len(strings)} strings:")
    print("   ", ", ".join(".".join(a.name for a in s) for s in strings))


if __name__ == "__main__":
    main()
