"""Algebra of short-circuit conditional expressions over side-effecting
valuations: normal forms, rewriting, state semantics, and equivalence
checking for six congruences on closed terms."""

from .terms import (
    FALSE,
    TRUE,
    Alphabet,
    Atom,
    AtomLeaf,
    BoolLeaf,
    Conditional,
    Term,
    atom,
    atoms_of,
    cond,
    is_basic_form,
    neg,
    pos,
    query_bound,
    random_term,
    substitute_constant,
    subterms,
)
from .syntax import ParseError, parse_term, parse_term_lines, print_term
from .rewriting import (
    CP_CRITICAL_PAIRS,
    CP_TRS,
    CPT_EXTRA_CRITICAL_PAIRS,
    CPT_TRS,
    CriticalPair,
    RewriteRule,
    RewriteSystem,
    RewriteTrace,
    Variable,
    atom_renaming_equal,
    critical_pairs,
    is_cp_normal_form,
    join_normal_forms,
    joinable,
    match,
    instantiate,
    normal_form,
    normalize,
    rewrite_step,
    subterm_at,
    system_by_name,
    vars_to_atoms,
    weight,
)
from .axioms import AXIOM_TABLES, Axiom, AxiomTable, axioms_for
from .normalform import (
    Congruence,
    LADDER,
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
from .states import (
    GuardError,
    InsufficientDepthError,
    StateFormatError,
    TruncatedState,
    admissible_strings,
    agree_on_common_domain,
    apply,
    apply_atom,
    class_constraint_check,
    contract_runs,
    enumerate_states,
    evaluate,
    first_constraint_violation,
    format_state,
    free_choice_count,
    leadsto,
    parse_state_text,
    remove_atom,
    reply,
    tail_contract,
)
from .equivalence import (
    Verdict,
    Witness,
    axiom_soundness_suite,
    canonical_equivalent,
    equivalence_profile,
    oracle_equivalent,
)

__version__ = "0.1.0"
