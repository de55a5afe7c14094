"""Directed rewriting for conditional expressions.

Two systems are provided.  The base system CP_TRS orients the four
conditional laws left to right; it is terminating (by an exploding
weight measure) and yields unique normal forms on closed terms.  The
extended system CPT_TRS adds the collapse of always-true conditions
(TTT) and of conditionals with identical branches (COLLAPSE); the
latter is a directed consequence of the former four plus TTT and is
needed to join the (CP4, TTT) overlap, without it the system has
distinct normal forms for equal closed terms such as F <| a |> F and F.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .terms import FALSE, TRUE, AtomLeaf, Atom, BoolLeaf, Conditional, Term


@dataclass(frozen=True)
class Variable(Term):
    """Rule variable; appears in patterns only, never in closed terms."""

    var: str

    def __str__(self) -> str:
        return self.var


def pattern_variables(t: Term) -> tuple[str, ...]:
    """Variable names occurring in a pattern, sorted."""
    seen: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Variable):
            seen.add(s.var)
        elif isinstance(s, Conditional):
            stack.extend((s.then_branch, s.condition, s.else_branch))
    return tuple(sorted(seen))


def is_closed(t: Term) -> bool:
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Variable):
            return False
        if isinstance(s, Conditional):
            stack.extend((s.then_branch, s.condition, s.else_branch))
    return True


@dataclass(frozen=True)
class RewriteRule:
    rule_id: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class RewriteSystem:
    system_id: str
    rules: tuple[RewriteRule, ...]


def _v(name: str) -> Variable:
    return Variable(name)


def _c(x: Term, y: Term, z: Term) -> Conditional:
    return Conditional(x, y, z)


CP1 = RewriteRule("CP1", _c(_v("x"), TRUE, _v("y")), _v("x"))
CP2 = RewriteRule("CP2", _c(_v("x"), FALSE, _v("y")), _v("y"))
CP3 = RewriteRule("CP3", _c(TRUE, _v("x"), FALSE), _v("x"))
CP4 = RewriteRule(
    "CP4",
    _c(_v("x"), _c(_v("y"), _v("z"), _v("u")), _v("v")),
    _c(_c(_v("x"), _v("y"), _v("v")), _v("z"), _c(_v("x"), _v("u"), _v("v"))),
)
TTT = RewriteRule("TTT", _c(TRUE, _v("x"), TRUE), TRUE)
COLLAPSE = RewriteRule("COLLAPSE", _c(_v("x"), _v("y"), _v("x")), _v("x"))

CP_TRS = RewriteSystem("cp", (CP1, CP2, CP3, CP4))
CPT_TRS = RewriteSystem("cpt", (CP1, CP2, CP3, CP4, TTT, COLLAPSE))


def system_by_name(name: str) -> RewriteSystem:
    if name == "cp":
        return CP_TRS
    if name == "cpt":
        return CPT_TRS
    raise ValueError(f"unknown rewrite system: {name!r}")


def weight(t: Term) -> int:
    """Termination weight: 2 on leaves and variables, and
    (w(then) * w(else)) ** w(condition) on conditionals.

    Every rule application strictly decreases it.  Values explode
    quickly; results are exact arbitrary-precision integers.
    """
    memo: dict[int, int] = {}
    keep: list[Term] = []

    def w(s: Term) -> int:
        k = id(s)
        got = memo.get(k)
        if got is not None:
            return got
        if isinstance(s, Conditional):
            v = (w(s.then_branch) * w(s.else_branch)) ** w(s.condition)
        else:
            v = 2
        memo[k] = v
        keep.append(s)
        return v

    return w(t)


def log2_weight_capped(t: Term, cap: int) -> int:
    """min(log2(weight(t)), cap + 1), cheap even where the weight itself
    would be astronomically large.  Used to screen generated terms."""
    memo: dict[int, int] = {}
    keep: list[Term] = []

    def e(s: Term) -> int:
        k = id(s)
        got = memo.get(k)
        if got is not None:
            return got
        if isinstance(s, Conditional):
            ey = e(s.condition)
            if ey > 60:
                v = cap + 1
            else:
                v = min((1 << ey) * (e(s.then_branch) + e(s.else_branch)), cap + 1)
        else:
            v = 1
        memo[k] = v
        keep.append(s)
        return v

    return e(t)


def match(pattern: Term, t: Term, binding: Optional[dict[str, Term]] = None) -> Optional[dict[str, Term]]:
    """Match t against pattern; returns the extended binding or None.
    Repeated variables in the pattern require syntactically equal parts."""
    if binding is None:
        binding = {}
    if isinstance(pattern, Variable):
        bound = binding.get(pattern.var)
        if bound is None:
            binding[pattern.var] = t
            return binding
        return binding if bound == t else None
    if isinstance(pattern, BoolLeaf):
        return binding if pattern == t else None
    if isinstance(pattern, AtomLeaf):
        return binding if pattern == t else None
    assert isinstance(pattern, Conditional)
    if not isinstance(t, Conditional):
        return None
    for p, s in (
        (pattern.then_branch, t.then_branch),
        (pattern.condition, t.condition),
        (pattern.else_branch, t.else_branch),
    ):
        binding = match(p, s, binding)
        if binding is None:
            return None
    return binding


def instantiate(pattern: Term, binding: dict[str, Term]) -> Term:
    if isinstance(pattern, Variable):
        return binding[pattern.var]
    if isinstance(pattern, Conditional):
        return Conditional(
            instantiate(pattern.then_branch, binding),
            instantiate(pattern.condition, binding),
            instantiate(pattern.else_branch, binding),
        )
    return pattern


Position = tuple[str, ...]

_CHILDREN = ("then", "cond", "else")


def _child(t: Conditional, label: str) -> Term:
    if label == "then":
        return t.then_branch
    if label == "cond":
        return t.condition
    return t.else_branch


def _with_child(t: Conditional, label: str, new: Term) -> Conditional:
    if label == "then":
        return Conditional(new, t.condition, t.else_branch)
    if label == "cond":
        return Conditional(t.then_branch, new, t.else_branch)
    return Conditional(t.then_branch, t.condition, new)


def _root_step(t: Term, system: RewriteSystem) -> Optional[tuple[Term, str]]:
    for rule in system.rules:
        binding = match(rule.lhs, t)
        if binding is not None:
            return instantiate(rule.rhs, binding), rule.rule_id
    return None


def rewrite_step(
    t: Term, system: RewriteSystem, strategy: str = "innermost"
) -> Optional[tuple[Term, str, Position]]:
    """One rewrite step, or None if t is a normal form.

    'innermost' picks the leftmost innermost redex (children in the order
    then, condition, else), 'outermost' the leftmost outermost one.  At a
    given position the first rule in system order applies.
    """
    if strategy == "innermost":
        if isinstance(t, Conditional):
            for label in _CHILDREN:
                sub = rewrite_step(_child(t, label), system, strategy)
                if sub is not None:
                    new, rule_id, pos = sub
                    return _with_child(t, label, new), rule_id, (label,) + pos
        root = _root_step(t, system)
        if root is not None:
            return root[0], root[1], ()
        return None
    if strategy == "outermost":
        root = _root_step(t, system)
        if root is not None:
            return root[0], root[1], ()
        if isinstance(t, Conditional):
            for label in _CHILDREN:
                sub = rewrite_step(_child(t, label), system, strategy)
                if sub is not None:
                    new, rule_id, pos = sub
                    return _with_child(t, label, new), rule_id, (label,) + pos
        return None
    raise ValueError(f"unknown strategy: {strategy!r}")


@dataclass(frozen=True)
class TraceStep:
    position: Position
    rule_id: str
    before: Term
    after: Term


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple[TraceStep, ...]

    def validate(self) -> None:
        """Steps must chain and the weight must strictly decrease."""
        for i, step in enumerate(self.steps):
            if i + 1 < len(self.steps) and step.after != self.steps[i + 1].before:
                raise AssertionError(f"trace break after step {i}")
            if weight(step.after) >= weight(step.before):
                raise AssertionError(f"weight did not decrease at step {i}")

    def render(self) -> list[str]:
        lines = []
        for step in self.steps:
            pos = ".".join(step.position) if step.position else "root"
            lines.append(
                f"pos={pos} rule={step.rule_id} "
                f"w_before={weight(step.before)} w_after={weight(step.after)}"
            )
        return lines


def subterm_at(t: Term, position: Position) -> Term:
    for label in position:
        if not isinstance(t, Conditional):
            raise ValueError(f"no subterm at position {position}")
        t = _child(t, label)
    return t


def _replace_at(t: Term, position: Position, new: Term) -> Term:
    if not position:
        return new
    assert isinstance(t, Conditional)
    label = position[0]
    return _with_child(t, label, _replace_at(_child(t, label), position[1:], new))


_LocalStep = tuple[Position, str, Term, Term]


def _run_innermost(
    t: Term, system: RewriteSystem, emit: Optional[list[_LocalStep]]
) -> Term:
    """Leftmost-innermost normalization in one bottom-up pass.  Emits the
    same step sequence as iterating rewrite_step, but each subterm is
    scanned once: terms already known normal are skipped by identity, so
    shared structure costs nothing on revisits."""
    known: set[int] = set()
    keep: list[Term] = []

    def inner(s: Term, prefix: Position) -> Term:
        while True:
            if id(s) in known or not isinstance(s, Conditional):
                return s
            th = inner(s.then_branch, prefix + ("then",))
            co = inner(s.condition, prefix + ("cond",))
            el = inner(s.else_branch, prefix + ("else",))
            if (
                th is not s.then_branch
                or co is not s.condition
                or el is not s.else_branch
            ):
                s = Conditional(th, co, el)
            r = _root_step(s, system)
            if r is None:
                known.add(id(s))
                keep.append(s)
                return s
            if emit is not None:
                emit.append((prefix, r[1], s, r[0]))
            s = r[0]

    return inner(t, ())


def _run_outermost(
    t: Term, system: RewriteSystem, emit: Optional[list[_LocalStep]]
) -> Term:
    """Leftmost-outermost normalization.  Each step restarts from the
    root (a step below can expose a redex above), with subtrees already
    known normal skipped by identity."""
    known: set[int] = set()
    keep: list[Term] = []

    def step(s: Term, prefix: Position) -> Optional[Term]:
        if id(s) in known or not isinstance(s, Conditional):
            return None
        r = _root_step(s, system)
        if r is not None:
            if emit is not None:
                emit.append((prefix, r[1], s, r[0]))
            return r[0]
        for label in _CHILDREN:
            new_child = step(_child(s, label), prefix + (label,))
            if new_child is not None:
                return _with_child(s, label, new_child)
        known.add(id(s))
        keep.append(s)
        return None

    current = t
    while True:
        new = step(current, ())
        if new is None:
            return current
        current = new


def normal_form(t: Term, system: RewriteSystem, strategy: str = "innermost") -> Term:
    """The normal form alone, without trace bookkeeping.  Prefer this
    for bulk normalization: traces pin every intermediate whole term,
    which for large inputs is substantial memory."""
    if strategy == "innermost":
        return _run_innermost(t, system, None)
    if strategy == "outermost":
        return _run_outermost(t, system, None)
    raise ValueError(f"unknown strategy: {strategy!r}")


def normalize(
    t: Term, system: RewriteSystem, strategy: str = "innermost"
) -> tuple[Term, RewriteTrace]:
    local: list[_LocalStep] = []
    if strategy == "innermost":
        nf = _run_innermost(t, system, local)
    elif strategy == "outermost":
        nf = _run_outermost(t, system, local)
    else:
        raise ValueError(f"unknown strategy: {strategy!r}")
    steps: list[TraceStep] = []
    current = t
    for pos, rule_id, _before, after in local:
        new = _replace_at(current, pos, after)
        steps.append(TraceStep(pos, rule_id, current, new))
        current = new
    assert current == nf
    return nf, RewriteTrace(tuple(steps))


def is_cp_normal_form(t: Term) -> bool:
    """Shape of CP_TRS normal forms: atoms and constants, or terms all of
    whose conditional subterms have an atomic condition and are not of
    the shape T <| _ |> F."""
    stack = [t]
    while stack:
        s = stack.pop()
        if not isinstance(s, Conditional):
            continue
        if not isinstance(s.condition, AtomLeaf):
            return False
        if s.then_branch == TRUE and s.else_branch == FALSE:
            return False
        stack.extend((s.then_branch, s.else_branch))
    return True


@dataclass(frozen=True)
class CriticalPair:
    """An overlap of two rules and the two one-step results, transcribed
    as schematic terms over rule variables."""

    rules: tuple[str, str]
    overlap: Term
    left: Term
    right: Term


def _pairs() -> tuple[tuple[CriticalPair, ...], tuple[CriticalPair, ...]]:
    x, y, z, u, v, w, r = (_v(n) for n in "xyzuvwr")
    base = (
        CriticalPair(("CP1", "CP3"), _c(TRUE, TRUE, FALSE), TRUE, TRUE),
        CriticalPair(
            ("CP1", "CP4"),
            _c(x, _c(y, TRUE, u), v),
            _c(x, y, v),
            _c(_c(x, y, v), TRUE, _c(x, u, v)),
        ),
        CriticalPair(("CP2", "CP3"), _c(TRUE, FALSE, FALSE), FALSE, FALSE),
        CriticalPair(
            ("CP2", "CP4"),
            _c(x, _c(y, FALSE, u), v),
            _c(x, u, v),
            _c(_c(x, y, v), FALSE, _c(x, u, v)),
        ),
        CriticalPair(
            ("CP3", "CP4"),
            _c(x, _c(TRUE, z, FALSE), v),
            _c(x, z, v),
            _c(_c(x, TRUE, v), z, _c(x, FALSE, v)),
        ),
        CriticalPair(
            ("CP3", "CP4"),
            _c(TRUE, _c(y, z, u), FALSE),
            _c(y, z, u),
            _c(_c(TRUE, y, FALSE), z, _c(TRUE, u, FALSE)),
        ),
        CriticalPair(
            ("CP4", "CP4"),
            _c(x, _c(w, _c(y, z, u), r), v),
            _c(_c(x, w, v), _c(y, z, u), _c(x, r, v)),
            _c(x, _c(_c(w, y, r), z, _c(w, u, r)), v),
        ),
    )
    extra = (
        CriticalPair(("CP1", "TTT"), _c(TRUE, TRUE, TRUE), TRUE, TRUE),
        CriticalPair(("CP2", "TTT"), _c(TRUE, FALSE, TRUE), TRUE, TRUE),
        CriticalPair(
            ("CP4", "TTT"),
            _c(TRUE, _c(y, z, u), TRUE),
            _c(_c(TRUE, y, TRUE), z, _c(TRUE, u, TRUE)),
            TRUE,
        ),
        CriticalPair(
            ("CP4", "TTT"),
            _c(x, _c(TRUE, z, TRUE), u),
            _c(_c(x, TRUE, u), z, _c(x, TRUE, u)),
            _c(x, TRUE, u),
        ),
    )
    return base, extra


CP_CRITICAL_PAIRS, CPT_EXTRA_CRITICAL_PAIRS = _pairs()

# The common reduct both components of the (CP4, CP4) overlap reach.
CP4_CP4_COMMON_REDUCT: Term = _c(
    _c(_c(_v("x"), _v("w"), _v("v")), _v("y"), _c(_v("x"), _v("r"), _v("v"))),
    _v("z"),
    _c(_c(_v("x"), _v("w"), _v("v")), _v("u"), _c(_v("x"), _v("r"), _v("v"))),
)


def critical_pairs(system: RewriteSystem) -> tuple[CriticalPair, ...]:
    if system.system_id == "cp":
        return CP_CRITICAL_PAIRS
    if system.system_id == "cpt":
        return CP_CRITICAL_PAIRS + CPT_EXTRA_CRITICAL_PAIRS
    raise ValueError(f"no critical pair table for system {system.system_id!r}")


def vars_to_atoms(pattern: Term) -> Term:
    """Freeze rule variables as opaque atoms for schematic reduction."""
    if isinstance(pattern, Variable):
        return AtomLeaf(Atom(pattern.var))
    if isinstance(pattern, Conditional):
        return Conditional(
            vars_to_atoms(pattern.then_branch),
            vars_to_atoms(pattern.condition),
            vars_to_atoms(pattern.else_branch),
        )
    return pattern


def join_normal_forms(pair: CriticalPair, system: RewriteSystem) -> tuple[Term, Term]:
    left, _ = normalize(vars_to_atoms(pair.left), system)
    right, _ = normalize(vars_to_atoms(pair.right), system)
    return left, right


def joinable(pair: CriticalPair, system: RewriteSystem) -> bool:
    left, right = join_normal_forms(pair, system)
    return left == right


def atom_renaming_equal(t1: Term, t2: Term) -> bool:
    """Structural equality up to a bijective renaming of atoms."""
    fwd: dict[Atom, Atom] = {}
    bwd: dict[Atom, Atom] = {}

    def go(a: Term, b: Term) -> bool:
        if isinstance(a, AtomLeaf) and isinstance(b, AtomLeaf):
            if fwd.setdefault(a.atom, b.atom) != b.atom:
                return False
            if bwd.setdefault(b.atom, a.atom) != a.atom:
                return False
            return True
        if isinstance(a, Conditional) and isinstance(b, Conditional):
            return (
                go(a.then_branch, b.then_branch)
                and go(a.condition, b.condition)
                and go(a.else_branch, b.else_branch)
            )
        return a == b

    return go(t1, t2)
