"""Axiom tables for the conditional laws and their per-congruence
scheme extensions, as schematic equations over rule variables.

Variables range over arbitrary terms; names listed in atom_params must
be instantiated by single atoms (scheme parameters).  Derived equations
are consequences of the table they accompany and are carried only so
soundness checks can exercise them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import FALSE, TRUE, BoolLeaf, Conditional, Term
from .rewriting import Variable


@dataclass(frozen=True)
class Axiom:
    name: str
    lhs: Term
    rhs: Term
    atom_params: tuple[str, ...] = ()
    derived: bool = False

    def render_equation(self) -> str:
        return f"{schematic(self.lhs)} = {schematic(self.rhs)}"

    def render(self) -> str:
        return f"{self.name}: {self.render_equation()}"


def schematic(t: Term, top: bool = True) -> str:
    """Render a schematic term; variables print as their names."""
    if isinstance(t, BoolLeaf):
        return str(t)
    if isinstance(t, Variable):
        return t.var
    assert isinstance(t, Conditional)
    inner = (
        f"{schematic(t.then_branch, False)} <| "
        f"{schematic(t.condition, False)} |> "
        f"{schematic(t.else_branch, False)}"
    )
    return inner if top else f"({inner})"


def _v(name: str) -> Variable:
    return Variable(name)


def _c(x: Term, y: Term, z: Term) -> Conditional:
    return Conditional(x, y, z)


_x, _y, _z, _u, _v_, _w, _a, _b = (_v(n) for n in ("x", "y", "z", "u", "v", "w", "a", "b"))

CP_TABLE: tuple[Axiom, ...] = (
    Axiom("CP1", _c(_x, TRUE, _y), _x),
    Axiom("CP2", _c(_x, FALSE, _y), _y),
    Axiom("CP3", _c(TRUE, _x, FALSE), _x),
    Axiom(
        "CP4",
        _c(_x, _c(_y, _z, _u), _v_),
        _c(_c(_x, _y, _v_), _z, _c(_x, _u, _v_)),
    ),
)

# Branch swap under a negated condition; a consequence of the four
# conditional laws, so it holds in every congruence.
SWAP_BRANCHES = Axiom(
    "swap-branches",
    _c(_y, _x, _z),
    _c(_z, _c(FALSE, _x, TRUE), _y),
    derived=True,
)

RP_TABLE: tuple[Axiom, ...] = (
    Axiom("CPrp1", _c(_c(_x, _a, _y), _a, _z), _c(_c(_x, _a, _x), _a, _z), ("a",)),
    Axiom("CPrp2", _c(_x, _a, _c(_y, _a, _z)), _c(_x, _a, _c(_z, _a, _z)), ("a",)),
)

CR_TABLE: tuple[Axiom, ...] = (
    Axiom("CPcr1", _c(_c(_x, _a, _y), _a, _z), _c(_x, _a, _z), ("a",)),
    Axiom("CPcr2", _c(_x, _a, _c(_y, _a, _z)), _c(_x, _a, _z), ("a",)),
)

WM_TABLE: tuple[Axiom, ...] = (
    Axiom(
        "CPwm1",
        _c(_c(_c(_x, _a, _y), _b, _z), _a, _v_),
        _c(_c(_x, _b, _z), _a, _v_),
        ("a", "b"),
    ),
    Axiom(
        "CPwm2",
        _c(_x, _a, _c(_y, _b, _c(_z, _a, _v_))),
        _c(_x, _a, _c(_y, _b, _v_)),
        ("a", "b"),
    ),
)

MEM_TABLE: tuple[Axiom, ...] = (
    Axiom(
        "CPmem",
        _c(_x, _y, _c(_z, _u, _c(_v_, _y, _w))),
        _c(_x, _y, _c(_z, _u, _w)),
    ),
)

# Recalled conditions: once a condition has replied, any later
# occurrence on the same evaluation path collapses to that branch.
MEM_DERIVED: tuple[Axiom, ...] = (
    Axiom(
        "mem-else-then-recall",
        _c(_x, _y, _c(_c(_z, _y, _u), _v_, _w)),
        _c(_x, _y, _c(_u, _v_, _w)),
        derived=True,
    ),
    Axiom(
        "mem-then-else-recall",
        _c(_c(_x, _y, _c(_z, _u, _v_)), _u, _w),
        _c(_c(_x, _y, _z), _u, _w),
        derived=True,
    ),
    Axiom(
        "mem-then-then-recall",
        _c(_c(_c(_x, _y, _z), _u, _v_), _y, _w),
        _c(_c(_x, _u, _v_), _y, _w),
        derived=True,
    ),
    Axiom(
        "mem-else-recall",
        _c(_x, _y, _c(_v_, _y, _w)),
        _c(_x, _y, _w),
        derived=True,
    ),
    Axiom(
        "mem-then-recall",
        _c(_c(_x, _y, _z), _y, _w),
        _c(_x, _y, _w),
        derived=True,
    ),
)

ST_TABLE: tuple[Axiom, ...] = (
    Axiom(
        "CPstat",
        _c(_c(_x, _y, _z), _u, _v_),
        _c(_c(_x, _u, _v_), _y, _c(_z, _u, _v_)),
    ),
    Axiom("CPcontr", _c(_c(_x, _y, _z), _y, _u), _c(_x, _y, _u)),
)

ST_DERIVED: tuple[Axiom, ...] = (
    Axiom(
        "CPstat-sym",
        _c(_x, _y, _c(_z, _u, _v_)),
        _c(_c(_x, _y, _z), _u, _c(_x, _y, _v_)),
        derived=True,
    ),
    Axiom(
        "CPcontr-sym",
        _c(_x, _y, _c(_z, _y, _u)),
        _c(_x, _y, _u),
        derived=True,
    ),
    Axiom("branch-collapse", _c(_x, _y, _x), _x, derived=True),
)


@dataclass(frozen=True)
class AxiomTable:
    table_id: str
    axioms: tuple[Axiom, ...]


AXIOM_TABLES: tuple[AxiomTable, ...] = (
    AxiomTable("CP", CP_TABLE),
    AxiomTable("CPrp", RP_TABLE),
    AxiomTable("CPcr", CR_TABLE),
    AxiomTable("CPwm", WM_TABLE),
    AxiomTable("CPmem", MEM_TABLE),
    AxiomTable("CPst", ST_TABLE),
)

_SCHEME_TABLES: dict[str, tuple[Axiom, ...]] = {
    "free": (),
    "rp": RP_TABLE,
    "cr": CR_TABLE,
    "wm": CR_TABLE + WM_TABLE,
    "mem": MEM_TABLE,
    "st": ST_TABLE,
}

_DERIVED: dict[str, tuple[Axiom, ...]] = {
    "free": (SWAP_BRANCHES,),
    "rp": (),
    "cr": (),
    "wm": (),
    "mem": MEM_DERIVED,
    "st": ST_DERIVED,
}


def axioms_for(congruence: str, include_derived: bool = False) -> tuple[Axiom, ...]:
    """The full equational basis for a congruence: the four conditional
    laws plus its scheme extension (wm builds on cr), with the known
    derived consequences appended on request."""
    try:
        extension = _SCHEME_TABLES[congruence]
    except KeyError:
        raise ValueError(f"unknown congruence: {congruence!r}") from None
    out = CP_TABLE + extension
    if include_derived:
        out = out + _DERIVED[congruence]
    return out
