"""Classical-group classification of the five SpO groups and their Lie algebras.

The group tables are written as decision chains; the Lie algebra tables are
kept as separate row data so that the two can be cross-checked against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ScopeError
from .multivector import Signature


class GroupId(Enum):
    SPO_2I1 = "SpO_2i1"
    SPO_2I3 = "SpO_2i3"
    SPO_23 = "SpO_23"
    SPO_12 = "SpO_12"
    SPO_2 = "SpO_2"

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "").lower()

    @classmethod
    def parse(cls, text: str) -> "GroupId":
        key = text.replace("_", "").lower()
        for g in cls:
            if g.cli_name == key:
                return g
        raise ValueError(f"unknown group {text!r}")

    @property
    def is_complex(self) -> bool:
        return self in (GroupId.SPO_2I1, GroupId.SPO_2I3)


GROUP_ORDER = (GroupId.SPO_2I1, GroupId.SPO_2I3, GroupId.SPO_23, GroupId.SPO_12, GroupId.SPO_2)

# allowed values of (p - q) mod 8
SCOPES = {
    GroupId.SPO_23: (0, 1, 2),
    GroupId.SPO_12: (0, 1, 2),
    GroupId.SPO_2I1: (0, 6, 7),
    GroupId.SPO_2I3: (0, 6, 7),
    GroupId.SPO_2: (0, 1, 7),
}


class Family(Enum):
    O = "O"
    O_MM = "O(m,m)"
    SP = "Sp"
    GL = "GL"


@dataclass(frozen=True)
class ClassicalGroupDescriptor:
    family: Family
    m: int
    multiplicity: int = 1
    algebra: bool = False

    @property
    def factor_dim(self) -> int:
        m = self.m
        if self.family is Family.O:
            return m * (m - 1) // 2
        if self.family is Family.O_MM:
            return (2 * m) * (2 * m - 1) // 2
        if self.family is Family.SP:
            return m * (2 * m + 1)
        return m * m

    @property
    def lie_dim(self) -> int:
        return self.multiplicity * self.factor_dim

    @property
    def matrix_size(self) -> int:
        """Size of the square matrices of one factor."""
        return 2 * self.m if self.family in (Family.O_MM, Family.SP) else self.m

    def shape(self) -> tuple:
        return (self.family, self.m, self.multiplicity)

    def as_algebra(self) -> "ClassicalGroupDescriptor":
        return ClassicalGroupDescriptor(self.family, self.m, self.multiplicity, True)

    def as_group(self) -> "ClassicalGroupDescriptor":
        return ClassicalGroupDescriptor(self.family, self.m, self.multiplicity, False)

    def factor_name(self) -> str:
        m = self.m
        name = {
            Family.O: f"O({m})",
            Family.O_MM: f"O({m},{m})",
            Family.SP: f"Sp({m},ℝ)",
            Family.GL: f"GL({m},ℝ)",
        }[self.family]
        if self.algebra:
            head, rest = name.split("(", 1)
            name = f"{head.lower()}({rest}"
        return name

    def __str__(self) -> str:
        f = self.factor_name()
        return f if self.multiplicity == 1 else f"{f}⊕{f}"


def in_group_scope(g: GroupId, sig: Signature) -> bool:
    return (sig.p - sig.q) % 8 in SCOPES[g]


def _require_scope(g: GroupId, sig: Signature) -> None:
    if not in_group_scope(g, sig):
        allowed = ", ".join(str(t) for t in SCOPES[g])
        raise ScopeError(
            f"{g.value} {sig}: p - q = {sig.p - sig.q} = {(sig.p - sig.q) % 8} mod 8, "
            f"the classification covers p - q = {allowed} (mod 8)"
        )


def _d(family: Family, exponent: int, mult: int = 1) -> ClassicalGroupDescriptor:
    if exponent < 0:
        raise ScopeError("negative size exponent")
    return ClassicalGroupDescriptor(family, 2 ** exponent, mult)


def classify_group(g: GroupId, sig: Signature) -> ClassicalGroupDescriptor:
    """The classical matrix group isomorphic to ``g`` over ``Cl(p, q)``."""
    _require_scope(g, sig)
    p, q, n = sig.p, sig.q, sig.n
    r = n % 8
    O, OMM, SP, GL = Family.O, Family.O_MM, Family.SP, Family.GL

    if g in (GroupId.SPO_23, GroupId.SPO_2I1, GroupId.SPO_12, GroupId.SPO_2I3):
        # the definite signature and the "other side nonzero" qualifier
        if g in (GroupId.SPO_23, GroupId.SPO_2I1):
            definite, other = q == 0, q
        else:
            definite, other = p == 0, p
        if definite:
            return _d(O, n // 2) if n % 2 == 0 else _d(O, (n - 1) // 2, 2)
        if g in (GroupId.SPO_23, GroupId.SPO_2I3):
            omm_even, sp_even, omm_odd, sp_odd, gl = (0, 2), (4, 6), 1, 5, (3, 7)
        else:
            omm_even, sp_even, omm_odd, sp_odd, gl = (0, 6), (2, 4), 7, 3, (1, 5)
        if r in omm_even and other != 0:
            return _d(OMM, n // 2 - 1)
        if r in sp_even:
            return _d(SP, n // 2 - 1)
        if r == omm_odd and other != 0:
            return _d(OMM, (n - 1) // 2 - 1, 2)
        if r == sp_odd:
            return _d(SP, (n - 1) // 2 - 1, 2)
        if r in gl:
            return _d(GL, (n - 1) // 2)
    else:
        if p == 0 or q == 0:
            return _d(O, (n - 1) // 2) if n % 2 else _d(O, (n - 2) // 2, 2)
        if r in (1, 7):
            return _d(OMM, (n - 1) // 2 - 1)
        if r in (3, 5):
            return _d(SP, (n - 1) // 2 - 1)
        if r == 0:
            return _d(OMM, (n - 2) // 2 - 1, 2)
        if r == 4:
            return _d(SP, (n - 2) // 2 - 1, 2)
        if r in (2, 6):
            return _d(GL, (n - 2) // 2)
    raise ScopeError(f"no table row matches {g.value} {sig}")


# Lie algebra tables: (row condition, family, size exponent as a function of n, multiplicity).
# Conditions: "def+" (p,q)=(n,0), "def-" (p,q)=(0,n), "def" either, with
# parity suffix; ("mod", residues, qualifier) otherwise.
_EVEN = lambda n: n // 2  # noqa: E731
_ODD = lambda n: (n - 1) // 2  # noqa: E731
_EVEN1 = lambda n: n // 2 - 1  # noqa: E731
_ODD1 = lambda n: (n - 1) // 2 - 1  # noqa: E731
_EVEN2 = lambda n: (n - 2) // 2  # noqa: E731
_EVEN21 = lambda n: (n - 2) // 2 - 1  # noqa: E731

_O, _OMM, _SP, _GL = Family.O, Family.O_MM, Family.SP, Family.GL

ALGEBRA_TABLES = {
    GroupId.SPO_23: [
        (("def+", "even"), _O, _EVEN, 1),
        (("def+", "odd"), _O, _ODD, 2),
        (("mod", (0, 2), "q"), _OMM, _EVEN1, 1),
        (("mod", (4, 6), None), _SP, _EVEN1, 1),
        (("mod", (1,), "q"), _OMM, _ODD1, 2),
        (("mod", (5,), None), _SP, _ODD1, 2),
        (("mod", (3, 7), None), _GL, _ODD, 1),
    ],
    GroupId.SPO_12: [
        (("def-", "even"), _O, _EVEN, 1),
        (("def-", "odd"), _O, _ODD, 2),
        (("mod", (0, 6), "p"), _OMM, _EVEN1, 1),
        (("mod", (2, 4), None), _SP, _EVEN1, 1),
        (("mod", (7,), "p"), _OMM, _ODD1, 2),
        (("mod", (3,), None), _SP, _ODD1, 2),
        (("mod", (1, 5), None), _GL, _ODD, 1),
    ],
    GroupId.SPO_2I1: [
        (("def+", "even"), _O, _EVEN, 1),
        (("def+", "odd"), _O, _ODD, 2),
        (("mod", (0, 6), "q"), _OMM, _EVEN1, 1),
        (("mod", (2, 4), None), _SP, _EVEN1, 1),
        (("mod", (7,), "q"), _OMM, _ODD1, 2),
        (("mod", (3,), None), _SP, _ODD1, 2),
        (("mod", (1, 5), None), _GL, _ODD, 1),
    ],
    GroupId.SPO_2I3: [
        (("def-", "even"), _O, _EVEN, 1),
        (("def-", "odd"), _O, _ODD, 2),
        (("mod", (0, 2), "p"), _OMM, _EVEN1, 1),
        (("mod", (4, 6), None), _SP, _EVEN1, 1),
        (("mod", (1,), "p"), _OMM, _ODD1, 2),
        (("mod", (5,), None), _SP, _ODD1, 2),
        (("mod", (3, 7), None), _GL, _ODD, 1),
    ],
    GroupId.SPO_2: [
        (("def", "odd"), _O, _ODD, 1),
        (("def", "even"), _O, _EVEN2, 2),
        (("mod", (1, 7), None), _OMM, _ODD1, 1),
        (("mod", (3, 5), None), _SP, _ODD1, 1),
        (("mod", (0,), None), _OMM, _EVEN21, 2),
        (("mod", (4,), None), _SP, _EVEN21, 2),
        (("mod", (2, 6), None), _GL, _EVEN2, 1),
    ],
}


def _row_matches(cond, sig: Signature) -> bool:
    p, q, n = sig.p, sig.q, sig.n
    kind = cond[0]
    if kind == "mod":
        _, residues, qualifier = cond
        nonzero = {"p": p, "q": q, None: 1}[qualifier]
        return n % 8 in residues and nonzero != 0
    parity = cond[1]
    definite = {"def+": q == 0, "def-": p == 0, "def": p == 0 or q == 0}[kind]
    return definite and (n % 2 == 0) == (parity == "even")


def classify_algebra(g: GroupId, sig: Signature) -> ClassicalGroupDescriptor:
    """The classical Lie algebra isomorphic to the Lie algebra of ``g``."""
    _require_scope(g, sig)
    for cond, family, size, mult in ALGEBRA_TABLES[g]:
        if _row_matches(cond, sig):
            exponent = size(sig.n)
            if exponent < 0:
                raise ScopeError("negative size exponent")
            return ClassicalGroupDescriptor(family, 2 ** exponent, mult, algebra=True)
    raise ScopeError(f"no table row matches {g.value} {sig}")


def in_scope_cells(max_n: int, min_n: int = 1):
    """All (group, signature) pairs covered by the tables, ordered by group, p, q."""
    cells = []
    for g in GROUP_ORDER:
        for n in range(min_n, max_n + 1):
            for p in range(n + 1):
                sig = Signature(p, n - p)
                if in_group_scope(g, sig):
                    cells.append((g, sig))
    order = {g: i for i, g in enumerate(GROUP_ORDER)}
    return sorted(cells, key=lambda c: (order[c[0]], c[1].p, c[1].q))
