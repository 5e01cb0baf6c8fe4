"""Membership predicates, Lie algebras and exact members of the SpO groups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .classification import GroupId
from .errors import CliffordError
from .multivector import (
    COMPLEX,
    I_UNIT,
    REAL,
    Multivector,
    Signature,
    _blade_product,
    basis_blades,
    blade_product,
    grade,
    grade_involution,
    hermitian_conjugate,
    pseudo_hermitian,
    reversion,
)

EXACT = "exact"
FLOAT = "float"


class CarrierError(CliffordError):
    """An element lies outside the space the group is defined on."""


def _re(c) -> float:
    return complex(c).real


def _im(c) -> float:
    return complex(c).imag


def carrier_violation(g: GroupId, U: Multivector) -> float:
    """How far ``U`` is from the carrier space of ``g`` (0 means inside)."""
    worst = 0.0
    for mask, c in U.items():
        odd = grade(mask) % 2 == 1
        if g.is_complex:
            bad = abs(_re(c)) if odd else abs(_im(c))
        elif g is GroupId.SPO_2:
            bad = abs(complex(c)) if odd else abs(_im(c))
        else:
            bad = abs(_im(c))
        worst = max(worst, bad)
    return worst


def group_involution(g: GroupId, U: Multivector) -> Multivector:
    """The anti-involution ``*`` in the defining equation ``U* U = e``."""
    if g in (GroupId.SPO_23, GroupId.SPO_2):
        return reversion(U)
    if g is GroupId.SPO_12:
        return grade_involution(reversion(U))
    if g is GroupId.SPO_2I1:
        return pseudo_hermitian(U)
    return grade_involution(pseudo_hermitian(U))


def membership_residual(g: GroupId, U: Multivector) -> Multivector:
    """``U* U - e`` for the group's involution."""
    return group_involution(g, U) * U - 1


def group_membership(g: GroupId, U: Multivector, mode: str = EXACT, tol: float = 1e-9) -> bool:
    """Decide ``U`` in ``g``.  Exact mode demands exact coefficients and an
    exactly vanishing residual; float mode compares against ``tol``."""
    if mode not in (EXACT, FLOAT):
        raise CliffordError(f"unknown mode {mode!r}")
    if mode == EXACT:
        if not U.is_exact():
            raise CliffordError("exact membership needs exact coefficients")
        if carrier_violation(g, U) != 0:
            raise CarrierError(f"element is outside the carrier of {g.value}")
        return membership_residual(g, U).is_zero()
    if carrier_violation(g, U) > tol:
        raise CarrierError(f"element is outside the carrier of {g.value}")
    return membership_residual(g, U).max_abs() <= tol


def dagger_membership(U: Multivector, mode: str = EXACT, tol: float = 1e-9) -> bool:
    """Alternate reading of SpO_2i1 with the hermitian conjugate: ``U^† U = e``."""
    residual = hermitian_conjugate(U) * U - 1
    if mode == EXACT:
        return residual.is_zero()
    return residual.max_abs() <= tol


# -- Lie algebras -------------------------------------------------------------------

# (grade mod 4 of real basis blades, grade mod 4 of imaginary basis blades)
_ALGEBRA_TYPES = {
    GroupId.SPO_23: ((2, 3), ()),
    GroupId.SPO_12: ((1, 2), ()),
    GroupId.SPO_2: ((2,), ()),
    GroupId.SPO_2I1: ((2,), (1,)),
    GroupId.SPO_2I3: ((2,), (3,)),
}


@dataclass(frozen=True)
class LieAlgebraSpace:
    """Real span of basis blades ``e^A`` (``imag=False``) and ``i e^A`` (``imag=True``)."""

    group: GroupId
    signature: Signature
    basis: tuple[tuple[int, bool], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> list[Multivector]:
        sig = self.signature
        field = COMPLEX if self.group.is_complex else REAL
        return [Multivector.blade(sig, m, I_UNIT if imag else 1, field) for m, imag in self.basis]

    def combine(self, coeffs) -> Multivector:
        """The element ``sum_k c_k b_k`` for real coefficients ``c_k``."""
        terms = {}
        for (m, imag), c in zip(self.basis, coeffs, strict=True):
            terms[m] = complex(0, c) if imag else c
        field = COMPLEX if self.group.is_complex else REAL
        return Multivector(self.signature, terms, field)

    def contains(self, X: Multivector, tol: float | None = None) -> bool:
        allowed = dict(self.basis)
        for m, c in X.items():
            if m not in allowed:
                bad = abs(complex(c))
            else:
                bad = abs(_re(c)) if allowed[m] else abs(_im(c))
            if (bad != 0) if tol is None else (bad > tol):
                return False
        return True

    def closure_failures(self) -> list[tuple[int, int]]:
        """Basis pairs whose commutator leaves the span.

        Two blades either commute or anticommute, so ``[b_i, b_j]`` is 0 or
        ``2 b_i b_j``, a single signed blade; the imaginary unit squares to -1
        but only changes the sign, so the span test is on (mask, imag) alone.
        """
        span = set(self.basis)
        neg = self.signature.negative_mask
        failures = []
        for i, (a, ia) in enumerate(self.basis):
            for j in range(i + 1, len(self.basis)):
                b, ib = self.basis[j]
                s_ab, m = _blade_product(a, b, neg)
                s_ba, _ = _blade_product(b, a, neg)
                if s_ab == s_ba:
                    continue
                if (m, ia != ib) not in span:
                    failures.append((i, j))
        return failures


def lie_algebra_basis(g: GroupId, sig: Signature) -> LieAlgebraSpace:
    real_types, imag_types = _ALGEBRA_TYPES[g]
    basis = []
    for m in basis_blades(sig.n):
        k = grade(m) % 4
        if k in real_types:
            basis.append((m, False))
        if k in imag_types:
            basis.append((m, True))
    return LieAlgebraSpace(g, sig, tuple(basis))


def lie_algebra_dim(g: GroupId, sig: Signature) -> int:
    return lie_algebra_basis(g, sig).dim


# -- spin group -------------------------------------------------------------------------

def spin_membership(U: Multivector, mode: str = EXACT, tol: float = 1e-9) -> bool:
    """``U`` real, even, ``U~ U = e`` and ``U v U~`` a vector for every generator ``v``."""
    sig = U.sig
    exact = mode == EXACT
    if exact and not U.is_exact():
        raise CliffordError("exact membership needs exact coefficients")

    def small(x) -> bool:
        return x == 0 if exact else abs(x) <= tol

    for m, c in U.items():
        if not small(_im(c)) or (grade(m) % 2 == 1 and not small(abs(complex(c)))):
            return False
    R = reversion(U)
    if not small((R * U - 1).max_abs()):
        return False
    for a in range(1, sig.n + 1):
        image = U * Multivector.generator(sig, a) * R
        if not small(image.filter(lambda m: grade(m) != 1).max_abs()):
            return False
    return True


# -- exact members -----------------------------------------------------------------------

# (x, y) with x^2 + y^2 = 1 and with x^2 - y^2 = 1
_CIRCLE = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (Fraction(8, 17), Fraction(15, 17))]
_HYPERBOLA = [(Fraction(5, 4), Fraction(3, 4)), (Fraction(13, 12), Fraction(5, 12)), (Fraction(17, 15), Fraction(8, 15))]


def exact_rotors(sig: Signature) -> list[Multivector]:
    """Rational rotors ``x + y e^{ab}``, all in the spin group."""
    out = []
    for a, b in combinations(range(sig.n), 2):
        mask = (1 << a) | (1 << b)
        sign, _ = blade_product(mask, mask, sig)
        pairs = _CIRCLE if sign < 0 else _HYPERBOLA
        for x, y in pairs:
            for sy in (1, -1):
                out.append(Multivector(sig, {0: x, mask: sy * y}))
    return out


def exact_reflections(g: GroupId, sig: Signature) -> list[Multivector]:
    """Single-generator members outside the spin group: ``e^a`` or ``i e^a``."""
    want = {GroupId.SPO_23: 1, GroupId.SPO_12: -1, GroupId.SPO_2I1: 1, GroupId.SPO_2I3: -1}
    if g not in want:
        return []
    coeff = I_UNIT if g.is_complex else 1
    field = COMPLEX if g.is_complex else REAL
    return [
        Multivector.generator(sig, a, coeff, field)
        for a in range(1, sig.n + 1)
        if sig.eta(a) == want[g]
    ]


def exact_generators(g: GroupId, sig: Signature) -> list[Multivector]:
    gens = [Multivector.scalar(sig, -1)] + exact_rotors(sig) + exact_reflections(g, sig)
    if g.is_complex:
        gens = [U.as_complex() for U in gens]
    for U in gens:
        if not group_membership(g, U):
            raise CliffordError(f"exact generator {U} is not in {g.value}")
    return gens


def exact_group_elements(g: GroupId, sig: Signature, count: int, seed: int = 0, length: int = 3):
    """``count`` exact members, each a product of ``length`` random exact generators."""
    gens = exact_generators(g, sig)
    rng = random.Random(seed)
    one = Multivector.scalar(sig, 1, COMPLEX if g.is_complex else REAL)
    out = []
    for _ in range(count):
        U = one
        for _ in range(length):
            U = U * rng.choice(gens)
        out.append(U)
    return out
