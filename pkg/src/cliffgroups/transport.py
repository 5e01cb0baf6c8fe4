"""Isomorphisms that carry the complex and even SpO groups onto real ones.

Every map here sends basis blades to signed (or ``±i``-scaled) basis blades,
so it is stored as a table ``mask -> (coefficient, target mask)`` built from
the images of the generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classification import GroupId
from .errors import CliffordError, ScopeError
from .groups import carrier_violation, group_involution
from .multivector import (
    COMPLEX,
    Multivector,
    Signature,
    basis_blades,
    grade,
)
from .scalars import GaussianRational

I_TWIST = "i-twist"
EVEN_TO_LOWER = "even-to-lower"
SWAP = "swap"
VARIANTS = (I_TWIST, EVEN_TO_LOWER, SWAP)

NEGATIVE_PIVOT = "negative"
POSITIVE_PIVOT = "positive"

_MINUS_I = GaussianRational(0, -1)


def _unit_coeff(c):
    """Normalise ``±1``/``±i`` to int or GaussianRational."""
    c = GaussianRational.coerce(c)
    return int(c.re) if c.im == 0 else c


@dataclass(frozen=True)
class BladeMap:
    """Linear map sending ``e^A`` to ``c_A f^{B(A)}`` on the masks in its table."""

    source: Signature
    target: Signature
    table: dict = field(hash=False)

    @classmethod
    def from_generators(cls, source: Signature, target: Signature, images, domain=None) -> "BladeMap":
        """Extend generator images multiplicatively to the blades in ``domain``.

        ``images[a-1]`` is a single-term multivector of ``target``; ``domain``
        defaults to every blade of ``source``.
        """
        table = {}
        one = Multivector.scalar(target, 1, COMPLEX)
        for mask in domain if domain is not None else basis_blades(source.n):
            acc = one
            for a in range(source.n):
                if mask >> a & 1:
                    acc = acc * images[a].as_complex()
            ((tmask, c),) = acc.items()
            table[mask] = (_unit_coeff(c), tmask)
        return cls(source, target, table)

    def apply(self, U: Multivector) -> Multivector:
        if U.sig != self.source:
            raise CliffordError(f"map expects {self.source}, got {U.sig}")
        terms = {}
        for mask, c in U.items():
            if mask not in self.table:
                raise CarrierDomainError(f"blade e{mask:b} is outside the domain of the map")
            k, tmask = self.table[mask]
            terms[tmask] = c * k
        return Multivector(self.target, terms, COMPLEX)

    def inverse(self) -> "BladeMap":
        table = {}
        for mask, (k, tmask) in self.table.items():
            table[tmask] = (_unit_coeff(1 / GaussianRational.coerce(k)), mask)
        return BladeMap(self.target, self.source, table)


class CarrierDomainError(CliffordError):
    pass


def _realify(U: Multivector) -> Multivector:
    return U.to_real() if not U.has_imaginary_part() else U


def twist_map(sig: Signature) -> BladeMap:
    """``Cl_C(p,q) -> Cl_C(q,p)``, ``e^a -> -i f^{pi(a)}`` where the positive
    generators move after the (new) positive ones, order kept within each side."""
    target = sig.swapped()
    images = []
    for a in range(1, sig.n + 1):
        b = sig.q + a if a <= sig.p else a - sig.p
        images.append(Multivector.generator(target, b, _MINUS_I, COMPLEX))
    return BladeMap.from_generators(sig, target, images)


def lower_signature(sig: Signature, pivot: str) -> Signature:
    if pivot == NEGATIVE_PIVOT:
        if sig.q < 1:
            raise ScopeError(f"{sig} has no negative generator to pivot on")
        return Signature(sig.p, sig.q - 1)
    if pivot == POSITIVE_PIVOT:
        if sig.p < 1:
            raise ScopeError(f"{sig} has no positive generator to pivot on")
        return Signature(sig.q, sig.p - 1)
    raise CliffordError(f"unknown pivot {pivot!r}")


def lower_to_even_map(sig: Signature, pivot: str) -> BladeMap:
    """``Cl(lower) -> Cl_even(p,q)``, ``g^k -> e^{a_k} e^{pivot}``.

    With the negative pivot ``e^n`` the ``a_k`` run through ``1..n-1`` in order;
    with the positive pivot ``e^p`` they are the negatives ``p+1..n`` followed by
    the positives ``1..p-1``.
    """
    lower = lower_signature(sig, pivot)
    if pivot == NEGATIVE_PIVOT:
        piv, order = sig.n, list(range(1, sig.n))
    else:
        piv, order = sig.p, list(range(sig.p + 1, sig.n + 1)) + list(range(1, sig.p))
    pv = Multivector.generator(sig, piv)
    images = [Multivector.generator(sig, a) * pv for a in order]
    return BladeMap.from_generators(lower, sig, images)


def default_pivot(sig: Signature) -> str:
    return NEGATIVE_PIVOT if sig.q >= 1 else POSITIVE_PIVOT


_TWIST_TARGET = {GroupId.SPO_2I1: GroupId.SPO_12, GroupId.SPO_2I3: GroupId.SPO_23}


@dataclass(frozen=True)
class Transport:
    """A group isomorphism ``source_group(source) -> target_group(target)``."""

    variant: str
    source_group: GroupId
    target_group: GroupId
    forward: BladeMap
    backward: BladeMap

    @property
    def source(self) -> Signature:
        return self.forward.source

    @property
    def target(self) -> Signature:
        return self.forward.target

    def apply(self, U: Multivector) -> Multivector:
        return _realify(self.forward.apply(U))

    def pull_back(self, V: Multivector) -> Multivector:
        W = self.backward.apply(V)
        return W if self.source_group.is_complex else _realify(W)

    def check(self, samples) -> dict:
        """Residuals of carrier preservation, multiplicativity, intertwining of
        the involutions and inversion, maximised over ``samples``."""
        def size(x: Multivector) -> float:
            return x.max_abs()

        worst = {"carrier": 0.0, "homomorphism": 0.0, "intertwining": 0.0, "inverse": 0.0}
        images = [self.apply(U) for U in samples]
        for U, V in zip(samples, images):
            worst["carrier"] = max(worst["carrier"], carrier_violation(self.target_group, V))
            lhs = self.apply(group_involution(self.source_group, U))
            worst["intertwining"] = max(
                worst["intertwining"], size(lhs - group_involution(self.target_group, V))
            )
            worst["inverse"] = max(worst["inverse"], size(self.pull_back(V) - U))
        for U, V, fU, fV in zip(samples, samples[1:], images, images[1:]):
            worst["homomorphism"] = max(worst["homomorphism"], size(self.apply(U * V) - fU * fV))
        return worst


def transport_map(g: GroupId, sig: Signature, variant: str | None = None, pivot: str | None = None) -> Transport:
    """The isomorphism onto a real SpO group.

    ``i-twist``: SpO_2i1 / SpO_2i3 of ``Cl(p,q)`` onto SpO_12 / SpO_23 of
    ``Cl(q,p)``.  ``even-to-lower``: SpO_2 of ``Cl(p,q)`` onto SpO_12 of
    ``Cl(p,q-1)`` (negative pivot) or ``Cl(q,p-1)`` (positive pivot).
    ``swap``: SpO_2 of ``Cl(p,q)`` onto SpO_2 of ``Cl(q,p)``.
    """
    if variant is None:
        variant = I_TWIST if g.is_complex else EVEN_TO_LOWER
    if variant == I_TWIST:
        if not g.is_complex:
            raise CliffordError(f"the i-twist applies to SpO_2i1 and SpO_2i3, not {g.value}")
        fwd = twist_map(sig)
        return Transport(variant, g, _TWIST_TARGET[g], fwd, fwd.inverse())
    if g is not GroupId.SPO_2:
        raise CliffordError(f"{variant} applies to SpO_2, not {g.value}")
    if variant == SWAP:
        full = twist_map(sig)
        even = {m: v for m, v in full.table.items() if grade(m) % 2 == 0}
        fwd = BladeMap(sig, full.target, even)
        return Transport(variant, g, GroupId.SPO_2, fwd, fwd.inverse())
    if variant == EVEN_TO_LOWER:
        up = lower_to_even_map(sig, pivot or default_pivot(sig))
        return Transport(variant, g, GroupId.SPO_12, up.inverse(), up)
    raise CliffordError(f"unknown variant {variant!r}")

