from fractions import Fraction

import pytest

from cliffgroups.classification import GroupId, in_scope_cells
from cliffgroups.errors import CliffordError, ScopeError
from cliffgroups.groups import exact_group_elements, group_involution, group_membership
from cliffgroups.multivector import COMPLEX, I_UNIT, Multivector, Signature, basis_blades
from cliffgroups.transport import (
    EVEN_TO_LOWER,
    I_TWIST,
    NEGATIVE_PIVOT,
    POSITIVE_PIVOT,
    SWAP,
    CarrierDomainError,
    lower_signature,
    lower_to_even_map,
    transport_map,
    twist_map,
)

from strategies import all_signatures

TRANSPORTED = [c for c in in_scope_cells(5) if c[0] in (GroupId.SPO_2I1, GroupId.SPO_2I3, GroupId.SPO_2)]


def _id(cell):
    g, sig = cell
    return f"{g.cli_name}-{sig.p}-{sig.q}"


def test_even_to_lower_example():
    # SpO_2 Cl(2,0) -> SpO_12 Cl(0,1): u e + v e^{12} -> u e + v f^1
    sig = Signature(2, 0)
    t = transport_map(GroupId.SPO_2, sig)
    assert t.target == Signature(0, 1)
    assert t.target_group is GroupId.SPO_12
    u, v = Fraction(3, 5), Fraction(4, 5)
    U = Multivector(sig, {0: u, 0b11: v})
    V = t.apply(U)
    assert V == Multivector(t.target, {0: u, 0b1: v})
    e12 = Multivector.blade(sig, 0b11)
    f1 = Multivector.generator(t.target, 1)
    assert e12 * e12 == -1 * Multivector.scalar(sig, 1)
    assert f1 * f1 == -1 * Multivector.scalar(t.target, 1)
    assert t.apply(group_involution(GroupId.SPO_2, U)) == group_involution(GroupId.SPO_12, V)
    assert t.check([U]) == {"carrier": 0, "homomorphism": 0, "intertwining": 0, "inverse": 0}


@pytest.mark.parametrize("sig", all_signatures(5, 1), ids=str)
def test_twist_generator_relations(sig):
    m = twist_map(sig)
    assert m.target == sig.swapped()
    for a in range(1, sig.n + 1):
        for b in range(1, sig.n + 1):
            ea = m.apply(Multivector.generator(sig, a))
            eb = m.apply(Multivector.generator(sig, b))
            # images of e^a must square like e^a
            expected = 2 * sig.eta(a) if a == b else 0
            assert ea * eb + eb * ea == Multivector.scalar(m.target, expected, COMPLEX)


PIVOTS = [
    (sig, pivot)
    for sig in all_signatures(5, 1)
    for pivot, count in ((NEGATIVE_PIVOT, sig.q), (POSITIVE_PIVOT, sig.p))
    if count > 0
]


@pytest.mark.parametrize("sig,pivot", PIVOTS, ids=lambda x: str(x))
def test_lower_map_generator_relations(sig, pivot):
    lower = lower_signature(sig, pivot)
    m = lower_to_even_map(sig, pivot)
    for a in range(1, lower.n + 1):
        for b in range(1, lower.n + 1):
            ga = m.apply(Multivector.generator(lower, a))
            gb = m.apply(Multivector.generator(lower, b))
            expected = 2 * lower.eta(a) if a == b else 0
            assert ga * gb + gb * ga == Multivector.scalar(sig, expected, COMPLEX)
    # a bijection onto the even blades
    assert sorted(t for _, t in m.table.values()) == sorted(b for b in basis_blades(sig.n) if bin(b).count("1") % 2 == 0)


def test_lower_signature_errors():
    with pytest.raises(ScopeError):
        lower_signature(Signature(3, 0), NEGATIVE_PIVOT)
    with pytest.raises(ScopeError):
        lower_signature(Signature(0, 3), POSITIVE_PIVOT)
    with pytest.raises(CliffordError):
        lower_signature(Signature(1, 1), "sideways")


@pytest.mark.parametrize("cell", TRANSPORTED, ids=_id)
def test_transport_is_exact_isomorphism_on_members(cell):
    g, sig = cell
    t = transport_map(g, sig)
    members = exact_group_elements(g, sig, 4, seed=3)
    assert t.check(members) == {"carrier": 0, "homomorphism": 0, "intertwining": 0, "inverse": 0}
    for U in members:
        assert group_membership(t.target_group, t.apply(U))


@pytest.mark.parametrize("cell", [c for c in TRANSPORTED if c[0] is GroupId.SPO_2], ids=_id)
def test_swap_and_other_pivot(cell):
    g, sig = cell
    members = exact_group_elements(g, sig, 3, seed=8)
    swap = transport_map(g, sig, SWAP)
    assert swap.target == sig.swapped() and swap.target_group is GroupId.SPO_2
    assert max(swap.check(members).values()) == 0
    for pivot in (NEGATIVE_PIVOT, POSITIVE_PIVOT):
        if (pivot == NEGATIVE_PIVOT and sig.q == 0) or (pivot == POSITIVE_PIVOT and sig.p == 0):
            continue
        t = transport_map(g, sig, EVEN_TO_LOWER, pivot)
        assert max(t.check(members).values()) == 0


def test_twist_targets():
    sig = Signature(1, 3)
    t = transport_map(GroupId.SPO_2I1, sig)
    assert (t.variant, t.target_group, t.target) == (I_TWIST, GroupId.SPO_12, Signature(3, 1))
    t = transport_map(GroupId.SPO_2I3, sig)
    assert t.target_group is GroupId.SPO_23


def test_twist_sends_imaginary_vectors_to_real():
    sig = Signature(1, 3)
    t = transport_map(GroupId.SPO_2I1, sig)
    V = t.apply(Multivector.generator(sig, 1, I_UNIT, COMPLEX))
    assert not V.has_imaginary_part()
    assert V.max_abs() == 1


def test_identity_maps_to_identity():
    for g, sig in TRANSPORTED:
        t = transport_map(g, sig)
        one = Multivector.scalar(sig, 1, COMPLEX if g.is_complex else "real")
        assert t.apply(one) == Multivector.scalar(t.target, 1)


def test_variant_errors():
    sig = Signature(1, 3)
    with pytest.raises(CliffordError):
        transport_map(GroupId.SPO_23, sig, I_TWIST)
    with pytest.raises(CliffordError):
        transport_map(GroupId.SPO_23, sig)
    with pytest.raises(CliffordError):
        transport_map(GroupId.SPO_2, sig, "bogus")


def test_swap_rejects_odd_blades():
    sig = Signature(1, 1)
    t = transport_map(GroupId.SPO_2, sig, SWAP)
    with pytest.raises(CarrierDomainError):
        t.apply(Multivector.generator(sig, 1))


def test_inverse_map_roundtrip():
    sig = Signature(2, 3)
    m = twist_map(sig)
    back = m.inverse()
    for mask in basis_blades(sig.n):
        B = Multivector.blade(sig, mask, 1, COMPLEX)
        assert back.apply(m.apply(B)) == B
