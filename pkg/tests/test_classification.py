import pytest

from cliffgroups.classification import (
    GROUP_ORDER,
    ClassicalGroupDescriptor,
    Family,
    GroupId,
    classify_algebra,
    classify_group,
    in_group_scope,
    in_scope_cells,
)
from cliffgroups.errors import ScopeError
from cliffgroups.groups import lie_algebra_dim
from cliffgroups.multivector import Signature

from oracles import oracle
from strategies import all_signatures

O, OMM, SP, GL = Family.O, Family.O_MM, Family.SP, Family.GL

CELLS_10 = in_scope_cells(10)
CELLS_8 = in_scope_cells(8)


def _id(cell):
    g, sig = cell
    return f"{g.cli_name}-{sig.p}-{sig.q}"


def test_examples():
    d = classify_group(GroupId.SPO_2I1, Signature(1, 3))
    assert d.shape() == (SP, 2, 1)
    assert str(d) == "Sp(2,ℝ)"
    assert d.matrix_size == 4
    assert str(classify_group(GroupId.SPO_23, Signature(2, 0))) == "O(2)"
    with pytest.raises(ScopeError, match="mod 8"):
        classify_group(GroupId.SPO_23, Signature(0, 1))


def test_algebra_examples():
    a = classify_algebra(GroupId.SPO_2I1, Signature(1, 3))
    assert str(a) == "sp(2,ℝ)" and a.lie_dim == 10
    a = classify_algebra(GroupId.SPO_23, Signature(2, 0))
    assert str(a) == "o(2)" and a.lie_dim == 1
    a = classify_algebra(GroupId.SPO_23, Signature(3, 3))
    assert str(a) == "sp(4,ℝ)" and a.lie_dim == 36


def test_descriptor_names_and_dims():
    assert str(ClassicalGroupDescriptor(OMM, 8, 2)) == "O(8,8)⊕O(8,8)"
    assert str(ClassicalGroupDescriptor(GL, 4, 1, algebra=True)) == "gl(4,ℝ)"
    assert ClassicalGroupDescriptor(O, 4).lie_dim == 6
    assert ClassicalGroupDescriptor(OMM, 2).lie_dim == 6
    assert ClassicalGroupDescriptor(SP, 2).lie_dim == 10
    assert ClassicalGroupDescriptor(GL, 2, 2).lie_dim == 8
    assert ClassicalGroupDescriptor(OMM, 2).matrix_size == 4


@pytest.mark.parametrize("text", ["spo2i1", "SpO_2i1", "SPO2I1"])
def test_group_parse(text):
    assert GroupId.parse(text) is GroupId.SPO_2I1


def test_group_parse_rejects():
    with pytest.raises(ValueError):
        GroupId.parse("spo99")


@pytest.mark.parametrize("cell", CELLS_10, ids=_id)
def test_group_table_matches_oracle(cell):
    g, sig = cell
    assert classify_group(g, sig).shape() == oracle(g, sig)


@pytest.mark.parametrize("cell", CELLS_10, ids=_id)
def test_algebra_table_agrees_with_group_table(cell):
    g, sig = cell
    a = classify_algebra(g, sig)
    assert a.algebra
    assert a.shape() == classify_group(g, sig).shape()


@pytest.mark.parametrize("cell", CELLS_8, ids=_id)
def test_dimension_law(cell):
    g, sig = cell
    assert lie_algebra_dim(g, sig) == classify_algebra(g, sig).lie_dim


@pytest.mark.parametrize("g", GROUP_ORDER, ids=lambda g: g.cli_name)
def test_out_of_scope_raises(g):
    for sig in all_signatures(8, 1):
        if not in_group_scope(g, sig):
            with pytest.raises(ScopeError):
                classify_group(g, sig)
            with pytest.raises(ScopeError):
                classify_algebra(g, sig)


def test_cells_sorted_and_complete():
    cells = in_scope_cells(4)
    order = {g: i for i, g in enumerate(GROUP_ORDER)}
    keys = [(order[g], s.p, s.q) for g, s in cells]
    assert keys == sorted(keys)
    expected = {(g, s) for g in GROUP_ORDER for s in all_signatures(4, 1) if in_group_scope(g, s)}
    assert set(cells) == expected
    assert len(in_scope_cells(1)) == 6
