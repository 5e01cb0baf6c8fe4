import pytest
from hypothesis import given, settings

from cliffgroups.errors import ScopeError
from cliffgroups.linalg import CanonicalForm, DenseMatrix, omega
from cliffgroups.matrix_rep import (
    IRREDUCIBLE,
    P_SIDE,
    Q_SIDE,
    TWO_BLOCK,
    applicable_lines,
    base_rep,
    block_signs,
    build_rep,
    check_transpose_identities,
    expected_dim,
    extend_pq,
    faithfulness_rank,
    in_scope,
    normal_target,
    normalizable_sides,
    normalize_rep,
    normalized_rep,
    represent,
    rotate_signature,
    shift_four,
    side_form,
    side_mask,
    transpose_law_holds,
)
from cliffgroups.multivector import COMPLEX, Multivector, Signature, hermitian_conjugate
from cliffgroups.scalars import QR2, GaussianRational

from strategies import all_signatures, multivectors

M = DenseMatrix
R2 = QR2(0, 1) / 2

IN_SCOPE_8 = [s for s in all_signatures(8) if in_scope(s)]
IN_SCOPE_6 = [s for s in IN_SCOPE_8 if s.n <= 6]


def test_base_cases():
    assert base_rep(Signature(0, 0)).gammas == ()
    assert base_rep(Signature(0, 0)).dim == 1
    assert base_rep(Signature(1, 0)).gammas == (M.diag([1, -1]),)


def test_cl11_generators():
    rep = extend_pq(base_rep(Signature(0, 0)))
    assert rep.signature == Signature(1, 1)
    assert rep.gammas == (M([[0, 1], [1, 0]]), M([[0, -1], [1, 0]]))


def test_cl22_from_cl11():
    rep = extend_pq(extend_pq(base_rep(Signature(0, 0))))
    assert rep.signature == Signature(2, 2) and rep.dim == 4


def test_cl20_by_rotation():
    rep = rotate_signature(build_rep(Signature(1, 1)))
    assert rep.signature == Signature(2, 0)
    assert rep.gammas == (M([[0, 1], [1, 0]]), M([[-1, 0], [0, 1]]))


def test_cl21_is_two_block():
    rep = build_rep(Signature(2, 1))
    assert rep.block_structure == TWO_BLOCK and rep.dim == 4
    assert rep.gammas[0] == M.diag([1, -1, -1, 1])
    # our block extension negates the last two reference generators
    shown = [
        M([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]),
        M([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
    ]
    assert list(rep.gammas[1:]) == [-g for g in shown]


@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(2, 0), Signature(3, 1), Signature(2, 2), Signature(5, 3)], ids=str)
def test_rotation_twice_returns_signature(sig):
    once = rotate_signature(build_rep(sig))
    assert once.signature == Signature(sig.q + 1, sig.p - 1)
    twice = rotate_signature(once)
    assert twice.signature == sig
    twice.check_relations()


@pytest.mark.parametrize("src, dst", [(Signature(4, 2), Signature(0, 6)), (Signature(8, 0), Signature(4, 4)), (Signature(5, 3), Signature(1, 7))])
def test_shift_four(src, dst):
    before = build_rep(src)
    rep = shift_four(before)
    assert rep.signature == dst and rep.dim == before.dim
    rep.check_relations()


def test_moves_reject_bad_input():
    with pytest.raises(ScopeError):
        rotate_signature(base_rep(Signature(0, 0)))
    with pytest.raises(ScopeError):
        shift_four(build_rep(Signature(1, 1)))


def test_build_rep_examples():
    assert build_rep(Signature(1, 1)).dim == 2
    rep = build_rep(Signature(1, 0))
    assert rep.block_structure == TWO_BLOCK and rep.dim == 2
    with pytest.raises(ScopeError):
        build_rep(Signature(0, 1))


@pytest.mark.parametrize("sig", [s for s in all_signatures(10) if in_scope(s)], ids=str)
def test_build_rep_relations_and_dimension(sig):
    rep = build_rep(sig)
    rep.check_relations()
    assert rep.dim == expected_dim(sig)
    assert rep.block_structure == (TWO_BLOCK if (sig.p - sig.q) % 8 == 1 else IRREDUCIBLE)


@pytest.mark.parametrize("sig", IN_SCOPE_6, ids=str)
def test_faithfulness(sig):
    assert faithfulness_rank(build_rep(sig)) == 2**sig.n


def test_represent_examples():
    rep = build_rep(Signature(1, 1))
    assert represent(Multivector.blade(Signature(1, 1), 0b11), rep) == M([[1, 0], [0, -1]])
    assert represent(Multivector.scalar(Signature(1, 1)), rep).is_identity()


@pytest.mark.parametrize("sig", [s for s in IN_SCOPE_6 if s.n <= 5], ids=str)
def test_represent_is_homomorphism(sig):
    rep = build_rep(sig)

    @settings(max_examples=15, deadline=None)
    @given(multivectors(sig, 4), multivectors(sig, 4))
    def check(U, V):
        assert represent(U * V, rep) == represent(U, rep) @ represent(V, rep)

    check()


def test_normalize_cl11_q_side_is_already_omega():
    rep = build_rep(Signature(1, 1))
    assert rep.gammas[1] == omega(2)
    out = normalize_rep(rep, Q_SIDE)
    assert out.gammas == rep.gammas
    assert out.normal_form.form is CanonicalForm.OMEGA


def test_normalize_cl11_p_side():
    out = normalize_rep(build_rep(Signature(1, 1)), P_SIDE)
    assert out.gammas[0] == M.diag([1, -1])
    assert out.normal_form.form is CanonicalForm.J


def _side_case_table(sig, side):
    """Omega/J from the count on the side: k = 2,3 mod 4 gives +1 squares on the
    p-side and k = 1,2 mod 4 gives -1 squares on the q-side."""
    k = sig.p if side == P_SIDE else sig.q
    omega_residues = (2, 3) if side == P_SIDE else (1, 2)
    return CanonicalForm.OMEGA if k % 4 in omega_residues else CanonicalForm.J


@pytest.mark.parametrize("sig", IN_SCOPE_8, ids=str)
def test_normal_form_all_sides(sig):
    for side in normalizable_sides(sig):
        rep = normalized_rep(sig, side)
        assert transpose_law_holds(rep)
        assert side_form(sig, side) is _side_case_table(sig, side)
        assert rep.blade_matrix(side_mask(sig, side)) == normal_target(sig, side, rep.dim)
        if sig.n % 2:
            h = rep.dim // 2
            assert all(g.is_block_diagonal(h) for g in rep.gammas)
            assert all(s != 0 for s in block_signs(rep))


@pytest.mark.parametrize("sig", IN_SCOPE_8, ids=str)
def test_normalizable_sides(sig):
    sides = normalizable_sides(sig)
    for side, count in ((P_SIDE, sig.p), (Q_SIDE, sig.q)):
        expected = count > 0 and (sig.n % 2 == 0 or count % 2 == 0)
        assert (side in sides) == expected


@pytest.mark.parametrize("sig", IN_SCOPE_6, ids=str)
def test_transpose_identities(sig):
    for side in normalizable_sides(sig) or [None]:
        rep = build_rep(sig) if side is None else normalized_rep(sig, side)
        report = check_transpose_identities(rep)
        assert set(report.lines) == set(applicable_lines(sig))
        assert report.passed and report.blades_checked == 2**sig.n


def test_transpose_identities_cl11_generator():
    rep = build_rep(Signature(1, 1))
    e1 = Multivector.generator(Signature(1, 1), 1)
    assert represent(e1, rep).T == represent(e1, rep)
    assert check_transpose_identities(rep).passed


@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(2, 0), Signature(3, 1), Signature(2, 2)], ids=str)
def test_hermitian_conjugate_is_conjugate_transpose(sig):
    rep = build_rep(sig)
    for m in range(1 << sig.n):
        U = Multivector.blade(sig, m, GaussianRational(1, 2), COMPLEX)
        A = represent(U, rep)
        assert A.conj_transpose() == represent(hermitian_conjugate(U), rep)


def test_normalize_rejects_empty_side():
    with pytest.raises(Exception):
        normalize_rep(build_rep(Signature(2, 0)), Q_SIDE)
