"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal."""

import contextlib
import io
import json
from itertools import product

import numpy as np
import pytest

from cliffgroups.classification import GROUP_ORDER, Family, GroupId, classify_group
from cliffgroups.cli import main, parse_rep_dump
from cliffgroups.groups import lie_algebra_basis, lie_algebra_dim, spin_membership
from cliffgroups.matrix_rep import (
    TWO_BLOCK,
    block_signs,
    build_rep,
    check_transpose_identities,
    faithfulness_rank,
    normalizable_sides,
    normalized_rep,
    represent,
    side_mask,
    transpose_law_holds,
)
from cliffgroups.multivector import (
    Multivector,
    Signature,
    anticommutator,
    basis_blades,
    commutator,
    grade,
    reversion,
)
from cliffgroups.witness import isomorphism_witness, real_target, sample_group_elements, witness_plan

from oracles import CL11, CL20, CL21, CL21_NEGATED, anticommutator_type, commutator_type, oracle, side_form_table
from strategies import all_signatures

SCOPE = {"SpO_23": (0, 1, 2), "SpO_12": (0, 1, 2), "SpO_2i1": (0, 6, 7), "SpO_2i3": (0, 6, 7), "SpO_2": (0, 1, 7)}


def _cells(max_n):
    return [
        (g, s) for g in GROUP_ORDER for s in all_signatures(max_n, 1) if (s.p - s.q) % 8 in SCOPE[g.value]
    ]


def _rep_scope(max_n):
    return [s for s in all_signatures(max_n) if (s.p - s.q) % 8 in (0, 1, 2)]


def _classical_dim(family: str, m: int, mult: int) -> int:
    per = {"O": m * (m - 1) // 2, "O(m,m)": m * (2 * m - 1), "Sp": m * (2 * m + 1), "GL": m * m}[family]
    return mult * per


def _report(capsys, k: int, title: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {title} [{detail}]")
    assert ok, detail


def _cli(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def _omega(d):
    h = d // 2
    return np.block([[np.zeros((h, h)), -np.eye(h)], [np.eye(h), np.zeros((h, h))]])


def _j(d):
    h = d // 2
    return np.diag([1.0] * h + [-1.0] * h)


def test_1_table_reproduction(capsys):
    code, out = _cli("table", "--max-n", "8", "--format", "json")
    rows = json.loads(out)["rows"]
    bad = []
    want = {(g.value, s.p, s.q): (g, s) for g, s in _cells(8)}
    got = {(r["group"], r["p"], r["q"]): r for r in rows}
    if set(got) != set(want):
        bad.append("row set differs from scope arithmetic")
    for key, r in got.items():
        g, s = want.get(key, (None, None))
        if g is None:
            continue
        fam, m, mult = oracle(g, s)
        if (r["family"], r["m"], r["multiplicity"]) != (fam.value, m, mult):
            bad.append(f"{key} group row")
        factor = r["descriptor"].split("⊕")[0]
        head, rest = factor.split("(", 1)
        if r["algebra"] != "⊕".join([f"{head.lower()}({rest}"] * mult):
            bad.append(f"{key} algebra row")
        if r["lie_dim"] != _classical_dim(fam.value, m, mult):
            bad.append(f"{key} dimension")
    _report(capsys, 1, "group and Lie algebra tables, n <= 8", code == 0 and not bad, f"{len(rows)} rows, {len(bad)} mismatches")


def test_2_sp2_on_cl13(capsys):
    g, sig = GroupId.SPO_2I1, Signature(1, 3)
    d = classify_group(g, sig)
    route, tg, tsig = real_target(g, sig)
    plan = witness_plan(tg, tsig)
    members = sample_group_elements(g, sig, 100, seed=42)
    Om = _omega(4)
    same_form = np.array_equal(plan.G.to_numpy(), Om)
    worst = 0.0
    for U in members:
        A = represent(route.apply(U), plan.rep)
        worst = max(worst, float(np.max(np.abs(A.T @ Om @ A - Om))))
    ok = str(d) == "Sp(2,ℝ)" and d.matrix_size == 4 and plan.rep.dim == 4 and same_form and worst < 1e-9
    _report(capsys, 2, "SpO_2i1 Cl(1,3) = Sp(2,R), A^T Omega A = Omega", ok, f"100 samples, max residual {worst:.2e}")


def test_3_normal_forms(capsys):
    bad, count = [], 0
    for sig in _rep_scope(8):
        for side in normalizable_sides(sig):
            count += 1
            rep = normalized_rep(sig, side)
            gam = [g.to_numpy() for g in rep.gammas]
            if not transpose_law_holds(rep) or any(
                not np.array_equal(g.T, sig.eta(a) * g) for a, g in enumerate(gam, start=1)
            ):
                bad.append(f"{sig} {side} transpose")
            N = rep.blade_matrix(side_mask(sig, side)).to_numpy()
            form = side_form_table(sig, side)
            if sig.n % 2 == 0:
                target = _omega(rep.dim) if form == "omega" else _j(rep.dim)
            else:
                h = rep.dim // 2
                blk = _omega(h) if form == "omega" else _j(h)
                target = np.block([[blk, np.zeros((h, h))], [np.zeros((h, h)), blk]])
                if rep.block_structure != TWO_BLOCK or any(s != -1 for s in block_signs(rep)):
                    bad.append(f"{sig} {side} blocks")
            if not np.array_equal(N, target):
                bad.append(f"{sig} {side} side product")
    _report(capsys, 3, "normalised representation, n <= 8", not bad, f"{count} (signature, side) pairs, failures {bad[:3]}")


def test_4_transpose_identities(capsys):
    bad, blades = [], 0
    for sig in _rep_scope(6):
        for side in normalizable_sides(sig) or [None]:
            rep = build_rep(sig) if side is None else normalized_rep(sig, side)
            r = check_transpose_identities(rep)
            blades += r.blades_checked
            if not r.passed or r.blades_checked != 2**sig.n:
                bad.append(f"{sig} {side}")
    _report(capsys, 4, "transpose identities, every blade, n <= 6", not bad, f"{blades} blade checks, failures {bad}")


def test_5_quaternion_types(capsys):
    pairs, bad = 0, 0
    for sig in all_signatures(6):
        blades = basis_blades(sig.n)
        for a, b in product(blades, repeat=2):
            x, y = Multivector.blade(sig, a), Multivector.blade(sig, b)
            ka, kb = grade(a) % 4, grade(b) % 4
            pairs += 1
            for value, t in ((commutator(x, y), commutator_type(ka, kb)), (anticommutator(x, y), anticommutator_type(ka, kb))):
                if any(grade(m) % 4 != t for m, _ in value.items()):
                    bad += 1
    _report(capsys, 5, "quaternion-type commutator tables, n <= 6", bad == 0, f"{pairs} blade pairs, {bad} violations")


def test_6_dimension_law(capsys):
    bad = []
    cells = _cells(8)
    for g, sig in cells:
        fam, m, mult = oracle(g, sig)
        if lie_algebra_dim(g, sig) != _classical_dim(fam.value, m, mult):
            bad.append((g.value, sig.p, sig.q))
    ex = lie_algebra_dim(GroupId.SPO_2I1, Signature(1, 3))
    _report(capsys, 6, "Lie algebra dimension law, n <= 8", not bad and ex == 10, f"{len(cells)} cells, (1,3) SpO_2i1 dim {ex}")


def test_7_faithfulness(capsys):
    bad = [str(s) for s in _rep_scope(6) if faithfulness_rank(build_rep(s)) != 2**s.n]
    _report(capsys, 7, "faithful representation, n <= 6", not bad, f"{len(_rep_scope(6))} signatures, failures {bad}")


def test_8_reference_matrices(capsys):
    results = {}
    for (p, q), shown in (((1, 1), CL11), ((2, 0), CL20), ((2, 1), CL21)):
        code, out = _cli("rep-dump", "-p", str(p), "-q", str(q))
        _, mats = parse_rep_dump(out)
        got = [[[int(x) for x in row] for row in m.rows] for m in mats]
        if (p, q) == (2, 1):
            shown = [
                [[-x for x in row] for row in g] if a in CL21_NEGATED else g
                for a, g in enumerate(shown, start=1)
            ]
        results[(p, q)] = code == 0 and got == shown
    _report(capsys, 8, "rep-dump of Cl(1,1), Cl(2,0), Cl(2,1)", all(results.values()), f"{results}")


def _spin_residual(U: Multivector) -> float:
    R = reversion(U)
    worst = (R * U - 1).max_abs()
    worst = max(worst, U.filter(lambda m: grade(m) % 2 == 1).max_abs())
    for a in range(1, U.sig.n + 1):
        image = U * Multivector.generator(U.sig, a) * R
        worst = max(worst, image.filter(lambda m: grade(m) != 1).max_abs())
    return worst


def test_9_spin_suite(capsys):
    bad, worst, count = [], 0.0, 0
    for sig in all_signatures(5, 1):
        grade2 = {m for m in basis_blades(sig.n) if grade(m) == 2}
        if {m for m, _ in lie_algebra_basis(GroupId.SPO_2, sig).basis} != grade2:
            bad.append(f"{sig} algebra")
        for U in sample_group_elements(GroupId.SPO_2, sig, 100, seed=sig.n * 100 + sig.p, fallback=True):
            count += 1
            worst = max(worst, _spin_residual(U))
            if not spin_membership(U, mode="float", tol=1e-9):
                bad.append(f"{sig} sample")
    _report(capsys, 9, "SpO_2 samples lie in Spin+, n <= 5", not bad, f"{count} samples, max residual {worst:.2e}, failures {bad[:3]}")


@pytest.mark.parametrize("cell", _cells(8), ids=lambda c: f"{c[0].cli_name}-{c[1].p}-{c[1].q}")
def test_witness_sweep(cell):
    # sampled witnesses behind criteria 1 and 6, every cell with n <= 8
    g, sig = cell
    report = isomorphism_witness(g, sig, samples=5, seed=11, exact_samples=1)
    assert report.passed, report.failing()
