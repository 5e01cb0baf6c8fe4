"""Sampled and exact witnesses that an SpO group is the classical group its
table row names.

Complex and even groups are first carried onto a real group by a transport
map; the real group is then realised inside the normalised matrix
representation, where its defining equation becomes ``A^T G A = G`` for the
side product ``G`` (or a two-block variant of it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .classification import (
    ClassicalGroupDescriptor,
    Family,
    GroupId,
    classify_algebra,
    classify_group,
    in_group_scope,
)
from .errors import CliffordError, ScopeError
from .groups import (
    exact_group_elements,
    lie_algebra_basis,
    membership_residual,
)
from .linalg import CanonicalForm, DenseMatrix, mat_exp
from .matrix_rep import (
    P_SIDE,
    Q_SIDE,
    Representation,
    block_signs,
    build_rep,
    in_scope,
    normal_target,
    normalized_rep,
    represent,
    side_form,
)
from .multivector import (
    COMPLEX,
    REAL,
    Multivector,
    Signature,
    _blade_product,
    even_part,
    grade_involution,
    odd_part,
)
from .transport import Transport, transport_map

GL_DET_THRESHOLD = 1e-9


# -- matrix models ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixModel:
    """Float images of all basis blades, for exponentiation and trace-pairing
    reconstruction."""

    sig: Signature
    masks: tuple[int, ...]
    stack: np.ndarray
    square_signs: np.ndarray

    @property
    def dim(self) -> int:
        return self.stack.shape[1]

    def matrix(self, U: Multivector) -> np.ndarray:
        dtype = complex if U.field == COMPLEX else float
        out = np.zeros((self.dim, self.dim), dtype=dtype)
        for mask, c in U.items():
            out += complex(c) * self.stack[mask] if dtype is complex else float(c) * self.stack[mask]
        return out

    def element(self, A: np.ndarray, chop: float = 1e-14) -> Multivector:
        """Invert ``matrix`` using ``u_B = tr(rep(B)^{-1} A) / dim``."""
        coeffs = np.einsum("bij,ji->b", self.stack, A) * self.square_signs / self.dim
        cut = chop * max(1.0, float(np.max(np.abs(coeffs))))
        complex_ = np.iscomplexobj(coeffs)
        terms = {}
        for mask, c in zip(self.masks, coeffs):
            if complex_:
                c = complex(c.real if abs(c.real) > cut else 0.0, c.imag if abs(c.imag) > cut else 0.0)
                if c.imag == 0:
                    c = c.real
            elif abs(c) <= cut:
                continue
            terms[mask] = c if complex_ else float(c)
        field = COMPLEX if complex_ and any(isinstance(c, complex) for c in terms.values()) else REAL
        return Multivector(self.sig, terms, field)


def _signs(sig: Signature) -> np.ndarray:
    neg = sig.negative_mask
    return np.array([_blade_product(m, m, neg)[0] for m in range(1 << sig.n)], dtype=float)


@lru_cache(maxsize=None)
def representation_model(sig: Signature) -> MatrixModel:
    rep = build_rep(sig)
    masks = tuple(range(1 << sig.n))
    stack = np.stack([rep.blade_array(m) for m in masks])
    return MatrixModel(sig, masks, stack, _signs(sig))


@lru_cache(maxsize=None)
def regular_model(sig: Signature) -> MatrixModel:
    """Left-regular representation on the ``2^n`` blades; works for every signature."""
    masks = tuple(range(1 << sig.n))
    size = len(masks)
    neg = sig.negative_mask
    stack = np.zeros((size, size, size))
    for b in masks:
        for c in masks:
            sign, m = _blade_product(b, c, neg)
            stack[b, m, c] = sign
    return MatrixModel(sig, masks, stack, _signs(sig))


# -- sampling ---------------------------------------------------------------------------

def sampling_route(g: GroupId, sig: Signature) -> Transport | None:
    """The transport used before exponentiating, or ``None`` for real groups."""
    if g.is_complex or g is GroupId.SPO_2:
        return transport_map(g, sig)
    return None


def _draw(space, rng, scale: float) -> Multivector:
    coeffs = rng.uniform(-scale, scale, size=space.dim) if scale else np.zeros(space.dim)
    return space.combine([float(c) for c in coeffs])


def sample_group_elements(
    g: GroupId,
    sig: Signature,
    count: int,
    seed: int = 0,
    scale: float = 1.0,
    fallback: bool = False,
) -> list[Multivector]:
    """``exp(X)`` for ``count`` Lie algebra elements ``X`` with coefficients
    uniform in ``[-scale, scale]``.

    Inside the classification scope the exponential is taken in the real
    representation reached by :func:`sampling_route`.  Outside it a
    ``fallback=True`` call uses the left-regular representation instead.
    """
    space = lie_algebra_basis(g, sig)
    rng = np.random.default_rng(seed)
    if in_group_scope(g, sig):
        route = sampling_route(g, sig)
        model = representation_model(route.target if route else sig)
    elif fallback:
        route, model = None, regular_model(sig)
    else:
        raise ScopeError(f"{g.value} is not classified over {sig}")
    out = []
    for _ in range(count):
        X = _draw(space, rng, scale)
        if route is not None:
            X = route.apply(X)
        U = model.element(mat_exp(model.matrix(X)))
        if route is not None:
            U = route.pull_back(U)
        elif g.is_complex:
            U = U.as_complex()
        out.append(U)
    return out


def sample_group_element(
    g: GroupId, sig: Signature, seed: int = 0, scale: float = 1.0, fallback: bool = False
) -> Multivector:
    return sample_group_elements(g, sig, 1, seed, scale, fallback)[0]


# -- witness plans ----------------------------------------------------------------------

FORM = "form"
GL_PAIR = "gl"


@dataclass(frozen=True, eq=False)
class WitnessPlan:
    """How the defining equation of a real group reads in matrices.

    ``form``: ``A^T G A = G`` on the whole matrix.  ``gl``: with ``P`` and
    ``Q`` the first diagonal blocks of ``rep(U)`` and ``rep(U^λ)``,
    ``Q^T G P = G`` and ``U -> P`` is onto ``GL``.
    """

    group: GroupId
    signature: Signature
    kind: str
    side: str | None
    rep: Representation
    G: DenseMatrix
    two_block: bool

    @property
    def block_size(self) -> int:
        return self.rep.dim // 2 if self.two_block else self.rep.dim

    def descriptor(self) -> ClassicalGroupDescriptor:
        s = self.block_size
        if self.kind == GL_PAIR:
            return ClassicalGroupDescriptor(Family.GL, s, 1)
        mult = 2 if self.two_block else 1
        if self.side is None:
            return ClassicalGroupDescriptor(Family.O, s, mult)
        form = side_form(self.signature, self.side)
        family = Family.SP if form is CanonicalForm.OMEGA else Family.O_MM
        return ClassicalGroupDescriptor(family, s // 2, mult)

    def block_form(self) -> DenseMatrix:
        s = self.block_size
        return self.G.block(0, 0, s) if self.G.dim != s else self.G


def witness_plan(g: GroupId, sig: Signature) -> WitnessPlan:
    """Pick the side whose transpose rule turns the involution of ``g`` into
    a matrix transpose (SpO_23 or SpO_12 over an in-scope signature)."""
    if g not in (GroupId.SPO_23, GroupId.SPO_12):
        raise CliffordError(f"matrix witnesses are built for real groups, not {g.value}")
    if not in_scope(sig):
        raise ScopeError(f"{sig} has no real matrix representation here")
    p, q, n = sig.p, sig.q, sig.n
    odd = n % 2 == 1
    # generator transpose signs alone realise the involution
    definite = q == 0 if g is GroupId.SPO_23 else p == 0
    if definite:
        return _plan(g, sig, FORM, None, odd)
    # the p-rule realises reversion for odd p, the q-rule for even q
    reversion_side = P_SIDE if p % 2 == 1 else Q_SIDE
    if g is GroupId.SPO_23:
        if not odd:
            return _plan(g, sig, FORM, reversion_side, False)
        if p % 2 == 1:
            return _plan(g, sig, FORM, Q_SIDE, True)
        if p == 0:
            return _plan(g, sig, GL_PAIR, None, True)
        return _plan(g, sig, GL_PAIR, P_SIDE, True)
    twisted_side = Q_SIDE if reversion_side == P_SIDE else P_SIDE
    if not odd:
        return _plan(g, sig, FORM, twisted_side, False)
    if p % 2 == 0:
        return _plan(g, sig, FORM, P_SIDE, True)
    if q == 0:
        return _plan(g, sig, GL_PAIR, None, True)
    return _plan(g, sig, GL_PAIR, Q_SIDE, True)


def _plan(g, sig, kind, side, two_block) -> WitnessPlan:
    if side is None:
        rep = build_rep(sig)
        G = DenseMatrix.identity(rep.dim)
    else:
        rep = normalized_rep(sig, side)
        G = normal_target(sig, side, rep.dim)
    return WitnessPlan(g, sig, kind, side, rep, G, two_block)


def relation_residual(plan: WitnessPlan, U: Multivector) -> float:
    """Float residual of the plan's matrix equation at ``U``, relative to
    ``max(1, max|A|)^2`` since rounding error in ``A^T G A`` grows with ``|A|^2``."""
    A = _float_matrix(plan.rep, U)
    if plan.kind == FORM:
        G = plan.G.to_numpy()
        err = np.max(np.abs(A.T @ G @ A - G))
        return float(err / max(1.0, np.max(np.abs(A))) ** 2)
    s = plan.block_size
    G = plan.block_form().to_numpy()
    P = A[:s, :s]
    Q = _float_matrix(plan.rep, grade_involution(U))[:s, :s]
    err = np.max(np.abs(Q.T @ G @ P - G))
    return float(err / max(1.0, np.max(np.abs(P)), np.max(np.abs(Q))) ** 2)


def exact_relation_holds(plan: WitnessPlan, U: Multivector) -> bool:
    A = represent(U, plan.rep)
    if plan.kind == FORM:
        return A.T @ plan.G @ A == plan.G
    s = plan.block_size
    P = A.block(0, 0, s)
    Q = represent(grade_involution(U), plan.rep).block(0, 0, s)
    G = plan.block_form()
    return Q.T @ G @ P == G


def _float_matrix(rep: Representation, U: Multivector) -> np.ndarray:
    return represent(U.to_float(), rep) if U.is_exact() else represent(U, rep)


def off_block_size(plan: WitnessPlan, U: Multivector) -> float:
    s = plan.rep.dim // 2
    A = _float_matrix(plan.rep, U)
    return float(max(np.max(np.abs(A[:s, s:])), np.max(np.abs(A[s:, :s]))))


def gl_blocks(plan: WitnessPlan, U: Multivector) -> tuple[np.ndarray, np.ndarray]:
    """First-block images ``A`` of the even part and ``B`` of the odd part."""
    s = plan.block_size
    A = _float_matrix(plan.rep, even_part(U))[:s, :s]
    B = _float_matrix(plan.rep, odd_part(U))[:s, :s]
    return A, B


# -- reports -------------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    residual: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "residual": self.residual, "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CellReport:
    group: GroupId
    signature: Signature
    descriptor: ClassicalGroupDescriptor
    lie_dim: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, residual: float, passed: bool, note: str = "") -> None:
        self.checks.append(Check(name, float(residual), bool(passed), note))

    def add_residual(self, name: str, residual: float, tol: float, note: str = "") -> None:
        self.add(name, residual, residual <= tol, note)

    def to_dict(self) -> dict:
        return {
            "group": self.group.value,
            "p": self.signature.p,
            "q": self.signature.q,
            "descriptor": str(self.descriptor),
            "lie_dim": self.lie_dim,
            "checks": [c.to_dict() for c in self.checks],
        }


def real_target(g: GroupId, sig: Signature) -> tuple[Transport | None, GroupId, Signature]:
    route = sampling_route(g, sig)
    if route is None:
        return None, g, sig
    return route, route.target_group, route.target


def isomorphism_witness(
    g: GroupId,
    sig: Signature,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
    scale: float = 1.0,
    exact_samples: int = 0,
) -> CellReport:
    """Check the classical-group identification of ``g`` over ``sig``.

    Algebra-level checks are exact.  ``samples`` sampled members are carried
    to matrices and tested against the descriptor's defining relation;
    ``exact_samples`` exact members are tested with zero tolerance.
    """
    descriptor = classify_group(g, sig)
    space = lie_algebra_basis(g, sig)
    report = CellReport(g, sig, descriptor, space.dim)

    failures = space.closure_failures()
    report.add("lie-closure", len(failures), not failures, "basis pairs leaving the span")
    algebra = classify_algebra(g, sig)
    report.add("dimension-law", abs(space.dim - algebra.lie_dim), space.dim == algebra.lie_dim)
    report.add("algebra-table", 0 if algebra.shape() == descriptor.shape() else 1, algebra.shape() == descriptor.shape())

    route, tg, tsig = real_target(g, sig)
    plan = witness_plan(tg, tsig)
    planned = plan.descriptor()
    report.add(
        "witness-shape",
        0 if planned.shape() == descriptor.shape() else 1,
        planned.shape() == descriptor.shape(),
        f"matrix relation realises {planned}",
    )

    one = Multivector.scalar(tsig, 1)
    report.add("identity", 0 if exact_relation_holds(plan, one) else 1, exact_relation_holds(plan, one))

    if exact_samples:
        exact = exact_group_elements(g, sig, exact_samples, seed)
        images = [route.apply(U) if route else U for U in exact]
        if route:
            worst = max(route.check(exact).values())
            report.add("exact-transport", worst, worst == 0)
        ok = all(exact_relation_holds(plan, V) for V in images)
        report.add("exact-relation", 0 if ok else 1, ok, f"{exact_samples} exact members")

    if samples:
        members = sample_group_elements(g, sig, samples, seed, scale)
        images = [route.apply(U) for U in members] if route else members
        report.add_residual(
            "membership",
            max(membership_residual(g, U).max_abs() / max(1.0, U.max_abs()) ** 2 for U in members),
            tol,
            "relative to max(1, max|u|)^2",
        )
        if route:
            worst = max(route.check(members).values())
            report.add_residual("transport", worst, tol, "carrier, product, involution, inverse")
        report.add_residual(
            "classical-relation",
            max(relation_residual(plan, V) for V in images),
            tol,
            f"{plan.kind}, relative to max(1, max|A|)^2",
        )
        if plan.two_block:
            report.add_residual("block-diagonal", max(off_block_size(plan, V) for V in images), tol)
        if plan.kind == GL_PAIR:
            _gl_checks(report, plan, images, tol)
    return report


def _gl_checks(report: CellReport, plan: WitnessPlan, images, tol: float) -> None:
    dets = []
    for V in images:
        A, B = gl_blocks(plan, V)
        dets.append(min(abs(np.linalg.det(A + B)), abs(np.linalg.det(A - B))))
    smallest = min(dets)
    report.add("gl-invertible", smallest, smallest > GL_DET_THRESHOLD, "min |det(A±B)|")
    if all(s == -1 for s in block_signs(plan.rep)):
        worst = 0.0
        for V in images:
            A, B = gl_blocks(plan, V)
            M = _float_matrix(plan.rep, V)
            expected = np.block([[A + B, np.zeros_like(A)], [np.zeros_like(A), A - B]])
            worst = max(worst, float(np.max(np.abs(M - expected))))
        report.add_residual("gl-decomposition", worst, tol, "rep(U) = diag(A,A) + diag(B,-B)")

