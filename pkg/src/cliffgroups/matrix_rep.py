"""Faithful real matrix representations of Cl(p, q) for p - q = 0, 1, 2 (mod 8).

Representations are grown from Cl(0,0) and Cl(1,0) with four moves:

* :func:`extend_pq`      Cl(p, q)  -> Cl(p+1, q+1)
* :func:`rotate_signature` Cl(p, q) -> Cl(q+1, p-1)
* :func:`shift_four`     Cl(p, q)  -> Cl(p-4, q+4)

and :func:`build_rep` plans a path to any in-scope signature.  All
generator matrices produced this way are signed permutations with
``(g^a)^T = eta^{aa} g^a``; :func:`normalize_rep` then conjugates by an exact
orthogonal matrix so that one half of the pseudoscalar becomes Omega or J.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CliffordError, RelationError, ScopeError, SignatureMismatch
from .linalg import CanonicalForm, DenseMatrix, canonical_matrix, involution_diagonalizer, rank
from .multivector import (
    Multivector,
    Signature,
    basis_blades,
    blade_product,
    hermitian_conjugate,
)

IRREDUCIBLE = "irreducible"
TWO_BLOCK = "two-block"

P_SIDE = "p"
Q_SIDE = "q"


@dataclass(frozen=True)
class NormalForm:
    side: str
    form: CanonicalForm


@dataclass(frozen=True, eq=False)
class Representation:
    signature: Signature
    gammas: tuple[DenseMatrix, ...]
    dim: int
    block_structure: str
    normal_form: NormalForm | None = None
    log: tuple[str, ...] = ()
    _blades: dict = field(default_factory=dict, repr=False, compare=False)
    _float: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.signature.n

    def identity(self) -> DenseMatrix:
        return DenseMatrix.identity(self.dim)

    def blade_matrix(self, mask: int) -> DenseMatrix:
        """Product of the generator matrices named by ``mask`` (ascending)."""
        cache = self._blades
        if mask in cache:
            return cache[mask]
        if mask == 0:
            out = self.identity()
        else:
            low = mask & -mask
            a = low.bit_length() - 1
            out = self.gammas[a] @ self.blade_matrix(mask ^ low)
        cache[mask] = out
        return out

    def blade_array(self, mask: int) -> np.ndarray:
        """Float image of a blade, multiplied out in floating point."""
        cache = self._float
        if mask in cache:
            return cache[mask]
        if mask == 0:
            out = np.eye(self.dim)
        else:
            low = mask & -mask
            a = low.bit_length() - 1
            if low not in cache:
                cache[low] = self.gammas[a].to_numpy()
            out = cache[low] if mask == low else cache[low] @ self.blade_array(mask ^ low)
        cache[mask] = out
        return out

    def check_relations(self) -> None:
        """Raise :class:`RelationError` unless ``g^a g^b + g^b g^a = 2 eta^{ab}``."""
        sig = self.signature
        if len(self.gammas) != sig.n:
            raise RelationError(f"{len(self.gammas)} generators for {sig}")
        one = self.identity()
        for a, ga in enumerate(self.gammas, start=1):
            if ga @ ga != one * sig.eta(a):
                raise RelationError(f"generator {a} of {sig} does not square to {sig.eta(a):+d}")
            for b in range(a + 1, sig.n + 1):
                gb = self.gammas[b - 1]
                if ga @ gb != -(gb @ ga):
                    raise RelationError(f"generators {a},{b} of {sig} do not anticommute")
        if self.block_structure == TWO_BLOCK:
            half = self.dim // 2
            for g in self.gammas:
                if not g.is_block_diagonal(half):
                    raise RelationError("two-block representation with off-block entries")


def in_scope(sig: Signature) -> bool:
    return (sig.p - sig.q) % 8 in (0, 1, 2)


def expected_dim(sig: Signature) -> int:
    t = (sig.p - sig.q) % 8
    if t in (0, 2):
        return 2 ** (sig.n // 2)
    if t == 1:
        return 2 * 2 ** ((sig.n - 1) // 2)
    raise ScopeError(f"{sig}: p - q = {sig.p - sig.q} is not 0, 1 or 2 mod 8")


def _block_diag_pm(M: DenseMatrix) -> DenseMatrix:
    return DenseMatrix.block_diag(M, -M)


def _finish(sig, gammas, block, log) -> Representation:
    dim = gammas[0].dim if gammas else 1
    rep = Representation(sig, tuple(gammas), dim, block, None, tuple(log))
    rep.check_relations()
    return rep


def _stable_order(pairs: Sequence[tuple[int, DenseMatrix]]) -> list[DenseMatrix]:
    """Put +1-square generators before -1-square ones, keeping relative order."""
    return [m for s, m in pairs if s > 0] + [m for s, m in pairs if s < 0]


def base_rep(which) -> Representation:
    """Representation of Cl(0,0) (``e -> 1``) or Cl(1,0) (``e^1 -> diag(1,-1)``)."""
    sig = which if isinstance(which, Signature) else Signature(*which)
    if sig == Signature(0, 0):
        return _finish(sig, [], IRREDUCIBLE, ["base Cl(0,0)"])
    if sig == Signature(1, 0):
        return _finish(sig, [DenseMatrix.diag([1, -1])], TWO_BLOCK, ["base Cl(1,0)"])
    raise ScopeError(f"no base representation for {sig}")


def extend_pq(rep: Representation) -> Representation:
    sig = rep.signature
    p, q = sig.p, sig.q
    d = rep.dim
    one = DenseMatrix.identity(d)
    zero = DenseMatrix.zeros(d)
    old = [_block_diag_pm(g) for g in rep.gammas]
    log = list(rep.log)
    if (p - q) % 4 != 1:
        plus = DenseMatrix.from_blocks([[zero, one], [one, zero]])
        minus = DenseMatrix.from_blocks([[zero, -one], [one, zero]])
        block = rep.block_structure if rep.block_structure == IRREDUCIBLE else IRREDUCIBLE
        log.append(f"extend {sig} -> Cl({p + 1},{q + 1}) [off-diagonal pair]")
    else:
        if rep.block_structure != TWO_BLOCK or d % 2:
            raise CliffordError("block extension needs a two-block input")
        h = d // 2
        ih, zh = DenseMatrix.identity(h), DenseMatrix.zeros(h)
        star = DenseMatrix.from_blocks([[zh, -ih], [ih, zh]])
        P = rep.blade_matrix(sig.pseudoscalar_mask)
        plus = _block_diag_pm(P @ star)
        minus = _block_diag_pm(star)
        block = TWO_BLOCK
        log.append(f"extend {sig} -> Cl({p + 1},{q + 1}) [block pair]")
    gammas = old[:p] + [plus] + old[p:] + [minus]
    return _finish(Signature(p + 1, q + 1), gammas, block, log)


def rotate_signature(rep: Representation) -> Representation:
    sig = rep.signature
    if sig.p < 1:
        raise ScopeError(f"rotate_signature needs p >= 1, got {sig}")
    b = rep.gammas
    first = b[0]
    pairs = [(1, first)]
    for i in range(1, sig.n):
        # (b^i b^1)^2 = -eta^{ii}
        pairs.append((-sig.eta(i + 1), b[i] @ first))
    new = Signature(sig.q + 1, sig.p - 1)
    log = list(rep.log) + [f"rotate {sig} -> {new}"]
    return _finish(new, _stable_order(pairs), rep.block_structure, log)


def shift_four(rep: Representation) -> Representation:
    sig = rep.signature
    if sig.p < 4:
        raise ScopeError(f"shift_four needs p >= 4, got {sig}")
    b = rep.gammas
    Q = b[0] @ b[1] @ b[2] @ b[3]
    pairs = [(-1, b[i] @ Q) for i in range(4)]
    pairs += [(sig.eta(j + 1), b[j]) for j in range(4, sig.n)]
    new = Signature(sig.p - 4, sig.q + 4)
    log = list(rep.log) + [f"shift {sig} -> {new}"]
    return _finish(new, _stable_order(pairs), rep.block_structure, log)


@lru_cache(maxsize=None)
def build_rep(sig: Signature) -> Representation:
    """Raw (unnormalised) representation of an in-scope signature."""
    if not in_scope(sig):
        raise ScopeError(f"{sig}: p - q = {sig.p - sig.q} is not 0, 1 or 2 mod 8")
    t = sig.p - sig.q
    d = t % 8
    if t > 2:
        rep = rotate_signature(build_rep(Signature(sig.q + 1, sig.p - 1)))
    else:
        m = (d - t) // 8
        if d == 0:
            rep = base_rep(Signature(0, 0))
        elif d == 1:
            rep = base_rep(Signature(1, 0))
        else:
            rep = rotate_signature(extend_pq(base_rep(Signature(0, 0))))
        for _ in range(sig.q - 4 * m):
            rep = extend_pq(rep)
        for _ in range(m):
            rep = shift_four(rep)
    if rep.signature != sig or rep.dim != expected_dim(sig):
        raise CliffordError(f"planner produced {rep.signature} dim {rep.dim} for {sig}")
    return rep


def represent(U: Multivector, rep: Representation):
    """Matrix of ``U``: exact :class:`DenseMatrix` for exact coefficients,
    otherwise a numpy array."""
    if U.sig != rep.signature:
        raise SignatureMismatch(f"{U.sig} vs {rep.signature}")
    if U.is_exact():
        d = rep.dim
        acc = [[0] * d for _ in range(d)]
        for mask, c in U.items():
            for i, row in enumerate(rep.blade_matrix(mask)._nonzeros()):
                for j, x in row:
                    acc[i][j] = acc[i][j] + c * x
        return DenseMatrix(acc)
    dtype = complex if U.field == "complex" else float
    out = np.zeros((rep.dim, rep.dim), dtype=dtype)
    for mask, c in U.items():
        out += c * rep.blade_array(mask)
    return out


def side_mask(sig: Signature, side: str) -> int:
    if side == P_SIDE:
        return (1 << sig.p) - 1
    if side == Q_SIDE:
        return sig.negative_mask
    raise CliffordError(f"unknown side {side!r}")


def side_form(sig: Signature, side: str) -> CanonicalForm:
    """Omega when the side product squares to -1, J when it squares to +1."""
    mask = side_mask(sig, side)
    sign, _ = blade_product(mask, mask, sig)
    return CanonicalForm.OMEGA if sign < 0 else CanonicalForm.J


def normalizable_sides(sig: Signature) -> list[str]:
    out = []
    for side, count in ((P_SIDE, sig.p), (Q_SIDE, sig.q)):
        if count and (sig.n % 2 == 0 or count % 2 == 0):
            out.append(side)
    return out


def normal_target(sig: Signature, side: str, dim: int) -> DenseMatrix:
    form = side_form(sig, side)
    if sig.n % 2 == 0:
        return canonical_matrix(form, dim)
    block = canonical_matrix(form, dim // 2)
    return DenseMatrix.block_diag(block, block)


def normalize_rep(rep: Representation, side: str) -> Representation:
    """Conjugate by an exact orthogonal ``T`` so that the side product
    ``g^{1..p}`` (or ``g^{p+1..n}``) becomes Omega/J, or ``diag(G, G)`` for odd n."""
    sig = rep.signature
    if not in_scope(sig):
        raise ScopeError(f"{sig} is out of scope")
    if side not in normalizable_sides(sig):
        raise CliffordError(f"side {side!r} of {sig} cannot be normalised")
    form = side_form(sig, side)
    N = rep.blade_matrix(side_mask(sig, side))
    target = normal_target(sig, side, rep.dim)
    if N == target:
        T = DenseMatrix.identity(rep.dim)
    elif sig.n % 2 == 0:
        T = involution_diagonalizer(N, form)
    else:
        h = rep.dim // 2
        D = N.block(0, 0, h)
        if not N.is_block_diagonal(h) or N.block(1, 1, h) != D:
            raise CliffordError("side product is not of the form diag(D, D)")
        TD = involution_diagonalizer(D, form)
        T = DenseMatrix.block_diag(TD, TD)
    Tt = T.T
    if not (Tt @ T).is_identity():
        raise CliffordError("normaliser is not orthogonal")
    gammas = [Tt @ g @ T for g in rep.gammas]
    out = Representation(
        sig,
        tuple(gammas),
        rep.dim,
        rep.block_structure,
        NormalForm(side, form),
        rep.log + (f"normalise {side}-side to {form.value}",),
    )
    out.check_relations()
    if out.blade_matrix(side_mask(sig, side)) != target:
        raise CliffordError("normalisation did not reach the target form")
    return out


@lru_cache(maxsize=None)
def normalized_rep(sig: Signature, side: str) -> Representation:
    return normalize_rep(build_rep(sig), side)


def transpose_law_holds(rep: Representation) -> bool:
    sig = rep.signature
    return all(g.T == g * sig.eta(a) for a, g in enumerate(rep.gammas, start=1))


def block_signs(rep: Representation) -> tuple[int, ...]:
    """Per generator: -1 for ``diag(M, -M)``, +1 for ``diag(M, M)``, 0 otherwise."""
    if rep.block_structure != TWO_BLOCK:
        return tuple(0 for _ in rep.gammas)
    h = rep.dim // 2
    out = []
    for g in rep.gammas:
        A, B = g.block(0, 0, h), g.block(1, 1, h)
        out.append(-1 if B == -A else (1 if B == A else 0))
    return tuple(out)


def faithfulness_rank(rep: Representation) -> int:
    """Exact rank of the flattened matrices of all ``2^n`` basis blades."""
    rows = [
        [x for r in rep.blade_matrix(m).rows for x in r]
        for m in basis_blades(rep.n)
    ]
    return rank(rows)


@dataclass(frozen=True)
class TransposeReport:
    signature: Signature
    lines: dict
    blades_checked: int

    @property
    def passed(self) -> bool:
        return all(self.lines.values())


TRANSPOSE_LINES = ("p-odd", "p-even", "q-even", "q-odd")


def applicable_lines(sig: Signature) -> tuple[str, str]:
    return ("p-odd" if sig.p % 2 else "p-even", "q-odd" if sig.q % 2 else "q-even")


def check_transpose_identities(rep: Representation) -> TransposeReport:
    """Compare ``transpose(rep(U))`` with ``rep(X^{-1} U~ X)`` (or with ``λ``)
    for every basis blade, for the p-line and the q-line that apply."""
    sig = rep.signature
    lines = {}
    blades = basis_blades(sig.n)
    for line in applicable_lines(sig):
        rule = line[0]
        ok = True
        for m in blades:
            U = Multivector.blade(sig, m)
            rhs = hermitian_conjugate(U, rule)
            if represent(U, rep).T != represent(rhs, rep):
                ok = False
                break
        lines[line] = ok
    return TransposeReport(sig, lines, len(blades))
