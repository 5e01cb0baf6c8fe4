"""Small dense matrices over Q(sqrt 2) and its complexification.

Entries may be ``int``, ``Fraction``, ``GaussianRational`` or :class:`QR2`;
representation matrices built from signed permutations stay integer until a
normalising similarity introduces ``1/sqrt 2``.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CliffordError
from .scalars import QR2, GaussianRational, format_exact, parse_exact


class SingularMatrix(CliffordError):
    pass


def _reciprocal(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1) / x
    return x.reciprocal()


def _conj(x):
    return x.conjugate() if isinstance(x, (QR2, GaussianRational, complex)) else x


class DenseMatrix:
    """Immutable square matrix with exact entries."""

    __slots__ = ("rows", "dim", "_nz")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in rows)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise CliffordError("matrix must be square and nonempty")
        self.rows = rows
        self.dim = dim
        self._nz = None

    @classmethod
    def identity(cls, dim: int) -> "DenseMatrix":
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def zeros(cls, dim: int) -> "DenseMatrix":
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def diag(cls, entries: Sequence) -> "DenseMatrix":
        d = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def block_diag(cls, *blocks: "DenseMatrix") -> "DenseMatrix":
        dim = sum(b.dim for b in blocks)
        rows = [[0] * dim for _ in range(dim)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                rows[off + i][off:off + b.dim] = b.rows[i]
            off += b.dim
        return cls(rows)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["DenseMatrix"]]) -> "DenseMatrix":
        k = len(grid)
        size = grid[0][0].dim
        rows = []
        for bi in range(k):
            for i in range(size):
                row = []
                for bj in range(k):
                    row.extend(grid[bi][bj].rows[i])
                rows.append(row)
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _nonzeros(self):
        if self._nz is None:
            self._nz = tuple(tuple((j, x) for j, x in enumerate(r) if x != 0) for r in self.rows)
        return self._nz

    # -- ring operations ------------------------------------------------------
    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise CliffordError(f"dimension mismatch {self.dim} vs {other.dim}")
        bnz = other._nonzeros()
        d = self.dim
        out = []
        for arow in self._nonzeros():
            acc = [0] * d
            for k, x in arow:
                for j, y in bnz[k]:
                    acc[j] = acc[j] + x * y
            out.append(acc)
        return DenseMatrix(out)

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._same(other)
        return DenseMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._same(other)
        return DenseMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "DenseMatrix":
        return DenseMatrix([[-x for x in r] for r in self.rows])

    def __mul__(self, c) -> "DenseMatrix":
        if isinstance(c, DenseMatrix):
            return NotImplemented
        return DenseMatrix([[x * c for x in r] for r in self.rows])

    __rmul__ = __mul__

    def _same(self, other):
        if not isinstance(other, DenseMatrix) or other.dim != self.dim:
            raise CliffordError("dimension mismatch")

    @property
    def T(self) -> "DenseMatrix":
        return DenseMatrix(zip(*self.rows))

    def transpose(self) -> "DenseMatrix":
        return self.T

    def conj(self) -> "DenseMatrix":
        return DenseMatrix([[_conj(x) for x in r] for r in self.rows])

    def conj_transpose(self) -> "DenseMatrix":
        return self.conj().T

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.dim)), 0)

    def inverse(self) -> "DenseMatrix":
        """Exact Gauss-Jordan inverse; raises :class:`SingularMatrix`."""
        d = self.dim
        aug = [list(r) + [1 if i == j else 0 for j in range(d)] for i, r in enumerate(self.rows)]
        for col in range(d):
            piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = _reciprocal(aug[col][col])
            aug[col] = [x * inv for x in aug[col]]
            for r in range(d):
                f = aug[r][col]
                if r != col and f != 0:
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return DenseMatrix(row[d:] for row in aug)

    # -- predicates ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.dim == other.dim and all(
            x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_identity(self) -> bool:
        return self == DenseMatrix.identity(self.dim)

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry, equal to +-1, in every row and column."""
        cols = set()
        for r in self._nonzeros():
            if len(r) != 1 or r[0][1] not in (1, -1):
                return False
            cols.add(r[0][0])
        return len(cols) == self.dim

    def block(self, bi: int, bj: int, size: int) -> "DenseMatrix":
        return DenseMatrix(r[bj * size:(bj + 1) * size] for r in self.rows[bi * size:(bi + 1) * size])

    def is_block_diagonal(self, size: int) -> bool:
        k = self.dim // size
        return all(
            self.rows[i][j] == 0
            for i in range(self.dim)
            for j in range(self.dim)
            if i // size != j // size and i // size < k
        )

    def to_numpy(self) -> np.ndarray:
        vals = [[_to_number(x) for x in r] for r in self.rows]
        dtype = complex if any(isinstance(x, complex) for r in vals for x in r) else float
        return np.array(vals, dtype=dtype)

    def dump(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"DenseMatrix(dim={self.dim})\n{format_matrix(self)}"


def _to_number(x):
    if isinstance(x, QR2):
        return x.to_number()
    if isinstance(x, GaussianRational):
        return complex(x) if x.im != 0 else float(x.re)
    if isinstance(x, complex):
        return x
    return float(x)


def format_matrix(M: DenseMatrix) -> str:
    """One row per line, space separated ``a``, ``a+b√2`` or float entries."""
    return "\n".join(" ".join(format_exact(x) for x in r) for r in M.rows)


def parse_matrix(text: str) -> DenseMatrix:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    return DenseMatrix([[parse_exact(tok) for tok in ln] for ln in lines])


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rectangular matrix over Q(sqrt 2) (or Q(i, sqrt 2))."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = _reciprocal(work[r][c])
        pr = [x * inv for x in work[r]]
        work[r] = pr
        for i in range(r + 1, len(work)):
            f = work[i][c]
            if f != 0:
                work[i] = [x - f * y for x, y in zip(work[i], pr)]
        r += 1
        if r == len(work):
            break
    return r


# -- canonical forms -------------------------------------------------------------

class CanonicalForm(Enum):
    OMEGA = "Omega"
    J = "J"


def omega(dim: int) -> DenseMatrix:
    """``[[0, -1], [1, 0]]`` with ``dim/2``-sized identity blocks."""
    if dim % 2:
        raise CliffordError("Omega needs an even dimension")
    h = dim // 2
    rows = [[0] * dim for _ in range(dim)]
    for k in range(h):
        rows[k][h + k] = -1
        rows[h + k][k] = 1
    return DenseMatrix(rows)


def j_form(dim: int) -> DenseMatrix:
    """``diag(1, ..., 1, -1, ..., -1)`` with equal counts."""
    if dim % 2:
        raise CliffordError("J needs an even dimension")
    h = dim // 2
    return DenseMatrix.diag([1] * h + [-1] * h)


def canonical_matrix(kind: CanonicalForm, dim: int) -> DenseMatrix:
    return omega(dim) if kind is CanonicalForm.OMEGA else j_form(dim)


def involution_diagonalizer(N: DenseMatrix, target: CanonicalForm) -> DenseMatrix:
    """Exact orthogonal ``T`` with ``T^{-1} N T`` equal to Omega or J.

    ``N`` must be a signed permutation matrix of trace zero with
    ``N^2 = -1`` (for Omega) or ``N^2 = +1`` (for J).
    """
    d = N.dim
    if not N.is_monomial():
        raise CliffordError("N is not a signed permutation matrix")
    if N.trace() != 0:
        raise CliffordError("N has nonzero trace")
    square = N @ N
    want = -1 if target is CanonicalForm.OMEGA else 1
    if square != DenseMatrix.identity(d) * want:
        raise CliffordError(f"N^2 != {want:+d}")
    if d % 2:
        raise CliffordError("odd dimension")
    # image of basis vector i: N e_i = sign * e_j, read from column i
    image = {}
    for i, row in enumerate(N._nonzeros()):
        j, s = row[0]
        image[j] = (i, s)
    h = d // 2
    cols: list[list] = [None] * d  # type: ignore[list-item]
    seen = set()
    if target is CanonicalForm.OMEGA:
        k = 0
        for i in range(d):
            if i in seen:
                continue
            j, s = image[i]
            seen.update((i, j))
            cols[k] = _unit(d, {i: 1})
            cols[h + k] = _unit(d, {j: s})
            k += 1
    else:
        half = QR2(0, Fraction(1, 2))  # 1/sqrt2
        plus, minus = [], []
        for i in range(d):
            if i in seen:
                continue
            j, s = image[i]
            seen.update((i, j))
            if j == i:
                (plus if s == 1 else minus).append(_unit(d, {i: 1}))
            else:
                plus.append(_unit(d, {i: half, j: half * s}))
                minus.append(_unit(d, {i: -half, j: half * s}))
        if len(plus) != h:
            raise CliffordError("eigenvalue multiplicities differ")
        cols = plus + minus
    return DenseMatrix(zip(*cols))


def _unit(d: int, entries: dict) -> list:
    v = [0] * d
    for i, x in entries.items():
        v[i] = x
    return v


# -- floating exponential ------------------------------------------------------------

def mat_exp(A, tol: float = 1e-9) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a truncated Taylor series.

    The series is cut when the next term drops below ``tol * 2**-s * eps``-level
    relative size, where ``2**s`` is the scaling factor.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise CliffordError("mat_exp needs a square matrix")
    if not np.all(np.isfinite(A)):
        raise CliffordError("mat_exp input has nonfinite entries")
    dtype = complex if np.iscomplexobj(A) else float
    A = A.astype(dtype)
    norm = np.abs(A).sum(axis=1).max() if A.size else 0.0
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    B = A / (2.0 ** s)
    result = np.eye(A.shape[0], dtype=dtype)
    term = np.eye(A.shape[0], dtype=dtype)
    # ||B|| <= 1/2, so the tail after term k is bounded by 2 * ||term_k||.
    bound = min(tol, 1e-3) * 2.0 ** (-s) * 1e-6
    for k in range(1, 60):
        term = term @ B / k
        result = result + term
        if np.abs(term).max() * 2 < bound or np.abs(term).max() < 1e-300:
            break
    for _ in range(s):
        result = result @ result
    return result
