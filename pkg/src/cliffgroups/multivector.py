"""Sparse multivectors of the real and complexified Clifford algebras Cl(p, q).

Blades are bitmasks: bit ``a - 1`` is set iff the generator ``e^a`` occurs.
Generators ``e^1..e^p`` square to ``+e`` and ``e^{p+1}..e^n`` to ``-e``.
Coefficients are ``Fraction``/``GaussianRational`` for exact work and
``float``/``complex`` for sampled group elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import CliffordError, SignatureMismatch
from .scalars import GaussianRational

REAL = "real"
COMPLEX = "complex"

I_UNIT = GaussianRational(0, 1)


@dataclass(frozen=True, order=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("signature entries must be integers")
        if self.p < 0 or self.q < 0:
            raise CliffordError(f"negative signature ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def negative_mask(self) -> int:
        return ((1 << self.q) - 1) << self.p

    @property
    def pseudoscalar_mask(self) -> int:
        return (1 << self.n) - 1

    def eta(self, a: int) -> int:
        """Diagonal metric entry for the 1-based generator index ``a``."""
        if not 1 <= a <= self.n:
            raise IndexError(f"generator index {a} outside 1..{self.n}")
        return 1 if a <= self.p else -1

    def swapped(self) -> "Signature":
        return Signature(self.q, self.p)

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


class QuaternionType(IntEnum):
    ZERO = 0
    ONE = 1
    TWO = 2
    THREE = 3


def grade(mask: int) -> int:
    return bin(mask).count("1")


def quaternion_type(mask: int) -> QuaternionType:
    return QuaternionType(grade(mask) % 4)


def blade_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a blade, ascending."""
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def blade_mask(indices: Iterable[int]) -> int:
    mask = 0
    for a in indices:
        bit = 1 << (a - 1)
        if mask & bit:
            raise CliffordError(f"repeated generator e{a} in blade")
        mask |= bit
    return mask


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{a}" for a in blade_indices(mask))


def basis_blades(n: int) -> list[int]:
    """All 2^n blade masks ordered by grade, then lexicographically."""
    return sorted(range(1 << n), key=lambda m: (grade(m), blade_indices(m)))


@lru_cache(maxsize=None)
def _blade_product(a: int, b: int, negmask: int) -> tuple[int, int]:
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b & negmask).count("1")
    return (-1 if swaps & 1 else 1), a ^ b


@lru_cache(maxsize=16)
def product_table(sig: Signature) -> tuple[np.ndarray, np.ndarray]:
    """``(sign, mask)`` arrays of ``blade_product`` for all pairs of blades."""
    size = 1 << sig.n
    a = np.arange(size)[:, None]
    b = np.arange(size)[None, :]
    popcount = np.array([bin(i).count("1") for i in range(size)])
    swaps = popcount[a & b & sig.negative_mask]
    for k in range(1, sig.n):
        swaps = swaps + popcount[(a >> k) & b]
    return 1.0 - 2.0 * (swaps & 1), a ^ b


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``(sign, mask)`` with ``e^A e^B = sign e^{A xor B}``."""
    full = sig.pseudoscalar_mask
    if a & ~full or b & ~full:
        raise CliffordError(f"blade does not fit {sig}")
    return _blade_product(a, b, sig.negative_mask)


def _coerce(c, field: str):
    if field == REAL:
        if isinstance(c, bool):
            return int(c)
        if isinstance(c, (int, Fraction, float)):
            return c
        if isinstance(c, GaussianRational):
            if c.im != 0:
                raise CliffordError("imaginary coefficient in a real multivector")
            return c.re
        if isinstance(c, complex):
            if c.imag != 0:
                raise CliffordError("imaginary coefficient in a real multivector")
            return c.real
        if hasattr(c, "__float__"):  # numpy scalars
            return float(c)
        raise TypeError(f"unsupported coefficient type {type(c).__name__}")
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c, 0)
    if isinstance(c, (float, complex)):
        return complex(c)
    if hasattr(c, "__complex__"):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _conj(c):
    return c.conjugate() if isinstance(c, (GaussianRational, complex)) else c


class Multivector:
    """Immutable sparse element of Cl(p, q) over the real or complex field."""

    __slots__ = ("sig", "field", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None, field: str = REAL):
        if field not in (REAL, COMPLEX):
            raise CliffordError(f"unknown field {field!r}")
        full = sig.pseudoscalar_mask
        store = {}
        for mask, c in (terms or {}).items():
            if mask & ~full or mask < 0:
                raise CliffordError(f"blade {mask:#b} does not fit {sig}")
            c = _coerce(c, field)
            if c != 0:
                store[mask] = c
        self.sig = sig
        self.field = field
        self._terms = store

    @classmethod
    def _raw(cls, sig, store, field):
        obj = object.__new__(cls)
        obj.sig = sig
        obj.field = field
        obj._terms = store
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, sig: Signature, field: str = REAL) -> "Multivector":
        return cls(sig, {}, field)

    @classmethod
    def scalar(cls, sig: Signature, value=1, field: str = REAL) -> "Multivector":
        return cls(sig, {0: value}, field)

    @classmethod
    def blade(cls, sig: Signature, mask_or_indices, coeff=1, field: str = REAL) -> "Multivector":
        if isinstance(mask_or_indices, int):
            mask = mask_or_indices
        else:
            mask = blade_mask(mask_or_indices)
        return cls(sig, {mask: coeff}, field)

    @classmethod
    def generator(cls, sig: Signature, a: int, coeff=1, field: str = REAL) -> "Multivector":
        sig.eta(a)
        return cls(sig, {1 << (a - 1): coeff}, field)

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[int, object]]:
        return iter(self._terms.items())

    def coefficient(self, mask: int):
        return self._terms.get(mask, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction, GaussianRational)) for c in self._terms.values())

    def has_imaginary_part(self) -> bool:
        return any(
            (isinstance(c, GaussianRational) and c.im != 0) or (isinstance(c, complex) and c.imag != 0)
            for c in self._terms.values()
        )

    def grades(self) -> set[int]:
        return {grade(m) for m in self._terms}

    def max_abs(self) -> float:
        """Largest coefficient modulus, used as a residual norm."""
        return max((abs(complex(c)) for c in self._terms.values()), default=0.0)

    def as_complex(self) -> "Multivector":
        if self.field == COMPLEX:
            return self
        return Multivector(self.sig, self._terms, COMPLEX)

    def real_part(self) -> "Multivector":
        return Multivector(self.sig, {m: _re(c) for m, c in self._terms.items()}, REAL)

    def imag_part(self) -> "Multivector":
        return Multivector(self.sig, {m: _im(c) for m, c in self._terms.items()}, REAL)

    def to_real(self) -> "Multivector":
        """Drop to the real field; raises if an imaginary part is present."""
        return Multivector(self.sig, self._terms, REAL)

    def to_float(self) -> "Multivector":
        if self.field == REAL:
            return Multivector(self.sig, {m: float(c) for m, c in self._terms.items()}, REAL)
        return Multivector(self.sig, {m: complex(c) for m, c in self._terms.items()}, COMPLEX)

    def map_terms(self, fn) -> "Multivector":
        """Apply ``fn(mask, coeff) -> coeff`` termwise."""
        return Multivector(self.sig, {m: fn(m, c) for m, c in self._terms.items()}, self.field)

    def filter(self, keep) -> "Multivector":
        return Multivector._raw(self.sig, {m: c for m, c in self._terms.items() if keep(m)}, self.field)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Multivector") -> str:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")
        return COMPLEX if COMPLEX in (self.field, other.field) else REAL

    def __add__(self, other):
        if not isinstance(other, Multivector):
            if _is_scalar(other):
                other = Multivector.scalar(self.sig, other, self.field if not _is_complex(other) else COMPLEX)
            else:
                return NotImplemented
        field = self._check(other)
        store = dict(self._terms)
        for m, c in other._terms.items():
            store[m] = store.get(m, 0) + c
        return Multivector(self.sig, store, field)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.sig, {m: -c for m, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, Multivector) and not _is_scalar(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if _is_scalar(other):
            field = COMPLEX if (self.field == COMPLEX or _is_complex(other)) else REAL
            return Multivector(self.sig, {m: c * other for m, c in self._terms.items()}, field)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            field = COMPLEX if (self.field == COMPLEX or _is_complex(other)) else REAL
            return Multivector(self.sig, {m: c / other for m, c in self._terms.items()}, field)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._terms == other._terms
        if _is_scalar(other):
            return self == Multivector.scalar(self.sig, other, COMPLEX if _is_complex(other) else REAL)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Multivector({self.sig}, {format_multivector(self)!r})"

    def __str__(self) -> str:
        return format_multivector(self)

    # -- convenience wrappers ----------------------------------------------
    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def involute(self) -> "Multivector":
        return grade_involution(self)

    def reverse(self) -> "Multivector":
        return reversion(self)

    def conjugate(self) -> "Multivector":
        return complex_conjugate(self)

    def dagger(self) -> "Multivector":
        return hermitian_conjugate(self)

    def ddagger(self) -> "Multivector":
        return pseudo_hermitian(self)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, float, complex, GaussianRational)) or (
        hasattr(x, "__float__") and not isinstance(x, Multivector) and hasattr(x, "dtype")
    )


def _is_complex(x) -> bool:
    return isinstance(x, complex) or (isinstance(x, GaussianRational) and x.im != 0)


def _re(c):
    if isinstance(c, GaussianRational):
        return c.re
    if isinstance(c, complex):
        return c.real
    return c


def _im(c):
    if isinstance(c, GaussianRational):
        return c.im
    if isinstance(c, complex):
        return c.imag
    return 0


# -- operations ------------------------------------------------------------------

# float products with more term pairs than this go through numpy
_DENSE_PAIRS = 4096


def geometric_product(U: Multivector, V: Multivector) -> Multivector:
    field = U._check(V)
    if len(U._terms) * len(V._terms) > _DENSE_PAIRS and not (U.is_exact() or V.is_exact()):
        return _dense_product(U, V, field)
    neg = U.sig.negative_mask
    store: dict[int, object] = {}
    for a, x in U._terms.items():
        for b, y in V._terms.items():
            sign, m = _blade_product(a, b, neg)
            c = x * y
            store[m] = store.get(m, 0) + (c if sign > 0 else -c)
    return Multivector(U.sig, store, field)


def _dense_product(U: Multivector, V: Multivector, field: str) -> Multivector:
    sign, xor = product_table(U.sig)
    ia = np.fromiter(U._terms.keys(), dtype=np.int64)
    ib = np.fromiter(V._terms.keys(), dtype=np.int64)
    dtype = complex if field == COMPLEX else float
    ua = np.array([dtype(c) for c in U._terms.values()])
    vb = np.array([dtype(c) for c in V._terms.values()])
    weights = sign[np.ix_(ia, ib)] * np.outer(ua, vb)
    masks = xor[np.ix_(ia, ib)].ravel()
    size = 1 << U.sig.n
    out = np.bincount(masks, weights=weights.real.ravel(), minlength=size).astype(dtype)
    if dtype is complex:
        out = out + 1j * np.bincount(masks, weights=weights.imag.ravel(), minlength=size)
    touched = np.unique(masks)
    return Multivector(U.sig, {int(m): dtype(out[m]) for m in touched}, field)


def grade_project(U: Multivector, k: int) -> Multivector:
    if not 0 <= k <= U.sig.n:
        raise CliffordError(f"grade {k} outside 0..{U.sig.n}")
    return U.filter(lambda m: grade(m) == k)


def parity_split(U: Multivector) -> tuple[Multivector, Multivector]:
    return U.filter(lambda m: grade(m) % 2 == 0), U.filter(lambda m: grade(m) % 2 == 1)


def even_part(U: Multivector) -> Multivector:
    return parity_split(U)[0]


def odd_part(U: Multivector) -> Multivector:
    return parity_split(U)[1]


def type_project(U: Multivector, t: int) -> Multivector:
    t = QuaternionType(t)
    return U.filter(lambda m: grade(m) % 4 == t)


def _scaled(U: Multivector, sign_of_grade) -> Multivector:
    return Multivector._raw(
        U.sig,
        {m: (c if sign_of_grade(grade(m)) > 0 else -c) for m, c in U._terms.items()},
        U.field,
    )


def grade_involution(U: Multivector) -> Multivector:
    return _scaled(U, lambda k: -1 if k % 2 else 1)


def reversion(U: Multivector) -> Multivector:
    return _scaled(U, lambda k: -1 if (k * (k - 1) // 2) % 2 else 1)


def complex_conjugate(U: Multivector) -> Multivector:
    if U.field == REAL:
        return U
    return Multivector._raw(U.sig, {m: _conj(c) for m, c in U._terms.items()}, U.field)


def pseudo_hermitian(U: Multivector) -> Multivector:
    """``U^‡``: complex conjugation followed by reversion."""
    return reversion(complex_conjugate(U))


def blade_inverse(sig: Signature, mask: int) -> Multivector:
    sign, _ = blade_product(mask, mask, sig)
    return Multivector.blade(sig, mask, sign)


def hermitian_conjugate(U: Multivector, rule: str = "p") -> Multivector:
    """``U^†`` via conjugation of ``U^‡`` by the positive (``rule="p"``) or
    negative (``rule="q"``) part of the pseudoscalar.

    With ``X = e^{1..p}``: ``U^† = X^{-1} U^‡ X`` for odd ``p`` and
    ``X^{-1} (U^‡)^λ X`` for even ``p``.  The q-rule uses
    ``Y = e^{p+1..n}``, applying ``λ`` when ``q`` is odd.
    """
    sig = U.sig
    if rule == "p":
        mask = (1 << sig.p) - 1
        twist = sig.p % 2 == 0
    elif rule == "q":
        mask = sig.negative_mask
        twist = sig.q % 2 == 1
    else:
        raise CliffordError(f"unknown rule {rule!r}")
    W = pseudo_hermitian(U)
    if twist:
        W = grade_involution(W)
    X = Multivector.blade(sig, mask)
    return blade_inverse(sig, mask) * W * X


def commutator(U: Multivector, V: Multivector) -> Multivector:
    return U * V - V * U


def anticommutator(U: Multivector, V: Multivector) -> Multivector:
    return U * V + V * U


# -- text format -----------------------------------------------------------------

def _format_coeff(c) -> str:
    if isinstance(c, GaussianRational):
        return str(c.re) if c.im == 0 else f"({c})"
    if isinstance(c, complex):
        im = repr(c.imag)
        sep = "" if im.startswith("-") else "+"
        return f"({c.real!r}{sep}{im}i)"
    if isinstance(c, float):
        return f"({c!r})"
    return str(c)


def format_multivector(U: Multivector) -> str:
    """Render as ``coeff*e1e2 + coeff*1 + ...`` in basis order."""
    if U.is_zero():
        return "0"
    order = sorted(U._terms, key=lambda m: (grade(m), blade_indices(m)))
    return " + ".join(f"{_format_coeff(U._terms[m])}*{blade_name(m)}" for m in order)


_FLOATY = re.compile(r"[.eE]|inf|nan", re.IGNORECASE)
_BLADE = re.compile(r"^(?:e\d+)+$")


def _parse_real(s: str):
    if not s or s in "+-":
        return Fraction(f"{s}1")
    return float(s) if _FLOATY.search(s) else Fraction(s)


def _parse_coeff(s: str):
    s = s.strip()
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    s = s.replace(" ", "")
    if not s.endswith("i"):
        return _parse_real(s)
    body = s[:-1]
    cut = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_s, im_s = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
    re_v, im_v = _parse_real(re_s), _parse_real(im_s)
    if isinstance(re_v, float) or isinstance(im_v, float):
        return complex(float(re_v), float(im_v))
    return GaussianRational(re_v, im_v)


def _split_terms(text: str) -> list[str]:
    terms, depth, cur = [], 0, ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and prev and prev not in "+-*(":
            terms.append(cur)
            cur = "" if ch == "+" else "-"
            prev = ch
            continue
        cur += ch
        if not ch.isspace():
            prev = ch
    terms.append(cur)
    return [t.strip() for t in terms if t.strip()]


def parse_multivector(text: str, sig: Signature, field: str | None = None) -> Multivector:
    """Parse the text form produced by :func:`format_multivector`.

    Generator strings need not be ascending (``e2e1`` is ``-e1e2``).
    Whitespace is ignored.
    """
    total = Multivector.zero(sig, COMPLEX if field == COMPLEX else REAL)
    complex_seen = False
    for term in _split_terms(text):
        depth = 0
        star = -1
        for k, ch in enumerate(term):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "*" and depth == 0:
                star = k
        if star >= 0:
            coeff_s, blade_s = term[:star], term[star + 1:].strip()
        else:
            sign = ""
            body = term
            if body[:1] in "+-":
                sign, body = body[0], body[1:].strip()
            if _BLADE.match(body):
                coeff_s, blade_s = sign, body
            else:
                coeff_s, blade_s = term, "1"
        coeff = _parse_coeff(coeff_s) if coeff_s.strip() not in ("", "+", "-") else _parse_real(coeff_s.strip())
        if isinstance(coeff, (complex, GaussianRational)):
            complex_seen = True
        if blade_s == "1":
            piece = Multivector.scalar(sig, 1)
        elif _BLADE.match(blade_s):
            piece = Multivector.scalar(sig, 1)
            for a in (int(x) for x in blade_s[1:].split("e")):
                piece = piece * Multivector.generator(sig, a)
        else:
            raise CliffordError(f"cannot parse blade {blade_s!r}")
        total = total + piece * coeff
    if field == REAL and complex_seen:
        return total.to_real()
    if field is None and not complex_seen:
        return total.to_real() if total.field == COMPLEX else total
    return total.as_complex() if field == COMPLEX or complex_seen else total
