"""Exact scalar types: Gaussian rationals and the quadratic field Q(sqrt 2).

Both types interoperate with ``int`` and ``Fraction``.  Mixing with
``float``/``complex`` degrades to the float type, the same way ``Fraction``
does.
"""

from __future__ import annotations

import math
from fractions import Fraction

SQRT2 = math.sqrt(2.0)

_RATIONAL = (int, Fraction)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, _RATIONAL):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONAL):
            return GaussianRational(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, _RATIONAL):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.reciprocal()
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return GaussianRational.coerce(other) * self.reciprocal()

    def reciprocal(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


class QR2:
    """Exact element ``a + b*sqrt(2)``.

    ``a`` and ``b`` are rationals for the real field Q(sqrt 2), or
    :class:`GaussianRational` for its complexification.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, (Fraction, GaussianRational)) else _frac(a)
        self.b = b if isinstance(b, (Fraction, GaussianRational)) else _frac(b)

    @classmethod
    def coerce(cls, x) -> "QR2":
        if isinstance(x, QR2):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QR2")

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QR2":
        """Complex conjugation (not the Galois conjugate)."""
        return QR2(self.a.conjugate(), self.b.conjugate())

    def galois(self) -> "QR2":
        """The Galois conjugate ``a - b*sqrt(2)``."""
        return QR2(self.a, -self.b)

    def norm(self):
        return self.a * self.a - 2 * self.b * self.b

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT2

    def __complex__(self) -> complex:
        return complex(self.a) + complex(self.b) * SQRT2

    def to_number(self):
        if isinstance(self.a, GaussianRational) or isinstance(self.b, GaussianRational):
            return complex(self)
        return float(self)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, QR2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.b == 0 and self.a == other
        if isinstance(other, (float, complex)):
            return self.to_number() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other) -> bool:
        # Exact comparison of a + b*sqrt2 against 0 after subtracting.
        d = self - QR2.coerce(other)
        return _qr2_sign(d) < 0

    def __neg__(self):
        return QR2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, QR2):
            return QR2(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return QR2(self.a + other, self.b)
        if isinstance(other, (float, complex)):
            return self.to_number() + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QR2):
            return QR2(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return QR2(self.a - other, self.b)
        if isinstance(other, (float, complex)):
            return self.to_number() - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QR2):
            if self.b == 0 and other.b == 0:
                return QR2(self.a * other.a, 0)
            return QR2(
                self.a * other.a + 2 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        if isinstance(other, (int, Fraction, GaussianRational)):
            return QR2(self.a * other, self.b * other)
        if isinstance(other, (float, complex)):
            return self.to_number() * other
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "QR2":
        n = self.norm()
        if n == 0:
            # a^2 = 2 b^2 has no nonzero solution in Q or Q(i).
            raise ZeroDivisionError("QR2 division by zero")
        return QR2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, QR2):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction, GaussianRational)):
            if other == 0:
                raise ZeroDivisionError("QR2 division by zero")
            return QR2(self.a / other, self.b / other)
        if isinstance(other, (float, complex)):
            return self.to_number() / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / self.to_number()
        return QR2.coerce(other) * self.reciprocal()

    def __repr__(self) -> str:
        return f"QR2({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_exact(self)


def _qr2_sign(x: QR2) -> int:
    a, b = x.a, x.b
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        raise TypeError("complex QR2 values are not ordered")
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with 2 b^2
    return sa if a * a > 2 * b * b else sb


def sqrt2() -> QR2:
    return QR2(0, 1)


def format_exact(x) -> str:
    """Text form ``a``, ``a+b√2`` or a float repr, used by matrix dumps."""
    if isinstance(x, QR2):
        if x.b == 0:
            return format_exact(x.a)
        a = "" if x.a == 0 else format_exact(x.a)
        b = x.b
        if isinstance(b, GaussianRational) and not b.is_real():
            return f"{a}{'+' if a else ''}({b})√2"
        b = b.re if isinstance(b, GaussianRational) else b
        if not a:
            return f"{b}√2"
        return f"{a}{'-' if b < 0 else '+'}{abs(b)}√2"
    if isinstance(x, GaussianRational):
        return str(x) if x.is_real() else f"({x})"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def parse_exact(text: str):
    """Inverse of :func:`format_exact` for rational and real Q(sqrt 2) entries."""
    s = text.strip().replace(" ", "")
    if "√2" not in s:
        if any(c in s for c in ".eEn") and "/" not in s:
            return float(s)
        return Fraction(s)
    body = s[: s.index("√2")]
    if s[s.index("√2") + 2:]:
        raise ValueError(f"malformed Q(sqrt2) entry: {text!r}")
    # split body into rational part and the coefficient of sqrt2
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        return QR2(0, Fraction(body) if body not in ("", "+", "-") else Fraction(f"{body}1"))
    a, b = body[:cut], body[cut:]
    return QR2(Fraction(a), Fraction(b))
