"""Exact arithmetic in the cyclotomic field Q(w), w = exp(2*pi*i/6).

Elements are stored in the basis {1, w} with the reduction w^2 = w - 1,
so w^3 = -1 and w^6 = 1.  Rational parts are `fractions.Fraction`, which
already guarantees lowest terms and a positive denominator; it is exposed
as `BigRat` for the rest of the package.

No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

BigRat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CycScalar:
    """a + b*w with a, b exact rationals and w^2 = w - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycScalar(other.a - self.a, other.b - self.b)

    def __neg__(self):
        return CycScalar(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        # (a1 + b1 w)(a2 + b2 w) with w^2 = w - 1
        return CycScalar(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 + b1 * b2)

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse.

        Uses the conjugate a + b(1 - w) (the image under w -> w^5) and the
        rational norm a^2 + ab + b^2:
            (a + bw)(a + b - bw) = a^2 + ab + b^2.
        """
        n = self.a * self.a + self.a * self.b + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return CycScalar((self.a + self.b) / n, -self.b / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ------------------------------------------------------

    def conjugate(self):
        """Complex conjugate, i.e. w -> w^-1 = 1 - w."""
        return CycScalar(self.a + self.b, -self.b)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self):
        return not self

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"CycScalar({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CycScalar(x)
    return NotImplemented


ZERO = CycScalar(0)
ONE = CycScalar(1)
OMEGA = CycScalar(0, 1)

# w^p for p = 0..5, from repeated reduction by w^2 = w - 1.
_OMEGA_POWERS = (
    CycScalar(1, 0),
    CycScalar(0, 1),
    CycScalar(-1, 1),
    CycScalar(-1, 0),
    CycScalar(0, -1),
    CycScalar(1, -1),
)


def cyc_mul(x: CycScalar, y: CycScalar) -> CycScalar:
    return x * y


def cyc_inv(x: CycScalar) -> CycScalar:
    return x.inv()


def cyc_pow_omega(p: int) -> CycScalar:
    """w^p for any integer p (reduced mod 6)."""
    return _OMEGA_POWERS[p % 6]


# -- textual format ----------------------------------------------------
#
# Canonical form is "<a>+<b>*w" where <x> is "n" or "n/d" in lowest terms
# with the sign on the numerator, e.g. "1/6+-2/3*w".  This is the scalar
# format used in all JSON reports.


def format_scalar(x: CycScalar) -> str:
    return f"{_fmt_rat(x.a)}+{_fmt_rat(x.b)}*w"


def _fmt_rat(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_scalar(s: str) -> CycScalar:
    """Parse the canonical textual form back into a CycScalar."""
    t = s.replace(" ", "")
    if not t.endswith("*w"):
        raise ValueError(f"bad scalar literal: {s!r}")
    body = t[:-2]
    # split on the '+' that separates the two parts; the b-part may carry
    # its own leading '-'.
    cut = body.rfind("+")
    if cut <= 0:
        raise ValueError(f"bad scalar literal: {s!r}")
    return CycScalar(Fraction(body[:cut]), Fraction(body[cut + 1 :]))
