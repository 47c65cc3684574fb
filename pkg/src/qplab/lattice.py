"""The rank-2 root lattice with its order-6 twisted Coxeter isometry.

Fixes the lattice L = Z a1 + Z a2 with Gram matrix [[2,-1],[-1,2]], the
isometry nu given by nu(a1) = a1 + a2, nu(a2) = -a1, the eigenspace
projection pairings, the 2-cocycle eps, the index sets I(n), and the
correction polynomials P attached to lists of roots.

Everything here is an exact integer or CycScalar computation; the heavy
users downstream read precomputed tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .scalars import ONE, ZERO, CycScalar, cyc_pow_omega, format_scalar

GRAM = ((2, -1), (-1, 2))

# nu in coordinates: nu(m1, m2) = (m1 - m2, m1)
NU_MATRIX = ((1, -1), (1, 0))


@dataclass(frozen=True)
class RootVector:
    """The lattice element m1*a1 + m2*a2."""

    m1: int
    m2: int

    def __add__(self, other):
        return RootVector(self.m1 + other.m1, self.m2 + other.m2)

    def __sub__(self, other):
        return RootVector(self.m1 - other.m1, self.m2 - other.m2)

    def __neg__(self):
        return RootVector(-self.m1, -self.m2)

    def key(self):
        return (self.m1, self.m2)

    def is_root(self):
        return pair(self, self) == 2

    def __str__(self):
        return f"({self.m1},{self.m2})"


ALPHA = RootVector(1, 0)
BETA = RootVector(1, 1)   # = nu(ALPHA) = a1 + a2
GAMMA = RootVector(0, 1)  # = nu^2(ALPHA) = a2

ROOT_NAMES = {
    "alpha": ALPHA,
    "beta": BETA,
    "gamma": GAMMA,
    "-alpha": -ALPHA,
    "-beta": -BETA,
    "-gamma": -GAMMA,
}

PHI = (ALPHA, BETA, GAMMA, -ALPHA, -BETA, -GAMMA)


def pair(x: RootVector, y: RootVector) -> int:
    """The symmetric bilinear form <x, y>."""
    return (
        GRAM[0][0] * x.m1 * y.m1
        + GRAM[0][1] * (x.m1 * y.m2 + x.m2 * y.m1)
        + GRAM[1][1] * x.m2 * y.m2
    )


def nu(x: RootVector, p: int = 1) -> RootVector:
    """Apply the isometry nu^p."""
    m1, m2 = x.m1, x.m2
    for _ in range(p % 6):
        m1, m2 = m1 - m2, m1
    return RootVector(m1, m2)


def pair_nu(p: int, x: RootVector, y: RootVector) -> int:
    """<nu^p x, y>."""
    return pair(nu(x, p), y)


def index_set(x: RootVector, y: RootVector, n: int) -> frozenset:
    """I(n) = {p in Z6 : <nu^p x, y> = n}, for roots x, y."""
    if not (x.is_root() and y.is_root()):
        raise PreconditionError("index_set is defined for roots only")
    return frozenset(p for p in range(6) if pair_nu(p, x, y) == n)


def epsilon(x: RootVector, y: RootVector) -> CycScalar:
    """The cocycle (-1)^<nu^-1 x + nu^-2 x, y> * w^<nu^-1 x + 2 nu^-2 x, y>."""
    e1 = pair(nu(x, 5) + nu(x, 4), y)
    e2 = pair(nu(x, 5) + nu(x, 4) + nu(x, 4), y)
    sign = ONE if e1 % 2 == 0 else -ONE
    return sign * cyc_pow_omega(e2)


def proj_pairing(m: int, x: RootVector, y: RootVector) -> CycScalar:
    """<x_(m), y_(-m)> where x_(m) = (1/6) sum_q w^(-m q) nu^q x.

    This is the structure constant feeding the Heisenberg bracket; it
    vanishes unless m = +-1 mod 6 and depends on m only mod 6.
    """
    total = ZERO
    for q in range(6):
        total = total + cyc_pow_omega(-m * q) * pair_nu(q, x, y)
    return total * Fraction(1, 6)


# -- polynomials over Q(w) ----------------------------------------------


class CPoly:
    """Dense univariate polynomial with CycScalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c if isinstance(c, CycScalar) else CycScalar(c)])

    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, CPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else ZERO
            out.append(a + b)
        return CPoly(out)

    def __neg__(self):
        return CPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CycScalar):
            return CPoly([c * other for c in self.coeffs])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1) if self and other else []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return CPoly(out)

    def __pow__(self, k):
        out = CPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: CycScalar) -> CycScalar:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coefficient(self, k: int) -> CycScalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __repr__(self):
        return "CPoly[" + ", ".join(format_scalar(c) for c in self.coeffs) + "]"


def _linear_factor(p: int) -> CPoly:
    """1 - w^-p * x."""
    return CPoly([ONE, -cyc_pow_omega(-p)])


def pair_p_polynomial(x: RootVector, y: RootVector) -> CPoly:
    """P_{x,y}(t) = prod over p with <nu^p x, y> < 0 of (1 - w^-p t)^(-<nu^p x, y>)."""
    out = CPoly.const(1)
    for p in range(6):
        m = pair_nu(p, x, y)
        if m < 0:
            out = out * _linear_factor(p) ** (-m)
    return out


def pair_fplus_polynomial(x: RootVector, y: RootVector) -> CPoly:
    """The nonnegative-exponent part of the contraction function:

    prod over p with <nu^p x, y> > 0 of (1 - w^-p t)^<nu^p x, y>.

    P_{x,y} times the expanded contraction series telescopes to exactly
    this polynomial; its value at 1 controls same-slot collapse.
    """
    out = CPoly.const(1)
    for p in range(6):
        m = pair_nu(p, x, y)
        if m > 0:
            out = out * _linear_factor(p) ** m
    return out


class PPolynomial:
    """Correction polynomial attached to a list of roots.

    Stores one univariate pair polynomial P_{d_i, d_j} per ordered pair
    i < j (the multivariate object is their product over ratios of the
    corresponding variables).
    """

    def __init__(self, deltas):
        self.deltas = tuple(deltas)
        for i, di in enumerate(self.deltas):
            for dj in self.deltas[i + 1 :]:
                if pair(di, dj) < 0:
                    raise PreconditionError(
                        f"P-polynomial requires nonnegative pairings, got <{di},{dj}> < 0"
                    )
        self.pairs = {
            (i, j): pair_p_polynomial(self.deltas[i], self.deltas[j])
            for i in range(len(self.deltas))
            for j in range(i + 1, len(self.deltas))
        }

    @property
    def rank(self):
        return len(self.deltas)

    def pair_poly(self, i: int, j: int) -> CPoly:
        return self.pairs[(i, j)]

    def at_equal_arguments(self) -> CycScalar:
        """Value after substituting all variables equal (each ratio -> 1)."""
        out = ONE
        for poly in self.pairs.values():
            out = out * poly(ONE)
        return out

    def specialize_two_groups(self, group1) -> tuple[CPoly, int, CycScalar]:
        """Collapse the variables onto two values z1 (positions in `group1`)
        and z2 (the rest).

        Returns (poly, low, scalar) so that the full specialization equals
        scalar * t^low * poly(t) with t = z1/z2 and low <= 0.  Pairs inside
        one group evaluate at 1; a pair with i in group 2 and j in group 1
        depends on 1/t and shifts `low` down by its degree.
        """
        g1 = set(group1)
        poly = CPoly.const(1)
        scalar = ONE
        low = 0
        for (i, j), pp in self.pairs.items():
            i_in, j_in = i in g1, j in g1
            if i_in == j_in:
                scalar = scalar * pp(ONE)
            elif i_in and not j_in:
                poly = poly * pp
            else:
                # variable ratio is z2/z1 = t^-1
                poly = poly * CPoly(list(reversed(pp.coeffs)))
                low -= pp.degree()
        return poly, low, scalar


def p_polynomial(deltas) -> PPolynomial:
    return PPolynomial(deltas)


# -- assembled tables ----------------------------------------------------


class TwistedLatticeData:
    """Precomputed pairing, cocycle and index-set tables for {alpha, beta}."""

    def __init__(self):
        self.gram = GRAM
        self.nu = NU_MATRIX
        pairs = [(ALPHA, ALPHA), (ALPHA, BETA), (BETA, ALPHA), (BETA, BETA)]
        self.pair_table = {
            (x.key(), y.key()): tuple(pair_nu(p, x, y) for p in range(6)) for x, y in pairs
        }
        self.eps_table = {(x.key(), y.key()): epsilon(x, y) for x in PHI for y in PHI}
        self.I_sets = {
            (x.key(), y.key(), n): index_set(x, y, n)
            for x, y in pairs
            for n in range(-2, 3)
        }
        self.proj_pair = {
            (m, x.key(), y.key()): proj_pairing(m, x, y)
            for m in range(6)
            for x in PHI
            for y in PHI
        }

    def to_json(self):
        def k(key):
            return f"({key[0]},{key[1]})"

        return {
            "gram": [list(r) for r in self.gram],
            "nu": [list(r) for r in self.nu],
            "pair_table": {
                f"{k(x)}|{k(y)}": list(v) for (x, y), v in self.pair_table.items()
            },
            "eps_table": {
                f"{k(x)}|{k(y)}": format_scalar(v) for (x, y), v in self.eps_table.items()
            },
            "I_sets": {
                f"{k(x)}|{k(y)}|{n}": sorted(v) for (x, y, n), v in self.I_sets.items()
            },
            "proj_pair": {
                f"{m}|{k(x)}|{k(y)}": format_scalar(v)
                for (m, x, y), v in self.proj_pair.items()
            },
            "p_polynomials": {
                "alpha,alpha": [format_scalar(c) for c in pair_p_polynomial(ALPHA, ALPHA).coeffs],
                "alpha,beta": [format_scalar(c) for c in pair_p_polynomial(ALPHA, BETA).coeffs],
                "beta,alpha": [format_scalar(c) for c in pair_p_polynomial(BETA, ALPHA).coeffs],
                "beta,beta": [format_scalar(c) for c in pair_p_polynomial(BETA, BETA).coeffs],
            },
        }
