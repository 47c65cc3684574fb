"""The level-1 twisted Fock module and its operator calculus.

States are multisets of positive integers congruent to +-1 mod 6; the part
n records one application of the creation operator a(-n) for the fixed
reference root a = a1.  The scaled degree of a state is the sum of its
parts (equal to -6 times the d-eigenvalue), so degrees are nonnegative
integers and the coefficient of zeta^n in any operator series lowers the
scaled degree by n.  Monomials built from negative indices therefore raise
degree, matching the |i|-sum bookkeeping used everywhere downstream.

The two exponential series are
    Eplus(x; zeta)  = exp(6 sum_{n>0} x(n) zeta^n / n)
    Eminus(x; zeta) = exp(6 sum_{n<0} x(n) zeta^n / n)
and the basic intertwiner is the normally ordered kernel
    K(y; zeta) = Eminus(-y; zeta) Eplus(-y; zeta),
whose zeta^n coefficient applied to a fixed state is a finite exact
computation.  The vertex operator for a root x is c_x * K(x; zeta) with
c_x = (1 + w)/36 for every root in the nu-orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .lattice import ALPHA, RootVector, proj_pairing
from .scalars import ONE, OMEGA, CycScalar, format_scalar

# Normalization constant of the vertex operator, the same for every root
# in the single nu-orbit.
C_STANDARD = (ONE + OMEGA) * Fraction(1, 36)

# When True, graded operators assert their declared degree shift.
DEGREE_AUDIT = False

VACUUM_STATE = ()


def state_degree(state) -> int:
    return sum(state)


def is_valid_state(state) -> bool:
    return all(p > 0 and p % 6 in (1, 5) for p in state)


class FockVector:
    """Finite Q(w)-linear combination of Fock states."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def vacuum(cls):
        return cls({VACUUM_STATE: ONE})

    @classmethod
    def unit(cls, state, coeff=ONE):
        return cls({tuple(state): coeff}) if coeff else cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            acc = out.get(s)
            acc = c if acc is None else acc + c
            if acc:
                out[s] = acc
            else:
                out.pop(s, None)
        return FockVector(out)

    def __sub__(self, other):
        return self + other.scaled(-ONE)

    def scaled(self, c):
        if not c:
            return FockVector()
        return FockVector({s: v * c for s, v in self.terms.items()})

    def items(self):
        return self.terms.items()

    def degree(self):
        """Common scaled degree; None for the zero vector.

        Raises if the vector mixes degrees.
        """
        degs = {state_degree(s) for s in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise PreconditionError(f"inhomogeneous vector with degrees {sorted(degs)}")
        return degs.pop()

    def max_degree(self):
        return max((state_degree(s) for s in self.terms), default=0)

    def to_json(self):
        return [
            [list(s), format_scalar(c)]
            for s, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        body = " + ".join(
            f"({format_scalar(c)})|{list(s)}>" for s, c in sorted(self.terms.items())
        )
        return body or "0"


def _add_term(acc: dict, state, coeff):
    if not coeff:
        return
    cur = acc.get(state)
    cur = coeff if cur is None else cur + coeff
    if cur:
        acc[state] = cur
    else:
        del acc[state]


def _insert_part(state, part):
    out = list(state)
    # keep parts sorted
    lo, hi = 0, len(out)
    while lo < hi:
        mid = (lo + hi) // 2
        if out[mid] < part:
            lo = mid + 1
        else:
            hi = mid
    out.insert(lo, part)
    return tuple(out)


def _remove_part_once(state, part):
    out = list(state)
    out.remove(part)
    return tuple(out)


@dataclass
class LaurentWindow:
    """Coefficients of a formal series on a finite exponent window."""

    lo: int
    hi: int
    coeffs: dict

    def coefficient(self, n):
        if not self.lo <= n <= self.hi:
            raise IndexError(f"exponent {n} outside window [{self.lo}, {self.hi}]")
        return self.coeffs.get(n)


class Level1:
    """Operator calculus on the level-1 module, with per-instance caches.

    `c_alpha` may be overridden to run perturbed negative controls.
    """

    def __init__(self, c_alpha: CycScalar = C_STANDARD):
        self.c_alpha = c_alpha
        # creation coordinate and annihilation pairing per (root, n mod 6);
        # both are <x_(n), a_(-n)> since <a_(n), a_(-n)> = 1 on n = +-1.
        self._proj = {}
        self._eplus = {}
        self._eminus = {}
        self._kernel = {}

    # -- Heisenberg action ------------------------------------------------

    def _pp(self, x: RootVector, n: int) -> CycScalar:
        key = (x.key(), n % 6)
        v = self._proj.get(key)
        if v is None:
            v = proj_pairing(n, x, ALPHA)
            self._proj[key] = v
        return v

    def heis_act(self, x: RootVector, n: int, v: FockVector) -> FockVector:
        """The mode x(n): creation for n < 0, annihilation for n > 0.

        Vanishes unless n = +-1 mod 6.  The annihilation bracket constant
        is (n/6) <x_(n), a_(-n)> at level 1.
        """
        if n % 6 not in (1, 5) or not v:
            return FockVector()
        lam = self._pp(x, n)
        if not lam:
            return FockVector()
        acc = {}
        if n < 0:
            part = -n
            for s, c in v.terms.items():
                _add_term(acc, _insert_part(s, part), c * lam)
        else:
            factor = lam * Fraction(n, 6)
            for s, c in v.terms.items():
                mult = s.count(n)
                if mult:
                    _add_term(acc, _remove_part_once(s, n), c * factor * mult)
        return FockVector(acc)

    # -- exponential coefficients ------------------------------------------

    def eplus_state(self, x: RootVector, k: int, state) -> FockVector:
        """Coefficient of zeta^k (k >= 0) of Eplus(x; zeta) on one state."""
        if k == 0:
            return FockVector.unit(state)
        if k < 0 or k > state_degree(state):
            return FockVector()
        key = (x.key(), k, state)
        out = self._eplus.get(key)
        if out is not None:
            return out
        acc = FockVector()
        for j in range(1, k + 1):
            if j % 6 not in (1, 5):
                continue
            prev = self.eplus_state(x, k - j, state)
            if prev:
                acc = acc + self.heis_act(x, j, prev).scaled(CycScalar(6))
        out = acc.scaled(CycScalar(Fraction(1, k)))
        self._eplus[key] = out
        return out

    def eminus_state(self, x: RootVector, k: int, state) -> FockVector:
        """Coefficient of zeta^(-k) (k >= 0) of Eminus(x; zeta) on one state."""
        if k == 0:
            return FockVector.unit(state)
        if k < 0:
            return FockVector()
        key = (x.key(), k, state)
        out = self._eminus.get(key)
        if out is not None:
            return out
        acc = FockVector()
        for j in range(1, k + 1):
            if j % 6 not in (1, 5):
                continue
            prev = self.eminus_state(x, k - j, state)
            if prev:
                acc = acc + self.heis_act(x, -j, prev).scaled(CycScalar(-6))
        out = acc.scaled(CycScalar(Fraction(1, k)))
        self._eminus[key] = out
        return out

    def _apply_statewise(self, fn, v: FockVector) -> FockVector:
        acc = {}
        for s, c in v.terms.items():
            piece = fn(s)
            if piece:
                for t, d in piece.terms.items():
                    _add_term(acc, t, c * d)
        return FockVector(acc)

    def eplus(self, x: RootVector, k: int, v: FockVector) -> FockVector:
        return self._apply_statewise(lambda s: self.eplus_state(x, k, s), v)

    def eminus(self, x: RootVector, k: int, v: FockVector) -> FockVector:
        return self._apply_statewise(lambda s: self.eminus_state(x, k, s), v)

    def e_coefficient(self, sign: str, x: RootVector, n: int, v: FockVector) -> FockVector:
        """Coefficient of zeta^n of Eplus/Eminus(x; zeta) applied to v."""
        if sign == "+":
            return self.eplus(x, n, v) if n >= 0 else FockVector()
        if sign == "-":
            return self.eminus(x, -n, v) if n <= 0 else FockVector()
        raise PreconditionError("sign must be '+' or '-'")

    def e_window(self, sign: str, x: RootVector, v: FockVector, lo: int, hi: int) -> LaurentWindow:
        if lo > hi:
            raise PreconditionError("window requires lo <= hi")
        coeffs = {}
        for n in range(lo, hi + 1):
            c = self.e_coefficient(sign, x, n, v)
            if c:
                coeffs[n] = c
        return LaurentWindow(lo, hi, coeffs)

    # -- normally ordered kernel and vertex operator -----------------------

    def kernel_state(self, y: RootVector, n: int, state) -> FockVector:
        """Coefficient of zeta^n of Eminus(-y;zeta) Eplus(-y;zeta) on a state."""
        d = state_degree(state)
        if n > d:
            return FockVector()
        key = (y.key(), n, state)
        out = self._kernel.get(key)
        if out is not None:
            return out
        my = -y
        acc = FockVector()
        for k in range(max(0, n), d + 1):
            up = self.eplus_state(my, k, state)
            if up:
                acc = acc + self.eminus(my, k - n, up)
        self._kernel[key] = acc
        if DEGREE_AUDIT and acc:
            assert acc.degree() == d - n
        return acc

    def kernel(self, y: RootVector, n: int, v: FockVector) -> FockVector:
        return self._apply_statewise(lambda s: self.kernel_state(y, n, s), v)

    def x_level1(self, x: RootVector, n: int, v: FockVector) -> FockVector:
        """Coefficient of zeta^n of the level-1 vertex operator for root x."""
        if not x.is_root():
            raise PreconditionError(f"{x} is not a root")
        return self.kernel(x, n, v).scaled(self.c_alpha)
