"""The level-3 ambient space: triple tensors of the level-1 module.

All operators act through the diagonal coproduct: Heisenberg modes and
exponential series act slot-wise (the exponentials multiplicatively), and
the charge-r quasi-particle operators are evaluated by distributing their
r vertex factors over the three slots.  Multiplying by the correction
polynomial and passing to equal arguments collapses every same-slot pair
by an exact polynomial cancellation whose value at 1 is zero for roots
drawn from {alpha, beta}; what survives are assignments of the factors to
pairwise distinct slots, each contributing a product of slot-local
normally ordered kernels with an explicit constant.  In particular charge
4 vanishes identically here, which is the expected level truncation.
"""

from __future__ import annotations

from itertools import product as iproduct

from .errors import (
    InhomogeneousInputError,
    PreconditionError,
    UnsupportedChargeError,
)
from .fock import FockVector, LaurentWindow, Level1, state_degree
from .lattice import (
    ALPHA,
    BETA,
    RootVector,
    pair,
    pair_fplus_polynomial,
    pair_p_polynomial,
)
from .scalars import ONE, CycScalar, format_scalar

VACUUM3 = ((), (), ())


def tensor_degree(tstate) -> int:
    return state_degree(tstate[0]) + state_degree(tstate[1]) + state_degree(tstate[2])


class TensorVector:
    """Finite Q(w)-linear combination of triple Fock states."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def vacuum(cls):
        return cls({VACUUM3: ONE})

    @classmethod
    def unit(cls, tstate, coeff=ONE):
        return cls({tuple(tstate): coeff}) if coeff else cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorVector) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            acc = out.get(s)
            acc = c if acc is None else acc + c
            if acc:
                out[s] = acc
            else:
                out.pop(s, None)
        return TensorVector(out)

    def __sub__(self, other):
        return self + other.scaled(-ONE)

    def scaled(self, c):
        if not c:
            return TensorVector()
        return TensorVector({s: v * c for s, v in self.terms.items()})

    def items(self):
        return self.terms.items()

    def degree(self):
        degs = {tensor_degree(s) for s in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousInputError(
                f"inhomogeneous tensor vector with degrees {sorted(degs)}"
            )
        return degs.pop()

    def homogeneous_parts(self):
        parts = {}
        for s, c in self.terms.items():
            parts.setdefault(tensor_degree(s), {})[s] = c
        return {d: TensorVector(t) for d, t in sorted(parts.items())}

    def to_json(self):
        return [
            [[list(slot) for slot in s], format_scalar(c)]
            for s, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        body = " + ".join(
            f"({format_scalar(c)})|{[list(x) for x in s]}>"
            for s, c in sorted(self.terms.items())
        )
        return body or "0"


def _add_term(acc, state, coeff):
    cur = acc.get(state)
    cur = coeff if cur is None else cur + coeff
    if cur:
        acc[state] = cur
    else:
        del acc[state]


def _partitions_pm1(n, cache={0: [()]}):
    """Sorted part-tuples with parts = +-1 mod 6 summing to n."""
    if n in cache:
        return cache[n]
    out = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            out.append(tuple(reversed(acc)))
            return
        p = min(remaining, max_part)
        while p >= 1:
            if p % 6 in (1, 5):
                acc.append(p)
                rec(remaining - p, p, acc)
                acc.pop()
            p -= 1

    rec(n, n, [])
    out.sort()
    cache[n] = out
    return out


class Level3:
    """Diagonal operator calculus on the triple tensor space."""

    def __init__(self, level1: Level1 | None = None):
        self.l1 = level1 if level1 is not None else Level1()
        self.c = self.l1.c_alpha
        self._p_at_one = {}
        self._fplus_at_one = {}
        self._x2_cache = {}
        self._eplus3 = {}
        self._eminus3 = {}
        self._component_cache = {}

    # -- pair constants ----------------------------------------------------

    def p_one(self, x: RootVector, y: RootVector) -> CycScalar:
        key = (x.key(), y.key())
        v = self._p_at_one.get(key)
        if v is None:
            v = pair_p_polynomial(x, y)(ONE)
            self._p_at_one[key] = v
        return v

    def fplus_one(self, x: RootVector, y: RootVector) -> CycScalar:
        key = (x.key(), y.key())
        v = self._fplus_at_one.get(key)
        if v is None:
            v = pair_fplus_polynomial(x, y)(ONE)
            self._fplus_at_one[key] = v
        return v

    # -- slot plumbing -----------------------------------------------------

    @staticmethod
    def _place(acc, tstate, slot_vectors, coeff):
        """Accumulate coeff * (product of per-slot replacement vectors)."""
        states = [tstate]
        coeffs = [coeff]
        for i, fv in slot_vectors:
            new_states, new_coeffs = [], []
            for st, c in zip(states, coeffs):
                for s, d in fv.terms.items():
                    new_states.append(st[:i] + (s,) + st[i + 1 :])
                    new_coeffs.append(c * d)
            states, coeffs = new_states, new_coeffs
        for st, c in zip(states, coeffs):
            _add_term(acc, st, c)

    def _statewise(self, fn, w: TensorVector) -> TensorVector:
        acc = {}
        for tstate, coeff in w.terms.items():
            piece = fn(tstate)
            if piece:
                for s, c in piece.terms.items():
                    _add_term(acc, s, coeff * c)
        return TensorVector(acc)

    # -- diagonal Heisenberg and exponentials --------------------------------

    def heis3(self, x: RootVector, n: int, w: TensorVector) -> TensorVector:
        acc = {}
        for tstate, coeff in w.terms.items():
            for i in range(3):
                piece = self.l1.heis_act(x, n, FockVector.unit(tstate[i]))
                if piece:
                    self._place(acc, tstate, [(i, piece)], coeff)
        return TensorVector(acc)

    def eplus3_state(self, x: RootVector, k: int, tstate) -> TensorVector:
        if k == 0:
            return TensorVector.unit(tstate)
        if k < 0 or k > tensor_degree(tstate):
            return TensorVector()
        key = (x.key(), k, tstate)
        out = self._eplus3.get(key)
        if out is not None:
            return out
        acc = {}
        d0, d1 = state_degree(tstate[0]), state_degree(tstate[1])
        for k0 in range(0, min(k, d0) + 1):
            f0 = self.l1.eplus_state(x, k0, tstate[0])
            if not f0:
                continue
            for k1 in range(0, min(k - k0, d1) + 1):
                f1 = self.l1.eplus_state(x, k1, tstate[1])
                if not f1:
                    continue
                f2 = self.l1.eplus_state(x, k - k0 - k1, tstate[2])
                if not f2:
                    continue
                self._place(acc, tstate, [(0, f0), (1, f1), (2, f2)], ONE)
        out = TensorVector(acc)
        self._eplus3[key] = out
        return out

    def eminus3_state(self, x: RootVector, k: int, tstate) -> TensorVector:
        """Coefficient of zeta^(-k), k >= 0."""
        if k == 0:
            return TensorVector.unit(tstate)
        if k < 0:
            return TensorVector()
        key = (x.key(), k, tstate)
        out = self._eminus3.get(key)
        if out is not None:
            return out
        acc = {}
        for k0 in range(0, k + 1):
            f0 = self.l1.eminus_state(x, k0, tstate[0])
            for k1 in range(0, k - k0 + 1):
                f1 = self.l1.eminus_state(x, k1, tstate[1])
                f2 = self.l1.eminus_state(x, k - k0 - k1, tstate[2])
                self._place(acc, tstate, [(0, f0), (1, f1), (2, f2)], ONE)
        out = TensorVector(acc)
        self._eminus3[key] = out
        return out

    def e3_coefficient(self, sign: str, x: RootVector, n: int, w: TensorVector) -> TensorVector:
        if sign == "+":
            if n < 0:
                return TensorVector()
            return self._statewise(lambda s: self.eplus3_state(x, n, s), w)
        if sign == "-":
            if n > 0:
                return TensorVector()
            return self._statewise(lambda s: self.eminus3_state(x, -n, s), w)
        raise PreconditionError("sign must be '+' or '-'")

    def e_window3(self, sign: str, x: RootVector, w: TensorVector, lo: int, hi: int) -> LaurentWindow:
        if lo > hi:
            raise PreconditionError("window requires lo <= hi")
        coeffs = {}
        for n in range(lo, hi + 1):
            c = self.e3_coefficient(sign, x, n, w)
            if c:
                coeffs[n] = c
        return LaurentWindow(lo, hi, coeffs)

    # -- quasi-particle operators -------------------------------------------

    def x_root_state(self, x: RootVector, n: int, tstate) -> TensorVector:
        """Diagonal vertex operator coefficient for any root x."""
        acc = {}
        for i in range(3):
            piece = self.l1.kernel_state(x, n, tstate[i])
            if piece:
                self._place(acc, tstate, [(i, piece)], self.c)
        return TensorVector(acc)

    def x_root(self, x: RootVector, n: int, w: TensorVector) -> TensorVector:
        if not x.is_root():
            raise PreconditionError(f"{x} is not a root")
        return self._statewise(lambda s: self.x_root_state(x, n, s), w)

    def x1(self, n: int, w: TensorVector) -> TensorVector:
        return self.x_root(ALPHA, n, w)

    def x2_state(self, n: int, tstate) -> TensorVector:
        key = (n, tstate)
        out = self._x2_cache.get(key)
        if out is not None:
            return out
        const = self.c * self.c * self.p_one(ALPHA, BETA)
        degs = [state_degree(s) for s in tstate]
        acc = {}
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for b in range(n - degs[i], degs[j] + 1):
                    fj = self.l1.kernel_state(BETA, b, tstate[j])
                    if not fj:
                        continue
                    fi = self.l1.kernel_state(ALPHA, n - b, tstate[i])
                    if not fi:
                        continue
                    self._place(acc, tstate, [(i, fi), (j, fj)], const)
        out = TensorVector(acc)
        self._x2_cache[key] = out
        return out

    def x2(self, n: int, w: TensorVector, decompose: bool = False) -> TensorVector:
        """Charge-2 quasi-particle coefficient (the equal-argument limit of
        the corrected two-factor product).

        Same-slot contributions vanish exactly (the corrected contraction
        polynomial is zero at 1), so only the six cross-slot assignments
        contribute, each a finite sum.
        """
        if not decompose:
            w.degree()  # raises InhomogeneousInputError when mixed
        return self._statewise(lambda s: self.x2_state(n, s), w)

    def x_multi(self, deltas, n: int, w: TensorVector, decompose: bool = False) -> TensorVector:
        """Charge-r quasi-particle coefficient for roots from {alpha, beta}.

        Factors are distributed over the slots; an assignment putting two
        factors in one slot contributes the same-slot collapse constant
        (zero for these roots), and cross-slot pairs contribute P at 1.
        Charge 4 therefore vanishes identically on the triple tensor.
        """
        deltas = tuple(deltas)
        r = len(deltas)
        if r == 0 or r > 4:
            raise UnsupportedChargeError(f"charge {r} outside supported range 1..4")
        for i, di in enumerate(deltas):
            for dj in deltas[i + 1 :]:
                if pair(di, dj) < 0:
                    raise PreconditionError("x_multi requires nonnegative pairings")
        if not decompose:
            w.degree()

        assignments = []
        for g in iproduct(range(3), repeat=r):
            const = ONE
            for k in range(r):
                for l in range(k + 1, r):
                    if g[k] == g[l]:
                        const = const * self.fplus_one(deltas[k], deltas[l])
                    else:
                        const = const * self.p_one(deltas[k], deltas[l])
                    if not const:
                        break
                if not const:
                    break
            if const:
                etas = []
                for slot in range(3):
                    e = RootVector(0, 0)
                    occupied = False
                    for k in range(r):
                        if g[k] == slot:
                            e = e + deltas[k]
                            occupied = True
                    etas.append(e if occupied else None)
                assignments.append((const, etas))

        cr = ONE
        for _ in range(r):
            cr = cr * self.c

        def per_state(tstate):
            degs = [state_degree(s) for s in tstate]
            acc = {}
            for const, etas in assignments:
                caps = [degs[i] if etas[i] is not None else 0 for i in range(3)]
                for m0 in range(n - caps[1] - caps[2], caps[0] + 1):
                    f0 = (
                        self.l1.kernel_state(etas[0], m0, tstate[0])
                        if etas[0] is not None
                        else (FockVector.unit(tstate[0]) if m0 == 0 else None)
                    )
                    if not f0:
                        continue
                    for m1 in range(n - m0 - caps[2], caps[1] + 1):
                        m2 = n - m0 - m1
                        if m2 > caps[2]:
                            continue
                        f1 = (
                            self.l1.kernel_state(etas[1], m1, tstate[1])
                            if etas[1] is not None
                            else (FockVector.unit(tstate[1]) if m1 == 0 else None)
                        )
                        if not f1:
                            continue
                        f2 = (
                            self.l1.kernel_state(etas[2], m2, tstate[2])
                            if etas[2] is not None
                            else (FockVector.unit(tstate[2]) if m2 == 0 else None)
                        )
                        if not f2:
                            continue
                        self._place(
                            acc, tstate, [(0, f0), (1, f1), (2, f2)], cr * const
                        )
            return TensorVector(acc)

        return self._statewise(per_state, w)

    # -- graded components ---------------------------------------------------

    def graded_component_basis(self, n: int):
        """All tensor states of scaled degree n, lexicographically ordered."""
        if n < 0:
            raise PreconditionError("degree must be nonnegative")
        cached = self._component_cache.get(n)
        if cached is not None:
            return cached
        out = []
        for d0 in range(n + 1):
            for d1 in range(n - d0 + 1):
                d2 = n - d0 - d1
                for s0 in _partitions_pm1(d0):
                    for s1 in _partitions_pm1(d1):
                        for s2 in _partitions_pm1(d2):
                            out.append((s0, s1, s2))
        out.sort()
        self._component_cache[n] = out
        return out
