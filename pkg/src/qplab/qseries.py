"""Exact truncated power series and the partition counts they package.

All series here have arbitrary-precision integer coefficients and an
explicit inclusive truncation order.  Mixed-order arithmetic truncates to
the smaller order; silent precision loss is the classic q-series bug, so
the order always travels with the value.
"""

from __future__ import annotations

from .errors import PreconditionError


class QSeries:
    """Integer power series truncated at `order` (inclusive)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise PreconditionError("order must be nonnegative")
        cs = cs[: order + 1] + [0] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def monomial(cls, k, order):
        c = [0] * (order + 1)
        if 0 <= k <= order:
            c[k] = 1
        return cls(c, order)

    def __getitem__(self, n):
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, QSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def agrees_with(self, other) -> bool:
        """Coefficient-wise equality up to the smaller order."""
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __add__(self, other):
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other):
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return QSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q^k (k >= 0), keeping the order."""
        return QSeries([0] * k + self.coeffs, self.order)

    def inverse(self):
        """Inverse of a series with constant term +-1, by the standard
        coefficient recurrence."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise PreconditionError("inversion requires constant term +-1")
        out = [0] * (self.order + 1)
        out[0] = c0
        for n in range(1, self.order + 1):
            s = 0
            for i in range(1, n + 1):
                if self.coeffs[i]:
                    s += self.coeffs[i] * out[n - i]
            out[n] = -c0 * s
        return QSeries(out, self.order)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[: min(8, self.order + 1)])
        return f"QSeries([{head}{', ...' if self.order >= 8 else ''}]; order={self.order})"


def _mul_geometric(coeffs, part):
    """In-place multiply by 1/(1 - q^part)."""
    for i in range(part, len(coeffs)):
        coeffs[i] += coeffs[i - part]


def pochhammer_inv(residues, modulus, order) -> QSeries:
    """Product over all part sizes s >= 1 with s mod `modulus` in `residues`
    of 1/(1 - q^s), truncated at `order`.

    Coefficient of q^n counts partitions of n into such parts.
    """
    if modulus <= 0:
        raise PreconditionError("modulus must be positive")
    rset = {r % modulus for r in residues}
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for s in range(1, order + 1):
        if s % modulus in rset:
            _mul_geometric(coeffs, s)
    return QSeries(coeffs, order)


def heisenberg_series(order) -> QSeries:
    """F: partitions into parts = +-1 mod 6 (the graded dimension of the
    level-1 twisted module)."""
    return pochhammer_inv((1, 5), 6, order)


def product_side(order) -> QSeries:
    """Partitions into parts = 1,5 mod 6 or = 2,3,9,10 mod 12, unlimited
    multiplicity.

    This is the graded dimension of the level-3 module under the principal
    grading; the basis enumeration must reproduce it coefficient-wise.
    """
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for s in range(1, order + 1):
        if s % 6 in (1, 5) or s % 12 in (2, 3, 9, 10):
            _mul_geometric(coeffs, s)
    return QSeries(coeffs, order)


def finite_pochhammer_inv(scale, n, order) -> QSeries:
    """1/((q^scale; q^scale)_n): partitions into parts scale, 2*scale, ...,
    n*scale."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for k in range(1, n + 1):
        if k * scale > order:
            break
        _mul_geometric(coeffs, k * scale)
    return QSeries(coeffs, order)


def minimal_energy(n1, n2) -> int:
    """Least degree of a charge-(n1, n2) quasi-particle product meeting the
    gap and boundary constraints: 2*n1^2 + 6*n1*n2 + 6*n2^2."""
    return 2 * n1 * n1 + 6 * n1 * n2 + 6 * n2 * n2


def kursag_term(n1, n2, order) -> QSeries:
    """q^(2n1^2+6n1n2+6n2^2) / ((q;q)_n1 (q^3;q^3)_n2), truncated.

    The F-free bivariate term: its coefficients count quasi-particle
    monomials of color-type (n1, n2) by degree.
    """
    q = minimal_energy(n1, n2)
    if q > order:
        return QSeries([0], order)
    t = finite_pochhammer_inv(1, n1, order) * finite_pochhammer_inv(3, n2, order)
    return t.shift(q)


class BivariateCount:
    """Per color-type coefficient table, indexed by (degree, (n1, n2))."""

    def __init__(self, order):
        self.order = order
        self.table = {}

    def set_series(self, n1, n2, series: QSeries):
        self.table[(n1, n2)] = series

    def count(self, n, n1, n2) -> int:
        s = self.table.get((n1, n2))
        return s[n] if s is not None and n <= s.order else 0

    def color_types(self):
        return sorted(self.table)

    def total(self, n) -> int:
        return sum(self.count(n, n1, n2) for (n1, n2) in self.table)

    def to_json(self):
        return {
            "order": self.order,
            "table": {f"{n1},{n2}": s.coeffs for (n1, n2), s in sorted(self.table.items())},
        }


def sum_side(order) -> tuple[QSeries, BivariateCount]:
    """The positive double-sum side at x = 1, together with the per
    color-type contribution table (each entry already multiplied by F).

    Color-types are cut off by minimal energy <= order.
    """
    f = heisenberg_series(order)
    total = QSeries([0], order)
    table = BivariateCount(order)
    n1 = 0
    while minimal_energy(n1, 0) <= order:
        n2 = 0
        while minimal_energy(n1, n2) <= order:
            contrib = f * kursag_term(n1, n2, order)
            table.set_series(n1, n2, contrib)
            total = total + contrib
            n2 += 1
        n1 += 1
    return total, table


def capparelli_congruence_count(n) -> int:
    """Partitions of n into distinct parts with no part = +-1 mod 6."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    for s in range(2, n + 1):
        if s % 6 in (1, 5):
            continue
        for i in range(n, s - 1, -1):
            coeffs[i] += coeffs[i - s]
    return coeffs[n]


def capparelli_difference_count(n) -> int:
    """Partitions of n with parts >= 2, adjacent difference >= 2, and
    difference >= 4 unless the sum of the adjacent parts is divisible by 3."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    memo = {}

    def rest(remaining, last):
        if remaining == 0:
            return 1
        key = (remaining, last)
        if key in memo:
            return memo[key]
        total = 0
        p = last + 2
        while p <= remaining:
            if p - last >= 4 or (p + last) % 3 == 0:
                total += rest(remaining - p, p)
            p += 1
        memo[key] = total
        return total

    total = 1 if n == 0 else 0
    for first in range(2, n + 1):
        total += rest(n - first, first)
    return total


def partitions_at_most(n_parts, total, scale=1) -> int:
    """Partitions of `total` into at most `n_parts` parts, every part a
    positive multiple of `scale`."""
    if n_parts < 0 or total < 0 or scale <= 0:
        raise PreconditionError("arguments must be nonnegative (scale positive)")
    if total % scale:
        return 0
    t = total // scale
    # partitions into at most n parts == partitions into parts of size <= n
    coeffs = [0] * (t + 1)
    coeffs[0] = 1
    for part in range(1, min(n_parts, t) + 1):
        _mul_geometric(coeffs, part)
    return coeffs[t]


def identity_table(order):
    """Rows (n, product_side, sum_side, congruence_count, difference_count)."""
    prod = product_side(order)
    total, _ = sum_side(order)
    rows = []
    for n in range(order + 1):
        rows.append(
            (
                n,
                prod[n],
                total[n],
                capparelli_congruence_count(n),
                capparelli_difference_count(n),
            )
        )
    return rows
