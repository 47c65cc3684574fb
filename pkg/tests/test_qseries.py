import pytest

from qplab.errors import PreconditionError
from qplab.qseries import (
    BivariateCount,
    QSeries,
    capparelli_congruence_count,
    capparelli_difference_count,
    finite_pochhammer_inv,
    heisenberg_series,
    identity_table,
    kursag_term,
    minimal_energy,
    partitions_at_most,
    pochhammer_inv,
    product_side,
    sum_side,
)

# -- brute-force oracles -------------------------------------------------


def partitions_with_parts(n, allowed):
    """Count partitions of n into parts from `allowed` (unlimited reuse)."""
    allowed = sorted(allowed)

    def rec(remaining, max_part):
        if remaining == 0:
            return 1
        total = 0
        for p in allowed:
            if p > remaining or p > max_part:
                break
            total += rec(remaining - p, p)
        return total

    return rec(n, n)


def distinct_partitions_avoiding(n, banned_residues, modulus):
    """Count partitions of n into distinct parts avoiding the residues."""
    allowed = [s for s in range(1, n + 1) if s % modulus not in banned_residues]

    def rec(remaining, min_next):
        if remaining == 0:
            return 1
        total = 0
        for p in allowed:
            if p < min_next:
                continue
            if p > remaining:
                break
            total += rec(remaining - p, p + 1)
        return total

    return rec(n, 1)


def gap_partitions(n):
    """Enumerate the difference-condition partitions directly (ascending)."""

    def rec(remaining, last):
        if remaining == 0:
            return 1
        total = 0
        for p in range(last + 2, remaining + 1):
            if p - last >= 4 or (p + last) % 3 == 0:
                total += rec(remaining - p, p)
        return total

    if n == 0:
        return 1
    return sum(rec(n - first, first) for first in range(2, n + 1))


# -- series plumbing ------------------------------------------------------


def test_series_arithmetic_truncates_to_min_order():
    a = QSeries([1, 1, 1, 1], 3)
    b = QSeries([1, 2], 1)
    assert (a * b).order == 1
    assert (a + b).order == 1
    assert (a * b).coeffs == [1, 3]


def test_series_inverse():
    a = pochhammer_inv([0], 1, 12)  # all parts: ordinary partitions
    prod = a * a.inverse()
    assert prod == QSeries.one(12)
    with pytest.raises(PreconditionError):
        QSeries([2, 1], 1).inverse()


def test_pochhammer_inv_examples():
    f = heisenberg_series(6)
    assert f.coeffs == [1, 1, 1, 1, 1, 2, 2]
    assert pochhammer_inv([1, 5], 6, 0) == QSeries([1], 0)
    # 1/(1-q): single part size 1
    geo = pochhammer_inv([1], 6, 8)
    # parts congruent to 1 mod 6 up to 8: {1, 7}
    assert geo[1] == 1 and geo[0] == 1
    one_part = finite_pochhammer_inv(1, 1, 8)
    assert one_part.coeffs == [1] * 9
    with pytest.raises(PreconditionError):
        pochhammer_inv([1], 0, 4)


def test_heisenberg_series_against_brute_force():
    order = 25
    f = heisenberg_series(order)
    allowed = [s for s in range(1, order + 1) if s % 6 in (1, 5)]
    for n in range(order + 1):
        assert f[n] == partitions_with_parts(n, allowed)


def test_product_side_against_brute_force():
    order = 25
    prod = product_side(order)
    allowed = [
        s
        for s in range(1, order + 1)
        if s % 6 in (1, 5) or s % 12 in (2, 3, 9, 10)
    ]
    for n in range(order + 1):
        assert prod[n] == partitions_with_parts(n, allowed)
    assert prod.coeffs[:7] == [1, 1, 2, 3, 4, 6, 8]


def test_sum_side_terms():
    order = 20
    f = heisenberg_series(order)
    total, table = sum_side(order)
    # (0,0) term is F itself
    assert table.table[(0, 0)] == f
    # (1,0) term without F is q^2/(1-q): one monomial per degree >= 2
    t10 = kursag_term(1, 0, order)
    assert t10.coeffs == [0, 0] + [1] * (order - 1)
    # bivariate rows sum to the univariate series
    for n in range(order + 1):
        assert table.total(n) == total[n]


def test_sum_side_equals_product_side():
    order = 80
    total, _ = sum_side(order)
    assert total == product_side(order)


def test_bivariate_minimal_exponents():
    order = 40
    for n1 in range(4):
        for n2 in range(3):
            q = minimal_energy(n1, n2)
            if q > order:
                continue
            t = kursag_term(n1, n2, order)
            nonzero = [n for n in range(order + 1) if t[n]]
            if (n1, n2) == (0, 0):
                assert nonzero[0] == 0
            else:
                assert nonzero[0] == q


def test_capparelli_counts_examples():
    assert capparelli_congruence_count(0) == 1
    assert capparelli_congruence_count(9) == 3  # 9; 6+3; 4+3+2
    assert capparelli_congruence_count(1) == 0
    assert capparelli_difference_count(0) == 1
    assert capparelli_difference_count(9) == 3  # 9; 7+2; 6+3


def test_capparelli_counts_against_brute_force():
    for n in range(26):
        assert capparelli_congruence_count(n) == distinct_partitions_avoiding(
            n, {1, 5}, 6
        )
        assert capparelli_difference_count(n) == gap_partitions(n)


def test_capparelli_identity_small():
    for n in range(41):
        assert capparelli_congruence_count(n) == capparelli_difference_count(n)


def brute_partitions_at_most(n_parts, total, scale):
    if total % scale:
        return 0

    def rec(remaining, parts_left, max_part):
        if remaining == 0:
            return 1
        if parts_left == 0:
            return 0
        return sum(
            rec(remaining - p, parts_left - 1, p)
            for p in range(1, min(remaining, max_part) + 1)
        )

    return rec(total // scale, n_parts, total // scale)


def test_partitions_at_most():
    for n in range(5):
        assert partitions_at_most(n, 0) == 1
    for i in range(8):
        assert partitions_at_most(1, i) == 1
    assert partitions_at_most(2, 4) == 3  # 4; 3+1; 2+2
    for n_parts in range(4):
        for total in range(10):
            for scale in (1, 3):
                assert partitions_at_most(n_parts, total, scale) == brute_partitions_at_most(
                    n_parts, total, scale
                )


def test_identity_table_rows():
    rows = identity_table(12)
    for n, prod, tot, cong, diff in rows:
        assert prod == tot
        assert cong == diff


def test_bivariate_count_json():
    _, table = sum_side(10)
    js = table.to_json()
    assert js["order"] == 10
    assert "0,0" in js["table"]
