from fractions import Fraction

import pytest

from qplab.errors import InhomogeneousInputError, PreconditionError, UnsupportedChargeError
from qplab.fock import FockVector
from qplab.lattice import ALPHA, BETA, GAMMA, pair_p_polynomial
from qplab.level3 import Level3, TensorVector, tensor_degree
from qplab.qseries import heisenberg_series
from qplab.scalars import ONE, CycScalar, cyc_pow_omega


@pytest.fixture(scope="module")
def ctx():
    return Level3()


VAC3 = TensorVector.vacuum()


def test_vacuum_and_degrees():
    assert tensor_degree(((), (), ())) == 0
    assert tensor_degree(((1,), (5,), (1, 1))) == 8
    assert VAC3.degree() == 0


def test_x1_annihilates_vacuum_for_positive_energy(ctx):
    for n in range(1, 5):
        assert ctx.x1(n, VAC3).is_zero()


def test_x1_zero_mode_is_scalar_on_vacuum(ctx):
    got = ctx.x1(0, VAC3)
    assert got == VAC3.scaled(ctx.c * 3)


def test_x2_zero_mode_is_scalar_on_vacuum(ctx):
    got = ctx.x2(0, VAC3)
    expected = ctx.c * ctx.c * ctx.p_one(ALPHA, BETA) * 6
    assert got == VAC3.scaled(expected)
    # by hand: c^2 = w/432, P_ab(1) = -6w, so the scalar is (1-w)/12
    assert expected == CycScalar(Fraction(1, 12), Fraction(-1, 12))


def test_x2_annihilation_by_grading(ctx):
    assert ctx.x2(1, VAC3).is_zero()
    assert not ctx.x2(-3, VAC3).is_zero()
    w = TensorVector.unit(((1,), (), ()))
    assert ctx.x2(2, w).is_zero()


def test_x2_requires_homogeneous_input(ctx):
    mixed = VAC3 + TensorVector.unit(((1,), (), ()))
    with pytest.raises(InhomogeneousInputError):
        ctx.x2(-1, mixed)
    assert ctx.x2(-1, mixed, decompose=True) == ctx.x2(-1, VAC3) + ctx.x2(
        -1, TensorVector.unit(((1,), (), ()))
    )


def raw_equal_argument_sum(ctx, n, w, margin):
    """Windowed raw double-series evaluation of the corrected product.

    Sums the (A, B)-coefficients of P(z1/z2) X(a;z1) X(b;z2) over A+B = n
    with A confined to a window; the window is widened by the caller until
    the value stabilizes (the corrected family is summable).
    """
    p = pair_p_polynomial(ALPHA, BETA)
    deg = max((tensor_degree(s) for s in w.terms), default=0)
    lo = n - deg - margin
    hi = deg + p.degree() + margin
    total = TensorVector()
    for a in range(lo, hi + 1):
        for k in range(p.degree() + 1):
            ck = p.coefficient(k)
            if not ck:
                continue
            inner = ctx.x_root(BETA, n - a + k, w)
            if inner:
                piece = ctx.x_root(ALPHA, a - k, inner)
                total = total + piece.scaled(ck)
    return total


def test_x2_matches_raw_double_series(ctx):
    probes = [VAC3]
    for d in range(1, 5):
        for s in ctx.graded_component_basis(d):
            probes.append(TensorVector.unit(s))
    for w in probes:
        deg = w.degree()
        for n in (-4, -2, 0, 1):
            expected = ctx.x2(n, w)
            for margin in (0, 2, 4):
                assert raw_equal_argument_sum(ctx, n, w, margin) == expected


def test_x_multi_reduces_to_x1_and_x2(ctx):
    probes = [VAC3, TensorVector.unit(((1,), (1,), ())), TensorVector.unit(((5,), (), ()))]
    for w in probes:
        for n in (-5, -2, 0):
            assert ctx.x_multi([ALPHA], n, w) == ctx.x1(n, w)
            assert ctx.x_multi([ALPHA, BETA], n, w) == ctx.x2(n, w)


def test_charge_four_vanishes_by_level_truncation(ctx):
    probes = [VAC3, TensorVector.unit(((1, 1), (), (5,)))]
    for w in probes:
        for n in (-14, -12, -9, -6, -3, 0):
            assert ctx.x_multi([ALPHA, BETA, ALPHA, BETA], n, w).is_zero()


def test_charge_three_does_not_vanish(ctx):
    got = ctx.x_multi([ALPHA, ALPHA, BETA], -6, VAC3)
    assert not got.is_zero()


def test_x_multi_guards(ctx):
    with pytest.raises(UnsupportedChargeError):
        ctx.x_multi([ALPHA] * 5, 0, VAC3)
    with pytest.raises(PreconditionError):
        ctx.x_multi([ALPHA, -ALPHA], 0, VAC3)


def test_diagonal_heisenberg_has_central_charge_three(ctx):
    probes = [VAC3, TensorVector.unit(((1,), (5,), ()))]
    from qplab.lattice import proj_pairing

    for x in (ALPHA, BETA):
        for m in (1, 5):
            expected = proj_pairing(m, x, ALPHA) * Fraction(m, 6) * 3
            for w in probes:
                comm = ctx.heis3(x, m, ctx.heis3(ALPHA, -m, w)) - ctx.heis3(
                    ALPHA, -m, ctx.heis3(x, m, w)
                )
                assert comm == w.scaled(expected)


def test_exponential_addition_law(ctx):
    """Eplus(x) Eplus(y) = Eplus(x+y) coefficient-wise on the diagonal."""
    w = TensorVector.unit(((1, 1), (5,), (1,)))
    for n in range(0, 5):
        conv = TensorVector()
        for a in range(0, n + 1):
            inner = ctx.e3_coefficient("+", BETA, n - a, w)
            if inner:
                conv = conv + ctx.e3_coefficient("+", ALPHA, a, inner)
        assert conv == ctx.e3_coefficient("+", ALPHA + BETA, n, w)


def test_e_window3_on_vacuum(ctx):
    win = ctx.e_window3("+", ALPHA, VAC3, 0, 4)
    assert win.coefficient(0) == VAC3
    assert all(win.coefficient(n) is None for n in range(1, 5))


def test_e_window3_matches_slotwise_convolution(ctx):
    w = TensorVector.unit(((1,), (1, 5), ()))
    l1 = ctx.l1
    for n in range(0, 7):
        direct = ctx.e3_coefficient("+", ALPHA, n, w)
        conv = TensorVector()
        for k0 in range(0, n + 1):
            f0 = l1.eplus_state(ALPHA, k0, (1,))
            if not f0:
                continue
            for k1 in range(0, n - k0 + 1):
                f1 = l1.eplus_state(ALPHA, k1, (1, 5))
                f2 = l1.eplus_state(ALPHA, n - k0 - k1, ())
                if not f1 or not f2:
                    continue
                for s0, c0 in f0.items():
                    for s1, c1 in f1.items():
                        for s2, c2 in f2.items():
                            conv = conv + TensorVector.unit((s0, s1, s2), c0 * c1 * c2)
        assert conv == direct


def test_graded_component_counts(ctx):
    f = heisenberg_series(10)
    cube = f * f * f
    for n in range(9):
        comp = ctx.graded_component_basis(n)
        assert len(comp) == cube[n]
        assert len(set(comp)) == len(comp)
        assert comp == sorted(comp)
    assert ctx.graded_component_basis(0) == [((), (), ())]
    assert len(ctx.graded_component_basis(1)) == 3


def test_x1_energy_minus_one_spans_heisenberg_direction(ctx):
    # X1(-1) v = 6 c * (diagonal creation at -1) v: the two vectors are
    # proportional, previewing the j = 0 filtration membership.
    lhs = ctx.x1(-1, VAC3)
    rhs = ctx.heis3(ALPHA, -1, VAC3).scaled(ctx.c * 6)
    assert lhs == rhs
