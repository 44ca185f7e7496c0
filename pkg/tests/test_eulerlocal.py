import random
from fractions import Fraction

import pytest

from busche.arithfun import MultiFunction, delta, multiplicative_convolution, of_product
from busche.catalog import lookup, make_character_mod4, make_liouville, make_power
from busche.checks import random_context
from busche.eulerlocal import (
    LocalSeries,
    ShapeError,
    compare_series,
    correction_factor_thm1,
    local_series_of,
    qk_polynomial,
    series_mul,
    verify_local_dirichlet_identity,
    verify_local_thm2_identity,
)
from busche.identities import psi_kernel
from busche.symmetric import DistinctnessViolation, complete_hom

ONE = make_power(0)


def _random_multiplicative(seed, arity):
    def local(p, e):
        if not any(e):
            return 1
        rng = random.Random(hash((seed, p) + tuple(e)))
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    return MultiFunction(arity, local, name=f"m{seed}")


def test_series_examples():
    assert local_series_of(delta(3), 5, 4) == LocalSeries.one(3, 4)
    geo = local_series_of(ONE.as_multifunction(), 7, 6)
    assert geo.coeffs == {(v,): 1 for v in range(7)}
    d2 = local_series_of(of_product(lookup("d").f, 2), 11, 3)
    assert d2.coeff((1, 1)) == 3
    with pytest.raises(ShapeError):
        local_series_of(delta(1), 2, -1)


def test_series_mul_examples():
    a = local_series_of(lookup("sigma").f, 3, 5)
    assert a * LocalSeries.one(1, 5) == a
    one_minus_u = LocalSeries(1, 5, {(0,): 1, (1,): -1})
    assert one_minus_u * local_series_of(ONE.as_multifunction(), 2, 5) == LocalSeries.one(1, 5)
    chi = make_character_mod4().as_multifunction()
    r1 = lookup("r1").f
    prod_series = local_series_of(ONE.as_multifunction(), 5, 6) * local_series_of(chi, 5, 6)
    assert prod_series == local_series_of(r1, 5, 6)
    with pytest.raises(ShapeError):
        series_mul(LocalSeries.one(1, 3), LocalSeries.one(2, 3))
    with pytest.raises(ShapeError):
        LocalSeries(2, 3, {(1,): 1})


def test_box_truncation_drops_outside_terms():
    s = LocalSeries(2, 2, {(3, 0): 5, (1, 2): 4, (0, 0): 0})
    assert s.coeffs == {(1, 2): 4}


def test_correction_factor_examples():
    d = lookup("d")
    assert correction_factor_thm1(d.f, d.gh, 3, 2, 4) == LocalSeries(2, 4, {(0, 0): 1, (1, 1): -1})
    assert correction_factor_thm1(d.f, d.gh, 3, 1, 4) == LocalSeries.one(1, 4)
    expected = {(0, 0, 0): 1, (1, 1, 0): -1, (1, 0, 1): -1, (0, 1, 1): -1, (1, 1, 1): 2}
    assert correction_factor_thm1(d.f, d.gh, 2, 3, 3).coeffs == expected


@pytest.mark.parametrize("name", ["d", "sigma", "beta", "r1", "tau"])
def test_correction_factor_equals_psi_series(name):
    sp = lookup(name, tau_bound=100)
    for r in (1, 2, 3, 4):
        psi = psi_kernel(sp.f, sp.gh, r)
        for p in (2, 3, 5, 7):
            assert correction_factor_thm1(sp.f, sp.gh, p, r, 2) == local_series_of(psi, p, 2)


@pytest.mark.parametrize("r, D", [(1, 6), (2, 5), (3, 3)])
def test_series_of_convolution_is_product(r, D):
    for seed in range(4):
        f, g = _random_multiplicative(2 * seed, r), _random_multiplicative(2 * seed + 1, r)
        fg = multiplicative_convolution(f, g)
        for p in (2, 3):
            assert local_series_of(f, p, D) * local_series_of(g, p, D) == local_series_of(fg, p, D)


@pytest.mark.parametrize("r, D", [(1, 6), (2, 6), (3, 4)])
def test_series_of_inverse_is_reciprocal(r, D):
    for seed in range(3):
        f = _random_multiplicative(100 + seed, r)
        for p in (2, 5):
            assert local_series_of(f, p, D) * local_series_of(f.inverse(), p, D) == LocalSeries.one(r, D)


@pytest.mark.parametrize(
    "name, p, r, D", [("d", 2, 2, 6), ("sigma", 3, 2, 5), ("d", 5, 3, 5), ("beta", 2, 3, 4), ("r1", 5, 2, 6)]
)
def test_local_dirichlet_identity(name, p, r, D):
    sp = lookup(name)
    rep = verify_local_dirichlet_identity(sp.f, sp.gh, p, r, D)
    assert rep and rep.compared == (D + 1) ** r


@pytest.mark.parametrize("name", ["d", "sigma", "beta", "r1"])
def test_lhs_coefficient_is_complete_homogeneous(name):
    sp = lookup(name)
    g, h = sp.factors
    for p in (2, 3, 5):
        x = [g.value_at_prime(p), h.value_at_prime(p)]
        lhs = local_series_of(of_product(sp.f, 3), p, 3)
        for e in lhs.box():
            assert lhs.coeff(e) == complete_hom(x, sum(e))


def test_local_identity_detects_wrong_gh():
    d = lookup("d")
    rep = verify_local_dirichlet_identity(d.f, lambda p: 2, 3, 2, 3)
    assert not rep
    assert rep.mismatch[0] == (1, 1)


def test_compare_reports_first_mismatch():
    a = LocalSeries(1, 3, {(0,): 1, (2,): 5})
    b = LocalSeries(1, 3, {(0,): 1, (2,): 4})
    rep = compare_series(a, b)
    assert not rep and rep.mismatch == ((2,), 5, 4)


# -- Q_k --------------------------------------------------------------------


def test_qk_examples():
    q2 = qk_polynomial([Fraction(2), Fraction(-3)])
    assert q2.coeffs == {(0, 0): 1, (1, 1): 6}
    assert qk_polynomial([Fraction(4)]) == LocalSeries.one(2, 0)
    q3 = qk_polynomial([1, 1, 1], D=3)
    assert q3.coeff((1, 1)) == -3
    assert q3.coeff((2, 2)) == 0
    # closed form (-1)^(m+n-1) e_{m+n}: e_3(1,1,1) = 1
    assert q3.coeff((1, 2)) == q3.coeff((2, 1)) == 1
    with pytest.raises(DistinctnessViolation):
        qk_polynomial([1, 1, 1], route="partial")
    with pytest.raises(ValueError):
        qk_polynomial([1, 2], route="other")


def test_qk_routes_agree():
    rng = random.Random(17)
    for _ in range(100):
        ctx = random_context(rng, rng.randint(1, 6))
        assert qk_polynomial(ctx, route="closed") == qk_polynomial(ctx, route="partial")


@pytest.mark.parametrize(
    "factors, p, D",
    [
        ([ONE, make_power(1)], 2, 6),
        ([ONE] * 4, 3, 5),
        ([ONE], 5, 4),
        ([make_liouville(), make_character_mod4(), make_power(2)], 5, 4),
    ],
)
def test_local_q_identity(factors, p, D):
    assert verify_local_thm2_identity(factors, len(factors), p, D)


def test_local_q_identity_arguments():
    with pytest.raises(ValueError):
        verify_local_thm2_identity([ONE], 2, 2, 3)
    with pytest.raises(ShapeError):
        verify_local_thm2_identity([ONE], 1, 2, 0)


def test_embed():
    s = LocalSeries(1, 2, {(0,): 1, (2,): 7})
    assert s.embed(1, 3).coeffs == {(0, 0, 0): 1, (0, 2, 0): 7}
