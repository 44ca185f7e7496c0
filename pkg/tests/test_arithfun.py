import random
from fractions import Fraction
from itertools import product

import pytest
from conftest import naive_chi4, naive_convolve, naive_divisors, naive_omega
from hypothesis import given
from hypothesis import strategies as st

from busche.arithfun import (
    ArityError,
    GeneralFunction,
    MultiFunction,
    NotInvertible,
    convolution,
    convolve,
    delta,
    eval_multiplicative,
    general_inverse,
    local_convolve,
    local_inverse,
    multiplicative_convolution,
    of_product,
    tensor,
)
from busche.catalog import lookup, make_character_mod4, make_power
from busche.factorint import divisor_values, factor
from busche.identities import psi_kernel, theta_dk_kernel


def random_general(seed, arity, nonzero_at_one=True):
    def fn(*ns):
        rng = random.Random(hash((seed,) + ns))
        v = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if nonzero_at_one and all(n == 1 for n in ns) and v == 0:
            v = Fraction(1)
        return v

    return GeneralFunction(arity, fn, name=f"rand{seed}")


ONE = make_power(0).as_multifunction()


# -- evaluation --------------------------------------------------------------


def test_delta_values():
    d2 = delta(2)
    assert eval_multiplicative(d2, [factor(1), factor(1)]) == 1
    assert eval_multiplicative(d2, [factor(2), factor(1)]) == 0
    assert d2(1, 1) == 1 and d2(1, 7) == 0


def test_psi_d_at_two_two():
    d = lookup("d")
    psi = psi_kernel(d.f, d.gh, 2)
    assert eval_multiplicative(psi, [factor(2), factor(2)]) == -1


def test_arity_mismatch():
    with pytest.raises(ArityError):
        delta(2)(1, 2, 3)
    with pytest.raises(ArityError):
        convolve(delta(1), delta(2), (1,))
    with pytest.raises(ArityError):
        local_convolve(delta(1), delta(2), 2, (1,))


def test_normalization_enforced():
    with pytest.raises(ValueError):
        MultiFunction(1, lambda p, e: 2, name="bad")


# -- convolution --------------------------------------------------------------


def test_convolve_one_one_is_divisor_count():
    one = GeneralFunction(1, lambda n: 1)
    assert convolve(one, one, (12,)) == len(naive_divisors(12)) == 6


def test_convolve_liouville_id():
    lam = GeneralFunction(1, lambda n: (-1) ** naive_omega(n))
    ident = GeneralFunction(1, lambda n: n)
    direct = 1 * 6 + (-1) * 3 + (-1) * 2 + 1 * 1
    assert convolve(lam, ident, (6,)) == direct == 2


@pytest.mark.parametrize("r", [1, 2, 3])
def test_delta_is_identity(r):
    f = random_general(7, r)
    e = delta(r)
    for ns in product(range(1, 9), repeat=r):
        assert convolve(f, e, ns) == f(*ns)
        assert convolve(e, f, ns) == f(*ns)


def test_convolve_matches_trial_division_oracle():
    f, g = random_general(1, 2), random_general(2, 2)
    for ns in product(range(1, 25), repeat=2):
        assert convolve(f, g, ns) == naive_convolve(f, g, ns)


def test_ring_axioms_on_random_triples():
    rng = random.Random(2013)
    for t in range(200):
        r = rng.choice([1, 2, 3])
        f, g, h = (random_general(1000 * t + i, r) for i in range(3))
        fg, gf = convolution(f, g), convolution(g, f)
        left, right = convolution(fg, h), convolution(f, convolution(g, h))
        for _ in range(2):
            ns = tuple(rng.randint(1, 50) for _ in range(r))
            assert fg(*ns) == gf(*ns)
            assert left(*ns) == right(*ns)


# -- prime-local computations ---------------------------------------------------


def test_local_convolve_examples():
    assert local_convolve(ONE, ONE, 2, (3,)) == 4
    chi = make_character_mod4().as_multifunction()
    assert local_convolve(ONE, chi, 5, (1,)) == naive_chi4(1) + naive_chi4(5) == 2
    assert local_convolve(ONE, chi, 5, (0,)) == 1


def _random_multiplicative(seed, arity):
    def local(p, e):
        if not any(e):
            return 1
        rng = random.Random(hash((seed, p) + tuple(e)))
        return Fraction(rng.randint(-4, 4), rng.randint(1, 2))

    return MultiFunction(arity, local, name=f"m{seed}")


@pytest.mark.parametrize("r, bound", [(1, 60), (2, 60), (3, 20)])
def test_local_convolution_agrees_with_global(r, bound):
    f, g = _random_multiplicative(11, r), _random_multiplicative(12, r)
    fg = multiplicative_convolution(f, g)
    for ns in product(range(1, bound + 1), repeat=r):
        assert fg(*ns) == convolve(f, g, ns)


def test_local_convolution_agrees_with_global_r3_sampled_to_60():
    f, g = _random_multiplicative(13, 3), _random_multiplicative(14, 3)
    fg = multiplicative_convolution(f, g)
    rng = random.Random(60)
    for _ in range(3000):
        ns = tuple(rng.randint(1, 60) for _ in range(3))
        assert fg(*ns) == convolve(f, g, ns)


def test_local_inverse_examples():
    assert local_inverse(ONE, 7, (1,)) == -1
    assert local_inverse(ONE, 7, (2,)) == 0
    assert local_inverse(ONE, 7, (0,)) == 1
    d = lookup("d")
    psi = psi_kernel(d.f, d.gh, 2)
    # hand recursion: g(1,1) = -(g(0,0) psi(1,1) + g(0,1) psi(1,0) + g(1,0) psi(0,1)) = 1
    assert local_inverse(psi, 3, (1, 1)) == 1
    assert local_inverse(psi, 3, (0, 0)) == 1


def _inverse_cases():
    d = lookup("d")
    s = lookup("sigma")
    return [
        ("one", ONE),
        ("sigma", s.f),
        ("d", d.f),
        ("psi_d", psi_kernel(d.f, d.gh, 2)),
        ("psi_sigma", psi_kernel(s.f, s.gh, 2)),
        ("theta_d3", theta_dk_kernel(3)),
    ]


@pytest.mark.parametrize("name, f", _inverse_cases())
def test_inverse_exhaustive(name, f):
    inv = f.inverse()
    e = delta(f.arity)
    for ns in product(range(1, 41), repeat=f.arity):
        assert convolve(f, inv, ns) == e(*ns), (name, ns)


def test_general_inverse():
    f = random_general(5, 2)
    g = general_inverse(f)
    e = delta(2)
    for ns in product(range(1, 13), repeat=2):
        assert convolve(f, g, ns) == e(*ns)
    zero_at_one = GeneralFunction(1, lambda n: 0 if n == 1 else 1)
    with pytest.raises(NotInvertible):
        general_inverse(zero_at_one)


def test_of_product_is_multiplicative():
    sigma = lookup("sigma").f
    s3 = of_product(sigma, 3)
    for ns in product(range(1, 31), repeat=3):
        n = ns[0] * ns[1] * ns[2]
        assert s3(*ns) == sum(divisor_values(n))


def test_tensor():
    s, d = lookup("sigma").f, lookup("d").f
    t = tensor([s, d])
    assert t(6, 12) == 12 * 6


@given(
    st.integers(min_value=1, max_value=3).flatmap(
        lambda r: st.tuples(
            st.just(r),
            st.integers(0, 10**6),
            st.lists(st.integers(0, 3), min_size=r, max_size=r),
        )
    )
)
def test_local_inverse_property(args):
    r, seed, e = args
    f = _random_multiplicative(seed, r)
    inv = f.inverse()
    total = 0
    for a in product(*(range(x + 1) for x in e)):
        total += inv.local_value(5, a) * f.local_value(5, tuple(x - y for x, y in zip(e, a)))
    assert total == (1 if not any(e) else 0)
