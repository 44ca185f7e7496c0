"""Seeded sampled checks of the symmetric-polynomial lemmas and batched
local Euler-factor checks, reported in the same format as the identity
verifiers."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .arithfun import MultiFunction
from .catalog import CompletelyMultiplicativeSpec
from .eulerlocal import verify_local_dirichlet_identity, verify_local_thm2_identity
from .report import VerificationReport, run_checks
from .symmetric import (
    SymContext,
    check_orthogonality,
    cmn_bruteforce,
    cmn_closed,
    complete_hom,
    complete_hom_partial_fractions,
)


def random_rational(rng: random.Random, span: int = 12, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_context(rng: random.Random, k: int, distinct: bool = True) -> SymContext:
    xs: list[Fraction] = []
    while len(xs) < k:
        x = random_rational(rng)
        if distinct and x in xs:
            continue
        xs.append(x)
    return SymContext(xs)


def _no_expansion(_):
    return []


def verify_cmn(seed: int = 0, samples: int = 100, kmax: int = 6) -> VerificationReport:
    """Partial-fraction c[m, n] against the closed form, 0 <= m, n <= k-1."""
    rng = random.Random(seed)
    inputs = []
    for _ in range(samples):
        k = rng.randint(1, kmax)
        ctx = random_context(rng, k)
        inputs.extend((m, n, *ctx.xs) for m in range(k) for n in range(k))
    forms = [
        (
            "cmn",
            lambda t: cmn_bruteforce(t[2:], t[0], t[1]),
            lambda t: cmn_closed(t[2:], t[0], t[1]),
            _no_expansion,
        )
    ]
    return run_checks("cmn", f"k<={kmax}, {samples} contexts, seed={seed}", inputs, forms)


def verify_orthogonality(seed: int = 0, samples: int = 20, kmax: int = 8, nmax: int = 12) -> VerificationReport:
    """sum (-1)^d e_d h_{n-d} = [n = 0] for every k <= kmax and n <= nmax."""
    rng = random.Random(seed)
    inputs = []
    for k in range(1, kmax + 1):
        for _ in range(samples):
            ctx = random_context(rng, k, distinct=False)
            inputs.extend((n, *ctx.xs) for n in range(nmax + 1))
    forms = [
        (
            "orthogonality",
            lambda t: check_orthogonality(t[1:], t[0]),
            lambda t: 1 if t[0] == 0 else 0,
            _no_expansion,
        )
    ]
    return run_checks(
        "orthogonality", f"k<={kmax}, n<={nmax}, {samples} contexts per k, seed={seed}", inputs, forms
    )


def verify_partial_fractions(seed: int = 0, samples: int = 300, kmax: int = 6, dmax: int = 10) -> VerificationReport:
    """Partial-fraction h_d against the recurrence, distinct points."""
    rng = random.Random(seed)
    inputs = []
    for _ in range(samples):
        ctx = random_context(rng, rng.randint(1, kmax))
        inputs.extend((d, *ctx.xs) for d in range(dmax + 1))
    forms = [
        (
            "partial-fractions",
            lambda t: complete_hom_partial_fractions(t[1:], t[0]),
            lambda t: complete_hom(t[1:], t[0]),
            _no_expansion,
        )
    ]
    return run_checks("partial-fractions", f"k<={kmax}, d<={dmax}, {samples} contexts, seed={seed}", inputs, forms)


def verify_two_point_h(seed: int = 0, samples: int = 50, dmax: int = 12) -> VerificationReport:
    """h_d(x, y) (x - y) = x^(d+1) - y^(d+1)."""
    rng = random.Random(seed)
    inputs = []
    for _ in range(samples):
        x, y = random_context(rng, 2).xs
        inputs.extend((d, x, y) for d in range(dmax + 1))
    forms = [
        (
            "two-point",
            lambda t: complete_hom(t[1:], t[0]) * (t[1] - t[2]),
            lambda t: t[1] ** (t[0] + 1) - t[2] ** (t[0] + 1),
            _no_expansion,
        )
    ]
    return run_checks("two-point-h", f"d<={dmax}, {samples} pairs, seed={seed}", inputs, forms)


def _local_form(check: Callable, tag: str):
    cache: dict = {}

    def run(t):
        if t not in cache:
            cache[t] = check(t)
        return cache[t]

    def side(i):
        def get(t):
            rep = run(t)
            return 0 if rep.equal else rep.mismatch[i]

        return get

    def expand(t):
        rep = run(t)
        return [] if rep.equal else [(rep.mismatch[0], 1, rep.mismatch[1] - rep.mismatch[2])]

    return (tag, side(1), side(2), expand)


def verify_local_series(
    f: MultiFunction,
    gh: Callable,
    primes: Sequence[int],
    rs: Sequence[int],
    D: int,
) -> VerificationReport:
    """Per-prime Dirichlet-series identity for f(n1...nr); input tuples are (p, r)."""
    inputs = [(p, r) for r in rs for p in primes]
    form = _local_form(lambda t: verify_local_dirichlet_identity(f, gh, t[0], t[1], D), "local")
    return run_checks(f"local-series[{f.name}]", f"r in {list(rs)}, p in {list(primes)}, D={D}", inputs, [form])


def verify_local_thm2(
    factors: Sequence[CompletelyMultiplicativeSpec], primes: Sequence[int], D: int
) -> VerificationReport:
    k = len(factors)
    inputs = [(p,) for p in primes]
    form = _local_form(lambda t: verify_local_thm2_identity(factors, k, t[0], D), "local-q")
    name = "*".join(f.name for f in factors)
    return run_checks(f"local-series-q[{name}]", f"k={k}, p in {list(primes)}, D={D}", inputs, [form])
