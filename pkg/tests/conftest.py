from fractions import Fraction
from math import gcd

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# -- independent oracles: nothing here touches the package ------------------


def naive_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def naive_gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def naive_mobius(n):
    k, p = 0, 2
    while n > 1:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            k += 1
        p += 1
    return -1 if k % 2 else 1


def naive_omega(n):
    """Number of prime factors counted with multiplicity."""
    c, p = 0, 2
    while n > 1:
        while n % p == 0:
            n //= p
            c += 1
        p += 1
    return c


def naive_chi4(n):
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def naive_dirichlet(f, g, n):
    return sum(f(d) * g(n // d) for d in naive_divisors(n))


def naive_tau(N):
    """tau(1..N) by multiplying out (1 - x^m) twenty-four times for each m."""
    poly = [1] + [0] * (N - 1)
    for m in range(1, N):
        for _ in range(24):
            for i in range(N - 1, m - 1, -1):
                poly[i] -= poly[i - m]
    return poly


def naive_convolve(f, g, ns):
    """r-variable convolution by trial division on every coordinate."""
    from itertools import product

    total = 0
    for a in product(*(naive_divisors(n) for n in ns)):
        total += f(*a) * g(*(n // d for n, d in zip(ns, a)))
    return total


__all__ = [
    "Fraction",
    "gcd",
    "naive_chi4",
    "naive_convolve",
    "naive_dirichlet",
    "naive_divisors",
    "naive_gcd",
    "naive_mobius",
    "naive_omega",
    "naive_tau",
]


# -- acceptance summary ------------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for the acceptance summary."""

    def record(number, description, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2}: {status}  {description}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
