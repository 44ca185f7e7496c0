"""Integer factorization and divisor enumeration.

Factorization uses a smallest-prime-factor table up to a configurable
bound and falls back to trial division above it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _cartesian
from math import isqrt

import numpy as np

DEFAULT_SIEVE_BOUND = 10**6


@dataclass(frozen=True, order=False)
class FactoredNat:
    """A positive integer stored as ``((p1, e1), (p2, e2), ...)`` with p1 < p2 < ..."""

    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d):
        items = tuple(sorted((int(p), int(e)) for p, e in d.items() if e))
        for p, e in items:
            if e < 0 or not is_prime(p):
                raise ValueError(f"invalid prime power {p}^{e}")
        return cls(items)

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p**e
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __int__(self):
        return self.value

    def __repr__(self):
        body = ", ".join(f"{p}:{e}" for p, e in self.factors)
        return f"FactoredNat({{{body}}})"


class Sieve:
    """Smallest-prime-factor table; built on first use, read-only afterwards."""

    def __init__(self, bound: int = DEFAULT_SIEVE_BOUND):
        if bound < 2:
            raise ValueError("sieve bound must be at least 2")
        self.bound = bound
        self._spf: list[int] | None = None
        self._lock = threading.Lock()

    def _build(self) -> list[int]:
        n = self.bound
        spf = np.zeros(n + 1, dtype=np.int64)
        for p in range(2, isqrt(n) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
                spf[p] = p
        idx = np.arange(n + 1, dtype=np.int64)
        unset = spf == 0
        spf[unset] = idx[unset]
        return spf.tolist()

    @property
    def spf(self) -> list[int]:
        if self._spf is None:
            with self._lock:
                if self._spf is None:
                    self._spf = self._build()
        return self._spf

    def factor(self, n: int) -> dict[int, int]:
        out: dict[int, int] = {}
        if n > self.bound:
            n = _trial_divide(n, out, self.bound)
        spf = self.spf
        while n > 1:
            p = spf[n]
            n //= p
            out[p] = out.get(p, 0) + 1
        return out


def _trial_divide(n: int, out: dict[int, int], stop: int) -> int:
    """Strip prime factors of n until the cofactor is at most `stop`."""
    d = 2
    while n > stop and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out[d] = e
        d += 1 if d == 2 else 2
    if n > stop:
        # remaining cofactor has no divisor <= sqrt, so it is prime
        out[n] = out.get(n, 0) + 1
        n = 1
    return n


_default_sieve = Sieve()


def set_default_sieve(sieve: Sieve) -> None:
    global _default_sieve
    _default_sieve = sieve


def factor(n: int) -> FactoredNat:
    """Factor a positive integer; raises ``ValueError`` for n < 1."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factor() needs a positive integer, got {n}")
    return FactoredNat(tuple(sorted(_default_sieve.factor(n).items())))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= _default_sieve.bound:
        return _default_sieve.spf[n] == n
    return _default_sieve.factor(n) == {n: 1}


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def divisors(n: FactoredNat) -> list[FactoredNat]:
    """All divisors of n in ascending numeric order."""
    ranges = [range(e + 1) for _, e in n.factors]
    ps = n.primes()
    out = []
    for exps in _cartesian(*ranges):
        out.append(FactoredNat(tuple((p, e) for p, e in zip(ps, exps) if e)))
    out.sort(key=lambda f: f.value)
    return out


@lru_cache(maxsize=1 << 16)
def divisor_values(n: int) -> tuple[int, ...]:
    """Divisors of a plain integer, ascending."""
    return tuple(d.value for d in divisors(factor(n)))


def gcd_factored(a: FactoredNat, b: FactoredNat) -> FactoredNat:
    bd = b.as_dict()
    return FactoredNat(tuple((p, min(e, bd[p])) for p, e in a.factors if p in bd))
