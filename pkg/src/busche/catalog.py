"""Concrete arithmetic functions: completely multiplicative building blocks,
their convolutions, the Piltz divisor functions and Ramanujan's tau."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Callable, NamedTuple, Sequence

from .arithfun import MultiFunction, exact
from .factorint import factor
from .symmetric import complete_hom_all

DEFAULT_TAU_BOUND = 1000


@dataclass(frozen=True)
class CompletelyMultiplicativeSpec:
    """g with g(p^v) = g(p)^v, described by its values at primes."""

    name: str
    value_at_prime: Callable[[int], Rational] = field(compare=False)

    def __call__(self, n: int) -> Rational:
        v = 1
        for p, e in factor(n).factors:
            v *= self.value_at_prime(p) ** e
        return exact(v)

    def local(self, p: int, nu: int) -> Rational:
        return exact(self.value_at_prime(p) ** nu)

    def as_multifunction(self) -> MultiFunction:
        return MultiFunction(
            1, lambda p, e: self.local(p, e[0]), name=self.name, completely_multiplicative=True
        )


def make_power(k: int) -> CompletelyMultiplicativeSpec:
    """id_k(n) = n^k for integer k; k = 0 is the constant function 1."""
    k = int(k)
    if k == 0:
        return CompletelyMultiplicativeSpec("1", lambda p: 1)
    if k > 0:
        return CompletelyMultiplicativeSpec("id" if k == 1 else f"id_{k}", lambda p: p**k)
    return CompletelyMultiplicativeSpec(f"id_{k}", lambda p: Fraction(1, p**-k))


def make_liouville() -> CompletelyMultiplicativeSpec:
    return CompletelyMultiplicativeSpec("lambda", lambda p: -1)


def _chi4(p: int) -> int:
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def make_character_mod4() -> CompletelyMultiplicativeSpec:
    return CompletelyMultiplicativeSpec("chi4", _chi4)


def make_convolution_product(
    factors: Sequence[CompletelyMultiplicativeSpec], name: str | None = None
) -> MultiFunction:
    """F = f_1 * ... * f_k with F(p^v) = h_v(f_1(p), ..., f_k(p))."""
    factors = tuple(factors)
    if not factors:
        raise ValueError("need at least one factor")

    def local(p, e):
        xs = [f.value_at_prime(p) for f in factors]
        return complete_hom_all(xs, e[0])[e[0]]

    return MultiFunction(1, local, name=name or "*".join(f.name for f in factors))


def make_specially_multiplicative(
    g: CompletelyMultiplicativeSpec, h: CompletelyMultiplicativeSpec, name: str | None = None
) -> MultiFunction:
    return make_convolution_product((g, h), name=name)


def make_dk(k: int) -> MultiFunction:
    """Piltz divisor function: d_k(p^v) = C(v + k - 1, k - 1)."""
    if k < 1:
        raise ValueError("d_k needs k >= 1")
    return MultiFunction(1, lambda p, e: comb(e[0] + k - 1, k - 1), name=f"d_{k}")


# -- Ramanujan tau ---------------------------------------------------------


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Evaluate sum c_i X^i at X = 2^(8*nbytes) for signed c_i."""
    bits = 8 * nbytes
    mod = 1 << bits
    unsigned = b"".join((c % mod).to_bytes(nbytes, "little") for c in coeffs)
    borrow = b"".join((1 if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(unsigned, "little") - (int.from_bytes(borrow, "little") << bits)


def mul_truncated(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First n coefficients of a*b for integer polynomials (Kronecker substitution)."""
    a, b = list(a[:n]), list(b[:n])
    if not a or not b:
        return [0] * n
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    z = _pack(a, nbytes) * _pack(b, nbytes)
    m = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    # shift every digit into [0, 2^bits) so the bytes can be sliced directly
    z += int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * m, "little")
    raw = z.to_bytes(m * nbytes, "little")
    out = [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(min(m, n))
    ]
    return out + [0] * (n - len(out))


def euler_function_coeffs(n: int) -> list[int]:
    """Coefficients of prod_{m>=1} (1 - x^m) up to x^(n-1), from the pentagonal numbers."""
    c = [0] * n
    k = 0
    while True:
        done = True
        for j in ((k, -k) if k else (0,)):
            g = j * (3 * j - 1) // 2
            if g < n:
                c[g] = -1 if j % 2 else 1
                done = False
        if done:
            break
        k += 1
    return c


@dataclass(frozen=True)
class TauTable:
    N: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"tau({n}) outside table bound {self.N}")
        return self.values[n - 1]

    def __len__(self):
        return self.N


@lru_cache(maxsize=8)
def tau_table(N: int = DEFAULT_TAU_BOUND) -> TauTable:
    """tau(1..N) as coefficients of x * prod (1 - x^m)^24."""
    if N < 1:
        raise ValueError("tau table bound must be >= 1")
    e1 = euler_function_coeffs(N)
    e2 = mul_truncated(e1, e1, N)
    e4 = mul_truncated(e2, e2, N)
    e8 = mul_truncated(e4, e4, N)
    e16 = mul_truncated(e8, e8, N)
    e24 = mul_truncated(e16, e8, N)
    return TauTable(N, tuple(e24))


class TableBoundError(IndexError):
    pass


def tau_as_specially_multiplicative(table: TauTable) -> MultiFunction:
    def local(p, e):
        q = p ** e[0]
        if q > table.N:
            raise TableBoundError(f"tau({p}^{e[0]}) needs a table bound of at least {q}, have {table.N}")
        return table[q]

    return MultiFunction(1, local, name="tau")


def tau_pair_product(p: int) -> int:
    """g1(p) g2(p) = p^11 for the (non-rational) factors of tau."""
    return p**11


# -- named lookup ----------------------------------------------------------


class Special(NamedTuple):
    """A catalog function with the data the identity engines need.

    ``gh`` gives g(p)h(p) when f = g*h is specially multiplicative (else None);
    ``factors`` lists completely multiplicative f_i with f = f_1*...*f_k when known.
    """

    f: MultiFunction
    gh: Callable[[int], Rational] | None
    factors: tuple[CompletelyMultiplicativeSpec, ...] | None


def _pair(g, h, name):
    return Special(
        make_specially_multiplicative(g, h, name=name),
        lambda p: exact(g.value_at_prime(p) * h.value_at_prime(p)),
        (g, h),
    )


_ZERO = CompletelyMultiplicativeSpec("delta", lambda p: 0)

NAMES = ("one", "id", "id_k", "lambda", "chi4", "d", "sigma", "sigma_k", "beta", "r1", "d_k", "tau")


def completely_multiplicative(name: str, k: int | None = None) -> CompletelyMultiplicativeSpec:
    if name == "one":
        return make_power(0)
    if name == "id":
        return make_power(1)
    if name == "id_k":
        if k is None:
            raise ValueError("id_k needs k")
        return make_power(k)
    if name in ("lambda", "liouville"):
        return make_liouville()
    if name in ("chi4", "chi"):
        return make_character_mod4()
    raise KeyError(f"{name!r} is not a completely multiplicative catalog function")


def lookup(name: str, k: int | None = None, tau_bound: int = DEFAULT_TAU_BOUND) -> Special:
    one, ident = make_power(0), make_power(1)
    if name in ("one", "id", "id_k", "lambda", "liouville", "chi4", "chi"):
        g = completely_multiplicative(name, k)
        # g = g * delta, and delta is completely multiplicative with delta(p) = 0
        return Special(g.as_multifunction(), lambda p: 0, (g, _ZERO))
    if name == "d":
        return _pair(one, one, "d")
    if name == "sigma":
        return _pair(one, ident, "sigma")
    if name == "sigma_k":
        if k is None:
            raise ValueError("sigma_k needs k")
        return _pair(one, make_power(k), f"sigma_{k}")
    if name == "beta":
        return _pair(make_liouville(), ident, "beta")
    if name == "r1":
        return _pair(one, make_character_mod4(), "r1")
    if name == "d_k":
        if k is None or k < 1:
            raise ValueError("d_k needs k >= 1")
        if k == 2:
            return _pair(one, one, "d_2")
        return Special(make_dk(k), None, (one,) * k)
    if name == "tau":
        return Special(tau_as_specially_multiplicative(tau_table(tau_bound)), tau_pair_product, None)
    raise KeyError(f"unknown function {name!r}; known: {', '.join(NAMES)}")
