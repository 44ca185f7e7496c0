"""Local Euler factors as truncated multivariate power series.

At a fixed prime p the Dirichlet series of a multiplicative function of r
variables contributes the factor sum_v f(p^v1, ..., p^vr) u1^v1 ... ur^vr
with u_i standing for p^(-s_i).  Series are truncated to the box
0 <= v_i <= D; products are exact inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from itertools import product as _cartesian
from numbers import Rational
from typing import Callable, Sequence

from .arithfun import ExponentVector, MultiFunction, exact, multiplicative_convolution, of_product
from .catalog import CompletelyMultiplicativeSpec
from .symmetric import SymContext, partial_fraction_weights, cmn_closed


class ShapeError(ValueError):
    pass


@dataclass
class LocalSeries:
    arity: int
    degree: int
    coeffs: dict[ExponentVector, Rational] = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1 or self.degree < 0:
            raise ShapeError(f"bad shape arity={self.arity}, degree={self.degree}")
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(e)
            if len(e) != self.arity:
                raise ShapeError(f"exponent {e} does not have length {self.arity}")
            c = exact(c)
            if c and all(0 <= x <= self.degree for x in e):
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def one(cls, arity: int, degree: int) -> LocalSeries:
        return cls(arity, degree, {(0,) * arity: 1})

    def coeff(self, e) -> Rational:
        return self.coeffs.get(tuple(e), 0)

    def box(self):
        return _cartesian(range(self.degree + 1), repeat=self.arity)

    def embed(self, index: int, arity: int) -> LocalSeries:
        """View a one-variable series as a series in variable ``index`` of ``arity``."""
        if self.arity != 1:
            raise ShapeError("embed needs a one-variable series")
        out = {}
        for (v,), c in self.coeffs.items():
            e = [0] * arity
            e[index] = v
            out[tuple(e)] = c
        return LocalSeries(arity, self.degree, out)

    def __mul__(self, other: LocalSeries) -> LocalSeries:
        return series_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, LocalSeries):
            return NotImplemented
        return (self.arity, self.degree, self.coeffs) == (other.arity, other.degree, other.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}*u^{e}" for e, c in sorted(self.coeffs.items()))
        return f"LocalSeries(r={self.arity}, D={self.degree}: {terms or '0'})"


def local_series_of(f: MultiFunction, p: int, D: int) -> LocalSeries:
    if D < 0:
        raise ShapeError("truncation degree must be >= 0")
    s = LocalSeries(f.arity, D)
    s.coeffs = {e: v for e in s.box() if (v := f.local_value(p, e))}
    return s


def series_mul(a: LocalSeries, b: LocalSeries) -> LocalSeries:
    if (a.arity, a.degree) != (b.arity, b.degree):
        raise ShapeError(f"shape mismatch: ({a.arity}, {a.degree}) vs ({b.arity}, {b.degree})")
    D = a.degree
    out: dict[ExponentVector, Rational] = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if max(e) <= D:
                out[e] = out.get(e, 0) + ca * cb
    return LocalSeries(a.arity, D, out)


def correction_factor_thm1(f: MultiFunction, gh: Callable[[int], Rational], p: int, r: int, D: int) -> LocalSeries:
    """1 + g(p)h(p) sum_{j=2}^r (-1)^(j-1) f(p^(j-2)) e_j(u_1, ..., u_r), truncated."""
    if r < 1:
        raise ShapeError("r must be >= 1")
    coeffs: dict[ExponentVector, Rational] = {(0,) * r: 1}
    ghp = gh(p)
    for j in range(2, r + 1):
        c = (-1) ** (j - 1) * ghp * f.local_value(p, (j - 2,))
        for idx in combinations(range(r), j):
            e = [0] * r
            for i in idx:
                e[i] = 1
            coeffs[tuple(e)] = c
    return LocalSeries(r, D, coeffs)


@dataclass
class LocalReport:
    equal: bool
    compared: int
    mismatch: tuple | None = None  # (exponent vector, lhs coefficient, rhs coefficient)
    lhs: LocalSeries | None = None
    rhs: LocalSeries | None = None

    def __bool__(self):
        return self.equal


def compare_series(lhs: LocalSeries, rhs: LocalSeries) -> LocalReport:
    compared = 0
    for e in lhs.box():
        compared += 1
        a, b = lhs.coeff(e), rhs.coeff(e)
        if a != b:
            return LocalReport(False, compared, (e, a, b), lhs, rhs)
    return LocalReport(True, compared, None, lhs, rhs)


def verify_local_dirichlet_identity(
    f: MultiFunction, gh: Callable[[int], Rational], p: int, r: int, D: int
) -> LocalReport:
    """Local factor of sum f(n1...nr) n^-s against prod_i (local factor of f in s_i)
    times the correction polynomial, coefficient by coefficient."""
    if D < 1:
        raise ShapeError("D must be >= 1")
    lhs = local_series_of(of_product(f, r), p, D)
    single = local_series_of(f, p, D)
    rhs = correction_factor_thm1(f, gh, p, r, D)
    for i in range(r):
        rhs = rhs * single.embed(i, r)
    return compare_series(lhs, rhs)


def qk_polynomial(ctx, D: int | None = None, route: str = "closed") -> LocalSeries:
    """Q_k(u, v) = sum c[m, n] u^m v^n.

    route="closed" uses c[m, n] = (-1)^(m+n-1) e_{m+n} and needs no
    distinctness; route="partial" expands the partial-fraction definition
    and raises DistinctnessViolation on repeated points.
    """
    ctx = ctx if isinstance(ctx, SymContext) else SymContext(ctx)
    k = ctx.k
    D = k - 1 if D is None else D
    if route == "closed":
        coeffs = {(m, n): cmn_closed(ctx, m, n) for m in range(D + 1) for n in range(D + 1)}
        return LocalSeries(2, D, coeffs)
    if route == "partial":
        acc: dict[ExponentVector, Rational] = {}
        for i, (w, xi) in enumerate(zip(partial_fraction_weights(ctx), ctx.xs)):
            term = LocalSeries(2, D, {(0, 0): Fraction(xi) ** (k - 1) * w})
            for j, xj in enumerate(ctx.xs):
                if j != i:
                    term = term * LocalSeries(2, D, {(0, 0): 1, (1, 0): -xj})
                    term = term * LocalSeries(2, D, {(0, 0): 1, (0, 1): -xj})
            for e, c in term.coeffs.items():
                acc[e] = acc.get(e, 0) + c
        return LocalSeries(2, D, acc)
    raise ValueError(f"unknown route {route!r}")


def convolution_of_factors(factors: Sequence[CompletelyMultiplicativeSpec]) -> MultiFunction:
    """f_1 * ... * f_k built by repeated local convolution (no symmetric polynomials)."""
    factors = list(factors)
    F = factors[0].as_multifunction()
    for g in factors[1:]:
        F = multiplicative_convolution(F, g.as_multifunction())
    return F


def verify_local_thm2_identity(
    factors: Sequence[CompletelyMultiplicativeSpec], k: int, p: int, D: int
) -> LocalReport:
    """Local factor of sum F(n1 n2) n1^-s1 n2^-s2 against
    (local factor of F in s1)(local factor of F in s2) Q_k."""
    factors = tuple(factors)
    if len(factors) != k:
        raise ValueError(f"expected {k} factors, got {len(factors)}")
    if D < 1:
        raise ShapeError("D must be >= 1")
    F = convolution_of_factors(factors)
    lhs = local_series_of(of_product(F, 2), p, D)
    single = local_series_of(F, p, D)
    q = qk_polynomial([f.value_at_prime(p) for f in factors], D=D, route="closed")
    rhs = single.embed(0, 2) * single.embed(1, 2) * q
    return compare_series(lhs, rhs)
