"""Elementary and complete homogeneous symmetric polynomials at rational points.

Besides plain evaluation this module carries the coefficient machinery
for the bivariate polynomial

    Q_k(u, v) = sum_i x_i^(k-1) prod_{j != i} (1 - x_j u)(1 - x_j v) / (x_i - x_j)

whose coefficients ``c[m, n]`` collapse to ``(-1)^(m+n-1) e_{m+n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arithfun import exact


class DistinctnessViolation(ValueError):
    """Raised by partial-fraction formulas when two points coincide."""


@dataclass(frozen=True)
class SymContext:
    xs: tuple

    def __init__(self, xs: Sequence):
        if len(xs) < 1:
            raise ValueError("SymContext needs at least one point")
        object.__setattr__(self, "xs", tuple(exact(Fraction(x)) for x in xs))

    @property
    def k(self) -> int:
        return len(self.xs)

    def require_distinct(self) -> None:
        if len(set(self.xs)) != len(self.xs):
            raise DistinctnessViolation(f"repeated point in {self.xs}")


def _ctx(ctx) -> SymContext:
    return ctx if isinstance(ctx, SymContext) else SymContext(ctx)


def elem_sym_all(xs: Sequence) -> list:
    """[e_0, ..., e_k] from the expansion of prod (1 + x_i t)."""
    e = [1]
    for x in xs:
        e = [a + x * b for a, b in zip(e + [0], [0] + e)]
    return [exact(v) for v in e]


def elem_sym(ctx, d: int):
    ctx = _ctx(ctx)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d > ctx.k:
        return 0
    return elem_sym_all(ctx.xs)[d]


def complete_hom_all(xs: Sequence, dmax: int) -> list:
    """[h_0, ..., h_dmax], built variable by variable:
    h_d(x_1..x_j) = h_d(x_1..x_{j-1}) + x_j h_{d-1}(x_1..x_j)."""
    h = [1] + [0] * dmax
    for x in xs:
        for d in range(1, dmax + 1):
            h[d] = h[d] + x * h[d - 1]
    return [exact(v) for v in h]


def complete_hom(ctx, d: int):
    ctx = _ctx(ctx)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return complete_hom_all(ctx.xs, d)[d]


def partial_fraction_weights(ctx: SymContext) -> list:
    """prod_{j != i} (x_i - x_j)^(-1) for each i."""
    ctx.require_distinct()
    out = []
    for i, xi in enumerate(ctx.xs):
        den = 1
        for j, xj in enumerate(ctx.xs):
            if j != i:
                den *= xi - xj
        out.append(Fraction(1) / den)
    return out


def complete_hom_partial_fractions(ctx, d: int):
    """h_d as sum_i x_i^(d+k-1) / prod_{j != i} (x_i - x_j); points must be distinct."""
    ctx = _ctx(ctx)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    k = ctx.k
    total = sum(w * xi ** (d + k - 1) for w, xi in zip(partial_fraction_weights(ctx), ctx.xs))
    return exact(Fraction(total))


def elem_sym_omit(ctx, i: int, m: int):
    """e_m of the points with the i-th one (1-based) removed."""
    ctx = _ctx(ctx)
    if not 1 <= i <= ctx.k:
        raise IndexError(f"index {i} out of range 1..{ctx.k}")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    rest = ctx.xs[: i - 1] + ctx.xs[i:]
    if m > len(rest):
        return 0
    return elem_sym_all(rest)[m]


def check_orthogonality(ctx, n: int):
    """sum_{d=0}^n (-1)^d e_d h_{n-d}; equals 1 for n = 0 and 0 otherwise."""
    ctx = _ctx(ctx)
    e = elem_sym_all(ctx.xs)
    h = complete_hom_all(ctx.xs, n)
    total = 0
    for d in range(min(n, ctx.k) + 1):
        total += (-1) ** d * e[d] * h[n - d]
    return exact(total)


def cmn_bruteforce(ctx, m: int, n: int):
    """c[m, n] straight from the partial-fraction sum over omitted-point
    elementary polynomials.  Needs distinct points and 0 <= m, n <= k-1."""
    ctx = _ctx(ctx)
    k = ctx.k
    if not (0 <= m <= k - 1 and 0 <= n <= k - 1):
        raise ValueError(f"need 0 <= m, n <= {k - 1}, got ({m}, {n})")
    total = 0
    for i, (w, xi) in enumerate(zip(partial_fraction_weights(ctx), ctx.xs), start=1):
        total += xi ** (k - 1) * w * elem_sym_omit(ctx, i, m) * elem_sym_omit(ctx, i, n)
    return exact((-1) ** (m + n) * Fraction(total))


def cmn_closed(ctx, m: int, n: int):
    ctx = _ctx(ctx)
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    if m == 0 and n == 0:
        return 1
    if m >= 1 and n >= 1 and m + n <= ctx.k:
        return (-1) ** (m + n - 1) * elem_sym(ctx, m + n)
    return 0
