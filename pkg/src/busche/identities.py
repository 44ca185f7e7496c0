"""Divisor-sum identities for specially multiplicative functions.

For a specially multiplicative f = g*h the r-variable kernel psi_f gives

    f(n1...nr)      = sum_{a|n} f(n1/a1)...f(nr/ar) psi_f(a)
    f(n1)...f(nr)   = sum_{a|n} f(n1...nr / a1...ar) psi_f^{-1}(a)

and for F = f_1*...*f_k (each f_i completely multiplicative) the
two-variable kernel theta_F gives the analogous pair with n1 n2.
Every verifier below compares both sides exactly over a rectangle of
arguments and collects counterexamples rather than raising.
"""

from __future__ import annotations

from itertools import product as _cartesian
from math import comb, gcd
from numbers import Rational
from typing import Callable, Sequence

from .arithfun import (
    MultiFunction,
    convolve,
    exact,
    multiplicative_convolution,
    of_product,
    tensor,
)
from .catalog import (
    CompletelyMultiplicativeSpec,
    TableBoundError,
    TauTable,
    make_convolution_product,
    make_dk,
    tau_as_specially_multiplicative,
    tau_pair_product,
)
from .factorint import divisor_values, factor
from .report import VerificationReport, run_checks
from .symmetric import elem_sym_all

PrimeValues = Callable[[int], Rational]


# -- kernels ---------------------------------------------------------------


class PsiKernel(MultiFunction):
    """Kernel of the r-variable identity for f = g*h.

    Supported on exponent vectors with every entry in {0, 1}; at weight
    j >= 2 the value is (-1)^(j-1) g(p)h(p) f(p^(j-2)).
    """

    def __init__(self, f: MultiFunction, gh: PrimeValues, r: int):
        if r < 1:
            raise ValueError("psi kernel needs r >= 1")
        if f.arity != 1:
            raise ValueError("psi kernel needs a one-variable f")
        self.f = f
        self.gh = gh
        super().__init__(r, self._local, name=f"psi_{f.name}[r={r}]")

    def _local(self, p, e):
        if any(x > 1 for x in e):
            return 0
        j = sum(e)
        if j == 0:
            return 1
        if j == 1:
            return 0
        return (-1) ** (j - 1) * self.gh(p) * self.f.local_value(p, (j - 2,))


def psi_kernel(f: MultiFunction, gh: PrimeValues, r: int) -> PsiKernel:
    return PsiKernel(f, gh, r)


class ThetaKernel(MultiFunction):
    """Two-variable kernel for F = f_1*...*f_k:
    (-1)^(a+b-1) e_{a+b}(f_1(p), ..., f_k(p)) for a, b >= 1, a + b <= k."""

    def __init__(self, factor_prime_values: Sequence[PrimeValues], k: int | None = None):
        factor_prime_values = tuple(factor_prime_values)
        if k is None:
            k = len(factor_prime_values)
        if k < 1 or len(factor_prime_values) != k:
            raise ValueError(f"theta kernel needs k >= 1 factor functions, got {len(factor_prime_values)} for k={k}")
        self.factor_prime_values = factor_prime_values
        self.k = k
        self._esym: dict[int, list] = {}
        super().__init__(2, self._local, name=f"theta[k={k}]")

    def elementary(self, p: int) -> list:
        e = self._esym.get(p)
        if e is None:
            e = self._esym[p] = elem_sym_all([fv(p) for fv in self.factor_prime_values])
        return e

    def _local(self, p, e):
        a, b = e
        if a == 0 and b == 0:
            return 1
        if a >= 1 and b >= 1 and a + b <= self.k:
            return (-1) ** (a + b - 1) * self.elementary(p)[a + b]
        return 0


def theta_kernel(factor_prime_values: Sequence, k: int | None = None) -> ThetaKernel:
    """Accepts CompletelyMultiplicativeSpec objects or plain prime -> value callables."""
    fvs = [f.value_at_prime if isinstance(f, CompletelyMultiplicativeSpec) else f for f in factor_prime_values]
    return ThetaKernel(fvs, k)


def theta_dk_kernel(k: int) -> MultiFunction:
    """Binomial kernel for d_k: (-1)^(a+b-1) C(k, a+b)."""

    def local(p, e):
        a, b = e
        if a == 0 and b == 0:
            return 1
        if a >= 1 and b >= 1 and a + b <= k:
            return (-1) ** (a + b - 1) * comb(k, a + b)
        return 0

    return MultiFunction(2, local, name=f"theta_d{k}")


def sign_flipped(kernel: MultiFunction) -> MultiFunction:
    """Negate every non-unit local value.  Deliberately wrong; used as a
    negative control for the verification harness."""

    def local(p, e):
        if not any(e):
            return 1
        return -kernel.local_value(p, e)

    return MultiFunction(kernel.arity, local, name=f"-{kernel.name}")


def solve_psi(f: MultiFunction, r: int) -> MultiFunction:
    """The kernel forced by the forward identity: (f o product) * (f x ... x f)^-1."""
    return multiplicative_convolution(of_product(f, r), tensor([f] * r).inverse(), name=f"solved_psi_{f.name}")


def solve_theta(F: MultiFunction) -> MultiFunction:
    return multiplicative_convolution(of_product(F, 2), tensor([F, F]).inverse(), name=f"solved_theta_{F.name}")


def _box(max_n: int, r: int):
    return _cartesian(range(1, max_n + 1), repeat=r)


def _expansion(weight, body, ns):
    """Nonzero terms of sum_{a | ns} weight(a) body(ns / a)."""
    out = []
    for a in _cartesian(*(divisor_values(n) for n in ns)):
        w = weight(*a)
        if w:
            out.append((a, w, exact(w * body(*(n // d for n, d in zip(ns, a))))))
    return out


# -- classic two-variable identities ----------------------------------------


def _completely_multiplicative_extension(at_prime: PrimeValues) -> Callable[[int], Rational]:
    cache: dict[int, Rational] = {}

    def value(n):
        v = cache.get(n)
        if v is None:
            v = 1
            for p, e in factor(n).factors:
                v *= at_prime(p) ** e
            v = cache[n] = exact(v)
        return v

    return value


def mobius(n: int) -> int:
    fs = factor(n).factors
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def verify_classic_br(
    f: MultiFunction,
    gh: PrimeValues,
    max_m: int,
    max_n: int | None = None,
    psi: MultiFunction | None = None,
) -> VerificationReport:
    """Check, for all m <= max_m, n <= max_n,

        f(mn)     = sum_{a | gcd(m,n)} f(m/a) f(n/a) mu(a) g(a) h(a)   ("product")
        f(m) f(n) = sum_{a | gcd(m,n)} f(mn/a^2) g(a) h(a)              ("split")

    If ``psi`` is given, its diagonal psi(a, a) replaces the weight
    mu(a) g(a) h(a) in the first identity.
    """
    max_n = max_m if max_n is None else max_n
    ghn = _completely_multiplicative_extension(gh)
    if psi is None:
        w1 = lambda a: mobius(a) * ghn(a)  # noqa: E731
    else:
        w1 = lambda a: psi(a, a)  # noqa: E731

    def rhs_product(ns):
        m, n = ns
        return exact(sum(f(m // a) * f(n // a) * w1(a) for a in divisor_values(gcd(m, n))))

    def rhs_split(ns):
        m, n = ns
        return exact(sum(f(m * n // (a * a)) * ghn(a) for a in divisor_values(gcd(m, n))))

    def expand_product(ns):
        m, n = ns
        return [((a,), w1(a), exact(f(m // a) * f(n // a) * w1(a))) for a in divisor_values(gcd(m, n))]

    def expand_split(ns):
        m, n = ns
        return [((a,), ghn(a), exact(f(m * n // (a * a)) * ghn(a))) for a in divisor_values(gcd(m, n))]

    forms = [
        ("product", lambda ns: f(ns[0] * ns[1]), rhs_product, expand_product),
        ("split", lambda ns: exact(f(ns[0]) * f(ns[1])), rhs_split, expand_split),
    ]
    tuples = _cartesian(range(1, max_m + 1), range(1, max_n + 1))
    return run_checks(f"classic[{f.name}]", f"1<=m<={max_m}, 1<=n<={max_n}", tuples, forms)


# -- several-variable identities --------------------------------------------


def _forward_form(target: MultiFunction, kernel: MultiFunction, body: MultiFunction, tag: str):
    """target(n) vs (kernel * body)(n)."""
    return (
        tag,
        lambda ns: target(*ns),
        lambda ns: convolve(kernel, body, ns),
        lambda ns: _expansion(kernel, body, ns),
    )


def verify_thm1_forward(
    f: MultiFunction, gh: PrimeValues, r: int, max_n: int, kernel: MultiFunction | None = None
) -> VerificationReport:
    """f(n1...nr) = sum_{a | n} f(n1/a1)...f(nr/ar) psi_f(a) for all n_i <= max_n."""
    kernel = psi_kernel(f, gh, r) if kernel is None else kernel
    lhs = of_product(f, r)
    form = _forward_form(lhs, kernel, tensor([f] * r), "forward")
    return run_checks(f"thm1[{f.name}]", f"r={r}, 1<=n_i<={max_n}", _box(max_n, r), [form])


def verify_thm1_inverse(
    f: MultiFunction, gh: PrimeValues, r: int, max_n: int, kernel: MultiFunction | None = None
) -> VerificationReport:
    """f(n1)...f(nr) = sum_{a | n} f(n1...nr / a1...ar) psi_f^-1(a), inverse computed locally."""
    kernel = psi_kernel(f, gh, r) if kernel is None else kernel
    form = _forward_form(tensor([f] * r), kernel.inverse(), of_product(f, r), "inverse")
    return run_checks(f"thm1-inv[{f.name}]", f"r={r}, 1<=n_i<={max_n}", _box(max_n, r), [form])


def _thm2_forms(F: MultiFunction, kernel: MultiFunction, forms: Sequence[str]):
    out = []
    if "forward" in forms:
        out.append(_forward_form(of_product(F, 2), kernel, tensor([F, F]), "forward"))
    if "inverse" in forms:
        out.append(_forward_form(tensor([F, F]), kernel.inverse(), of_product(F, 2), "inverse"))
    if not out:
        raise ValueError(f"unknown forms {forms!r}")
    return out


def verify_thm2(
    factors: Sequence[CompletelyMultiplicativeSpec],
    k: int,
    max_n: int,
    forms: Sequence[str] = ("forward", "inverse"),
    kernel: MultiFunction | None = None,
) -> VerificationReport:
    """F(n1 n2) = sum F(n1/a1) F(n2/a2) theta_F(a) and
    F(n1) F(n2) = sum F(n1 n2 / a1 a2) theta_F^-1(a), for F = f_1*...*f_k."""
    factors = tuple(factors)
    if len(factors) != k:
        raise ValueError(f"expected {k} factors, got {len(factors)}")
    F = make_convolution_product(factors)
    kernel = theta_kernel(factors, k) if kernel is None else kernel
    return run_checks(
        f"thm2[{F.name}]", f"k={k}, 1<=n1,n2<={max_n}", _box(max_n, 2), _thm2_forms(F, kernel, forms)
    )


def verify_corollary1(table: TauTable, r: int, max_n: int) -> VerificationReport:
    """The r-variable identity for Ramanujan's tau with g1(p)g2(p) = p^11."""
    need = max_n**r
    if need > table.N:
        raise TableBoundError(f"range needs tau up to {need}, table bound is {table.N}")
    tau = tau_as_specially_multiplicative(table)
    report = verify_thm1_forward(tau, tau_pair_product, r, max_n)
    report.identity = "cor1[tau]"
    return report


def verify_corollary2(
    k: int,
    max_n: int,
    forms: Sequence[str] = ("forward", "inverse"),
    kernel: MultiFunction | None = None,
) -> VerificationReport:
    """Both two-variable identities for d_k with the binomial kernel."""
    F = make_dk(k)
    kernel = theta_dk_kernel(k) if kernel is None else kernel
    return run_checks(
        f"cor2[d_{k}]", f"k={k}, 1<=n1,n2<={max_n}", _box(max_n, 2), _thm2_forms(F, kernel, forms)
    )
