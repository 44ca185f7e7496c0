"""Arithmetic functions of r variables and their Dirichlet convolution.

Two representations are provided:

* :class:`GeneralFunction` wraps an arbitrary map ``N^r -> Q``.
* :class:`MultiFunction` is a multiplicative function given by its
  prime-local values ``f(p^v1, ..., p^vr)``, normalized so that
  ``f(1, ..., 1) = 1``.

Values are exact: Python ints where possible, ``fractions.Fraction``
otherwise.  Memo caches are plain dicts; concurrent readers may at worst
recompute an entry, which is harmless because every evaluator is pure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from numbers import Rational
from typing import Callable, Sequence

from .factorint import FactoredNat, divisor_values, factor

ExponentVector = tuple[int, ...]
LocalFn = Callable[[int, ExponentVector], Rational]


class ArityError(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def exact(x) -> Rational:
    """Collapse integral Fractions to int so arithmetic stays on the fast path."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, Rational):
        return exact(Fraction(x))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _check_args(arity: int, ns) -> None:
    if len(ns) != arity:
        raise ArityError(f"expected {arity} arguments, got {len(ns)}")


class GeneralFunction:
    """An arbitrary arithmetic function of ``arity`` variables."""

    def __init__(self, arity: int, fn: Callable[..., Rational], name: str = "f", memo: bool = True):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.fn = fn
        self.name = name
        self._memo: dict | None = {} if memo else None

    def __call__(self, *ns: int) -> Rational:
        _check_args(self.arity, ns)
        memo = self._memo
        if memo is not None:
            v = memo.get(ns)
            if v is None:
                v = memo[ns] = exact(self.fn(*ns))
            return v
        return exact(self.fn(*ns))

    def __repr__(self):
        return f"GeneralFunction({self.name!r}, arity={self.arity})"


class MultiFunction:
    """A multiplicative function of ``arity`` variables.

    ``local(p, exps)`` must return the value at ``(p^exps[0], ..., p^exps[r-1])``
    and must return 1 on the zero vector.
    """

    def __init__(
        self,
        arity: int,
        local: LocalFn,
        name: str = "f",
        completely_multiplicative: bool = False,
    ):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.local = local
        self.name = name
        self.is_completely_multiplicative = completely_multiplicative and arity == 1
        self._zero = (0,) * arity
        self._local_memo: dict[tuple[int, ExponentVector], Rational] = {}
        self._memo: dict[tuple[int, ...], Rational] = {}
        self._inverse: MultiFunction | None = None
        for p in (2, 3):
            if exact(local(p, self._zero)) != 1:
                raise ValueError(f"{name}: multiplicative functions must satisfy f(1,...,1) = 1")

    def local_value(self, p: int, exps: ExponentVector) -> Rational:
        exps = tuple(exps)
        if len(exps) != self.arity:
            raise ArityError(f"{self.name}: exponent vector of length {len(exps)}, arity {self.arity}")
        if exps == self._zero:
            return 1
        key = (p, exps)
        v = self._local_memo.get(key)
        if v is None:
            v = self._local_memo[key] = exact(self.local(p, exps))
        return v

    def __call__(self, *ns: int) -> Rational:
        _check_args(self.arity, ns)
        v = self._memo.get(ns)
        if v is None:
            v = self._memo[ns] = eval_multiplicative(self, [factor(n) for n in ns])
        return v

    def inverse(self) -> MultiFunction:
        if self._inverse is None:
            self._inverse = _make_inverse(self)
        return self._inverse

    def as_general(self) -> GeneralFunction:
        return GeneralFunction(self.arity, self, name=self.name, memo=False)

    def __repr__(self):
        return f"MultiFunction({self.name!r}, arity={self.arity})"


def eval_multiplicative(f: MultiFunction, ns: Sequence[FactoredNat]) -> Rational:
    """Evaluate f at factored arguments as the product of its prime-local values."""
    _check_args(f.arity, ns)
    dicts = [n.as_dict() for n in ns]
    primes = sorted(set().union(*dicts))
    result = 1
    for p in primes:
        v = f.local_value(p, tuple(d.get(p, 0) for d in dicts))
        if not v:
            return 0
        result *= v
    return exact(result)


def convolve(f, g, ns: Sequence[int]) -> Rational:
    """``(f * g)(ns)``: sum over all divisor tuples ``a | ns`` of ``f(a) g(ns / a)``.

    ``f`` is evaluated first and zero terms are skipped, so pass the sparser
    function first.
    """
    ns = tuple(ns)
    if f.arity != g.arity:
        raise ArityError(f"cannot convolve arities {f.arity} and {g.arity}")
    _check_args(f.arity, ns)
    total = 0
    for a in _cartesian(*(divisor_values(n) for n in ns)):
        fa = f(*a)
        if fa:
            total += fa * g(*(n // d for n, d in zip(ns, a)))
    return exact(total)


def convolution(f, g, name: str | None = None) -> GeneralFunction:
    return GeneralFunction(
        f.arity, lambda *ns: convolve(f, g, ns), name=name or f"({f.name}*{g.name})"
    )


def _box(e: ExponentVector):
    return _cartesian(*(range(x + 1) for x in e))


def local_convolve(f: MultiFunction, g: MultiFunction, p: int, e: ExponentVector) -> Rational:
    """Prime-local value of ``f * g`` at ``(p^e1, ..., p^er)``."""
    if f.arity != g.arity:
        raise ArityError(f"cannot convolve arities {f.arity} and {g.arity}")
    e = tuple(e)
    total = 0
    for a in _box(e):
        fa = f.local_value(p, a)
        if fa:
            total += fa * g.local_value(p, tuple(x - y for x, y in zip(e, a)))
    return exact(total)


def multiplicative_convolution(f: MultiFunction, g: MultiFunction, name: str | None = None) -> MultiFunction:
    return MultiFunction(
        f.arity,
        lambda p, e: local_convolve(f, g, p, e),
        name=name or f"({f.name}*{g.name})",
        completely_multiplicative=False,
    )


def _make_inverse(f: MultiFunction) -> MultiFunction:
    memo: dict[tuple[int, ExponentVector], Rational] = {}
    zero = f._zero

    def value(p, e):
        key = (p, e)
        if key in memo:
            return memo[key]
        # fill every subvector of the box, ordered by total degree then lexicographically
        order = sorted(_box(e), key=lambda a: (sum(a), a))
        for b in order:
            if (p, b) in memo:
                continue
            if b == zero:
                memo[(p, b)] = 1
                continue
            s = 0
            for a in _box(b):
                if a == b:
                    continue
                fa = f.local_value(p, tuple(x - y for x, y in zip(b, a)))
                if fa:
                    s += memo[(p, a)] * fa
            memo[(p, b)] = exact(-s)
        return memo[key]

    return MultiFunction(f.arity, lambda p, e: value(p, tuple(e)), name=f"{f.name}^-1")


def local_inverse(f: MultiFunction, p: int, e: ExponentVector) -> Rational:
    """Prime-local value of the convolution inverse of f."""
    return f.inverse().local_value(p, tuple(e))


def general_inverse(f: GeneralFunction) -> GeneralFunction:
    """Convolution inverse of an arbitrary function with ``f(1, ..., 1) != 0``."""
    ones = (1,) * f.arity
    f1 = f(*ones)
    if f1 == 0:
        raise NotInvertible(f"{f.name}(1,...,1) = 0, no convolution inverse exists")

    def inv(*ns):
        if ns == ones:
            return Fraction(1) / f1
        s = 0
        for a in _cartesian(*(divisor_values(n) for n in ns)):
            if a == ns:
                continue
            s += g(*a) * f(*(n // d for n, d in zip(ns, a)))
        return Fraction(-s) / f1

    g = GeneralFunction(f.arity, inv, name=f"{f.name}^-1")
    return g


def delta(arity: int) -> MultiFunction:
    """The convolution identity."""
    return MultiFunction(arity, lambda p, e: 1 if not any(e) else 0, name="delta")


def of_product(f: MultiFunction, arity: int) -> MultiFunction:
    """``(n1, ..., nr) -> f(n1 * ... * nr)`` for a one-variable multiplicative f."""
    if f.arity != 1:
        raise ArityError("of_product needs a one-variable function")
    return MultiFunction(
        arity, lambda p, e: f.local_value(p, (sum(e),)), name=f"{f.name}(n1...n{arity})"
    )


def tensor(fs: Sequence[MultiFunction]) -> MultiFunction:
    """``(n1, ..., nr) -> f1(n1) * ... * fr(nr)``."""
    fs = list(fs)
    if any(f.arity != 1 for f in fs):
        raise ArityError("tensor needs one-variable functions")

    def local(p, e):
        v = 1
        for f, x in zip(fs, e):
            v *= f.local_value(p, (x,))
            if not v:
                return 0
        return v

    return MultiFunction(len(fs), local, name="x".join(f.name for f in fs))
