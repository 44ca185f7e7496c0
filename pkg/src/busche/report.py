"""Verification reports and the loop that fills them."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from numbers import Rational
from typing import Iterable

from .arithfun import exact


def format_value(v) -> str:
    """Exact decimal string; rationals render as ``p/q``."""
    return str(exact(v))


def _json_scalar(x):
    return x if isinstance(x, int) else format_value(x)


def _sort_key(t):
    return tuple((0, x, "") if isinstance(x, int) else (1, 0, str(x)) for x in t)


@dataclass
class Counterexample:
    input: tuple
    lhs: Rational
    rhs: Rational
    form: str = ""
    # (divisor tuple, weight, term) for every nonzero term of the divisor sum
    expansion: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "input": [_json_scalar(x) for x in self.input],
            "lhs": format_value(self.lhs),
            "rhs": format_value(self.rhs),
            "form": self.form,
            "expansion": [
                {"divisors": list(a), "weight": format_value(w), "term": format_value(t)}
                for a, w, t in self.expansion
            ],
        }


@dataclass
class VerificationReport:
    identity: str
    range: str
    checked: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.counterexamples

    def sort(self) -> None:
        self.counterexamples.sort(key=lambda c: (c.form, _sort_key(c.input)))

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.checked += other.checked
        self.counterexamples.extend(other.counterexamples)
        self.elapsed_ms += other.elapsed_ms
        self.sort()
        return self

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "identity": self.identity,
            "range": self.range,
            "checked": self.checked,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0,
        }


def run_checks(identity: str, rng: str, inputs: Iterable[tuple], forms) -> VerificationReport:
    """Evaluate every form on every input.

    ``forms`` is a sequence of ``(tag, lhs, rhs, expand)`` where each of the
    three callables takes the input tuple; ``expand`` is only called on a
    mismatch.
    """
    t0 = time.perf_counter()
    report = VerificationReport(identity, rng)
    for ns in inputs:
        for tag, lhs_fn, rhs_fn, expand in forms:
            lhs, rhs = lhs_fn(ns), rhs_fn(ns)
            report.checked += 1
            if lhs != rhs:
                report.counterexamples.append(Counterexample(ns, lhs, rhs, tag, expand(ns)))
    report.sort()
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report
