"""Exact arithmetic functions of several variables, with kernels that
turn products of values into divisor sums."""

from .arithfun import (
    GeneralFunction,
    MultiFunction,
    NotInvertible,
    convolve,
    delta,
    local_convolve,
    local_inverse,
)
from .factorint import FactoredNat, divisors, factor, gcd_factored
from .report import VerificationReport

__version__ = "0.1.0"
