"""Scalar backends shared by the closed-form modules.

Three kinds of scalars flow through the formulas unchanged:

* ``float`` -- the default double-precision path,
* ``fractions.Fraction`` -- exact rational evaluation (TrapUnits checks),
* ``EXT.mpf`` -- software floating point with ``EXTENDED_DPS`` digits, used
  for physical-scale parameters.

Only square roots need dispatching; everything else is plain arithmetic.
"""

import math
import os
from fractions import Fraction
from numbers import Rational

import mpmath

EXTENDED_DPS = 50

#: private mpmath context so the global ``mpmath.mp`` precision is untouched
EXT = mpmath.MPContext()
EXT.dps = EXTENDED_DPS

PRECISIONS = ("double", "extended", "exact")


def default_precision():
    """Precision selected by the ``NCTRAP_PRECISION`` environment variable."""
    value = os.environ.get("NCTRAP_PRECISION", "double").strip().lower()
    if value not in ("double", "extended"):
        raise ValueError(
            f"NCTRAP_PRECISION must be 'double' or 'extended', got {value!r}"
        )
    return value


def is_exact(x):
    return isinstance(x, Rational)


def is_extended(x):
    return isinstance(x, EXT.mpf)


def convert(x, precision):
    """Convert a scalar (or decimal string) to the given precision."""
    if precision == "double":
        return float(x)
    if precision == "extended":
        if isinstance(x, Fraction):
            return EXT.mpf(x.numerator) / x.denominator
        return EXT.mpf(x)
    if precision == "exact":
        if isinstance(x, float):
            # decimal reading of the literal, not the binary expansion
            return Fraction(repr(x))
        if is_extended(x):
            return Fraction(EXT.nstr(x, EXTENDED_DPS))
        return Fraction(x)
    raise ValueError(f"unknown precision {precision!r}")


def sqrt(x):
    """Square root that stays in the backend of ``x``.

    Exact rationals that are perfect squares give exact results; other
    rationals fall back to float.
    """
    if is_extended(x):
        return EXT.sqrt(x)
    if isinstance(x, Rational):
        if x < 0:
            raise ValueError("square root of a negative number")
        num, den = x.numerator, x.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return math.sqrt(num / den)
    return math.sqrt(x)


def to_float(x):
    return float(x)
