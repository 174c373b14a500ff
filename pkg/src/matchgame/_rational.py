"""Exact rational arithmetic helpers.

All solver math runs on exact rationals: gmpy2.mpq when available (much
faster), plain fractions.Fraction otherwise.  Both types hash and compare
identically, so they can be mixed with ints freely.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rat(value) -> Q:
    """Coerce an int, Fraction, Q, or string to an exact rational.

    Strings may be integers ("3"), ratios ("7/5"), or terminating
    decimals ("1.25"); all are parsed exactly.
    """
    if isinstance(value, str):
        # Fraction handles decimal strings exactly; mpq does not.
        return Q(Fraction(value))
    if isinstance(value, float):
        raise TypeError("floating point input rejected; pass a string or Fraction")
    return Q(value)


def rat_str(q) -> str:
    """Canonical text form: "p/q", or just "p" when the denominator is 1."""
    return str(Q(q))
