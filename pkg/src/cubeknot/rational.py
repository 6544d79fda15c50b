"""Exact rational scalars.

Everything geometric in this package is computed over ``gmpy2.mpq``.  The
helpers here coerce user input (ints, strings such as ``"3/5"``,
``fractions.Fraction``) and serialize back to text.
"""
from fractions import Fraction

from gmpy2 import mpq

Q = mpq

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def to_q(value):
    """Coerce *value* to an exact rational.

    Floats are rejected: a float silently carries binary rounding error
    and every caller of this module expects exact input.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string, int or Fraction")
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def q_str(value):
    """``"p/q"`` or ``"p"`` for integers."""
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def q_to_json(value):
    value = mpq(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def q_from_json(obj):
    if isinstance(obj, dict):
        try:
            return mpq(int(obj["num"]), int(obj["den"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {obj!r}") from exc
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        try:
            return to_q(obj)
        except ValueError as exc:
            raise ValueError(f"malformed rational {obj!r}") from exc
    raise ValueError(f"malformed rational {obj!r}")


def snap(x, den):
    """Nearest rational with denominator *den* to the float *x*."""
    return mpq(round(x * den), den)
