"""JSON helpers: rationals are always ``{"num", "den"}`` objects."""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError

SCHEMA_VERSION = 1


def frac_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        if set(obj) != {"num", "den"}:
            raise UsageError(f"rational must be {{num, den}}, got keys {sorted(obj)}")
        if not isinstance(obj["num"], int) or not isinstance(obj["den"], int):
            raise UsageError("rational num/den must be integers")
        return Fraction(obj["num"], obj["den"])
    raise UsageError(f"expected a {{num, den}} rational, got {obj!r}")


def number_to_json(x):
    return frac_to_json(x) if isinstance(x, Fraction) else float(x)


def number_from_json(obj):
    return frac_from_json(obj) if isinstance(obj, dict) else float(obj)
