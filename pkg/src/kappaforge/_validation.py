"""Input coercion helpers.

Everything numeric in the library is an exact :class:`fractions.Fraction`.
Floats are rejected on purpose: a float literal such as ``0.1`` is not the
rational the caller had in mind.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError


def as_rational(value, name: str = "value") -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, :class:`numbers.Rational` instances and strings such as
    ``"-3/4"`` or ``"7"``.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"{name}: booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"{name}: cannot parse {value!r} as a rational") from exc
    raise InvalidInputError(
        f"{name}: expected an exact rational (int, Fraction or 'p/q' string), "
        f"got {type(value).__name__}"
    )


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidInputError(f"{name} must be >= {minimum}, got {value}")
    return value


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms, or ``"p"`` when q = 1."""
    return str(x)
