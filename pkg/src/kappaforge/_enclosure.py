"""Closed rational interval arithmetic, used to enclose algebraic quantities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polycore import Poly


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Fraction) -> Enclosure:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other: Enclosure) -> Enclosure:
        other = _lift(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> Enclosure:
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> Enclosure:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Enclosure:
        return _lift(other) - self

    def __mul__(self, other) -> Enclosure:
        other = _lift(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Enclosure:
        other = _lift(other)
        if other.contains_zero():
            raise ZeroDivisionError("divisor enclosure contains zero")
        return self * Enclosure(1 / other.hi, 1 / other.lo)

    def square(self) -> Enclosure:
        if self.lo >= 0:
            return Enclosure(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return Enclosure(self.hi**2, self.lo**2)
        return Enclosure(Fraction(0), max(self.lo**2, self.hi**2))


def _lift(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    x = Fraction(x)
    return Enclosure(x, x)


def poly_range(p: Poly, box: Enclosure) -> Enclosure:
    """Enclosure of ``p`` over ``box`` via the centred (mean-value) form.

    ``p(x) in p(c) + p'(box) * (box - c)`` with ``p'(box)`` from plain
    interval Horner; width shrinks linearly with the box.
    """
    c = (box.lo + box.hi) / 2
    if box.lo == box.hi:
        return Enclosure.point(p(c))
    dp = p.derivative()
    acc = Enclosure.point(Fraction(0))
    for coef in reversed(dp.coeffs):
        acc = acc * box + coef
    return p(c) + acc * (box - c)
