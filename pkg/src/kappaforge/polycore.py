"""Dense univariate polynomials with exact rational coefficients.

A :class:`Poly` is immutable and hashable; coefficients are stored in
ascending degree order with trailing zeros stripped, so structural equality
is mathematical equality.  The zero polynomial has no coefficients and its
degree is :data:`ZERO_DEGREE` (negative infinity), which keeps the rule
``deg(p*q) == deg(p) + deg(q)`` true without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._validation import as_rational, check_positive_int
from .errors import InvalidInputError

__all__ = [
    "ZERO_DEGREE",
    "Poly",
    "RootSpec",
    "from_roots",
    "derivative",
    "evaluate",
    "gcd",
    "square_free_decomposition",
    "square_free_part",
    "distinct_zero_count",
    "multiplicity_of_factor",
]

ZERO_DEGREE = -math.inf

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """Univariate polynomial over the rationals.

    >>> p = Poly([1, 0, 1])          # 1 + z**2
    >>> p.degree, p(Fraction(2))
    (2, Fraction(5, 1))
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c, "coefficient") for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> Poly:
        # trusted fast path: coeffs already Fractions
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> Poly:
        return cls._raw([])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls._raw([as_rational(c)])

    @classmethod
    def monomial(cls, c, k: int) -> Poly:
        return cls._raw([_ZERO] * k + [as_rational(c)])

    @classmethod
    def z(cls) -> Poly:
        return cls._raw([_ZERO, _ONE])

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> Poly:
        """Build from ``a_0 z^n + a_1 z^(n-1) + ... + a_n`` ordering."""
        return cls(list(coeffs)[::-1])

    # -- basic properties -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly._raw([as_rational(other)])

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly._raw([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        """Division by a nonzero scalar only; use :meth:`exact_div` for polys."""
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return Poly._raw([x / c for x in self.coeffs])

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise InvalidInputError("exponent must be a non-negative integer")
        result = Poly._raw([_ONE])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly.zero(), self
        lc = other.coeffs[-1]
        bc = other.coeffs
        quot = [_ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = c / lc
                quot[k - db] = c
                off = k - db
                for j in range(db + 1):
                    rem[off + j] -= c * bc[j]
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InvalidInputError("division is not exact")
        return q

    # -- calculus and evaluation -----------------------------------------

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self, order: int = 1) -> Poly:
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Poly._raw(cs)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly._raw([c / lc for c in self.coeffs])

    def shift(self, a) -> Poly:
        """Return ``p(z + a)`` (Taylor shift), by repeated synthetic division."""
        a = as_rational(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly._raw(cs)

    def compose_scale(self, s) -> Poly:
        """Return ``p(s*z)``."""
        s = as_rational(s)
        return Poly._raw([c * s**i for i, c in enumerate(self.coeffs)])

    # -- dunder plumbing --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly._raw([Fraction(other)]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "z" if k == 1 else f"z^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def evaluate(p: Poly, x) -> Fraction:
    """Exact value of ``p`` at the rational ``x`` (Horner scheme)."""
    x = as_rational(x)
    acc = _ZERO
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return p.derivative()


@dataclass(frozen=True)
class RootSpec:
    """A polynomial given by its leading coefficient and distinct rational roots.

    ``roots`` holds ``(root, multiplicity)`` pairs; the expanded degree is the
    sum of multiplicities.
    """

    leading: Fraction
    roots: tuple[tuple[Fraction, int], ...]

    def __init__(self, roots, leading=1):
        lead = as_rational(leading, "leading")
        if lead == 0:
            raise InvalidInputError("leading coefficient must be nonzero")
        pairs = []
        for item in roots:
            try:
                r, m = item
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"root entry {item!r} is not a (root, multiplicity) pair") from exc
            pairs.append((as_rational(r, "root"), check_positive_int(m, "multiplicity")))
        seen = [r for r, _ in pairs]
        if len(set(seen)) != len(seen):
            raise InvalidInputError("roots in a RootSpec must be pairwise distinct")
        object.__setattr__(self, "leading", lead)
        object.__setattr__(self, "roots", tuple(pairs))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.roots)

    @property
    def d(self) -> int:
        return len(self.roots)

    def sorted(self) -> RootSpec:
        return RootSpec(sorted(self.roots), self.leading)

    def to_poly(self) -> Poly:
        return from_roots(self)


def from_roots(spec: RootSpec) -> Poly:
    """Expand ``leading * prod (z - root)**mult``."""
    result = Poly.constant(spec.leading)
    for r, m in spec.roots:
        result = result * (Poly._raw([-r, _ONE]) ** m)
    return result


def _gcd_uncached(p: Poly, q: Poly) -> Poly:
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


@lru_cache(maxsize=8192)
def _gcd_cached(p: Poly, q: Poly) -> Poly:
    return _gcd_uncached(p, q)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor over the rationals."""
    if p.is_zero() and q.is_zero():
        raise InvalidInputError("gcd(0, 0) is undefined")
    if p.degree < q.degree:
        p, q = q, p
    return _gcd_cached(p, q)


@lru_cache(maxsize=4096)
def _yun(p: Poly) -> tuple[tuple[Poly, int], ...]:
    dp = p.derivative()
    a0 = gcd(p, dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return tuple(out)


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition ``p = lc * prod f_i**i``.

    Returns ``(f_i, i)`` pairs with monic, square-free, pairwise coprime
    non-constant factors, ordered by increasing multiplicity.
    """
    if p.is_constant():
        raise InvalidInputError("square-free decomposition needs a non-constant polynomial")
    return list(_yun(p))


def square_free_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of ``p``."""
    if p.is_zero():
        raise InvalidInputError("zero polynomial has no square-free part")
    if p.is_constant():
        return Poly.constant(1)
    return p.monic().exact_div(gcd(p, p.derivative()))


def distinct_zero_count(p: Poly) -> int:
    """Number of distinct complex zeroes, ``deg(p / gcd(p, p'))``."""
    if p.is_constant():
        raise InvalidInputError("a constant polynomial has no zero count")
    return int(square_free_part(p).degree)


def multiplicity_of_factor(f: Poly, h: Poly) -> int | None:
    """Common multiplicity in ``f`` of all roots of the square-free ``h``.

    Returns ``None`` when the roots of ``h`` occur in ``f`` with differing
    multiplicities.  ``f`` must be nonzero.
    """
    if f.is_zero():
        raise InvalidInputError("multiplicity in the zero polynomial is unbounded")
    if h.is_constant():
        raise InvalidInputError("h must be non-constant")
    t = 0
    rest = f
    while True:
        q, r = divmod(rest, h)
        if not r.is_zero():
            break
        rest = q
        t += 1
    # every root has multiplicity >= t; uniform iff none of them survives in rest
    if gcd(rest, h).degree > 0:
        return None
    return t
