"""Exact real-root counting and isolation with Sturm chains.

Interval endpoints are exact rationals or the float markers ``-math.inf`` /
``math.inf``; signs at infinity come from the leading coefficient, never from
large finite substitutes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import count

from ._validation import as_rational
from .errors import EndpointCollisionError, InvalidInputError
from .polycore import Poly, square_free_decomposition, square_free_part

__all__ = [
    "Interval",
    "REAL_LINE",
    "SturmChain",
    "ZeroCensus",
    "sturm_chain",
    "count_real_roots",
    "count_roots_open",
    "nonreal_count",
    "census",
    "isolate_real_roots",
    "refine_root",
    "sign_right_of",
    "sign_at",
    "cauchy_bound",
    "separate_root",
    "rational_root_in",
]


def _endpoint(x):
    if isinstance(x, float) and math.isinf(x):
        return x
    return as_rational(x, "endpoint")


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)`` with rational or infinite endpoints."""

    lo: Fraction | float
    hi: Fraction | float

    def __post_init__(self):
        lo, hi = _endpoint(self.lo), _endpoint(self.hi)
        if lo == math.inf or hi == -math.inf:
            raise InvalidInputError("interval endpoints point the wrong way")
        if not lo < hi:
            raise InvalidInputError(f"empty interval ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise InvalidInputError("unbounded interval has no width")
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def __str__(self) -> str:
        return f"({self.lo}, {self.hi})"


REAL_LINE = Interval(-math.inf, math.inf)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_at(p: Poly, x) -> int:
    """Sign of ``p`` at a rational point or at +/- infinity."""
    if p.is_zero():
        return 0
    if x == math.inf:
        return sign(p.lc)
    if x == -math.inf:
        return sign(p.lc) * (-1 if int(p.degree) % 2 else 1)
    return sign(p(x))


def _primitive_ints(q: Poly) -> tuple[int, ...]:
    # positive multiple of q with coprime integer coefficients
    den = math.lcm(*(c.denominator for c in q.coeffs))
    ints = [int(c * den) for c in q.coeffs]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints)


def _sign_ints(ints: tuple[int, ...], x) -> int:
    """Sign of the integer polynomial at rational or infinite ``x``."""
    if not ints:
        return 0
    if x == math.inf:
        return sign(ints[-1])
    if x == -math.inf:
        return sign(ints[-1]) * (-1 if len(ints) % 2 == 0 else 1)
    # b^n q(a/b) by homogeneous Horner, all in integers
    a, b = x.numerator, x.denominator
    acc, pb = ints[-1], 1
    for c in reversed(ints[:-1]):
        pb *= b
        acc = acc * a + c * pb
    return sign(acc)


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence ``p, p', -rem(p, p'), ...``."""

    polys: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "_ints", tuple(_primitive_ints(q) for q in self.polys))

    def variations(self, x) -> int:
        if not isinstance(x, float):
            x = as_rational(x)
        v = 0
        prev = 0
        for q in self._ints:
            s = _sign_ints(q, x)
            if s:
                if prev and s != prev:
                    v += 1
                prev = s
        return v

    def count_half_open(self, lo, hi) -> int:
        """Distinct roots of ``polys[0]`` in ``(lo, hi]`` (chain of a square-free poly)."""
        return self.variations(lo) - self.variations(hi)


def sturm_chain(p: Poly) -> SturmChain:
    """Canonical Sturm chain of ``p``; ends at the last nonzero remainder."""
    if p.is_constant():
        raise InvalidInputError("Sturm chain needs a non-constant polynomial")
    return _chain(p)


@lru_cache(maxsize=8192)
def _chain(p: Poly) -> SturmChain:
    polys = [p, p.derivative()]
    while True:
        r = polys[-2] % polys[-1]
        if r.is_zero():
            break
        polys.append(-r)
    return SturmChain(tuple(polys))


@lru_cache(maxsize=8192)
def _normalized_chain(p: Poly) -> SturmChain:
    # positive rescaling keeps every sign and curbs coefficient growth
    polys = [_unit(p), _unit(p.derivative())]
    while True:
        r = polys[-2] % polys[-1]
        if r.is_zero():
            break
        polys.append(_unit(-r))
    return SturmChain(tuple(polys))


def _unit(q: Poly) -> Poly:
    return q / abs(q.lc)


def _factors(p: Poly) -> list[tuple[Poly, int]]:
    if p.is_constant():
        return []
    return square_free_decomposition(p)


def _as_interval(iv) -> Interval:
    if iv is None:
        return REAL_LINE
    if isinstance(iv, Interval):
        return iv
    lo, hi = iv
    return Interval(lo, hi)


def count_real_roots(p: Poly, iv=REAL_LINE, with_multiplicity: bool = False) -> int:
    """Number of real roots of ``p`` in the open interval ``iv``.

    Finite endpoints must not be roots of ``p``; otherwise an
    :class:`EndpointCollisionError` is raised so the caller can nudge.
    """
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has infinitely many roots")
    iv = _as_interval(iv)
    for x in (iv.lo, iv.hi):
        if not math.isinf(x) and p(x) == 0:
            raise EndpointCollisionError(f"endpoint {x} is a root of the polynomial")
    total = 0
    for f, m in _factors(p):
        c = _normalized_chain(f).count_half_open(iv.lo, iv.hi)
        total += m * c if with_multiplicity else c
    return total


def count_roots_open(p: Poly, iv, with_multiplicity: bool = False) -> int:
    """Like :func:`count_real_roots` but endpoints may be roots; they are excluded."""
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has infinitely many roots")
    iv = _as_interval(iv)
    total = 0
    for f, m in _factors(p):
        c = _normalized_chain(f).count_half_open(iv.lo, iv.hi)
        if not math.isinf(iv.hi) and f(iv.hi) == 0:
            c -= 1
        total += m * c if with_multiplicity else c
    return total


def nonreal_count(p: Poly) -> int:
    """Number of non-real zeroes of ``p`` counted with multiplicity."""
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has no zero count")
    return int(p.degree) - count_real_roots(p, REAL_LINE, with_multiplicity=True)


@dataclass(frozen=True)
class ZeroCensus:
    degree: int
    real_distinct: int
    real_with_mult: int
    nonreal_with_mult: int


def census(p: Poly) -> ZeroCensus:
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has no census")
    deg = int(p.degree)
    real_m = count_real_roots(p, REAL_LINE, with_multiplicity=True)
    return ZeroCensus(deg, count_real_roots(p), real_m, deg - real_m)


def cauchy_bound(p: Poly) -> Fraction:
    """``1 + max |a_i / a_n|``: every root lies strictly inside ``(-B, B)``."""
    if p.is_constant():
        return Fraction(1)
    lc = abs(p.lc)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1])


def _split_points():
    # 1/2, 1/3, 2/3, 1/4, 3/4, ... : finitely many can be roots
    yield Fraction(1, 2)
    for q in count(3):
        for k in range(1, q):
            if math.gcd(k, q) == 1:
                yield Fraction(k, q)


def _split(P: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    for t in _split_points():
        m = lo + t * (hi - lo)
        if P(m) != 0:
            return m
    raise AssertionError("unreachable")


def _isolate_square_free(P: Poly, lo: Fraction, hi: Fraction) -> list[Interval]:
    chain = _normalized_chain(P)
    out = []
    stack = [(lo, hi, chain.count_half_open(lo, hi))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append(Interval(a, b))
            continue
        m = _split(P, a, b)
        left = chain.count_half_open(a, m)
        stack.append((a, m, left))
        stack.append((m, b, c - left))
    out.sort(key=lambda iv: iv.lo)
    return out


def isolate_real_roots(p: Poly) -> list[tuple[Interval, int]]:
    """Disjoint open rational intervals, one per distinct real root, ascending.

    Each interval carries the multiplicity of its root.  Endpoints are never
    roots of ``p``.
    """
    if p.is_constant():
        raise InvalidInputError("isolation needs a non-constant polynomial")
    factors = _factors(p)
    P = square_free_part(p)
    B = cauchy_bound(P)
    out = []
    for iv in _isolate_square_free(P, -B, B):
        mult = None
        for f, m in factors:
            if _normalized_chain(f).count_half_open(iv.lo, iv.hi) == 1:
                mult = m
                break
        out.append((iv, mult))
    return out


def refine_root(p: Poly, iv, width) -> Interval:
    """Shrink an isolating interval of ``p`` to width at most ``width``."""
    width = as_rational(width, "width")
    if width <= 0:
        raise InvalidInputError("width must be positive")
    iv = _as_interval(iv)
    P = square_free_part(p)
    if count_roots_open(P, iv) != 1:
        raise InvalidInputError(f"{iv} does not isolate exactly one root")
    B = cauchy_bound(P)
    lo = iv.lo if not math.isinf(iv.lo) else -B
    hi = iv.hi if not math.isinf(iv.hi) else B
    chain = _normalized_chain(P)
    while hi - lo > width:
        m = (lo + hi) / 2
        if P(m) == 0:
            eps = min(width, m - lo, hi - m) / 2
            return Interval(m - eps, m + eps)
        # (lo, m] excludes lo, and m is not a root
        if chain.count_half_open(lo, m) == 1:
            hi = m
        else:
            lo = m
    return Interval(lo, hi)


def sign_right_of(p: Poly, a) -> int:
    """Sign of ``p`` on ``(a, a + delta)`` for all small ``delta > 0``."""
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has no sign")
    a = as_rational(a)
    q = p
    while True:
        v = q(a)
        if v != 0:
            return sign(v)
        q = q.derivative()


def separate_root(q: Poly, iv: Interval, avoid) -> Interval:
    """Shrink ``iv`` (isolating a root of ``q``) until its closure avoids ``avoid``.

    ``avoid`` is a sequence of nonzero polynomials none of which vanishes at
    the isolated root of ``q``; on return no member has a root in the closed
    interval.
    """
    Q = square_free_part(q)
    iv = _as_interval(iv)
    if not iv.bounded:
        B = cauchy_bound(Q)
        iv = Interval(iv.lo if not math.isinf(iv.lo) else -B, iv.hi if not math.isinf(iv.hi) else B)
    lo, hi = iv.lo, iv.hi
    chain = _normalized_chain(Q)
    avoid = [a for a in avoid if not a.is_constant()]

    def clean(a, b):
        for g in avoid:
            if g(a) == 0 or g(b) == 0 or count_real_roots(g, Interval(a, b)) > 0:
                return False
        return True

    while not clean(lo, hi):
        m = (lo + hi) / 2
        if Q(m) == 0:
            eps = (hi - lo) / 4
            while not clean(m - eps, m + eps):
                eps /= 2
            return Interval(m - eps, m + eps)
        if chain.count_half_open(lo, m) == 1:
            hi = m
        else:
            lo = m
    return Interval(lo, hi)


def rational_root_in(p: Poly, iv) -> Fraction | None:
    """The root of ``p`` isolated by ``iv`` if it is rational, else ``None``.

    Uses the rational root theorem: a rational root has denominator dividing
    the leading coefficient of the integer-normalised polynomial, so once the
    interval is narrower than ``1/lc`` only one candidate remains.
    """
    P = square_free_part(p)
    den = math.lcm(*(c.denominator for c in P.coeffs))
    ints = [int(c * den) for c in P.coeffs]
    lc = abs(ints[-1])
    iv = refine_root(P, iv, Fraction(1, 2 * lc))
    if not iv.bounded:
        return None
    k = math.ceil(iv.lo * lc)
    cand = Fraction(k, lc)
    if iv.contains(cand) and P(cand) == 0:
        return cand
    return None
