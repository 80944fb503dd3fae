"""Seeded generators for random polynomial instances.

Each trial gets its own :class:`random.Random` seeded from a hash of the
master seed and the trial index, so results never depend on execution order.
"""

from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction

from .polycore import Poly, RootSpec

# Ladder values (k-1)/k have denominator k <= 16; prime denominators above 16
# keep sampled kappa off the ladder for every supported degree.
OFF_LADDER_DENOMINATORS = (17, 19, 23, 29, 31, 37)


def trial_rng(seed: int, trial: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))


def distinct_rationals(rng: random.Random, count: int, bound: int = 5, max_den: int = 3) -> list[Fraction]:
    out: set[Fraction] = set()
    while len(out) < count:
        out.add(random_rational(rng, bound, max_den))
    return sorted(out)


def random_multiplicities(rng: random.Random, d: int, n_max: int, m_max: int = 4) -> list[int]:
    """``d`` multiplicities >= 1 with total at most ``n_max``."""
    mults = [1] * d
    budget = n_max - d
    for i in range(d):
        if budget <= 0:
            break
        extra = rng.randint(0, min(m_max - 1, budget))
        mults[i] += extra
        budget -= extra
    rng.shuffle(mults)
    return mults


def random_real_spec(rng: random.Random, d_min: int = 2, d_max: int = 6, n_max: int = 10) -> RootSpec:
    d = rng.randint(d_min, d_max)
    roots = distinct_rationals(rng, d)
    mults = random_multiplicities(rng, d, max(n_max, d))
    return RootSpec(list(zip(roots, mults)))


def random_complex_poly(rng: random.Random, n_max: int = 10) -> tuple[Poly, int, int]:
    """Product of rational linear factors and irreducible real quadratics.

    Returns ``(p, d, nonreal)`` where ``d`` is the planted distinct-zero count
    and ``nonreal`` the planted number of non-real zeroes with multiplicity.
    """
    while True:
        n = rng.randint(2, n_max)
        pairs = rng.randint(0, n // 2)
        reals = n - 2 * pairs
        p = Poly.constant(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
        d = 0
        nonreal = 0
        budget = reals
        used: set[Fraction] = set()
        while budget > 0:
            r = random_rational(rng)
            if r in used:
                continue
            used.add(r)
            m = rng.randint(1, budget)
            p = p * Poly([-r, 1]) ** m
            d += 1
            budget -= m
        centres: set[tuple[Fraction, Fraction]] = set()
        budget = pairs
        while budget > 0:
            c = (random_rational(rng), Fraction(rng.randint(1, 9), rng.randint(1, 3)))
            if c in centres:
                continue
            centres.add(c)
            m = rng.randint(1, budget)
            re, im = c
            quad = Poly([re * re + im * im, -2 * re, 1])
            p = p * quad**m
            d += 2
            nonreal += 2 * m
            budget -= m
        if d >= 2:
            return p, d, nonreal


def random_integer_poly(rng: random.Random, n: int, bound: int = 5) -> Poly:
    coeffs = [rng.randint(-bound, bound) for _ in range(n)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-bound, bound)
    return Poly(coeffs + [lead])


def off_ladder_kappa(rng: random.Random, lo, hi) -> Fraction:
    """Random rational strictly inside ``(lo, hi)`` whose denominator has no factor <= 16."""
    den = rng.choice(OFF_LADDER_DENOMINATORS)
    while True:
        first = math.floor(lo * den) + 1
        last = math.ceil(hi * den) - 1
        if first <= last:
            for _ in range(64):
                k = Fraction(rng.randint(first, last), den)
                if k.denominator > 16:
                    return k
        den *= rng.choice(OFF_LADDER_DENOMINATORS)


def conjecture3_instance(rng: random.Random, degree_range: tuple[int, int] = (2, 10)) -> Poly:
    """Even-degree polynomial with no real zeroes whose derivative is real-rooted.

    Integrates a real-rooted odd-degree polynomial with positive leading
    coefficient and lifts it above the largest value it takes at the
    critical points.
    """
    lo, hi = degree_range
    choices = [n for n in range(max(lo, 2), hi + 1) if n % 2 == 0]
    if not choices:
        raise ValueError("degree range contains no even degree >= 2")
    n = rng.choice(choices)
    d = rng.randint(1, n - 1)
    roots = distinct_rationals(rng, d)
    mults = [1] * d
    budget = n - 1 - d
    while budget > 0:
        mults[rng.randrange(d)] += 1
        budget -= 1
    r = RootSpec(list(zip(roots, mults))).to_poly()
    antideriv = Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(r.coeffs)])
    peak = max(abs(antideriv(x)) for x in roots)
    c = peak + Fraction(rng.randint(1, 20), rng.randint(1, 4))
    return antideriv + c
