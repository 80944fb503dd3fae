"""Independent reference computations built on sympy.

Nothing here calls into kappaforge except to convert coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from kappaforge import Poly

Z = sp.Symbol("z")


def to_sympy(p: Poly) -> sp.Poly:
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], Z, domain="QQ")


def from_sympy(q) -> Poly:
    q = sp.Poly(q, Z, domain="QQ")
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(q.all_coeffs())])


def expand(expr) -> Poly:
    return from_sympy(sp.expand(expr))


def real_root_count(p: Poly, with_multiplicity: bool = True) -> int:
    q = to_sympy(p)
    if with_multiplicity:
        return len(sp.real_roots(q))
    return len(set(sp.real_roots(q)))


def nonreal_count(p: Poly) -> int:
    return int(p.degree) - real_root_count(p)


def count_in(p: Poly, lo, hi) -> int:
    """Real roots with multiplicity in the open interval (lo, hi)."""
    q = to_sympy(p)
    lo = sp.Rational(lo.numerator, lo.denominator) if isinstance(lo, Fraction) else lo
    hi = sp.Rational(hi.numerator, hi.denominator) if isinstance(hi, Fraction) else hi
    return sum(1 for r in sp.real_roots(q) if lo < r < hi)


def f_kappa(p: Poly, kappa: Fraction) -> sp.Poly:
    e = to_sympy(p).as_expr()
    k = sp.Rational(kappa.numerator, kappa.denominator)
    return sp.Poly(sp.expand(e * sp.diff(e, Z, 2) - k * sp.diff(e, Z) ** 2), Z, domain="QQ")


def nontrivial_degree(p: Poly, kappa: Fraction) -> int:
    """Degree of F with all roots of p removed, via sympy gcds."""
    F = f_kappa(p, kappa)
    s = sp.Poly(sp.quo(to_sympy(p), sp.gcd(to_sympy(p), to_sympy(p).diff(Z))), Z)
    g = sp.gcd(F, s)
    while g.degree() > 0:
        F = sp.quo(F, g)
        g = sp.gcd(F, s)
    return F.degree()
