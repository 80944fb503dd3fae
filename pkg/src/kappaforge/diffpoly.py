"""The differential polynomial ``F_kappa[p] = p p'' - kappa (p')^2`` and friends.

Covers the derivative-shifted companion ``F_hat``, the critical ladder of
``kappa`` values ``(k-1)/k``, the split of ``F_kappa[p]`` into trivial zeroes
(shared with ``p``) and non-trivial zeroes, local expansions at zeroes of
``p``, and the rational function ``R = p p'' / (p')^2`` with its residues.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._enclosure import Enclosure, poly_range
from ._validation import as_rational, check_positive_int
from .errors import InvalidInputError, PreconditionError
from .polycore import (
    Poly,
    gcd,
    multiplicity_of_factor,
    square_free_decomposition,
    square_free_part,
)
from .rootcount import (
    Interval,
    count_real_roots,
    isolate_real_roots,
    nonreal_count,
    rational_root_in,
    refine_root,
    separate_root,
)

__all__ = [
    "f_kappa",
    "f_hat_kappa",
    "KappaKind",
    "KappaClass",
    "kappa_classify",
    "ladder",
    "kappa_hat_sequence",
    "TrivialZero",
    "NontrivialReport",
    "strip_roots_of",
    "nontrivial_zeros",
    "ExpansionCoeffs",
    "local_expansion",
    "TrivialPrediction",
    "trivial_multiplicity_ledger",
    "q_numerator",
    "q_hat_numerator",
    "r_defect",
    "r_fraction",
    "equation_numerator",
    "mu_polynomial",
    "r_second_derivative",
    "ResidueEnclosure",
    "residues_beta",
    "POLE",
    "sample_R",
]


def _f(p: Poly, kappa: Fraction) -> Poly:
    dp = p.derivative()
    return p * dp.derivative() - dp * dp * kappa


def f_kappa(p: Poly, kappa) -> Poly:
    """``p p'' - kappa (p')^2`` expanded exactly."""
    if p.degree < 2:
        raise InvalidInputError("F_kappa needs deg p >= 2")
    return _f(p, as_rational(kappa, "kappa"))


def f_hat_kappa(p: Poly, kappa) -> Poly:
    """``F_{2 - 1/kappa}[p']``, the companion linked to ``F_kappa[p]`` on intervals."""
    kappa = as_rational(kappa, "kappa")
    if kappa == 0:
        raise ZeroDivisionError("F_hat is undefined at kappa = 0")
    if p.degree < 2:
        raise InvalidInputError("F_hat needs deg p >= 2")
    return _f(p.derivative(), 2 - 1 / kappa)


class KappaKind(enum.Enum):
    NON_CRITICAL = "non-critical"
    CRITICAL = "critical"
    TOP_CRITICAL = "top-critical"


@dataclass(frozen=True)
class KappaClass:
    kappa: Fraction
    kind: KappaKind
    k: int | None = None

    def __str__(self) -> str:
        if self.kind is KappaKind.NON_CRITICAL:
            return "non-critical"
        return f"{self.kind.value}(k={self.k})"


def kappa_classify(kappa, n: int) -> KappaClass:
    """Locate ``kappa`` on the ladder ``{(k-1)/k : k = 1..n}``."""
    kappa = as_rational(kappa, "kappa")
    check_positive_int(n, "n", 2)
    if kappa < 1:
        k = 1 / (1 - kappa)
        if k.denominator == 1 and 1 <= k <= n:
            k = int(k)
            kind = KappaKind.TOP_CRITICAL if k == n else KappaKind.CRITICAL
            return KappaClass(kappa, kind, k)
    return KappaClass(kappa, KappaKind.NON_CRITICAL)


def ladder(n: int) -> list[Fraction]:
    return [Fraction(k - 1, k) for k in range(1, n + 1)]


def kappa_hat_sequence(kappa, steps: int) -> list[Fraction]:
    """``[k0, k1, ..., k_steps]`` with ``k_i = 2 - 1/k_{i-1}``."""
    seq = [as_rational(kappa, "kappa")]
    for _ in range(steps):
        if seq[-1] == 0:
            raise ZeroDivisionError("kappa sequence hit zero")
        seq.append(2 - 1 / seq[-1])
    return seq


@dataclass(frozen=True)
class TrivialZero:
    """Roots of ``factor`` are zeroes of ``p`` with ``root_multiplicity`` and
    zeroes of ``F_kappa[p]`` with ``trivial_multiplicity``."""

    factor: Poly
    root_multiplicity: int
    trivial_multiplicity: int

    @property
    def root(self) -> Fraction | None:
        if self.factor.degree == 1:
            return -self.factor.coeffs[0] / self.factor.coeffs[1]
        return None

    @property
    def total(self) -> int:
        return int(self.factor.degree) * self.trivial_multiplicity


@dataclass(frozen=True)
class NontrivialReport:
    """``F_kappa[p]`` split into trivial and non-trivial zeroes.

    When ``identically_zero`` is set, ``nontrivial_part`` is the zero
    polynomial, every count is 0 and the ledger is empty.
    """

    f_kappa: Poly
    nontrivial_part: Poly
    z_nt: int
    z_real_nt: int
    z_nonreal_nt: int
    trivial_ledger: tuple[TrivialZero, ...]
    identically_zero: bool


def strip_roots_of(f: Poly, p: Poly) -> Poly:
    """Divide every root of ``p`` out of ``f`` (with full multiplicity)."""
    s = square_free_part(p)
    g = gcd(f, s)
    while g.degree > 0:
        f = f.exact_div(g)
        g = gcd(f, s)
    return f


def nontrivial_zeros(p: Poly, kappa) -> NontrivialReport:
    kappa = as_rational(kappa, "kappa")
    F = f_kappa(p, kappa)
    if F.is_zero():
        return NontrivialReport(F, Poly.zero(), 0, 0, 0, (), True)
    N = strip_roots_of(F, p)
    T = F.exact_div(N)
    ledger = []
    t_parts = square_free_decomposition(T) if T.degree > 0 else []
    t_support = square_free_part(T) if T.degree > 0 else Poly.constant(1)
    for g, m in square_free_decomposition(p):
        for h, t in t_parts:
            c = gcd(g, h)
            if c.degree > 0:
                ledger.append(TrivialZero(c, m, t))
        rest = g.exact_div(gcd(g, t_support))
        if rest.degree > 0:
            ledger.append(TrivialZero(rest, m, 0))
    z_nt = int(N.degree)
    z_real = count_real_roots(N, with_multiplicity=True) if z_nt > 0 else 0
    return NontrivialReport(F, N, z_nt, z_real, z_nt - z_real, tuple(ledger), False)


@dataclass(frozen=True)
class ExpansionCoeffs:
    """``p(z) = A (z-l)^m + B (z-l)^(m+1) + C (z-l)^(m+2) + ...`` near a zero ``l``."""

    A: Fraction
    B: Fraction
    C: Fraction
    m: int


def local_expansion(p: Poly, lam) -> ExpansionCoeffs:
    lam = as_rational(lam, "lambda")
    if p.is_zero():
        raise InvalidInputError("zero polynomial has no local expansion")
    s = p.shift(lam).coeffs
    if s[0] != 0:
        raise InvalidInputError(f"{lam} is not a root of p")
    m = next(i for i, c in enumerate(s) if c != 0)
    pad = list(s) + [Fraction(0)] * 2
    return ExpansionCoeffs(pad[m], pad[m + 1], pad[m + 2], m)


@dataclass(frozen=True)
class TrivialPrediction:
    """Predicted multiplicity in ``F_kappa[p]`` for the roots of ``factor``.

    ``exact`` is False only for roots with ``B = C = 0`` at a ladder point,
    where the expansion merely gives a lower bound (such roots cannot occur
    for real-rooted ``p``).
    """

    factor: Poly
    root_multiplicity: int
    predicted: int
    exact: bool
    actual: int | None
    consistent: bool


def trivial_multiplicity_ledger(p: Poly, kappa) -> list[TrivialPrediction]:
    """Predict trivial multiplicities from the local expansion and check them.

    Off the ladder value ``(m-1)/m`` a root of multiplicity ``m`` is a zero of
    ``F_kappa[p]`` of multiplicity ``2m - 2``; on it, ``2m - 1`` when
    ``p^(m+1)`` does not vanish there, else ``2m`` when ``p^(m+2)`` does not.
    """
    kappa = as_rational(kappa, "kappa")
    F = f_kappa(p, kappa)
    entries: list[tuple[Poly, int, int, bool]] = []
    for g, m in square_free_decomposition(p):
        if kappa != Fraction(m - 1, m):
            entries.append((g, m, 2 * m - 2, True))
            continue
        b_zero = gcd(g, p.derivative(m + 1))
        b_nonzero = g.exact_div(b_zero)
        if b_nonzero.degree > 0:
            entries.append((b_nonzero, m, 2 * m - 1, True))
        if b_zero.degree > 0:
            c_zero = gcd(b_zero, p.derivative(m + 2))
            c_nonzero = b_zero.exact_div(c_zero)
            if c_nonzero.degree > 0:
                entries.append((c_nonzero, m, 2 * m, True))
            if c_zero.degree > 0:
                entries.append((c_zero, m, 2 * m + 1, False))
    out = []
    for h, m, pred, exact in entries:
        if F.is_zero():
            out.append(TrivialPrediction(h, m, pred, exact, None, True))
            continue
        actual = multiplicity_of_factor(F, h)
        if exact:
            ok = actual == pred
        else:
            ok = (F % h**pred).is_zero()
        out.append(TrivialPrediction(h, m, pred, exact, actual, ok))
    bad = [e for e in out if not e.consistent]
    if bad:
        raise AssertionError(f"trivial multiplicity prediction failed: {bad}")
    return out


def q_numerator(p: Poly, kappa) -> Poly:
    """Numerator of ``Q_kappa[p] = F_kappa[p] / p^2`` in lowest terms."""
    F = f_kappa(p, kappa)
    if F.is_zero():
        raise PreconditionError("Q_kappa[p] vanishes identically")
    return F.exact_div(gcd(F, p * p))


def q_hat_numerator(p: Poly, kappa) -> Poly:
    """Numerator of ``F_hat / (p')^2`` in lowest terms."""
    G = f_hat_kappa(p, kappa)
    if G.is_zero():
        raise PreconditionError("the companion function vanishes identically")
    dp = p.derivative()
    return G.exact_div(gcd(G, dp * dp))


def r_defect(p: Poly) -> tuple[Poly, Poly]:
    """``R - (n-1)/n`` as ``F_{(n-1)/n}[p] / (p')^2``, uncancelled."""
    if p.degree < 2:
        raise InvalidInputError("R needs deg p >= 2")
    n = int(p.degree)
    dp = p.derivative()
    return f_kappa(p, Fraction(n - 1, n)), dp * dp


def r_fraction(p: Poly) -> tuple[Poly, Poly]:
    """``R = p p'' / (p')^2`` in lowest terms (numerator, denominator)."""
    if p.degree < 2:
        raise InvalidInputError("R needs deg p >= 2")
    dp = p.derivative()
    num, den = p * dp.derivative(), dp * dp
    g = gcd(num, den)
    return num.exact_div(g), den.exact_div(g)


def equation_numerator(p: Poly, kappa) -> Poly:
    """Polynomial whose roots (with multiplicity) are the solutions of ``R = kappa``.

    It is ``F_kappa[p]`` with its common part with ``(p')^2`` cancelled.
    """
    F = f_kappa(p, kappa)
    if F.is_zero():
        raise PreconditionError("R is constant: F_kappa[p] vanishes identically")
    dp = p.derivative()
    return F.exact_div(gcd(F, dp * dp))


def mu_polynomial(p: Poly) -> Poly:
    """``p'`` with every root of ``p`` divided out: its roots are the poles of ``R``."""
    return strip_roots_of(p.derivative(), p)


def r_second_derivative(p: Poly) -> tuple[Poly, Poly]:
    """``R''`` as ``(numerator, v**4)`` with ``v = p' / gcd(p, p')``.

    The denominator is a fourth power, so off the poles the sign of ``R''``
    is the sign of the numerator.
    """
    g = gcd(p, p.derivative())
    u = p.exact_div(g)
    v = p.derivative().exact_div(g)
    dv = v.derivative()
    p1 = u.derivative() * v - u * dv
    p2 = p1.derivative() * v - p1 * dv * 2
    p3 = p2.derivative() * v - p2 * dv * 3
    return -p3, v**4


@dataclass(frozen=True)
class ResidueEnclosure:
    """Certified enclosure ``[beta_lo, beta_hi]`` of ``p(mu)/p''(mu)``."""

    mu: Interval
    beta_lo: Fraction
    beta_hi: Fraction
    exact: bool = False

    @property
    def beta_mid(self) -> Fraction:
        return (self.beta_lo + self.beta_hi) / 2

    def mu_enclosure(self) -> Enclosure:
        return Enclosure(self.mu.lo, self.mu.hi)


def _require_real_rooted(p: Poly, d_min: int = 2) -> None:
    if p.degree < 2:
        raise PreconditionError("polynomial must have degree >= 2")
    if nonreal_count(p) != 0:
        raise PreconditionError("polynomial is not real-rooted")
    if square_free_part(p).degree < d_min:
        raise PreconditionError(f"polynomial needs at least {d_min} distinct zeroes")


def residues_beta(p: Poly, width) -> list[ResidueEnclosure]:
    """Enclose ``beta_j = p(mu_j)/p''(mu_j)`` for every pole ``mu_j`` of ``R``.

    Each ``mu`` interval is refined until ``p`` and ``p''`` have constant
    sign on it and the interval quotient is narrower than ``width``.
    """
    width = as_rational(width, "width")
    if width <= 0:
        raise InvalidInputError("width must be positive")
    _require_real_rooted(p)
    d2 = p.derivative(2)
    mu = mu_polynomial(p)
    out = []
    if mu.degree < 1:
        return out
    for iv, _ in isolate_real_roots(mu):
        exact_mu = rational_root_in(mu, iv)
        if exact_mu is not None:
            beta = p(exact_mu) / d2(exact_mu)
            eps = min(width, iv.hi - exact_mu, exact_mu - iv.lo) / 2
            out.append(ResidueEnclosure(Interval(exact_mu - eps, exact_mu + eps), beta, beta, True))
            continue
        iv = separate_root(mu, iv, [p, d2])
        while True:
            box = Enclosure(iv.lo, iv.hi)
            den = poly_range(d2, box)
            if not den.contains_zero():
                enc = poly_range(p, box) / den
                if enc.width <= width:
                    break
            iv = refine_root(mu, iv, iv.width / 2)
        out.append(ResidueEnclosure(iv, enc.lo, enc.hi))
    return out


class _Pole:
    def __repr__(self) -> str:
        return "POLE"

    def __str__(self) -> str:
        return "pole"


POLE = _Pole()


def sample_R(p: Poly, grid: Sequence) -> list[tuple[Fraction, object]]:
    """Exact ``R(x)`` at each grid point; :data:`POLE` where ``p'(x) = 0``."""
    if p.degree < 2:
        raise InvalidInputError("R needs deg p >= 2")
    dp = p.derivative()
    d2 = dp.derivative()
    out = []
    for x in grid:
        x = as_rational(x, "grid point")
        s = dp(x)
        out.append((x, POLE if s == 0 else p(x) * d2(x) / (s * s)))
    return out
