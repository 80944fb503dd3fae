"""Mechanical verifiers for the counting statements about ``F_kappa[p]``.

Every verifier takes a concrete polynomial (or a RootSpec) and a
rational ``kappa``, computes the relevant counts exactly and compares them
with the asserted value or bracket.  A failed comparison is returned as
data; only unmet hypotheses raise :class:`PreconditionError`.

Claim identifiers follow the numbering of the results being checked, for
example ``"Thm2.1-(2.5)-k=3"`` or ``"Cor3.2-(3.11)-k=2"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, inf

from ._enclosure import Enclosure
from ._validation import as_rational, check_positive_int
from .diffpoly import (
    KappaKind,
    equation_numerator,
    f_hat_kappa,
    f_kappa,
    kappa_classify,
    ladder,
    mu_polynomial,
    nontrivial_zeros,
    q_hat_numerator,
    q_numerator,
    r_fraction,
    r_second_derivative,
    residues_beta,
)
from .errors import InvalidInputError, PreconditionError
from .polycore import Poly, RootSpec, distinct_zero_count, gcd, square_free_decomposition
from .rootcount import (
    REAL_LINE,
    Interval,
    cauchy_bound,
    count_real_roots,
    count_roots_open,
    isolate_real_roots,
    nonreal_count,
    rational_root_in,
    separate_root,
    sign_right_of,
)

__all__ = [
    "MultiplicityProfile",
    "VerificationResult",
    "SweepWindow",
    "SweepReport",
    "profile",
    "main_bounds_clauses",
    "verify_main_bounds",
    "kappa_sweep",
    "degree_drop_index",
    "verify_total_nontrivial",
    "verify_degree_drop",
    "verify_distinct_bound",
    "verify_R_structure",
    "verify_R_zero_layout",
    "verify_equation_solution_count",
    "verify_interval_inequality",
    "verify_global_inequality",
    "verify_sign_lemma",
    "root_multiplicity",
]


@dataclass(frozen=True)
class MultiplicityProfile:
    n: int
    d: int
    n_1: int
    n_d: int
    interior: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.interior)

    @property
    def uniform(self) -> bool:
        return self.r <= 1


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of checking one claim on one instance.

    ``passed`` needs ``lower <= observed <= upper`` and every entry of
    ``checks`` to hold.
    """

    claim_id: str
    observed: int
    lower: int
    upper: int
    witness: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.lower <= self.observed <= self.upper and all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "passed": self.passed,
            "observed": self.observed,
            "lower": self.lower,
            "upper": self.upper,
            "checks": dict(self.checks),
            "witness": dict(self.witness),
            "note": self.note,
        }


def _lad(m: int) -> Fraction:
    return Fraction(m - 1, m)


def _real_spec(spec: RootSpec) -> tuple[RootSpec, Poly]:
    if not isinstance(spec, RootSpec):
        raise InvalidInputError("expected a RootSpec")
    if spec.d < 2:
        raise PreconditionError("at least two distinct zeroes are required")
    spec = spec.sorted()
    return spec, spec.to_poly()


def profile(spec: RootSpec) -> MultiplicityProfile:
    """Multiplicity histogram of the interior zeroes ``l_2 .. l_{d-1}``."""
    if spec.d < 2:
        raise InvalidInputError("profile needs at least two distinct zeroes")
    roots = spec.sorted().roots
    hist: dict[int, int] = {}
    for _, m in roots[1:-1]:
        hist[m] = hist.get(m, 0) + 1
    return MultiplicityProfile(
        n=spec.n,
        d=spec.d,
        n_1=roots[0][1],
        n_d=roots[-1][1],
        interior=tuple(sorted(hist.items())),
    )


def main_bounds_clauses(prof: MultiplicityProfile, kappa) -> list[tuple[str, int, int]]:
    """All clauses whose ``kappa`` window contains ``kappa``, with brackets.

    Boundary conventions follow the displayed inequalities verbatim; the
    caller intersects the returned brackets.
    """
    kappa = as_rational(kappa, "kappa")
    n, d = prof.n, prof.d
    top = Fraction(n - 1, n)
    out: list[tuple[str, int, int]] = []
    if d == 2:
        out.append(("Thm2.3", 0, 0) if kappa <= top else ("Thm2.3", 2, 2))
    else:
        thm = "Thm2.1" if d >= 4 and prof.r >= 2 else "Thm2.2"
        ms = [m for m, _ in prof.interior]
        ds = [c for _, c in prof.interior]
        if kappa > top:
            out.append((f"{thm}-(2.7)", 2 * d - 2, 2 * d - 2))
        elif kappa == top:
            out.append((f"{thm}-(2.6)", 2 * d - 4, 2 * d - 4))
        else:
            if kappa <= _lad(ms[0]):
                out.append((f"{thm}-(2.2)", 0, 0))
            for j in range(len(ms) - 1):
                if _lad(ms[j]) < kappa <= _lad(ms[j + 1]):
                    out.append((f"{thm}-(2.3)-j={j + 1}", 0, 2 * sum(ds[: j + 1])))
            if _lad(ms[-1]) < kappa < Fraction(n - d + 1, n - d + 2):
                out.append((f"{thm}-(2.4)", 0, 2 * d - 4))
            for k in range(2, d):
                if Fraction(n - d + k - 1, n - d + k) <= kappa < Fraction(n - d + k, n - d + k + 1):
                    out.append((f"{thm}-(2.5)-k={k}", 2 * k - 2, 2 * d - 4))
    if kappa <= 0:
        out.append(("Thm4.6", 0, 0))
    if kappa > top:
        out.append(("Thm4.5-(4.14)", 2 * d - 2, 2 * d - 2))
    elif kappa == top:
        out.append(("Thm4.5-(4.15)", 2 * d - 4, 2 * d - 4))
    return out


def _z_c(p: Poly, kappa: Fraction) -> int:
    F = f_kappa(p, kappa)
    return 0 if F.is_zero() else nonreal_count(F)


def verify_main_bounds(spec: RootSpec, kappa) -> VerificationResult:
    kappa = as_rational(kappa, "kappa")
    spec, p = _real_spec(spec)
    prof = profile(spec)
    clauses = main_bounds_clauses(prof, kappa)
    lo, hi = 0, 2 * prof.d - 2
    for _, a, b in clauses:
        lo, hi = max(lo, a), min(hi, b)
    observed = _z_c(p, kappa)
    note = "" if lo <= hi else "applicable brackets have empty intersection"
    return VerificationResult(
        "&".join(c[0] for c in clauses),
        observed,
        lo,
        hi,
        witness={
            "poly": p,
            "kappa": kappa,
            "n": prof.n,
            "d": prof.d,
            "interior": [list(t) for t in prof.interior],
            "z_c": observed,
            "clauses": [[c, a, b] for c, a, b in clauses],
        },
        note=note,
    )


@dataclass(frozen=True)
class SweepWindow:
    kappa: Fraction
    z_c: int
    bracket: tuple[int, int]
    claim_id: str
    passed: bool


@dataclass(frozen=True)
class SweepReport:
    ladder: tuple[Fraction, ...]
    windows: tuple[SweepWindow, ...]
    monotone: bool

    @property
    def passed(self) -> bool:
        return self.monotone and all(w.passed for w in self.windows)

    def to_dict(self) -> dict:
        return {
            "ladder": list(self.ladder),
            "monotone": self.monotone,
            "passed": self.passed,
            "windows": [
                {
                    "kappa": w.kappa,
                    "z_c": w.z_c,
                    "bracket": list(w.bracket),
                    "claim_id": w.claim_id,
                    "passed": w.passed,
                }
                for w in self.windows
            ],
        }


def sweep_grid(n: int) -> list[Fraction]:
    lad = ladder(n)
    grid = set(lad)
    grid.update((a + b) / 2 for a, b in zip(lad, lad[1:]))
    grid.add(lad[-1] + 1)
    return sorted(grid)


def kappa_sweep(spec: RootSpec) -> SweepReport:
    """Evaluate the main bounds on every ladder point, every ladder midpoint
    and one point above the top of the ladder."""
    spec, _ = _real_spec(spec)
    windows = []
    for kappa in sweep_grid(spec.n):
        res = verify_main_bounds(spec, kappa)
        windows.append(SweepWindow(kappa, res.observed, (res.lower, res.upper), res.claim_id, res.passed))
    zs = [w.z_c for w in windows]
    monotone = all(a <= b for a, b in zip(zs, zs[1:]))
    return SweepReport(tuple(ladder(spec.n)), tuple(windows), monotone)


def degree_drop_index(p: Poly) -> int:
    """Largest ``l`` such that ``a_j = C(n,j) a_1^j / (n^j a_0^(j-1))`` for ``j <= l``.

    Returns ``n`` exactly when ``p`` is a constant multiple of ``(z - c)^n``.
    """
    if p.degree < 2:
        raise InvalidInputError("degree must be at least 2")
    n = int(p.degree)
    a = p.descending()
    a0, t = a[0], a[1] / n
    l = 1
    for j in range(2, n + 1):
        if a[j] != comb(n, j) * t**j / a0 ** (j - 1):
            break
        l = j
    return l


def _alpha(p: Poly, k: int) -> int:
    return sum(int(g.degree) for g, m in square_free_decomposition(p) if m == k)


def _simple_roots_on_second_derivative(p: Poly) -> int:
    simple = [g for g, m in square_free_decomposition(p) if m == 1]
    if not simple:
        return 0
    d2 = p.derivative(2)
    if d2.is_zero():
        return sum(int(g.degree) for g in simple)
    return sum(int(gcd(g, d2).degree) for g in simple)


def verify_total_nontrivial(p: Poly, kappa) -> VerificationResult:
    kappa = as_rational(kappa, "kappa")
    if p.degree < 2:
        raise InvalidInputError("degree must be at least 2")
    n = int(p.degree)
    d = distinct_zero_count(p)
    cls = kappa_classify(kappa, n)
    rep = nontrivial_zeros(p, kappa)
    witness = {"poly": p, "kappa": kappa, "n": n, "d": d, "class": str(cls), "z_nt": rep.z_nt}
    if d == 1:
        if cls.kind is KappaKind.TOP_CRITICAL:
            return VerificationResult(
                "Thm3.6-degenerate",
                int(rep.identically_zero),
                1,
                1,
                witness,
                note="unique zero at the top ladder value: F vanishes identically",
            )
        return VerificationResult("Rem2.4", rep.z_nt, 0, 0, witness)
    if cls.kind is KappaKind.NON_CRITICAL:
        return VerificationResult("Thm3.1", rep.z_nt, 2 * d - 2, 2 * d - 2, witness)
    if cls.kind is KappaKind.TOP_CRITICAL:
        l = degree_drop_index(p)
        witness["l"] = l
        return VerificationResult(f"Thm3.6-l={l}", rep.z_nt, 2 * d - 3 - l, 2 * d - 3 - l, witness)
    k = cls.k
    alpha = _alpha(p, k)
    witness["alpha_k"] = alpha
    real_rooted = nonreal_count(p) == 0
    if not real_rooted:
        return VerificationResult(
            f"Rem3.4-k={k}", rep.z_nt, 0, 2 * d - 2 - alpha, witness, note="upper bound only"
        )
    if k >= 2:
        return VerificationResult(
            f"Cor3.2-(3.11)-k={k}", rep.z_nt, 2 * d - 2 - 2 * alpha, 2 * d - 2 - alpha, witness
        )
    s = _simple_roots_on_second_derivative(p)
    extreme_simple = _extreme_simple(p)
    witness["simple_roots_on_p2"] = s
    witness["exact_count"] = 2 * d - 2 - alpha - s
    witness["corrected_bracket"] = [2 * d - 2 - 2 * alpha + extreme_simple, 2 * d - 2 - alpha]
    return VerificationResult(
        "Cor3.2-(3.12)",
        rep.z_nt,
        2 * d - 2 * alpha,
        2 * d - 2 - alpha,
        witness,
        checks={"corrected_bracket": 2 * d - 2 - 2 * alpha + extreme_simple <= rep.z_nt <= 2 * d - 2 - alpha},
    )


def _extreme_simple(p: Poly) -> int:
    """Number of simple zeroes among the smallest and largest real zero."""
    iso = isolate_real_roots(p)
    if not iso:
        return 0
    ends = [iso[0]] if len(iso) == 1 else [iso[0], iso[-1]]
    return sum(1 for _, m in ends if m == 1)


def verify_degree_drop(p: Poly) -> VerificationResult:
    if p.degree < 2:
        raise InvalidInputError("degree must be at least 2")
    n = int(p.degree)
    l = degree_drop_index(p)
    top = Fraction(n - 1, n)
    F = f_kappa(p, top)
    if l == n:
        return VerificationResult(
            "Thm3.5-degenerate",
            int(F.is_zero()),
            1,
            1,
            {"poly": p, "n": n, "l": l},
            note="single zero of multiplicity n",
        )
    a = p.descending()
    lam = -a[1] / (n * a[0])
    q = p - (Poly([-lam, 1]) ** n) * a[0]
    checks = {"q_degree": q.degree == n - l - 1}
    if l >= 2:
        checks["nonreal_zeroes"] = nonreal_count(p) > 0
    observed = int(F.degree)
    return VerificationResult(
        f"Thm3.5-l={l}",
        observed,
        2 * n - 3 - l,
        2 * n - 3 - l,
        {"poly": p, "n": n, "l": l, "lambda": lam, "q": q, "deg_F": observed},
        checks,
    )


def verify_distinct_bound(lam, n: int, q: Poly) -> VerificationResult:
    lam = as_rational(lam, "lambda")
    check_positive_int(n, "n", 2)
    k = q.degree + 1
    if not 1 <= k <= n - 1:
        raise InvalidInputError("need 0 <= deg q <= n - 2")
    k = int(k)
    p = Poly([-lam, 1]) ** n + q
    d = distinct_zero_count(p)
    bound = (n - k) // 2 + 2
    return VerificationResult(
        "Cor3.8", d, bound, n, {"poly": p, "lambda": lam, "n": n, "k": k, "d": d}
    )


def _mu_intervals(p: Poly, avoid: list[Poly]) -> list[Interval]:
    mu = mu_polynomial(p)
    if mu.degree < 1:
        return []
    return [separate_root(mu, iv, avoid) for iv, _ in isolate_real_roots(mu)]


def _gaps(mus: list[Interval], p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Finite rational stand-ins for the complementary pole-free intervals."""
    if not mus:
        raise PreconditionError("no poles")
    far = cauchy_bound(p) + cauchy_bound(p.derivative()) + 1
    edges = [min(mus[0].lo, -far) - 1] + [x for iv in mus for x in (iv.lo, iv.hi)] + [max(mus[-1].hi, far) + 1]
    return [(edges[i], edges[i + 1]) for i in range(0, len(edges), 2)]


def _samples(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    step = (hi - lo) / (count + 1)
    return [lo + step * i for i in range(1, count + 1)]


def verify_R_structure(spec: RootSpec, width) -> VerificationResult:
    """Negative residues, exact reconstruction of ``R`` and concavity samples."""
    width = as_rational(width, "width")
    spec, p = _real_spec(spec)
    n = spec.n
    encs = residues_beta(p, width)
    top = Fraction(n - 1, n)
    num, den = r_fraction(p)
    gaps = _gaps([e.mu for e in encs], p)
    recon_ok = True
    pts = [x for lo, hi in gaps for x in _samples(lo, hi, max(1, 10 // len(gaps)))][:10]
    for x in pts:
        exact = num(x) / den(x) - top
        acc = Enclosure.point(Fraction(0))
        for e in encs:
            diff = Enclosure.point(x) - e.mu_enclosure()
            acc = acc + Enclosure(e.beta_lo, e.beta_hi) / diff.square()
        if not acc.contains(exact):
            recon_ok = False
    r2num, _ = r_second_derivative(p)
    concave = all(r2num(x) <= 0 for lo, hi in gaps for x in _samples(lo, hi, 10))
    checks = {
        "beta_negative": all(e.beta_hi < 0 for e in encs),
        "reconstruction": recon_ok,
        "concave": concave,
    }
    return VerificationResult(
        "Thm4.1",
        len(encs),
        spec.d - 1,
        spec.d - 1,
        {
            "poly": p,
            "betas": [[e.beta_lo, e.beta_hi] for e in encs],
            "mu": [[e.mu.lo, e.mu.hi] for e in encs],
        },
        checks,
    )


def _census(poly: Poly, mus: list[Interval]) -> list[int]:
    cuts = [-inf] + [x for iv in mus for x in (iv.lo, iv.hi)] + [inf]
    # adjacent enclosures may share an endpoint; it is not a root, so the gap holds none
    return [
        count_real_roots(poly, Interval(cuts[i], cuts[i + 1]), with_multiplicity=True)
        if cuts[i] < cuts[i + 1]
        else 0
        for i in range(0, len(cuts), 2)
    ]


def verify_R_zero_layout(spec: RootSpec) -> VerificationResult:
    spec, p = _real_spec(spec)
    num, _ = r_fraction(p)
    mus = _mu_intervals(p, [num])
    counts = _census(num, mus)
    expected = [1] + [2] * (spec.d - 2) + [1]
    matches = sum(1 for a, b in zip(counts, expected) if a == b)
    return VerificationResult(
        "Thm4.2",
        matches if len(counts) == len(expected) else 0,
        len(expected),
        len(expected),
        {"poly": p, "census": counts, "expected": expected},
    )


def verify_equation_solution_count(spec: RootSpec, kappa) -> VerificationResult:
    """Solutions of ``R = kappa`` counted with multiplicity."""
    kappa = as_rational(kappa, "kappa")
    spec, p = _real_spec(spec)
    n, d = spec.n, spec.d
    top = Fraction(n - 1, n)
    F = f_kappa(p, kappa)
    G = equation_numerator(p, kappa)
    total = max(int(G.degree), 0)
    checks = {"nonreal_match": nonreal_count(F.exact_div(G)) == 0}
    rep = nontrivial_zeros(p, kappa)
    extra = 0
    for t in rep.trivial_ledger:
        if kappa == Fraction(t.root_multiplicity - 1, t.root_multiplicity):
            extra += int(t.factor.degree) * (t.trivial_multiplicity - 2 * t.root_multiplicity + 2)
    checks["bookkeeping"] = total == rep.z_nt + extra
    witness = {"poly": p, "kappa": kappa, "solutions": total, "z_nt": rep.z_nt}
    if 0 < kappa < top:
        mus = _mu_intervals(p, [G])
        census = _census(G, mus)
        witness["outer"] = [census[0], census[-1]]
        checks["outer_intervals"] = census[0] == 1 and census[-1] == 1
    if kappa == top:
        return VerificationResult("Cor4.4", total, 2 * d - 4, 2 * d - 4, witness, checks)
    return VerificationResult("Thm4.3", total, 2 * d - 2, 2 * d - 2, witness, checks)


def _interval_preconditions(p: Poly, kappa: Fraction, iv) -> Interval:
    if not isinstance(iv, Interval):
        iv = Interval(*iv)
    if not iv.bounded:
        raise InvalidInputError("interval endpoints must be finite")
    if kappa <= 0:
        raise PreconditionError("kappa must be positive")
    if p.degree < 2:
        raise InvalidInputError("degree must be at least 2")
    for name, f in (("p", p), ("p'", p.derivative()), ("p''", p.derivative(2))):
        if f.is_zero() or count_roots_open(f, iv) > 0:
            raise PreconditionError(f"{name} has a zero in the interval")
    return iv


def verify_interval_inequality(p: Poly, kappa, iv) -> VerificationResult:
    kappa = as_rational(kappa, "kappa")
    iv = _interval_preconditions(p, kappa, iv)
    F = f_kappa(p, kappa)
    G = f_hat_kappa(p, kappa)
    if F.is_zero() or G.is_zero():
        raise PreconditionError("degenerate: a differential polynomial vanishes identically")
    z = count_roots_open(F, iv, with_multiplicity=True)
    zh = count_roots_open(G, iv, with_multiplicity=True)
    return VerificationResult(
        "ThmA.3",
        z,
        0,
        1 + zh,
        {"poly": p, "kappa": kappa, "interval": [iv.lo, iv.hi], "z": z, "z_hat": zh},
    )


def verify_global_inequality(spec: RootSpec, kappa) -> VerificationResult:
    kappa = as_rational(kappa, "kappa")
    spec, p = _real_spec(spec)
    if spec.d < 3:
        raise PreconditionError("at least three distinct zeroes are required")
    if not Fraction(1, 2) < kappa < Fraction(spec.n - 1, spec.n):
        raise PreconditionError("kappa must lie strictly between 1/2 and (n-1)/n")
    z = count_real_roots(q_numerator(p, kappa), REAL_LINE, with_multiplicity=True)
    zh = count_real_roots(q_hat_numerator(p, kappa), REAL_LINE, with_multiplicity=True)
    return VerificationResult(
        "Thm4.12", z, 0, zh, {"poly": p, "kappa": kappa, "z_real": z, "z_hat_real": zh}
    )


def root_multiplicity(f: Poly, x) -> int:
    """Multiplicity of ``x`` as a root of the nonzero polynomial ``f`` (0 if not a root)."""
    if f.is_zero():
        raise InvalidInputError("zero polynomial")
    return next(i for i, c in enumerate(f.shift(as_rational(x)).coeffs) if c != 0)


def verify_sign_lemma(p: Poly, kappa, iv) -> VerificationResult:
    """Sign dichotomy on an interval free of zeroes of ``p, p', p''``.

    Without zeroes of the companion inside the interval, a positive sign of
    ``p' p'' Q Q_hat`` just right of ``a`` forbids zeroes of ``Q`` and a
    negative sign allows at most one.  With a single rational companion zero
    ``xi`` of multiplicity ``M`` that is also a zero of ``Q``, ``xi`` has
    multiplicity ``M + 1`` in ``Q`` and ``Q`` has no other zero there.
    """
    kappa = as_rational(kappa, "kappa")
    iv = _interval_preconditions(p, kappa, iv)
    a, b = iv.lo, iv.hi
    dp, d2 = p.derivative(), p.derivative(2)
    if p(b) != 0 and dp(b) == 0:
        raise PreconditionError("p'(b) must not vanish when p(b) does not")
    F = f_kappa(p, kappa)
    G = f_hat_kappa(p, kappa)
    if F.is_zero() or G.is_zero():
        raise PreconditionError("degenerate: a differential polynomial vanishes identically")
    z = count_roots_open(F, iv, with_multiplicity=True)
    witness = {"poly": p, "kappa": kappa, "interval": [a, b], "z": z}
    g_roots = count_roots_open(G, iv)
    if g_roots == 0:
        s = sign_right_of(dp * d2 * F * G, a)
        witness["sign"] = s
        if s > 0:
            checks = {}
            if p(b) != 0:
                checks["no_zero_at_b"] = F(b) != 0
            return VerificationResult("LemA.1-I", z, 0, 0, witness, checks)
        return VerificationResult("LemA.1-II", z, 0, 1, witness)
    if g_roots > 1:
        raise PreconditionError("companion has more than one distinct zero in the interval")
    xi = None
    for riv, _ in isolate_real_roots(G):
        if riv.hi > a and riv.lo < b:
            cand = rational_root_in(G, riv)
            if cand is not None and a < cand < b:
                xi = cand
    if xi is None:
        raise PreconditionError("companion zero is irrational: outside exact scope")
    M = root_multiplicity(G, xi)
    witness.update({"xi": xi, "M": M})
    if F(xi) != 0:
        raise PreconditionError("Q does not vanish at the companion zero")
    mult = root_multiplicity(F, xi)
    witness["multiplicity"] = mult
    return VerificationResult(
        "LemA.2", mult, M + 1, M + 1, witness, {"no_other_zeroes": z == mult}
    )
