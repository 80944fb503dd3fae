"""Command-line front end.

Exit codes: 0 computed or passed, 1 claim falsified or violation found,
2 usage or parse error, 3 precondition unmet, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from ._validation import as_rational
from .conjectures import (
    SearchConfig,
    check_conjecture1,
    check_conjecture2,
    check_conjecture3,
    random_search,
    shapiro_polynomial,
)
from .diffpoly import POLE, kappa_classify, nontrivial_zeros, sample_R
from .errors import InvalidInputError, KappaForgeError, PreconditionError
from .polycore import Poly, RootSpec, distinct_zero_count, square_free_decomposition
from .rootcount import Interval, isolate_real_roots, rational_root_in
from .theoremlab import (
    VerificationResult,
    kappa_sweep,
    verify_degree_drop,
    verify_distinct_bound,
    verify_equation_solution_count,
    verify_global_inequality,
    verify_interval_inequality,
    verify_main_bounds,
    verify_R_structure,
    verify_R_zero_layout,
    verify_sign_lemma,
    verify_total_nontrivial,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_PRECONDITION, EXIT_IO = 0, 1, 2, 3, 4

THEOREM_IDS = (
    "2.1", "2.2", "2.3", "3.1", "3.2", "3.5", "3.8", "4.1", "4.2", "4.3",
    "4.5", "4.6", "4.12", "A.1", "A.3", "conjecture1", "conjecture2", "conjecture3",
)


class UsageError(KappaForgeError):
    pass


# --- input files -----------------------------------------------------------

def parse_spec(data) -> Poly | RootSpec:
    """Decode a polynomial spec: ``{"coeffs": [...]}`` or ``{"roots": [...], "leading": ...}``."""
    if not isinstance(data, dict):
        raise InvalidInputError("input must be a JSON object")
    has_c, has_r = "coeffs" in data, "roots" in data
    if has_c == has_r:
        raise InvalidInputError("input needs exactly one of 'coeffs' or 'roots'")
    if has_c:
        extra = set(data) - {"coeffs"}
        if extra:
            raise InvalidInputError(f"unexpected keys {sorted(extra)}")
        return Poly([as_rational(c, "coefficient") for c in data["coeffs"]])
    extra = set(data) - {"roots", "leading"}
    if extra:
        raise InvalidInputError(f"unexpected keys {sorted(extra)}")
    roots = []
    for item in data["roots"]:
        if not isinstance(item, (list, tuple)) or len(item) != 2 or isinstance(item[1], bool):
            raise InvalidInputError("each root entry must be [rational, multiplicity]")
        if not isinstance(item[1], int):
            raise InvalidInputError("multiplicity must be an integer")
        roots.append((as_rational(item[0], "root"), item[1]))
    return RootSpec(roots, as_rational(data.get("leading", "1"), "leading"))


def dump_spec(obj: Poly | RootSpec) -> str:
    """Canonical text: sorted keys, reduced rationals, roots ascending."""
    if isinstance(obj, RootSpec):
        s = obj.sorted()
        data = {"leading": str(s.leading), "roots": [[str(r), m] for r, m in s.roots]}
    else:
        data = {"coeffs": [str(c) for c in obj.coeffs]}
    return json.dumps(data, sort_keys=True) + "\n"


def read_spec(path: str) -> tuple[Poly | RootSpec, str]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"cannot parse spec: {exc}") from None
    obj = parse_spec(data)
    digest = hashlib.sha256(dump_spec(obj).encode()).hexdigest()
    return obj, digest


def as_poly(obj) -> Poly:
    return obj.to_poly() if isinstance(obj, RootSpec) else obj


def as_root_spec(obj) -> RootSpec:
    """Recover a RootSpec; coefficient input must split over the rationals."""
    if isinstance(obj, RootSpec):
        return obj
    p = obj
    if p.degree < 1:
        raise PreconditionError("constant polynomial has no roots")
    roots = []
    for g, m in square_free_decomposition(p):
        iso = isolate_real_roots(g)
        if len(iso) != g.degree:
            raise PreconditionError("polynomial is not real-rooted")
        for iv, _ in iso:
            r = rational_root_in(g, iv)
            if r is None:
                raise PreconditionError("polynomial has an irrational root; supply roots instead")
            roots.append((r, m))
    return RootSpec(roots, p.lc)


# --- output ----------------------------------------------------------------

def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise TypeError("floats are not emitted")
    if isinstance(x, Poly):
        return [str(c) for c in x.coeffs]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return str(x)


def emit(command: str, digest: str | None, results, summary: str, out=None) -> None:
    report = {"command": command, "input_digest": digest, "results": jsonable(results), "summary": summary}
    (out or sys.stdout).write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def format_decimal(x: Fraction, digits: int) -> str:
    scaled = round(abs(x) * 10**digits)
    sign = "-" if x < 0 and scaled else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


# --- commands --------------------------------------------------------------

def _command_echo(args) -> str:
    return " ".join(args.argv)


def cmd_analyze(args) -> int:
    obj, digest = read_spec(args.spec)
    p = as_poly(obj)
    if p.degree < 2:
        raise PreconditionError("degree must be at least 2")
    kappa = as_rational(args.kappa, "kappa")
    n = int(p.degree)
    rep = nontrivial_zeros(p, kappa)
    cls = kappa_classify(kappa, n)
    ledger = [
        {
            "factor": t.factor,
            "root": t.root,
            "root_multiplicity": t.root_multiplicity,
            "trivial_multiplicity": t.trivial_multiplicity,
        }
        for t in rep.trivial_ledger
    ]
    results = {
        "n": n,
        "d": distinct_zero_count(p),
        "kappa": kappa,
        "kappa_class": str(cls),
        "identically_zero": rep.identically_zero,
        "z_nt": rep.z_nt,
        "z_real_nt": rep.z_real_nt,
        "z_c": rep.z_nonreal_nt,
        "f_kappa": rep.f_kappa,
        "nontrivial_part": rep.nontrivial_part,
        "trivial_ledger": ledger,
    }
    if rep.identically_zero:
        summary = "F_kappa[p] is identically zero"
    else:
        summary = f"Z_nt={rep.z_nt} Z_R={rep.z_real_nt} Z_C={rep.z_nonreal_nt} ({cls})"
    emit(_command_echo(args), digest, results, summary)
    return EXIT_OK


def _need_kappa(args) -> Fraction:
    if args.kappa is None:
        raise UsageError(f"--theorem {args.theorem} requires --kappa")
    return as_rational(args.kappa, "kappa")


def _need_interval(args) -> Interval:
    if args.interval is None:
        raise UsageError(f"--theorem {args.theorem} requires --interval A B")
    a, b = (as_rational(v, "endpoint") for v in args.interval)
    if not a < b:
        raise UsageError("interval needs A < B")
    return Interval(a, b)


def _run_verify(args, obj) -> list:
    tid = args.theorem
    p = as_poly(obj)
    if tid in ("2.1", "2.2", "2.3"):
        spec = as_root_spec(obj)
        if args.kappa is None:
            return [kappa_sweep(spec)]
        return [verify_main_bounds(spec, _need_kappa(args))]
    if tid in ("3.1", "3.2"):
        return [verify_total_nontrivial(p, _need_kappa(args))]
    if tid == "3.5":
        return [verify_degree_drop(p)]
    if tid == "3.8":
        m = p.monic()
        n = int(m.degree)
        lam = -m.coeffs[n - 1] / n
        q = m - Poly([-lam, 1]) ** n
        if q.is_zero():
            raise PreconditionError("polynomial has a single zero")
        return [verify_distinct_bound(lam, n, q)]
    if tid == "4.1":
        width = as_rational(args.width, "width")
        return [verify_R_structure(as_root_spec(obj), width)]
    if tid == "4.2":
        return [verify_R_zero_layout(as_root_spec(obj))]
    if tid == "4.3":
        return [verify_equation_solution_count(as_root_spec(obj), _need_kappa(args))]
    if tid in ("4.5", "4.6"):
        spec = as_root_spec(obj)
        top = Fraction(spec.n - 1, spec.n)
        if args.kappa is not None:
            kappa = _need_kappa(args)
            ok = kappa >= top if tid == "4.5" else kappa <= 0
            if not ok:
                raise PreconditionError(f"kappa outside the range of {tid}")
            kappas = [kappa]
        else:
            kappas = [top, top + Fraction(1, 1000)] if tid == "4.5" else [Fraction(-1, 1000), Fraction(0)]
        return [verify_main_bounds(spec, k) for k in kappas]
    if tid == "4.12":
        return [verify_global_inequality(as_root_spec(obj), _need_kappa(args))]
    if tid == "A.1":
        return [verify_sign_lemma(p, _need_kappa(args), _need_interval(args))]
    if tid == "A.3":
        return [verify_interval_inequality(p, _need_kappa(args), _need_interval(args))]
    if tid == "conjecture1":
        return [check_conjecture1(p)]
    if tid == "conjecture2":
        return [check_conjecture2(p, _need_kappa(args))]
    if tid == "conjecture3":
        return [check_conjecture3(p, _need_kappa(args))]
    raise UsageError(f"unknown theorem id {tid!r}")


def cmd_verify(args) -> int:
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"unknown theorem id {args.theorem!r}; choose from {', '.join(THEOREM_IDS)}")
    obj, digest = read_spec(args.spec)
    results = _run_verify(args, obj)
    passed = all(r.passed for r in results)
    failing = [r for r in results if not r.passed]
    if passed:
        summary = f"{args.theorem}: pass ({len(results)} instance(s))"
    else:
        r = failing[0]
        obs = getattr(r, "observed", None)
        if isinstance(r, VerificationResult):
            summary = f"{args.theorem}: FALSIFIED {r.claim_id}: observed {obs} outside [{r.lower}, {r.upper}]"
            if r.checks and not all(r.checks.values()):
                summary += f"; failed checks {sorted(k for k, v in r.checks.items() if not v)}"
        else:
            summary = f"{args.theorem}: FALSIFIED"
    emit(_command_echo(args), digest, {"theorem": args.theorem, "passed": passed, "instances": results}, summary)
    return EXIT_OK if passed else EXIT_FALSIFIED


def cmd_sample_r(args) -> int:
    obj, digest = read_spec(args.spec)
    p = as_poly(obj)
    if p.degree < 2:
        raise PreconditionError("degree must be at least 2")
    lo = as_rational(getattr(args, "from"), "from")
    hi = as_rational(args.to, "to")
    if not lo < hi:
        raise UsageError("--from must be smaller than --to")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.decimal is not None and args.decimal < 0:
        raise UsageError("--decimal must be non-negative")
    step = (hi - lo) / (args.points - 1)
    grid = [lo + step * i for i in range(args.points)]
    fmt = (lambda x: str(x)) if args.decimal is None else (lambda x: format_decimal(x, args.decimal))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "R"])
    poles = 0
    for x, v in sample_R(p, grid):
        if v is POLE:
            poles += 1
            writer.writerow([fmt(x), "pole"])
        else:
            writer.writerow([fmt(x), fmt(v)])
    if args.out is None:
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    Path(args.out).write_text(buf.getvalue())
    emit(
        _command_echo(args),
        digest,
        {"out": args.out, "points": args.points, "poles": poles},
        f"wrote {args.points} rows to {args.out}",
    )
    return EXIT_OK


def _parse_degrees(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise UsageError("--degrees must look like A..B") from None


def _parse_inject(text: str) -> Fraction:
    key, sep, value = text.partition("=")
    if key.strip() != "a" or not sep:
        raise UsageError("--inject-5.2 expects a=RATIONAL")
    return as_rational(value.strip(), "a")


def cmd_search(args) -> int:
    config = SearchConfig(
        conjecture_id=f"C{args.conjecture}",
        trials=args.trials,
        seed=args.seed,
        degree_range=_parse_degrees(args.degrees),
        coefficient_bound=args.coefficient_bound,
        kappa=None if args.kappa is None else as_rational(args.kappa, "kappa"),
        inject_a=None if args.inject is None else _parse_inject(args.inject),
    )
    if config.inject_a is not None:
        shapiro_polynomial(config.inject_a)
    report = random_search(config)
    n = len(report.violations)
    summary = f"{n} violation(s) in {report.trials_run} trial(s)" + (" (findings)" if n else "")
    emit(_command_echo(args), None, report, summary)
    return EXIT_FALSIFIED if n else EXIT_OK


def cmd_normalize(args) -> int:
    obj, _ = read_spec(args.spec)
    sys.stdout.write(dump_spec(obj))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kappaforge",
        description="Exact analysis of p*p'' - kappa*(p')^2 and mechanical checks of its zero counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="split F_kappa[p] into trivial and non-trivial zeroes")
    a.add_argument("spec", help="polynomial file (JSON) or - for stdin")
    a.add_argument("--kappa", required=True)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check one counting statement on a polynomial")
    v.add_argument("spec")
    v.add_argument("--theorem", required=True, help="one of: " + ", ".join(THEOREM_IDS))
    v.add_argument("--kappa")
    v.add_argument("--interval", nargs=2, metavar=("A", "B"))
    v.add_argument("--width", default="1/1000", help="residue enclosure width for 4.1")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample-r", help="sample R = p p''/(p')^2 on a grid as CSV")
    s.add_argument("spec")
    s.add_argument("--from", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--decimal", type=int, metavar="DIGITS")
    s.set_defaults(func=cmd_sample_r)

    c = sub.add_parser("search", help="seeded falsification search")
    c.add_argument("--conjecture", required=True, choices=["1", "2", "3"])
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--degrees", default="2..8")
    c.add_argument("--coefficient-bound", type=int, default=5)
    c.add_argument("--kappa")
    c.add_argument("--inject-5.2", dest="inject", metavar="a=RAT")
    c.set_defaults(func=cmd_search)

    nz = sub.add_parser("normalize", help="print the canonical form of a polynomial file")
    nz.add_argument("spec")
    nz.set_defaults(func=cmd_normalize)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = ["kappaforge", *argv]
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, InvalidInputError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
