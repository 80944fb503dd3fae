import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from kappaforge import InvalidInputError, Poly, RootSpec
from kappaforge.cli import dump_spec, format_decimal, main, parse_spec

INPUTS = Path(__file__).resolve().parents[1] / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(out):
    return json.loads(out)


class TestSpecFiles:
    def test_parse_coeffs_and_roots(self):
        assert parse_spec({"coeffs": ["-1", "0", "1"]}) == Poly([-1, 0, 1])
        spec = parse_spec({"roots": [["1/2", 2]], "leading": "3"})
        assert isinstance(spec, RootSpec) and spec.leading == 3

    @pytest.mark.parametrize(
        "data",
        [
            {"coeffs": ["1"], "roots": [["1", 1]]},
            {},
            {"coeffs": [0.5, "1"]},
            {"coeffs": ["1", "x"]},
            {"roots": [["1", 0]]},
            {"coeffs": ["1"], "extra": 1},
            [1, 2],
        ],
    )
    def test_bad_input(self, data):
        with pytest.raises(InvalidInputError):
            parse_spec(data)

    @pytest.mark.parametrize("path", sorted(INPUTS.glob("*.json")), ids=lambda p: p.stem)
    def test_round_trip_is_canonical(self, path):
        obj = parse_spec(json.loads(path.read_text()))
        text = dump_spec(obj)
        assert dump_spec(parse_spec(json.loads(text))) == text
        again = parse_spec(json.loads(text))
        assert (again.to_poly() if isinstance(again, RootSpec) else again) == (
            obj.to_poly() if isinstance(obj, RootSpec) else obj
        )

    def test_canonical_reduces_rationals(self):
        text = dump_spec(parse_spec({"coeffs": ["2/4", "-6/3"]}))
        assert json.loads(text) == {"coeffs": ["1/2", "-2"]}

    def test_normalize_command(self, capsys):
        code, out, _ = run(capsys, "normalize", INPUTS / "figure1.json")
        assert code == 0 and out == dump_spec(parse_spec(json.loads((INPUTS / "figure1.json").read_text())))


class TestAnalyze:
    def test_sharp_pair(self, capsys):
        code, out, _ = run(capsys, "analyze", INPUTS / "sharp_pair_a.json", "--kappa", "2/3")
        rep = report(out)
        assert code == 0 and rep["results"]["z_nt"] == 2
        assert rep["results"]["kappa"] == "2/3" and rep["results"]["kappa_class"] == "critical(k=3)"
        assert set(rep) == {"command", "input_digest", "results", "summary"}

    def test_identically_zero(self, capsys):
        code, out, _ = run(capsys, "analyze", INPUTS / "unique_zero.json", "--kappa", "3/4")
        assert code == 0 and "identically zero" in report(out)["summary"]

    def test_figure(self, capsys):
        code, out, _ = run(capsys, "analyze", INPUTS / "figure1.json", "--kappa", "9/10")
        assert code == 0 and report(out)["results"]["z_c"] == 6

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO('{"coeffs": ["1", "0", "0", "1"]}'))
        code, out, _ = run(capsys, "analyze", "-", "--kappa", "2/3")
        assert code == 0 and report(out)["results"]["f_kappa"] == ["0", "6"]

    def test_bad_kappa(self, capsys):
        code, _, err = run(capsys, "analyze", INPUTS / "figure1.json", "--kappa", "0.5.1")
        assert code == 2 and err

    def test_linear_is_precondition(self, capsys, tmp_path):
        f = tmp_path / "lin.json"
        f.write_text('{"coeffs": ["1", "1"]}')
        assert run(capsys, "analyze", f, "--kappa", "1")[0] == 3

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "analyze", tmp_path / "nope.json", "--kappa", "1")[0] == 4


class TestVerify:
    def test_full_sweep(self, capsys):
        code, out, _ = run(capsys, "verify", INPUTS / "figure1.json", "--theorem", "2.1")
        assert code == 0 and report(out)["results"]["passed"]

    def test_counterexample(self, capsys):
        code, out, _ = run(capsys, "verify", INPUTS / "shapiro_a10.json", "--theorem", "conjecture1")
        inst = report(out)["results"]["instances"][0]
        assert code == 1
        assert inst["witness"]["z_r_Q"] == 4 and inst["witness"]["z_c_p"] == 2

    def test_global_inequality(self, capsys):
        code, _, _ = run(capsys, "verify", INPUTS / "figure1.json", "--theorem", "4.12", "--kappa", "3/5")
        assert code == 0

    def test_unknown_id(self, capsys):
        assert run(capsys, "verify", INPUTS / "figure1.json", "--theorem", "9.9")[0] == 2

    def test_missing_kappa(self, capsys):
        assert run(capsys, "verify", INPUTS / "figure1.json", "--theorem", "4.3")[0] == 2

    def test_precondition(self, capsys):
        code, _, _ = run(capsys, "verify", INPUTS / "three_simple.json", "--theorem", "4.12", "--kappa", "1/4")
        assert code == 3

    def test_interval_theorem(self, capsys):
        code, _, _ = run(
            capsys, "verify", INPUTS / "three_simple.json", "--theorem", "A.3", "--kappa", "1", "--interval", "3", "5"
        )
        assert code == 0

    @pytest.mark.parametrize("tid", ["3.5", "4.1", "4.2", "4.5", "4.6"])
    def test_no_extras_needed(self, capsys, tid):
        assert run(capsys, "verify", INPUTS / "sharp_pair_a.json", "--theorem", tid)[0] == 0


class TestSampleR:
    def test_pole_row(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, _, _ = run(
            capsys, "sample-r", INPUTS / "z2_minus_1.json", "--from", "-3", "--to", "3", "--points", "7", "--out", out
        )
        rows = out.read_text().splitlines()
        assert code == 0 and rows[0] == "x,R" and "0,pole" in rows
        assert [r.split(",")[0] for r in rows[1:]] == ["-3", "-2", "-1", "0", "1", "2", "3"]

    def test_exact_progression(self, capsys):
        code, out, _ = run(capsys, "sample-r", INPUTS / "figure1.json", "--from", "-20", "--to", "25", "--points", "8")
        xs = [Fraction(r.split(",")[0]) for r in out.splitlines()[1:]]
        assert xs == [Fraction(-20) + i * Fraction(45, 7) for i in range(8)]

    def test_decimal(self, capsys):
        code, out, _ = run(
            capsys, "sample-r", INPUTS / "z2_minus_1.json", "--from", "1/2", "--to", "1", "--points", "2", "--decimal", "3"
        )
        assert out.splitlines()[1] == "0.500,-1.500"

    def test_bad_grid(self, capsys):
        assert run(capsys, "sample-r", INPUTS / "z2_minus_1.json", "--from", "1", "--to", "0", "--points", "3")[0] == 2
        assert run(capsys, "sample-r", INPUTS / "z2_minus_1.json", "--from", "0", "--to", "1", "--points", "1")[0] == 2

    def test_unwritable_out(self, capsys, tmp_path):
        bad = tmp_path / "missing" / "r.csv"
        args = ("sample-r", INPUTS / "z2_minus_1.json", "--from", "0", "--to", "1", "--points", "3", "--out", bad)
        assert run(capsys, *args)[0] == 4


@pytest.mark.parametrize(
    "x, digits, text",
    [(Fraction(1, 3), 4, "0.3333"), (Fraction(-2, 3), 2, "-0.67"), (Fraction(-1, 1000), 2, "0.00"), (Fraction(5), 0, "5")],
)
def test_format_decimal(x, digits, text):
    assert format_decimal(x, digits) == text


class TestSearch:
    def test_injection(self, capsys):
        code, out, _ = run(capsys, "search", "--conjecture", "1", "--trials", "1", "--seed", "0", "--inject-5.2", "a=2")
        assert code == 1 and len(report(out)["results"]["violations"]) == 1

    def test_repeat_is_byte_identical(self, capsys):
        args = ("search", "--conjecture", "2", "--trials", "30", "--seed", "9", "--degrees", "2..6")
        first = run(capsys, *args)
        assert first == run(capsys, *args)
        assert first[0] == 0

    @pytest.mark.parametrize(
        "extra",
        [("--degrees", "2-8"), ("--inject-5.2", "b=2"), ("--trials", "0"), ("--degrees", "1..4")],
    )
    def test_bad_flags(self, capsys, extra):
        args = ["search", "--conjecture", "1", "--trials", "2", "--seed", "0", *extra]
        if extra[0] == "--trials":
            args = ["search", "--conjecture", "1", "--seed", "0", *extra]
        assert run(capsys, *args)[0] == 2

    def test_bad_conjecture(self, capsys):
        assert run(capsys, "search", "--conjecture", "4", "--trials", "1", "--seed", "0")[0] == 2
