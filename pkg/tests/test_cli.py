import json

import pytest

from pgblrc import __version__
from pgblrc.cli import build_parser, main

FIXTURES = __file__.rsplit("/", 1)[0] + "/fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------- construct


def test_construct_writes_incidence_text(capsys):
    code, out, err = run(capsys, "construct", "grid", "--s", "1")
    assert code == 0
    assert out == "# label: grid(1)\n4 4\n0 1\n0 2\n1 3\n2 3\n"
    assert err == ""


def test_construct_roundtrips_through_validate(capsys, tmp_path):
    path = str(tmp_path / "g2.txt")
    code, out, _ = run(capsys, "construct", "grid", "--s", "2",
                       "--output", path)
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "validate", "--file", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["valid"] is True
    assert payload["label"] == "grid(2)"
    assert (payload["s"], payload["t"], payload["alpha"]) == (2, 1, 1)
    assert payload["class"] == "generalized-quadrangle"
    assert payload["grid_degenerate"] is True
    assert (payload["num_points"], payload["num_lines"]) == (9, 6)


def test_construct_dual(capsys):
    code, out, _ = run(capsys, "construct", "elliptic", "--q", "2", "--dual")
    assert code == 0
    assert out.startswith("# label: dual(elliptic-quadric-gq(2))\n45 27\n")


def test_construct_missing_parameter(capsys):
    code, _, err = run(capsys, "construct", "grid")
    assert code == 2
    assert "needs --s" in err


def test_construct_unsupported_order(capsys):
    code, _, err = run(capsys, "construct", "hyperoval", "--q", "5")
    assert code == 3
    assert "validation error" in err


# ---------------------------------------------------------------- validate


def test_validate_rejects_a_non_geometry(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("6 5\n0 1 2\n3 4 5\n0 3\n1 4\n2 5\n")
    code, _, err = run(capsys, "validate", "--file", str(path))
    assert code == 3
    assert "validation error" in err


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", "--file", str(tmp_path / "no.txt"))
    assert code == 5
    assert "file error" in err


def test_validate_malformed_file(capsys, tmp_path):
    path = tmp_path / "mangled.txt"
    path.write_text("not a header\n")
    code, _, err = run(capsys, "validate", "--file", str(path))
    assert code == 5
    assert "file error" in err


def test_validate_fixture_with_dual(capsys):
    code, out, _ = run(capsys, "validate", "--file", f"{FIXTURES}/fano.txt",
                       "--dual")
    assert code == 0
    payload = json.loads(out)
    assert (payload["s"], payload["t"], payload["alpha"]) == (2, 2, 3)
    assert payload["class"] == "steiner-2-design"


# ----------------------------------------------------------------- analyze


def test_analyze_json_payload(capsys):
    code, out, _ = run(capsys, "analyze", "--geometry", "symplectic",
                       "--q", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["geometry"]["label"] == "symplectic-gq(2)"
    assert payload["code"] == {
        "n": 15,
        "k": 5,
        "rate": "1/3",
        "rate_decimal": pytest.approx(1 / 3),
        "info_set": payload["code"]["info_set"],
    }
    assert len(payload["code"]["info_set"]) == 5
    met = payload["metrics"]
    assert met["mode"] == "geometric"
    assert (met["r"], met["a"], met["delta"]) == (2, 3, 3)
    conf = payload["conformance"]
    assert conf["vartheta"] == "9"
    assert conf["rank"] == 10
    assert (conf["rank_lower"], conf["rank_upper"]) == ("9", "10")
    assert conf["rank_within_bounds"] is True
    assert (conf["rate_lower"], conf["rate_upper"]) == ("1/3", "2/5")
    assert conf["rate_within_bounds"] is True


def test_analyze_exhaustive_mode(capsys):
    code, out, _ = run(capsys, "analyze", "--geometry", "grid", "--s", "2",
                       "--exhaustive")
    assert code == 0
    met = json.loads(out)["metrics"]
    assert met["mode"] == "exhaustive"
    assert (met["r"], met["a"], met["delta"]) == (2, 2, 2)
    assert met["balanced"] is True
    assert met["safe_unavailability"] == 1


def test_analyze_text_report(capsys):
    code, out, _ = run(capsys, "analyze", "--geometry", "symplectic",
                       "--q", "2", "--format", "text")
    assert code == 0
    assert out == (
        "geometry  symplectic-gq(2)\n"
        "          pg(2, 2, 1), class generalized-quadrangle, "
        "15 points, 15 lines\n"
        "code      [n = 15, k = 5], rate 1/3 = 0.333333\n"
        "metrics   mode geometric: r = 2, a = 3, delta = 3, "
        "balanced = True, safe unavailability = 2\n"
        "bounds    rank 10 in [9, 10]: True\n"
        "          rate 1/3 in [1/3, 2/5]: True\n"
    )


def test_analyze_text_skips_bounds_below_r2(capsys):
    code, out, _ = run(capsys, "analyze", "--geometry", "grid", "--s", "1",
                       "--format", "text")
    assert code == 0
    assert out.endswith("rate bounds not applicable (r or a below 2)\n")


def test_analyze_guard_exceeded(capsys):
    code, _, err = run(capsys, "analyze", "--geometry", "grid", "--s", "2",
                       "--exhaustive", "--guard", "1")
    assert code == 4
    assert "guard exceeded" in err


def test_analyze_file_source_with_dual(capsys, tmp_path):
    path = str(tmp_path / "e2.txt")
    assert run(capsys, "construct", "elliptic", "--q", "2",
               "--output", path)[0] == 0
    code, out, _ = run(capsys, "analyze", "--file", path, "--dual")
    assert code == 0
    geo = json.loads(out)["geometry"]
    assert (geo["s"], geo["t"]) == (4, 2)
    assert (geo["num_points"], geo["num_lines"]) == (45, 27)


def test_analyze_degenerate_code(capsys):
    code, _, err = run(capsys, "analyze", "--file", f"{FIXTURES}/ag23.txt")
    assert code == 3
    assert "degenerate" in err


# ---------------------------------------------------------------- simulate


def test_simulate_requires_the_model_parameter(capsys):
    code, _, err = run(capsys, "simulate", "--geometry", "grid", "--s", "2")
    assert code == 2 and "--p" in err
    code, _, err = run(capsys, "simulate", "--geometry", "grid", "--s", "2",
                       "--model", "adversarial")
    assert code == 2 and "--u" in err


def test_simulate_adversarial_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--geometry", "grid", "--s", "2",
                       "--model", "adversarial", "--u", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "symbol,success_rate,mean_retrieved"
    assert lines[1] == "0,0.888889,2.000000"
    assert lines[-1] == "overall,0.888889,2.000000"
    assert len(lines) == 11


def test_simulate_json_shape_and_determinism(capsys):
    argv = ("simulate", "--geometry", "symplectic", "--q", "2",
            "--p", "0.2", "--trials", "64", "--seed", "7")
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert first == second
    payload = json.loads(first)
    assert payload["schema_version"] == 1
    assert payload["model"] == "iid"
    assert payload["parameter"] == 0.2
    assert payload["seed"] == 7
    assert payload["cases"] == 64
    assert len(payload["per_symbol_success"]) == 15
    code, reseeded, _ = run(capsys, *argv[:-1], "8")
    assert reseeded != first


def test_simulate_output_file(capsys, tmp_path):
    path = tmp_path / "report.csv"
    code, out, _ = run(capsys, "simulate", "--geometry", "grid", "--s", "2",
                       "--model", "adversarial", "--u", "1",
                       "--format", "csv", "--output", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert text.startswith("symbol,success_rate,mean_retrieved\n")
    assert text.rstrip().endswith("overall,1.000000,2.000000")


# ------------------------------------------------------------------ bounds


def test_bounds_csv_default_span(capsys):
    code, out, _ = run(capsys, "bounds")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 82  # header + 9 x 9 rows
    assert lines[0].startswith("r,a,rate_lower,rate_upper,applicable")
    assert lines[1] == "2,2,4/9,NA,false,0.444444,"
    assert lines[2] == "2,3,1/3,2/5,true,0.333333,0.400000"


def test_bounds_accepts_ranges_and_lists(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "2,4..5", "--a", "3")
    assert code == 0
    rows = out.splitlines()[1:]
    assert [row.split(",")[:2] for row in rows] == [
        ["2", "3"], ["4", "3"], ["5", "3"]]


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "2", "--a", "2..3",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["rows"] == [
        {"r": 2, "a": 2, "rate_lower": "4/9", "rate_upper": None,
         "applicable": False},
        {"r": 2, "a": 3, "rate_lower": "1/3", "rate_upper": "2/5",
         "applicable": True},
    ]


def test_bounds_rejects_bad_range(capsys):
    code, _, err = run(capsys, "bounds", "--r", "x")
    assert code == 2 and "cannot parse" in err
    code, _, err = run(capsys, "bounds", "--r", "5..2")
    assert code == 2 and "empty range" in err


# ----------------------------------------------------------------- catalog


def test_catalog_text_lists_the_practical_pairs(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "text")
    assert code == 0
    head, _, tail = out.partition("excluded:\n")
    assert head == (
        "practical pairs:\n"
        "  (r, 2) for r in 2..9  grids, worst rate 4/9\n"
        "  (2, 3)  from pg(2, 2, 1), n = 15, rate 2/5 [theorem-upper-bound]\n"
        "  (3, 4)  from pg(3, 3, 1), n = 40, rate 2/5 [theorem-upper-bound]\n"
        "  (4, 3)  from pg(4, 2, 1) via dual, n = 45, rate 5/9 "
        "[theorem-upper-bound]\n"
        "  (4, 5)  from pg(4, 4, 1), n = 85, rate 7/17 [theorem-upper-bound]\n"
        "  (5, 4)  from pg(5, 3, 1) via dual, n = 96, rate 17/32 "
        "[theorem-upper-bound]\n"
    )
    assert "  (2, 5): rate estimate 7/27 is not above 1/3" in tail
    assert "  (3, 10): n = 112 exceeds max_n = 100" in tail


def test_catalog_json(capsys):
    code, out, _ = run(capsys, "catalog", "--max-n", "40")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["max_n"] == 40
    assert payload["estimator"] == "theorem-upper-bound"
    passing = [e["key"] for e in payload["entries"] if e["passes_filter"]]
    assert passing == ["(r,2)", "(2,3)", "(3,4)"]
    family = payload["entries"][0]
    assert family["family_r_range"] == [2, 5]
    assert family["rate_estimate"] == "4/9"


def test_catalog_rejects_bad_min_rate(capsys):
    code, _, err = run(capsys, "catalog", "--min-rate", "x")
    assert code == 2 and "cannot parse" in err


# ------------------------------------------------------------------- shell


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


def test_missing_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_geometry_source_is_required(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 2


def test_parser_program_name():
    assert build_parser().prog == "pgblrc"
