import json
from fractions import Fraction

from aqgv.cli import run
from aqgv.codesearch import css_distances, load_code_file


def run_json(capsys, argv):
    result = run(argv)
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line]
    assert len(lines) == 1, f"--json must emit exactly one line, got: {out!r}"
    return result, json.loads(lines[0])


# ---------------------------------------------------------------------------
# bound
# ---------------------------------------------------------------------------

def test_bound_css_json(capsys):
    result, payload = run_json(
        capsys,
        ["bound", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5",
         "--dx", "2", "--dz", "2", "--json"],
    )
    assert result.status == "ok" and result.exit_code == 0
    assert Fraction(payload["lhs"]) == Fraction(2304, 4095)
    assert payload["lhs_decimal"] == "0.562637"
    assert payload["feasible"] is True
    assert sum(Fraction(t) for t in payload["terms"]) == Fraction(payload["lhs"])


def test_bound_css_trivial_json(capsys):
    _, payload = run_json(
        capsys,
        ["bound", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5",
         "--dx", "1", "--dz", "1", "--json"],
    )
    assert payload["lhs"] == "0/1"
    assert payload["feasible"] is True


def test_bound_verdict_roundtrips_through_printed_rational(capsys):
    queries = [
        ["bound", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5", "--dx", "2", "--dz", "2"],
        ["bound", "css", "--q", "2", "--n", "7", "--k1", "4", "--k2", "1", "--dx", "2", "--dz", "2"],
        ["bound", "stab", "--q", "2", "--n", "10", "--k", "3", "--dx", "2", "--dz", "2"],
        ["bound", "stab", "--q", "2", "--n", "10", "--k", "4", "--dx", "2", "--dz", "2"],
        ["bound", "stab", "--q", "9", "--n", "20", "--k", "2", "--dx", "3", "--dz", "4"],
    ]
    for argv in queries:
        _, payload = run_json(capsys, argv + ["--json"])
        # independent re-evaluation of the printed exact rational
        assert (Fraction(payload["lhs"]) < 1) == payload["feasible"]


def test_bound_stab_table(capsys):
    result = run(["bound", "stab", "--q", "2", "--n", "10", "--k", "3", "--dx", "2", "--dz", "2"])
    out = capsys.readouterr().out
    assert result.status == "ok"
    assert "10752/13981" in out
    assert "0.769044" in out
    assert "feasible" in out and "yes" in out


def test_bound_infeasible_status_and_exit(capsys):
    argv = ["bound", "css", "--q", "2", "--n", "7", "--k1", "4", "--k2", "1", "--dx", "2", "--dz", "2"]
    result = run(argv)
    capsys.readouterr()
    assert result.status == "infeasible" and result.exit_code == 0
    result = run(argv + ["--assert-feasible"])
    capsys.readouterr()
    assert result.status == "infeasible" and result.exit_code == 2


def test_bound_digits_flag(capsys):
    _, payload = run_json(
        capsys,
        ["bound", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5",
         "--dx", "2", "--dz", "2", "--digits", "9", "--json"],
    )
    assert payload["lhs_decimal"] == "0.562637363"


# ---------------------------------------------------------------------------
# maxk / best
# ---------------------------------------------------------------------------

def test_maxk_stab_json(capsys):
    result, payload = run_json(capsys, ["maxk", "stab", "--q", "2", "--n", "10", "--dx", "2", "--dz", "2", "--json"])
    assert result.status == "ok"
    assert payload["k_max"] == 3


def test_maxk_stab_not_found(capsys):
    result, payload = run_json(capsys, ["maxk", "stab", "--q", "2", "--n", "4", "--dx", "3", "--dz", "3", "--json"])
    assert result.status == "not_found" and result.exit_code == 0
    assert payload["k_max"] is None


def test_best_css_json(capsys):
    result, payload = run_json(capsys, ["best", "css", "--q", "2", "--n", "12", "--dx", "2", "--dz", "2", "--json"])
    assert result.status == "ok"
    assert (payload["k1"], payload["k2"], payload["net_k"]) == (7, 4, 3)


def test_best_css_not_found(capsys):
    result, payload = run_json(capsys, ["best", "css", "--q", "2", "--n", "4", "--dx", "3", "--dz", "3", "--json"])
    assert result.status == "not_found"
    assert payload["k1"] is None


# ---------------------------------------------------------------------------
# lemma
# ---------------------------------------------------------------------------

def test_lemma_json(capsys):
    result, payload = run_json(capsys, ["lemma", "--q", "2", "--n", "3", "--k1", "2", "--k2", "1", "--json"])
    assert result.status == "ok" and result.exit_code == 0
    assert payload["total_pairs"] == 21
    assert payload["lemma_ok"] is True
    assert payload["per_error_x"] == 6 and payload["per_error_z"] == 6
    assert payload["nonzero_errors"] == 7


def test_lemma_table(capsys):
    run(["lemma", "--q", "2", "--n", "3", "--k1", "2", "--k2", "1"])
    out = capsys.readouterr().out
    assert "PASS" in out and "21" in out


# ---------------------------------------------------------------------------
# search and distances
# ---------------------------------------------------------------------------

def test_search_css_writes_verifiable_witness(tmp_path, capsys):
    out_file = tmp_path / "witness.json"
    result, payload = run_json(
        capsys,
        ["search", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5",
         "--dx", "2", "--dz", "2", "--trials", "100", "--seed", "1",
         "--threads", "1", "--out", str(out_file), "--json"],
    )
    assert result.status == "ok"
    assert payload["found"] is True
    assert payload["seed"] == 1
    assert isinstance(payload["trial_index"], int)
    pair = load_code_file(out_file)
    assert css_distances(pair).meets(2, 2)

    result2, payload2 = run_json(
        capsys,
        ["distances", "--in", str(out_file), "--json"],
    )
    assert result2.status == "ok"
    assert payload2["type"] == "css"
    assert payload2["dx"] >= 2 and payload2["dz"] >= 2


def test_search_not_found(capsys):
    result, payload = run_json(
        capsys,
        ["search", "css", "--q", "2", "--n", "4", "--k1", "4", "--k2", "0",
         "--dx", "3", "--dz", "3", "--trials", "20", "--seed", "3",
         "--threads", "1", "--json"],
    )
    assert result.status == "not_found" and result.exit_code == 0
    assert payload["found"] is False
    assert payload["trial_index"] is None


def test_search_stab_and_profile_distances(tmp_path, capsys):
    out_file = tmp_path / "stab.json"
    result, payload = run_json(
        capsys,
        ["search", "stab", "--q", "2", "--n", "6", "--k", "1", "--dx", "2",
         "--dz", "2", "--trials", "200", "--seed", "11", "--threads", "1",
         "--out", str(out_file), "--json"],
    )
    assert result.status == "ok" and payload["found"] is True
    assert payload["dx"] == 2 and payload["dz"] == 2
    result2, payload2 = run_json(capsys, ["distances", "--in", str(out_file), "--json"])
    assert payload2["type"] == "stab"
    matrix = payload2["profile"]
    assert matrix[1][1] is True  # dx=2, dz=2 verified by the search


def test_search_kind_flag_mismatch_is_usage_error(capsys):
    result = run(["search", "css", "--q", "2", "--n", "6", "--k", "2",
                  "--dx", "2", "--dz", "2", "--trials", "5", "--seed", "0"])
    err = capsys.readouterr().err
    assert result.exit_code == 1 and result.status == "error"
    assert "k1" in err


# ---------------------------------------------------------------------------
# frontier
# ---------------------------------------------------------------------------

def test_frontier_writes_csv(tmp_path, capsys):
    out_file = tmp_path / "frontier.csv"
    result = run(["frontier", "--q", "2", "--r", "0.25", "--points", "32", "--out", str(out_file)])
    capsys.readouterr()
    assert result.status == "ok" and result.exit_code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "delta_x,delta_z_max,R,q"
    assert len(lines) == result.payload["points"] + 1
    for line in lines[1:]:
        dx, dz, r, q = line.split(",")
        assert float(dz) >= 0 and float(r) == 0.25 and q == "2"


# ---------------------------------------------------------------------------
# error handling
# ---------------------------------------------------------------------------

def test_usage_errors_exit_1(capsys):
    bad = [
        ["nonsense"],
        ["bound"],
        ["bound", "css", "--q", "2"],
        ["bound", "css", "--q", "two", "--n", "12", "--k1", "7", "--k2", "5", "--dx", "2", "--dz", "2"],
        ["lemma", "--q", "2", "--n", "3", "--k1", "2"],
    ]
    for argv in bad:
        result = run(argv)
        captured = capsys.readouterr()
        assert result.exit_code == 1 and result.status == "error"
        assert captured.err.strip(), argv


def test_input_errors_exit_1(capsys):
    bad = [
        ["bound", "css", "--q", "6", "--n", "12", "--k1", "7", "--k2", "5", "--dx", "2", "--dz", "2"],
        ["bound", "css", "--q", "2", "--n", "12", "--k1", "5", "--k2", "7", "--dx", "2", "--dz", "2"],
        ["lemma", "--q", "4", "--n", "3", "--k1", "2", "--k2", "1"],
        ["lemma", "--q", "2", "--n", "30", "--k1", "15", "--k2", "5"],
        ["frontier", "--q", "2", "--r", "1.5", "--points", "8", "--out", "/tmp/x.csv"],
        ["distances", "--in", "/nonexistent/code.json"],
    ]
    for argv in bad:
        result = run(argv)
        captured = capsys.readouterr()
        assert result.exit_code == 1 and result.status == "error", argv
        assert captured.err.strip(), argv


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------

def test_json_outputs_are_reproducible(capsys):
    argv = ["search", "css", "--q", "2", "--n", "10", "--k1", "6", "--k2", "4",
            "--dx", "2", "--dz", "2", "--trials", "30", "--seed", "5", "--json"]
    run(argv + ["--threads", "1"])
    first = capsys.readouterr().out
    run(argv + ["--threads", "1"])
    second = capsys.readouterr().out
    run(argv + ["--threads", "2"])
    third = capsys.readouterr().out
    assert first == second == third
