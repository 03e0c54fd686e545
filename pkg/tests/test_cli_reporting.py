import csv
import io
import json
import subprocess
import sys

import pytest

from stacksort import cli
from stacksort.fertility import CountTable
from stacksort.montecarlo import estimate
from stacksort.reporting import DEFAULT_MAX_N, PROPERTIES, VerifyResult, emit, run_verify


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_registry_covers_named_properties():
    named = {"lemma2", "lemma3", "lemma4", "lemma5", "lemma7", "lemma8", "lemma9", "thm2",
             "thm3-oracle", "thm4", "wt-tables", "dn-monotone", "dynamics-agreement",
             "s-below-right"}
    assert named <= set(PROPERTIES)
    assert set(DEFAULT_MAX_N) == set(PROPERTIES)


@pytest.mark.parametrize("pid", sorted(PROPERTIES))
def test_every_property_passes_small(pid):
    result = run_verify(pid, min(DEFAULT_MAX_N[pid], 5))
    assert result.passed, result
    assert result.counterexample is None and result.checked > 0


def test_run_verify_unknown():
    with pytest.raises(KeyError):
        run_verify("unknown", 3)


def test_failed_verify_carries_counterexample(monkeypatch):
    from stacksort import reporting

    def broken(max_n):
        raise reporting._Fail("forced", (2, 1))

    monkeypatch.setitem(reporting.PROPERTIES, "thm2", broken)
    result = run_verify("thm2", 3)
    assert result.status == "fail" and result.counterexample
    code, text = run("verify", "--property", "thm2", "--max-n", "3")
    assert code == cli.EXIT_FAIL
    assert "fail" in text


def test_emit_estimate_schema():
    r = estimate("sd", 20, 10, seed=0)
    d = json.loads(emit(r, "json", timing=False))
    assert list(d) == ["statistic", "n", "samples", "seed", "generator", "mean", "stddev",
                       "stderr", "ci95", "wall_time_s"]
    assert d["wall_time_s"] is None
    rows = list(csv.reader(io.StringIO(emit(r, "csv"))))
    assert rows[0][-1] == "wall_time_s" and len(rows) == 2


def test_emit_count_table_sorted():
    rows = [CountTable(4, 2, 22), CountTable(3, 1, 5), CountTable(4, 0, 1)]
    text = emit(rows, "csv")
    assert text.splitlines() == ["n,t,value", "3,1,5", "4,0,1", "4,2,22"]
    assert [r["t"] for r in json.loads(emit(rows, "json"))] == [1, 0, 2]


def test_emit_verify_and_bad_format():
    v = VerifyResult("x", (0, 3), "pass", 4)
    assert json.loads(emit(v, "json", timing=False))["elapsed_s"] is None
    assert "pass" in emit(v, "table")
    with pytest.raises(ValueError):
        emit(v, "xml")


def test_cli_sort_and_depth():
    assert run("sort", "4162") == (0, "1 4 2 6\n")
    assert run("sort", "4", "1", "6", "2", "--iterations", "2") == (0, "1 2 4 6\n")
    assert run("sort", "--map", "pop", "7634512")[1] == "3 6 7 4 1 5 2\n"
    assert run("sort", "--map", "revstack", "1", "2")[1] == "1 2\n"
    assert run("depth", "4162")[1] == "2\n"
    assert run("depth", "--prime", "9", "12", "6", "11", "4", "1", "10", "7", "8", "2", "5",
               "3")[1] == "5\n"
    assert run("depth", "--map", "pop", "321")[1] == "1\n"


def test_cli_fertility_with_cache(tmp_path):
    cache = tmp_path / "c.bin"
    assert run("fertility", "34125", "--cache", str(cache)) == (0, "4\n")
    assert cache.exists()
    assert run("fertility", "3 1 4 2 5", "--cache", str(cache)) == (0, "1\n")


def test_cli_preimages_and_enumerate():
    assert run("preimages", "213") == (0, "2 3 1\n")
    code, text = run("enumerate", "--what", "wt", "--n", "4")
    assert code == 0 and text.splitlines() == ["n,t,value", "4,0,1", "4,1,14", "4,2,22",
                                               "4,3,24"]
    assert run("enumerate", "--what", "wt", "--n", "4", "--t", "2")[1].splitlines()[1] == "4,2,22"
    assert run("enumerate", "--what", "dn", "--n", "2")[1].splitlines() == ["n,t,value", "2,,1/2"]
    assert run("enumerate", "--what", "wt", "--n", "4", "--t", "9")[0] == cli.EXIT_USAGE


def test_cli_dynamics_and_order_and_ballot():
    d = json.loads(run("dynamics", "6173542")[1])
    assert d["partitions"][0] == [[1, 6, 7], [3, 5], [4], [2]]
    assert d["indexing"] == "1-based"
    assert "<=R" in run("order", "--kind", "right", "31425", "34125")[1]
    assert "incomparable" in run("order", "--kind", "left", "213", "231")[1]
    b = json.loads(run("ballot", "--n", "4", "--iprev", "0", "--im", "2")[1])
    assert b["probability"] == "2/3" and b["lower_bound"] == "0"


def test_cli_bounds_formats():
    rows = dict(csv.reader(io.StringIO(run("bounds")[1])))
    assert abs(float(rows["sum_b"]) - 0.8728935) < 1e-6
    assert "lambda_computed" in json.loads(run("--format", "json", "bounds")[1])


def test_cli_global_flags_before_and_after_subcommand():
    a = run("--seed", "4", "estimate", "--stat", "sd", "--n", "30", "--samples", "20")[1]
    b = run("estimate", "--stat", "sd", "--n", "30", "--samples", "20", "--seed", "4")[1]
    c = run("estimate", "--stat", "sd", "--n", "30", "--samples", "20", "--seed", "5")[1]
    assert a == b != c


def test_cli_config_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nseed = 4\nworkers = 2\nformat = csv\nmax_exhaustive_n = 5\n")
    via_cfg = run("--config", str(cfg), "estimate", "--stat", "sd", "--n", "30",
                  "--samples", "20")[1]
    assert via_cfg.startswith("statistic,")
    assert ",4," in via_cfg.splitlines()[1]
    flagged = run("--config", str(cfg), "--format", "json", "estimate", "--stat", "sd",
                  "--n", "30", "--samples", "20")[1]
    assert json.loads(flagged)["seed"] == 4
    assert run("--config", str(cfg), "enumerate", "--what", "wt", "--n", "6")[0] == cli.EXIT_GUARD
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour=blue\n")
    assert run("--config", str(bad), "bounds")[0] == cli.EXIT_USAGE


def test_cli_exit_codes():
    assert run("sort", "1", "1")[0] == cli.EXIT_USAGE
    assert run("depth", "--map", "pop", "--prime", "21")[0] == cli.EXIT_USAGE
    assert run("verify", "--property", "nope")[0] == cli.EXIT_USAGE
    assert run("enumerate", "--what", "wt", "--n", "11")[0] == cli.EXIT_GUARD
    assert run("preimages", "1 2 3 4 5 6 7 8 9 10 11")[0] == cli.EXIT_GUARD
    assert run("verify", "--property", "lemma3", "--max-n", "4")[0] == 0
    assert run("--help")[0] == 0


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "stacksort.cli", "sort", "5273614"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "2 5 3 1 4 6 7\n"


def test_estimate_output_is_deterministic():
    argv = ["estimate", "--stat", "maxblock", "--n", "50", "--samples", "30", "--seed", "2"]
    assert run(*argv)[1] == run(*argv)[1]
