import json
import re
import subprocess
import sys

import pytest

from nestsearch.cli import main
from nestsearch.harness import parse_summary


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bench_prints_summary_cell(capsys):
    code, out, _ = cli(capsys, "bench", "--algo", "cs", "--function", "michalewicz", "--dim", "16",
                       "--runs", "2", "--seed", "7", "--max-evals", "2000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed: 7"
    cell = lines[1].split(": ", 1)[1]
    assert re.fullmatch(r"\d+ ± \d+ \(\d+(\.\d+)?%\)", cell)
    parse_summary(cell)


def test_run_zero_budget_is_usage_error(capsys):
    code, out, err = cli(capsys, "run", "--function", "sphere", "--dim", "2", "--max-evals", "0")
    assert code == 2 and out == "" and err


def test_list_functions(capsys):
    code, out, _ = cli(capsys, "list-functions")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 9
    (easom,) = [r for r in rows if r.startswith("easom")]
    assert "[-100, 100]^2" in easom and "FIXED(2)" in easom


def test_list_functions_json(capsys):
    code, out, _ = cli(capsys, "list-functions", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 9


def test_unknown_function(capsys):
    code, out, err = cli(capsys, "run", "--function", "bogus", "--seed", "1")
    assert code == 1 and "sphere" in err and "shubert" in err
    assert "bogus" not in out


def test_unknown_flag(capsys):
    code, _, err = cli(capsys, "run", "--function", "sphere", "--frobnicate")
    assert code == 2 and err


def test_missing_subcommand(capsys):
    assert cli(capsys)[0] == 2


def test_generated_seed_reproduces(capsys):
    code, out, _ = cli(capsys, "run", "--function", "sphere", "--dim", "3", "--max-evals", "500")
    assert code == 0
    seed = int(out.splitlines()[0].split(": ")[1])
    _, again, _ = cli(capsys, "run", "--function", "sphere", "--dim", "3", "--max-evals", "500", "--seed", str(seed))
    assert again == out


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--function", "rastrigin", "--dim", "4", "--seed", "5", "--max-evals", "3000"],
        ["run", "--function", "easom", "--algo", "pso", "--seed", "5", "--max-evals", "3000", "--format", "json"],
        ["bench", "--function", "sphere", "--dim", "2", "--runs", "3", "--seed", "1", "--format", "csv"],
        ["compare", "--function", "easom", "--function", "shubert", "--runs", "2", "--seed", "4", "--max-evals", "2000"],
        ["sweep", "--function", "sphere", "--dim", "2", "--grid-n", "5,15", "--grid-pa", "0.1,0.25",
         "--runs", "2", "--seed", "3", "--max-evals", "3000"],
    ],
)
def test_identical_argv_identical_stdout(argv):
    cmd = [sys.executable, "-m", "nestsearch", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_compare_markdown(capsys):
    code, out, _ = cli(capsys, "compare", "--function", "easom", "--algo", "cs,ga", "--runs", "2",
                       "--seed", "4", "--max-evals", "2000")
    assert code == 0
    assert "| Function | CS | GA |" in out
    assert out.splitlines()[0] == "<!-- seed: 4 -->"


def test_compare_unknown_algorithm(capsys):
    code, _, err = cli(capsys, "compare", "--function", "easom", "--algo", "cs,sa", "--seed", "1")
    assert code == 1 and "sa" in err


def test_output_and_trace_files(capsys, tmp_path):
    out_file, trace = tmp_path / "run.json", tmp_path / "trace.csv"
    code, out, _ = cli(capsys, "run", "--function", "sphere", "--dim", "2", "--seed", "2", "--max-evals", "400",
                       "--format", "json", "--output", str(out_file), "--trace", str(trace))
    assert code == 0 and out == ""
    payload = json.loads(out_file.read_text())
    assert payload["seed"] == 2 and payload["evals_used"] <= 400
    assert trace.read_text().startswith("evals,best_value\n")


def test_unwritable_output(capsys, tmp_path):
    code, _, err = cli(capsys, "run", "--function", "sphere", "--dim", "2", "--seed", "2", "--max-evals", "100",
                       "--output", str(tmp_path / "no" / "x.txt"))
    assert code == 1 and err


def test_csv_seed_on_stderr(capsys):
    code, out, err = cli(capsys, "bench", "--function", "sphere", "--dim", "2", "--runs", "1",
                         "--max-evals", "500", "--format", "csv")
    assert code == 0 and out.startswith("algorithm,")
    assert err.startswith("seed: ")
