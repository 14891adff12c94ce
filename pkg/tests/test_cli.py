import csv
import io
import json
import subprocess
import sys

import pytest

from discreg.cli import main
from discreg.diffcalc import LatticeFn
from discreg.report import BoundReport


def run(*args):
    buf = io.StringIO()
    code = main(list(args), stdout=buf)
    return code, buf.getvalue()


def test_derivative_json():
    code, out = run("derivative", "0,1", "-k", "2")
    assert code == 0
    d = json.loads(out)
    assert d == {"offset": -2, "values": ["1", "-1", "-1", "1"]}
    assert LatticeFn.from_dict(d) == LatticeFn(-2, [1, -1, -1, 1])


def test_norm_and_vanishing_order_human():
    assert run("norm", "0", "-k", "5", "-p", "1") == (0, "32\n")
    assert run("fourier", "vanishing-order", "0,1,3,4") == (0, "2\n")


def test_big_values_print_log2():
    code, out = run("norm", "0", "-k", "40", "-p", "1")
    assert out.startswith(str(2 ** 40)) and "log2 = 40.000000" in out


def test_boundary():
    code, out = run("boundary", "0-4,7,9-12", "--format", "json")
    d = json.loads(out)
    assert d["left"] == ["0", "7", "9"] and d["right"] == ["4", "7", "12"] and d["size"] == "3"


@pytest.mark.parametrize("args", [
    ("norm", "0,1,5", "-k", "3", "-p", "2"),
    ("maximal", "0,2", "-k", "2", "-p", "1"),
    ("maximal", "0,2", "--centered", "-k", "1", "-p", "inf"),
    ("fourier", "bounds", "0,1,3,4", "-k", "64"),
    ("fourier", "arcnorm", "0,1", "-k", "2", "-q", "inf"),
    ("fourier", "eval", "0,1,3", "-x", "0.25", "-k", "1"),
    ("search", "extremal", "-k", "3", "-p", "1", "-D", "7"),
    ("search", "pte", "-D", "1", "-B", "8"),
])
def test_csv_and_json_carry_identical_content(args):
    c1, js = run(*args, "--format", "json")
    c2, cs = run(*args, "--format", "csv")
    assert c1 == c2 == 0
    recs = [json.loads(line) for line in js.splitlines()]
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert len(recs) == len(rows)
    for rec, row in zip(recs, rows):
        for key, val in rec.items():
            text = row[key]
            if isinstance(val, (dict, list)):
                assert json.loads(text) == val
            elif val is None:
                assert text == ""
            elif isinstance(val, bool):
                assert text == str(val)
            elif isinstance(val, float):
                assert float(text) == val
            else:
                assert text == val


def test_verify_json_reports_round_trip_and_are_deterministic():
    args = ("verify", "thm1", "-D", "6", "--k-max", "3", "--format", "json")
    code, out = run(*args)
    assert code == 0
    _, again = run(*args)
    assert out == again
    for line in out.splitlines():
        rep = BoundReport.from_json(line)
        assert rep.to_json() == line and rep.runtime_ms is None


def test_verify_csv_matches_json():
    args = ("verify", "props", "-D", "6", "-k", "3")
    _, js = run(*args, "--format", "json")
    _, cs = run(*args, "--format", "csv")
    from discreg.report import from_csv
    rows = from_csv(cs)
    for line, row in zip(js.splitlines(), rows):
        d = json.loads(line)
        for key in row:
            assert row[key] == d[key]


@pytest.mark.parametrize("args", [
    ("verify", "small-k", "-D", "7"),
    ("verify", "thm2", "-k", "6,9", "--samples", "20"),
    ("verify", "thm6", "--max-size", "4", "--k-max", "6"),
    ("verify", "pos1", "--samples", "5", "--max-diameter", "8"),
    ("verify", "maximal-ratios", "--k-max", "2", "--samples", "4"),
    ("crossover", "0,1,3,4", "--bound", "thm5", "--k-max", "64"),
    ("crossover", "0,1,3,4", "--bound", "thm4", "--k-max", "64", "--thm4-c", "2"),
])
def test_verify_commands_exit_zero(args):
    code, out = run(*args)
    assert code == 0, out
    assert out.strip()


def test_workers_flag_keeps_verdicts():
    a = run("search", "extremal", "-k", "3", "-p", "1", "-D", "9", "--format", "json")
    b = run("search", "extremal", "-k", "3", "-p", "1", "-D", "9", "--format", "json",
            "--workers", "2")
    assert a == b


def test_exit_codes(capsys):
    assert run("norm", "1,1", "-k", "2")[0] == 2
    assert run("norm", "4-2", "-k", "2")[0] == 2
    assert run("norm", "0", "-k", "2", "-p", "1/2")[0] == 2
    assert run("maximal", "0", "-k", "0", "-p", "1")[0] == 2
    assert run("search", "extremal", "-k", "2", "-D", "40")[0] == 3
    with pytest.raises(SystemExit) as e:
        main(["norm"])
    assert e.value.code == 2
    err = capsys.readouterr().err
    assert "overlapping" in err


def test_budget_exit_prints_partial(monkeypatch):
    monkeypatch.setenv("DISCREG_CROSSOVER_BUDGET", "30")
    code, out = run("crossover", "0,1", "--bound", "thm3", "--k-max", "100", "--format", "json")
    assert code == 3
    assert json.loads(out)["details"]["scanned_to"] == "30"


def test_config_file(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("format = json\n")
    code, out = run("norm", "0", "-k", "3", "--config", str(p))
    assert json.loads(out)["exact"] == "8"
    p.write_text("bogus = 1\n")
    assert run("norm", "0", "-k", "3", "--config", str(p))[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "discreg.cli", "norm", "0", "-k", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8\n"
