import json
from fractions import Fraction

import pytest

from discreg.config import ConfigError, RunConfig, env_overrides, load_config, parse_config_text
from discreg.report import BoundReport, from_csv, jsonable, to_csv, to_jsonl


def _rep(**kw):
    base = dict(claim="thm1", params={"k": 3, "p": "2"}, lhs={"power": 10 ** 40},
                rhs={"power": Fraction(7, 3)}, verdict="holds", exact=True, runtime_ms=1.5)
    base.update(kw)
    return BoundReport(**base)


def test_jsonable_big_ints_as_strings():
    assert jsonable(10 ** 40) == str(10 ** 40)
    assert jsonable(Fraction(7, 3)) == "7/3"
    assert jsonable(float("inf")) == "inf"
    assert jsonable({"a": [1, True, None]}) == {"a": ["1", True, None]}
    with pytest.raises(TypeError):
        jsonable(object())


def test_report_json_round_trip_and_timing():
    r = _rep()
    d = json.loads(r.to_json())
    assert d["lhs"]["power"] == str(10 ** 40) and d["runtime_ms"] == 1.5
    assert json.loads(r.to_json(timing=False))["runtime_ms"] is None
    back = BoundReport.from_json(r.to_json())
    assert back.to_json() == r.to_json()
    assert set(d) >= {"claim", "params", "lhs", "rhs", "verdict", "exact", "tolerance",
                      "runtime_ms"}


def test_verdict_validation():
    with pytest.raises(ValueError):
        _rep(verdict="maybe")
    assert not _rep(verdict="fails").ok and _rep(verdict="report-only").ok


def test_csv_matches_json():
    reps = [_rep(), _rep(claim="pos1", exact=False, tolerance=2 ** -30, verdict="fails")]
    rows = from_csv(to_csv(reps, timing=False))
    for row, r in zip(rows, reps):
        d = r.to_dict(timing=False)
        for key in ("claim", "params", "lhs", "rhs", "verdict", "exact", "tolerance",
                    "runtime_ms"):
            assert row[key] == d[key]
    lines = to_jsonl(reps).splitlines()
    assert len(lines) == 2 and json.loads(lines[1])["claim"] == "pos1"


def test_config_defaults_and_validation():
    c = RunConfig()
    assert c.workers == 1 and c.format == "human" and c.be_c == 1.0
    for bad in ({"k_budget": 0}, {"workers": 0}, {"format": "xml"}, {"be_c": 0.5},
                {"float_tol": 0}):
        with pytest.raises(ConfigError):
            RunConfig(**bad)


def test_config_file_and_env(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# comment\nk_budget = 100\nformat = json\ntiming = true\nbe_c = 2.5\n")
    c = load_config(str(p), environ={"DISCREG_K_BUDGET": "50", "DISCREG_WORKERS": "3"})
    assert (c.k_budget, c.workers, c.format, c.timing, c.be_c) == (50, 3, "json", True, 2.5)
    assert env_overrides({"DISCREG_SEED": "9"}) == {"seed": 9}
    with pytest.raises(ConfigError):
        parse_config_text("nonsense = 1")
    with pytest.raises(ConfigError):
        parse_config_text("k_budget 5")
    with pytest.raises(ConfigError):
        parse_config_text("k_budget = five")
    assert c.with_overrides(format=None, seed=4).seed == 4
