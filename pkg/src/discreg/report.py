"""BoundReport records and their JSON / CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

HOLDS = "holds"
FAILS = "fails"
CROSSOVER = "crossover"
NO_CROSSOVER = "no-crossover"
REPORT_ONLY = "report-only"
VERDICTS = (HOLDS, FAILS, CROSSOVER, NO_CROSSOVER, REPORT_ONLY)

CSV_FIELDS = ("claim", "params", "lhs", "rhs", "verdict", "exact", "tolerance", "runtime_ms")


def jsonable(x: Any) -> Any:
    """Convert ints (as decimal strings), Fractions and containers to JSON types."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            return repr(x)
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class BoundReport:
    claim: str
    params: dict
    lhs: Any
    rhs: Any
    verdict: str
    exact: bool
    tolerance: Optional[float] = None
    runtime_ms: Optional[float] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict != FAILS

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "claim": self.claim,
            "params": jsonable(self.params),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "verdict": self.verdict,
            "exact": self.exact,
            "tolerance": self.tolerance,
            "runtime_ms": self.runtime_ms if timing else None,
            "details": jsonable(self.details),
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            claim=d["claim"],
            params=d["params"],
            lhs=d["lhs"],
            rhs=d["rhs"],
            verdict=d["verdict"],
            exact=d["exact"],
            tolerance=d.get("tolerance"),
            runtime_ms=d.get("runtime_ms"),
            details=d.get("details", {}),
        )

    @classmethod
    def from_json(cls, s: str) -> "BoundReport":
        return cls.from_dict(json.loads(s))


def to_jsonl(reports: Iterable[BoundReport], timing: bool = True) -> str:
    return "".join(r.to_json(timing) + "\n" for r in reports)


def to_csv(reports: Iterable[BoundReport], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        d = r.to_dict(timing)
        w.writerow([
            d["claim"],
            json.dumps(d["params"], sort_keys=True),
            json.dumps(d["lhs"], sort_keys=True),
            json.dumps(d["rhs"], sort_keys=True),
            d["verdict"],
            str(d["exact"]).lower(),
            "" if d["tolerance"] is None else repr(d["tolerance"]),
            "" if d["runtime_ms"] is None else repr(d["runtime_ms"]),
        ])
    return buf.getvalue()


def from_csv(text: str) -> list[dict]:
    """Parse :func:`to_csv` output back into report dicts (details omitted)."""
    rows = list(csv.reader(io.StringIO(text)))
    out = []
    for row in rows[1:]:
        d = dict(zip(CSV_FIELDS, row))
        out.append({
            "claim": d["claim"],
            "params": json.loads(d["params"]),
            "lhs": json.loads(d["lhs"]),
            "rhs": json.loads(d["rhs"]),
            "verdict": d["verdict"],
            "exact": d["exact"] == "true",
            "tolerance": float(d["tolerance"]) if d["tolerance"] else None,
            "runtime_ms": float(d["runtime_ms"]) if d["runtime_ms"] else None,
        })
    return out
