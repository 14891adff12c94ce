"""Command-line front end.

Exit codes: 0 all claims hold, 1 a claim failed, 2 usage or set-literal
error, 3 budget exceeded (partial output is still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from . import verify as V
from .config import FORMATS, ConfigError, RunConfig, load_config
from .diffcalc import BudgetExceeded, chi_derivative
from .fourier import (ClaimViolation, QuadratureError, be_bound, bek_bound, exp_sum_eval,
                      nt_bound, vanishing_order, weighted_arc_norm)
from .intset import (EmptySetError, SetLiteralError, boundary_left, boundary_right,
                     format_set, parse_set)
from .maximal import (NormDiverges, centered_maximal, default_window,
                      maximal_derivative_norm, noncentered_maximal)
from .norms import ExponentError, as_exponent, format_exponent, lp_norm
from .report import BoundReport, jsonable, to_csv, to_jsonl
from .search import extremal_ratio_search, parity_pte_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BIG = 10 ** 6


class UsageError(Exception):
    pass


def _plist(text: str) -> list:
    try:
        return [as_exponent(t) for t in text.split(",") if t.strip()]
    except ExponentError as e:
        raise UsageError(str(e)) from None


def _ilist(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers: {text!r}") from None


def _human_number(x) -> str:
    """Exact decimal, with log2 appended for magnitudes above 10^6."""
    from .diffcalc import log2_exact

    s = str(x)
    try:
        if abs(x) > BIG:
            return f"{s}  (log2 = {log2_exact(abs(x)):.6f})"
    except TypeError:
        pass
    return s


# -- output ------------------------------------------------------------------

class Out:
    def __init__(self, cfg: RunConfig, stream=None):
        self.cfg = cfg
        self.stream = stream or sys.stdout

    def write(self, text: str):
        self.stream.write(text)
        if not text.endswith("\n"):
            self.stream.write("\n")

    def records(self, recs: list[dict], human_lines: Sequence[str]):
        """Emit flat records: JSON lines, CSV with a header, or human text."""
        fmt = self.cfg.format
        if fmt == "json":
            for r in recs:
                self.write(json.dumps(jsonable(r), sort_keys=True))
        elif fmt == "csv":
            buf = io.StringIO()
            keys = list(dict.fromkeys(k for r in recs for k in r))
            w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
            w.writerow(keys)
            for r in recs:
                row = []
                for k in keys:
                    v = jsonable(r.get(k))
                    row.append(json.dumps(v, sort_keys=True) if isinstance(v, (dict, list))
                               else ("" if v is None else str(v)))
                w.writerow(row)
            self.write(buf.getvalue())
        else:
            for line in human_lines:
                self.write(line)

    def reports(self, reports: list[BoundReport]) -> int:
        fmt = self.cfg.format
        if fmt == "json":
            self.write(to_jsonl(reports, self.cfg.timing))
        elif fmt == "csv":
            self.write(to_csv(reports, self.cfg.timing))
        else:
            for r in reports:
                params = " ".join(f"{k}={_compact(v)}" for k, v in r.params.items())
                extra = ""
                if "k0" in r.details:
                    extra = f" k0={r.details['k0']}"
                self.write(f"{r.claim:16s} {r.verdict:13s} {params}{extra}")
        return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _compact(v) -> str:
    v = jsonable(v)
    if isinstance(v, (list, dict)):
        s = json.dumps(v, separators=(",", ":"))
        return s if len(s) <= 60 else s[:57] + "..."
    return str(v)


# -- commands ----------------------------------------------------------------

def cmd_derivative(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    f = chi_derivative(A, a.k, cfg.k_budget)
    if cfg.format == "csv":
        recs = [{"n": f.offset + i, "value": v} for i, v in enumerate(f.values)]
        out.records(recs, [])
    else:
        out.write(json.dumps(f.to_dict()))
    return EXIT_OK


def cmd_norm(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    p = as_exponent(a.p)
    nv = lp_norm(chi_derivative(A, a.k, cfg.k_budget), p)
    rec = {"set": format_set(A), "k": a.k, **nv.to_dict()}
    if nv.kind == "exact-power-sum":
        line = f"{nv.value!r}  (p-th power: {_human_number(nv.exact)})"
    elif nv.exact is not None:
        line = _human_number(nv.exact)
    else:
        line = f"{nv.value!r}  (log2 = {nv.log2:.6f})"
    out.records([rec], [line])
    return EXIT_OK


def cmd_boundary(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    L, R = boundary_left(A), boundary_right(A)
    rec = {"set": format_set(A), "left": list(L.elements), "right": list(R.elements),
           "size": len(R)}
    out.records([rec], [f"left:  {format_set(L)}", f"right: {format_set(R)}",
                        f"|boundary| = {len(R)}"])
    return EXIT_OK


def cmd_maximal(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    p = as_exponent(a.p)
    W = a.window if a.window is not None else default_window(A, a.k)
    mf = (centered_maximal if a.centered else noncentered_maximal)(A, W)
    nv = maximal_derivative_norm(mf, a.k, p)
    rec = {"set": format_set(A), "k": a.k, "centered": a.centered, **nv.to_dict(),
           "left_tail": mf.left_tail.to_dict(), "right_tail": mf.right_tail.to_dict()}
    line = _human_number(nv.exact) if nv.exact is not None else f"{nv.value!r}"
    out.records([rec], [line])
    return EXIT_OK


def cmd_fourier(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    if a.fcmd == "eval":
        z = exp_sum_eval(A, a.x)
        mod = abs(2 * math.sin(math.pi * a.x)) ** a.k * abs(z)
        rec = {"set": format_set(A), "x": a.x, "k": a.k, "re": z.real, "im": z.imag,
               "weighted_modulus": mod}
        out.records([rec], [f"chi_hat = {z.real!r} + {z.imag!r}i",
                            f"|2 sin(pi x)|^k |chi_hat| = {mod!r}"])
    elif a.fcmd == "arcnorm":
        q = as_exponent(a.q)
        v = weighted_arc_norm(A, a.k, q, (a.center, a.radius), tol=cfg.quad_tol)
        rec = {"set": format_set(A), "k": a.k, "q": format_exponent(q), "center": a.center,
               "radius": a.radius, "value": v}
        out.records([rec], [repr(v)])
    elif a.fcmd == "vanishing-order":
        order = vanishing_order(A)
        out.records([{"set": format_set(A), "order": order}], [str(order)])
    else:
        p = as_exponent(a.p)
        forms = [nt_bound(A, a.k, p, "full-set"), nt_bound(A, a.k, p, "boundary"),
                 be_bound(A, a.k, p, a.thm4_c if a.thm4_c is not None else cfg.be_c),
                 bek_bound(A, a.k, p)]
        recs = [f.to_dict() for f in forms]
        lines = [f"{f.name:14s} order={f.order} finite_log2={f.finite:.6f} "
                 f"asymptotic_log2={f.asymptotic:.6f} stated_log2={f.stated:.6f}"
                 for f in forms]
        out.records(recs, lines)
    return EXIT_OK


def cmd_verify(a, cfg, out: Out) -> int:
    c = a.vcmd
    if c == "thm1":
        reps = V.verify_thm1(a.D, a.k_max, _plist(a.p), canonical=a.canonical)
    elif c == "small-k":
        reps = V.verify_small_k(a.D, _plist(a.p))
    elif c == "props":
        reps = V.verify_nonvanishing_props(a.D, _ilist(a.k), canonical=a.canonical)
    elif c == "thm2":
        reps = V.verify_thm2(_ilist(a.k), _plist(a.p), a.samples, a.max_diameter, cfg.seed)
    elif c == "thm6":
        reps = V.verify_thm6(a.max_size, a.k_max, _plist(a.p))
    elif c == "pos1":
        reps = V.verify_pos1(_plist(a.p), a.samples, a.max_diameter, cfg.seed)
    else:
        reps = V.verify_maximal_ratios(a.k_max, _plist(a.p), a.samples, a.max_diameter, cfg.seed)
    return out.reports(reps)


def cmd_crossover(a, cfg, out: Out) -> int:
    A = parse_set(a.set)
    c = a.thm4_c if a.thm4_c is not None else cfg.be_c
    k_max = a.k_max
    try:
        rep = V.crossover_scan(A, a.bound, k_max, c, budget=cfg.crossover_budget)
    except BudgetExceeded as e:
        if e.partial is not None:
            out.reports([e.partial])
        raise
    return out.reports([rep])


def cmd_search(a, cfg, out: Out) -> int:
    if a.scmd == "extremal":
        res = extremal_ratio_search(a.k, as_exponent(a.p), a.D, workers=cfg.workers,
                                    d_budget=cfg.d_budget)
        d = res.to_dict()
        out.records([d], [f"best set:   {format_set(res.best_set)}",
                          f"ratio:      {res.best_ratio.value!r} "
                          f"({res.best_ratio.num}/{res.best_ratio.den} in p-th powers)",
                          f"ties:       {len(res.ties)}",
                          f"enumerated: {res.count}",
                          f"floor (2k+1)^(-1/p) holds: {res.floor_holds}"])
        return EXIT_OK if res.floor_holds else EXIT_FAIL
    systems = parity_pte_search(a.D, a.m, a.B)
    recs = [s.to_dict() for s in systems]
    lines = [f"{format_set(s.evens)} / {format_set(s.odds)}  (m = {s.m})" for s in systems]
    if not systems:
        lines = [f"no system with m <= {a.m} in [0, {a.B})"]
    out.records(recs, lines)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run options")
    g.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    g.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")
    g.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="record runtime_ms in reports (output no longer byte-stable)")

    ap = argparse.ArgumentParser(prog="discreg", parents=[common],
                                 description="Higher discrete derivatives of indicator functions.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def leaf(parent, name, **kw):
        return parent.add_parser(name, parents=[common], **kw)

    p = leaf(sub, "derivative", help="k-th forward difference of chi_A")
    p.add_argument("set")
    p.add_argument("-k", type=int, required=True)

    p = leaf(sub, "norm", help="lp norm of chi_A^(k)")
    p.add_argument("set")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", default="1")

    p = leaf(sub, "boundary", help="left and right boundaries")
    p.add_argument("set")

    p = leaf(sub, "maximal", help="lp norm of the k-th difference of a maximal function")
    p.add_argument("set")
    p.add_argument("--centered", action="store_true")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", default="1")
    p.add_argument("-W", "--window", type=int, default=None)

    f = sub.add_parser("fourier", help="Fourier-side quantities")
    fs = f.add_subparsers(dest="fcmd", required=True)
    p = leaf(fs, "eval")
    p.add_argument("set")
    p.add_argument("-x", type=float, required=True)
    p.add_argument("-k", type=int, default=0)
    p = leaf(fs, "arcnorm")
    p.add_argument("set")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", default="2")
    p.add_argument("--center", type=float, default=0.5)
    p.add_argument("--radius", type=float, default=0.5)
    p = leaf(fs, "vanishing-order")
    p.add_argument("set")
    p = leaf(fs, "bounds")
    p.add_argument("set")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", default="1")
    p.add_argument("--thm4-c", type=float, default=None)

    v = sub.add_parser("verify", help="verification suites")
    vs = v.add_subparsers(dest="vcmd", required=True)
    p = leaf(vs, "thm1")
    p.add_argument("-D", type=int, default=10)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("-p", default="1,2,inf")
    p.add_argument("--canonical", action="store_true")
    p = leaf(vs, "small-k")
    p.add_argument("-D", type=int, default=12)
    p.add_argument("-p", default="1,2,inf")
    p = leaf(vs, "props")
    p.add_argument("-D", type=int, default=10)
    p.add_argument("-k", default="3,4,5")
    p.add_argument("--canonical", action="store_true")
    p = leaf(vs, "thm2")
    p.add_argument("-k", default="6,9,12,30,60")
    p.add_argument("-p", default="inf")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--max-diameter", type=int, default=40)
    p = leaf(vs, "thm6")
    p.add_argument("--max-size", type=int, default=16)
    p.add_argument("--k-max", type=int, default=32)
    p.add_argument("-p", default="1,2,4")
    p = leaf(vs, "pos1")
    p.add_argument("-p", default="1,inf")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-diameter", type=int, default=24)
    p = leaf(vs, "maximal-ratios")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("-p", default="1,inf")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-diameter", type=int, default=12)

    p = leaf(sub, "crossover", help="k0 scan for an asymptotic bound at p = 1")
    p.add_argument("set")
    p.add_argument("--bound", choices=V.BOUNDS, required=True)
    p.add_argument("--k-max", type=int, default=1024)
    p.add_argument("--thm4-c", type=float, default=None)

    s = sub.add_parser("search", help="exhaustive searches")
    ss = s.add_subparsers(dest="scmd", required=True)
    p = leaf(ss, "extremal")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-p", default="1")
    p.add_argument("-D", type=int, required=True)
    p = leaf(ss, "pte")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("-m", type=int, default=8)
    p.add_argument("-B", type=int, required=True)
    return ap


COMMANDS = {"derivative": cmd_derivative, "norm": cmd_norm, "boundary": cmd_boundary,
            "maximal": cmd_maximal, "fourier": cmd_fourier, "verify": cmd_verify,
            "crossover": cmd_crossover, "search": cmd_search}


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    err = sys.stderr
    try:
        cfg = load_config(getattr(a, "config", None))
        cfg = cfg.with_overrides(format=getattr(a, "format", None),
                                 workers=getattr(a, "workers", None),
                                 seed=getattr(a, "seed", None),
                                 timing=getattr(a, "timing", None))
    except (ConfigError, OSError) as e:
        print(f"discreg: config error: {e}", file=err)
        return EXIT_USAGE
    out = Out(cfg, stdout)
    try:
        return COMMANDS[a.cmd](a, cfg, out)
    except (SetLiteralError, EmptySetError, ExponentError, UsageError, NormDiverges,
            ValueError) as e:
        print(f"discreg: error: {e}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"discreg: budget exceeded: {e}", file=err)
        return EXIT_BUDGET
    except (ClaimViolation, QuadratureError) as e:
        print(f"discreg: claim failed: {e}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
