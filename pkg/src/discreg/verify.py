"""Verification harness: concrete checks of the inequalities, as BoundReports.

Every core function takes scalar ``k``/``p`` style parameters that are
stored verbatim in the report's ``params``, so :func:`recheck` can rebuild
any report from its serialized form alone.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .diffcalc import (BudgetExceeded, LatticeFn, binomial_row, chi_derivative,
                       forward_difference, indicator, log2_exact)
from .fourier import be_bound, bek_bound, hausdorff_young_check, nt_bound
from .intset import (IntSet, all_subsets, boundary_left, boundary_right,
                     sparsity_condition, sparsity_sum)
from .maximal import (centered_maximal, default_window, maximal_derivative_norm,
                      noncentered_maximal)
from .norms import (FLOAT_TOL, INF, check_exponent, format_exponent,
                    holder_chain_check, is_integer_exponent, lp_norm, power_sum)
from .report import (CROSSOVER, FAILS, HOLDS, NO_CROSSOVER, REPORT_ONLY, BoundReport)
from .search import is_canonical_mask

DEFAULT_CROSSOVER_BUDGET = 2048
MAX_LISTED = 8


# -- set families -----------------------------------------------------------

def exhaustive_sets(D: int, canonical: bool = False) -> list[IntSet]:
    if canonical:
        return [IntSet.from_mask(m) for m in range(1, 1 << D) if is_canonical_mask(m)]
    return list(all_subsets(D))


def random_sets(samples: int, max_diameter: int, seed: int) -> list[IntSet]:
    """Seeded sets containing 0 and a uniform diameter d <= max_diameter,
    with each interior point present with probability 1/2."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        d = rng.randint(0, max_diameter)
        pts = {0, d}
        pts.update(n for n in range(1, d) if rng.random() < 0.5)
        out.append(IntSet(pts))
    return out


def sparse_progression(size: int) -> IntSet:
    """{0, g, 2g, ...} with g = ceil((8/pi) H_{size-1}); a singleton for size 1."""
    if size == 1:
        return IntSet([0])
    H = sum(Fraction(1, j) for j in range(1, size))
    g = math.ceil(8 / math.pi * float(H))
    return IntSet(range(0, g * size, g))


def _family(params: dict) -> list[IntSet]:
    if "sets" in params:
        return [IntSet(s) for s in params["sets"]]
    if "D" in params:
        return exhaustive_sets(params["D"], params.get("canonical", False))
    return random_sets(params["samples"], params["max_diameter"], params["seed"])


def _derivs(A: IntSet, k_max: int) -> list[LatticeFn]:
    out = [indicator(A)]
    for _ in range(k_max):
        out.append(forward_difference(out[-1]))
    return out


def _fmt(A: IntSet) -> list[int]:
    return list(A.elements)


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000


# -- k-th versus first derivative -------------------------------------------

def _thm1_core(D: int, k: int, p: str, canonical: bool = False,
               constant: str = "2k+1", _cache=None) -> BoundReport:
    """||chi_A^(k)||_p^p >= c ||chi_A'||_p^p over every set of the family, with
    c = 1/(2k+1) ("2k+1"), 2^-k ("2^k"), or the p = inf floor 1 ("prop1")."""
    pe = check_exponent(p)
    fam = _cache if _cache is not None else [(A, _derivs(A, k)) for A in exhaustive_sets(D, canonical)]
    claim = {"2k+1": "thm1", "2^k": "thm1-weak", "prop1": "prop1"}[constant]
    # the constant is (mult)^(-1/p), which is 1 at p = inf
    mult = 1 if pe == INF else {"2k+1": 2 * k + 1, "2^k": 1 << k, "prop1": 1}[constant]
    fails = []
    worst = None
    with _Clock() as clk:
        for A, ds in fam:
            if pe == INF or constant == "prop1":
                # ||chi_A'||_inf = 1 for every nonempty A
                nk = power_sum(ds[k].values, INF)
                n1 = 1
            else:
                nk = power_sum(ds[k].values, pe)
                n1 = power_sum(ds[1].values, pe)
            ok = mult * nk >= n1
            r = Fraction(nk, n1)
            if worst is None or r < worst[0]:
                worst = (r, A, nk, n1)
            if not ok and len(fails) < MAX_LISTED:
                fails.append(_fmt(A))
    r, A, nk, n1 = worst
    bound = Fraction(n1, mult)
    return BoundReport(
        claim=claim,
        params={"D": D, "k": k, "p": format_exponent(pe), "canonical": canonical,
                "constant": constant},
        lhs={"set": _fmt(A), "power": nk},
        rhs={"power": bound},
        verdict=FAILS if fails else HOLDS, exact=True, runtime_ms=clk.ms,
        details={"sets": len(fam), "counterexamples": fails, "min_ratio": r},
    )


def verify_thm1(D: int = 10, k_max: int = 8, p_list: Sequence = (1, 2, "inf"),
                canonical: bool = False) -> list[BoundReport]:
    if D > 12 or k_max > 10:
        raise BudgetExceeded("exhaustive mode needs D <= 12 and k_max <= 10")
    fam = [(A, _derivs(A, k_max)) for A in exhaustive_sets(D, canonical)]
    out = []
    for k in range(1, k_max + 1):
        for p in p_list:
            pe = check_exponent(p)
            ps = format_exponent(pe)
            if pe == INF:
                out.append(_thm1_core(D, k, ps, canonical, "2k+1", fam))
                out.append(_thm1_core(D, k, ps, canonical, "prop1", fam))
            else:
                out.append(_thm1_core(D, k, ps, canonical, "2k+1", fam))
                out.append(_thm1_core(D, k, ps, canonical, "2^k", fam))
    return out


# -- small-k identities and bounds ------------------------------------------

# ||chi_A^(k)||_p >= C (2 |boundary|)^(1/p)
SMALL_K_CONSTANTS = {3: 2, 4: 2, 5: 4, 6: 3, 7: 6}


def _small_k_core(D: int, k: int, p: str, _cache=None) -> BoundReport:
    pe = check_exponent(p)
    fam = _cache if _cache is not None else [(A, _derivs(A, k)) for A in exhaustive_sets(D)]
    fails = []
    tight_lo = tight_hi = 0
    with _Clock() as clk:
        for A, ds in fam:
            nb = len(boundary_right(A))
            val = power_sum(ds[k].values, pe)
            if k == 1:
                target = 1 if pe == INF else 2 * nb
                ok = val == target
            elif k == 2:
                lo = 1 if pe == INF else 4 * nb
                hi = 2 if pe == INF else (2 ** int(pe)) * 2 * nb
                ok = lo <= val <= hi
                tight_lo += val == lo
                tight_hi += val == hi
            else:
                C = SMALL_K_CONSTANTS[k]
                lo = C if pe == INF else C ** int(pe) * 2 * nb
                ok = val >= lo
                tight_lo += val == lo
            if not ok and len(fails) < MAX_LISTED:
                fails.append(_fmt(A))
    claim = {1: "k1-identity", 2: "k2-sandwich"}.get(k, f"k{k}-bound")
    if k == 1:
        rhs = {"form": "2|dA|" if pe != INF else "1"}
    elif k == 2:
        rhs = {"lower": "4|dA|", "upper": "2^p * 2|dA|"} if pe != INF else {"lower": 1, "upper": 2}
    else:
        rhs = {"form": f"{SMALL_K_CONSTANTS[k]}^p * 2|dA|" if pe != INF
               else SMALL_K_CONSTANTS[k]}
    return BoundReport(
        claim=claim, params={"D": D, "k": k, "p": format_exponent(pe)},
        lhs={"quantity": "||chi_A^(k)||_p^p" if pe != INF else "||chi_A^(k)||_inf"},
        rhs=rhs, verdict=FAILS if fails else HOLDS, exact=True, runtime_ms=clk.ms,
        details={"sets": len(fam), "counterexamples": fails,
                 "tight_lower": tight_lo, "tight_upper": tight_hi},
    )


def _tightness_core(D: int, p: str) -> BoundReport:
    """{0, 1} meets the lower k = 2 bound; {2, 4, ..., 2n} has
    ||chi''||_p^p = 2^p (2n - 1) + 2 and meets the upper bound at p = 1."""
    pe = check_exponent(p)
    checks = {}
    with _Clock() as clk:
        A = IntSet([0, 1])
        v = power_sum(chi_derivative(A, 2).values, pe)
        checks["pair_lower_tight"] = v == (1 if pe == INF else 4 * len(boundary_right(A)))
        for n in range(1, D // 2):
            An = IntSet(range(2, 2 * n + 1, 2))
            v = power_sum(chi_derivative(An, 2).values, pe)
            if pe == INF:
                checks[f"A_{n}"] = v == 2 if n >= 1 else True
            else:
                ip = int(pe)
                checks[f"A_{n}"] = v == 2 ** ip * (2 * n - 1) + 2
                if ip == 1:
                    checks[f"A_{n}_upper_tight"] = v == 2 * 2 * n
    ok = all(checks.values())
    return BoundReport(
        claim="k2-tightness", params={"D": D, "p": format_exponent(pe)},
        lhs=checks, rhs=None, verdict=HOLDS if ok else FAILS, exact=True,
        runtime_ms=clk.ms)


def verify_small_k(D: int = 12, p_list: Sequence = (1, 2, "inf")) -> list[BoundReport]:
    if D > 12:
        raise BudgetExceeded("exhaustive mode needs D <= 12")
    fam = [(A, _derivs(A, 7)) for A in exhaustive_sets(D)]
    out = []
    for k in range(1, 8):
        for p in p_list:
            out.append(_small_k_core(D, k, format_exponent(check_exponent(p)), fam))
    for p in p_list:
        out.append(_tightness_core(D, format_exponent(check_exponent(p))))
    return out


# -- interval nonvanishing ---------------------------------------------------

def _nonzero_prefix(g: LatticeFn, lo: int, hi: int) -> tuple[int, list[int]]:
    pre = [0]
    for n in range(lo, hi + 1):
        pre.append(pre[-1] + (g(n) != 0))
    return lo, pre


def _props_core(D: int, k: int, prop: str, canonical: bool = False) -> BoundReport:
    """prop2: any length-2^k interval meeting the boundary points carries a
    nonzero value of chi_A^(k). prop3: if {n+k-1, ..., n+3k-1} meets them,
    chi_A^(k) is nonzero somewhere on {n, ..., n+2k}."""
    if k < 3:
        raise ValueError("interval checks need k >= 3")
    fails = []
    intervals = 0
    fam = exhaustive_sets(D, canonical)
    with _Clock() as clk:
        for A in fam:
            g = chi_derivative(A, k)
            pts = sorted(set(boundary_right(A).elements)
                         | {b - 1 for b in boundary_left(A).elements})
            if prop == "prop2":
                length = 1 << k
                starts = {n for b in pts for n in range(b - length + 1, b + 1)}
                span = lambda n: (n, n + length - 1)
            else:
                starts = {n for b in pts for n in range(b - 3 * k + 1, b - k + 2)}
                span = lambda n: (n, n + 2 * k)
            lo = min(starts)
            hi = max(span(n)[1] for n in starts)
            base, pre = _nonzero_prefix(g, lo, hi)
            for n in sorted(starts):
                a, b = span(n)
                intervals += 1
                if pre[b - base + 1] - pre[a - base] == 0 and len(fails) < MAX_LISTED:
                    fails.append({"set": _fmt(A), "start": n})
    return BoundReport(
        claim=prop, params={"D": D, "k": k, "prop": prop, "canonical": canonical},
        lhs={"intervals_checked": intervals}, rhs={"vanishing_intervals": len(fails)},
        verdict=FAILS if fails else HOLDS, exact=True, runtime_ms=clk.ms,
        details={"sets": len(fam), "counterexamples": fails},
    )


def verify_nonvanishing_props(D: int = 10, k_list: Sequence[int] = (3, 4, 5),
                              canonical: bool = False) -> list[BoundReport]:
    if D > 12 or max(k_list) > 8:
        raise BudgetExceeded("exhaustive mode needs D <= 12 and k <= 8")
    return [_props_core(D, k, prop, canonical) for k in k_list for prop in ("prop2", "prop3")]


# -- binomial floor -----------------------------------------------------------

def _thm2_core(k: int, p: str, samples: int = 200, max_diameter: int = 40, seed: int = 0,
               sets: Optional[list] = None) -> BoundReport:
    """||chi_A^(k)||_p >= C(k, floor(k/3)) / 3, compared as 3^p N_p >= C^p."""
    if k < 3:
        raise ValueError("k must be >= 3")
    pe = check_exponent(p)
    params = {"k": k, "p": format_exponent(pe)}
    if sets is not None:
        params["sets"] = sets
        fam = [IntSet(s) for s in sets]
    else:
        params.update(samples=samples, max_diameter=max_diameter, seed=seed)
        fam = random_sets(samples, max_diameter, seed)
    C = binomial_row(k)[k // 3]
    fails = []
    worst = None
    exact = pe == INF or is_integer_exponent(pe)
    with _Clock() as clk:
        for A in fam:
            vals = chi_derivative(A, k).values
            if exact:
                N = power_sum(vals, pe)
                if pe == INF:
                    ok, r = 3 * N >= C, Fraction(3 * N, C)
                else:
                    ip = int(pe)
                    ok, r = 3 ** ip * N >= C ** ip, Fraction(3 ** ip * N, C ** ip)
            else:
                lg = lp_norm(LatticeFn(0, vals), pe).log2
                r = lg - (log2_exact(C) - math.log2(3))
                ok = r >= -FLOAT_TOL
            if worst is None or r < worst[0]:
                worst = (r, A)
            if not ok and len(fails) < MAX_LISTED:
                fails.append(_fmt(A))
    return BoundReport(
        claim="thm2", params=params,
        lhs={"min_margin": worst[0], "set": _fmt(worst[1])},
        rhs={"binomial": C, "divisor": 3}, verdict=FAILS if fails else HOLDS,
        exact=exact, tolerance=None if exact else FLOAT_TOL, runtime_ms=clk.ms,
        details={"sets": len(fam), "counterexamples": fails},
    )


def verify_thm2(k_list: Sequence[int] = (6, 9, 12, 30, 60), p_list: Sequence = ("inf",),
                samples: int = 200, max_diameter: int = 40, seed: int = 0) -> list[BoundReport]:
    return [_thm2_core(k, format_exponent(check_exponent(p)), samples, max_diameter, seed)
            for k in k_list for p in p_list]


# -- sparse sets --------------------------------------------------------------

def _thm6_core(sets: list, k_max: int, p: str) -> BoundReport:
    """Both regimes of the sparse-set bound for k = 1..k_max on each set."""
    pe = check_exponent(p)
    exact = is_integer_exponent(pe)
    fails, skipped, checked = [], [], 0
    worst = None
    with _Clock() as clk:
        for s in sets:
            A = IntSet(s)
            status = sparsity_condition(A)
            if status != "pass":
                skipped.append({"set": _fmt(A), "reason": f"sparsity {status}",
                                "sum": sparsity_sum(A)})
                continue
            m = len(A)
            ds = _derivs(A, k_max)
            for k in range(1, k_max + 1):
                vals = ds[k].values
                checked += 1
                if exact:
                    ip = int(pe)
                    N = power_sum(vals, pe)
                    if ip >= 2:
                        lhs = Fraction(N) ** 2
                        rhs = (Fraction(k + 1) ** (2 - ip) * Fraction(2) ** (ip * (k - 2))
                               * m * m)
                    else:
                        lhs = Fraction(N)
                        rhs = Fraction(2) ** (ip * k - k - 2) * m
                    ok = lhs >= rhs
                    margin = lhs / rhs
                else:
                    pf = float(pe)
                    lg = lp_norm(ds[k], pe).log2
                    if pf >= 2:
                        rl = ((1 / pf - 0.5) * math.log2(k + 1) + k / 2 - 1
                              + math.log2(m) / pf)
                    else:
                        rl = k - (k + 2) / pf + math.log2(m) / pf
                    margin = lg - rl
                    ok = margin >= -math.log2(1 + FLOAT_TOL)
                if worst is None or margin < worst[0]:
                    worst = (margin, _fmt(A), k)
                if not ok and len(fails) < MAX_LISTED:
                    fails.append({"set": _fmt(A), "k": k})
    regime = "p>=2" if pe != INF and pe >= 2 else "1<=p<2"
    return BoundReport(
        claim="thm6", params={"sets": [list(IntSet(s).elements) for s in sets],
                              "k_max": k_max, "p": format_exponent(pe)},
        lhs={"min_margin": None if worst is None else worst[0],
             "set": None if worst is None else worst[1],
             "k": None if worst is None else worst[2]},
        rhs={"regime": regime}, verdict=FAILS if fails else HOLDS, exact=exact,
        tolerance=None if exact else FLOAT_TOL, runtime_ms=clk.ms,
        details={"checked": checked, "skipped": skipped, "counterexamples": fails},
    )


def verify_thm6(max_size: int = 16, k_max: int = 32,
                p_list: Sequence = (1, 2, 4), sets: Optional[list] = None) -> list[BoundReport]:
    if sets is None:
        sets = [list(sparse_progression(m).elements) for m in range(1, max_size + 1)]
    return [_thm6_core(sets, k_max, format_exponent(check_exponent(p))) for p in p_list]


# -- maximal functions -------------------------------------------------------

def _pos1_core(p: str, samples: int = 100, max_diameter: int = 24, seed: int = 0,
               k: int = 2) -> BoundReport:
    """||(M chi_A)''||_p <= 2^(1-1/p) 3^(1/p) ||chi_A''||_p, noncentered M."""
    pe = check_exponent(p)
    fam = random_sets(samples, max_diameter, seed)
    exact = pe == 1 or pe == INF
    fails = []
    worst = None
    with _Clock() as clk:
        for A in fam:
            mf = noncentered_maximal(A, default_window(A, k))
            lhs = maximal_derivative_norm(mf, k, pe)
            vals = chi_derivative(A, k).values
            if pe == INF:
                rhs = Fraction(2 * power_sum(vals, pe))
                ok, r = lhs.exact <= rhs, lhs.exact / rhs
            elif pe == 1:
                rhs = Fraction(3 * power_sum(vals, pe))
                ok, r = lhs.exact <= rhs, lhs.exact / rhs
            else:
                pf = float(pe)
                rl = (1 - 1 / pf) + math.log2(3) / pf + lp_norm(LatticeFn(0, vals), pe).log2
                r = 2.0 ** (lhs.log2 - rl)
                ok = lhs.log2 <= rl + math.log2(1 + FLOAT_TOL)
            if worst is None or r > worst[0]:
                worst = (r, A)
            if not ok and len(fails) < MAX_LISTED:
                fails.append(_fmt(A))
    return BoundReport(
        claim="pos1", params={"p": format_exponent(pe), "samples": samples,
                              "max_diameter": max_diameter, "seed": seed, "k": k},
        lhs={"max_ratio": worst[0], "set": _fmt(worst[1])},
        rhs={"constant": "2^(1-1/p) 3^(1/p)"}, verdict=FAILS if fails else HOLDS,
        exact=exact, tolerance=None if exact else FLOAT_TOL, runtime_ms=clk.ms,
        details={"sets": len(fam), "counterexamples": fails},
    )


def verify_pos1(p_list: Sequence = (1, "inf"), samples: int = 100, max_diameter: int = 24,
                seed: int = 0) -> list[BoundReport]:
    return [_pos1_core(format_exponent(check_exponent(p)), samples, max_diameter, seed)
            for p in p_list]


def _maximal_ratio_core(k: int, p: str, centered: bool, samples: int = 100, max_diameter: int = 12,
              seed: int = 0) -> BoundReport:
    """Observed ||(M chi_A)^(k)||_p / ||chi_A^(k)||_p; the implied constants are
    unspecified, so this is report-only."""
    pe = check_exponent(p)
    fam = random_sets(samples, max_diameter, seed)
    ratios = []
    with _Clock() as clk:
        for A in fam:
            build = centered_maximal if centered else noncentered_maximal
            mf = build(A, default_window(A, k))
            top = maximal_derivative_norm(mf, k, pe)
            bottom = lp_norm(chi_derivative(A, k), pe)
            if top.exact is not None and bottom.exact is not None and pe in (1, INF):
                ratios.append(Fraction(top.exact) / bottom.exact)
            else:
                ratios.append(2.0 ** (top.log2 - bottom.log2))
    finite = all(math.isfinite(float(r)) for r in ratios)
    return BoundReport(
        claim="cor3" if centered else "cor1",
        params={"k": k, "p": format_exponent(pe), "centered": centered, "samples": samples,
                "max_diameter": max_diameter, "seed": seed},
        lhs={"max_ratio": max(ratios), "min_ratio": min(ratios)}, rhs=None,
        verdict=REPORT_ONLY, exact=pe in (1, INF), runtime_ms=clk.ms,
        details={"all_finite": finite},
    )


def verify_maximal_ratios(k_max: int = 4, p_list: Sequence = (1, "inf"), samples: int = 100,
                       max_diameter: int = 12, seed: int = 0) -> list[BoundReport]:
    return [_maximal_ratio_core(k, format_exponent(check_exponent(p)), centered, samples,
                      max_diameter, seed)
            for centered in (False, True) for k in range(1, k_max + 1) for p in p_list]


# -- crossover scans ---------------------------------------------------------

BOUNDS = ("thm3", "thm3-boundary", "thm4", "thm5")


def _bound_forms(A: IntSet, bound: str, k: int, c: float):
    if bound == "thm3":
        return nt_bound(A, k, 1, "full-set")
    if bound == "thm3-boundary":
        return nt_bound(A, k, 1, "boundary")
    if bound == "thm4":
        return be_bound(A, k, 1, c)
    if bound == "thm5":
        return bek_bound(A, k, 1)
    raise ValueError(f"unknown bound {bound!r}")


def _least_crossover(margins: list[float], tol: float) -> Optional[int]:
    """Least index i with margins[j] >= -tol for every j >= i, else None."""
    k0 = None
    for i in range(len(margins) - 1, -1, -1):
        if margins[i] >= -tol:
            k0 = i
        else:
            break
    return k0


def crossover_scan(A, bound: str, k_max: int, c: float = 1.0,
                   budget: int = DEFAULT_CROSSOVER_BUDGET) -> BoundReport:
    """Compare exact log2 ||chi_A^(order)||_1 against the finite-k bound for
    k = 1..k_max, reporting the least k0 from which the bound holds through
    k_max. The arc bound "thm4" has an unknown constant c, so it is report-only."""
    A = IntSet(A)
    if bound not in BOUNDS:
        raise ValueError(f"unknown bound {bound!r}")
    params = {"A": _fmt(A), "bound": bound, "k_max": k_max, "c": c}
    truncated = k_max > budget
    k_run = min(k_max, budget)
    tol = math.log2(1 + FLOAT_TOL)
    t0 = time.perf_counter()
    g = indicator(A)
    extra = 1 if bound == "thm3-boundary" else 0
    lhs, fin, stated = [], [], []
    g = forward_difference(g)
    if extra:
        g = forward_difference(g)
    for k in range(1, k_run + 1):
        lhs.append(log2_exact(sum(abs(v) for v in g.values)))
        forms = _bound_forms(A, bound, k, c)
        fin.append(forms.finite)
        stated.append(forms.stated)
        g = forward_difference(g)
    margins = [a - b for a, b in zip(lhs, fin)]
    k0 = _least_crossover(margins, tol)
    k0s = _least_crossover([a - b for a, b in zip(lhs, stated)], tol)
    mono = None
    if k0 is not None:
        mono = k0
        for i in range(len(margins) - 1, k0, -1):
            if margins[i] < margins[i - 1]:
                mono = i
                break
    samples = {}
    k = 1
    while k <= k_run:
        samples[str(k)] = {"lhs_log2": lhs[k - 1], "rhs_log2": fin[k - 1]}
        k *= 2
    samples[str(k_run)] = {"lhs_log2": lhs[-1], "rhs_log2": fin[-1]}
    if bound == "thm4":
        verdict = REPORT_ONLY
    else:
        verdict = CROSSOVER if k0 is not None else NO_CROSSOVER
    report = BoundReport(
        claim=f"crossover-{bound}", params=params,
        lhs={"l1_log2_at_kmax": lhs[-1]}, rhs={"finite_log2_at_kmax": fin[-1],
                                               "stated_log2_at_kmax": stated[-1]},
        verdict=verdict, exact=False, tolerance=FLOAT_TOL,
        runtime_ms=(time.perf_counter() - t0) * 1000,
        details={"k0": None if k0 is None else k0 + 1,
                 "k0_stated": None if k0s is None else k0s + 1,
                 "margin_nondecreasing_from": None if mono is None else mono + 1,
                 "margin_log2_at_kmax": margins[-1], "samples": samples,
                 "scanned_to": k_run},
    )
    if truncated:
        raise BudgetExceeded(f"k_max {k_max} exceeds budget {budget}", partial=report)
    return report


# -- recheck -----------------------------------------------------------------

def _rerun_thm1(params):
    return _thm1_core(params["D"], params["k"], params["p"], params.get("canonical", False),
                      params.get("constant", "2k+1"))


def _rerun_hol(params):
    f = LatticeFn.from_dict(params["f"])
    return holder_chain_check(f, params["p"], int(params["supp_size"]))


_RECHECK: dict[str, Callable[[dict], BoundReport]] = {
    "thm1": _rerun_thm1, "thm1-weak": _rerun_thm1, "prop1": _rerun_thm1,
    "k2-tightness": lambda q: _tightness_core(q["D"], q["p"]),
    "prop2": lambda q: _props_core(q["D"], q["k"], "prop2", q.get("canonical", False)),
    "prop3": lambda q: _props_core(q["D"], q["k"], "prop3", q.get("canonical", False)),
    "thm2": lambda q: _thm2_core(q["k"], q["p"], q.get("samples", 200),
                                 q.get("max_diameter", 40), q.get("seed", 0), q.get("sets")),
    "thm6": lambda q: _thm6_core(q["sets"], q["k_max"], q["p"]),
    "pos1": lambda q: _pos1_core(q["p"], q["samples"], q["max_diameter"], q["seed"], q["k"]),
    "cor1": lambda q: _maximal_ratio_core(q["k"], q["p"], False, q["samples"], q["max_diameter"], q["seed"]),
    "cor3": lambda q: _maximal_ratio_core(q["k"], q["p"], True, q["samples"], q["max_diameter"], q["seed"]),
    "hol": _rerun_hol,
    "dv": lambda q: hausdorff_young_check(IntSet(q["A"]), q["k"], q["p"]),
}
for _b in BOUNDS:
    _RECHECK[f"crossover-{_b}"] = lambda q: crossover_scan(q["A"], q["bound"], q["k_max"],
                                                           q["c"])


def _normalize_params(params: dict) -> dict:
    """Undo JSON stringification of integer parameters."""
    out = {}
    for k, v in params.items():
        if isinstance(v, str) and k in ("D", "k", "k_max", "samples", "max_diameter",
                                        "seed", "supp_size"):
            v = int(v)
        elif isinstance(v, list) and k in ("A",):
            v = [int(x) for x in v]
        elif isinstance(v, list) and k == "sets":
            v = [[int(x) for x in s] for s in v]
        elif k == "c" and isinstance(v, str):
            v = float(v)
        out[k] = v
    return out


def recheck(report) -> BoundReport:
    """Recompute a report (object or serialized dict) from its params alone."""
    d = report.to_dict() if isinstance(report, BoundReport) else report
    claim = d["claim"]
    params = _normalize_params(d["params"])
    if claim in ("k1-identity", "k2-sandwich") or (claim.startswith("k") and claim.endswith("-bound")):
        return _small_k_core(params["D"], params["k"], params["p"])
    if claim not in _RECHECK:
        raise KeyError(f"no recheck route for claim {claim!r}")
    return _RECHECK[claim](params)
