"""Exhaustive extremal-ratio search and the parity-constrained power-sum search."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .diffcalc import BudgetExceeded, chi_derivative
from .fourier import ClaimViolation
from .intset import IntSet, _require_nonempty
from .norms import INF, ExponentError, check_exponent, format_exponent, power_sum

DEFAULT_D_BUDGET = 24
MAX_TIES = 32
N_CHUNKS = 64


@dataclass(frozen=True)
class RatioHandle:
    """(||chi_A^(k)||_p^p, ||chi_A'||_p^p) for integer p; (max, 1) at p = inf."""

    num: int
    den: int
    p: object

    def __lt__(self, other: "RatioHandle") -> bool:
        return self.num * other.den < other.num * self.den

    def same_ratio(self, other: "RatioHandle") -> bool:
        return self.num * other.den == other.num * self.den

    @property
    def value(self) -> float:
        r = self.num / self.den
        return r if self.p == INF else r ** (1 / float(self.p))

    def meets_floor(self, k: int) -> bool:
        """ratio >= (2k + 1)^(-1/p)."""
        if self.p == INF:
            return self.num >= self.den
        return (2 * k + 1) * self.num >= self.den


def _check_search_p(p):
    p = check_exponent(p)
    if p != INF and p.denominator != 1:
        raise ExponentError("exact ratio comparison needs integer p or infinity")
    return p


def derivative_ratio(A: IntSet, k: int, p) -> RatioHandle:
    _require_nonempty(A)
    p = _check_search_p(p)
    num = power_sum(chi_derivative(A, k).values, p)
    den = power_sum(chi_derivative(A, 1).values, p)
    return RatioHandle(num, den, p)


def _reverse(mask: int) -> int:
    width = mask.bit_length()
    return int(format(mask, f"0{width}b")[::-1], 2)


def is_canonical_mask(mask: int) -> bool:
    """Bit 0 set (min A = 0) and mask <= its bit reversal."""
    return bool(mask & 1) and mask <= _reverse(mask)


@dataclass
class SearchResult:
    best_set: IntSet
    best_ratio: RatioHandle
    ties: list
    k: int
    p: object
    D: int
    count: int
    stats: dict = field(default_factory=dict)

    @property
    def floor_holds(self) -> bool:
        return self.best_ratio.meets_floor(self.k)

    def recheck(self) -> bool:
        r = derivative_ratio(self.best_set, self.k, self.p)
        return r.num == self.best_ratio.num and r.den == self.best_ratio.den

    def to_dict(self) -> dict:
        return {
            "best_set": list(self.best_set.elements),
            "best_ratio": {"num": str(self.best_ratio.num), "den": str(self.best_ratio.den),
                           "value": self.best_ratio.value},
            "ties": [list(t.elements) for t in self.ties],
            "k": self.k, "p": format_exponent(self.p), "D": self.D,
            "count": self.count, "floor_holds": self.floor_holds, "stats": self.stats,
        }


def _scan_chunk(args):
    """Best canonical masks in [lo, hi). Returns (count, symmetric, best, tie masks)."""
    lo, hi, k, p = args
    count = sym = 0
    best: Optional[RatioHandle] = None
    ties: list[int] = []
    start = lo | 1
    for mask in range(start, hi, 2):
        rev = _reverse(mask)
        if mask > rev:
            continue
        count += 1
        sym += mask == rev
        r = derivative_ratio(IntSet.from_mask(mask), k, p)
        if best is None or r < best:
            best, ties = r, [mask]
        elif r.same_ratio(best) and len(ties) < MAX_TIES:
            ties.append(mask)
    return count, sym, best, ties


def _merge(results):
    count = sym = 0
    best: Optional[RatioHandle] = None
    ties: list[int] = []
    for c, s, b, t in results:
        count += c
        sym += s
        if b is None:
            continue
        if best is None or b < best:
            best, ties = b, list(t)
        elif b.same_ratio(best):
            ties.extend(t)
    ties = sorted(ties)[:MAX_TIES]
    return count, sym, best, ties


def extremal_ratio_search(k: int, p, D: int, workers: int = 1,
                          d_budget: int = DEFAULT_D_BUDGET) -> SearchResult:
    """Minimize ||chi_A^(k)||_p / ||chi_A'||_p over nonempty A in [0, D).

    Only canonical representatives are scanned (min A = 0, bitmask no larger
    than its reversal); the ratio is invariant under translation and
    reflection. Ties are broken toward the smaller mask.
    """
    p = _check_search_p(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if D < 1:
        raise ValueError("D must be >= 1")
    if D > d_budget:
        raise BudgetExceeded(f"diameter bound {D} exceeds budget {d_budget}")
    top = 1 << D
    step = max(2, -(-top // N_CHUNKS))
    step += step % 2
    chunks = [(lo, min(lo + step, top), k, p) for lo in range(0, top, step)]
    if workers <= 1:
        results = [_scan_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan_chunk, chunks))
    count, sym, best, ties = _merge(results)
    tie_sets = [IntSet.from_mask(m) for m in ties]
    return SearchResult(
        best_set=tie_sets[0], best_ratio=best, ties=tie_sets, k=k, p=p, D=D, count=count,
        stats={"canonical": count, "symmetric": sym, "nonempty_subsets": top - 1,
               "chunks": len(chunks)},
    )


@dataclass(frozen=True)
class ParitySystem:
    """Equal-size evens and odds with equal d-th power sums for 1 <= d <= order."""

    evens: IntSet
    odds: IntSet
    order: int

    @property
    def m(self) -> int:
        return len(self.evens)

    def verify(self) -> bool:
        if len(self.evens) != len(self.odds):
            return False
        if any(x % 2 for x in self.evens) or not all(x % 2 for x in self.odds):
            return False
        for d in range(1, self.order + 1):
            if sum(pow(x, d) for x in self.evens) != sum(pow(x, d) for x in self.odds):
                return False
        return True

    def as_set(self) -> IntSet:
        return IntSet(self.evens.elements + self.odds.elements)

    def to_dict(self) -> dict:
        return {"evens": list(self.evens.elements), "odds": list(self.odds.elements),
                "order": self.order, "m": self.m}


def _canonical_system(E: tuple[int, ...], O: tuple[int, ...]):
    """Representative under x -> x + 2t and x -> -x."""

    def norm(E, O):
        lo = min(E[0], O[0])
        t = lo - (lo % 2)
        return tuple(x - t for x in E), tuple(x - t for x in O)

    a = norm(E, O)
    b = norm(tuple(sorted(-x for x in E)), tuple(sorted(-x for x in O)))
    return min(a, b)


def parity_pte_search(D: int, m_max: int, B: int, b_budget: int = 64) -> list[ParitySystem]:
    """Minimal-size parity systems matched through order D with coordinates in [0, B).

    Candidate pairs are first bucketed by their first moment; higher moments
    are compared only within a bucket. Returns every system (up to
    translation by 2 and reflection) at the least size m that has one.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    if B > b_budget:
        raise BudgetExceeded(f"coordinate bound {B} exceeds budget {b_budget}")
    evens = list(range(0, B, 2))
    odds = list(range(1, B, 2))
    for m in range(1, m_max + 1):
        buckets: dict[int, list] = {}
        for E in combinations(evens, m):
            buckets.setdefault(sum(E), []).append(E)
        found = set()
        for O in combinations(odds, m):
            cands = buckets.get(sum(O))
            if not cands:
                continue
            om = [sum(x ** d for x in O) for d in range(2, D + 1)]
            for E in cands:
                if all(sum(x ** d for x in E) == om[d - 2] for d in range(2, D + 1)):
                    found.add(_canonical_system(E, O))
        if found:
            out = [ParitySystem(IntSet(E), IntSet(O), D) for E, O in sorted(found)]
            for s in out:
                if not s.verify():
                    raise ClaimViolation(f"parity system failed re-verification: {s}")
                if s.m < (1 << D):
                    raise ClaimViolation(f"parity system of size {s.m} below 2^{D}")
            return out
    return []
