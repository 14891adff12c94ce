"""Discrete Hardy-Littlewood maximal functions of characteristic functions.

Both maximal functions of chi_A are computed exactly on a finite window and
continued by an analytic tail of the form c / (d |n - e| + g) on each side.

Noncentered candidate reduction: for a window [l, u] containing n, moving l
right to the nearest element of A (or to n) removes only zeros, so the
average cannot drop. The same holds for u. Hence l, u range over A and {n}.

Centered candidate reduction: the average over [n - r, n + r] only rises at
radii where a new element of A enters, so r ranges over 0 and |n - a|.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .diffcalc import binomial_row, log2_exact
from .intset import IntSet, _require_nonempty
from .norms import (FLOAT, FLOAT_TOL, INF, NormValue,
                    check_exponent, is_integer_exponent)

EXACT_RATIONAL = "exact-rational"


class NormDiverges(ValueError):
    pass


@dataclass(frozen=True)
class Tail:
    """value(n) = c / (d |n - e| + g), valid for n >= start (right side) or
    n <= start (left side)."""

    side: str
    c: Fraction
    d: int
    e: int
    g: int
    start: int

    def __call__(self, n: int) -> Fraction:
        return Fraction(self.c) / (self.d * abs(n - self.e) + self.g)

    def valid(self, n: int) -> bool:
        return n >= self.start if self.side == "right" else n <= self.start

    def outward(self, n: int) -> int:
        """Distance coordinate x with value = (c/d) / (x + g/d)."""
        return n - self.e if self.side == "right" else self.e - n

    def to_dict(self) -> dict:
        return {"side": self.side, "c": str(self.c), "d": self.d, "e": self.e,
                "g": self.g, "start": self.start}


@dataclass(frozen=True)
class RatLatticeFn:
    """Exact rational window plus analytic tails on both sides."""

    offset: int
    values: tuple[Fraction, ...]
    left_tail: Tail
    right_tail: Tail
    centered: bool = False

    @property
    def end(self) -> int:
        return self.offset + len(self.values)

    def __call__(self, n: int) -> Fraction:
        i = n - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        tail = self.right_tail if i >= 0 else self.left_tail
        if not tail.valid(n):
            raise ValueError(f"index {n} outside window and tail range")
        return tail(n)

    def stitched(self) -> bool:
        """Window values agree with the tail formulas at the crossover indices."""
        ok = True
        for t in (self.left_tail, self.right_tail):
            i = t.start - self.offset
            if 0 <= i < len(self.values):
                ok &= self.values[i] == t(t.start)
        return ok


def _count(elems: tuple[int, ...], lo: int, hi: int) -> int:
    """|A intersect [lo, hi]|."""
    return bisect_right(elems, hi) - bisect_left(elems, lo)


def noncentered_value(A: IntSet, n: int) -> Fraction:
    e = A.elements
    ls = [a for a in e if a <= n]
    us = [a for a in e if a >= n]
    ls.append(n)
    us.append(n)
    best_c, best_w = 0, 1
    for l in ls:
        for u in us:
            c = _count(e, l, u)
            w = u - l + 1
            if c * best_w > best_c * w:
                best_c, best_w = c, w
    return Fraction(best_c, best_w)


def centered_value(A: IntSet, n: int) -> Fraction:
    e = A.elements
    best_c, best_w = (1, 1) if n in A else (0, 1)
    for a in e:
        r = abs(n - a)
        c = _count(e, n - r, n + r)
        w = 2 * r + 1
        if c * best_w > best_c * w:
            best_c, best_w = c, w
    return Fraction(best_c, best_w)


def _right_crossover(branches, C: int, e0: int, d: int, g: int, floor: int) -> int:
    """Least N >= floor from which C/(d(n - e0) + g) dominates every branch.

    Each branch (c_b, e_b) means c_b / (d (n - e_b) + g).
    """
    N = floor
    for c_b, e_b in branches:
        if c_b >= C:
            continue
        # C (d(n - e_b) + g) >= c_b (d(n - e0) + g)
        num = C * (d * e_b - g) - c_b * (d * e0 - g)
        den = d * (C - c_b)
        N = max(N, -((-num) // den))
    return N


def _tails(A: IntSet, centered: bool) -> tuple[Tail, Tail]:
    e = A.elements
    size = len(e)
    m, M = e[0], e[-1]
    d = 2 if centered else 1
    # Right of max A the window is forced to end at n; the branch with left
    # end a in A has count #{b >= a}. Mirror image on the left.
    right_br = [(size - i, a) for i, a in enumerate(e)]
    left_br = [(i + 1, -a) for i, a in enumerate(e)]
    nr = _right_crossover(right_br, size, m, d, 1, M + 1)
    nl = -_right_crossover(left_br, size, -M, d, 1, -(m - 1))
    right = Tail("right", Fraction(size), d, m, 1, nr)
    left = Tail("left", Fraction(size), d, M, 1, nl)
    return left, right


def _maximal(A: IntSet, W: int, centered: bool) -> RatLatticeFn:
    _require_nonempty(A, "maximal function of the empty set")
    if W < 1:
        raise ValueError("window padding W must be >= 1")
    left, right = _tails(A, centered)
    lo = min(A.min - W, left.start)
    hi = max(A.max + W, right.start)
    value = centered_value if centered else noncentered_value
    vals = tuple(value(A, n) for n in range(lo, hi + 1))
    mf = RatLatticeFn(lo, vals, left, right, centered)
    if not mf.stitched():
        raise AssertionError("tail formula does not match window at crossover")
    return mf


def noncentered_maximal(A: IntSet, W: int = 1) -> RatLatticeFn:
    """sup over windows [n - r, n + s] of the average of chi_A, for every n."""
    return _maximal(A, W, centered=False)


def centered_maximal(A: IntSet, W: int = 1) -> RatLatticeFn:
    """sup over r of the (2r + 1)-point centered average of chi_A."""
    return _maximal(A, W, centered=True)


def default_window(A: IntSet, k: int) -> int:
    return 4 * (A.diameter + k + 1)


def _tail_diff(t: Tail, x: int, j: int) -> Fraction:
    """|Delta^j psi(x)| for psi(x) = (c/d) / (x + g/d), x + g/d > 0.

    Uses Delta^j [1/(x + s)] = (-1)^j j! / prod_{i=0}^{j} (x + s + i).
    """
    s = Fraction(t.g, t.d)
    prod = Fraction(1)
    for i in range(j + 1):
        prod *= x + s + i
    return Fraction(t.c, t.d) * math.factorial(j) / prod


def _tail_float_sum(t: Tail, x0: int, k: int, p: float, target: float) -> tuple[float, float]:
    """sum_{x >= x0} |Delta^k psi(x)|^p in floats, stopping once the integral
    remainder bound drops below ``target``. Returns (sum, remainder bound)."""
    s = t.g / t.d
    coef = (float(t.c) / t.d) * math.factorial(k)
    q = p * (k + 1)
    terms = []
    x = x0
    while True:
        prod = 1.0
        for i in range(k + 1):
            prod *= x + s + i
        term = (coef / prod) ** p
        terms.append(term)
        # Terms decrease; sum_{y > x} term(y) <= integral_x^inf coef^p (y+s)^-q dy.
        rem = coef ** p * (x + s) ** (1 - q) / (q - 1)
        if rem <= target or term == 0.0:
            return math.fsum(terms), rem
        x += 1


def maximal_derivative_norm(mf: RatLatticeFn, k: int, p) -> NormValue:
    """||(mf)^(k)||_p over all of Z.

    The window part is summed exactly. On each tail Delta^k has constant
    sign, so at p = 1 the tail telescopes to |Delta^(k-1)| at its first
    point and at p = infinity the tail maximum is its first value. Other p
    use float partial sums to relative tolerance 2^-30.
    """
    p = check_exponent(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        if p != INF:
            raise NormDiverges("norm diverges: maximal function is nonzero everywhere")
        m = max(mf.values)
        return NormValue(EXACT_RATIONAL, p, m, float(m), log2_exact(m))
    L, R = mf.left_tail, mf.right_tail
    # Points n with n..n+k all in the right tail, and all in the left tail.
    n_right = max(R.start, mf.end)
    n_left = min(L.start, mf.offset - 1) - k
    row = binomial_row(k)
    w = [c if (k - i) % 2 == 0 else -c for i, c in enumerate(row)]
    phi = [mf(n) for n in range(n_left + 1, n_right + k)]
    explicit = []
    for t in range(n_right - n_left - 1):
        explicit.append(abs(sum(w[i] * phi[t + i] for i in range(k + 1))))
    xr = R.outward(n_right)
    xl = L.outward(n_left + k)  # left tail value at n is psi(e - n); see _tail_diff
    if p == 1:
        total = sum(explicit, Fraction(0)) + _tail_diff(R, xr, k - 1) + _tail_diff(L, xl, k - 1)
        return NormValue(EXACT_RATIONAL, p, total, float(total), log2_exact(total))
    if p == INF:
        m = max(explicit + [_tail_diff(R, xr, k), _tail_diff(L, xl, k)])
        return NormValue(EXACT_RATIONAL, p, m, float(m), log2_exact(m))
    pf = float(p)
    if is_integer_exponent(p):
        ip = int(p)
        head = float(sum((v ** ip for v in explicit), Fraction(0)))
    else:
        head = math.fsum(float(v) ** pf for v in explicit)
    scale = max(head, _tail_diff_float(R, xr, k) ** pf)
    target = FLOAT_TOL * scale / 4
    sr, _ = _tail_float_sum(R, xr, k, pf, target)
    sl, _ = _tail_float_sum(L, xl, k, pf, target)
    total = math.fsum([head, sr, sl])
    lg = math.log2(total) / pf
    return NormValue(FLOAT, p, None, 2.0 ** lg, lg, FLOAT_TOL)


def _tail_diff_float(t: Tail, x: int, j: int) -> float:
    return float(_tail_diff(t, x, j))


def brute_force_maximal_oracle(A: IntSet, n: int, R: int, centered: bool = False) -> Fraction:
    """Max average of chi_A over every window [n - r, n + s] with 0 <= r, s <= R
    (r = s when centered). Test oracle; no candidate reduction."""
    _require_nonempty(A)
    need = A.diameter + abs(n - A.min) + abs(n - A.max)
    if R < need:
        raise ValueError(f"radius cap {R} below required {need}")
    xs = np.arange(n - R, n + R + 1)
    ind = np.isin(xs, np.array(A.elements)).astype(np.int64)
    pre = np.concatenate(([0], np.cumsum(ind)))
    r = np.arange(R + 1)
    if centered:
        counts = pre[R + r + 1] - pre[R - r]
        widths = 2 * r + 1
    else:
        rr, ss = np.meshgrid(r, r, indexing="ij")
        counts = (pre[R + ss + 1] - pre[R - rr]).ravel()
        widths = (rr + ss + 1).ravel()
    ratios = counts / widths
    top = ratios.max()
    cand = np.nonzero(ratios >= top * (1 - 1e-9))[0]
    return max(Fraction(int(counts[i]), int(widths[i])) for i in cand)
