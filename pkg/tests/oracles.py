"""Independent reference computations used by the tests.

None of these call into discreg; they recompute from definitions.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def chi_array(elements, k):
    """chi_A on [min A - k, max A] as a Python-int object array."""
    lo, hi = min(elements), max(elements)
    a = np.zeros(hi - lo + 1 + k, dtype=object)
    for x in elements:
        a[x - lo + k] = 1
    return lo - k, a


def chi_diff(elements, k):
    """(offset, values) of the k-th forward difference, via repeated np.diff."""
    off, a = chi_array(elements, k)
    a = np.concatenate([a, np.zeros(k, dtype=object)])
    for _ in range(k):
        a = a[1:] - a[:-1]
    vals = [int(v) for v in a]
    # trim zeros
    i = 0
    while i < len(vals) and vals[i] == 0:
        i += 1
    j = len(vals)
    while j > i and vals[j - 1] == 0:
        j -= 1
    return off + i, vals[i:j]


def chi_diff_binomial(elements, k):
    """Direct sum_j C(k,j) (-1)^j chi(n + k - j) at each n."""
    s = set(elements)
    lo, hi = min(s) - k, max(s)
    out = {}
    for n in range(lo, hi + 1):
        v = sum(math.comb(k, j) * (-1) ** j for j in range(k + 1) if n + k - j in s)
        if v:
            out[n] = v
    return out


def power_sum(values, p):
    if p == math.inf:
        return max((abs(v) for v in values), default=0)
    return sum(abs(v) ** p for v in values)


def right_boundary(elements):
    s = set(elements)
    return sorted(x for x in s if x + 1 not in s)


def left_boundary(elements):
    s = set(elements)
    return sorted(x for x in s if x - 1 not in s)


def window_max_average(elements, n, R, centered):
    """Max average of chi_A over windows around n, plain double loop."""
    s = set(elements)
    best = Fraction(0)
    for r in range(R + 1):
        for t in ([r] if centered else range(R + 1)):
            c = sum(1 for x in range(n - r, n + t + 1) if x in s)
            best = max(best, Fraction(c, r + t + 1))
    return best


def subsets(D):
    for mask in range(1, 1 << D):
        yield [i for i in range(D) if mask >> i & 1]
