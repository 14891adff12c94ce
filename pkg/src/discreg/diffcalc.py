"""Exact forward-difference calculus on finitely supported integer sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .intset import IntSet, _require_nonempty

DEFAULT_K_BUDGET = 4096


class BudgetExceeded(RuntimeError):
    """A configured work budget was exceeded; ``partial`` holds what was done."""

    def __init__(self, msg: str, partial=None):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class LatticeFn:
    """Finitely supported function Z -> Z.

    ``values[i]`` is the value at ``offset + i``. Storage is trimmed so the
    first and last stored values are nonzero; the zero function has no
    storage and offset 0.
    """

    offset: int
    values: tuple[int, ...]

    def __init__(self, offset: int, values: Iterable[int]):
        vals = list(values)
        lo, hi = 0, len(vals)
        while lo < hi and vals[lo] == 0:
            lo += 1
        while hi > lo and vals[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "offset", offset + lo if hi > lo else 0)
        object.__setattr__(self, "values", tuple(vals[lo:hi]))

    @classmethod
    def zero(cls) -> "LatticeFn":
        return cls(0, ())

    def __call__(self, n: int) -> int:
        i = n - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        return 0

    def __bool__(self) -> bool:
        return bool(self.values)

    def __add__(self, other: "LatticeFn") -> "LatticeFn":
        if not self:
            return other
        if not other:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.end, other.end)
        return LatticeFn(lo, (self(n) + other(n) for n in range(lo, hi)))

    def __neg__(self) -> "LatticeFn":
        return LatticeFn(self.offset, (-v for v in self.values))

    def __sub__(self, other: "LatticeFn") -> "LatticeFn":
        return self + (-other)

    @property
    def end(self) -> int:
        """One past the last stored index."""
        return self.offset + len(self.values)

    def shift(self, t: int) -> "LatticeFn":
        """The function n -> f(n - t)."""
        return LatticeFn(self.offset + t, self.values) if self else self

    def support(self) -> tuple[int, int] | None:
        """Closed interval [first nonzero, last nonzero], or None."""
        if not self:
            return None
        return self.offset, self.end - 1

    def to_dict(self) -> dict:
        return {"offset": self.offset, "values": [str(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict) -> "LatticeFn":
        return cls(int(d["offset"]), (int(v) for v in d["values"]))


def indicator(A: IntSet) -> LatticeFn:
    _require_nonempty(A)
    lo = A.min
    vals = [0] * (A.diameter + 1)
    for a in A:
        vals[a - lo] = 1
    return LatticeFn(lo, vals)


def forward_difference(f: LatticeFn) -> LatticeFn:
    """g(n) = f(n + 1) - f(n)."""
    if not f:
        return f
    v = f.values
    # g lives on [offset - 1, end - 1].
    out = [v[0]]
    out.extend(v[i + 1] - v[i] for i in range(len(v) - 1))
    out.append(-v[-1])
    return LatticeFn(f.offset - 1, out)


def iterated_difference(f: LatticeFn, k: int) -> LatticeFn:
    """k-fold application of :func:`forward_difference`."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    for _ in range(k):
        f = forward_difference(f)
    return f


@lru_cache(maxsize=64)
def binomial_row(k: int) -> tuple[int, ...]:
    """(C(k, 0), ..., C(k, k)) by the running-product recurrence."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    row = [1] * (k + 1)
    c = 1
    for j in range(k):
        c = c * (k - j) // (j + 1)
        row[j + 1] = c
    return tuple(row)


def kth_derivative(f: LatticeFn, k: int, budget: int = DEFAULT_K_BUDGET) -> LatticeFn:
    """f^(k)(n) = sum_j C(k, j) (-1)^j f(n + k - j), evaluated directly."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > budget:
        raise BudgetExceeded(f"derivative order {k} exceeds budget {budget}")
    if not f or k == 0:
        return f
    row = binomial_row(k)
    # Signed row w[i] is the coefficient of f(n + i): (-1)^(k - i) C(k, i).
    w = [c if (k - i) % 2 == 0 else -c for i, c in enumerate(row)]
    v = f.values
    L = len(v)
    out = [0] * (L + k)
    # g(offset - k + t) = sum_i w[i] v[t - k + i]
    nz = [(s, x) for s, x in enumerate(v) if x]
    for s, x in nz:
        base = s  # position t = s + k - i for coefficient w[i]
        if x == 1:
            for i in range(k + 1):
                out[base + k - i] += w[i]
        else:
            for i in range(k + 1):
                out[base + k - i] += w[i] * x
    return LatticeFn(f.offset - k, out)


def chi_derivative(A: IntSet, k: int, budget: int = DEFAULT_K_BUDGET) -> LatticeFn:
    return kth_derivative(indicator(A), k, budget)


def support_bounds(A: IntSet, k: int) -> tuple[int, int]:
    """Closed interval [min A - k, max A] containing the support of chi_A^(k)."""
    _require_nonempty(A)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return A.min - k, A.max


def descending_factorial(h, j: int) -> Fraction:
    """h (h - 1) ... (h - j + 1), and 1 when j = 0."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    h = Fraction(h)
    out = Fraction(1)
    for i in range(j):
        out *= h - i
    return out


def discrete_taylor_eval(f: LatticeFn, n: int, h: int, degree: int) -> Fraction:
    """sum_{j <= degree} f^(j)(n) h^(j, falling) / j!.

    Equals f(n + h) whenever degree >= h >= 0.
    """
    if h < 0 or degree < 0:
        raise ValueError("h and degree must be nonnegative")
    total = Fraction(0)
    g = f
    fact = 1
    for j in range(degree + 1):
        if j:
            g = forward_difference(g)
            fact *= j
        gj = g(n)
        if gj:
            total += Fraction(gj) * descending_factorial(h, j) / fact
    return total


def binomial_normal_approx(k: int, n) -> tuple[float, int]:
    """Gaussian approximation to C(k, n) as a (mantissa, exponent) pair.

    Value is ``mantissa * 2**exponent`` with mantissa in [1, 2), computed from
    2^k / sqrt(pi k / 2) * exp(-(n - k/2)^2 / (k/2)) in log space. Returns
    (0.0, 0) if the value underflows log space entirely.
    """
    if k < 1:
        raise ValueError("k must be positive")
    lg = normal_approx_log2(k, n)
    if lg == -math.inf:
        return 0.0, 0
    e = math.floor(lg)
    return 2.0 ** (lg - e), e


def normal_approx_log2(k: int, n) -> float:
    half = k / 2
    return k - 0.5 * math.log2(math.pi * half) - ((n - half) ** 2 / half) * math.log2(math.e)


def mantissa_exponent_to_float(pair: tuple[float, int]) -> float:
    m, e = pair
    return math.ldexp(m, e)


def log2_exact(x) -> float:
    """log2 of a positive int or Fraction, accurate for arbitrarily large values."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log2 of nonpositive value")
        return log2_exact(x.numerator) - log2_exact(x.denominator)
    x = int(x)
    if x <= 0:
        raise ValueError("log2 of nonpositive value")
    b = x.bit_length()
    if b <= 1000:
        return math.log2(x)
    shift = b - 64
    return shift + math.log2(x >> shift)


def l1_of_values(values: Sequence[int]) -> int:
    return sum(abs(v) for v in values)
