"""Finite integer sets, their boundaries, and separation/sparsity predicates."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

MAX_DIAMETER = 1 << 40
_INT64 = 1 << 63

# Rational brackets around pi/8 = 0.39269908...
SPARSITY_Q_LO = Fraction(392699, 1000000)
SPARSITY_Q_HI = Fraction(392700, 1000000)


class EmptySetError(ValueError):
    pass


class SetLiteralError(ValueError):
    pass


@dataclass(frozen=True)
class IntSet:
    """A finite set of integers stored as a strictly increasing tuple."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(set(int(e) for e in elements)))
        if elems:
            if elems[0] <= -_INT64 or elems[-1] >= _INT64:
                raise ValueError("elements must fit in 64 bits")
            if elems[-1] - elems[0] > MAX_DIAMETER:
                raise ValueError(f"diameter exceeds 2^40: {elems[-1] - elems[0]}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_mask(cls, mask: int, offset: int = 0) -> "IntSet":
        """Set of bit positions of ``mask`` (bit i -> offset + i)."""
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(offset + i)
            mask >>= 1
            i += 1
        return cls(out)

    def to_mask(self) -> int:
        """Bitmask of the normalized set."""
        if not self.elements:
            return 0
        lo = self.elements[0]
        m = 0
        for a in self.elements:
            m |= 1 << (a - lo)
        return m

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, n: object) -> bool:
        from bisect import bisect_left

        if not isinstance(n, int):
            return False
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def __bool__(self) -> bool:
        return bool(self.elements)

    def __repr__(self) -> str:
        return f"IntSet({format_set(self)})"

    @property
    def min(self) -> int:
        _require_nonempty(self)
        return self.elements[0]

    @property
    def max(self) -> int:
        _require_nonempty(self)
        return self.elements[-1]

    @property
    def diameter(self) -> int:
        _require_nonempty(self)
        return self.elements[-1] - self.elements[0]

    def shift(self, t: int) -> "IntSet":
        return IntSet(a + t for a in self.elements)


def _require_nonempty(A: IntSet, msg: str = "operation requires a nonempty set") -> None:
    if not A.elements:
        raise EmptySetError(msg)


def boundary_left(A: IntSet) -> IntSet:
    """Elements n of A with n - 1 not in A."""
    _require_nonempty(A, "empty set has no boundary")
    e = A.elements
    return IntSet(x for i, x in enumerate(e) if i == 0 or e[i - 1] != x - 1)


def boundary_right(A: IntSet) -> IntSet:
    """Elements n of A with n + 1 not in A."""
    _require_nonempty(A, "empty set has no boundary")
    e = A.elements
    last = len(e) - 1
    return IntSet(x for i, x in enumerate(e) if i == last or e[i + 1] != x + 1)


def is_k_separated(A: IntSet, k: int) -> bool:
    """True iff consecutive elements have at least k non-members between them."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    e = A.elements
    return all(b - a >= k + 1 for a, b in zip(e, e[1:]))


def sparsity_sum(A: IntSet) -> Fraction:
    """Sum of 1/(n - m) over pairs m < n in A, exactly."""
    _require_nonempty(A)
    e = A.elements
    # Group by gap so each distinct difference costs one Fraction.
    counts: dict[int, int] = {}
    for i, m in enumerate(e):
        for n in e[i + 1:]:
            d = n - m
            counts[d] = counts.get(d, 0) + 1
    return sum((Fraction(c, d) for d, c in counts.items()), Fraction(0))


def sparsity_condition(A: IntSet) -> str:
    """Classify A against the bound pi/8 * |A| on its sparsity sum.

    Returns ``"pass"`` when the sum is at most (392699/10^6)|A| (certainly
    below pi/8 |A|), ``"fail"`` when it exceeds (392700/10^6)|A| (certainly
    above), and ``"ambiguous"`` in the band between.
    """
    s = sparsity_sum(A)
    if s <= SPARSITY_Q_LO * len(A):
        return "pass"
    if s > SPARSITY_Q_HI * len(A):
        return "fail"
    return "ambiguous"


def normalize(A: IntSet) -> IntSet:
    """Translate A so its minimum is 0."""
    _require_nonempty(A, "cannot normalize the empty set")
    return A.shift(-A.elements[0])


def reflect(A: IntSet) -> IntSet:
    """Negate A, then normalize."""
    _require_nonempty(A, "cannot reflect the empty set")
    return normalize(IntSet(-a for a in A.elements))


def gaps(A: IntSet) -> tuple[int, ...]:
    e = A.elements
    return tuple(b - a for a, b in zip(e, e[1:]))


_ENTRY = re.compile(r"^(-?\d+)(?:-(-?\d+))?$")


def parse_set(text: str) -> IntSet:
    """Parse a set literal such as ``"0,1,3,4"`` or ``"0-4,7,9-12"``.

    Ranges are inclusive. Whitespace is ignored. Overlapping entries and
    descending ranges are errors.
    """
    body = re.sub(r"\s+", "", text)
    if not body:
        raise SetLiteralError("empty set literal")
    seen: set[int] = set()
    out: list[int] = []
    for entry in body.split(","):
        m = _ENTRY.match(entry)
        if not m:
            raise SetLiteralError(f"bad set entry {entry!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        if hi < lo:
            raise SetLiteralError(f"descending range {entry!r}")
        if hi - lo > MAX_DIAMETER:
            raise SetLiteralError(f"range too long {entry!r}")
        for n in range(lo, hi + 1):
            if n in seen:
                raise SetLiteralError(f"overlapping entry {entry!r}")
            seen.add(n)
            out.append(n)
    return IntSet(out)


def format_set(A: IntSet) -> str:
    """Inverse of :func:`parse_set`, compressing runs of length >= 3 to ranges."""
    parts = []
    e = A.elements
    i = 0
    while i < len(e):
        j = i
        while j + 1 < len(e) and e[j + 1] == e[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{e[i]}-{e[j]}")
        else:
            parts.extend(str(x) for x in e[i:j + 1])
        i = j + 1
    return ",".join(parts)


def all_subsets(D: int) -> Iterator[IntSet]:
    """Every nonempty subset of [0, D)."""
    for mask in range(1, 1 << D):
        yield IntSet.from_mask(mask)
