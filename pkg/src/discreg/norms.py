"""lp norms of lattice functions, exact wherever attainable."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .diffcalc import LatticeFn, log2_exact

INF = math.inf
Exponent = Union[Fraction, float]  # Fraction for finite p, math.inf for infinity

FLOAT_REL_ERROR = 2.0 ** -40
FLOAT_TOL = 2.0 ** -30

EXACT_INTEGER = "exact-integer"
EXACT_POWER_SUM = "exact-power-sum"
FLOAT = "float"


class ExponentError(ValueError):
    pass


def as_exponent(p) -> Exponent:
    """Normalize ``p`` (int, Fraction, float, or strings like "4/3", "inf")."""
    if isinstance(p, str):
        s = p.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            p = Fraction(s)
        except ValueError:
            raise ExponentError(f"not an exponent: {p!r}") from None
    elif isinstance(p, float):
        if math.isinf(p) and p > 0:
            return INF
        if math.isnan(p):
            raise ExponentError("p is NaN")
        p = Fraction(str(p))
    else:
        p = Fraction(p)
    return p


def check_exponent(p) -> Exponent:
    p = as_exponent(p)
    if p != INF and p < 1:
        raise ExponentError(f"not a norm exponent: {p}")
    return p


def is_integer_exponent(p: Exponent) -> bool:
    return p != INF and p.denominator == 1


def format_exponent(p: Exponent) -> str:
    return "inf" if p == INF else str(p)


def dual_exponent(p) -> Exponent:
    """p' with 1/p + 1/p' = 1; 1 and infinity are dual."""
    p = check_exponent(p)
    if p == INF:
        return Fraction(1)
    if p == 1:
        return INF
    return p / (p - 1)


def inverse_dual(p: Exponent) -> Fraction:
    """1/p' = 1 - 1/p, exactly (0 at p = 1, 1 at p = infinity)."""
    if p == INF:
        return Fraction(1)
    return 1 - 1 / Fraction(p)


@dataclass(frozen=True)
class NormValue:
    """An lp norm together with how it was computed.

    ``exact`` holds the norm for p = 1 and p = infinity, or the p-th power
    sum for integer p >= 2. It is None for the float kind. ``value`` is
    always a float rendering of the norm (may overflow to inf); ``log2`` is
    log2 of the norm, finite even where ``value`` overflows.
    """

    kind: str
    p: Exponent
    exact: Union[int, Fraction, None]
    value: float
    log2: float
    rel_error: float = 0.0

    def power(self):
        """Exact p-th power of the norm (the norm itself for p = infinity)."""
        if self.exact is None:
            raise ValueError("float norm has no exact power sum")
        return self.exact

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": format_exponent(self.p),
            "exact": None if self.exact is None else str(self.exact),
            "value": self.value,
            "log2": self.log2,
            "rel_error": self.rel_error,
        }


def _abs_values(values: Sequence) -> list:
    return [abs(v) for v in values if v]


def _float_ratio(a, b) -> float:
    """a / b as a float for ints or Fractions of any size."""
    return float(Fraction(a) / Fraction(b))


def _safe_float(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return INF


def lp_norm_of_values(values: Sequence, p) -> NormValue:
    """lp norm of a finite list of integers or Fractions."""
    p = check_exponent(p)
    vals = _abs_values(values)
    if not vals:
        return NormValue(EXACT_INTEGER if p in (1, INF) else EXACT_POWER_SUM, p,
                         0, 0.0, -INF)
    exact_kind = EXACT_INTEGER if all(isinstance(v, int) for v in vals) else "exact-rational"
    if p == INF:
        m = max(vals)
        return NormValue(exact_kind, p, m, _safe_float(m), log2_exact(m))
    if p == 1:
        s = sum(vals)
        return NormValue(exact_kind, p, s, _safe_float(s), log2_exact(s))
    if p.denominator == 1:
        ip = int(p)
        s = sum(v ** ip for v in vals)
        lg = log2_exact(s) / ip
        return NormValue(EXACT_POWER_SUM, p, s, _root_float(lg), lg, FLOAT_REL_ERROR)
    # Non-integer p: scale by the max so every term is in (0, 1].
    m = max(vals)
    pf = float(p)
    terms = sorted((_float_ratio(v, m) ** pf for v in vals), reverse=True)
    total = math.fsum(terms)
    lg = log2_exact(m) + math.log2(total) / pf
    return NormValue(FLOAT, p, None, _root_float(lg), lg, FLOAT_REL_ERROR)


def _root_float(lg: float) -> float:
    return 2.0 ** lg if lg < 1023 else INF


def lp_norm(f: LatticeFn, p) -> NormValue:
    return lp_norm_of_values(f.values, p)


def power_sum(values: Sequence, p: Exponent):
    """Exact p-th power sum for integer p, or the max for p = infinity."""
    vals = _abs_values(values)
    if p == INF:
        return max(vals, default=0)
    if p.denominator != 1:
        raise ExponentError("exact power sums need integer p")
    ip = int(p)
    return sum(v ** ip for v in vals)


def holder_chain_check(f: LatticeFn, p, supp_size: int):
    """Check ||f||_p <= ||f||_1 <= ||f||_p * supp_size^(1/p').

    Exact for p in {1, infinity} and integer p; float with tolerance 2^-30
    otherwise.
    """
    from .report import BoundReport, HOLDS, FAILS

    p = check_exponent(p)
    if supp_size < 1:
        raise ValueError("supp_size must be positive")
    n1 = lp_norm(f, 1)
    np_ = lp_norm(f, p)
    s1 = n1.exact
    tol = None
    if p == INF or is_integer_exponent(p):
        exact = True
        if p == INF:
            m = np_.exact
            left = m <= s1
            right = s1 <= m * supp_size
        else:
            ip = int(p)
            P = np_.exact
            left = P <= s1 ** ip
            right = s1 ** ip <= P * supp_size ** (ip - 1)
        rhs_upper_log2 = np_.log2 + float(inverse_dual(p)) * math.log2(supp_size)
    else:
        exact = False
        tol = FLOAT_TOL
        lg1 = n1.log2
        lgp = np_.log2
        rhs_upper_log2 = lgp + float(inverse_dual(p)) * math.log2(supp_size)
        slack = math.log2(1 + tol)
        left = lgp <= lg1 + slack
        right = lg1 <= rhs_upper_log2 + slack
    return BoundReport(
        claim="hol",
        params={"f": f.to_dict(), "p": format_exponent(p), "supp_size": supp_size},
        lhs={"lp": np_.to_dict()},
        rhs={"l1": n1.to_dict(), "upper_log2": rhs_upper_log2},
        verdict=HOLDS if (left and right) else FAILS,
        exact=exact,
        tolerance=tol,
        details={"lower_holds": left, "upper_holds": right},
    )
