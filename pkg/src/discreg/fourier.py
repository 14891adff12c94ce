"""Exponential sums on the torus and the Fourier-side lower bounds.

Bound formulas return log2 values: the quantities of interest sit near 2^k
for k in the thousands and overflow floats otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .diffcalc import chi_derivative
from .intset import IntSet, _require_nonempty, boundary_left, normalize
from .norms import INF, check_exponent, dual_exponent, format_exponent, inverse_dual, lp_norm
from .report import BoundReport, FAILS, HOLDS

LOG2E = math.log2(math.e)
QUAD_TOL = 1e-9
GAUSS_ORDER = 16
MAX_PANELS = 1 << 15

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


class QuadratureError(RuntimeError):
    def __init__(self, msg: str, estimate: float, bound: float):
        super().__init__(f"{msg} (estimate {estimate!r}, error bound {bound!r})")
        self.estimate = estimate
        self.bound = bound


class ClaimViolation(AssertionError):
    """A proven inequality failed on concrete data: indicates a bug."""


def exp_sum_eval(A: IntSet, x: float) -> complex:
    """chi_A hat at x: sum over n in A of exp(-2 pi i n x)."""
    re_terms, im_terms = [], []
    for n in A:
        t = 2.0 * math.pi * math.fmod(n * x, 1.0)
        re_terms.append(math.cos(t))
        im_terms.append(-math.sin(t))
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def _coeffs(A: IntSet, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of the trigonometric polynomial (e^{2 pi i x} - 1)^k chi_A hat,
    with frequencies recentred around the middle of the support."""
    g = chi_derivative(A, k)
    c = np.array([float(v) for v in g.values])
    freqs = np.arange(g.offset, g.end, dtype=float)
    mid = round((g.offset + g.end - 1) / 2)
    return c, freqs - mid


def _modulus(A: IntSet, k: int):
    """Vectorized x -> |2 sin(pi x)|^k |chi_A hat(x)|, evaluated directly."""
    n = np.array(A.elements, dtype=float) - A.elements[0]

    def F(xs: np.ndarray) -> np.ndarray:
        ph = np.exp(-2j * np.pi * np.outer(xs, n))
        s = np.abs(ph.sum(axis=1))
        if k:
            s = s * np.abs(2.0 * np.sin(np.pi * xs)) ** k
        return s

    return F


def _panel(F, a: float, b: float, q: float) -> float:
    h = (b - a) / 2
    xs = a + h * (_GL_NODES + 1)
    return h * float(np.dot(_GL_WEIGHTS, F(xs) ** q))


def _integrate_power(F, a: float, b: float, q: float, npanels: int, tol: float,
                     max_panels: int) -> tuple[float, float]:
    """Adaptive Gauss-Legendre integral of F^q on [a, b] to relative ``tol``."""
    edges = np.linspace(a, b, npanels + 1)
    work = [(lo, hi, _panel(F, lo, hi, q)) for lo, hi in zip(edges[:-1], edges[1:])]
    rough = math.fsum(v for _, _, v in work)
    scale = abs(rough) if rough else 1.0
    done: list[float] = []
    err_total = 0.0
    used = len(work)
    while work:
        lo, hi, whole = work.pop()
        mid = (lo + hi) / 2
        left = _panel(F, lo, mid, q)
        right = _panel(F, mid, hi, q)
        err = abs(whole - left - right)
        if err <= tol * scale * (hi - lo) / (b - a) or hi - lo < 1e-14:
            done.append(left + right)
            err_total += err
            continue
        used += 2
        if used > max_panels:
            est = math.fsum(done) + math.fsum(v for _, _, v in work) + left + right
            raise QuadratureError("quadrature budget exhausted", est, err_total + err)
        work.append((lo, mid, left))
        work.append((mid, hi, right))
    return math.fsum(done), err_total


def _sup_modulus(A: IntSet, k: int, a: float, b: float, tol: float,
                 max_panels: int) -> float:
    """sup of |G| on [a, b] for G = sum_n c_n e^{-2 pi i n x}, by branch and bound
    on H = |G|^2 with H(x) <= H(m) + |H'(m)| d + M2 d^2 / 2 on [m - d, m + d]."""
    c, f = _coeffs(A, k)
    S0 = float(np.abs(c).sum())
    S1 = 2 * math.pi * float(np.abs(c * f).sum())
    S2 = 4 * math.pi ** 2 * float(np.abs(c * f * f).sum())
    M2 = 2 * (S1 * S1 + S0 * S2)

    def HdH(xs):
        ph = np.exp(-2j * np.pi * np.outer(xs, f))
        G = ph @ c
        dG = ph @ (-2j * np.pi * f * c)
        return np.abs(G) ** 2, 2 * np.real(np.conj(G) * dG)

    n0 = max(64, int(8 * (b - a) * (len(c) + 1)))
    width = (b - a) / n0
    mids = a + width * (np.arange(n0) + 0.5)
    best = 0.0
    evals = 0
    while True:
        H, dH = HdH(mids)
        evals += len(mids)
        best = max(best, float(H.max()), float(HdH(np.array([a, b]))[0].max()))
        d = width / 2
        upper = H + np.abs(dH) * d + M2 * d * d / 2
        keep = upper > best * (1 + 2 * tol)
        if not keep.any():
            return math.sqrt(best)
        if evals > max_panels * GAUSS_ORDER:
            bound = math.sqrt(float(upper[keep].max()))
            raise QuadratureError("sup refinement budget exhausted", math.sqrt(best), bound)
        m = mids[keep]
        width /= 2
        mids = np.concatenate([m - width / 2, m + width / 2])


def weighted_arc_norm(A: IntSet, k: int, q, arc: tuple[float, float] = (0.5, 0.5),
                      tol: float = QUAD_TOL, max_panels: int = MAX_PANELS) -> float:
    """L^q norm of |2 sin(pi x)|^k |chi_A hat(x)| over the arc (center, radius).

    The torus has total measure 1; (0.5, 0.5) is the whole torus.
    """
    _require_nonempty(A)
    q = check_exponent(q)
    center, radius = arc
    if not 0 < radius <= 0.5:
        raise ValueError("arc radius must lie in (0, 1/2]")
    a, b = center - radius, center + radius
    if q == INF:
        return _sup_modulus(A, k, a, b, tol, max_panels)
    F = _modulus(A, k)
    span = max(len(A.elements), A.diameter + 1) + k
    npanels = max(4, int(math.ceil(2 * (b - a) * span)))
    qf = float(q)
    val, _ = _integrate_power(F, a, b, qf, npanels, tol * qf / 2, max_panels)
    return val ** (1 / qf)


def hausdorff_young_check(A: IntSet, k: int, p, tol: float = 1e-8) -> BoundReport:
    """||chi_A^(k)||_p >= ||(2 sin pi x)^k chi_A hat||_{L^p'} for p in [1, 2]."""
    p = check_exponent(p)
    if p > 2:
        raise ValueError("Hausdorff-Young needs p in [1, 2]")
    lhs = lp_norm(chi_derivative(A, k), p)
    q = dual_exponent(p)
    rhs = weighted_arc_norm(A, k, q, tol=QUAD_TOL)
    holds = lhs.value >= rhs * (1 - tol)
    equality = None
    if p == 2:
        equality = abs(lhs.value - rhs) <= tol * lhs.value
        holds = holds and equality
    return BoundReport(
        claim="dv",
        params={"A": list(A.elements), "k": k, "p": format_exponent(p)},
        lhs=lhs.value, rhs=rhs,
        verdict=HOLDS if holds else FAILS,
        exact=False, tolerance=tol,
        details={"plancherel_equality": equality},
    )


def signed_power_sums(A: IntSet, upto: int) -> list[int]:
    """sum over n in A_* of (-1)^n n^j for j = 0..upto (0^0 = 1)."""
    e = normalize(A).elements
    return [sum((-1 if n % 2 else 1) * (n ** j if j or n else 1) for n in e)
            for j in range(upto + 1)]


def vanishing_order_power_sums(A: IntSet) -> int:
    _require_nonempty(A)
    e = normalize(A).elements
    j = 0
    while True:
        s = sum((-1 if n % 2 else 1) * (n ** j if j or n else 1) for n in e)
        if s:
            return j
        j += 1


def vanishing_order_division(A: IntSet) -> int:
    """Multiplicity of (z + 1) in P_A(z) = sum_{n in A_*} z^n, by synthetic division."""
    _require_nonempty(A)
    e = normalize(A).elements
    coeffs = [0] * (e[-1] + 1)
    for n in e:
        coeffs[n] = 1
    mult = 0
    while len(coeffs) > 1:
        # Divide by (z + 1) from the top coefficient down.
        q = [0] * (len(coeffs) - 1)
        carry = 0
        for i in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[i] - carry
            q[i - 1] = carry
        if coeffs[0] - carry != 0:
            break
        coeffs = q
        mult += 1
    return mult


def vanishing_order(A: IntSet) -> int:
    """Least j with sum_{n in A_*} (-1)^n n^j != 0, checked two ways."""
    a = vanishing_order_power_sums(A)
    b = vanishing_order_division(A)
    if a != b:
        raise ClaimViolation(f"vanishing order mismatch: power sums {a}, division {b}")
    if (1 << a) > len(A):
        raise ClaimViolation(f"vanishing order {a} exceeds log2|A| for |A| = {len(A)}")
    return a


def equal_interval_factor_bound(starts: Sequence[int], b: int) -> int:
    """Bound on the vanishing order of a union of blocks {a_j, ..., a_j + b}.

    Returns (1 if b is odd else 0) + floor(log2 n) and checks it against the
    assembled set.
    """
    if b < 0 or not starts:
        raise ValueError("need at least one block and b >= 0")
    for x, y in zip(starts, starts[1:]):
        if not x + b < y:
            raise ValueError(f"blocks starting at {x} and {y} overlap or touch")
    n = len(starts)
    bound = (b % 2) + (n.bit_length() - 1)
    A = IntSet(a + i for a in starts for i in range(b + 1))
    if vanishing_order(A) > bound:
        raise ClaimViolation(f"equal-interval bound {bound} violated by {A}")
    return bound


def optimize_radius(k: int, alpha: float) -> tuple[float, float]:
    """argmax and max of (1 - pi^2 r^2)^k r^alpha over r in (0, 1/pi)."""
    if k < 1 or alpha <= 0:
        raise ValueError("need k >= 1 and alpha > 0")
    r = math.sqrt(alpha / (2 * k + alpha)) / math.pi
    return r, 2.0 ** optimize_radius_log2(k, alpha)


def optimize_radius_log2(k: int, alpha: float) -> float:
    return (-alpha * math.log2(math.pi) + k * math.log2(2 * k / (2 * k + alpha))
            + (alpha / 2) * math.log2(alpha / (2 * k + alpha)))


@dataclass(frozen=True)
class BoundForms:
    """log2 of a lower bound for ||chi_A^(order)||_p in three forms.

    ``finite`` is the pre-asymptotic expression valid at the given k,
    ``asymptotic`` its k -> infinity equivalent, and ``stated`` the usual
    closed form, which carries an extra factor 1/2.
    """

    name: str
    k: int
    order: int
    p: str
    finite: float
    asymptotic: float
    stated: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "k": self.k, "order": self.order, "p": self.p,
                "finite_log2": self.finite, "asymptotic_log2": self.asymptotic,
                "stated_log2": self.stated, **self.extra}


def _hol_shift(p, support: float) -> float:
    """log2 factor (support)^(-1/p') converting an l1 lower bound to lp."""
    return -float(inverse_dual(p)) * math.log2(support)


def _nt_forms(k: int, terms: int) -> tuple[float, float]:
    """(finite, asymptotic) log2 values of the l1 bound for an exponential sum
    with ``terms`` unit-size coefficients."""
    alpha = terms - 1
    if alpha == 0:
        return float(k), float(k)
    fin = (k - alpha * math.log2(7 * math.e) + optimize_radius_log2(k, alpha)
           + math.log2(terms))
    asym = (k - (alpha / 2) * math.log2(2 * k)
            + alpha * math.log2(math.sqrt(alpha) / (7 * math.pi * math.e ** 1.5))
            + math.log2(terms))
    return fin, asym


def nt_bound(A: IntSet, k: int, p, variant: str = "full-set") -> BoundForms:
    """Nazarov-Turan lower bounds.

    full-set: bound on ||chi_A^(k)||_p from the |A|-term sum chi_A hat.
    boundary: bound on ||chi_A^(k+1)||_p from the 2|left boundary|-term sum
    of chi_A' hat.
    """
    _require_nonempty(A)
    p = check_exponent(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if variant == "full-set":
        terms, order = len(A), k
    elif variant == "boundary":
        terms, order = 2 * len(boundary_left(A)), k + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    fin, asym = _nt_forms(k, terms)
    shift = _hol_shift(p, (k + 1) * terms)
    stated = asym - 1 + shift if terms > 1 else k - 1 + shift
    return BoundForms("thm3" if variant == "full-set" else "thm3-boundary", k, order,
                      format_exponent(p), fin + shift, asym + shift, stated,
                      {"terms": terms})


def be_bound(A: IntSet, k: int, p, c: float = 1.0) -> BoundForms:
    """Borwein-Erdelyi lower bound with absolute constant ``c`` (>= 1)."""
    _require_nonempty(A)
    p = check_exponent(p)
    if c < 1:
        raise ValueError("c must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    r = (c / (4 * k * math.pi ** 2)) ** (1 / 3)
    if math.pi * r < 1:
        fin = k + k * math.log2(1 - (math.pi * r) ** 2) - (c / (2 * r)) * LOG2E
    else:
        fin = -INF
    asym = k - 3 * LOG2E * (c * math.pi / 4) ** (2 / 3) * k ** (1 / 3)
    shift = _hol_shift(p, (k + 1) * len(A))
    return BoundForms("thm4", k, k, format_exponent(p), fin + shift, asym + shift,
                      asym - 1 + shift, {"c": c, "r": r})


def bek_bound(A: IntSet, k: int, p) -> BoundForms:
    """Lower bound from the vanishing order a of chi_A hat at 1/2.

    For a = 0 the finite form is 2^k |chi_A hat(1/2)| (arc of radius 0);
    the generic optimized formula at a = 0, 2^(k-1), is kept in ``extra``.
    """
    _require_nonempty(A)
    p = check_exponent(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    a = vanishing_order(A)
    lf = math.log2(math.factorial(a))
    if a == 0:
        s0 = abs(signed_power_sums(A, 0)[0])
        fin = k + math.log2(s0)
        generic = k - 1.0
        asym = k - 1.0
    else:
        fin = (k + (a - 1) - lf + k * math.log2(2 * k / (2 * k + a))
               + (a / 2) * math.log2(a / (2 * k + a)))
        generic = fin
        asym = k - (a / 2) * math.log2(2 * k) + a - 1 + (a / 2) * math.log2(a / math.e) - lf
    shift = _hol_shift(p, (k + 1) * len(A))
    return BoundForms("thm5", k, k, format_exponent(p), fin + shift, asym + shift,
                      asym - 1 + shift, {"a": a, "generic_formula_log2": generic + shift})
