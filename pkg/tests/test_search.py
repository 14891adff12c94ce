from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from discreg.diffcalc import BudgetExceeded
from discreg.intset import IntSet, normalize, reflect
from discreg.norms import INF, ExponentError
from discreg.search import (ParitySystem, derivative_ratio, extremal_ratio_search,
                            is_canonical_mask, parity_pte_search)

import oracles as O
from strategies import intsets


def test_derivative_ratio_examples():
    r = derivative_ratio(IntSet([0]), 3, 1)
    assert (r.num, r.den) == (8, 2) and r.value == 4
    # ||chi''||_1 = 4 and ||chi'||_1 = 2 |right boundary| = 2
    r = derivative_ratio(IntSet([0, 1]), 2, 1)
    assert (r.num, r.den) == (4, 2) and r.value == 2
    with pytest.raises(ExponentError):
        derivative_ratio(IntSet([0]), 2, Fraction(3, 2))


@given(intsets(max_diameter=15), st.integers(1, 6), st.sampled_from([1, 2, INF]),
       st.integers(-9, 9))
def test_ratio_invariances(A, k, p, t):
    r = derivative_ratio(A, k, p)
    assert r.same_ratio(derivative_ratio(A.shift(t), k, p))
    assert r.same_ratio(derivative_ratio(reflect(A), k, p))


def test_canonical_masks_cover_classes():
    D = 9
    classes = {}
    for mask in range(1, 1 << D):
        A = normalize(IntSet.from_mask(mask))
        key = min(A.to_mask(), normalize(reflect(A)).to_mask())
        classes.setdefault(key, []).append(mask)
    canon = [m for m in range(1, 1 << D) if is_canonical_mask(m)]
    assert sorted(canon) == sorted(classes)


def _brute_min(k, p, D):
    best = None
    for e in O.subsets(D):
        d1 = O.power_sum(O.chi_diff(e, 1)[1], p)
        dk = O.power_sum(O.chi_diff(e, k)[1], p)
        r = Fraction(dk, 1 if p == INF else d1)
        best = r if best is None or r < best else best
    return best


@pytest.mark.parametrize("k, p, D", [(1, 1, 6), (2, 1, 6), (3, 1, 8), (3, 2, 8), (4, INF, 8)])
def test_extremal_matches_brute_force(k, p, D):
    res = extremal_ratio_search(k, p, D)
    assert Fraction(res.best_ratio.num, res.best_ratio.den) == _brute_min(k, p, D)
    assert res.floor_holds and res.recheck()
    assert res.best_set in res.ties and res.best_set.min == 0


def test_k1_ratio_is_one():
    res = extremal_ratio_search(1, 2, 7)
    assert res.best_ratio.value == 1
    assert res.count == sum(1 for m in range(1, 1 << 7) if is_canonical_mask(m))


def test_search_deterministic_across_workers():
    a = extremal_ratio_search(3, 1, 11, workers=1)
    b = extremal_ratio_search(3, 1, 11, workers=3)
    assert a.to_dict() == b.to_dict()


def test_search_budget_and_args():
    with pytest.raises(BudgetExceeded):
        extremal_ratio_search(2, 1, 30)
    with pytest.raises(ValueError):
        extremal_ratio_search(0, 1, 5)


def test_pte_examples():
    systems = parity_pte_search(1, 4, 6)
    assert any(s.evens == IntSet([0, 4]) and s.odds == IntSet([1, 3]) for s in systems)
    assert all(s.m == 2 for s in systems)
    # an even never equals an odd
    assert parity_pte_search(1, 1, 20) == []


def test_pte_order_two():
    systems = parity_pte_search(2, 6, 32)
    assert systems and all(s.m >= 4 and s.verify() for s in systems)
    assert len({s.m for s in systems}) == 1


def test_parity_system_verify():
    good = ParitySystem(IntSet([0, 4]), IntSet([1, 3]), 1)
    assert good.verify() and good.as_set() == IntSet([0, 1, 3, 4])
    assert not ParitySystem(IntSet([0, 4]), IntSet([1, 3]), 2).verify()
    assert not ParitySystem(IntSet([0, 3]), IntSet([1, 2]), 1).verify()


def test_pte_budget():
    with pytest.raises(BudgetExceeded):
        parity_pte_search(1, 2, 100)
