from __future__ import annotations

import itertools
import math

import pytest

from stopset import (
    AbelianGroup,
    count_S_m,
    count_formula,
    dp_count,
    e_of_b,
    moebius,
    torsion_count,
)
from stopset.groupcount import (
    all_groups_of_order,
    closed_form_p_power,
    closed_form_two_power_terms,
    closed_form_two_primes,
    divisors,
    factorize,
    subset_sum_table,
)


def direct_count(group, k, b):
    """Oracle: literally enumerate k-subsets of the nonzero elements."""
    nz = group.nonzero_elements()
    total = 0
    for combo in itertools.combinations(nz, k):
        s = group.identity()
        for g in combo:
            s = s + g
        if s == b:
            total += 1
    return total


def test_moebius_table():
    expected = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 7: -1, 8: 0, 9: 0,
                10: 1, 12: 0, 30: -1, 36: 0}
    for n, mu in expected.items():
        assert moebius(n) == mu


def test_factorize_and_divisors():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_group_construction():
    G = AbelianGroup((2, 4))
    assert G.order == 8
    assert G.exponent == 4
    assert len(G.elements()) == 8
    assert len(G.nonzero_elements()) == 7
    with pytest.raises(ValueError):
        AbelianGroup((2, 3))  # 2 does not divide 3
    with pytest.raises(ValueError):
        AbelianGroup((0,))


def test_from_cyclic_factors_normalizes():
    assert AbelianGroup.from_cyclic_factors([4, 3]).invariant_factors == (12,)
    assert AbelianGroup.from_cyclic_factors([2, 4]).invariant_factors == (2, 4)
    assert AbelianGroup.from_cyclic_factors([2, 3, 4, 9]).invariant_factors == (6, 36)
    assert AbelianGroup.from_cyclic_factors([1, 5]).invariant_factors == (5,)


def test_element_arithmetic():
    G = AbelianGroup((2, 4))
    a = G.element((1, 3))
    b = G.element((1, 2))
    assert (a + b).coords == (0, 1)
    assert (a - b).coords == (0, 1)
    assert (-a).coords == (1, 1)
    assert (3 * a).coords == (1, 1)
    assert (0 * a) == G.identity()


def test_torsion_census_matches_definition():
    for factors in [(9,), (2, 4), (12,), (2, 2, 2), (3, 9)]:
        G = AbelianGroup(factors)
        for d in divisors(G.exponent):
            actual = sum(1 for g in G.elements() if d * g == G.identity())
            assert torsion_count(G, d) == actual


def test_e_of_b_matches_definition():
    for factors in [(9,), (2, 4), (2, 6)]:
        G = AbelianGroup(factors)
        for b in G.elements():
            # largest divisor d of the exponent with b in dG
            image_dividers = [
                d for d in divisors(G.exponent)
                if any(d * g == b for g in G.elements())
            ]
            assert e_of_b(G, b) == max(image_dividers)


def test_formula_reference_value():
    # Z/9, subsets of size 3 of the 8 nonzero elements summing to zero
    G = AbelianGroup((9,))
    assert count_formula(G, 3, G.identity()) == 6
    assert count_S_m(G, 3) == 6


def test_formula_sums_to_binomial():
    for factors in [(9,), (2, 4), (12,), (2, 2, 2), (16,)]:
        G = AbelianGroup(factors)
        N = G.order
        for k in range(N):
            total = sum(count_formula(G, k, b) for b in G.elements())
            assert total == math.comb(N - 1, k)


def test_formula_against_direct_enumeration():
    for factors in [(5,), (8,), (9,), (2, 4), (12,), (2, 2, 2), (2, 6)]:
        G = AbelianGroup(factors)
        N = G.order
        for k in range(N):
            for b in G.elements():
                assert count_formula(G, k, b) == direct_count(G, k, b)


def test_dp_matches_formula():
    for factors in [(9,), (2, 4), (15,), (3, 9), (2, 2, 4)]:
        G = AbelianGroup(factors)
        nz = G.nonzero_elements()
        for k in range(G.order):
            for b in G.elements():
                assert dp_count(nz, k, b) == count_formula(G, k, b)


def test_subset_sum_table_layers():
    G = AbelianGroup((9,))
    table = subset_sum_table(G.nonzero_elements())
    assert table[0][G.identity().coords] == 1
    assert sum(table[3].values()) == math.comb(8, 3)
    with pytest.raises(ValueError):
        subset_sum_table([G.element((1,)), G.element((1,))])  # duplicates


@pytest.mark.parametrize("p,t", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_closed_form_prime_power(p, t):
    G = AbelianGroup((p ** t,))
    for m in range(1, G.order):
        assert closed_form_p_power(p, t, m) == count_S_m(G, m)


@pytest.mark.parametrize("t1,t2", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)])
def test_closed_form_two_power_terms(t1, t2):
    for p in (2, 3):
        G = AbelianGroup((p ** t1, p ** t2))
        for m in range(1, G.order):
            assert closed_form_two_power_terms(p, t1, t2, m) == count_S_m(G, m)


@pytest.mark.parametrize(
    "p1,t1,p2,t2",
    [(2, 1, 3, 1), (2, 2, 3, 1), (2, 1, 3, 2), (3, 1, 5, 1), (2, 3, 3, 1)],
)
def test_closed_form_two_primes(p1, t1, p2, t2):
    G = AbelianGroup.from_cyclic_factors([p1 ** t1, p2 ** t2])
    for m in range(1, G.order):
        assert closed_form_two_primes(p1, t1, p2, t2, m) == count_S_m(G, m)


def test_count_range_checks():
    G = AbelianGroup((9,))
    assert count_formula(G, 0, G.identity()) == 1
    assert count_formula(G, 0, G.element((1,))) == 0
    assert count_formula(G, 8, G.identity()) == 1  # 1+2+...+8 = 36 = 0 mod 9
    with pytest.raises(ValueError):
        count_formula(G, 9, G.identity())  # only 8 nonzero elements
    with pytest.raises(ValueError):
        count_formula(G, -1, G.identity())
    with pytest.raises(ValueError):
        count_S_m(G, 0)
    with pytest.raises(ValueError):
        closed_form_p_power(6, 1, 1)
    with pytest.raises(ValueError):
        closed_form_two_primes(3, 1, 3, 1, 2)


def test_all_groups_of_order():
    def invs(n):
        return sorted(g.invariant_factors for g in all_groups_of_order(n))

    assert invs(1) == [()]
    assert invs(8) == [(2, 2, 2), (2, 4), (8,)]
    assert invs(12) == [(2, 6), (12,)]
    assert invs(16) == [(2, 2, 2, 2), (2, 2, 4), (2, 8), (4, 4), (16,)]
    assert invs(36) == [(2, 18), (3, 12), (6, 6), (36,)]
    # partition counts multiply across primes: 30 is squarefree
    assert len(all_groups_of_order(30)) == 1


def test_groups_of_order_are_distinct():
    for n in range(1, 33):
        groups = all_groups_of_order(n)
        assert len({g.invariant_factors for g in groups}) == len(groups)
        for g in groups:
            assert g.order == n
