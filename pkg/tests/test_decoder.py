from __future__ import annotations

import itertools
import random

import pytest

from stopset import (
    ErasureInstance,
    IntegrityError,
    enumerate_S_m1,
    generator_matrix,
    hstar_rows,
    make_instance,
    null_space,
    peel,
    residual_is_stopping,
)

STOPPING_3 = [
    (1, 2, 6), (1, 3, 5), (2, 3, 4), (3, 7, 8), (4, 6, 8), (5, 6, 7),
]


@pytest.fixture(scope="module")
def star_rows(ref_spec):
    return list(hstar_rows(ref_spec))


@pytest.fixture(scope="module")
def codeword(ref_spec):
    return null_space(generator_matrix(ref_spec)).entries[0]


def test_full_recovery(ref_spec, star_rows, codeword):
    inst = make_instance(ref_spec, codeword, {1, 2, 3})
    recovered, residual = peel(star_rows, inst)
    assert residual == frozenset()
    assert tuple(recovered) == codeword


def test_stall_on_stopping_set(ref_spec, star_rows, codeword):
    inst = make_instance(ref_spec, codeword, {1, 2, 6})
    recovered, residual = peel(star_rows, inst)
    assert residual == {1, 2, 6}
    for j, e in enumerate(recovered, start=1):
        if j in residual:
            assert e is None
        else:
            assert e == codeword[j - 1]
    assert residual_is_stopping(star_rows, residual)


def test_peel_to_maximal_stopping_subset(ref_spec, star_rows, codeword):
    # of the four erased positions only {2, 3, 4} is a stopping set
    inst = make_instance(ref_spec, codeword, {2, 3, 4, 5})
    recovered, residual = peel(star_rows, inst)
    assert residual == {2, 3, 4}
    assert recovered[4] == codeword[4]


def test_recovery_iff_no_stopping_subset(ref_spec, star_rows, codeword):
    stopping = [set(s) for s in STOPPING_3 + enumerate_S_m1(ref_spec)]
    for size in range(6):
        for S in itertools.combinations(range(1, 9), size):
            inst = ErasureInstance(codeword, frozenset(S))
            recovered, residual = peel(star_rows, inst)
            hit = [s for s in stopping if s <= set(S)]
            if size >= 5:
                hit.append(set(S))  # size m + 2 and up is always stopping
            if hit:
                assert residual, f"{S} should stall"
                assert residual_is_stopping(star_rows, residual)
                assert all(s <= residual for s in hit)  # residual is maximal
            else:
                assert residual == frozenset()
            for j in range(1, 9):
                if j not in residual:
                    assert recovered[j - 1] == codeword[j - 1]


def test_row_order_never_changes_residual(ref_spec, star_rows, codeword):
    inst = make_instance(ref_spec, codeword, {2, 3, 4, 5})
    baseline = peel(star_rows, inst)[1]
    rng = random.Random(3)
    for _ in range(10):
        shuffled = star_rows[:]
        rng.shuffle(shuffled)
        assert peel(shuffled, inst)[1] == baseline


def test_rows_callable_form(ref_spec, codeword):
    inst = make_instance(ref_spec, codeword, {1, 2, 3})
    recovered, residual = peel(lambda: hstar_rows(ref_spec), inst)
    assert residual == frozenset()
    assert tuple(recovered) == codeword


def test_minimal_check_matrix_may_need_more_passes(ref_spec, codeword):
    # the three evaluation rows alone still peel, just not in one sweep
    rows = generator_matrix(ref_spec).entries
    inst = make_instance(ref_spec, codeword, {1, 2})
    _, residual = peel(rows, inst)
    assert residual == frozenset() or residual_is_stopping(rows, residual)
    assert peel(rows, inst, max_passes=0)[1] == {1, 2}


def test_make_instance_validation(ref_spec, codeword, f5):
    with pytest.raises(ValueError):
        make_instance(ref_spec, codeword[:5], {1})
    corrupted = (codeword[0] + f5.element(1),) + codeword[1:]
    with pytest.raises(IntegrityError):
        make_instance(ref_spec, corrupted, {1})
    zero = tuple(f5.element(0) for _ in range(8))
    assert make_instance(ref_spec, zero, {2}).erased == {2}


def test_erased_positions_validated(codeword):
    with pytest.raises(ValueError):
        ErasureInstance(codeword, frozenset({0}))
    with pytest.raises(ValueError):
        ErasureInstance(codeword, frozenset({9}))


def test_peel_flags_noncodeword(ref_spec, star_rows, codeword, f5):
    corrupted = (codeword[0] + f5.element(1),) + codeword[1:]
    inst = ErasureInstance(corrupted, frozenset())
    with pytest.raises(IntegrityError):
        peel(star_rows, inst)
