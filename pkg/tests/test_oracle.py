import json
from itertools import permutations
from math import factorial

import numpy as np
import pytest

from meshdist import catalog
from meshdist.oracle import (
    CACHE_ENV,
    ResourceLimit,
    avoiders_lex,
    brute_distribution,
    brute_joint,
    brute_row,
    count_all,
    occurrence_counts,
    permutation_array,
)
from meshdist.patterns import STRONG_FIXED_POINT, count_occurrences, descents
from meshdist.series import eulerian_polynomials


def test_brute_distribution_examples():
    assert brute_distribution(catalog.lookup(8), 3).row(3) == [2, 3, 1]
    assert brute_distribution(catalog.lookup(10), 3).row(3) == [3, 3]
    assert brute_row(catalog.lookup(64), 3) == [3, 2, 1]


def test_row_sums_for_whole_catalogue():
    for e in catalog.catalog():
        table = brute_distribution(e.pattern, 7)
        assert table.check_row_sums(), e.nr
        assert table.row(0) == [1]


def test_row_sums_at_nine():
    t = brute_distribution(catalog.lookup(45), 9)
    assert sum(t.row(9)) == factorial(9)


def test_ceiling():
    with pytest.raises(ResourceLimit):
        brute_distribution(catalog.lookup(8), 10)
    with pytest.raises(ResourceLimit):
        brute_distribution(catalog.lookup(8), 11, allow_unsafe=True)


def test_vectorised_counter_matches_scalar():
    for e in catalog.catalog():
        for n in range(1, 7):
            arr = permutation_array(n)
            got = count_all(e.pattern, arr)
            want = [count_occurrences(e.pattern, tuple(int(v) for v in row)) for row in arr]
            assert got.tolist() == want, (e.nr, n)
    for n in range(1, 6):
        arr = permutation_array(n)
        want = [count_occurrences(STRONG_FIXED_POINT, tuple(int(v) for v in row)) for row in arr]
        assert count_all(STRONG_FIXED_POINT, arr).tolist() == want


def test_permutation_array_is_lexicographic():
    arr = permutation_array(4)
    assert [tuple(r) for r in arr.tolist()] == list(permutations(range(1, 5)))


def test_shards_are_deterministic():
    p = catalog.lookup(36)
    single = occurrence_counts(p, 7, shards=1)
    multi = occurrence_counts(p, 7, shards=3)
    assert np.array_equal(single[0], multi[0]) and np.array_equal(single[1], multi[1])
    assert brute_distribution(p, 7, shards=3).rows == brute_distribution(p, 7).rows


def test_avoiders_lex():
    assert avoiders_lex(STRONG_FIXED_POINT, 3) == [(2, 3, 1), (3, 1, 2), (3, 2, 1)]
    assert avoiders_lex(catalog.lookup(49), 1) == [(1,)]
    assert len(avoiders_lex(catalog.lookup(49), 3)) == len(avoiders_lex(catalog.lookup(48), 3))
    got = avoiders_lex(catalog.lookup(16), 5)
    assert got == sorted(got)


def test_avoiders_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    first = avoiders_lex(catalog.lookup(53), 5)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    assert data["n"] == 5 and len(data["avoiders"]) == len(first)
    assert avoiders_lex(catalog.lookup(53), 5) == first


def test_brute_joint_examples():
    j = brute_joint(STRONG_FIXED_POINT, 2)
    assert j.rows[0] == [[1]]
    # x^2 coefficient q^2 + t: 12 has two strong fixed points and no descent, 21 none and one
    assert j.rows[2] == [[0, 1], [0], [1]]
    j1 = brute_joint(catalog.lookup(1), 2)
    assert j1.rows[2] == [[0, 1], [1]]


def test_joint_marginals():
    p = catalog.lookup(55)
    j = brute_joint(p, 7)
    assert j.marginal_occurrences().rows == brute_distribution(p, 7).rows
    euler = [[c for c in poly.t_coeffs()] for poly in eulerian_polynomials(7)]
    assert j.marginal_descents() == euler


def test_descent_counts_agree():
    arr = permutation_array(5)
    _, des = occurrence_counts(catalog.lookup(8), 5)
    assert des.tolist() == [descents(tuple(r)) for r in arr.tolist()]
