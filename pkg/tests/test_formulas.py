from math import factorial

import pytest

from meshdist import catalog, formulas
from meshdist.formulas import (
    AVOIDANCE_NRS,
    GF_NRS,
    RECURRENCE_NRS,
    THEOREMS,
    avoid_sfp_des,
    avoid_strong_fixed_points,
    avoidance_gf,
    dist_conjecture_nr3,
    dist_gf,
    dist_inversions,
    dist_joint_sfp_des,
    dist_recurrence,
    dist_strong_fixed_points,
    dist_trivial,
    formula_table,
    joint_rows,
    nr3_cf_sequences,
    nr21_containing,
    nr45_coupled,
    recurrence_poly_route,
    rising_product,
    series_table,
)
from meshdist.oracle import brute_distribution, brute_joint, brute_row
from meshdist.patterns import STRONG_FIXED_POINT, InvalidInput
from meshdist.series import Poly, Q, T, eval_q_one, eval_t_one, factorial_series

N = 7


@pytest.fixture(scope="module")
def oracle():
    cache = {}

    def get(nr):
        if nr not in cache:
            p = STRONG_FIXED_POINT if nr is None else catalog.lookup(nr)
            cache[nr] = brute_distribution(p, N).rows
        return cache[nr]

    return get


# -- length one and classical


def test_strong_fixed_points():
    assert avoid_strong_fixed_points(4).values() == [1, 0, 1, 3, 14]
    assert eval_q_one(dist_strong_fixed_points(9)) == factorial_series(9)
    # S_3: 231, 312, 321 have none, 132 and 213 one, 123 three
    assert dist_strong_fixed_points(3)[3].q_coeffs() == [3, 2, 0, 1]
    assert brute_row(STRONG_FIXED_POINT, 3) == [3, 2, 0, 1]


def test_strong_fixed_points_vs_oracle(oracle):
    assert dist_strong_fixed_points(N).q_rows() == oracle(None)


def test_inversions():
    s = dist_inversions(5)
    assert s[3] == 1 + 2 * Q + 2 * Q**2 + Q**3
    assert s[0] == Poly.const(1) and s[1] == Poly.const(1)


def test_inversions_vs_oracle(oracle):
    assert dist_inversions(N).q_rows() == oracle(1)


# -- elementary distributions


def test_trivial_examples():
    assert dist_trivial(5, 3) == [2, 2, 2]
    assert dist_trivial(12, 3) == [4, 0, 2]
    assert dist_trivial(21, 2) == [1, 1]
    assert dist_trivial(10, 4) == [12, 12]
    assert dist_trivial(11, 2) == [1, 1]
    assert dist_trivial(11, 3) == [6]
    with pytest.raises(InvalidInput):
        dist_trivial(16, 3)
    with pytest.raises(InvalidInput):
        dist_trivial(5, -1)


@pytest.mark.parametrize("nr", [nr for nr in formulas.TRIVIAL_NRS if nr != 21])
def test_trivial_vs_oracle(nr, oracle):
    assert [dist_trivial(nr, n) for n in range(N + 1)] == oracle(nr)


def test_nr21_printed_formula_disagrees_with_oracle(oracle):
    # the closed form as printed miscounts from n = 3 on; see the decisions ledger
    printed = [dist_trivial(21, n) for n in range(N + 1)]
    assert printed[:3] == oracle(21)[:3]
    assert printed[3] != oracle(21)[3]


def test_nr21_direct_count(oracle):
    for n in range(2, N + 1):
        assert nr21_containing(n) == oracle(21)[n][1]


# -- generating functions


def test_gf_examples():
    assert avoidance_gf(63, 4).values() == [1, 1, 1, 3, 13]
    assert dist_gf(64, 3)[3] == 3 + 2 * Q + Q**2
    with pytest.raises(InvalidInput):
        dist_gf(8, 4)


def test_63_64_65_share_a_series():
    a = dist_gf(63, 12)
    assert dist_gf(64, 12) == a and dist_gf(65, 12) == a


@pytest.mark.parametrize("nr", GF_NRS)
def test_gf_vs_oracle(nr, oracle):
    assert dist_gf(nr, N).q_rows() == oracle(nr)


@pytest.mark.parametrize("nr", GF_NRS)
def test_gf_at_q_one_is_factorial(nr):
    assert eval_q_one(dist_gf(nr, 9)) == factorial_series(9)


@pytest.mark.parametrize("nr", GF_NRS)
def test_gf_degree_bound(nr):
    # a length-2 pattern occurs at most n(n-1)/2 times
    s = dist_gf(nr, 9)
    for n in range(10):
        assert s[n].deg_q() <= max(n * (n - 1) // 2, 0)


@pytest.mark.parametrize("nr", AVOIDANCE_NRS)
def test_avoidance_matches_constant_term(nr):
    assert avoidance_gf(nr, 10).values() == [r[0] for r in dist_gf(nr, 10).q_rows()]


# -- recurrences


def test_recurrence_examples():
    assert dist_recurrence(8, 4).row(4) == [6, 11, 6, 1]
    assert dist_recurrence(14, 2).row(2) == [1, 1]
    assert dist_recurrence(45, 3).row(3) == brute_row(catalog.lookup(45), 3)
    with pytest.raises(InvalidInput):
        dist_recurrence(16, 4)


@pytest.mark.parametrize("nr", RECURRENCE_NRS)
def test_recurrence_vs_oracle(nr, oracle):
    assert dist_recurrence(nr, N).rows == oracle(nr)


@pytest.mark.parametrize("nr", RECURRENCE_NRS)
def test_recurrence_two_routes(nr):
    assert dist_recurrence(nr, 12).rows == recurrence_poly_route(nr, 12)


def test_stirling_product():
    for n in range(1, 10):
        assert dist_recurrence(8, 9).row(n) == rising_product(n)


def test_nr45_coupled():
    T_rows, B_rows = nr45_coupled(10)
    assert T_rows == dist_recurrence(45, 10).rows
    for n in range(1, 11):
        # B only counts permutations starting with 1
        assert sum(B_rows[n]) == factorial(n - 1)


# -- conjecture and joint distribution


def test_cf_sequences():
    r, s = nr3_cf_sequences(8)
    assert r == [1, 0, 2, 1, 3, 2, 4, 3]
    assert s == [0, 1, 0, 1, 0, 1, 0, 1]


def test_conjecture_rows():
    s = dist_conjecture_nr3(10)
    for n in range(11):
        assert sum(s[n].q_coeffs()) == factorial(n)
    assert dist_conjecture_nr3(0).values() == [1]
    t = series_table(s, "nr=3", 5, conjectural=True)
    assert t.conjectural and t.row(4) == [1, 13, 9, 1]


def test_conjecture_vs_oracle(oracle):
    assert dist_conjecture_nr3(N).q_rows() == oracle(3)


def test_joint_series():
    s = dist_joint_sfp_des(8)
    assert s[2] == Q**2 + T
    assert eval_t_one(s) == dist_strong_fixed_points(8)
    assert eval_q_one(eval_t_one(s)) == factorial_series(8)
    assert eval_t_one(avoid_sfp_des(8)) == avoid_strong_fixed_points(8)


def test_joint_vs_oracle():
    assert joint_rows(6) == brute_joint(STRONG_FIXED_POINT, 6).rows


# -- registry


def test_registry_tags():
    tags = set(THEOREMS)
    assert {"T1.1", "E1", "C6.1"} <= tags
    assert {f"T2.{i}" for i in range(1, 11)} <= tags
    assert {f"T3.{i}" for i in range(1, 13)} <= tags
    assert {f"T4.{i}" for i in range(1, 5)} <= tags
    assert THEOREMS["T3.10"].nrs == (63,)
    assert THEOREMS["T2.9"].nrs == (21,)
    assert THEOREMS["C6.1"].conjectural
    with pytest.raises(InvalidInput):
        formulas.theorem("T9.9")


def test_formula_table():
    assert formula_table(8, 4).row(4) == [6, 11, 6, 1]
    assert formula_table(None, 4).row(3) == [3, 2, 0, 1]
    assert formula_table(3, 4).conjectural
    with pytest.raises(InvalidInput):
        formula_table(50, 4)


@pytest.mark.parametrize(
    "tag",
    [
        pytest.param(t, marks=pytest.mark.xfail(strict=True, reason="printed closed form miscounts"))
        if t == "T2.9"
        else t
        for t in THEOREMS
    ],
)
def test_every_registered_result_vs_oracle(tag, oracle):
    thm = THEOREMS[tag]
    for label, _ in thm.patterns():
        nr = int(label.split("=")[1]) if label.startswith("nr=") else None
        assert thm.rows(nr, N)[: N + 1] == oracle(nr), label
