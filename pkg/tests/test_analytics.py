from collections import Counter
from fractions import Fraction

import pytest

from ejnet.analytics import (
    analytic_prev,
    expand_o2a,
    o2a_terms,
    sender_ratio,
    table3,
    total_senders,
)
from ejnet.broadcast import run_improved_one_to_all, run_previous_one_to_all
from ejnet.ejint import Modulus
from ejnet.topology import build_network

M34 = Modulus(3, 4)
PREV_TOTALS = [19, 722, 26_733, 989_140, 36_598_199, 1_354_133_382]
IMP_TOTALS = [19, 703, 26_011, 962_407, 35_609_059, 1_317_535_183]
EQUIV = [(1, n) for n in (1, 2, 3)] + [(2, n) for n in (1, 2)] + [(3, n) for n in (1, 2, 3)]


def test_prev_rows_3_4_3():
    rows = analytic_prev(M34, 3)
    assert len(rows) == 9
    assert (rows[6].senders, rows[6].receivers, rows[6].round) == (1_369, 8_214, 3)


def test_worked_example_rows():
    rows = expand_o2a(Modulus(2, 3), 2)
    assert [r.receivers for r in rows] == [12, 60, 144, 144]
    assert [r.senders for r in rows] == [1, 12, 48, 72]


def test_worked_example_terms():
    # S(k, x, y) multisets created at each step
    assert o2a_terms(Modulus(2, 3), 2) == [
        Counter({(1, 1, 1): 6, (2, 1, 1): 6}),
        Counter({(1, 0, 0): 12, (1, 1, 1): 36, (2, 0, 0): 12}),
        Counter({(1, 0, 0): 72, (1, 1, 1): 72}),
        Counter({(1, 0, 0): 144}),
    ]


@pytest.mark.parametrize("a", [1, 2, 3, 4, 6])
def test_one_dimension_matches_previous(a):
    m = Modulus(a, a + 1)
    imp = [(r.senders, r.receivers) for r in expand_o2a(m, 1)]
    assert imp == [(r.senders, r.receivers) for r in analytic_prev(m, 1)]
    assert [r for _, r in imp] == [6 * d for d in range(1, a + 1)]


def test_table3():
    for n in range(1, 7):
        assert total_senders(M34, n, "previous") == PREV_TOTALS[n - 1]
        assert total_senders(M34, n, "improved") == IMP_TOTALS[n - 1]
    assert total_senders(M34, 2, "previous") - total_senders(M34, 2, "improved") == 19
    assert sender_ratio(M34, 1) == 1
    assert abs(float(sender_ratio(M34, 6)) - 1.027777777) < 1e-9


def test_table3_rows_and_difference_row():
    rows = table3(M34, range(1, 7))
    assert [r["difference"] for r in rows] == [0] + PREV_TOTALS[:-1]


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_recurrences(a):
    m = Modulus(a, a + 1)
    imp1 = total_senders(m, 1, "improved")
    prev = [0] + [total_senders(m, n, "previous") for n in range(1, 7)]
    for n in range(1, 7):
        imp = total_senders(m, n, "improved")
        assert imp == imp1 * m.norm ** (n - 1)
        assert prev[n] == imp + prev[n - 1]


def test_ratio_limit():
    N = M34.norm
    for n in range(1, 9):
        assert sender_ratio(M34, n) == Fraction(N**n - 1, (N - 1) * N ** (n - 1))
    assert abs(sender_ratio(M34, 12) - Fraction(N, N - 1)) < Fraction(1, 10**15)


@pytest.mark.parametrize("ab", [(1, 2), (2, 3), (3, 4), (6, 7)])
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_receivers_sum_to_all_nodes(ab, n):
    m = Modulus(*ab)
    prev, imp = analytic_prev(m, n), expand_o2a(m, n)
    for rows in (prev, imp):
        assert sum(r.receivers for r in rows) == m.norm**n - 1
        assert len(rows) == n * m.diameter
    assert (prev[0].receivers, imp[0].receivers) == (6, 6 * n)


@pytest.mark.parametrize("ab", [(1, 2), (3, 4), (4, 5)])
def test_term_invariants(ab):
    m = Modulus(*ab)
    M = m.diameter
    for terms in o2a_terms(m, 3):
        for k, x, y in terms:
            assert 1 <= k <= 3 and 0 <= y <= x <= M - 1


@pytest.mark.parametrize("a, n", EQUIV)
def test_simulation_equivalence(a, n):
    m = Modulus(a, a + 1)
    net = build_network(m, n)
    sim = [(s.sending, s.receiving) for s in run_improved_one_to_all(net).steps]
    assert sim == [(r.senders, r.receivers) for r in expand_o2a(m, n)]
    sim = [(s.sending, s.receiving) for s in run_previous_one_to_all(net).steps]
    assert sim == [(r.senders, r.receivers) for r in analytic_prev(m, n)]


def test_rejects_non_broadcast_modulus():
    with pytest.raises(ValueError):
        expand_o2a(Modulus(3, 3), 2)
