import itertools

import numpy as np
import pytest

from ejnet.alltoall import (
    PHASE_SECTORS,
    AllToAllTrace,
    phase_receive_units,
    phase_send_units,
    run_all_to_all,
    verify_half_duplex,
)
from ejnet.broadcast import LinkUses
from ejnet.ejint import ONE, RHO, ZERO, Modulus, mod_reduce
from ejnet.topology import BudgetExceeded, build_network, sector_tree


@pytest.fixture(scope="module")
def a2a_23_2():
    return run_all_to_all(build_network(Modulus(2, 3), 2))


def product_reach(m, n, phase):
    """Offsets a single broadcaster covers in one phase: every coordinate in {0} + its two sectors."""
    per_dim = {ZERO}
    for j in PHASE_SECTORS[phase]:
        per_dim |= set(sector_tree(m, j).depth)
    return {v for v in itertools.product(sorted(per_dim), repeat=n) if any(c != ZERO for c in v)}


def test_port_assignment():
    # send on (+1, +rho, -rho^2), (+rho, +rho^2, -1), (-1, -rho, -rho^2); receive on the negations
    assert phase_send_units(1) == {0, 1, 5} and phase_receive_units(1) == {3, 4, 2}
    assert phase_send_units(2) == {1, 2, 3} and phase_receive_units(2) == {4, 5, 0}
    assert phase_send_units(3) == {3, 4, 5} and phase_receive_units(3) == {0, 1, 2}


def test_complete_after_twelve_steps(a2a_23_2):
    assert len(a2a_23_2.steps) == 12
    assert [s.phase for s in a2a_23_2.steps] == [1] * 4 + [2] * 4 + [3] * 4
    assert (a2a_23_2.messages_per_node == 360).all()


@pytest.mark.parametrize("phase", [1, 2, 3])
def test_phase_reach_is_two_sectors_per_dimension(a2a_23_2, phase):
    net = a2a_23_2.net
    reach = a2a_23_2.phase_reach[phase]
    assert np.unique(reach).size == reach.size  # each offset reached once
    assert {net.coords(int(i)) for i in reach} == product_reach(net.modulus, 2, phase)


def test_phase_one_delivers_exactly_its_sectors(a2a_23_2):
    net = a2a_23_2.net
    after1 = a2a_23_2.phase_holdings[0]
    offsets = product_reach(net.modulus, 2, 1)
    for u in (0, 17, 200, 360):
        cu = net.coords(u)
        expected = {u} | {
            net.index_of(tuple(p - q for p, q in zip(cu, v))) for v in offsets
        }
        assert set(np.flatnonzero(after1[u]).tolist()) == expected


def test_1_2_phase_one_holds_two_sectors_behind():
    m = Modulus(1, 2)
    net = build_network(m, 1)
    tr = run_all_to_all(net)
    after1 = tr.phase_holdings[0]
    for u, r in enumerate(net.residues):
        behind = {u, net.index[mod_reduce(r - ONE, m)], net.index[mod_reduce(r - RHO, m)]}
        assert set(np.flatnonzero(after1[u]).tolist()) == behind
    assert (tr.messages_per_node == 6).all() and len(tr.steps) == 3


@pytest.mark.parametrize("a, n", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_complete_and_half_duplex(a, n):
    net = build_network(Modulus(a, a + 1), n)
    tr = run_all_to_all(net)
    assert len(tr.steps) == 3 * n * a
    assert (tr.messages_per_node == net.node_count - 1).all()
    assert verify_half_duplex(tr)


def test_half_duplex_report(a2a_23_2):
    rep = verify_half_duplex(a2a_23_2)
    assert rep.ok and rep.violation is None


def _synthetic(net, src, dim, unit, phase=1):
    uses = LinkUses(np.array(src), np.array(dim, dtype=np.int8), np.array(unit, dtype=np.int8))
    return AllToAllTrace(net, link_uses=[uses], phases=[phase])


def test_detects_opposite_directions():
    net = build_network(Modulus(2, 3), 1)
    b = int(net.step(np.array([0]), 1, 0)[0])
    rep = verify_half_duplex(_synthetic(net, [0, b], [1, 1], [0, 3]))
    assert not rep and "both directions" in rep.violation


def test_detects_port_outside_phase():
    net = build_network(Modulus(2, 3), 1)
    rep = verify_half_duplex(_synthetic(net, [0], [1], [3], phase=1))
    assert not rep and "outside its ports" in rep.violation


def test_detects_too_many_send_units():
    net = build_network(Modulus(2, 3), 1)
    rep = verify_half_duplex(_synthetic(net, [0, 0, 0, 0], [1] * 4, [0, 1, 5, 2], phase=1))
    assert not rep


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        run_all_to_all(build_network(Modulus(3, 4), 3))
