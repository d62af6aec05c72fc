"""Three-phase all-to-all broadcast under half-duplex links.

Phase p runs the improved one-to-all from every node at once, restricted to two
sectors in every dimension, so each node sends on three units and receives on
the opposite three. Phases are separated by a global barrier. At each barrier a
node's outgoing bundle becomes every origin it holds; relays forward a bundle
along the same sector schedule as its broadcaster, and all bundles that share a
directed link in a step travel together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .broadcast import LinkUses, _Step
from .topology import SECTORS, BudgetExceeded, HyperEJNetwork, negate_unit, require_broadcast_form

PHASE_SECTORS = {1: (6, 1), 2: (2, 3), 3: (4, 5)}
DEFAULT_PAIR_BUDGET = 20_000_000


def phase_send_units(phase: int) -> frozenset[int]:
    return frozenset(u for j in PHASE_SECTORS[phase] for u in SECTORS[j])


def phase_receive_units(phase: int) -> frozenset[int]:
    return frozenset(negate_unit(u) for u in phase_send_units(phase))


@dataclass(frozen=True)
class AllToAllStep:
    phase: int
    step: int  # within the phase
    global_step: int
    links: int  # distinct directed links used
    deliveries: int  # (node, origin) pairs that became known in this step


@dataclass
class AllToAllTrace:
    net: HyperEJNetwork
    steps: list[AllToAllStep] = field(default_factory=list)
    link_uses: list[LinkUses] = field(default_factory=list)
    phases: list[int] = field(default_factory=list)
    holdings: np.ndarray | None = None  # holdings[node, origin]
    phase_holdings: list[np.ndarray] = field(default_factory=list)
    phase_reach: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def messages_per_node(self) -> np.ndarray:
        """Distinct foreign origins held by each node."""
        return self.holdings.sum(axis=1) - 1


def phase_schedule(net: HyperEJNetwork, phase: int):
    """Single-broadcaster schedule of one phase, from node 0.

    Returns one list per step of (src, dim, unit, dst) arrays relative to the broadcaster.
    """
    sectors = PHASE_SECTORS[phase]
    top = net.diameter - 1
    out = []
    pending = {}
    for s in range(1, net.n * net.diameter + 1):
        st = _Step(net)
        if s == 1:
            st.open_sectors(np.array([0]), range(1, net.n + 1), top, sectors)
        else:
            st.forward(pending)
            for (d, _, _, _), nodes in pending.items():
                if d > 1:
                    st.open_sectors(nodes, range(1, d), top, sectors)
        out.append(list(zip(st.src, st.dim, st.unit, st.dst)))
        pending = st.packets()
    return out


def run_all_to_all(net: HyperEJNetwork, *, pair_budget: int = DEFAULT_PAIR_BUDGET) -> AllToAllTrace:
    require_broadcast_form(net.modulus)
    net.require_explicit("all-to-all simulation")
    nc = net.node_count
    if nc * (nc - 1) > pair_budget:
        raise BudgetExceeded(f"all-to-all tracks {nc * (nc - 1):,} deliveries; budget is {pair_budget:,}")
    everyone = np.arange(nc, dtype=np.int64)
    holdings = np.eye(nc, dtype=bool)
    trace = AllToAllTrace(net)
    shifted = {}

    def shift(offset):
        if offset not in shifted:
            shifted[offset] = net.translate(everyone, offset)
        return shifted[offset]

    g = 0
    for phase in (1, 2, 3):
        bundle = holdings.copy()
        schedule = phase_schedule(net, phase)
        reached = []
        for k, entries in enumerate(schedule, start=1):
            g += 1
            before = int(holdings.sum())
            src, dims, units = [], [], []
            for s_rel, d, u, t_rel in entries:
                for a, b in zip(s_rel.tolist(), t_rel.tolist()):
                    holdings[shift(b)] |= bundle
                    src.append(shift(a))
                    dims.append(np.full(nc, d[0], dtype=np.int8))
                    units.append(np.full(nc, u[0], dtype=np.int8))
                reached.append(t_rel)
            uses = _dedupe(net, src, dims, units)
            trace.link_uses.append(uses)
            trace.phases.append(phase)
            trace.steps.append(AllToAllStep(phase, k, g, len(uses), int(holdings.sum()) - before))
        trace.phase_reach[phase] = np.sort(np.concatenate(reached))
        trace.phase_holdings.append(holdings.copy())
    trace.holdings = holdings
    return trace


def _dedupe(net, src, dims, units) -> LinkUses:
    if not src:
        e = np.empty(0, dtype=np.int64)
        return LinkUses(e, e.astype(np.int8), e.astype(np.int8))
    src = np.concatenate(src)
    dims = np.concatenate(dims).astype(np.int64)
    units = np.concatenate(units).astype(np.int64)
    key = np.unique((src * (net.n + 1) + dims) * 6 + units)
    units = key % 6
    rest = key // 6
    return LinkUses(rest // (net.n + 1), (rest % (net.n + 1)).astype(np.int8), units.astype(np.int8))


@dataclass(frozen=True)
class HalfDuplexReport:
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


def verify_half_duplex(trace) -> HalfDuplexReport:
    """No link may carry traffic both ways in one step. Phased (all-to-all) steps must
    also keep each node to at most three send and three receive units per dimension,
    drawn from the phase's ports."""
    net = trace.net
    nc = net.node_count
    for i, (uses, phase) in enumerate(zip(trace.link_uses, trace.phases), start=1):
        if len(uses) == 0:
            continue
        src = np.asarray(uses.src, dtype=np.int64)
        dim = np.asarray(uses.dim, dtype=np.int64)
        unit = np.asarray(uses.unit, dtype=np.int64)
        dst = np.empty_like(src)
        for d in np.unique(dim):
            for u in np.unique(unit[dim == d]):
                sel = (dim == d) & (unit == u)
                dst[sel] = net.step(src[sel], int(d), int(u))
        fwd = np.unique(src * nc + dst)
        back = dst * nc + src
        clash = np.isin(back, fwd)
        if clash.any():
            j = int(np.flatnonzero(clash)[0])
            return HalfDuplexReport(
                False, f"step {i}: link {int(src[j])} <-> {int(dst[j])} used in both directions"
            )
        if phase is None:
            continue
        recv_unit = (unit + 3) % 6
        for who, units, kind in ((src, unit, "send"), (dst, recv_unit, "receive")):
            per = np.unique((who * (net.n + 1) + dim) * 6 + units)
            node_dim, counts = np.unique(per // 6, return_counts=True)
            if (counts > 3).any():
                j = int(node_dim[np.argmax(counts)])
                return HalfDuplexReport(
                    False, f"step {i}: node {j // (net.n + 1)} uses >3 {kind} units on dim {j % (net.n + 1)}"
                )
            allowed = phase_send_units(phase) if kind == "send" else phase_receive_units(phase)
            bad = set(np.unique(units).tolist()) - allowed
            if bad:
                return HalfDuplexReport(
                    False, f"step {i}: phase {phase} {kind} on unit(s) {sorted(bad)} outside its ports"
                )
    return HalfDuplexReport(True)
