"""Lockstep simulation of one-to-all broadcast on EJ_alpha^(n).

A transmission started in step s is booked in row s for both ends: the sender
is "sending" and the target is "receiving". A node holding a sector packet
(dim, sector, x, y) that arrived in step s forwards it in step s+1:

    x > 0  ->  via minor, (x-1, 0)
    y > 0  ->  via major, (x-1, y-1)

The improved algorithm additionally restarts a full six-sector broadcast on
every lower dimension in that same step. The previous algorithm instead works
round by round, one dimension per round, highest first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .topology import SECTORS, HyperEJNetwork, require_broadcast_form


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class StepStats:
    step: int
    free: int
    sending: int
    receiving: int
    active: int
    round: int | None = None


@dataclass
class LinkUses:
    """Directed link uses in one step: src node, dimension and unit index per transmission."""

    src: np.ndarray
    dim: np.ndarray
    unit: np.ndarray

    def __len__(self):
        return len(self.src)


@dataclass
class BroadcastTrace:
    algorithm: str
    net: HyperEJNetwork
    source: int
    steps: list[StepStats] = field(default_factory=list)
    first_receive: np.ndarray | None = None  # step per node, 0 for the source
    link_uses: list[LinkUses] = field(default_factory=list)

    @property
    def total_senders(self) -> int:
        return sum(s.sending for s in self.steps)

    @property
    def total_receivers(self) -> int:
        return sum(s.receiving for s in self.steps)

    @property
    def phases(self):
        return [None] * len(self.steps)

    def receive_histogram(self) -> dict[int, int]:
        fr = np.delete(self.first_receive, self.source)
        steps, counts = np.unique(fr, return_counts=True)
        return {int(s): int(c) for s, c in zip(steps, counts)}


class _Step:
    """Transmissions collected for a single step."""

    def __init__(self, net):
        self.net = net
        self.src, self.dst, self.dim, self.unit = [], [], [], []
        self.arrivals = defaultdict(list)

    def send(self, nodes, dim, unit, packet):
        dst = self.net.step(nodes, dim, unit)
        self.src.append(nodes)
        self.dst.append(dst)
        self.dim.append(np.full(len(nodes), dim, dtype=np.int8))
        self.unit.append(np.full(len(nodes), unit, dtype=np.int8))
        self.arrivals[packet].append(dst)

    def open_sectors(self, nodes, dims, depth, sectors=tuple(SECTORS)):
        for d in dims:
            for j in sectors:
                self.send(nodes, d, SECTORS[j][0], (d, j, depth, depth))

    def forward(self, pending):
        for (d, j, x, y), nodes in pending.items():
            major, minor = SECTORS[j]
            if x > 0:
                self.send(nodes, d, minor, (d, j, x - 1, 0))
            if y > 0:
                self.send(nodes, d, major, (d, j, x - 1, y - 1))

    def packets(self):
        return {k: np.concatenate(v) for k, v in self.arrivals.items()}


def _new_trace(name, net, source):
    require_broadcast_form(net.modulus)
    net.require_explicit(f"{name} broadcast simulation")
    if not 0 <= source < net.node_count:
        raise IndexError(f"source {source} outside 0..{net.node_count - 1}")
    fr = np.full(net.node_count, -1, dtype=np.int32)
    fr[source] = 0
    return BroadcastTrace(name, net, source, first_receive=fr)


def _book(trace, st, step, rnd=None):
    net = trace.net
    if st.src:
        src = np.concatenate(st.src)
        dst = np.concatenate(st.dst)
        dims = np.concatenate(st.dim)
        units = np.concatenate(st.unit)
    else:
        src = dst = np.empty(0, dtype=np.int64)
        dims = units = np.empty(0, dtype=np.int8)
    if np.unique(dst).size != dst.size or (trace.first_receive[dst] >= 0).any():
        raise InvariantViolation(f"{trace.algorithm}: a node received twice by step {step}")
    trace.first_receive[dst] = step
    sending = int(np.unique(src).size)
    receiving = int(dst.size)
    trace.steps.append(
        StepStats(step, net.node_count - sending - receiving, sending, receiving,
                  sending + receiving, rnd)
    )
    trace.link_uses.append(LinkUses(src, dims, units))


def _finish(trace):
    if (trace.first_receive < 0).any():
        missing = int((trace.first_receive < 0).sum())
        raise InvariantViolation(f"{trace.algorithm}: {missing} nodes never received")
    return trace


def run_improved_one_to_all(net: HyperEJNetwork, source: int = 0) -> BroadcastTrace:
    trace = _new_trace("improved", net, source)
    top = net.diameter - 1
    src = np.array([source], dtype=np.int64)
    pending = {}
    for s in range(1, net.n * net.diameter + 1):
        st = _Step(net)
        if s == 1:
            st.open_sectors(src, range(1, net.n + 1), top)
        else:
            st.forward(pending)
            for (d, _, _, _), nodes in pending.items():
                if d > 1:
                    st.open_sectors(nodes, range(1, d), top)
        _book(trace, st, s)
        pending = st.packets()
    return _finish(trace)


def run_previous_one_to_all(net: HyperEJNetwork, source: int = 0) -> BroadcastTrace:
    trace = _new_trace("previous", net, source)
    M = net.diameter
    pending = {}
    for rnd in range(1, net.n + 1):
        dim = net.n - rnd + 1
        for k in range(1, M + 1):
            s = (rnd - 1) * M + k
            st = _Step(net)
            if k == 1:
                roots = np.flatnonzero(trace.first_receive >= 0)
                st.open_sectors(roots, [dim], M - 1)
            else:
                st.forward(pending)
            _book(trace, st, s, rnd)
            pending = st.packets()
    return _finish(trace)


def run_one_to_all(net, algorithm: str, source: int = 0) -> BroadcastTrace:
    runners = {"previous": run_previous_one_to_all, "improved": run_improved_one_to_all}
    if algorithm not in runners:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return runners[algorithm](net, source)


def mean_receive_step(trace: BroadcastTrace) -> Fraction:
    """Exact mean of the first-receive step over all non-source nodes."""
    total = int(trace.first_receive.astype(np.int64).sum())
    return Fraction(total, trace.net.node_count - 1)
