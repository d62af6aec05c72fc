"""EJ_alpha and its n-fold cross product EJ_alpha^(n).

Nodes are n-tuples of canonical residues, highest dimension first. Each tuple
maps to a dense mixed-radix index; dimension d (1-based) has stride N^(d-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ejint import (
    ONE,
    RHO,
    RHO2,
    ZERO,
    EJInt,
    Modulus,
    format_ej,
    mod_reduce,
    residues,
    weight_distribution,
)

UNITS = (ONE, RHO, RHO2, -ONE, -RHO, -RHO2)
UNIT_NAMES = ("+1", "+ρ", "+ρ²", "-1", "-ρ", "-ρ²")

# sector j -> (major, minor) unit indices; sector j is opened by sending via its major unit
SECTORS = {j: (j % 6, (j - 1) % 6) for j in range(1, 7)}

DEFAULT_NODE_BUDGET = 4_000_000
DEFAULT_MAX_DIMS = 16


class BudgetExceeded(RuntimeError):
    pass


def negate_unit(u: int) -> int:
    return (u + 3) % 6


@dataclass(frozen=True, order=True)
class LinkLabel:
    dim: int
    unit: int

    def negate(self) -> LinkLabel:
        return LinkLabel(self.dim, negate_unit(self.unit))

    def __str__(self):
        return f"d{self.dim}{UNIT_NAMES[self.unit]}"


NodeCoord = tuple  # tuple[EJInt, ...], highest dimension first


@lru_cache(maxsize=64)
def _tables(m: Modulus):
    res = residues(m)
    index = {r: i for i, r in enumerate(res)}
    nbr = np.empty((len(res), 6), dtype=np.int64)
    wrap = np.zeros((len(res), 6), dtype=bool)
    for i, r in enumerate(res):
        for u, e in enumerate(UNITS):
            raw = r + e
            c = mod_reduce(raw, m)
            nbr[i, u] = index[c]
            wrap[i, u] = c != raw
    nbr.setflags(write=False)
    wrap.setflags(write=False)
    return res, index, nbr, wrap


@dataclass(frozen=True, eq=False)
class HyperEJNetwork:
    modulus: Modulus
    n: int
    budget: int = DEFAULT_NODE_BUDGET
    residues: tuple = field(init=False, repr=False)
    index: dict = field(init=False, repr=False)
    table: np.ndarray = field(init=False, repr=False)
    wrap_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        res, index, nbr, wrap = _tables(self.modulus)
        object.__setattr__(self, "residues", res)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "table", nbr)
        object.__setattr__(self, "wrap_table", wrap)

    @property
    def N(self) -> int:
        return self.modulus.norm

    @property
    def node_count(self) -> int:
        return self.N**self.n

    @property
    def diameter(self) -> int:
        """Per-dimension diameter; EJ_alpha^(n) has diameter n times this."""
        return self.modulus.diameter

    @property
    def degree(self) -> int:
        return 6 * self.n

    @property
    def explicit(self) -> bool:
        return self.node_count <= self.budget

    def require_explicit(self, what: str = "this operation"):
        if not self.explicit:
            raise BudgetExceeded(
                f"{what} needs {self.node_count:,} nodes; budget is {self.budget:,}"
            )

    def stride(self, dim: int) -> int:
        return self.N ** (dim - 1)

    def labels(self):
        return [LinkLabel(d, u) for d in range(1, self.n + 1) for u in range(6)]

    # coordinates <-> dense index

    def index_of(self, v: NodeCoord) -> int:
        if len(v) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(v)}")
        i = 0
        for c in v:
            i = i * self.N + self.index[mod_reduce(c, self.modulus)]
        return i

    def coords(self, i: int) -> NodeCoord:
        if not 0 <= i < self.node_count:
            raise IndexError(i)
        out = []
        for _ in range(self.n):
            i, r = divmod(i, self.N)
            out.append(self.residues[r])
        return tuple(reversed(out))

    def format_node(self, i: int) -> str:
        return "(" + ", ".join(format_ej(c) for c in self.coords(i)) + ")"

    # adjacency

    def neighbor(self, v: NodeCoord, label: LinkLabel) -> NodeCoord:
        self._check_label(label)
        pos = self.n - label.dim
        c = mod_reduce(v[pos] + UNITS[label.unit], self.modulus)
        return v[:pos] + (c,) + v[pos + 1 :]

    def is_wraparound(self, v: NodeCoord, label: LinkLabel) -> bool:
        self._check_label(label)
        c = v[self.n - label.dim]
        raw = c + UNITS[label.unit]
        return mod_reduce(raw, self.modulus) != raw

    def step(self, nodes, dim: int, unit: int):
        """Vectorised neighbour of dense indices along one link label."""
        s = self.stride(dim)
        nodes = np.asarray(nodes, dtype=np.int64)
        digit = (nodes // s) % self.N
        return nodes + (self.table[digit, unit] - digit) * s

    def translate(self, nodes, offset: int):
        """Coordinate-wise sum of dense indices with the node `offset` (mod alpha)."""
        add = _add_table(self.modulus)
        nodes = np.asarray(nodes, dtype=np.int64)
        out = np.zeros_like(nodes)
        for d in range(1, self.n + 1):
            s = self.stride(d)
            out += add[(nodes // s) % self.N, (offset // s) % self.N] * s
        return out

    def _check_label(self, label: LinkLabel):
        if not 1 <= label.dim <= self.n or not 0 <= label.unit < 6:
            raise ValueError(f"invalid link label {label} for n={self.n}")


@lru_cache(maxsize=16)
def _add_table(m: Modulus) -> np.ndarray:
    res = residues(m)
    index = {r: i for i, r in enumerate(res)}
    t = np.array([[index[mod_reduce(p + q, m)] for q in res] for p in res], dtype=np.int64)
    t.setflags(write=False)
    return t


def build_network(m: Modulus, n: int, *, max_dims: int = DEFAULT_MAX_DIMS,
                  budget: int = DEFAULT_NODE_BUDGET) -> HyperEJNetwork:
    if not 1 <= n <= max_dims:
        raise ValueError(f"dimension count n={n} outside 1..{max_dims}")
    return HyperEJNetwork(m, n, budget)


# sectors


@dataclass(frozen=True)
class SectorTree:
    sector: int
    major: int
    minor: int
    depth: dict  # residue -> depth (root has depth 1)
    parent: dict  # residue -> parent residue (root's parent is 0)

    @property
    def nodes(self):
        return list(self.depth)


def require_broadcast_form(m: Modulus):
    if not m.is_broadcast_form:
        raise ValueError(f"broadcast trees need b = a+1, got alpha = {m}")


@lru_cache(maxsize=256)
def sector_tree(m: Modulus, j: int) -> SectorTree:
    """Spanning tree of sector j: axis nodes branch along major and minor, the rest follow minor."""
    require_broadcast_form(m)
    if j not in SECTORS:
        raise ValueError(f"sector must be 1..6, got {j}")
    major, minor = SECTORS[j]
    top = m.diameter - 1
    root = mod_reduce(UNITS[major], m)
    depth, parent = {root: 1}, {root: ZERO}
    frontier = [(root, top, top)]
    while frontier:
        nxt = []
        for node, x, y in frontier:
            kids = []
            if x > 0:
                kids.append((minor, x - 1, 0))
            if y > 0:
                kids.append((major, x - 1, y - 1))
            for u, cx, cy in kids:
                c = mod_reduce(node + UNITS[u], m)
                if c in depth or c == ZERO:
                    raise AssertionError(f"sector {j} of {m} revisits {format_ej(c)}")
                depth[c] = depth[node] + 1
                parent[c] = node
                nxt.append((c, cx, cy))
        frontier = nxt
    return SectorTree(j, major, minor, depth, parent)


@lru_cache(maxsize=64)
def _sector_map(m: Modulus) -> dict:
    out = {}
    for j in SECTORS:
        for r in sector_tree(m, j).depth:
            out[r] = j
    return out


def sector_of(r: EJInt, m: Modulus) -> int | None:
    """Sector (1..6) whose tree covers residue r; None for the centre node 0."""
    r = mod_reduce(r, m)
    if r == ZERO:
        return None
    return _sector_map(m)[r]


# breadth-first search


def bfs_from(net: HyperEJNetwork, source: int = 0) -> np.ndarray:
    """Hop distance from `source` to every node (dense index order)."""
    net.require_explicit("BFS")
    dist = np.full(net.node_count, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        cand = np.concatenate([net.step(frontier, lab.dim, lab.unit) for lab in net.labels()])
        cand = np.unique(cand)
        cand = cand[dist[cand] < 0]
        dist[cand] = level
        frontier = cand
    return dist


def distance_histogram(net: HyperEJNetwork, source: int = 0) -> list[int]:
    return np.bincount(bfs_from(net, source)).tolist()


def closed_form_histogram(m: Modulus, n: int) -> list[int]:
    """Distance histogram of EJ_alpha^(n): n-fold convolution of the 1-D closed form."""
    one = [0] * (max(s for s, _ in weight_distribution(m)) + 1)
    for s, c in weight_distribution(m):
        one[s] = c
    out = [1]
    for _ in range(n):
        out = np.convolve(out, np.array(one, dtype=object)).tolist()
    return [int(c) for c in out]
