"""Eisenstein-Jacobi integers x + y*rho with rho^2 = rho - 1, and residues modulo alpha."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil

INT_LIMIT = 2**63
MAX_NORM = 2**31
MIN_NORM = 7


class InvalidModulus(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EJInt:
    x: int
    y: int

    def __post_init__(self):
        if not (-INT_LIMIT <= self.x < INT_LIMIT and -INT_LIMIT <= self.y < INT_LIMIT):
            raise OverflowError(f"EJInt({self.x}, {self.y}) exceeds 64-bit range")

    def __add__(self, other: EJInt) -> EJInt:
        return ej_add(self, other)

    def __sub__(self, other: EJInt) -> EJInt:
        return EJInt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> EJInt:
        return EJInt(-self.x, -self.y)

    def __mul__(self, other: EJInt | int) -> EJInt:
        if isinstance(other, int):
            return EJInt(self.x * other, self.y * other)
        return ej_mul(self, other)

    __rmul__ = __mul__

    def conj(self) -> EJInt:
        # conj(rho) = 1 - rho
        return EJInt(self.x + self.y, -self.y)

    def norm(self) -> int:
        return ej_norm(self)

    def hex_norm(self) -> int:
        return hex_norm(self)

    def __str__(self) -> str:
        return format_ej(self)


ZERO = EJInt(0, 0)
ONE = EJInt(1, 0)
RHO = EJInt(0, 1)
RHO2 = EJInt(-1, 1)


def ej_add(p: EJInt, q: EJInt) -> EJInt:
    return EJInt(p.x + q.x, p.y + q.y)


def ej_mul(p: EJInt, q: EJInt) -> EJInt:
    return EJInt(p.x * q.x - p.y * q.y, p.x * q.y + p.y * q.x + p.y * q.y)


def ej_norm(z: EJInt) -> int:
    return z.x * z.x + z.x * z.y + z.y * z.y


def hex_norm(z: EJInt) -> int:
    """Least |u| + |v| + |w| with z = u + v*rho + w*rho^2 exactly (no reduction)."""
    # u + v*rho + w*rho^2 = (u - w) + (v + w)*rho; the cost is convex in w,
    # minimised at the median of (-x, y, 0)
    w = sorted((-z.x, z.y, 0))[1]
    return abs(z.x + w) + abs(z.y - w) + abs(w)


def format_ej(z: EJInt) -> str:
    if z.y == 0:
        return str(z.x)
    r = {1: "ρ", -1: "-ρ"}.get(z.y, f"{z.y}ρ")
    if z.x == 0:
        return r
    return f"{z.x}{'' if r.startswith('-') else '+'}{r}"


@dataclass(frozen=True)
class Modulus:
    """Generator alpha = a + b*rho of EJ_alpha, with 0 <= a <= b."""

    a: int
    b: int

    def __post_init__(self):
        if not (0 <= self.a <= self.b) or self.b == 0:
            raise InvalidModulus(f"need 0 <= a <= b and alpha != 0, got a={self.a}, b={self.b}")
        n = self.a * self.a + self.b * self.b + self.a * self.b
        if n < MIN_NORM:
            raise InvalidModulus(f"N(alpha) = {n} < {MIN_NORM}: the six units are not distinct neighbours")
        if n > MAX_NORM:
            raise InvalidModulus(f"N(alpha) = {n} exceeds 2^31")

    @property
    def alpha(self) -> EJInt:
        return EJInt(self.a, self.b)

    @property
    def norm(self) -> int:
        return self.a * self.a + self.b * self.b + self.a * self.b

    @property
    def T(self) -> Fraction:
        return Fraction(self.a + self.b, 2)

    @property
    def M(self) -> Fraction:
        return Fraction(self.a + 2 * self.b, 3)

    @property
    def is_broadcast_form(self) -> bool:
        return self.b == self.a + 1

    @cached_property
    def diameter(self) -> int:
        return max(bfs_histogram(self))

    def __str__(self) -> str:
        return f"{self.a}+{self.b}ρ"


def parse_alpha(text: str) -> Modulus:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise InvalidModulus(f"expected 'a,b', got {text!r}") from None
    return Modulus(a, b)


def is_congruent(z: EJInt, w: EJInt, m: Modulus) -> bool:
    q = ej_mul(z - w, m.alpha.conj())
    return q.x % m.norm == 0 and q.y % m.norm == 0


def _canon_key(z: EJInt):
    return (hex_norm(z), z.x, z.y)


def mod_reduce(z: EJInt, m: Modulus) -> EJInt:
    """Canonical representative of z mod alpha: least hex norm, ties by (x, y)."""
    n = m.norm
    p = ej_mul(z, m.alpha.conj())
    # nearest quotient in the rho-basis, then a small neighbourhood search
    qx = (2 * p.x + n) // (2 * n)
    qy = (2 * p.y + n) // (2 * n)
    best = None
    for dx in (-2, -1, 0, 1, 2):
        for dy in (-2, -1, 0, 1, 2):
            r = z - ej_mul(EJInt(qx + dx, qy + dy), m.alpha)
            if best is None or _canon_key(r) < _canon_key(best):
                best = r
    return best


@lru_cache(maxsize=64)
def residues(m: Modulus) -> tuple[EJInt, ...]:
    """All N(alpha) canonical representatives sorted by (weight, x, y); element 0 is zero."""
    r = ceil(m.M) + 1
    seen = set()
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            seen.add(mod_reduce(EJInt(x, y), m))
    if len(seen) != m.norm:
        raise AssertionError(f"enumerated {len(seen)} residues for {m}, expected {m.norm}")
    return tuple(sorted(seen, key=_canon_key))


def weight(z: EJInt, m: Modulus) -> int:
    return hex_norm(mod_reduce(z, m))


def distance(p: EJInt, q: EJInt, m: Modulus) -> int:
    return weight(p - q, m)


def weight_distribution(m: Modulus) -> list[tuple[int, int]]:
    """Closed-form count of nodes at each distance s from node 0."""
    T, M, n = m.T, m.M, m.norm
    counts = {}
    for s in range(0, int(M) + 1):
        if s == T:
            continue
        if s == 0:
            counts[s] = 1
        elif s < T:
            counts[s] = 6 * s
        elif T < s < M:
            counts[s] = int(18 * (M - s))
        elif s == M and (m.b - m.a) % 3 == 0:
            counts[s] = 2
    if T.denominator == 1:
        counts[int(T)] = n - sum(counts.values())
    return sorted((s, c) for s, c in counts.items() if c)


_UNITS = (ONE, RHO, RHO2, -ONE, -RHO, -RHO2)


@lru_cache(maxsize=64)
def bfs_histogram(m: Modulus) -> dict[int, int]:
    """Hop-distance histogram from node 0 of EJ_alpha, by breadth-first search."""
    dist = {ZERO: 0}
    queue = deque([ZERO])
    while queue:
        u = queue.popleft()
        for e in _UNITS:
            v = mod_reduce(u + e, m)
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dict(sorted(Counter(dist.values()).items()))
