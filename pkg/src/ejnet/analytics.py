"""Per-step sender/receiver counts without simulation.

The improved broadcast is counted by rewriting a multiset of terms. O2A(k)
stands for a node starting broadcasts on dimensions 1..k, and S(k, x, y) for a
sector packet on dimension k with counters x, y. Every S-term alive at a step is
one receiver, and every S-term that still has work is one sender at the next step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .ejint import Modulus
from .topology import require_broadcast_form


@dataclass(frozen=True)
class AnalyticStepRow:
    step: int
    senders: int
    receivers: int
    round: int | None = None


def analytic_prev(m: Modulus, n: int) -> list[AnalyticStepRow]:
    require_broadcast_form(m)
    _check_dims(n)
    N, M = m.norm, m.diameter
    rows = []
    for r in range(1, n + 1):
        roots = N ** (r - 1)
        for d in range(1, M + 1):
            # step 1 of a round: every root sends (one sender each, six links)
            senders = roots if d == 1 else 6 * (d - 1) * roots
            rows.append(AnalyticStepRow((r - 1) * M + d, senders, 6 * d * roots, r))
    return rows


def unroll_o2a(k: int, M: int) -> Counter:
    """S-terms produced by O2A(k) within a single step."""
    return Counter({(j, M - 1, M - 1): 6 for j in range(1, k + 1)})


def expand_term(term, M: int) -> Counter:
    k, x, y = term
    out = Counter()
    if x > 0:
        out[(k, x - 1, 0)] += 1
    if y > 0:
        out[(k, x - 1, y - 1)] += 1
    if k > 1:
        out.update(unroll_o2a(k - 1, M))
    return out


def o2a_terms(m: Modulus, n: int) -> list[Counter]:
    """Multiset of S-terms created at each step, keyed by (k, x, y)."""
    require_broadcast_form(m)
    _check_dims(n)
    M = m.diameter
    steps = [unroll_o2a(n, M)]
    while True:
        nxt = Counter()
        for term, c in steps[-1].items():
            for child, cc in expand_term(term, M).items():
                nxt[child] += c * cc
        if not nxt:
            return steps
        steps.append(nxt)


def expand_o2a(m: Modulus, n: int) -> list[AnalyticStepRow]:
    steps = o2a_terms(m, n)
    rows = []
    for i, terms in enumerate(steps, start=1):
        if i == 1:
            senders = 1
        else:
            senders = sum(c for t, c in steps[i - 2].items() if t != (1, 0, 0))
        rows.append(AnalyticStepRow(i, senders, sum(terms.values())))
    return rows


def analytic_rows(m: Modulus, n: int, algorithm: str) -> list[AnalyticStepRow]:
    if algorithm == "previous":
        return analytic_prev(m, n)
    if algorithm == "improved":
        return expand_o2a(m, n)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def total_senders(m: Modulus, n: int, algorithm: str) -> int:
    return sum(r.senders for r in analytic_rows(m, n, algorithm))


def sender_ratio(m: Modulus, n: int) -> Fraction:
    return Fraction(total_senders(m, n, "previous"), total_senders(m, n, "improved"))


def mean_receive_step(rows: list[AnalyticStepRow]) -> Fraction:
    return Fraction(sum(r.step * r.receivers for r in rows), sum(r.receivers for r in rows))


def table3(m: Modulus, dims) -> list[dict]:
    out = []
    for n in dims:
        prev = total_senders(m, n, "previous")
        imp = total_senders(m, n, "improved")
        out.append({"n": n, "previous": prev, "improved": imp,
                    "difference": prev - imp, "ratio": Fraction(prev, imp)})
    return out


def _check_dims(n):
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
