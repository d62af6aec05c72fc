"""CSV / JSON serialisation of traces and analytic rows."""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import numpy as np

from .topology import UNIT_NAMES

STEP_COLUMNS = ("step", "free", "sending", "receiving", "active")


def step_columns(with_round: bool):
    return (("round",) if with_round else ()) + STEP_COLUMNS


def rows_from_trace(trace) -> list[dict]:
    return [
        {"round": s.round, "step": s.step, "free": s.free, "sending": s.sending,
         "receiving": s.receiving, "active": s.active}
        for s in trace.steps
    ]


def rows_from_analytic(rows, node_count: int) -> list[dict]:
    return [
        {"round": r.round, "step": r.step, "free": node_count - r.senders - r.receivers,
         "sending": r.senders, "receiving": r.receivers, "active": r.senders + r.receivers}
        for r in rows
    ]


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return fraction_json(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def fraction_json(q: Fraction, places: int = 9) -> dict:
    return {"num": q.numerator, "den": q.denominator, "value": decimal_str(q, places)}


def decimal_str(q: Fraction, places: int = 9) -> str:
    d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def link_use_summary(trace) -> dict:
    per_step = [len(u) for u in trace.link_uses]
    per_label = {}
    for u in trace.link_uses:
        if len(u) == 0:
            continue
        labels, counts = np.unique(np.asarray(u.dim, np.int64) * 6 + u.unit, return_counts=True)
        for lab, c in zip(labels.tolist(), counts.tolist()):
            key = f"d{lab // 6}{UNIT_NAMES[lab % 6]}"
            per_label[key] = per_label.get(key, 0) + c
    return {"total": sum(per_step), "per_step": per_step, "per_label": dict(sorted(per_label.items()))}
