"""Regenerate the three traffic tables for EJ_{3+4rho} as CSV files.

    python scripts/reproduce_tables.py --out results/

table1.csv  previous one-to-all on the 3-D network (simulated)
table2.csv  improved one-to-all on the 3-D network (simulated)
table3.csv  total senders for n = 1..6 (closed form; 5-D and 6-D are too big to simulate)
"""

import argparse
from pathlib import Path

from ejnet.analytics import table3
from ejnet.broadcast import mean_receive_step, run_one_to_all
from ejnet.ejint import Modulus
from ejnet.report import decimal_str, rows_from_trace, step_columns, to_csv
from ejnet.topology import build_network


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--alpha", default="3,4")
    p.add_argument("--dims", type=int, default=3, help="dimension count for tables 1 and 2")
    p.add_argument("--out", type=Path, default=Path("results"))
    args = p.parse_args()

    m = Modulus(*map(int, args.alpha.split(",")))
    args.out.mkdir(parents=True, exist_ok=True)
    net = build_network(m, args.dims)
    for name, algo in (("table1", "previous"), ("table2", "improved")):
        trace = run_one_to_all(net, algo)
        path = args.out / f"{name}.csv"
        path.write_text(to_csv(rows_from_trace(trace), step_columns(algo == "previous")), encoding="utf-8")
        print(f"{path}: {algo}, {len(trace.steps)} steps, {trace.total_senders} senders, "
              f"mean receive step {decimal_str(mean_receive_step(trace), 4)}")

    rows = [{**r, "ratio": decimal_str(r["ratio"])} for r in table3(m, range(1, 7))]
    path = args.out / "table3.csv"
    path.write_text(to_csv(rows, ("n", "previous", "improved", "difference", "ratio")), encoding="utf-8")
    print(f"{path}: 6-D ratio {rows[-1]['ratio']}")


if __name__ == "__main__":
    main()
