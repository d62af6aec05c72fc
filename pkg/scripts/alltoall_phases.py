"""Trace the three-phase all-to-all broadcast and show how holdings grow per phase.

    python scripts/alltoall_phases.py --alpha 2,3 --dims 2
"""

import argparse

from ejnet.alltoall import PHASE_SECTORS, run_all_to_all, verify_half_duplex
from ejnet.ejint import Modulus
from ejnet.topology import build_network


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--alpha", default="2,3")
    p.add_argument("--dims", type=int, default=2)
    args = p.parse_args()

    net = build_network(Modulus(*map(int, args.alpha.split(","))), args.dims)
    tr = run_all_to_all(net)
    print(f"{net.node_count} nodes, {len(tr.steps)} steps")
    print("phase  sectors  reach  mean origins held")
    for ph in (1, 2, 3):
        held = tr.phase_holdings[ph - 1].sum(axis=1).mean() - 1
        print(f"{ph:>5}  {PHASE_SECTORS[ph]!s:>7}  {tr.phase_reach[ph].size:>5}  {held:.2f}")
    print("step  phase  links  deliveries")
    for s in tr.steps:
        print(f"{s.global_step:>4}  {s.phase:>5}  {s.links:>5}  {s.deliveries:>10}")
    rep = verify_half_duplex(tr)
    print("half-duplex:", "OK" if rep else rep.violation)


if __name__ == "__main__":
    main()
