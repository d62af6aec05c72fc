"""Per-step averages over networks that all need the same number of broadcast steps.

Writes plot-ready CSV (one row per step, previous vs improved senders/receivers/active).
Members too large to simulate fall back to the closed-form rows.

    python scripts/equal_step_family.py                   # default 12-step family
    python scripts/equal_step_family.py 2,3:3 3,4:2       # a 6-step family
"""

import argparse
import sys

from ejnet.cli import compare_family
from ejnet.config import EQUAL_STEP_FAMILY
from ejnet.report import to_csv


def member(text):
    ab, _, n = text.partition(":")
    a, b = map(int, ab.split(","))
    return a, b, int(n)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("members", nargs="*", type=member, help="a,b:n")
    p.add_argument("--out", default=None)
    args = p.parse_args()

    doc = compare_family(args.members or list(EQUAL_STEP_FAMILY))
    cols = ["step"] + [f"{a}_{c}" for a in ("previous", "improved") for c in ("sending", "receiving", "active")]
    text = to_csv(doc["averages"], cols)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    for mbr in doc["members"]:
        a, b = mbr["alpha"]
        prev, imp = mbr["previous"], mbr["improved"]
        print(f"# {a}+{b}rho^({mbr['dims']}) [{prev['source']}]: mean receive step "
              f"{prev['mean_receive_step']['value']} -> {imp['mean_receive_step']['value']}", file=sys.stderr)


if __name__ == "__main__":
    main()
