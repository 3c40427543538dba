"""Search hyperoctahedral groups for a product of fibers that shows one
statistic spans a left ideal but not a two-sided one."""
from __future__ import annotations

import argparse
import json

from descalg.group_algebra import search_left_ideal_witness
from descalg.perm_core import GroupDescriptor


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ideal", default="desA", help="statistic whose fibers span the ideal")
    parser.add_argument("--other", default="ades", help="statistic multiplied on the left")
    parser.add_argument("--max-n", type=int, default=3)
    args = parser.parse_args()
    for n in range(1, args.max_n + 1):
        w = search_left_ideal_witness(GroupDescriptor.hyperoctahedral(n), args.ideal, args.other)
        print(f"B{n}: " + (json.dumps(w) if w else "no witness"))
        if w:
            break


if __name__ == "__main__":
    main()
