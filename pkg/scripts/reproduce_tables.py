"""Print the colored Eulerian tables C3 and C4, optionally as CSV."""
from __future__ import annotations

import argparse

from descalg.identity_lab import TABLES, table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", action="store_true", help="emit CSV instead of text")
    parser.add_argument("--max-n", type=int, default=4, help="largest n to tabulate")
    args = parser.parse_args()
    for name in TABLES:
        t = table(name, range(1, args.max_n + 1))
        print(f"# {name}")
        print(t.to_csv() if args.csv else t.to_text() + "\n")


if __name__ == "__main__":
    main()
