#!/usr/bin/env python3
"""Best-found table for odd tori.

The argyle construction pins the asymptotic rate at n^2/12, but for
small odd n the swap search beats it.  This sweep runs the search with a
fixed per-size budget and prints both numbers side by side; -v also
writes each winning board to a file.
"""

import argparse
import sys
import time

from peaceable import boardfile
from peaceable.battle import counts
from peaceable.board import make_board
from peaceable.constructions import argyle
from peaceable.swap_search import SearchConfig, run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=13)
    parser.add_argument("--max-n", type=int, default=63)
    parser.add_argument("--budget", type=float, default=10.0,
                        help="seconds of search per board size")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-v", "--save-boards", action="store_true",
                        help="write each best board to odd_torus_<n>.board")
    args = parser.parse_args(argv)

    lo = args.min_n + (args.min_n % 2 == 0)
    print(f"{'n':>4} {'argyle':>7} {'search':>7} {'n^2/12':>8} {'time':>6}")
    for n in range(lo, args.max_n + 1, 2):
        board = make_board(n, "torus")
        base = counts(argyle(n)).min
        t0 = time.monotonic()
        result = run(SearchConfig(
            board=board,
            target=n * n,  # unreachable on purpose: spend the whole budget
            seed=args.seed,
            time_budget=args.budget,
        ))
        found = counts(result.battle).min
        print(f"{n:>4} {base:>7} {found:>7} {n * n / 12:>8.1f} "
              f"{time.monotonic() - t0:>5.1f}s")
        if args.save_boards:
            boardfile.save(result.battle, f"odd_torus_{n}.board")
    return 0


if __name__ == "__main__":
    sys.exit(main())
