"""Region count growth on the nested-square worst case.

gen_worst_case(n) builds n squares arranged so that every pair of
boundaries crosses: the arrangement then has exactly n^2 - n + 2 faces
and the deepest point lies under all n squares. This script measures the
merged region count r, the emitted label count k, and the depth lambda
for growing n, and checks them against the closed forms. It also shows
why the grid baseline struggles here: its cell count m grows like
(2n+1)^2 while CREST's k stays within a constant factor of r.
"""

from __future__ import annotations

from rnnheat.bench import gen_worst_case
from rnnheat.regions import region_count_from_tiling
from rnnheat.sweep import run_crest

SIZES = (2, 4, 8, 12, 16, 24, 32)


def main() -> None:
    print(f"{'n':>4}{'r':>8}{'n^2-n+2':>9}{'k':>8}{'k/r':>7}"
          f"{'lambda':>8}{'m=(2n+1)^2':>12}")
    for n in SIZES:
        circles = gen_worst_case(n)
        res = run_crest(circles, tiling=True)
        r = region_count_from_tiling(res.tiles)
        expect = n * n - n + 2
        flag = "" if r == expect else "   MISMATCH"
        print(f"{n:>4}{r:>8}{expect:>9}{res.k:>8}{res.k / r:>7.2f}"
              f"{res.lam:>8}{(2 * n + 1) ** 2:>12}{flag}")
        assert r == expect and res.lam == n
    print("\nk tracks r (the emitted labels stay within a small constant")
    print("of the true region count) while the baseline's grid is forced")
    print("to m cells regardless of how many regions actually exist.")


if __name__ == "__main__":
    main()
