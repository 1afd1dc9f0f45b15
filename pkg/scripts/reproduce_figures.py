#!/usr/bin/env python3
"""Print the small worked graphs: spectra, component counts and the level tree for small r."""

import argparse

from movegraph import build, decompose, tree_report, weak_components
from movegraph.subadd import SUBADD_ROWS, level_partition
from movegraph.suite import PERM3_ROWS


def describe(name, rows, n):
    g = build(rows, n)
    dec = decompose(g)
    count, _ = weak_components(g)
    lengths = ", ".join(f"{length}:{c}" for length, c in dec.spectrum.items())
    print(f"{name:7s} n={n:<3d} |V|={g.order:<5d} components={count:<3d} tails={dec.tail_vertices:<4d} spectrum {{{lengths}}}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=4)
    args = ap.parse_args()

    for n in (3, 4, 5, 6, 8):
        describe("subadd", SUBADD_ROWS, n)
    describe("perm3", PERM3_ROWS, 3)

    print()
    for r in range(1, args.r_max + 1):
        rep = tree_report(r)
        sizes = level_partition(r).sizes()
        print(f"r={r} levels={sizes} root={rep.root} depth={rep.depth} pbt={rep.is_inverted_pbt}"
              f" (2^r-1 = {rep.closed_form_depth})")


if __name__ == "__main__":
    main()
