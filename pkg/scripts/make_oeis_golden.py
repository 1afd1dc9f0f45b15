#!/usr/bin/env python3
"""Write the weak-component counts of the sub-add graph for n = 1..20.

Deliberately independent of the movegraph package: coordinates are tuples and
components come from a small union-find, so the result can serve as a golden
file for ``movegraph.predictor.oeis_terms``.
"""

import argparse
import pathlib

DEFAULT_OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "subadd_components_1_20.txt"


def components(n):
    parent = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in range(n):
        for b in range(n):
            parent[(a, b)] = (a, b)
    for a in range(n):
        for b in range(n):
            ra, rb = find((a, b)), find(((a - b) % n, (a + b) % n))
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in parent})


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--out", type=pathlib.Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    # n = 1: Z_1^2 is a single vertex with a loop
    terms = [1] + [components(n) for n in range(2, args.n_max + 1)]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("".join(f"{t}\n" for t in terms), encoding="utf-8")
    print(" ".join(map(str, terms)))


if __name__ == "__main__":
    main()
