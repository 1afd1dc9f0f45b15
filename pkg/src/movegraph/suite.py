"""Exhaustive theorem checks over a budgeted parameter grid.

Each suite returns a list of check records; ``run_suite`` assembles them into a
JSON-ready report whose content depends only on its arguments.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from typing import Callable

from .algebra import ModMatrix, int_det, odd_primes, zn_order
from .graph import (
    build, decompose, has_cycle_of_length, similarity_iso_witness, tensor_iso_witness,
    verify_cycle_divisibility, verify_embedding, verify_scaling_property,
)
from .predictor import Mod8Verdict, mod8_criterion, predict, verify_prediction
from .subadd import SUBADD_ROWS, tree_report, verify_level_arcs, verify_mixed, verify_odd_n, level_partition

PERM3_ROWS = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
PRESETS = {"subadd": SUBADD_ROWS, "perm3": PERM3_ROWS}

GRID_SEED = 20230601
GRID_SIZE = 200

SIMILARITY_TRIPLES = (
    (SUBADD_ROWS, ((1, 0), (0, 1)), 5),
    (SUBADD_ROWS, ((1, 0), (1, 1)), 5),
    (SUBADD_ROWS, ((1, 0), (1, 1)), 12),
    (SUBADD_ROWS, ((2, 1), (1, 1)), 7),
    (SUBADD_ROWS, ((0, 1), (1, 0)), 8),
    (SUBADD_ROWS, ((1, 1), (1, -1)), 9),
    (SUBADD_ROWS, ((3, 1), (1, 1)), 15),
    (((2, 1), (1, 1)), ((1, 0), (1, 1)), 6),
    (((2, 1), (1, 1)), ((0, 1), (1, 0)), 10),
    (((1, -1), (2, 1)), ((1, 0), (1, 1)), 11),
    (((1, -1), (2, 1)), ((2, 1), (1, 1)), 4),
    (((1, -1), (2, 1)), ((1, 0), (0, 2)), 9),
    (((0, -1), (1, 0)), ((2, 1), (1, 1)), 13),
    (((0, -1), (1, 0)), ((1, 1), (1, -1)), 7),
    (((0, -1), (1, 0)), ((3, 1), (1, 1)), 5),
    (((2, 0), (0, 1)), ((1, 0), (1, 1)), 6),
    (((2, 0), (0, 1)), ((1, 0), (0, 3)), 8),
    (((2, 0), (0, 1)), ((2, 0), (0, 1)), 9),
    (PERM3_ROWS, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), 3),
    (PERM3_ROWS, ((1, 1, 0), (0, 1, 0), (0, 0, 1)), 4),
)

SUITES = ("cycles", "scaling", "embedding", "tensor", "similarity", "kcycle",
          "levels", "odd", "mixed", "primes")


def matrix_grid(size: int = GRID_SIZE, seed: int = GRID_SEED) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Fixed sample of 2x2 integer matrices with entries in [-2, 2], in lexicographic order."""
    everything = [((a, b), (c, d)) for a, b, c, d in itertools.product(range(-2, 3), repeat=4)]
    picks = sorted(random.Random(seed).sample(range(len(everything)), size))
    return [everything[i] for i in picks]


def _record(check: str, ok: bool, **params) -> dict:
    return {"check": check, "params": params, "ok": bool(ok)}


def check_cycles(moduli, matrices=None) -> list[dict]:
    """Zero tails and cycle lengths dividing the Z_n-order, for invertible matrices."""
    out = []
    for rows in matrices if matrices is not None else matrix_grid():
        det = int_det(rows)
        for n in moduli:
            if math.gcd(det, n) != 1:
                continue
            g = build(rows, n)
            k = zn_order(g.matrix)
            out.append(_record("cycle_divisibility", k is not None and verify_cycle_divisibility(g, k),
                               matrix=[list(r) for r in rows], n=n, k=k))
    return out


def check_scaling(n_max: int) -> list[dict]:
    out = []
    for name, rows in PRESETS.items():
        for n in range(2, n_max + 1):
            if name == "perm3" and n**3 > 50_000:
                continue
            g = build(rows, n)
            if math.gcd(g.matrix.det(), n) != 1:
                continue
            for s in range(1, n):
                if math.gcd(s, n) == 1:
                    out.append(_record("scaling", verify_scaling_property(g, s), preset=name, n=n, s=s))
    return out


def check_embedding(product_max: int, presets=("subadd", "perm3")) -> list[dict]:
    out = []
    for name in presets:
        for n1 in range(2, product_max + 1):
            for n2 in range(1, product_max // n1 + 1):
                out.append(_record("embedding", verify_embedding(PRESETS[name], n1, n2),
                                   preset=name, n1=n1, n2=n2))
    return out


def check_tensor(product_max: int, presets=("subadd", "perm3")) -> list[dict]:
    out = []
    for name in presets:
        for n1 in range(2, product_max + 1):
            for n2 in range(2, product_max // n1 + 1):
                if math.gcd(n1, n2) != 1:
                    continue
                witness = tensor_iso_witness(PRESETS[name], n1, n2)
                same = decompose(witness.domain_graph).spectrum == decompose(witness.codomain_graph).spectrum
                out.append(_record("tensor", witness.validate() and same, preset=name, n1=n1, n2=n2))
    return out


def check_similarity(triples=SIMILARITY_TRIPLES) -> list[dict]:
    out = []
    for M1, S, n in triples:
        witness = similarity_iso_witness(M1, S, n)
        out.append(_record("similarity", witness.validate(), M1=[list(r) for r in M1],
                           S=[list(r) for r in S], n=n, M2=witness.extra["M2"]))
    return out


def check_kcycle(p_max: int, matrices=None) -> list[dict]:
    """A cycle of length exactly k = Z_p-order exists for every prime p."""
    out = []
    primes = [2] + odd_primes(p_max)
    for rows in matrices if matrices is not None else matrix_grid()[::10]:
        for p in primes:
            k = zn_order(ModMatrix.of(rows, p))
            if k is None:
                continue
            out.append(_record("k_cycle", has_cycle_of_length(build(rows, p), k),
                               matrix=[list(r) for r in rows], p=p, k=k))
    return out


def check_levels(r_max: int) -> list[dict]:
    out = []
    for r in range(1, r_max + 1):
        sizes = level_partition(r).sizes()
        expected = [2 ** (2 * r - i - 1) for i in range(2 * r)] + [1]
        report = tree_report(r)
        root = (2 ** (r - 1), 2 ** (r - 1))
        ok = (
            sizes == expected and verify_level_arcs(r) and report.is_inverted_pbt
            and report.depth == 2 * r - 1 and report.root == root
            and report.closing_arcs == ((root, (0, 0)), ((0, 0), (0, 0)))
        )
        out.append(_record("levels", ok, r=r, depth=report.depth, closed_form_depth=report.closed_form_depth))
    return out


def check_odd(n_max: int) -> list[dict]:
    out = []
    for n in range(3, n_max + 1, 2):
        rep = verify_odd_n(n)
        out.append(_record("odd_n", rep.all_cycles and rep.max_divisor_ok, n=n, k=rep.k))
    return out


def check_mixed(n_max: int) -> list[dict]:
    out = []
    for n1 in range(3, n_max + 1, 2):
        k = 1
        while n1 * 2**k <= n_max:
            rep = verify_mixed(n1, k)
            ok = rep.copies_found == n1 * n1 and rep.disjoint_cover and rep.component_match
            out.append(_record("mixed", ok, n1=n1, k=k, copies=rep.copies_found, components=rep.components))
            k += 1
    return out


def check_primes(p_max: int) -> list[dict]:
    out = []
    for p in odd_primes(p_max):
        pred = predict(p)
        verdict = mod8_criterion(p)
        mod8_ok = (
            verdict is Mod8Verdict.UNDETERMINED
            or pred.secondary_exists == (verdict is Mod8Verdict.EXISTS_GUARANTEED)
        )
        ok = (
            verify_prediction(p) and pred.secondary_exists == (pred.k % 8 != 0) and mod8_ok
            and pred.s in (pred.t, 2 * pred.t, 4 * pred.t)
        )
        out.append(_record("prime_prediction", ok, p=p, case=pred.case_label, s=pred.s, k=pred.k))
    return out


def _suite_table(n_max: int) -> dict[str, Callable[[], list[dict]]]:
    r_max = max(1, int(math.log2(max(n_max, 2))))
    return {
        "cycles": lambda: check_cycles([n for n in range(2, n_max + 1)]),
        "scaling": lambda: check_scaling(n_max),
        "embedding": lambda: check_embedding(n_max),
        "tensor": lambda: check_tensor(n_max),
        "similarity": lambda: check_similarity(),
        "kcycle": lambda: check_kcycle(n_max),
        "levels": lambda: check_levels(r_max),
        "odd": lambda: check_odd(n_max),
        "mixed": lambda: check_mixed(n_max),
        "primes": lambda: check_primes(n_max),
    }


def run_suite(suite: str = "all", n_max: int = 12) -> dict:
    table = _suite_table(n_max)
    names = SUITES if suite == "all" else (suite,)
    unknown = [s for s in names if s not in table]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; choose from all, {', '.join(SUITES)}")
    sections = {}
    for name in names:
        checks = table[name]()
        sections[name] = {"passed": all(c["ok"] for c in checks), "count": len(checks), "checks": checks}
    return {
        "suite": suite,
        "n_max": n_max,
        "passed": all(sec["passed"] for sec in sections.values()),
        "sections": sections,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=1) + "\n"
