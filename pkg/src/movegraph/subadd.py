"""Structure of the sub-add move graph, M = [[1, -1], [1, 1]], (a, b) -> (a - b, a + b).

For n = 2^r the graph is a levelled in-tree draining into the fixed point
(0, 0); for odd n it is a union of cycles; for n = n1 * 2^k it is built from
n1^2 pieces shaped like the 2^k graph hung on the cycles of the n1 graph.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from . import config
from .algebra import ModMatrix, check_modulus, euler_phi, zn_order
from .errors import CapacityError, DomainError
from .graph import MoveGraph, build, decode, decode_all, decompose, encode_all, weak_components

SUBADD_ROWS = ((1, -1), (1, 1))


def subadd_matrix(n: int) -> ModMatrix:
    return ModMatrix.of(SUBADD_ROWS, check_modulus(n))


def _check_r(r: int, max_r: int | None) -> None:
    limit = config.DEFAULT_MAX_LEVEL_R if max_r is None else max_r
    if r < 1:
        raise DomainError("r must be >= 1")
    if r > limit:
        raise CapacityError(f"r = {r} exceeds the level budget r <= {limit}")


def _two_adic(values: np.ndarray, r: int) -> np.ndarray:
    """v_2 of each residue mod 2^r, with v_2(0) = r."""
    low = values & -values
    out = np.full(values.shape, r, dtype=np.int64)
    nz = values != 0
    out[nz] = np.log2(low[nz]).astype(np.int64)
    return out


def level_array(r: int) -> np.ndarray:
    """Level index i (vertex in P_i) for every vertex of Z_{2^r}^2."""
    n = 2**r
    a, b = decode_all(n, 2)
    t = np.minimum(_two_adic(a, r), _two_adic(b, r))
    both_odd = ((a >> np.minimum(t, r - 1)) & 1) & ((b >> np.minimum(t, r - 1)) & 1)
    levels = 2 * t + both_odd
    levels[t == r] = 2 * r
    return levels


@dataclass(frozen=True, eq=False)
class LevelPartition:
    r: int
    levels: list[np.ndarray]

    def sizes(self) -> list[int]:
        return [int(p.shape[0]) for p in self.levels]

    def to_dict(self) -> dict:
        return {"r": self.r, "sizes": self.sizes(), "levels": [p.tolist() for p in self.levels]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def level_partition(r: int, *, max_r: int | None = None) -> LevelPartition:
    _check_r(r, max_r)
    lvl = level_array(r)
    # stable argsort keeps each level's vertex ids ascending
    order = np.argsort(lvl, kind="stable")
    bounds = np.searchsorted(lvl[order], np.arange(2 * r + 2))
    levels = [order[bounds[i]:bounds[i + 1]] for i in range(2 * r + 1)]
    return LevelPartition(r, levels)


def verify_level_arcs(r: int, *, max_r: int | None = None) -> bool:
    """Child advances one level; P_0 is exactly the parentless set; in-degree 2 above P_0
    (checked for r > 1); the parents of (0, 0) are itself and one vertex of P_{2r-1}."""
    _check_r(r, max_r)
    g = build(SUBADD_ROWS, 2**r)
    lvl = level_array(r)
    succ = g.successor
    indeg = g.in_degree()
    top = 2 * r

    inner = lvl < top
    advances = bool(np.all(lvl[succ[inner]] == lvl[inner] + 1)) and int(succ[0]) == 0
    parentless = bool(np.array_equal(indeg == 0, lvl == 0))
    two_parents = True
    if r > 1:
        two_parents = bool(np.all(indeg[lvl >= 1] == 2))
    zero_parents = np.flatnonzero(succ == 0)
    others = zero_parents[zero_parents != 0]
    zero_ok = (
        zero_parents.shape[0] == 2
        and 0 in zero_parents
        and others.shape[0] == 1
        and int(lvl[others[0]]) == top - 1
    )
    return advances and parentless and two_parents and zero_ok


@dataclass(frozen=True)
class TreeReport:
    r: int
    depth: int
    is_inverted_pbt: bool
    leaf_level_uniform: bool
    root_vertex: int
    root: tuple[int, int]
    tree_vertices: int
    tree_arcs: int
    closing_arcs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    # 2^r - 1 is sometimes quoted for the depth; it agrees with 2r - 1 only for r <= 2
    closed_form_depth: int
    closed_form_mismatch: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["root"] = list(self.root)
        d["closing_arcs"] = [[list(u), list(v)] for u, v in self.closing_arcs]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def tree_report(r: int, *, max_r: int | None = None) -> TreeReport:
    """Measure the in-tree on V minus (0, 0) directly from the graph."""
    _check_r(r, max_r)
    n = 2**r
    g = build(SUBADD_ROWS, n)
    succ = g.successor
    size = g.order

    in_tree = np.ones(size, dtype=bool)
    in_tree[0] = False
    childless = np.flatnonzero(in_tree & (succ == 0))
    tree_succ_ok = in_tree[succ] | (succ == 0)
    tree_arcs = int(np.count_nonzero(in_tree & (succ != 0)))
    indeg = np.bincount(succ[in_tree & (succ != 0)], minlength=size)

    root = int(childless[0]) if childless.shape[0] == 1 else -1
    dist = np.full(size, -1, dtype=np.int64)
    depth = 0
    if root >= 0:
        dist[root] = 0
        frontier = np.array([root], dtype=np.int64)
        while frontier.shape[0]:
            parents = np.flatnonzero(in_tree & np.isin(succ, frontier) & (dist < 0))
            if not parents.shape[0]:
                break
            depth += 1
            dist[parents] = depth
            frontier = parents
    tree_ids = np.flatnonzero(in_tree)
    reaches_root = root >= 0 and bool(np.all(dist[tree_ids] >= 0))
    leaves = tree_ids[indeg[tree_ids] == 0]
    uniform = bool(leaves.shape[0] > 0 and np.all(dist[leaves] == depth))
    binary = bool(np.all(np.isin(indeg[tree_ids], (0, 2))))
    count = int(tree_ids.shape[0])
    pbt = (
        root >= 0 and reaches_root and uniform and binary and bool(np.all(tree_succ_ok))
        and count == 2 ** (depth + 1) - 1 and tree_arcs == count - 1
    )
    root_xy = decode(root, n, 2) if root >= 0 else (-1, -1)
    closing = []
    if root >= 0 and int(succ[root]) == 0:
        closing.append((root_xy, (0, 0)))
    if int(succ[0]) == 0:
        closing.append(((0, 0), (0, 0)))
    closed_form = 2**r - 1
    return TreeReport(
        r=r, depth=depth, is_inverted_pbt=pbt, leaf_level_uniform=uniform,
        root_vertex=root, root=root_xy, tree_vertices=count, tree_arcs=tree_arcs,
        closing_arcs=tuple(closing), closed_form_depth=closed_form,
        closed_form_mismatch=closed_form != depth,
    )


@dataclass(frozen=True)
class OddReport:
    n: int
    all_cycles: bool
    max_divisor_ok: bool
    k: int


def verify_odd_n(n: int) -> OddReport:
    if n < 3 or n % 2 == 0:
        raise DomainError(f"expected odd n >= 3, got {n}")
    g = build(SUBADD_ROWS, n)
    decomp = decompose(g)
    bound = 4 * euler_phi(n)
    k = zn_order(g.matrix)
    return OddReport(
        n=n,
        all_cycles=decomp.tail_vertices == 0,
        max_divisor_ok=all(bound % ell == 0 for ell in decomp.spectrum),
        k=k,
    )


@dataclass(frozen=True)
class MixedReport:
    n1: int
    k: int
    copies_found: int
    expected_copies: int
    disjoint_cover: bool
    components: int
    components_odd: int
    component_match: bool


def _copy_anchors(odd: MoveGraph, tree: MoveGraph) -> np.ndarray:
    """Vertices of Gamma_{n1} x Gamma_{2^k} grouped into one row per anchor z.

    Row z holds the pairs (M^-d(y) z, y) for y in V2, where d(y) is the number
    of steps from y down to (0, 0); column order follows the y index.
    """
    depth = decompose(tree).tail_length
    inverse = np.empty_like(odd.successor)
    inverse[odd.successor] = np.arange(odd.order, dtype=np.int64)
    steps = [np.arange(odd.order, dtype=np.int64)]
    for _ in range(int(depth.max(initial=0))):
        steps.append(inverse[steps[-1]])
    back = np.stack(steps)  # back[d, z] = M^-d z
    return back[depth].T


def verify_mixed(n1: int, k: int, *, budget: int | None = None) -> MixedReport:
    """Locate the n1^2 vertex-disjoint pieces of Gamma_{n1 2^k} shaped like Gamma_{2^k}.

    Pieces are read off the tensor isomorphism f(x, y) = n1*y + n2*x. The piece
    anchored at z in Gamma_{n1} is {f(M^-d(y) z, y)}; it reproduces every arc of
    Gamma_{2^k} except the loop at (0, 0), which becomes the arc to the piece
    anchored at M z (a true loop only when z = 0).
    """
    if n1 < 3 or n1 % 2 == 0:
        raise DomainError(f"expected odd n1 >= 3, got {n1}")
    if k < 1:
        raise DomainError("k must be >= 1")
    n2 = 2**k
    n = n1 * n2
    odd = build(SUBADD_ROWS, n1, budget=budget)
    tree = build(SUBADD_ROWS, n2, budget=budget)
    big = build(SUBADD_ROWS, n, budget=budget)

    xs = _copy_anchors(odd, tree)  # (|V1|, |V2|) indices into V1
    x_coords = decode_all(n1, 2)
    y_coords = decode_all(n2, 2)
    pieces = np.empty_like(xs)
    for z in range(odd.order):
        pieces[z] = encode_all((n1 * y_coords + n2 * x_coords[:, xs[z]]) % n, n)

    disjoint = np.unique(pieces).shape[0] == big.order == pieces.size
    nonzero = np.arange(tree.order) != 0
    found = 0
    for z in range(odd.order):
        phi = pieces[z]
        arcs_ok = np.array_equal(big.successor[phi[nonzero]], phi[tree.successor[nonzero]])
        root_ok = int(big.successor[phi[0]]) == int(pieces[odd.successor[z], 0])
        found += bool(arcs_ok and root_ok)
    comp_big, _ = weak_components(big)
    comp_odd, _ = weak_components(odd)
    return MixedReport(
        n1=n1, k=k, copies_found=found, expected_copies=n1 * n1,
        disjoint_cover=bool(disjoint), components=comp_big, components_odd=comp_odd,
        component_match=comp_big == comp_odd,
    )
