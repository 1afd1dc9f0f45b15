"""Move graphs: the functional graph x -> M x (mod n) on Z_n^m.

Vertices are encoded little-endian mixed radix: x = (x_1, ..., x_m) has index
x_1 + x_2 n + ... + x_m n^(m-1). Successor arrays are int64 numpy arrays.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import config
from .algebra import ModMatrix, check_modulus, int_adjugate, int_det, int_matmul, zn_order
from .errors import CapacityError, ContractError, DomainError, InvariantError

MatrixLike = Union[ModMatrix, Sequence[Sequence[int]]]


def _rows(matrix: MatrixLike) -> list[list[int]]:
    if isinstance(matrix, ModMatrix):
        return matrix.tolist()
    rows = [[int(e) for e in row] for row in matrix]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ContractError("move matrix must be square with dimension >= 1")
    return rows


def _check_budget(n: int, m: int, budget: int | None) -> int:
    limit = config.size_budget(budget)
    # avoid materialising n**m when it is enormous
    if m * math.log10(n) > math.log10(limit) + 1e-9 or n**m > limit:
        raise CapacityError(f"{n}^{m} vertices exceeds the size budget of {limit}")
    return n**m


def encode(coords: Sequence[int], n: int) -> int:
    index = 0
    for c in reversed(coords):
        index = index * n + int(c) % n
    return index


def decode(index: int, n: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        index, c = divmod(index, n)
        out.append(c)
    return tuple(out)


def decode_all(n: int, m: int) -> np.ndarray:
    """Coordinates of every vertex, shape (m, n**m)."""
    idx = np.arange(n**m, dtype=np.int64)
    coords = np.empty((m, n**m), dtype=np.int64)
    for i in range(m):
        idx, coords[i] = np.divmod(idx, n)
    return coords


def encode_all(coords: np.ndarray, n: int) -> np.ndarray:
    m = coords.shape[0]
    index = np.zeros(coords.shape[1], dtype=np.int64)
    for i in reversed(range(m)):
        index = index * n + coords[i]
    return index


def apply_rows(rows: Sequence[Sequence[int]], coords: np.ndarray, n: int) -> np.ndarray:
    """Row-wise M x mod n for a batch of coordinate columns."""
    out = np.zeros_like(coords)
    for j, row in enumerate(rows):
        acc = np.zeros(coords.shape[1], dtype=np.int64)
        for i, e in enumerate(row):
            e %= n
            if e:
                acc = (acc + e * coords[i]) % n
        out[j] = acc
    return out


@dataclass(frozen=True, eq=False)
class MoveGraph:
    n: int
    m: int
    matrix: ModMatrix
    successor: np.ndarray

    @property
    def order(self) -> int:
        return self.successor.shape[0]

    def label(self, v: int) -> str:
        return "(" + ",".join(map(str, decode(v, self.n, self.m))) + ")"

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.successor, minlength=self.order)

    def to_json(self) -> str:
        decomp = decompose(self)
        doc = {
            "n": self.n,
            "m": self.m,
            "matrix": self.matrix.tolist(),
            "successor": self.successor.tolist(),
            "spectrum": spectrum_json(decomp.spectrum),
        }
        return json.dumps(doc, separators=(",", ":")) + "\n"

    def to_dot(self) -> str:
        lines = [f"digraph move_graph_n{self.n}_m{self.m} {{"]
        for v, w in enumerate(self.successor.tolist()):
            lines.append(f'  "{self.label(v)}" -> "{self.label(w)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class ProductGraph:
    """Tensor product of two functional graphs; vertex (u, w) has index u + |V1| w."""

    left: MoveGraph
    right: MoveGraph
    successor: np.ndarray

    @property
    def order(self) -> int:
        return self.successor.shape[0]


def build(matrix: MatrixLike, n: int | None = None, *, budget: int | None = None) -> MoveGraph:
    if isinstance(matrix, ModMatrix):
        if n is None:
            n = matrix.modulus
        elif n != matrix.modulus:
            raise ContractError(f"matrix is reduced mod {matrix.modulus}, not mod {n}")
    if n is None:
        raise ContractError("modulus required for an integer matrix")
    check_modulus(n)
    rows = _rows(matrix)
    m = len(rows)
    _check_budget(n, m, budget)
    mod_matrix = ModMatrix.of(rows, n)
    coords = decode_all(n, m)
    successor = encode_all(apply_rows(mod_matrix.entries, coords, n), n)
    successor.setflags(write=False)
    return MoveGraph(n, m, mod_matrix, successor)


def tensor_product(g1: MoveGraph, g2: MoveGraph) -> ProductGraph:
    n1 = g1.order
    u = np.arange(n1 * g2.order, dtype=np.int64)
    left, right = u % n1, u // n1
    successor = g1.successor[left] + n1 * g2.successor[right]
    return ProductGraph(g1, g2, successor)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Cycles and in-trees of a functional graph.

    ``cycle_of[v]`` indexes ``cycles``; cycles are listed in successor order,
    rotated so the smallest vertex leads, and sorted by that leader.
    """

    cycles: list[list[int]]
    tail_length: np.ndarray
    cycle_of: np.ndarray
    spectrum: dict[int, int]

    @property
    def cycle_lengths(self) -> np.ndarray:
        return np.array([len(c) for c in self.cycles], dtype=np.int64)

    def length_at(self) -> np.ndarray:
        """Length of the cycle each vertex's trajectory enters."""
        return self.cycle_lengths[self.cycle_of]

    @property
    def tail_vertices(self) -> int:
        return int(np.count_nonzero(self.tail_length))

    @property
    def on_cycle(self) -> int:
        return sum(len(c) for c in self.cycles)


def _successor_list(g) -> list[int]:
    succ = g.successor if hasattr(g, "successor") else g
    return np.asarray(succ, dtype=np.int64).tolist()


def decompose(g) -> Decomposition:
    """Iterative three-state walk; O(V) time, no recursion.

    Accepts a MoveGraph, a ProductGraph, or a bare successor array.
    """
    succ = _successor_list(g)
    size = len(succ)
    UNSEEN, ACTIVE, DONE = 0, 1, 2
    state = [UNSEEN] * size
    tail = [0] * size
    cyc = [-1] * size
    raw_cycles: list[list[int]] = []

    for start in range(size):
        if state[start] != UNSEEN:
            continue
        path = []
        v = start
        while state[v] == UNSEEN:
            state[v] = ACTIVE
            path.append(v)
            v = succ[v]
        if state[v] == ACTIVE:
            # closed a new cycle; it begins where v first appears on the path
            pos = path.index(v)
            members = path[pos:]
            cid = len(raw_cycles)
            raw_cycles.append(members)
            for w in members:
                state[w] = DONE
                cyc[w] = cid
            del path[pos:]
        # remaining path vertices hang off a settled vertex v
        base_tail, base_cyc = tail[v], cyc[v]
        for depth, w in enumerate(reversed(path), start=1):
            state[w] = DONE
            tail[w] = base_tail + depth
            cyc[w] = base_cyc

    canonical = []
    for members in raw_cycles:
        lead = members.index(min(members))
        canonical.append(members[lead:] + members[:lead])
    order = sorted(range(len(canonical)), key=lambda i: canonical[i][0])
    remap = np.empty(len(canonical), dtype=np.int64)
    remap[order] = np.arange(len(canonical), dtype=np.int64)
    cycles = [canonical[i] for i in order]
    cycle_of = remap[np.asarray(cyc, dtype=np.int64)] if size else np.zeros(0, dtype=np.int64)
    spectrum = dict(sorted(Counter(len(c) for c in cycles).items()))
    return Decomposition(cycles, np.asarray(tail, dtype=np.int64), cycle_of, spectrum)


def spectrum_json(spectrum: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(spectrum.items())}


def weak_components(g) -> tuple[int, np.ndarray]:
    """Count and label the weakly connected components.

    A finite functional graph has exactly one cycle per weak component, so a
    component is identified by the cycle its vertices drain into. Each label
    is the smallest vertex in the component.
    """
    decomp = decompose(g)
    count = len(decomp.cycles)
    smallest = np.full(count, np.iinfo(np.int64).max, dtype=np.int64)
    vertices = np.arange(decomp.cycle_of.shape[0], dtype=np.int64)
    np.minimum.at(smallest, decomp.cycle_of, vertices)
    return count, smallest[decomp.cycle_of]


def has_cycle_of_length(g, ell: int) -> bool:
    if ell < 1:
        raise DomainError("cycle length must be >= 1")
    return decompose(g).spectrum.get(ell, 0) >= 1


def _require_finite_order(M: ModMatrix) -> None:
    if math.gcd(M.det(), M.modulus) != 1:
        raise ContractError("move matrix has no finite Z_n-order")


def verify_cycle_divisibility(g: MoveGraph, k: int) -> bool:
    """Every cycle length divides k and no vertex sits on a tail."""
    actual = zn_order(g.matrix)
    if actual is None or actual != k:
        raise ContractError(f"Z_n-order is {actual}, not {k}")
    decomp = decompose(g)
    return decomp.tail_vertices == 0 and all(k % ell == 0 for ell in decomp.spectrum)


def verify_scaling_property(g: MoveGraph, s: int) -> bool:
    """On-cycle x and s*x lie on cycles of equal length when gcd(s, n) = 1."""
    if math.gcd(s, g.n) != 1:
        raise DomainError(f"gcd({s}, {g.n}) != 1")
    _require_finite_order(g.matrix)
    decomp = decompose(g)
    lengths = decomp.length_at()
    on_cycle = np.flatnonzero(decomp.tail_length == 0)
    coords = decode_all(g.n, g.m)[:, on_cycle]
    scaled = encode_all((coords * (s % g.n)) % g.n, g.n)
    return bool(np.array_equal(lengths[on_cycle], lengths[scaled]))


def verify_embedding(matrix: MatrixLike, n1: int, n2: int, *, budget: int | None = None) -> bool:
    """v -> n2*v embeds Gamma_{M,n1} into Gamma_{M,n1*n2} as an induced subgraph."""
    if n1 < 2 or n2 < 1:
        raise DomainError("need n1 >= 2 and n2 >= 1")
    rows = _rows(matrix)
    small = build(rows, n1, budget=budget)
    big = build(rows, n1 * n2, budget=budget)
    image = encode_all(decode_all(n1, small.m) * n2, n1 * n2)
    if np.unique(image).shape[0] != image.shape[0]:
        return False
    # out-degree is 1 on both sides, so f(succ(u)) == succ(f(u)) for every u
    # gives arcs and non-arcs of the induced subgraph at once
    return bool(np.array_equal(big.successor[image], image[small.successor]))


@dataclass(frozen=True, eq=False)
class IsoWitness:
    """Explicit vertex bijection between two functional graphs."""

    domain_graph: Union[MoveGraph, ProductGraph]
    codomain_graph: MoveGraph
    vertex_map: np.ndarray
    kind: str = ""
    extra: dict = field(default_factory=dict)

    def is_bijection(self) -> bool:
        f = self.vertex_map
        size = self.codomain_graph.order
        if f.shape[0] != self.domain_graph.order or f.shape[0] != size:
            return False
        if f.min(initial=0) < 0 or f.max(initial=0) >= size:
            return False
        return bool(np.all(np.bincount(f, minlength=size) == 1))

    def preserves_arcs(self) -> bool:
        """(u, v) is an arc iff (f(u), f(v)) is; checked in both directions."""
        f = self.vertex_map
        d_succ, c_succ = self.domain_graph.successor, self.codomain_graph.successor
        forward = np.array_equal(f[d_succ], c_succ[f])
        inverse = np.empty_like(f)
        inverse[f] = np.arange(f.shape[0], dtype=np.int64)
        backward = np.array_equal(inverse[c_succ], d_succ[inverse])
        return bool(forward and backward)

    def validate(self) -> bool:
        return self.is_bijection() and self.preserves_arcs()


def tensor_iso_witness(matrix: MatrixLike, n1: int, n2: int, *, budget: int | None = None) -> IsoWitness:
    """f(x, y) = n1*y + n2*x from Gamma_{M,n1} x Gamma_{M,n2} onto Gamma_{M,n1 n2}."""
    if n1 < 2 or n2 < 2:
        raise DomainError("both factors must be >= 2")
    if math.gcd(n1, n2) != 1:
        raise DomainError(f"gcd({n1}, {n2}) != 1")
    rows = _rows(matrix)
    n = n1 * n2
    g1, g2 = build(rows, n1, budget=budget), build(rows, n2, budget=budget)
    target = build(rows, n, budget=budget)
    product = tensor_product(g1, g2)
    u = np.arange(product.order, dtype=np.int64)
    x = decode_all(n1, g1.m)[:, u % g1.order]
    y = decode_all(n2, g2.m)[:, u // g1.order]
    vertex_map = encode_all((n1 * y + n2 * x) % n, n)
    witness = IsoWitness(product, target, vertex_map, kind="tensor")
    if not witness.validate():
        raise InvariantError(f"tensor witness failed for n1={n1}, n2={n2}")
    return witness


def conjugate(M1: Sequence[Sequence[int]], S: Sequence[Sequence[int]]) -> list[list[int]]:
    """S^-1 M1 S computed exactly as adj(S) M1 S / det S."""
    det = int_det(S)
    if det == 0:
        raise DomainError("S is singular")
    numer = int_matmul(int_matmul(int_adjugate(S), M1), S)
    if any(e % det for row in numer for e in row):
        raise DomainError("S^-1 M1 S is not an integer matrix")
    return [[e // det for e in row] for row in numer]


def similarity_iso_witness(M1: MatrixLike, S: Sequence[Sequence[int]], n: int,
                           *, budget: int | None = None) -> IsoWitness:
    """v -> v S^T from Gamma_{M2,n} onto Gamma_{M1,n} with M2 = S^-1 M1 S."""
    check_modulus(n)
    rows1 = _rows(M1)
    S = [[int(e) for e in row] for row in S]
    if len(S) != len(rows1) or any(len(r) != len(S) for r in S):
        raise ContractError("S must be square with the dimension of M1")
    det = int_det(S)
    if det == 0 or math.gcd(n, det) != 1:
        raise DomainError(f"gcd({n}, det S = {det}) != 1")
    rows2 = conjugate(rows1, S)
    domain = build(rows2, n, budget=budget)
    codomain = build(rows1, n, budget=budget)
    coords = decode_all(n, domain.m)
    vertex_map = encode_all(apply_rows(S, coords, n), n)
    witness = IsoWitness(domain, codomain, vertex_map, kind="similarity", extra={"M2": rows2})
    if not witness.validate():
        raise InvariantError("similarity witness failed validation")
    return witness
