import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from movegraph.algebra import ModMatrix, int_det, zn_order
from movegraph.errors import CapacityError, ContractError, DomainError
from movegraph.graph import (
    IsoWitness, build, conjugate, decode, decompose, encode, has_cycle_of_length, similarity_iso_witness,
    tensor_iso_witness, tensor_product, verify_cycle_divisibility, verify_embedding,
    verify_scaling_property, weak_components,
)
from movegraph.subadd import SUBADD_ROWS, subadd_matrix
from movegraph.suite import PERM3_ROWS


def arcs(g):
    return {decode(v, g.n, g.m): decode(w, g.n, g.m) for v, w in enumerate(g.successor.tolist())}


def test_encoding_is_little_endian():
    assert encode((1, 0, 0), 3) == 1
    assert encode((0, 1, 0), 3) == 3
    assert encode((0, 0, 1), 3) == 9
    assert all(encode(decode(v, 4, 3), 4) == v for v in range(64))


def test_build_subadd_mod_2():
    a = arcs(build(SUBADD_ROWS, 2))
    assert a == {(0, 0): (0, 0), (1, 0): (1, 1), (0, 1): (1, 1), (1, 1): (0, 0)}


def test_build_matches_tuple_oracle():
    for rows, n in [(SUBADD_ROWS, 7), (PERM3_ROWS, 3), (((2, -1), (0, 3)), 6)]:
        assert arcs(build(rows, n)) == oracles.successor_dict(rows, n)


def test_build_perm3_arc_from_figure():
    a = arcs(build(PERM3_ROWS, 3))
    assert a[(0, 0, 1)] == (1, 0, 0)
    assert a[(1, 0, 0)] == (0, 1, 0)


def test_identity_graph_is_all_loops():
    g = build(((1, 0), (0, 1)), 4)
    assert np.array_equal(g.successor, np.arange(16))
    count, labels = weak_components(build(((1, 0), (0, 1)), 2))
    assert count == 4 and labels.tolist() == [0, 1, 2, 3]


def test_build_rejects_mismatched_modulus_and_budget():
    with pytest.raises(ContractError):
        build(subadd_matrix(5), 7)
    with pytest.raises(CapacityError):
        build(SUBADD_ROWS, 1000, budget=10_000)
    with pytest.raises(CapacityError):
        build(PERM3_ROWS, 10**6)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("MOVEGRAPH_BUDGET", "50")
    with pytest.raises(CapacityError):
        build(SUBADD_ROWS, 8)
    assert build(SUBADD_ROWS, 7).order == 49


@pytest.mark.parametrize("rows, n, spectrum", [
    (SUBADD_ROWS, 3, {1: 1, 8: 1}),
    (SUBADD_ROWS, 5, {1: 1, 2: 2, 4: 5}),
    (PERM3_ROWS, 3, {1: 3, 3: 8}),
])
def test_figure_spectra(rows, n, spectrum):
    assert decompose(build(rows, n)).spectrum == spectrum == oracles.spectrum(rows, n)


def test_decomposition_shape_on_tree_graph():
    g = build(SUBADD_ROWS, 4)
    d = decompose(g)
    assert d.cycles == [[0]]
    assert d.spectrum == {1: 1}
    assert d.tail_length.max() == 4
    assert d.tail_length[encode((2, 2), 4)] == 1
    assert d.tail_vertices == 15 == oracles.tail_vertices(SUBADD_ROWS, 4)


def test_cycles_are_canonical():
    d = decompose(build(SUBADD_ROWS, 5))
    leaders = [c[0] for c in d.cycles]
    assert leaders == sorted(leaders)
    succ = build(SUBADD_ROWS, 5).successor
    for c in d.cycles:
        assert c[0] == min(c)
        assert [int(succ[v]) for v in c] == c[1:] + c[:1]


@pytest.mark.parametrize("rows, n", [(SUBADD_ROWS, 3), (SUBADD_ROWS, 5), (SUBADD_ROWS, 6),
                                     (((1, 0), (0, 1)), 2), (PERM3_ROWS, 4), (((2, 1), (0, 2)), 8)])
def test_weak_components_against_networkx(rows, n):
    count, labels = weak_components(build(rows, n))
    assert count == oracles.component_count(rows, n)
    # label is the smallest member of each component
    for v, lab in enumerate(labels.tolist()):
        assert lab <= v


def test_component_counts_from_figures():
    assert weak_components(build(SUBADD_ROWS, 3))[0] == 2
    assert weak_components(build(SUBADD_ROWS, 5))[0] == 8
    assert weak_components(build(SUBADD_ROWS, 6))[0] == 2


def test_verify_cycle_divisibility():
    assert verify_cycle_divisibility(build(SUBADD_ROWS, 3), 8)
    assert verify_cycle_divisibility(build(PERM3_ROWS, 5), 3)
    assert verify_cycle_divisibility(build(SUBADD_ROWS, 5), 4)
    with pytest.raises(ContractError):
        verify_cycle_divisibility(build(SUBADD_ROWS, 4), 4)
    with pytest.raises(ContractError):
        verify_cycle_divisibility(build(SUBADD_ROWS, 5), 8)


def test_verify_scaling_property():
    assert verify_scaling_property(build(SUBADD_ROWS, 5), 2)
    assert verify_scaling_property(build(SUBADD_ROWS, 9), 1)
    assert verify_scaling_property(build(PERM3_ROWS, 3), 2)
    with pytest.raises(DomainError):
        verify_scaling_property(build(SUBADD_ROWS, 9), 3)


def test_verify_embedding():
    assert verify_embedding(SUBADD_ROWS, 3, 4)
    assert verify_embedding(SUBADD_ROWS, 2, 1)
    assert verify_embedding(PERM3_ROWS, 2, 2)
    assert verify_embedding(((2, 0), (1, 0)), 4, 3)


def test_tensor_witness_examples():
    w = tensor_iso_witness(SUBADD_ROWS, 3, 4)
    assert w.vertex_map.shape[0] == 144 and w.validate()
    w = tensor_iso_witness(SUBADD_ROWS, 2, 3)
    assert w.vertex_map.shape[0] == 36
    assert decompose(w.domain_graph).spectrum == decompose(build(SUBADD_ROWS, 6)).spectrum
    w = tensor_iso_witness(((1, 0), (0, 1)), 2, 3)
    assert np.array_equal(w.domain_graph.successor, np.arange(36))
    assert np.array_equal(w.codomain_graph.successor[w.vertex_map], w.vertex_map)
    with pytest.raises(DomainError):
        tensor_iso_witness(SUBADD_ROWS, 2, 4)
    with pytest.raises(DomainError):
        tensor_iso_witness(SUBADD_ROWS, 1, 3)


def test_tensor_witness_map_formula():
    w = tensor_iso_witness(SUBADD_ROWS, 3, 4)
    n1 = w.domain_graph.left.order
    for u in (0, 5, 77, 143):
        x = decode(u % n1, 3, 2)
        y = decode(u // n1, 4, 2)
        expected = tuple((3 * yi + 4 * xi) % 12 for xi, yi in zip(x, y))
        assert decode(int(w.vertex_map[u]), 12, 2) == expected


def test_broken_witness_is_rejected():
    w = tensor_iso_witness(SUBADD_ROWS, 3, 4)
    bad = w.vertex_map.copy()
    bad[[1, 2]] = bad[[2, 1]]
    assert not IsoWitness(w.domain_graph, w.codomain_graph, bad).validate()


def test_similarity_witness_examples():
    w = similarity_iso_witness(SUBADD_ROWS, ((1, 0), (0, 1)), 5)
    assert np.array_equal(w.vertex_map, np.arange(25))
    w = similarity_iso_witness(SUBADD_ROWS, ((1, 0), (1, 1)), 5)
    assert w.validate() and w.extra["M2"] == [[0, -1], [2, 2]]
    w = similarity_iso_witness(PERM3_ROWS, ((0, 1, 0), (1, 0, 0), (0, 0, 1)), 3)
    assert w.validate()


def test_similarity_rejects_bad_input():
    with pytest.raises(DomainError):
        similarity_iso_witness(SUBADD_ROWS, ((1, 1), (1, -1)), 6)
    with pytest.raises(DomainError):
        similarity_iso_witness(((1, 0), (1, 1)), ((1, 0), (0, 2)), 5)
    with pytest.raises(DomainError):
        conjugate(SUBADD_ROWS, ((1, 1), (1, 1)))


def test_has_cycle_of_length():
    assert has_cycle_of_length(build(SUBADD_ROWS, 3), 8)
    assert has_cycle_of_length(build(SUBADD_ROWS, 5), 4)
    assert not has_cycle_of_length(build(SUBADD_ROWS, 5), 3)


def test_json_and_dot_exports():
    g = build(PERM3_ROWS, 3)
    dot = g.to_dot().splitlines()
    arc_lines = [line for line in dot if "->" in line]
    assert len(arc_lines) == 27
    nodes = {tok for line in arc_lines for tok in line.split('"')[1::2]}
    assert len(nodes) == 27
    doc = json.loads(build(SUBADD_ROWS, 5).to_json())
    assert list(doc) == ["n", "m", "matrix", "successor", "spectrum"]
    assert doc["spectrum"] == {"1": 1, "2": 2, "4": 5}
    assert build(SUBADD_ROWS, 5).to_json() == build(SUBADD_ROWS, 5).to_json()


@st.composite
def invertible_case(draw):
    m = draw(st.integers(1, 3))
    n = draw(st.integers(2, 12 if m < 3 else 6))
    rows = tuple(tuple(draw(st.integers(-3, 3)) for _ in range(m)) for _ in range(m))
    return rows, n


@settings(max_examples=80, deadline=None)
@given(invertible_case())
def test_functional_graph_invariants(case):
    rows, n = case
    g = build(rows, n)
    assert int(g.in_degree().sum()) == n ** g.m
    d = decompose(g)
    assert sum(len(c) * 1 for c in d.cycles) == d.on_cycle
    assert sum(length * mult for length, mult in d.spectrum.items()) == d.on_cycle
    flat = [v for c in d.cycles for v in c]
    assert len(flat) == len(set(flat))
    on = set(flat)
    assert all((d.tail_length[v] == 0) == (v in on) for v in range(g.order))
    # determinism
    d2 = decompose(build(rows, n))
    assert d2.cycles == d.cycles and np.array_equal(d2.tail_length, d.tail_length)
    k = zn_order(g.matrix)
    if math.gcd(int_det(rows), n) == 1:
        assert k is not None and verify_cycle_divisibility(g, k)
    else:
        assert k is None


@pytest.mark.parametrize("n", range(2, 8))
def test_linear_combination_closure(n):
    for rows in (SUBADD_ROWS, ((2, 1), (1, 1)), ((0, 1), (1, 1)), ((2, 0), (1, 3))):
        g = build(rows, n)
        d = decompose(g)
        lengths = d.length_at()
        on_cycle = [v for v in range(g.order) if d.tail_length[v] == 0]
        for ell in sorted(set(int(x) for x in lengths[on_cycle])):
            members = [decode(v, n, 2) for v in on_cycle if ell % int(lengths[v]) == 0]
            for x in members:
                for y in members:
                    s = encode(((x[0] + y[0]) % n, (x[1] + y[1]) % n), n)
                    assert d.tail_length[s] == 0 and ell % int(lengths[s]) == 0


def test_tensor_round_trip_spectra():
    for rows in (SUBADD_ROWS, PERM3_ROWS, ((2, 0), (1, 0))):
        for n1 in range(2, 19):
            for n2 in range(2, 36 // n1 + 1):
                if math.gcd(n1, n2) != 1:
                    continue
                product = tensor_product(build(rows, n1), build(rows, n2))
                assert decompose(product).spectrum == decompose(build(rows, n1 * n2)).spectrum


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_k_cycle_exists_modulo_primes(p):
    for rows in (SUBADD_ROWS, ((2, 1), (1, 1)), ((0, -1), (1, 0)), ((1, 2), (3, 4)), ((2, 0), (0, 1))):
        k = zn_order(ModMatrix.of(rows, p))
        if k is not None:
            assert has_cycle_of_length(build(rows, p), k)
