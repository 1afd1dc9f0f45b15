"""Slow, independent reference computations used only by the tests.

Nothing here imports movegraph: vertices are plain coordinate tuples and
graph questions go through networkx.
"""

import itertools
import math

import networkx as nx


def successor_dict(rows, n):
    m = len(rows)
    out = {}
    for x in itertools.product(range(n), repeat=m):
        out[x] = tuple(sum(rows[j][i] * x[i] for i in range(m)) % n for j in range(m))
    return out


def digraph(rows, n):
    g = nx.DiGraph()
    g.add_edges_from(successor_dict(rows, n).items())
    return g


def spectrum(rows, n):
    counts = {}
    for cyc in nx.simple_cycles(digraph(rows, n)):
        counts[len(cyc)] = counts.get(len(cyc), 0) + 1
    return dict(sorted(counts.items()))


def orbit_spectrum(rows, n):
    """Cycle spectrum by walking each orbit with a dict; faster than networkx for larger n."""
    succ = successor_dict(rows, n)
    seen = set()
    counts = {}
    for start in succ:
        path = {}
        x = start
        while x not in seen and x not in path:
            path[x] = len(path)
            x = succ[x]
        if x in path:
            length = len(path) - path[x]
            counts[length] = counts.get(length, 0) + 1
        seen.update(path)
    return dict(sorted(counts.items()))


def component_count(rows, n):
    return nx.number_weakly_connected_components(digraph(rows, n))


def tail_vertices(rows, n):
    """Vertices not lying on any cycle."""
    succ = successor_dict(rows, n)
    on_cycle = set()
    for cyc in nx.simple_cycles(digraph(rows, n)):
        on_cycle.update(cyc)
    return len(succ) - len(on_cycle)


def naive_matmul(a, b, n):
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) % n for j in range(m)] for i in range(m)]


def naive_power(rows, e, n):
    m = len(rows)
    out = [[int(i == j) % n for j in range(m)] for i in range(m)]
    base = [[v % n for v in row] for row in rows]
    for _ in range(e):
        out = naive_matmul(out, base, n)
    return out


def naive_order(rows, n, cap=5000):
    m = len(rows)
    ident = [[int(i == j) for j in range(m)] for i in range(m)]
    for k in range(1, cap + 1):
        if naive_power(rows, k, n) == ident:
            return k
    return None


def phi(n):
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


def unit_order(a, n):
    for t in range(1, n + 1):
        if pow(a, t, n) == 1 % n:
            return t
    return None


def sqrt_minus_one_scan(p):
    roots = [x for x in range(p) if x * x % p == p - 1]
    return min(roots) if roots else None


def poly_mul(x, y, p):
    """(a + b w)(c + d w) with w^2 = -1, written out from the polynomial product."""
    a, b = x
    c, d = y
    # a c + (a d + b c) w + b d w^2
    return ((a * c + b * d * (p - 1)) % p, (a * d + b * c) % p)


def poly_order(x, p):
    acc = x
    for e in range(1, p * p):
        if acc == (1, 0):
            return e
        acc = poly_mul(acc, x, p)
    return None


def level_sets(r):
    """P_0 .. P_{2r} straight from the 2-adic description."""
    n = 2**r
    levels = [set() for _ in range(2 * r + 1)]
    for t in range(r):
        span = 2 ** (r - t)
        for x in range(span):
            for y in range(span):
                if x % 2 == 0 and y % 2 == 0:
                    continue
                v = ((2**t * x) % n, (2**t * y) % n)
                levels[2 * t + (x % 2 and y % 2)].add(v)
    levels[2 * r].add((0, 0))
    return levels


def tree_depth(r):
    """Longest path in the subgraph on V minus (0, 0)."""
    g = digraph(((1, -1), (1, 1)), 2**r)
    g.remove_node((0, 0))
    return nx.dag_longest_path_length(g)
