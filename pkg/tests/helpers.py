"""Shared test fixtures: small graph builders, seeded random suites, and
independent brute-force oracles (cycle/parameter enumeration for the cut
families, vertex enumeration for LPs)."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from fillin.cuts import CutError, cut_i2, cut_i3, evaluate
from fillin.graphs import Cycle, Graph, Point, new_graph

# The running 5-vertex example: three chordless 4-cycles, optimum fill 1.
FIG_EDGES = [(0, 1), (0, 3), (1, 2), (2, 3), (1, 4), (3, 4)]


def fig_graph() -> Graph:
    return new_graph(5, FIG_EDGES)


def cycle_graph(k: int) -> Graph:
    return new_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return new_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    return new_graph(k, list(combinations(range(k), 2)))


def random_connected_graph(rng: np.random.Generator, n: int,
                           density: float) -> Graph:
    """Random connected graph: a random spanning tree plus density-sampled
    extra pairs."""
    while True:
        perm = rng.permutation(n)
        edges = set()
        for i in range(1, n):
            j = int(rng.integers(0, i))
            u, v = int(perm[i]), int(perm[j])
            edges.add((min(u, v), max(u, v)))
        for pair in combinations(range(n), 2):
            if rng.random() < density:
                edges.add(pair)
        g = new_graph(n, sorted(edges))
        if g.mc > 0:
            return g


def random_point(rng: np.random.Generator, g: Graph) -> Point:
    return Point(rng.random(g.mc))


def all_cycle_sequences(n: int, kmin: int = 4):
    """Every sequence of >= kmin distinct vertices, up to rotation and
    reflection (first element is the subset minimum, second < last)."""
    for size in range(kmin, n + 1):
        for subset in combinations(range(n), size):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                if perm[0] < perm[-1]:
                    yield Cycle((first,) + perm)


def exhaustive_i2_violation(g: Graph, x: Point, tol: float = 1e-6):
    """Most violated lifted-I2 cut over every cycle sequence and position."""
    best = None
    for cyc in all_cycle_sequences(g.n):
        for i in range(len(cyc)):
            try:
                cut = cut_i2(g, cyc, i)
            except CutError:
                continue
            v = evaluate(cut, x)
            if v > tol and (best is None or v > best[1]):
                best = (cut, v)
    return best


def exhaustive_i3_violation(g: Graph, x: Point, tol: float = 1e-6):
    """Most violated lifted-I3 cut over every cycle sequence of length >= 5."""
    best = None
    for cyc in all_cycle_sequences(g.n, kmin=5):
        cut = cut_i3(g, cyc)
        v = evaluate(cut, x)
        if v > tol and (best is None or v > best[1]):
            best = (cut, v)
    return best


def lp_vertex_optimum(num_vars: int, rows, lb, ub):
    """Minimum of sum(x) over {a.x >= b, lb <= x <= ub} by enumerating all
    basic points (intersections of num_vars active constraints).

    Returns None when infeasible.  The feasible set is box-bounded, so a
    nonempty region always has a vertex.
    """
    lb = np.asarray(lb, float)
    ub = np.asarray(ub, float)
    cons = []  # (normal, offset) meaning normal . x >= offset
    for coeffs, rhs in rows:
        a = np.zeros(num_vars)
        for j, c in coeffs.items():
            a[j] = c
        cons.append((a, rhs))
    for j in range(num_vars):
        e = np.zeros(num_vars)
        e[j] = 1.0
        cons.append((e.copy(), lb[j]))
        cons.append((-e, -ub[j]))
    best = None
    for active in combinations(range(len(cons)), num_vars):
        A = np.array([cons[i][0] for i in active])
        b = np.array([cons[i][1] for i in active])
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        x = np.linalg.solve(A, b)
        feasible = all(a @ x >= off - 1e-7 for a, off in cons)
        if feasible:
            val = float(x.sum())
            if best is None or val < best:
                best = val
    return best
