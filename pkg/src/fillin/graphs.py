"""Simple undirected graphs with canonical fill-edge indexing.

Vertices are integers 0..n-1.  Edges are unordered pairs stored as tuples
(u, v) with u < v.  The complement ("fill") edges are indexed 0..mc-1 in
lexicographic order of their sorted pairs; this index space is shared by
points, cuts and completions throughout the package.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np

INTEGRALITY_TOL = 1e-6


class GraphError(ValueError):
    """Raised for invalid graph construction or invalid fill references."""


def edge(u: int, v: int) -> tuple[int, int]:
    """Normalize an unordered vertex pair to (min, max)."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph with fill-edge indexing.

    Use :func:`new_graph` to build one; the bare constructor is shared with
    internal callers (lifting transforms) that need graphs without the
    connectivity requirement.
    """

    __slots__ = ("n", "edges", "adj", "adj_mask", "fill_edges", "_fill_index")

    def __init__(self, n: int, edges, require_connected: bool = True):
        if n < 1:
            raise GraphError(f"vertex count must be positive, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex out of range in edge ({u}, {v}) for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            seen.add(edge(u, v))
        self.n = n
        self.edges = frozenset(seen)
        adj = [set() for _ in range(n)]
        mask = [0] * n
        for u, v in seen:
            adj[u].add(v)
            adj[v].add(u)
            mask[u] |= 1 << v
            mask[v] |= 1 << u
        self.adj = tuple(frozenset(a) for a in adj)
        self.adj_mask = tuple(mask)
        if require_connected and not self.is_connected():
            raise GraphError("graph is disconnected")
        self.fill_edges = tuple(
            p for p in combinations(range(n), 2) if p not in self.edges
        )
        self._fill_index = {p: i for i, p in enumerate(self.fill_edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def mc(self) -> int:
        return len(self.fill_edges)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def fill_index(self, u: int, v: int) -> int:
        try:
            return self._fill_index[edge(u, v)]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not a fill edge") from None

    def fill_pair(self, i: int) -> tuple[int, int]:
        if not 0 <= i < len(self.fill_edges):
            raise GraphError(f"fill index {i} out of range [0, {self.mc})")
        return self.fill_edges[i]

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in sorted(self.adj[u]):
                if not (seen >> v) & 1:
                    seen |= 1 << v
                    count += 1
                    queue.append(v)
        return count == self.n

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, mc={self.mc})"


def new_graph(n: int, edges) -> Graph:
    """Build a validated, connected graph from a vertex count and edge list."""
    return Graph(n, edges, require_connected=True)


class Cycle:
    """An ordered sequence of k >= 4 distinct vertices.

    Consecutive pairs (with wraparound) form the exterior; all other vertex
    pairs of the sequence form the interior (the chords).
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(vertices)
        if len(vs) < 4:
            raise GraphError(f"cycle needs at least 4 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise GraphError(f"cycle vertices must be distinct: {vs}")
        self.vertices = vs

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Cycle) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Cycle{self.vertices}"

    def ext_pairs(self) -> list[tuple[int, int]]:
        k = len(self.vertices)
        return [edge(self.vertices[i], self.vertices[(i + 1) % k]) for i in range(k)]

    def int_pairs(self) -> list[tuple[int, int]]:
        ext = set(self.ext_pairs())
        return [p for p in combinations(sorted(self.vertices), 2) if p not in ext]

    def dist(self, i: int, j: int) -> int:
        """Cyclic distance between two positions in the sequence."""
        k = len(self.vertices)
        d = abs(i - j) % k
        return min(d, k - d)

    def missing_ext(self, g: Graph) -> list[tuple[int, int]]:
        """Exterior pairs that are not edges of g (the activation set F)."""
        return [p for p in self.ext_pairs() if p not in g.edges]

    def canonical(self) -> "Cycle":
        """Rotate the smallest vertex to the front, then orient so the second
        vertex is the smaller of its two neighbours."""
        vs = self.vertices
        i0 = vs.index(min(vs))
        rot = vs[i0:] + vs[:i0]
        if rot[1] > rot[-1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        return Cycle(rot)


class Point:
    """A fractional or integer assignment over a graph's fill-edge space."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)
        if self.values.ndim != 1:
            raise GraphError("point values must be one-dimensional")

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"Point({self.values.tolist()})"

    def is_integral(self, tol: float = INTEGRALITY_TOL) -> bool:
        return bool(np.all(np.abs(self.values - np.round(self.values)) <= tol))

    def fill_set(self, tol: float = INTEGRALITY_TOL) -> frozenset[int]:
        """Indices set to one; only meaningful for integral points."""
        if not self.is_integral(tol):
            raise GraphError("fill_set requires an integral point")
        return frozenset(int(i) for i in np.flatnonzero(self.values > 0.5))

    @staticmethod
    def zeros(g: Graph) -> "Point":
        return Point(np.zeros(g.mc))

    @staticmethod
    def from_fill(g: Graph, fill) -> "Point":
        x = np.zeros(g.mc)
        for i in fill:
            if not 0 <= i < g.mc:
                raise GraphError(f"fill index {i} out of range [0, {g.mc})")
            x[i] = 1.0
        return Point(x)


def _mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order (ties to the lowest id)."""
    n = g.n
    weight = [0] * n
    visited = [False] * n
    order = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best)
        for u in g.adj[best]:
            if not visited[u]:
                weight[u] += 1
    return order


def _verify_peo(g: Graph, elim_order) -> bool:
    """Check that eliminating vertices in the given order meets only cliques."""
    pos = {v: i for i, v in enumerate(elim_order)}
    masks = g.adj_mask
    for idx, v in enumerate(elim_order):
        later = [u for u in g.adj[v] if pos[u] > idx]
        if not later:
            continue
        # It suffices to check the earliest-eliminated later neighbour
        # against the rest: clique-ness then follows inductively.
        w = min(later, key=lambda u: pos[u])
        rest = 0
        for u in later:
            if u != w:
                rest |= 1 << u
        if rest & ~masks[w]:
            return False
    return True


def is_chordal(g: Graph):
    """Test chordality; on success also return a perfect elimination ordering.

    Returns (True, ordering) where eliminating vertices in `ordering` always
    meets a clique of later neighbours, or (False, None).
    """
    elim = tuple(reversed(_mcs_order(g)))
    if _verify_peo(g, elim):
        return True, elim
    return False, None


def _shortest_induced_path(g: Graph, v: int, u: int, allowed_mask: int):
    """BFS path from v to u staying inside allowed_mask, or None."""
    if not ((allowed_mask >> v) & 1 and (allowed_mask >> u) & 1):
        return None
    parent = {v: -1}
    queue = deque([v])
    while queue:
        a = queue.popleft()
        if a == u:
            path = []
            while a != -1:
                path.append(a)
                a = parent[a]
            path.reverse()
            return path
        for b in sorted(g.adj[a]):
            if (allowed_mask >> b) & 1 and b not in parent:
                parent[b] = a
                queue.append(b)
    return None


def _is_chordless(g: Graph, cyc: Cycle) -> bool:
    return all(p in g.edges for p in cyc.ext_pairs()) and not any(
        p in g.edges for p in cyc.int_pairs()
    )


def iter_chordless_cycles(g: Graph):
    """Yield chordless cycles of length >= 4 in canonical form, deduplicated.

    Scans vertex triples (v, w, u) in ascending id order where v-w-u is a
    path and {v, u} is a non-edge, and closes each with a shortest v-u path
    avoiding both w and its neighbourhood, so that the result is chordless
    by construction; every cycle is still verified before being yielded.
    """
    full = (1 << g.n) - 1
    seen: set[tuple[int, ...]] = set()
    for v in range(g.n):
        for w in sorted(g.adj[v]):
            for u in sorted(g.adj[w]):
                if u <= v or g.has_edge(v, u):
                    continue
                allowed = (full & ~(g.adj_mask[w] | (1 << w))) | (1 << v) | (1 << u)
                path = _shortest_induced_path(g, v, u, allowed)
                if path is None:
                    continue
                cyc = Cycle(path + [w]).canonical()
                if cyc.vertices in seen:
                    continue
                seen.add(cyc.vertices)
                if _is_chordless(g, cyc):
                    yield cyc


def find_chordless_cycle(g: Graph):
    """Return one chordless cycle of length >= 4, or None if g is chordal."""
    for cyc in iter_chordless_cycles(g):
        return cyc
    return None


def apply_completion(g: Graph, fill) -> Graph:
    """Return g with the given fill-edge indices added; g is unmodified."""
    extra = [g.fill_pair(i) for i in fill]
    return Graph(g.n, list(g.edges) + extra, require_connected=False)


def is_valid_completion(g: Graph, fill) -> bool:
    """True iff adding the given fill edges makes g chordal."""
    ok, _ = is_chordal(apply_completion(g, fill))
    return ok
