"""The four families of valid inequalities for chordal completions of cycles,
plus the lifting transformations that move cuts between graphs.

Every cut is a sparse integer inequality a.x >= b over a graph's fill-edge
space.  Pairs of the inequality's support that are real edges of the graph
are folded into the right-hand side as constants fixed at one, so a Cut
never carries coefficients outside the fill space.

Family summary, for a sequence C of k distinct vertices with activation set
F = exterior pairs of C missing from the graph (each such f enters with a
negative coefficient that switches the cut off unless x_f = 1):

  I1  all interior chords of C, rhs k-3 (needs k >= 4 and a fill interior)
  I2  the short chord across position i plus all chords at v_i, rhs 1
  I3  the k chords joining vertices two apart on C, rhs 2 (k >= 5)
  I4  all interior chords except two designated ones, rhs k-4 (k >= 5)
"""

from __future__ import annotations

import numpy as np

from .graphs import Cycle, Graph, GraphError, Point, edge

FAMILIES = ("I1", "I2", "I3", "I4")


class CutError(ValueError):
    """Raised when a cut cannot be built from the given cycle/parameters."""


class FamilyInapplicableError(CutError):
    """Raised when a family does not exist for the given cycle length."""


class Cut:
    """Sparse inequality sum_f coeffs[f] * x_f >= rhs over g's fill space."""

    __slots__ = ("graph", "coeffs", "rhs", "family", "cycle", "params")

    def __init__(self, graph: Graph, coeffs: dict[int, int], rhs: int,
                 family: str, cycle: Cycle | None = None, params=None):
        for f, a in coeffs.items():
            if not 0 <= f < graph.mc:
                raise CutError(f"coefficient index {f} outside fill space")
            if not isinstance(a, int):
                raise CutError(f"coefficient for index {f} is not an integer")
        self.graph = graph
        self.coeffs = {f: a for f, a in sorted(coeffs.items()) if a != 0}
        self.rhs = int(rhs)
        self.family = family
        self.cycle = cycle
        self.params = params

    def key(self) -> tuple:
        """Structural identity: coefficient multiset and rhs, not provenance."""
        return (tuple(self.coeffs.items()), self.rhs)

    def __eq__(self, other):
        return isinstance(other, Cut) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        terms = " + ".join(f"{a}*x{self.graph.fill_pair(f)}" for f, a in self.coeffs.items())
        return f"Cut[{self.family}] {terms} >= {self.rhs}"

    def to_line(self) -> str:
        """Serialize as `family rhs k idx:coef ...` with exact integers."""
        parts = [self.family, str(self.rhs), str(len(self.coeffs))]
        parts += [f"{f}:{a}" for f, a in self.coeffs.items()]
        return " ".join(parts)

    @staticmethod
    def from_line(graph: Graph, line: str) -> "Cut":
        fields = line.split()
        family, rhs, k = fields[0], int(fields[1]), int(fields[2])
        coeffs = {}
        for item in fields[3:3 + k]:
            f, a = item.split(":")
            coeffs[int(f)] = int(a)
        return Cut(graph, coeffs, rhs, family)


def evaluate(cut: Cut, x: Point) -> float:
    """Violation rhs - a.x; positive means x violates the cut.

    Exact integer arithmetic is used whenever the point is integral.
    """
    if len(x) != cut.graph.mc:
        raise CutError(
            f"point has dimension {len(x)}, cut lives in dimension {cut.graph.mc}"
        )
    if x.is_integral():
        vals = np.rint(x.values).astype(int)
        return cut.rhs - sum(a * int(vals[f]) for f, a in cut.coeffs.items())
    return cut.rhs - sum(a * float(x.values[f]) for f, a in cut.coeffs.items())


def _support_fill(g: Graph, pairs) -> tuple[dict[int, int], int]:
    """Unit coefficients on the fill pairs; real pairs count as constant one."""
    coeffs: dict[int, int] = {}
    constant = 0
    for p in pairs:
        if p in g.edges:
            constant += 1
        else:
            coeffs[g.fill_index(*p)] = coeffs.get(g.fill_index(*p), 0) + 1
    return coeffs, constant


def cut_i1(g: Graph, c: Cycle) -> Cut:
    """Triangulating a k-cycle needs at least k-3 of its interior chords."""
    k = len(c)
    for p in c.int_pairs():
        if p in g.edges:
            raise CutError(f"interior pair {p} is an edge of the graph")
    coeffs = {g.fill_index(*p): 1 for p in c.int_pairs()}
    missing = c.missing_ext(g)
    for p in missing:
        coeffs[g.fill_index(*p)] = -(k - 3)
    rhs = (k - 3) * (1 - len(missing))
    return Cut(g, coeffs, rhs, "I1", cycle=c.canonical())


def cut_i2(g: Graph, c: Cycle, i: int) -> Cut:
    """Either the chord across v_i or some chord at v_i must be added.

    Support: the pair {v_{i-1}, v_{i+1}} plus every interior pair containing
    v_i but neither of its cycle neighbours.  Support pairs must be fill
    edges; other interior pairs of the sequence may be real edges (the cut
    is then still valid, those pairs simply do not appear).
    """
    k = len(c)
    if not 0 <= i < k:
        raise CutError(f"position {i} invalid for a cycle of length {k}")
    vs = c.vertices
    vi, prev, nxt = vs[i], vs[(i - 1) % k], vs[(i + 1) % k]
    support = [edge(prev, nxt)]
    support += [edge(vi, vs[j]) for j in range(k)
                if vs[j] not in (vi, prev, nxt)]
    for p in support:
        if p in g.edges:
            raise CutError(f"support pair {p} is an edge of the graph")
    coeffs = {g.fill_index(*p): 1 for p in support}
    missing = c.missing_ext(g)
    for p in missing:
        coeffs[g.fill_index(*p)] = -1
    rhs = 1 - len(missing)
    return Cut(g, coeffs, rhs, "I2", cycle=c.canonical(), params=(i,))


def cut_i3(g: Graph, c: Cycle) -> Cut:
    """At least two of the k distance-2 chords of C must be present."""
    k = len(c)
    if k < 5:
        raise FamilyInapplicableError(f"family I3 needs |C| >= 5, got {k}")
    vs = c.vertices
    pairs = [edge(vs[j], vs[(j + 2) % k]) for j in range(k)]
    coeffs, constant = _support_fill(g, pairs)
    missing = c.missing_ext(g)
    for p in missing:
        coeffs[g.fill_index(*p)] = -2
    rhs = 2 * (1 - len(missing)) - constant
    return Cut(g, coeffs, rhs, "I3", cycle=c.canonical())


def cut_i4(g: Graph, c: Cycle, i: int, j: int) -> Cut:
    """All interior chords except {v_{j-1},v_{j+1}} and {v_j,v_i}: rhs k-4."""
    k = len(c)
    if k < 5:
        raise FamilyInapplicableError(f"family I4 needs |C| >= 5, got {k}")
    if not (0 <= i < k and 0 <= j < k):
        raise CutError(f"positions ({i}, {j}) invalid for a cycle of length {k}")
    if c.dist(i, j) < 2:
        raise FamilyInapplicableError(
            f"family I4 needs cycle distance >= 2 between positions, "
            f"got d({j},{i}) = {c.dist(i, j)}"
        )
    vs = c.vertices
    excluded = {edge(vs[(j - 1) % k], vs[(j + 1) % k]), edge(vs[j], vs[i])}
    pairs = [p for p in c.int_pairs() if p not in excluded]
    coeffs, constant = _support_fill(g, pairs)
    missing = c.missing_ext(g)
    for p in missing:
        coeffs[g.fill_index(*p)] = -(k - 4)
    rhs = (k - 4) * (1 - len(missing)) - constant
    return Cut(g, coeffs, rhs, "I4", cycle=c.canonical(), params=(i, j))


def lift_zero_pad(cut: Cut, sub_to_super: dict[int, int], super_g: Graph) -> Cut:
    """Re-index a cut valid on an induced subgraph into a supergraph.

    Coefficients keep their values at the mapped fill indices; everything
    outside the image stays at zero and the rhs is unchanged.
    """
    if len(set(sub_to_super.values())) != len(sub_to_super):
        raise CutError("vertex map must be injective")
    coeffs = {}
    for f, a in cut.coeffs.items():
        u, v = cut.graph.fill_pair(f)
        try:
            mu, mv = sub_to_super[u], sub_to_super[v]
        except KeyError as missing:
            raise CutError(f"vertex {missing} not mapped") from None
        if super_g.has_edge(mu, mv):
            raise CutError(
                f"mapped pair ({mu}, {mv}) is an edge of the supergraph; "
                "the subgraph is not induced"
            )
        coeffs[super_g.fill_index(mu, mv)] = a
    return Cut(super_g, coeffs, cut.rhs, "LIFTED", cycle=cut.cycle, params=cut.params)


def lift_conditional(cut: Cut, missing_pairs) -> Cut:
    """Make a nonnegative cut conditional on a set of edges being filled.

    The given pairs are removed from the cut's graph; the resulting cut on
    the sparser graph reads a.x - b * sum_{f in missing} x_f >= b(1 - |missing|),
    so it is trivially satisfied unless every missing edge is present.
    """
    if any(a < 0 for a in cut.coeffs.values()):
        raise CutError("conditional lifting requires nonnegative coefficients")
    missing = [edge(*p) for p in missing_pairs]
    if not missing:
        return Cut(cut.graph, dict(cut.coeffs), cut.rhs, cut.family,
                   cycle=cut.cycle, params=cut.params)
    for p in missing:
        if p not in cut.graph.edges:
            raise CutError(f"pair {p} is not an edge of the cut's graph")
    sparser = Graph(
        cut.graph.n,
        [e for e in cut.graph.edges if e not in set(missing)],
        require_connected=False,
    )
    b = cut.rhs
    coeffs = {}
    for f, a in cut.coeffs.items():
        coeffs[sparser.fill_index(*cut.graph.fill_pair(f))] = a
    for p in missing:
        f = sparser.fill_index(*p)
        coeffs[f] = coeffs.get(f, 0) - b
    rhs = b * (1 - len(missing))
    return Cut(sparser, coeffs, rhs, "LIFTED", cycle=cut.cycle, params=cut.params)


def lift_chord(cut: Cut, chord: int) -> Cut:
    """Turn a facet of the sub-cycle closed by a chord into a'.x >= b*x_chord.

    The chord is a fill index of the target graph; it must not collide with
    the cut's support.
    """
    if any(a < 0 for a in cut.coeffs.values()):
        raise CutError("chord lifting requires nonnegative coefficients")
    if chord in cut.coeffs:
        raise CutError(
            f"chord index {chord} collides with the cut's support"
        )
    coeffs = dict(cut.coeffs)
    if cut.rhs != 0:
        coeffs[chord] = -cut.rhs
    return Cut(cut.graph, coeffs, 0, "LIFTED", cycle=cut.cycle, params=cut.params)
