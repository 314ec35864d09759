"""Branch-and-cut driver: LP relaxations over a growing global cut pool,
lazy cuts at integer points, threshold (and optional exact) separation at
fractional points, and the minimum-degree primal heuristic for incumbents.

Best-bound node selection; branching fixes the most fractional variable to
0 and 1.  All cuts are globally valid, so the pool is shared by every node
and never shrinks.  Objective values are sums of binaries, hence every node
bound is rounded up to an integer.
"""

from __future__ import annotations

import heapq
import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from .cuts import FAMILIES, Cut
from .graphs import Graph, Point, is_chordal, is_valid_completion
from .heuristics import mdo_completion, primal_repair
from .lp import INFEASIBLE, ITERATION_LIMIT, LpConfig, LpProblem, solve_lp
from .separation import (
    separate_i2_exact,
    separate_i3_exact,
    separate_integer,
    separate_threshold,
)

logger = logging.getLogger(__name__)

OPTIMAL = "OPTIMAL"
FEASIBLE = "FEASIBLE"
TIME_LIMIT = "TIME_LIMIT"


@dataclass
class SolverConfig:
    delta: float = 0.5
    families_enabled: tuple[str, ...] = FAMILIES
    exact_i2: bool = False
    exact_i3: bool = False
    max_cycles_per_call: int = 10
    time_limit_s: float | None = None
    node_limit: int | None = None
    seed: int = 0
    emit_all_positions: bool = False
    exact_separation_cap: int = 25
    max_rounds_per_node: int = 50
    heuristic_interval: int = 100
    violation_tol: float = 1e-6
    integrality_tol: float = 1e-6

    def __post_init__(self):
        self.families_enabled = tuple(self.families_enabled)
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        unknown = set(self.families_enabled) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown cut families {sorted(unknown)}")
        if "I1" not in self.families_enabled:
            raise ValueError("family I1 must stay enabled: it certifies optimality")

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "families_enabled": list(self.families_enabled),
            "exact_i2": self.exact_i2,
            "exact_i3": self.exact_i3,
            "max_cycles_per_call": self.max_cycles_per_call,
            "time_limit_s": self.time_limit_s,
            "node_limit": self.node_limit,
            "seed": self.seed,
            "emit_all_positions": self.emit_all_positions,
        }


@dataclass
class SolveResult:
    status: str
    best_fill: frozenset[int]
    lower_bound: int
    upper_bound: int
    nodes: int
    cuts_by_family: dict[str, int]
    total_cuts: int
    wall_time_s: float


def root_initialize(g: Graph, cfg: SolverConfig | None = None):
    """Initial incumbent (minimum-degree completion) and initial cut pool
    (lazy cuts harvested from the chordless cycles of the bare graph)."""
    if cfg is None:
        cfg = SolverConfig()
    ok, _ = is_chordal(g)
    if ok:
        return frozenset(), []
    incumbent = mdo_completion(g)
    report = separate_integer(
        g, Point.zeros(g),
        families=cfg.families_enabled,
        max_cycles=cfg.max_cycles_per_call,
        emit_all_positions=cfg.emit_all_positions,
        tol=cfg.violation_tol,
    )
    return incumbent, list(report.cuts)


class _Search:
    """Global search state: cut pool, LP active set, incumbent, node heap.

    The pool keeps every cut ever found (they are valid everywhere).  Each
    LP only carries an active subset: pooled rows violated by the current
    relaxation point re-enter before any new separation runs, and rows that
    stay slack for many consecutive solves leave the LP again.
    """

    IDLE_DROP = 30

    def __init__(self, g: Graph, cfg: SolverConfig):
        self.g = g
        self.cfg = cfg
        self.pool: list[Cut] = []
        self.pool_keys: set = set()
        self.counts = {fam: 0 for fam in FAMILIES}
        self._matrix = np.zeros((0, g.mc))
        self._rhs = np.zeros(0)
        self.active: list[int] = []
        self.idle = {}
        self.incumbent: frozenset[int] = frozenset(range(g.mc))
        self.ub = g.mc
        self.nodes = 0
        self.counter = 0
        self.heap: list = []  # (bound, counter, fixings, warm-start or None)
        self.global_fix: dict[int, int] = {}
        self._root_info = None  # (bound, reduced_costs, at_upper)

    def add_cut(self, cut: Cut) -> bool:
        key = cut.key()
        if key in self.pool_keys:
            return False
        self.pool_keys.add(key)
        idx = len(self.pool)
        self.pool.append(cut)
        if idx >= self._matrix.shape[0]:
            grow = max(256, self._matrix.shape[0])
            self._matrix = np.vstack([self._matrix, np.zeros((grow, self.g.mc))])
            self._rhs = np.concatenate([self._rhs, np.zeros(grow)])
        for f, a in cut.coeffs.items():
            self._matrix[idx, f] = a
        self._rhs[idx] = cut.rhs
        self.active.append(idx)
        self.idle[idx] = 0
        if cut.family in self.counts:
            self.counts[cut.family] += 1
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("cut %s", cut.to_line())
            # spot-check: no valid cut may reject the current incumbent
            from .cuts import evaluate
            x = Point(self.warm_start())
            if evaluate(cut, x) > 0:
                logger.error("pooled cut violated by the incumbent: %s", cut.to_line())
        return True

    def pool_violations(self, x: np.ndarray, tol: float) -> list[int]:
        """Pool indices strictly violated at x (active rows excluded)."""
        k = len(self.pool)
        if k == 0:
            return []
        viol = self._rhs[:k] - self._matrix[:k] @ x
        hits = np.flatnonzero(viol > tol)
        in_lp = set(self.active)
        return [int(i) for i in hits if int(i) not in in_lp]

    def refresh_active(self, x: np.ndarray, tol: float) -> int:
        """Re-activate violated pooled rows; age and drop slack ones."""
        k = len(self.pool)
        slack = self._matrix[:k] @ x - self._rhs[:k]
        keep = []
        for i in self.active:
            if slack[i] > 1e-6:
                self.idle[i] += 1
                if self.idle[i] > self.IDLE_DROP:
                    continue
            else:
                self.idle[i] = 0
            keep.append(i)
        added = self.pool_violations(x, tol)
        for i in added:
            self.idle[i] = 0
        self.active = keep + added
        return len(added)

    def offer_incumbent(self, fill: frozenset[int]) -> bool:
        if len(fill) >= self.ub:
            return False
        if not is_valid_completion(self.g, fill):
            logger.warning("discarding invalid incumbent candidate of size %d", len(fill))
            return False
        self.incumbent = frozenset(fill)
        self.ub = len(fill)
        logger.info("incumbent improved to %d", self.ub)
        self.update_global_fixings()
        return True

    def push(self, bound: float, fixings: dict, start=None):
        self.counter += 1
        heapq.heappush(self.heap, (bound, self.counter, fixings, start))

    def build_lp(self, fixings: dict) -> LpProblem | None:
        p = LpProblem(self.g.mc)
        for i in self.active:
            cut = self.pool[i]
            p.add_row({f: float(a) for f, a in cut.coeffs.items()}, float(cut.rhs))
        for j, val in fixings.items():
            p.fix(j, float(val))
        for j, val in self.global_fix.items():
            if fixings.get(j, val) != val:
                return None  # contradicts a proven global fixing
            p.fix(j, float(val))
        return p

    def note_root_relaxation(self, res) -> None:
        if res.reduced_costs is not None:
            self._root_info = (res.objective, res.reduced_costs, res.at_upper)
            self.update_global_fixings()

    def update_global_fixings(self) -> None:
        """Reduced-cost fixing: a variable whose root reduced cost already
        pushes the bound past ub-1 keeps its root-LP bound value in every
        improving solution."""
        if self._root_info is None:
            return
        bound, rc, at_upper = self._root_info
        cutoff = self.ub - 1 + 1e-6
        for j in range(self.g.mc):
            if j in self.global_fix:
                continue
            if at_upper[j] and bound - rc[j] > cutoff:
                self.global_fix[j] = 1
            elif not at_upper[j] and rc[j] > 0 and bound + rc[j] > cutoff:
                self.global_fix[j] = 0

    def warm_start(self) -> np.ndarray:
        x = np.zeros(self.g.mc)
        for j in self.incumbent:
            x[j] = 1.0
        return x


def solve(g: Graph, cfg: SolverConfig | None = None) -> SolveResult:
    """Solve the minimum chordal completion problem exactly.

    With no limits the result is OPTIMAL with a provably minimum fill set.
    Under a time or node limit the result carries valid lower/upper bounds
    and the best chordal completion found.
    """
    if cfg is None:
        cfg = SolverConfig()
    t0 = time.perf_counter()
    deadline = None if cfg.time_limit_s is None else t0 + cfg.time_limit_s

    ok, _ = is_chordal(g)
    if ok:
        return SolveResult(OPTIMAL, frozenset(), 0, 0, 0,
                           {fam: 0 for fam in FAMILIES}, 0,
                           time.perf_counter() - t0)

    search = _Search(g, cfg)
    incumbent, root_cuts = root_initialize(g, cfg)
    search.offer_incumbent(incumbent)
    for cut in root_cuts:
        search.add_cut(cut)

    search.push(0.0, {})
    lp_cfg = LpConfig()
    status = OPTIMAL
    ceil_tol = 1e-6

    while search.heap:
        if deadline is not None and time.perf_counter() > deadline:
            status = TIME_LIMIT
            break
        if cfg.node_limit is not None and search.nodes >= cfg.node_limit:
            status = FEASIBLE
            break
        bound, _, fixings, start = heapq.heappop(search.heap)
        if math.ceil(bound - ceil_tol) >= search.ub:
            continue  # best-bound order: every other open node is no better
        search.nodes += 1
        _process_node(search, fixings, bound, start, lp_cfg, deadline)

    lb = search.ub
    if status != OPTIMAL and search.heap:
        lb = min(math.ceil(b - ceil_tol) for b, _, _, _ in search.heap)
        lb = min(lb, search.ub)
    if lb == search.ub:
        status = OPTIMAL  # open nodes, if any, cannot improve the incumbent
    return SolveResult(
        status=status,
        best_fill=search.incumbent,
        lower_bound=int(lb),
        upper_bound=int(search.ub),
        nodes=search.nodes,
        cuts_by_family=dict(search.counts),
        total_cuts=len(search.pool),
        wall_time_s=time.perf_counter() - t0,
    )


def _process_node(search: _Search, fixings: dict, bound: float, start,
                  lp_cfg: LpConfig, deadline) -> None:
    g, cfg = search.g, search.cfg
    rounds = 0
    warm = search.warm_start() if start is None else start
    while True:
        if deadline is not None and time.perf_counter() > deadline:
            search.push(bound, fixings, start)  # cuts are global; nothing is lost
            return
        problem = search.build_lp(fixings)
        if problem is None:
            return  # contradicts a globally fixed variable
        res = solve_lp(problem, lp_cfg, start=warm)
        if res.status == INFEASIBLE:
            return
        if res.status == ITERATION_LIMIT:
            logger.warning("LP iteration limit at node; branching on parent bound")
            _branch(search, None, fixings, bound, None)
            return
        warm = res.point.values
        # pull violated pooled rows back into the LP before separating anew
        if search.refresh_active(res.point.values, cfg.violation_tol):
            continue
        if not fixings:
            search.note_root_relaxation(res)
        node_bound = res.objective
        if math.ceil(node_bound - 1e-6) >= search.ub:
            return
        x = res.point
        if x.is_integral(cfg.integrality_tol):
            xi = Point(np.rint(x.values))
            report = separate_integer(
                g, xi, families=cfg.families_enabled,
                max_cycles=cfg.max_cycles_per_call,
                emit_all_positions=cfg.emit_all_positions,
                tol=cfg.violation_tol,
            )
            if not report.cuts:
                search.offer_incumbent(xi.fill_set())
                return
            added = sum(search.add_cut(c) for c in report.cuts)
            search.offer_incumbent(primal_repair(g, xi))
            rounds += 1
            if added == 0 or rounds >= cfg.max_rounds_per_node:
                _branch(search, x, fixings, node_bound, x.values)
                return
        else:
            cuts = _fractional_cuts(search, x)
            added = sum(search.add_cut(c) for c in cuts)
            if search.nodes % cfg.heuristic_interval == 0:
                rounded = frozenset(
                    int(i) for i in np.flatnonzero(x.values >= cfg.delta)
                )
                search.offer_incumbent(primal_repair(g, Point.from_fill(g, rounded)))
            rounds += 1
            if added == 0 or rounds >= cfg.max_rounds_per_node:
                _branch(search, x, fixings, node_bound, x.values)
                return


def _fractional_cuts(search: _Search, x: Point) -> list:
    """Threshold separation at the configured delta, escalating to two
    nearby thresholds whenever the first finds nothing."""
    g, cfg = search.g, search.cfg
    deltas = (cfg.delta, 0.5 * cfg.delta, 0.5 * (1.0 + cfg.delta))
    cuts = []
    for d in deltas:
        report = separate_threshold(
            g, x, d, families=cfg.families_enabled,
            max_cycles=cfg.max_cycles_per_call,
            emit_all_positions=cfg.emit_all_positions,
            tol=cfg.violation_tol,
        )
        cuts.extend(report.cuts)
        if cuts:
            break
    if cfg.exact_i2 and g.n <= cfg.exact_separation_cap:
        cuts += separate_i2_exact(g, x, tol=cfg.violation_tol).cuts
    if cfg.exact_i3 and g.n <= cfg.exact_separation_cap:
        cuts += separate_i3_exact(
            g, x, tol=cfg.violation_tol, vertex_cap=cfg.exact_separation_cap
        ).cuts
    return cuts


def _branch(search: _Search, x: Point | None, fixings: dict, bound: float,
            child_start) -> None:
    g = search.g
    free = [j for j in range(g.mc)
            if j not in fixings and j not in search.global_fix]
    if not free:
        return
    if x is not None:
        j = min(free, key=lambda f: (abs(float(x.values[f]) - 0.5), f))
    else:
        j = free[0]
    for val in (0, 1):
        child = dict(fixings)
        child[j] = val
        search.push(bound, child, child_start)
