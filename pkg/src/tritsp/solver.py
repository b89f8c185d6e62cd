"""Tour construction parameterized by the number of bad vertices.

Every chain layout of the bad vertices is evaluated independently: bad
cycle, rooted spanning forest over the good vertices, parity matching,
then the shortcut pipeline.  The cheapest resulting tour wins; ties break
on the lexicographically smallest rotation so the answer is independent
of evaluation order (and of worker scheduling under --jobs).

Special regimes short-circuit the enumeration: n <= 3 has a unique tour,
instances with no violating triangle go through the tree-plus-matching
1.5-approximation, and instances where every vertex is bad reduce to
exact search over the (m-1)! single-chain layouts, whose bad cycle
already is a Hamiltonian cycle.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import ContractViolationError, SizeRefusalError
from .forest import rooted_msf
from .instance import Instance, TriangleAudit, audit_triangles
from .layouts import ChainLayout, build_bad_cycle, enumerate_layouts
from .matching import min_cost_perfect_matching
from .multigraph import MultiGraph
from .shortcut import (
    Tour,
    assemble_eulerian,
    canonical_rotation,
    euler_tour,
    graph_cost,
    repair_double_bad_edges,
    splice_bad,
    splice_good,
    walk_cost,
)

__all__ = [
    "SolveOptions",
    "LayoutResult",
    "SolveReport",
    "evaluate_layout",
    "christofides",
    "solve",
]

_BATCH = 64


@dataclass(frozen=True)
class SolveOptions:
    max_bad: int = 9
    jobs: int = 1
    verify_matchings: bool = False


@dataclass(frozen=True)
class LayoutResult:
    layout_id: str
    order: tuple[int, ...]
    cost: int
    certified: bool
    cycle_cost: int
    forest_cost: int
    matching_cost: int
    step_costs: tuple[int, ...]

    @property
    def steps_monotone(self) -> bool:
        sc = self.step_costs
        return all(sc[i + 1] <= sc[i] for i in range(len(sc) - 1))


@dataclass(frozen=True)
class SolveReport:
    tour: Tour
    k: int
    k_t: int
    regime: str
    layouts: int = 0
    certified: int = 0
    # AND over certified layouts of per-step cost monotonicity, and over
    # all layouts of "output is a permutation of the vertices"
    steps_monotone: bool = True
    tours_hamiltonian: bool = True
    best: LayoutResult | None = field(default=None, compare=False)


def evaluate_layout(
    inst: Instance,
    audit: TriangleAudit,
    layout: ChainLayout,
    verify: bool = False,
    keep_graph: bool = False,
):
    """Run one chain layout through the whole pipeline.

    Returns a LayoutResult, or a (LayoutResult, repaired multigraph) pair
    when keep_graph is set (the bound checks need the post-repair graph).
    """
    cycle = build_bad_cycle(layout, inst)
    roots = set(layout.ends)
    forest = rooted_msf(inst, set(audit.good) | roots, roots)
    g1 = cycle.copy()
    for a, b in forest.edges:
        g1.add_edge(a, b)
    matching = min_cost_perfect_matching(inst, g1.odd_vertices(), verify=verify)
    h = assemble_eulerian(cycle, forest, matching)
    steps = [graph_cost(inst, h)]
    repaired = repair_double_bad_edges(h, audit, inst, steps)
    walk = euler_tour(h)
    walk, spliced = splice_bad(walk, audit, inst, steps)
    walk = splice_good(walk, audit, inst, steps)
    result = LayoutResult(
        layout_id=layout.layout_id,
        order=canonical_rotation(walk),
        cost=walk_cost(inst, walk),
        certified=repaired and spliced,
        cycle_cost=graph_cost(inst, cycle),
        forest_cost=forest.cost,
        matching_cost=matching.cost,
        step_costs=tuple(steps),
    )
    if keep_graph:
        return result, h
    return result


def _evaluate_batch(inst, audit, layouts, verify):
    return [evaluate_layout(inst, audit, lay, verify) for lay in layouts]


def _trivial_tour(inst: Instance) -> Tour:
    order = tuple(range(inst.n))
    return Tour(order, walk_cost(inst, order), "trivial")


def christofides(inst: Instance, audit: TriangleAudit | None = None) -> Tour:
    """Tree + matching 1.5-approximation; the cost matrix must be metric."""
    if audit is None:
        audit = audit_triangles(inst)
    if audit.k != 0:
        raise ContractViolationError("christofides needs a metric instance")
    n = inst.n
    if n <= 3:
        return _trivial_tour(inst)
    forest = rooted_msf(inst, range(n), {0})
    tree = MultiGraph(n)
    for a, b in forest.edges:
        tree.add_edge(a, b)
    matching = min_cost_perfect_matching(inst, tree.odd_vertices())
    h = assemble_eulerian(MultiGraph(n), forest, matching)
    walk = euler_tour(h)
    walk = splice_good(walk, audit, inst)
    return Tour(canonical_rotation(walk), walk_cost(inst, walk), "christofides")


def _better(a: tuple[int, tuple[int, ...]], b) -> bool:
    return b is None or a < b


def solve(inst: Instance, opts: SolveOptions | None = None) -> SolveReport:
    opts = opts or SolveOptions()
    audit = audit_triangles(inst)
    n = inst.n

    if n <= 3:
        return SolveReport(_trivial_tour(inst), audit.k, audit.k_t, "trivial")

    if audit.k == 0:
        tour = christofides(inst, audit)
        return SolveReport(tour, 0, 0, "metric")

    if audit.k_t > opts.max_bad:
        raise SizeRefusalError(
            f"{audit.k_t} bad vertices exceeds the limit of {opts.max_bad}"
        )

    if not audit.good:
        # every layout's bad cycle is already a Hamiltonian cycle; the
        # single-chain layouts alone cover all of them up to rotation
        best = None
        count = 0
        for lay in enumerate_layouts(audit, good_count=1):
            count += 1
            order = canonical_rotation(lay.vertices)
            key = (walk_cost(inst, order), order)
            if _better(key, best):
                best = key
                best_id = lay.layout_id
        tour = Tour(best[1], best[0], best_id)
        return SolveReport(tour, audit.k, audit.k_t, "all-bad", count, count)

    layouts = enumerate_layouts(audit, len(audit.good))
    best_key = None
    best_result = None
    count = 0
    certified = 0
    monotone = True
    hamiltonian = True
    expected = tuple(range(n))

    def absorb(res: LayoutResult):
        nonlocal best_key, best_result, count, certified, monotone, hamiltonian
        count += 1
        if res.certified:
            certified += 1
            monotone = monotone and res.steps_monotone
        hamiltonian = hamiltonian and tuple(sorted(res.order)) == expected
        key = (res.cost, res.order)
        if _better(key, best_key):
            best_key = key
            best_result = res

    if opts.jobs <= 1:
        for lay in layouts:
            absorb(evaluate_layout(inst, audit, lay, opts.verify_matchings))
    else:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            pending = set()
            while True:
                batch = list(itertools.islice(layouts, _BATCH))
                if batch:
                    pending.add(
                        pool.submit(
                            _evaluate_batch, inst, audit, batch, opts.verify_matchings
                        )
                    )
                if not pending:
                    break
                if len(pending) >= 2 * opts.jobs or not batch:
                    done = next(iter(pending))
                    # drain any finished future first to keep memory flat
                    for f in pending:
                        if f.done():
                            done = f
                            break
                    pending.remove(done)
                    for res in done.result():
                        absorb(res)

    if best_result is None:
        raise ContractViolationError("no layout produced a tour")
    tour = Tour(best_result.order, best_result.cost, best_result.layout_id)
    return SolveReport(
        tour,
        audit.k,
        audit.k_t,
        "chains",
        count,
        certified,
        monotone,
        hamiltonian,
        best_result,
    )
