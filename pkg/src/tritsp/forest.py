"""Minimum spanning forests with prescribed roots, one root per tree.

Computed by contracting all roots into a single super-vertex and running
dense Prim on the contracted complete graph; the super-edge to a non-root v
costs min over roots r of c(r, v).  Re-expanding assigns every tree to the
root its super-edge used, so components never share a root.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolationError
from .instance import Instance

__all__ = ["RootedForest", "rooted_msf"]


@dataclass(frozen=True)
class RootedForest:
    edges: tuple[tuple[int, int], ...]
    roots: tuple[int, ...]
    cost: int
    component_of: dict[int, int]


def rooted_msf(inst: Instance, vertices, roots) -> RootedForest:
    verts = sorted(set(vertices))
    rts = sorted(set(roots))
    if not rts:
        raise ContractViolationError("at least one root required")
    if not set(rts) <= set(verts):
        raise ContractViolationError(f"roots {rts} not a subset of vertices")
    if verts and not (0 <= verts[0] and verts[-1] < inst.n):
        raise ContractViolationError(f"vertices {verts} out of range for n={inst.n}")

    c = inst.cost
    root_set = set(rts)
    nonroots = [v for v in verts if v not in root_set]
    comp = {r: r for r in rts}
    edges: list[tuple[int, int]] = []
    if nonroots:
        # Prim from the contracted super-vertex; ties resolved by the
        # lexicographically smallest (min endpoint, max endpoint) pair
        best: dict[int, tuple[int, tuple[int, int], int]] = {}
        for v in nonroots:
            key = min((c[r][v], (min(r, v), max(r, v)), r) for r in rts)
            best[v] = key
        out = set(nonroots)
        while out:
            v = min(out, key=lambda x: (best[x][0], best[x][1]))
            out.remove(v)
            cost_v, pair, attach = best[v]
            edges.append(pair)
            comp[v] = comp[attach]
            for u in out:
                cand = (c[v][u], (min(v, u), max(v, u)), v)
                if (cand[0], cand[1]) < (best[u][0], best[u][1]):
                    best[u] = cand
    edges.sort()
    total = sum(c[a][b] for a, b in edges)
    return RootedForest(tuple(edges), tuple(rts), total, comp)
