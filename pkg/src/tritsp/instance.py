"""Instance model: symmetric integer cost matrices, triangle audits, file IO,
and the two instance generators (uniform metric, planted violations).

All costs are plain Python ints and every downstream computation stays in
exact integer arithmetic.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    AsymmetricCostError,
    DimensionMismatchError,
    GenerationRetryError,
    NegativeCostError,
    ParseError,
)

__all__ = [
    "Instance",
    "TriangleAudit",
    "audit_triangles",
    "load_instance",
    "save_instance",
    "gen_metric",
    "gen_planted",
]


def _check_int(x: object) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class Instance:
    """A complete undirected graph given by name and symmetric cost matrix."""

    name: str
    cost: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.cost)
        if n == 0:
            raise DimensionMismatchError("empty cost matrix")
        for i, row in enumerate(self.cost):
            if len(row) != n:
                raise DimensionMismatchError(
                    f"row {i} has {len(row)} entries, expected {n}"
                )
            for j, x in enumerate(row):
                if not _check_int(x):
                    raise ParseError(f"cost[{i}][{j}] is not an integer")
                if x < 0:
                    raise NegativeCostError(f"cost[{i}][{j}] = {x} is negative")
            if row[i] != 0:
                raise NegativeCostError(f"diagonal cost[{i}][{i}] = {row[i]} != 0")
        for i in range(n):
            for j in range(i + 1, n):
                if self.cost[i][j] != self.cost[j][i]:
                    raise AsymmetricCostError(
                        f"cost[{i}][{j}] = {self.cost[i][j]} != "
                        f"cost[{j}][{i}] = {self.cost[j][i]}"
                    )

    @property
    def n(self) -> int:
        return len(self.cost)

    @classmethod
    def from_rows(cls, name: str, rows) -> "Instance":
        return cls(name, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class TriangleAudit:
    """Result of scanning all vertex triples for triangle-inequality breaks.

    A triple violates when its largest side strictly exceeds the sum of the
    other two.  A vertex is bad when it sits in at least one violating triple,
    good otherwise.
    """

    violating: tuple[tuple[int, int, int], ...]
    bad: tuple[int, ...]
    good: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.violating)

    @property
    def k_t(self) -> int:
        return len(self.bad)


def audit_triangles(inst: Instance) -> TriangleAudit:
    """Enumerate every violating triple of `inst` and classify vertices."""
    n = inst.n
    c = inst.cost
    violating: list[tuple[int, int, int]] = []
    bad: set[int] = set()
    for u in range(n - 2):
        cu = c[u]
        for v in range(u + 1, n - 1):
            cv = c[v]
            duv = cu[v]
            for w in range(v + 1, n):
                a = cu[w]
                b = cv[w]
                big = duv if duv >= a else a
                if b > big:
                    big = b
                # strict violation: the max side exceeds the other two combined
                if 2 * big > duv + a + b:
                    violating.append((u, v, w))
                    bad.add(u)
                    bad.add(v)
                    bad.add(w)
    good = tuple(v for v in range(n) if v not in bad)
    return TriangleAudit(tuple(violating), tuple(sorted(bad)), good)


# ---------------------------------------------------------------------------
# File formats: native JSON and a small TSPLIB subset.

def save_instance(inst: Instance) -> bytes:
    """Serialize to the native JSON format (round-trips with load_instance)."""
    obj = {"name": inst.name, "n": inst.n, "cost": [list(r) for r in inst.cost]}
    return (json.dumps(obj, separators=(",", ":")) + "\n").encode("ascii")


def load_instance(source) -> Instance:
    """Parse an instance from a file path or raw bytes.  JSON if the payload
    starts with '{', otherwise the TSPLIB subset (EXPLICIT FULL_MATRIX or
    EUC_2D)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8", errors="replace")
    else:
        text = Path(source).read_text(encoding="utf-8", errors="replace")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _load_json(text)
    return _load_tsplib(text)


def _load_json(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    extra = set(obj) - {"name", "n", "cost"}
    if extra:
        raise ParseError(f"unknown keys: {sorted(extra)}")
    for key in ("name", "n", "cost"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    if not isinstance(obj["name"], str):
        raise ParseError("name must be a string")
    if not _check_int(obj["n"]) or obj["n"] < 1:
        raise ParseError("n must be a positive integer")
    if not isinstance(obj["cost"], list) or not all(
        isinstance(r, list) for r in obj["cost"]
    ):
        raise ParseError("cost must be a list of lists")
    if len(obj["cost"]) != obj["n"]:
        raise DimensionMismatchError(
            f"declared n={obj['n']} but cost has {len(obj['cost'])} rows"
        )
    return Instance.from_rows(obj["name"], obj["cost"])


_TSPLIB_KEYS = {
    "NAME",
    "COMMENT",
    "TYPE",
    "DIMENSION",
    "EDGE_WEIGHT_TYPE",
    "EDGE_WEIGHT_FORMAT",
}


def _load_tsplib(text: str) -> Instance:
    lines = text.splitlines()
    fields: dict[str, str] = {}
    name = "tsplib"
    i = 0
    section = None
    section_line = 0
    while i < len(lines):
        raw = lines[i].strip()
        i += 1
        if not raw:
            continue
        if raw == "EOF":
            break
        if raw in ("NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION"):
            section = raw
            section_line = i
            break
        if ":" in raw:
            key, _, val = raw.partition(":")
            key = key.strip().upper()
            val = val.strip()
            if key not in _TSPLIB_KEYS:
                raise ParseError(f"unsupported keyword {key!r}", line=i)
            fields[key] = val
            if key == "NAME":
                name = val
        else:
            raise ParseError(f"unrecognized line {raw!r}", line=i)

    if fields.get("TYPE", "TSP").split()[0] != "TSP":
        raise ParseError(f"unsupported TYPE {fields.get('TYPE')!r}")
    if "DIMENSION" not in fields:
        raise ParseError("missing DIMENSION")
    try:
        n = int(fields["DIMENSION"])
    except ValueError:
        raise ParseError(f"bad DIMENSION {fields['DIMENSION']!r}") from None
    if n < 1:
        raise DimensionMismatchError(f"DIMENSION must be >= 1, got {n}")
    ewt = fields.get("EDGE_WEIGHT_TYPE")
    if section is None:
        raise ParseError("missing data section")

    body: list[str] = []
    while i < len(lines):
        raw = lines[i].strip()
        i += 1
        if raw == "EOF" or not raw:
            continue
        body.append(raw)

    if ewt == "EXPLICIT":
        if fields.get("EDGE_WEIGHT_FORMAT") != "FULL_MATRIX":
            raise ParseError(
                f"unsupported EDGE_WEIGHT_FORMAT {fields.get('EDGE_WEIGHT_FORMAT')!r}"
            )
        if section != "EDGE_WEIGHT_SECTION":
            raise ParseError("EXPLICIT weights need EDGE_WEIGHT_SECTION", line=section_line)
        vals: list[int] = []
        for off, raw in enumerate(body):
            for tok in raw.split():
                try:
                    vals.append(int(tok))
                except ValueError:
                    raise ParseError(
                        f"non-integer weight {tok!r}", line=section_line + 1 + off
                    ) from None
        if len(vals) != n * n:
            raise DimensionMismatchError(
                f"expected {n * n} weights, got {len(vals)}"
            )
        rows = [vals[r * n : (r + 1) * n] for r in range(n)]
        return Instance.from_rows(name, rows)

    if ewt == "EUC_2D":
        if section != "NODE_COORD_SECTION":
            raise ParseError("EUC_2D needs NODE_COORD_SECTION", line=section_line)
        coords: dict[int, tuple[float, float]] = {}
        for off, raw in enumerate(body):
            toks = raw.split()
            if len(toks) != 3:
                raise ParseError(
                    f"coord line needs 'id x y', got {raw!r}",
                    line=section_line + 1 + off,
                )
            try:
                idx = int(toks[0])
                x = float(toks[1])
                y = float(toks[2])
            except ValueError:
                raise ParseError(
                    f"bad coord line {raw!r}", line=section_line + 1 + off
                ) from None
            coords[idx] = (x, y)
        if sorted(coords) != list(range(1, n + 1)):
            raise DimensionMismatchError(
                f"need coords for ids 1..{n}, got {sorted(coords)}"
            )
        pts = [coords[i_ + 1] for i_ in range(n)]
        rows = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                dx = pts[a][0] - pts[b][0]
                dy = pts[a][1] - pts[b][1]
                d = int(math.sqrt(dx * dx + dy * dy) + 0.5)  # TSPLIB nint
                rows[a][b] = rows[b][a] = d
        return Instance.from_rows(name, rows)

    raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {ewt!r}")


# ---------------------------------------------------------------------------
# Generators.  Both are deterministic in (n, seed) and re-audit their output.

_BOX = 100_000
_CLUSTER_RADIUS = 150
_CLEARANCE = 25_000
_ATTEMPTS = 64


def _nint_isqrt(x: int) -> int:
    """Nearest integer to sqrt(x), exactly (no floats)."""
    d = math.isqrt(x)
    return d + 1 if x - d * d > d else d


def _dist(p: tuple[int, int], q: tuple[int, int]) -> int:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return _nint_isqrt(dx * dx + dy * dy)


def _points_instance(name: str, pts: list[tuple[int, int]]) -> Instance:
    n = len(pts)
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            d = _dist(pts[a], pts[b])
            rows[a][b] = rows[b][a] = d
    return Instance.from_rows(name, rows)


def gen_metric(n: int, seed: int) -> Instance:
    """Random planar points with rounded Euclidean costs; retries until the
    audit confirms zero violations (rounding can break near-collinear triples)."""
    if n < 1:
        raise DimensionMismatchError(f"n must be >= 1, got {n}")
    rng = random.Random(seed)
    name = f"metric-n{n}-s{seed}"
    for _ in range(_ATTEMPTS):
        pts = [(rng.randrange(_BOX), rng.randrange(_BOX)) for _ in range(n)]
        inst = _points_instance(name, pts)
        if not audit_triangles(inst).violating:
            return inst
    raise GenerationRetryError(f"gen_metric({n}, {seed}): retries exhausted")


def gen_planted(n: int, target_bad: int, seed: int) -> Instance:
    """Metric base with one tight cluster of `target_bad` points, then selected
    in-cluster edges are inflated just past a triangle bound so violations stay
    confined to the cluster.  Every non-cluster vertex keeps all its triangles
    metric by construction (inflated edges stay below the cheapest two-hop
    route through any outside vertex).  Retries until the audited bad set is
    exactly the planted cluster.
    """
    if n < 4:
        raise DimensionMismatchError(f"n must be >= 4, got {n}")
    if not 3 <= target_bad <= n - 1:
        raise DimensionMismatchError(
            f"target_bad must be in [3, n-1], got {target_bad} for n={n}"
        )
    rng = random.Random(seed)
    name = f"planted-n{n}-b{target_bad}-s{seed}"
    for _ in range(_ATTEMPTS):
        cx = rng.randrange(30_000, 70_000)
        cy = rng.randrange(30_000, 70_000)
        labels = list(range(n))
        rng.shuffle(labels)
        chosen = sorted(labels[:target_bad])
        chosen_set = set(chosen)
        pts: list[tuple[int, int]] = [(0, 0)] * n
        for v in range(n):
            if v in chosen_set:
                pts[v] = (
                    cx + rng.randrange(-_CLUSTER_RADIUS, _CLUSTER_RADIUS + 1),
                    cy + rng.randrange(-_CLUSTER_RADIUS, _CLUSTER_RADIUS + 1),
                )
            else:
                while True:
                    p = (rng.randrange(_BOX), rng.randrange(_BOX))
                    if _dist(p, (cx, cy)) >= _CLEARANCE:
                        pts[v] = p
                        break
        base = _points_instance(name, pts)
        if audit_triangles(base).violating:
            continue

        rows = [list(r) for r in base.cost]
        outside = [x for x in range(n) if x not in chosen_set]
        order = list(chosen)
        rng.shuffle(order)
        pairs = [(order[i], order[i + 1]) for i in range(0, len(order) - 1, 2)]
        if len(order) % 2 == 1:
            pairs.append((order[-1], order[0]))
        applied = 0
        for u, v in pairs:
            inside = min(
                rows[u][w] + rows[v][w] for w in chosen if w != u and w != v
            )
            cap = min(rows[u][x] + rows[v][x] for x in outside) - 1
            new = inside + rng.randint(5, 60)
            if new > cap or new <= rows[u][v]:
                continue
            rows[u][v] = rows[v][u] = new
            applied += 1
        if applied == 0:
            continue
        inst = Instance.from_rows(name, rows)
        audit = audit_triangles(inst)
        if audit.k >= 1 and set(audit.bad) == chosen_set:
            return inst
    raise GenerationRetryError(
        f"gen_planted({n}, {target_bad}, {seed}): retries exhausted"
    )
