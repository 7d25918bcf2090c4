"""Random walks, flip graphs and bistellar simplification."""

from __future__ import annotations

import json
import random
import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import (
    Complex,
    IsoMap,
    are_isomorphic,
    is_closed_pseudomanifold,
    isomorphism_key,
    sphere,
)
from .errors import (
    BudgetTooSmall,
    NoAdmissibleMove,
    NodeNotInGraph,
    NotClosedPseudomanifold,
    UnsupportedDimension,
)
from .io import facet_digest, format_facet_list
from .moves import MoveSite, apply_move, enumerate_moves, facet_delta, inverse_site
from .trace import MoveStep, RelabelStep, Trace, replay

BUDGET_SLACK = 3
DEFAULT_MAX_STEPS = 2000
DEFAULT_RESTARTS = 8
ANNEAL_START = 0.3
ANNEAL_PHASES = 5


def default_budget(C: Complex) -> int:
    return C.n_vertices + BUDGET_SLACK


def _sites_within_budget(C: Complex, budget: int) -> list[MoveSite]:
    sites = enumerate_moves(C)
    if C.n_vertices + 1 > budget:
        sites = [s for s in sites if s.kind != C.dim]
    return sites


def random_walk(C: Complex, steps: int, vertex_budget: Optional[int] = None, seed: int = 0) -> tuple[Complex, Trace]:
    """Apply ``steps`` uniformly random admissible moves, never exceeding the vertex budget."""
    budget = default_budget(C) if vertex_budget is None else vertex_budget
    if budget < C.n_vertices:
        raise BudgetTooSmall(f"budget {budget} < {C.n_vertices} vertices")
    rng = random.Random(seed)
    trace = Trace(seed=seed)
    for _ in range(steps):
        sites = _sites_within_budget(C, budget)
        if not sites:
            raise NoAdmissibleMove(f"no admissible move within budget {budget}")
        site = rng.choice(sites)
        C = apply_move(C, site)
        trace.steps.append(MoveStep(site))
    trace.end_digest = facet_digest(C)
    return C, trace


# -- flip graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class FlipEdge:
    """``site`` acts on the source representative; ``iso`` maps the result onto the target's."""

    site: MoveSite
    iso: IsoMap


@dataclass
class FlipGraph:
    nodes: list[Complex]
    edges: dict[tuple[int, int], FlipEdge]
    budget: int
    _buckets: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len({(min(e), max(e)) for e in self.edges})

    def neighbors(self, i: int) -> list[int]:
        return sorted({j for (u, j) in self.edges if u == i} | {u for (u, j) in self.edges if j == i})

    def _add(self, C: Complex, key) -> int:
        self.nodes.append(C)
        self._buckets.setdefault(key, []).append(len(self.nodes) - 1)
        return len(self.nodes) - 1

    def _match(self, C: Complex, key) -> tuple[Optional[int], Optional[IsoMap]]:
        for i in self._buckets.get(key, ()):
            iso = are_isomorphic(C, self.nodes[i])
            if iso is not None:
                return i, iso
        return None, None

    def locate(self, C: Complex) -> tuple[int, IsoMap]:
        """The node isomorphic to ``C`` and a map from ``C`` onto its representative."""
        i, iso = self._match(C, isomorphism_key(C))
        if i is None:
            raise NodeNotInGraph("complex is not isomorphic to any node")
        return i, iso

    def is_connected(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            for j in self.neighbors(todo.pop()):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == len(self.nodes)

    def adjacency_text(self) -> str:
        lines = []
        for i in range(len(self.nodes)):
            out = [f"{j}[{self.edges[(i, j)].site.kind}]" for j in range(len(self.nodes)) if (i, j) in self.edges]
            lines.append(f"{i}: " + " ".join(out) if out else f"{i}:")
        return "\n".join(lines) + "\n"

    def export(self, directory) -> None:
        """Write ``graph.txt`` plus ``nodes/node_<id>.txt`` facet lists."""
        root = Path(directory)
        (root / "nodes").mkdir(parents=True, exist_ok=True)
        (root / "graph.txt").write_text(self.adjacency_text())
        for i, C in enumerate(self.nodes):
            (root / "nodes" / f"node_{i}.txt").write_text(format_facet_list(C))


def _expand(args) -> list[tuple[MoveSite, Complex, tuple]]:
    C, budget = args
    out = []
    for site in _sites_within_budget(C, budget):
        child = apply_move(C, site)
        out.append((site, child, isomorphism_key(child)))
    return out


def build_flip_graph(C0: Complex, vertex_budget: Optional[int] = None, jobs: int = 1) -> FlipGraph:
    """Breadth-first closure of ``C0`` under moves, one node per isomorphism class.

    Frontier expansion may run in ``jobs`` worker processes; merging happens
    in frontier order so the graph is identical for any ``jobs``.
    """
    budget = default_budget(C0) if vertex_budget is None else vertex_budget
    if budget < C0.n_vertices:
        raise BudgetTooSmall(f"budget {budget} < {C0.n_vertices} vertices")
    if not is_closed_pseudomanifold(C0):
        raise NotClosedPseudomanifold("flip graphs are built from closed complexes")
    G = FlipGraph(nodes=[], edges={}, budget=budget)
    G._add(C0, isomorphism_key(C0))
    frontier = [0]
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while frontier:
            work = [(G.nodes[i], budget) for i in frontier]
            expansions = pool.map(_expand, work) if pool else map(_expand, work)
            nxt = []
            for i, children in zip(frontier, expansions):
                for site, child, key in children:
                    j, iso = G._match(child, key)
                    if j is None:
                        j = G._add(child, key)
                        iso = {v: v for v in child.vertices}
                        nxt.append(j)
                    if j != i and (i, j) not in G.edges:
                        G.edges[(i, j)] = FlipEdge(site, iso)
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    return G


def _shortest_path(G: FlipGraph, src: int, dst: int) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for (a, b) in sorted(G.edges):
            if a == u and b not in prev:
                prev[b] = u
                queue.append(b)
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def connectivity_certificate(G: FlipGraph, C1: Complex, C2: Complex) -> Optional[Trace]:
    """A concrete move sequence from ``C1`` to ``C2`` along a shortest path in ``G``.

    The trace ends with a relabeling step when the last move lands on a
    relabeled copy of ``C2``; it is replayed before being returned.
    """
    i1, psi = G.locate(C1)
    i2, phi2 = G.locate(C2)
    path = _shortest_path(G, i1, i2)
    if path[0] != i1:
        return None
    X = C1
    steps: list = []
    for u, w in zip(path, path[1:]):
        edge = G.edges[(u, w)]
        back = {r: x for x, r in psi.items()}  # representative label -> X label
        if edge.site.kind == X.dim:
            back[edge.site.b[0]] = X.fresh_label
        site = MoveSite(tuple(back[r] for r in edge.site.a), tuple(back[r] for r in edge.site.b))
        X = apply_move(X, site)
        steps.append(MoveStep(site))
        psi = {back[r]: edge.iso[r] for r in back if back[r] in X.vertices}
    to_c2 = {r: c for c, r in phi2.items()}
    mapping = tuple(sorted((x, to_c2[psi[x]]) for x in X.vertices if to_c2[psi[x]] != x))
    if mapping:
        steps.append(RelabelStep(mapping))
    trace = Trace(steps=steps, end_digest=facet_digest(C2))
    if replay(C1, trace) != C2:
        raise RuntimeError("certificate failed to replay")
    return trace


# -- simplification -----------------------------------------------------------------


def _key_delta(site: MoveSite, d: int) -> tuple[int, int]:
    if site.kind == d:
        return (1, facet_delta(site))
    if site.kind == 0:
        return (-1, facet_delta(site))
    return (0, facet_delta(site))


def is_boundary_simplex(C: Complex) -> bool:
    """True iff ``C`` is isomorphic to the boundary of the (d+1)-simplex."""
    if C.n_vertices != C.dim + 2 or len(C) != C.dim + 2:
        return False
    return are_isomorphic(C, sphere(C.dim)) is not None


@dataclass
class SearchReport:
    verdict: str
    final: Complex
    trace: Trace
    stats: dict
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "verdict": self.verdict,
            "stats": self.stats,
            "final": {"dim": self.final.dim, "facets": [list(f) for f in self.final.sorted_facets]},
            "trace": self.trace.to_text(),
        }
        if include_timing:
            doc["elapsed"] = round(self.elapsed, 6)
        return doc

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"


def _descend(args) -> tuple[bool, Complex, list[MoveStep]]:
    """One greedy run with annealed exploration; the inverse of an exploratory move is tabu next step."""
    C, seed, max_steps, anneal_start = args
    d = C.dim
    rng = random.Random(seed)
    p = anneal_start
    period = max(1, max_steps // ANNEAL_PHASES)
    steps: list[MoveStep] = []
    tabu = None
    for n in range(max_steps):
        if is_boundary_simplex(C):
            return True, C, steps
        sites = [s for s in enumerate_moves(C) if s.kind != d and s != tabu]
        improving = [s for s in sites if _key_delta(s, d) < (0, 0)]
        others = [s for s in sites if _key_delta(s, d) >= (0, 0)]
        if improving and (not others or rng.random() >= p):
            best = min(_key_delta(s, d) for s in improving)
            site = rng.choice([s for s in improving if _key_delta(s, d) == best])
            anneal = False
        elif others:
            site = rng.choice(others)
            anneal = True
        else:
            break
        C = apply_move(C, site)
        steps.append(MoveStep(site, anneal))
        tabu = inverse_site(site) if anneal else None
        if (n + 1) % period == 0:
            p /= 2
    return is_boundary_simplex(C), C, steps


def simplify(
    C: Complex,
    seed: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    restarts: int = DEFAULT_RESTARTS,
    anneal_start: float = ANNEAL_START,
    jobs: int = 1,
) -> SearchReport:
    """Try to reduce a closed complex to the boundary of a simplex by moves.

    Greedy descent on ``(f_0, f_d)`` with annealed exploration and restarts
    seeded from ``seed``.  ``REDUCED`` certifies a PL sphere; ``UNKNOWN``
    certifies nothing.
    """
    if C.dim > 3:
        raise UnsupportedDimension(f"simplification supports d <= 3, got {C.dim}")
    if not is_closed_pseudomanifold(C):
        raise NotClosedPseudomanifold("simplify needs a closed pseudomanifold")
    began = time.perf_counter()
    master = random.Random(seed)
    seeds = [master.getrandbits(64) for _ in range(max(1, restarts))]
    work = [(C, s, max_steps, anneal_start) for s in seeds]

    runs = []
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            runs = list(pool.map(_descend, work))
    else:
        for item in work:
            runs.append(_descend(item))
            if runs[-1][0]:
                break
    chosen = next((i for i, r in enumerate(runs) if r[0]), None)
    if chosen is None:
        chosen = min(range(len(runs)), key=lambda i: (runs[i][1].n_vertices, len(runs[i][1]), i))
    reduced, final, steps = runs[chosen]
    kinds = Counter(s.site.kind for s in steps)
    stats = {
        "seed": seed,
        "restarts_used": chosen + 1,
        "steps": len(steps),
        "anneal_steps": sum(s.anneal for s in steps),
        "moves_by_kind": {str(k): kinds.get(k, 0) for k in range(C.dim + 1)},
        "start_key": [C.n_vertices, len(C)],
        "final_key": [final.n_vertices, len(final)],
    }
    trace = Trace(seed=seeds[chosen], steps=steps, end_digest=facet_digest(final))
    return SearchReport(
        verdict="REDUCED" if reduced else "UNKNOWN",
        final=final,
        trace=trace,
        stats=stats,
        elapsed=time.perf_counter() - began,
    )
