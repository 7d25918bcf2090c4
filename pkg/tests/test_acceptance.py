"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""

import random
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Callable, NamedTuple

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from pachner import core  # noqa: E402
from pachner.core import boundary_complex, from_facets  # noqa: E402
from pachner.explore import build_flip_graph, random_walk, simplify  # noqa: E402
from pachner.moves import (  # noqa: E402
    MoveSite,
    apply_move,
    enumerate_moves,
    factor_via_stellar,
    inverse_site,
)
from pachner.shellings import (  # noqa: E402
    apply_inverse_shelling,
    apply_shelling,
    enumerate_inverse_shellings,
    enumerate_shellings,
)
from pachner.trace import MoveStep, ShellStep, Trace, apply_step  # noqa: E402

RP2_6 = [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
         (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)]


class Outcome(NamedTuple):
    ok: bool
    detail: str
    artifact: bytes = b""
    seconds: float = 0.0


class Criterion(NamedTuple):
    title: str
    limit: float
    run: Callable[[], Outcome]


CRITERIA: dict[int, Criterion] = {}


def criterion(n: int, title: str, limit: float):
    def register(fn):
        CRITERIA[n] = Criterion(title, limit, fn)
        return fn
    return register


def _in_budget(C, budget):
    return [s for s in enumerate_moves(C) if s.kind < C.dim or C.n_vertices < budget]


@criterion(1, "move taxonomy", 1.0)
def taxonomy():
    problems = []
    for d in (1, 2, 3):
        kinds = set()
        for C in _catalog(d):
            sites = enumerate_moves(C)
            brute = oracles.brute_admissible(C.facets, C.fresh_label)
            if [(s.a, s.b) for s in sites] != brute:
                problems.append(f"d={d} disagrees with brute force on {sorted(C.facets)}")
            kinds.update(s.kind for s in sites)
        if kinds != set(range(d + 1)):
            problems.append(f"d={d} realizes kinds {sorted(kinds)}")
    sites = enumerate_moves(core.sphere(2))
    if len(sites) != 4 or {s.kind for s in sites} != {2}:
        problems.append(f"boundary of tetrahedron has {len(sites)} sites")
    return Outcome(not problems, "; ".join(problems) or "kinds 0..d for d=1,2,3; 4 kind-2 sites on the tetrahedron boundary")


def _catalog(d):
    # generators plus a few moved complexes so every kind has a chance to show up
    base = [core.full_simplex(d), core.sphere(d), core.cone(core.sphere(d - 1)), core.suspension(core.sphere(d - 1))]
    if d >= 2:
        base.append(core.suspension(core.suspension(core.sphere(d - 2))))
    S = core.sphere(d)
    walked = apply_move(S, enumerate_moves(S)[0])
    return base + [walked]


@criterion(2, "figure reproduction", 1.0)
def figures():
    cases = [
        ([(1, 2, 3), (1, 2, 4)], MoveSite((1, 2), (3, 4)), {(1, 3, 4), (2, 3, 4)}),
        ([(1, 2, 3)], MoveSite((1, 2, 3), (4,)), {(1, 2, 4), (1, 3, 4), (2, 3, 4)}),
        ([(1, 2, 3, 4), (1, 2, 3, 5)], MoveSite((1, 2, 3), (4, 5)), {(1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)}),
    ]
    bad = []
    for facets, site, expected in cases:
        C = from_facets(facets)
        out = apply_move(C, site)
        if set(out.facets) != expected or apply_move(out, inverse_site(site)) != C:
            bad.append(str(site))
    return Outcome(not bad, "mismatch at " + ", ".join(bad) if bad else "2-2, 1-3 and 2-3 outputs match")


@criterion(3, "Euler invariance", 30.0)
def euler_invariance():
    artifact, bad = [], []
    for d in (2, 3, 4):
        S = core.sphere(d)
        chi = core.euler_characteristic(S)
        end, trace = random_walk(S, 1000, d + 8, seed=3000 + d)
        C = S
        for i, step in enumerate(trace.steps, 1):
            C = apply_step(C, step)
            if core.euler_characteristic(C) != chi:
                bad.append(f"d={d} step {i}")
                break
        if C != end or len(trace) != 1000:
            bad.append(f"d={d} replay mismatch")
        artifact.append(trace.to_text())
    return Outcome(not bad, ", ".join(bad) or "chi constant over 3 x 1000 moves", "".join(artifact).encode())


@criterion(4, "round-trip law", 30.0)
def round_trips():
    artifact, bad = [], 0
    kinds = Counter()
    for d in (2, 3):
        rng = random.Random(4000 + d)
        C = core.sphere(d)
        steps = []
        for _ in range(1000):
            site = rng.choice(_in_budget(C, d + 8))
            D = apply_move(C, site)
            if apply_move(D, inverse_site(site)).facets != C.facets:
                bad += 1
            kinds[d, site.kind] += 1
            steps.append(MoveStep(site))
            C = D
        artifact.append(Trace(start=f"sphere{d}", seed=4000 + d, steps=steps).to_text())
    spread = " ".join(f"d{d}k{k}:{n}" for (d, k), n in sorted(kinds.items()))
    return Outcome(bad == 0, f"{bad} failures of 2000; {spread}", "".join(artifact).encode())


@criterion(5, "flip graph witness at budget 7", 60.0)
def flip_graph():
    G = build_flip_graph(core.sphere(2), 7)
    by_size = Counter(X.n_vertices for X in G.nodes)
    expected = {n: len(oracles.sphere_classes(n)) for n in (4, 5, 6, 7)}
    problems = []
    if dict(by_size) != expected or len(G) != 9:
        problems.append(f"classes {dict(by_size)} vs oracle {expected}")
    if not G.is_connected():
        problems.append("not connected")
    for X in G.nodes:
        if not (X.dim == 2 and core.is_closed_pseudomanifold(X) and core.is_combinatorial_manifold(X)
                and core.euler_characteristic(X) == 2):
            problems.append(f"bad node {sorted(X.facets)}")
    for n in (4, 5, 6, 7):
        for rep in oracles.sphere_classes(n):
            G.locate(from_facets(rep))
    detail = "; ".join(problems) or f"9 classes {[by_size[n] for n in (4, 5, 6, 7)]}, connected, {G.n_edges} edges"
    return Outcome(not problems, detail, G.adjacency_text().encode())


@criterion(6, "simplification heuristic", 120.0)
def simplification():
    artifact, reduced = [], {}
    for d, moves, budget in ((2, 30, 12), (3, 20, 10)):
        reduced[d] = 0
        for seed in range(20):
            start, _ = random_walk(core.sphere(d), moves, budget, seed=6000 + 100 * d + seed)
            report = simplify(start, seed=seed)
            reduced[d] += report.verdict == "REDUCED"
            artifact += [report.to_json(), report.trace.to_text()]
    ok = reduced[2] == 20 and reduced[3] >= 18
    return Outcome(ok, f"d=2 {reduced[2]}/20 REDUCED, d=3 {reduced[3]}/20 REDUCED", "".join(artifact).encode())


@criterion(7, "shelling boundary law", 60.0)
def shelling_law():
    rng = random.Random(7000)
    C = from_facets([(1, 2, 3, 4)])
    steps, failures, counts = [], 0, Counter()
    for step in range(500):
        grow = len(C) < 3 or rng.random() < (0.7 if step < 250 else 0.35)
        if grow:
            site = rng.choice(enumerate_inverse_shellings(C))
            out, witness = apply_inverse_shelling(C, site.sigma)
        else:
            site = rng.choice(enumerate_shellings(C))
            out, witness = apply_shelling(C, site)
        exact = (witness.verify() and witness.before == boundary_complex(C)
                 and witness.after == boundary_complex(out))
        failures += not exact
        counts["glue" if grow else "shell"] += 1
        steps.append(ShellStep(site, add=grow))
        C = out
    detail = f"{failures} failures; {counts['glue']} gluings, {counts['shell']} shellings"
    return Outcome(failures == 0, detail, Trace(seed=7000, steps=steps).to_text().encode())


@criterion(8, "stellar factorization", 30.0)
def stellar():
    failures, kinds = 0, Counter()
    for d in (2, 3):
        rng = random.Random(8000 + d)
        C = core.sphere(d)
        for _ in range(250):
            sites = _in_budget(C, d + 7)
            probe = rng.choice(sites)
            if factor_via_stellar(C, probe).compose(C) != apply_move(C, probe):
                failures += 1
            kinds[probe.kind] += 1
            C = apply_move(C, rng.choice(sites))
    spread = " ".join(f"k{k}:{n}" for k, n in sorted(kinds.items()))
    return Outcome(failures == 0, f"{failures} failures of 500; {spread}")


@criterion(9, "invariant sensitivity on RP2", 30.0)
def rp2_control():
    C = from_facets(RP2_6)
    problems = []
    edges = Counter(e for f in RP2_6 for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])))
    if set(edges.values()) != {2} or not oracles._circle_links(RP2_6, 6):
        problems.append("oracle: not a closed surface")
    if oracles.brute_euler(RP2_6) != 1 or oracles.brute_orientable(RP2_6):
        problems.append("oracle: chi/orientability")
    if core.euler_characteristic(C) != 1 or core.is_orientable(C):
        problems.append("library: chi/orientability")
    _, trace = random_walk(C, 200, 12, seed=9000)
    X = C
    for i, step in enumerate(trace.steps, 1):
        X = apply_step(X, step)
        if core.euler_characteristic(X) != 1 or core.is_orientable(X):
            problems.append(f"invariant changed at step {i}")
            break
    verdicts = {simplify(C, seed=9).verdict, simplify(X, seed=9).verdict}
    if verdicts != {"UNKNOWN"}:
        problems.append(f"simplify verdicts {sorted(verdicts)}")
    return Outcome(not problems, "; ".join(problems) or "chi=1, non-orientable through 200 moves, simplify UNKNOWN")


@criterion(10, "determinism of criteria 3-7", float("inf"))
def determinism():
    diverged = [n for n in (3, 4, 5, 6, 7) if run(n).artifact != CRITERIA[n].run().artifact]
    if diverged:
        return Outcome(False, f"criteria {diverged} produced different bytes")
    return Outcome(True, "traces, reports and graph export byte-identical on rerun")


_results: dict[int, Outcome] = {}


def run(n: int) -> Outcome:
    if n not in _results:
        t0 = time.perf_counter()
        result = CRITERIA[n].run()
        _results[n] = result._replace(seconds=time.perf_counter() - t0)
    return _results[n]


def line(n: int) -> str:
    c, r = CRITERIA[n], run(n)
    ok = r.ok and r.seconds < c.limit
    timing = f"{r.seconds:.1f}s" + ("" if c.limit == float("inf") else f" (limit {c.limit:.0f}s)")
    return f"{'PASS' if ok else 'FAIL'} criterion {n:2d} {c.title}: {r.detail} [{timing}]"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    text = line(n)
    with capsys.disabled():
        print("\n" + text)
    assert text.startswith("PASS"), text


if __name__ == "__main__":
    lines = [line(n) for n in sorted(CRITERIA)]
    print("\n".join(lines))
    sys.exit(0 if all(s.startswith("PASS") for s in lines) else 1)
