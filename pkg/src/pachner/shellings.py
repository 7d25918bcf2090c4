"""Elementary shellings: deleting or adding one facet of a complex with boundary.

A deletion site ``(sigma, A, B)`` splits a facet ``sigma = A * B``.  The facet
may be removed when the free ridges of ``sigma`` are exactly the ridges
containing ``A``, no other facet contains ``A`` and ``B`` is not on the
boundary.  Removing it trades ``A * dB`` for ``dA * B`` on the boundary, i.e.
it performs the Pachner move ``(A, B)`` on the boundary complex.  Every
application rebuilds both boundaries and checks that claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .core import Complex, Simplex, as_simplex, boundary_complex
from .errors import (
    ClosedComplex,
    FacetPresent,
    GluingNotOnBoundary,
    InadmissibleMove,
    InadmissibleShelling,
    WouldBreakPseudomanifold,
)
from .moves import MoveSite, apply_move, check_move
from .trace import ShellStep, Trace

DEFAULT_ATTEMPTS = 32


@dataclass(frozen=True, order=True)
class ShellingSite:
    sigma: Simplex
    a: Simplex
    b: Simplex

    def __post_init__(self):
        for name in ("sigma", "a", "b"):
            object.__setattr__(self, name, as_simplex(getattr(self, name)))
        if set(self.a) & set(self.b) or tuple(sorted(self.a + self.b)) != self.sigma:
            raise InadmissibleShelling("malformed site", f"{self.a} and {self.b} do not split {self.sigma}")

    @property
    def terminal(self) -> bool:
        """The deletion of a last remaining facet (not applicable)."""
        return not self.a

    @property
    def boundary_site(self) -> MoveSite:
        """The move this deletion performs on the boundary."""
        return MoveSite(self.a, self.b)

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, s)) for s in (self.sigma, self.a, self.b))


@dataclass(frozen=True)
class BoundaryMoveWitness:
    before: Complex
    after: Complex
    site: MoveSite
    shelling: Optional[ShellingSite] = field(default=None, compare=False)

    def verify(self) -> bool:
        try:
            return apply_move(self.before, self.site) == self.after
        except InadmissibleMove:
            return False


class ShellingResult(NamedTuple):
    complex: Complex
    witness: BoundaryMoveWitness


def _boundary(C: Complex) -> Complex:
    bd = boundary_complex(C)
    if bd is None:
        raise ClosedComplex("complex has no boundary")
    return bd


def _free_opposites(C: Complex, sigma: Simplex) -> tuple[int, ...]:
    counts = C.ridge_counts
    return tuple(x for i, x in enumerate(sigma) if counts[sigma[:i] + sigma[i + 1:]] == 1)


def _deletion_problem(C: Complex, bd: Complex, site: ShellingSite) -> Optional[str]:
    if site.sigma not in C.facets:
        return "sigma is not a facet"
    if site.terminal:
        return "terminal deletion leaves an empty complex"
    if not site.b:
        return "B must be nonempty"
    if len(C) < 2:
        return "terminal deletion leaves an empty complex"
    if _free_opposites(C, site.sigma) != site.b:
        return "free ridges of sigma are not the ridges containing A"
    if C.facets_containing(site.a) != (site.sigma,):
        return "A lies in another facet"
    try:
        check_move(bd, site.boundary_site)
    except InadmissibleMove as exc:
        return f"induced boundary change is not a Pachner move ({exc})"
    return None


def check_shelling(C: Complex, site: ShellingSite) -> None:
    problem = _deletion_problem(C, _boundary(C), site)
    if problem:
        raise InadmissibleShelling(problem, str(site))


def enumerate_shellings(C: Complex, include_last: bool = False) -> list[ShellingSite]:
    """All admissible deletions, ordered by facet.

    A single-facet complex has no deletion sites; with ``include_last`` its
    terminal deletion is reported as a site with empty ``a``.
    """
    bd = _boundary(C)
    if len(C) == 1:
        (sigma,) = C.facets
        return [ShellingSite(sigma, (), sigma)] if include_last else []
    sites = []
    for sigma in C.sorted_facets:
        b = _free_opposites(C, sigma)
        if not b or len(b) == len(sigma):
            continue
        site = ShellingSite(sigma, tuple(x for x in sigma if x not in b), b)
        if _deletion_problem(C, bd, site) is None:
            sites.append(site)
    return sites


def _witnessed(before: Complex, after_complex: Complex, move: MoveSite, site: ShellingSite) -> ShellingResult:
    witness = BoundaryMoveWitness(before, _boundary(after_complex), move, site)
    if not witness.verify():
        raise InadmissibleShelling("boundary witness failed", str(site))
    return ShellingResult(after_complex, witness)


def apply_shelling(C: Complex, site: ShellingSite) -> ShellingResult:
    """Delete ``site.sigma`` and return the new complex with its boundary witness."""
    bd = _boundary(C)
    problem = _deletion_problem(C, bd, site)
    if problem:
        raise InadmissibleShelling(problem, str(site))
    result = C.with_facets(C.facets - {site.sigma})
    return _witnessed(bd, result, site.boundary_site, site)


def inverse_shelling_site(C: Complex, sigma_new) -> ShellingSite:
    """The deletion site ``sigma_new`` would have after being glued onto ``C``.

    Raises if the gluing is not an elementary shelling.
    """
    sigma = as_simplex(sigma_new)
    if len(sigma) != C.dim + 1:
        raise InadmissibleShelling("wrong dimension", f"{sigma} is not a {C.dim}-simplex")
    if sigma in C.facets:
        raise FacetPresent(str(sigma))
    bd = boundary_complex(C)
    if bd is None:
        raise GluingNotOnBoundary("complex is closed")
    counts = C.ridge_counts
    glued = []
    for i, x in enumerate(sigma):
        n = counts.get(sigma[:i] + sigma[i + 1:], 0)
        if n >= 2:
            raise WouldBreakPseudomanifold(f"ridge {sigma[:i] + sigma[i + 1:]} is interior")
        if n == 1:
            glued.append(x)
    if not glued:
        raise GluingNotOnBoundary(f"{sigma} meets no boundary ridge")
    if len(glued) == len(sigma):
        raise GluingNotOnBoundary(f"{sigma} would cap every boundary ridge it meets")
    a = tuple(glued)
    b = tuple(x for x in sigma if x not in glued)
    if C.has_face(a):
        raise InadmissibleShelling("new facet meets the complex outside the glued ridges", str(sigma))
    try:
        check_move(bd, MoveSite(b, a))
    except InadmissibleMove as exc:
        raise InadmissibleShelling("induced boundary change is not a Pachner move", str(exc)) from None
    return ShellingSite(sigma, a, b)


def apply_inverse_shelling(C: Complex, sigma_new) -> ShellingResult:
    """Glue a new facet along part of the boundary (the inverse of a deletion)."""
    site = inverse_shelling_site(C, sigma_new)
    bd = _boundary(C)
    result = C.with_facets(C.facets | {site.sigma})
    return _witnessed(bd, result, MoveSite(site.b, site.a), site)


def enumerate_inverse_shellings(C: Complex, fresh: Optional[int] = None) -> list[ShellingSite]:
    """Admissible gluings: cones from ``fresh`` over free ridges, and spans of adjacent free ridges."""
    v = C.fresh_label if fresh is None else fresh
    free = sorted(r for r, n in C.ridge_counts.items() if n == 1)
    candidates = {tuple(sorted(r + (v,))) for r in free}
    by_subface: dict[Simplex, list[Simplex]] = {}
    for r in free:
        for i in range(len(r)):
            by_subface.setdefault(r[:i] + r[i + 1:], []).append(r)
    for group in by_subface.values():
        for i, r in enumerate(group):
            for s in group[i + 1:]:
                candidates.add(tuple(sorted(set(r) | set(s))))
    sites = []
    for sigma in sorted(candidates):
        try:
            sites.append(inverse_shelling_site(C, sigma))
        except InadmissibleShelling:
            continue
    return sites


def shell_to_facet(C: Complex, rng_seed: int, attempts: int = DEFAULT_ATTEMPTS) -> Optional[Trace]:
    """Randomized greedy search for a shelling that reduces ``C`` to one facet.

    Each attempt removes uniformly random admissible facets until one facet
    remains or it gets stuck.  Returns ``None`` when every attempt got stuck;
    that does not prove ``C`` non-shellable.
    """
    _boundary(C)
    master = random.Random(rng_seed)
    for _ in range(attempts):
        rng = random.Random(master.getrandbits(64))
        X = C
        steps = []
        while len(X) > 1:
            sites = enumerate_shellings(X)
            if not sites:
                break
            site = rng.choice(sites)
            X = apply_shelling(X, site).complex
            steps.append(ShellStep(site))
        if len(X) == 1:
            return Trace(seed=rng_seed, steps=steps)
    return None
