"""Pachner (bistellar) moves and the stellar operations they factor through.

A move site is a pair ``(A, B)`` of vertex-disjoint simplices with
``dim A + dim B = d``.  It is admissible on ``C`` when ``A`` is a face, the
link of ``A`` is exactly the boundary of ``B`` (empty simplex included) and
``B`` is not a face.  Applying it replaces the star ``A * dB`` by ``dA * B``.

For ``k = d`` the link of a facet is ``{()}``, the boundary of a single
point, so facet subdivision needs no special case: ``B`` is one label that is
not yet a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import Complex, Simplex, _minus, _require_face, as_simplex
from .errors import (
    EmptySimplexInput,
    InadmissibleMove,
    NotAFace,
    SubdivisionAtVertex,
    VertexInUse,
    WeldInadmissible,
)


@dataclass(frozen=True, order=True)
class MoveSite:
    """A candidate move replacing ``a * dB`` by ``dA * b``; ``kind = dim a``."""

    a: Simplex
    b: Simplex

    def __post_init__(self):
        object.__setattr__(self, "a", as_simplex(self.a))
        object.__setattr__(self, "b", as_simplex(self.b))
        if not self.a or not self.b:
            raise InadmissibleMove("malformed site", "A and B must be nonempty")
        if set(self.a) & set(self.b):
            raise InadmissibleMove("malformed site", f"{self.a} and {self.b} share vertices")

    @property
    def kind(self) -> int:
        return len(self.a) - 1

    @property
    def dim(self) -> int:
        """Dimension of the complexes this site can act on."""
        return len(self.a) + len(self.b) - 2

    def __str__(self) -> str:
        return f"{self.kind} {' '.join(map(str, self.a))} | {' '.join(map(str, self.b))}"


def _link_apex(C: Complex, a: Simplex) -> Optional[Simplex]:
    """``B`` if the link of the non-facet face ``a`` is the full boundary of ``B``."""
    star = C.facets_containing(a)
    size = C.dim + 2 - len(a)  # |B| = d - k + 1
    if len(star) != size:
        return None
    b = set()
    for f in star:
        b.update(_minus(f, a))
    if len(b) != size:
        return None
    return tuple(sorted(b))


def check_move(C: Complex, site: MoveSite) -> None:
    """Raise InadmissibleMove (with a reason) unless ``site`` is admissible on ``C``."""
    if site.dim != C.dim:
        raise InadmissibleMove("malformed site", f"dim A + dim B = {site.dim}, complex has d = {C.dim}")
    if not C.has_face(site.a):
        raise InadmissibleMove("A absent", f"{site.a} is not a face")
    if len(site.a) == C.dim + 1:
        linked: Optional[Simplex] = None if len(site.b) != 1 else site.b
    else:
        linked = _link_apex(C, site.a)
    if linked != site.b:
        raise InadmissibleMove("link mismatch", f"link of {site.a} is not the boundary of {site.b}")
    if C.has_face(site.b):
        raise InadmissibleMove("B present", f"{site.b} is already a face")


def is_admissible(C: Complex, site: MoveSite) -> bool:
    try:
        check_move(C, site)
    except InadmissibleMove:
        return False
    return True


def admissible_move_at(C: Complex, A, fresh: Optional[int] = None) -> Optional[MoveSite]:
    """The admissible site with first simplex ``A``, if any.

    For a facet the site uses ``fresh`` (default: largest label + 1) as ``B``.
    """
    A = as_simplex(A)
    if not A:
        raise EmptySimplexInput("moves need a nonempty simplex")
    A = _require_face(C, A)
    if len(A) == C.dim + 1:
        v = C.fresh_label if fresh is None else fresh
        if C.has_face((v,)):
            return None
        return MoveSite(A, (v,))
    b = _link_apex(C, A)
    if b is None or C.has_face(b):
        return None
    return MoveSite(A, b)


def enumerate_moves(C: Complex, kind: Optional[int] = None, fresh: Optional[int] = None) -> list[MoveSite]:
    """All admissible sites in lexicographic order of ``A``.

    Every facet yields exactly one kind-d site sharing the same fresh label.
    """
    v = C.fresh_label if fresh is None else fresh
    top = C.dim + 1
    sites = []
    for a in C.incidence:
        if kind is not None and len(a) - 1 != kind:
            continue
        if len(a) == top:
            if not C.has_face((v,)):
                sites.append(MoveSite(a, (v,)))
            continue
        b = _link_apex(C, a)
        if b is not None and not C.has_face(b):
            sites.append(MoveSite(a, b))
    sites.sort()
    return sites


def apply_move(C: Complex, site: MoveSite) -> Complex:
    """Replace ``star(A) = A * dB`` by ``dA * B``; admissibility is always re-checked."""
    check_move(C, site)
    a, b = site.a, site.b
    removed = set(C.facets_containing(a))
    added = (tuple(sorted(a[:i] + a[i + 1:] + b)) for i in range(len(a)))
    return C.with_facets((C.facets - removed).union(added))


def inverse_site(site: MoveSite) -> MoveSite:
    return MoveSite(site.b, site.a)


def facet_delta(site: MoveSite) -> int:
    """Change in facet count caused by applying ``site``: ``2k - d``."""
    return len(site.a) - len(site.b)


# -- stellar operations ----------------------------------------------------------


def stellar_subdivide(C: Complex, A, v: int) -> Complex:
    """Cone a fresh vertex ``v`` over ``dA * link(A)`` in place of ``star(A)``."""
    A = as_simplex(A)
    if not A:
        raise EmptySimplexInput("cannot subdivide the empty simplex")
    if not C.has_face(A):
        raise NotAFace(f"{A} is not a face")
    if len(A) == 1:
        raise SubdivisionAtVertex("stellar subdivision at a vertex is not supported")
    (v,) = as_simplex([v])
    if C.has_face((v,)):
        raise VertexInUse(f"vertex {v} already in the complex")
    star = C.facets_containing(A)
    added = set()
    for f in star:
        for x in A:
            added.add(tuple(sorted([u for u in f if u != x] + [v])))
    return C.with_facets((C.facets - set(star)) | added)


def stellar_weld(C: Complex, v: int, A) -> Complex:
    """Inverse of :func:`stellar_subdivide`: remove ``v`` and restore the star of ``A``.

    Legal iff the link of ``v`` is ``dA * L`` for some complex ``L`` and ``A``
    is not yet a face.
    """
    A = as_simplex(A)
    if v in A:
        raise WeldInadmissible(f"vertex {v} lies in {A}")
    if len(A) < 2:
        raise WeldInadmissible("welding onto a single vertex is a relabeling")
    if not C.has_face((v,)):
        raise WeldInadmissible(f"{v} is not a vertex")
    if C.has_face(A):
        raise WeldInadmissible(f"{A} is already a face")
    star = C.facets_containing((v,))
    aset = set(A)
    tails = set()
    rewritten = set()
    for f in star:
        rest = [u for u in f if u != v]
        missing = aset.difference(rest)
        if len(missing) != 1:
            raise WeldInadmissible(f"facet {f} does not meet {A} in a boundary face")
        tails.add(_minus(tuple(rest), A))
        rewritten.add(tuple(sorted(rest + [missing.pop()])))
    if len(star) != len(A) * len(tails):
        raise WeldInadmissible(f"link of {v} is not a join of the boundary of {A}")
    return C.with_facets((C.facets - set(star)) | rewritten)


class StellarFactorization(NamedTuple):
    """Witness that a move is a subdivision at ``a`` by ``v`` then a weld of ``v`` onto ``b``.

    ``degenerate`` names the step that collapses: ``"weld"`` for facet
    subdivisions (kind d) and ``"subdivision"`` for vertex removals (kind 0),
    where ``v`` is the removed vertex itself.
    """

    a: Simplex
    v: int
    b: Simplex
    degenerate: Optional[str] = None

    def compose(self, C: Complex) -> Complex:
        if self.degenerate == "weld":
            return stellar_subdivide(C, self.a, self.v)
        if self.degenerate == "subdivision":
            return stellar_weld(C, self.v, self.b)
        return stellar_weld(stellar_subdivide(C, self.a, self.v), self.v, self.b)


def factor_via_stellar(C: Complex, site: MoveSite) -> StellarFactorization:
    check_move(C, site)
    if site.kind == C.dim:
        return StellarFactorization(site.a, site.b[0], site.b, "weld")
    if site.kind == 0:
        return StellarFactorization(site.a, site.a[0], site.b, "subdivision")
    return StellarFactorization(site.a, C.fresh_label, site.b)
