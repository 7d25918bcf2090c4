"""Pure abstract simplicial complexes stored by their facets.

A simplex is a strictly increasing tuple of non-negative integer labels; the
empty tuple is the empty simplex and is a face of every complex.  A
:class:`Complex` is an immutable value holding a set of facets of one common
dimension.  All face data (closure, stars, links, ridge incidences) is derived
from the facets on demand and memoized per instance.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import (
    DegenerateFacet,
    DimensionOutOfRange,
    EmptyInput,
    EmptySimplexInput,
    InvalidLabel,
    LabelClash,
    MixedDimensions,
    NotAFace,
    NotClosedPseudomanifold,
    NotPseudomanifold,
    UnsupportedDimension,
)

Simplex = tuple[int, ...]
IsoMap = dict[int, int]

EMPTY: Simplex = ()


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of labels into a sorted tuple, validating labels."""
    vs = list(vertices)
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InvalidLabel(f"vertex label {v!r} is not a non-negative integer")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise DegenerateFacet(f"repeated vertex in {s}")
    return s


def proper_faces(s: Simplex) -> list[Simplex]:
    """All proper faces of ``s``, including the empty simplex."""
    return [c for r in range(len(s)) for c in itertools.combinations(s, r)]


def _nonempty_subsets(s: Simplex):
    for r in range(1, len(s) + 1):
        yield from itertools.combinations(s, r)


def _minus(s: Simplex, t: Iterable[int]) -> Simplex:
    drop = set(t)
    return tuple(v for v in s if v not in drop)


class Complex:
    """An immutable pure ``dim``-dimensional simplicial complex.

    Equality and hashing use ``(dim, facets)`` only; the optional ``names``
    table (label -> display string) rides along but is not part of identity.
    """

    def __init__(self, facets: Iterable[Iterable[int]], names: Optional[Mapping[int, str]] = None):
        normalized = [as_simplex(f) for f in facets]
        if not normalized:
            raise EmptyInput("complex needs at least one facet")
        sizes = {len(f) for f in normalized}
        if len(sizes) > 1:
            raise MixedDimensions(f"facet cardinalities {sorted(sizes)}")
        size = sizes.pop()
        if size == 0:
            raise DimensionOutOfRange("facets must have at least one vertex")
        self._dim = size - 1
        self._facets = frozenset(normalized)
        self._names = _clean_names(names, self)

    @classmethod
    def _trusted(cls, dim: int, facets: frozenset, names: Optional[Mapping[int, str]] = None) -> Complex:
        obj = cls.__new__(cls)
        obj._dim = dim
        obj._facets = facets
        obj._names = _clean_names(names, obj) if names else None
        return obj

    def with_facets(self, facets: Iterable[Simplex]) -> Complex:
        """A new complex of the same dimension; names of surviving labels are kept."""
        return Complex._trusted(self._dim, frozenset(facets), self._names)

    # -- value semantics ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def facets(self) -> frozenset:
        return self._facets

    @property
    def names(self) -> Optional[dict[int, str]]:
        return dict(self._names) if self._names else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self._dim == other._dim and self._facets == other._facets

    def __hash__(self) -> int:
        return hash((self._dim, self._facets))

    def __len__(self) -> int:
        return len(self._facets)

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, f)) if max(f) < 10 else str(f) for f in self.sorted_facets)
        return f"Complex(d={self._dim}, {{{body}}})"

    def __getstate__(self):
        return {"_dim": self._dim, "_facets": self._facets, "_names": self._names}

    def __setstate__(self, state):
        self.__dict__.update(state)

    # -- derived data (memoized) -------------------------------------------

    @cached_property
    def sorted_facets(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self._facets))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def fresh_label(self) -> int:
        return self.vertices[-1] + 1

    @cached_property
    def incidence(self) -> dict[Simplex, tuple[Simplex, ...]]:
        """Every nonempty face mapped to the facets containing it (sorted)."""
        inc: dict[Simplex, list[Simplex]] = {}
        for f in self.sorted_facets:
            for s in _nonempty_subsets(f):
                inc.setdefault(s, []).append(f)
        return {s: tuple(fs) for s, fs in inc.items()}

    @cached_property
    def ridge_counts(self) -> dict[Simplex, int]:
        counts: Counter = Counter()
        for f in self._facets:
            for i in range(len(f)):
                counts[f[:i] + f[i + 1:]] += 1
        return dict(counts)

    def has_face(self, s: Simplex) -> bool:
        return len(s) == 0 or s in self.incidence

    def facets_containing(self, s: Simplex) -> tuple[Simplex, ...]:
        if not s:
            return self.sorted_facets
        return self.incidence.get(s, ())


def _clean_names(names, cx: Complex) -> Optional[dict[int, str]]:
    if not names:
        return None
    present = set(v for f in cx._facets for v in f)
    kept = {int(k): str(v) for k, v in names.items() if int(k) in present}
    return kept or None


def from_facets(facet_list: Iterable[Iterable[int]], names: Optional[Mapping[int, str]] = None) -> Complex:
    """Build a canonical complex from vertex-label collections.

    Raises EmptyInput, MixedDimensions or DegenerateFacet on bad input.
    """
    return Complex(list(facet_list), names=names)


# -- face queries -------------------------------------------------------------


def faces(C: Complex, k: int) -> frozenset:
    if not -1 <= k <= C.dim:
        raise DimensionOutOfRange(f"k={k} outside [-1, {C.dim}]")
    if k == -1:
        return frozenset([EMPTY])
    return frozenset(s for s in C.incidence if len(s) == k + 1)


def _require_face(C: Complex, A: Simplex) -> Simplex:
    A = as_simplex(A)
    if not C.has_face(A):
        raise NotAFace(f"{A} is not a face of the complex")
    return A


def star(C: Complex, A: Iterable[int]) -> set[Simplex]:
    """All faces of ``C`` containing ``A`` (``A`` included)."""
    A = _require_face(C, A)
    out: set[Simplex] = set()
    for f in C.facets_containing(A):
        rest = _minus(f, A)
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                out.add(tuple(sorted(A + extra)))
    return out


def link(C: Complex, A: Iterable[int]) -> set[Simplex]:
    """Faces disjoint from ``A`` whose union with ``A`` is a face."""
    A = as_simplex(A)
    if not A:
        raise EmptySimplexInput("link of the empty simplex is the whole complex")
    A = _require_face(C, A)
    out: set[Simplex] = set()
    for f in C.facets_containing(A):
        rest = _minus(f, A)
        for r in range(len(rest) + 1):
            out.update(itertools.combinations(rest, r))
    return out


def link_complex(C: Complex, A: Iterable[int]) -> Optional[Complex]:
    """The link of a nonempty face as a complex; ``None`` when ``A`` is a facet."""
    A = as_simplex(A)
    if not A:
        raise EmptySimplexInput("link of the empty simplex is the whole complex")
    A = _require_face(C, A)
    if len(A) == C.dim + 1:
        return None
    return Complex._trusted(C.dim - len(A), frozenset(_minus(f, A) for f in C.facets_containing(A)))


# -- invariants -----------------------------------------------------------------


@dataclass(frozen=True)
class FVector:
    """Face counts ``(f_-1, f_0, ..., f_d)``."""

    counts: tuple[int, ...]

    def f(self, k: int) -> int:
        return self.counts[k + 1]

    @property
    def proper(self) -> tuple[int, ...]:
        """``(f_0, ..., f_d)``."""
        return self.counts[1:]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.proper))


def f_vector(C: Complex) -> FVector:
    counts = [0] * (C.dim + 2)
    counts[0] = 1
    for s in C.incidence:
        counts[len(s)] += 1
    return FVector(tuple(counts))


def euler_characteristic(C: Complex) -> int:
    return f_vector(C).euler


def _check_pseudomanifold(C: Complex) -> None:
    bad = [r for r, n in C.ridge_counts.items() if n > 2]
    if bad:
        raise NotPseudomanifold(f"ridge {min(bad)} lies in {C.ridge_counts[min(bad)]} facets")


def boundary_complex(C: Complex) -> Optional[Complex]:
    """The (d-1)-complex of free ridges, or ``None`` when ``C`` has none.

    A lone 0-dimensional point has the empty simplex as its boundary, which
    is not representable as a complex; that case raises UnsupportedDimension.
    """
    _check_pseudomanifold(C)
    free = frozenset(r for r, n in C.ridge_counts.items() if n == 1)
    if not free:
        return None
    if C.dim == 0:
        raise UnsupportedDimension("boundary of a single point is the empty-simplex complex")
    return Complex._trusted(C.dim - 1, free, C._names)


def is_connected(C: Complex) -> bool:
    """Connectivity of the facet adjacency graph (facets sharing a ridge)."""
    by_ridge: dict[Simplex, list[Simplex]] = {}
    for f in C.facets:
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1:], []).append(f)
    start = C.sorted_facets[0]
    seen = {start}
    todo = [start]
    while todo:
        f = todo.pop()
        for i in range(len(f)):
            for g in by_ridge[f[:i] + f[i + 1:]]:
                if g not in seen:
                    seen.add(g)
                    todo.append(g)
    return len(seen) == len(C.facets)


def is_closed_pseudomanifold(C: Complex) -> bool:
    if any(n != 2 for n in C.ridge_counts.values()):
        return False
    return is_connected(C)


def _ball_or_sphere(L: Complex) -> Optional[str]:
    """Classify a complex of dimension <= 2 as "sphere", "ball" or neither."""
    if L.dim == 0:
        return {1: "ball", 2: "sphere"}.get(len(L))
    if L.dim == 1:
        degree = Counter(v for f in L.facets for v in f)
        if max(degree.values()) > 2 or not is_connected(L):
            return None
        return "sphere" if all(n == 2 for n in degree.values()) else "ball"
    if L.dim == 2:
        for v in L.vertices:
            if _ball_or_sphere(link_complex(L, (v,))) is None:
                return None
        if not is_connected(L):
            return None
        chi = euler_characteristic(L)
        closed = all(n == 2 for n in L.ridge_counts.values())
        if closed:
            return "sphere" if chi == 2 else None
        return "ball" if chi == 1 else None
    raise UnsupportedDimension(f"cannot recognize spheres of dimension {L.dim}")


def is_combinatorial_manifold(C: Complex) -> bool:
    """Every vertex link is a (d-1)-sphere or (d-1)-ball; supported for d <= 3."""
    if C.dim > 3:
        raise UnsupportedDimension(f"manifold recognition needs d <= 3, got {C.dim}")
    if C.dim == 0:
        return True
    return all(_ball_or_sphere(link_complex(C, (v,))) is not None for v in C.vertices)


def is_orientable(C: Complex) -> bool:
    """Propagate facet orientations across ridges; a clash means non-orientable."""
    if not is_closed_pseudomanifold(C):
        raise NotClosedPseudomanifold("orientability is defined here for closed pseudomanifolds")
    by_ridge: dict[Simplex, list[tuple[Simplex, int]]] = {}
    for f in C.facets:
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1:], []).append((f, i))
    start = C.sorted_facets[0]
    sign = {start: 1}
    todo = deque([start])
    while todo:
        f = todo.popleft()
        for i in range(len(f)):
            for g, j in by_ridge[f[:i] + f[i + 1:]]:
                if g == f:
                    continue
                # (-1)^j sign[g] must equal -(-1)^i sign[f]
                want = -sign[f] * (-1) ** (i + j)
                if g in sign:
                    if sign[g] != want:
                        return False
                else:
                    sign[g] = want
                    todo.append(g)
    return True


# -- isomorphism ------------------------------------------------------------------


def _edge_sets(C: Complex) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in C.vertices}
    if C.dim >= 1:
        for s in C.incidence:
            if len(s) == 2:
                adj[s[0]].add(s[1])
                adj[s[1]].add(s[0])
    return adj


def _vertex_invariants(C: Complex, adj: dict[int, set[int]]) -> dict[int, tuple[int, int]]:
    return {v: (len(C.incidence[(v,)]), len(adj[v])) for v in C.vertices}


def isomorphism_key(C: Complex) -> tuple:
    """Isomorphism-invariant prefilter: f-vector, degree multiset, edge-link sizes."""
    adj = _edge_sets(C)
    degrees = tuple(sorted(len(n) for n in adj.values()))
    edge_links = tuple(sorted(len(fs) for s, fs in C.incidence.items() if len(s) == 2))
    return (C.dim, f_vector(C).counts, degrees, edge_links)


def are_isomorphic(C1: Complex, C2: Complex) -> Optional[IsoMap]:
    """Find a vertex bijection carrying the facets of ``C1`` onto those of ``C2``.

    Backtracking over vertices in BFS order of the 1-skeleton, pruned by
    vertex invariants, edge adjacency and facet images.  Meant for desk-scale
    complexes (a dozen or so vertices).
    """
    if C1.dim != C2.dim or len(C1) != len(C2) or C1.n_vertices != C2.n_vertices:
        return None
    if f_vector(C1) != f_vector(C2):
        return None
    adj1, adj2 = _edge_sets(C1), _edge_sets(C2)
    inv1, inv2 = _vertex_invariants(C1, adj1), _vertex_invariants(C2, adj2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None

    pool: dict[tuple[int, int], list[int]] = {}
    for v in C2.vertices:
        pool.setdefault(inv2[v], []).append(v)
    rarity = Counter(inv1.values())

    order: list[int] = []
    placed: set[int] = set()
    for root in sorted(C1.vertices, key=lambda v: (rarity[inv1[v]], v)):
        if root in placed:
            continue
        placed.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(adj1[u]):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)

    position = {v: i for i, v in enumerate(order)}
    # facets whose last vertex (in search order) is v get checked when v is placed
    closing: dict[int, list[Simplex]] = {v: [] for v in order}
    for f in C1.facets:
        closing[max(f, key=position.__getitem__)].append(f)
    earlier_nbrs = {v: [w for w in adj1[v] if position[w] < position[v]] for v in order}
    earlier_all = {v: order[: position[v]] for v in order}
    facets2 = C2.facets

    mapping: IsoMap = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in pool[inv1[v]]:
            if w in used:
                continue
            if any(mapping[u] not in adj2[w] for u in earlier_nbrs[v]):
                continue
            if sum(1 for u in earlier_all[v] if mapping[u] in adj2[w]) != len(earlier_nbrs[v]):
                continue
            mapping[v] = w
            ok = all(tuple(sorted(mapping[x] for x in f)) in facets2 for f in closing[v])
            if ok:
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
            del mapping[v]
        return False

    if not extend(0):
        return None
    return dict(sorted(mapping.items()))


def relabel(C: Complex, mapping: Mapping[int, int]) -> Complex:
    """Apply a vertex map (identity on labels it does not mention)."""
    new = frozenset(tuple(sorted(mapping.get(v, v) for v in f)) for f in C.facets)
    if any(len(set(f)) != len(f) for f in new) or len(new) != len(C.facets):
        raise LabelClash("relabeling is not injective on the complex")
    names = None
    if C._names:
        names = {mapping.get(v, v): s for v, s in C._names.items()}
    return Complex._trusted(C.dim, new, names)


# -- generators ----------------------------------------------------------------------


def full_simplex(d: int) -> Complex:
    """The solid d-simplex on labels 1..d+1."""
    if d < 0:
        raise DimensionOutOfRange(f"d={d}")
    return Complex([range(1, d + 2)])


def sphere(d: int) -> Complex:
    """The boundary of the (d+1)-simplex on labels 1..d+2."""
    if d < 0:
        raise DimensionOutOfRange(f"d={d}")
    return Complex(itertools.combinations(range(1, d + 3), d + 1))


def cone(C: Complex) -> Complex:
    apex = C.fresh_label
    return Complex._trusted(C.dim + 1, frozenset(f + (apex,) for f in C.facets), C._names)


def join(C1: Complex, C2: Complex) -> Complex:
    clash = set(C1.vertices) & set(C2.vertices)
    if clash:
        raise LabelClash(f"operands share labels {sorted(clash)}")
    facets = frozenset(tuple(sorted(f + g)) for f in C1.facets for g in C2.facets)
    names = {**(C1._names or {}), **(C2._names or {})}
    return Complex._trusted(C1.dim + C2.dim + 1, facets, names or None)


def suspension(C: Complex) -> Complex:
    n = C.fresh_label
    return join(C, Complex([(n,), (n + 1,)]))


GENERATOR_KINDS = ("simplex", "sphere", "cone", "suspension", "join")


def generate(kind: str, dim: Optional[int] = None, operands: tuple[Complex, ...] = ()) -> Complex:
    """Dispatch to one of the named constructions."""
    if kind == "simplex":
        return full_simplex(dim)
    if kind == "sphere":
        return sphere(dim)
    if kind == "cone":
        (C,) = operands
        return cone(C)
    if kind == "suspension":
        (C,) = operands
        return suspension(C)
    if kind == "join":
        C1, C2 = operands
        return join(C1, C2)
    raise ValueError(f"unknown generator kind {kind!r}")
