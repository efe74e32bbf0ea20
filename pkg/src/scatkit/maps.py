"""Vertex maps, contiguity, and budgeted contiguity-class search.

Maps are stored as tuples of target vertex indices, one entry per source
vertex in canonical order.  The map graph (nodes: simplicial maps, edges:
direct contiguity) is explored breadth first from a start map; neighbours
are generated by backtracking over the source vertices with the
facet-union condition checked on partial assignments.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Iterator, Mapping, Sequence

from .complex import Complex, ComplexError, bits

__all__ = [
    "VertexMap",
    "ContiguityChain",
    "Decision",
    "YES",
    "NO",
    "UNKNOWN",
    "identity",
    "inclusion",
    "constant",
    "is_simplicial",
    "is_contiguous",
    "validate_chain",
    "contiguous_neighbors",
    "simplicial_maps",
    "contiguity_class_reachable",
    "contiguity_component",
    "in_same_contiguity_class",
    "restrict",
    "compose",
    "has_contiguity_extension",
]

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class VertexMap:
    """A total map from the vertices of ``source`` to those of ``target``.

    ``images[i]`` is the target index of source vertex ``i``.  Two maps are
    equal only if their source, target and images all agree.
    """

    source: Complex
    target: Complex
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n_vertices:
            raise ComplexError("a vertex map must be total on the source vertices")
        n = self.target.n_vertices
        if any(not 0 <= w < n for w in self.images):
            raise ComplexError("vertex map image outside the target")

    @classmethod
    def from_assignment(cls, source: Complex, target: Complex, assignment: Mapping[str, str]) -> "VertexMap":
        missing = set(source.vertices) - assignment.keys()
        if missing:
            raise ComplexError(f"assignment is not total, missing {sorted(missing)}")
        try:
            images = tuple(target.index[assignment[v]] for v in source.vertices)
        except KeyError as exc:
            raise ComplexError(f"image {exc.args[0]!r} is not a target vertex") from None
        return cls(source, target, images)

    @property
    def assignment(self) -> dict[str, str]:
        return {v: self.target.vertices[w] for v, w in zip(self.source.vertices, self.images)}

    def __call__(self, label: str) -> str:
        return self.target.vertices[self.images[self.source.index[label]]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for b in bits(mask):
            out |= 1 << self.images[b]
        return out

    def with_images(self, images: Sequence[int]) -> "VertexMap":
        return VertexMap(self.source, self.target, tuple(images))

    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def __repr__(self) -> str:
        pairs = ", ".join(f"{k}->{v}" for k, v in self.assignment.items())
        return f"VertexMap({pairs})"


@dataclass(frozen=True)
class ContiguityChain:
    """Simplicial maps with each consecutive pair directly contiguous."""

    maps: tuple[VertexMap, ...]

    def __post_init__(self):
        if not self.maps:
            raise ValueError("a contiguity chain needs at least one map")

    def __len__(self) -> int:
        return len(self.maps)

    @property
    def start(self) -> VertexMap:
        return self.maps[0]

    @property
    def end(self) -> VertexMap:
        return self.maps[-1]

    def reversed(self) -> "ContiguityChain":
        return ContiguityChain(tuple(reversed(self.maps)))

    def then(self, other: "ContiguityChain") -> "ContiguityChain":
        if self.end != other.start:
            raise ValueError("chains do not share an endpoint")
        return ContiguityChain(self.maps + other.maps[1:])

    def is_valid(self) -> bool:
        return validate_chain(self)


@dataclass(frozen=True)
class Decision:
    """Three-valued search outcome.

    ``status`` is one of ``"yes"``, ``"no"``, ``"unknown"``.  A ``yes``
    carries a witness; ``unknown`` means the budget of distinct visited maps
    ran out before the search could decide.
    """

    status: str
    witness: object = None
    visited: int = 0
    budget: int | None = None
    info: dict = field(default_factory=dict, compare=False)

    @property
    def yes(self) -> bool:
        return self.status == YES

    @property
    def no(self) -> bool:
        return self.status == NO

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN


# -- constructors ---------------------------------------------------------

def identity(K: Complex) -> VertexMap:
    return VertexMap(K, K, tuple(range(K.n_vertices)))


def inclusion(U: Complex, K: Complex) -> VertexMap:
    """Label-preserving inclusion of ``U`` into ``K``; ``U`` must be a subcomplex."""
    if not U.is_subcomplex_of(K):
        raise ComplexError("not a subcomplex")
    return VertexMap(U, K, tuple(K.index[v] for v in U.vertices))


def constant(source: Complex, target: Complex, v: str) -> VertexMap:
    try:
        w = target.index[v]
    except KeyError:
        raise ComplexError(f"{v!r} is not a vertex of the target") from None
    return VertexMap(source, target, (w,) * source.n_vertices)


# -- checks -----------------------------------------------------------------

def _image(images: Sequence[int], mask: int) -> int:
    out = 0
    for b in bits(mask):
        out |= 1 << images[b]
    return out


def is_simplicial(f: VertexMap) -> bool:
    T = f.target
    return all(T.has_mask(_image(f.images, s)) for s in f.source.facet_masks)


def _check_pair(f: VertexMap, g: VertexMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise ComplexError("maps must share source and target")


def _contiguous(source: Complex, target: Complex, a: Sequence[int], b: Sequence[int]) -> bool:
    return all(target.has_mask(_image(a, s) | _image(b, s)) for s in source.facet_masks)


def is_contiguous(f: VertexMap, g: VertexMap) -> bool:
    """Direct contiguity: ``f(s) | g(s)`` is a simplex for every facet ``s``."""
    _check_pair(f, g)
    if not (is_simplicial(f) and is_simplicial(g)):
        raise ComplexError("contiguity is only defined for simplicial maps")
    return _contiguous(f.source, f.target, f.images, g.images)


def validate_chain(chain: ContiguityChain) -> bool:
    first = chain.maps[0]
    for m in chain.maps:
        if m.source != first.source or m.target != first.target or not is_simplicial(m):
            return False
    return all(_contiguous(first.source, first.target, a.images, b.images)
               for a, b in zip(chain.maps, chain.maps[1:]))


# -- map graph ----------------------------------------------------------------

class _MapSpace:
    """Precomputed lookup tables for maps ``source -> target``."""

    def __init__(self, source: Complex, target: Complex):
        self.source = source
        self.target = target
        n = source.n_vertices
        self.n = n
        self.has = target.has_mask
        # facet ids containing each source vertex, and facet ids completed at each vertex
        self.facets = list(source.facet_masks)
        self.vfac: list[list[int]] = [[] for _ in range(n)]
        for k, s in enumerate(self.facets):
            for b in bits(s):
                self.vfac[b].append(k)
        tv = target.n_vertices
        self.candidates = list(range(tv))
        # neighbourhood of each target vertex (vertices sharing a simplex, itself included)
        self.closed_nbr = [0] * tv
        for t in target.facet_masks:
            for b in bits(t):
                self.closed_nbr[b] |= t

    def neighbors(self, f: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """All maps directly contiguous to ``f``, in canonical (lexicographic) order.

        A partial assignment is pruned as soon as ``f(s) | g(assigned part of s)``
        is not a simplex for some facet ``s``.
        """
        n = self.n
        facets = self.facets
        base = [_image(f, s) for s in facets]
        acc = list(base)
        g = [0] * n
        vfac = self.vfac
        has = self.has
        nbr = self.closed_nbr

        def rec(i: int) -> Iterator[tuple[int, ...]]:
            if i == n:
                yield tuple(g)
                return
            allowed = -1
            for k in vfac[i]:
                # g(i) must share a simplex with every vertex already in acc[k]
                for b in bits(acc[k]):
                    allowed &= nbr[b]
            w_mask = allowed
            while w_mask:
                low = w_mask & -w_mask
                w = low.bit_length() - 1
                w_mask ^= low
                saved = []
                ok = True
                for k in vfac[i]:
                    new = acc[k] | low
                    if new != acc[k] and not has(new):
                        ok = False
                        break
                    saved.append((k, acc[k]))
                    acc[k] = new
                if ok:
                    g[i] = w
                    yield from rec(i + 1)
                for k, old in saved:
                    acc[k] = old

        yield from rec(0)

    def simplicial_maps(self, fixed: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        """All simplicial maps (optionally with some source vertices pinned)."""
        n = self.n
        facets = self.facets
        acc = [0] * len(facets)
        g = [0] * n
        fixed = fixed or {}
        has = self.has
        nbr = self.closed_nbr
        all_targets = (1 << self.target.n_vertices) - 1

        def rec(i: int) -> Iterator[tuple[int, ...]]:
            if i == n:
                yield tuple(g)
                return
            allowed = all_targets
            for k in self.vfac[i]:
                for b in bits(acc[k]):
                    allowed &= nbr[b]
            if i in fixed:
                allowed &= 1 << fixed[i]
            w_mask = allowed
            while w_mask:
                low = w_mask & -w_mask
                w_mask ^= low
                saved = []
                ok = True
                for k in self.vfac[i]:
                    new = acc[k] | low
                    if new != acc[k] and not has(new):
                        ok = False
                        break
                    saved.append((k, acc[k]))
                    acc[k] = new
                if ok:
                    g[i] = low.bit_length() - 1
                    yield from rec(i + 1)
                for k, old in saved:
                    acc[k] = old

        yield from rec(0)


def contiguous_neighbors(f: VertexMap) -> list[VertexMap]:
    space = _MapSpace(f.source, f.target)
    return [f.with_images(g) for g in space.neighbors(f.images)]


def simplicial_maps(source: Complex, target: Complex) -> list[VertexMap]:
    """Every simplicial map ``source -> target`` (brute-force sized inputs only)."""
    space = _MapSpace(source, target)
    return [VertexMap(source, target, g) for g in space.simplicial_maps()]


def _check_budget(budget: int) -> None:
    if budget < 1:
        raise ValueError("budget must be at least 1")


def _bfs(
    start: VertexMap,
    is_goal: Callable[[tuple[int, ...]], bool],
    budget: int,
) -> Decision:
    space = _MapSpace(start.source, start.target)
    s = start.images
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {s: None}
    if is_goal(s):
        return Decision(YES, ContiguityChain((start,)), visited=1, budget=budget)
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        for nxt in space.neighbors(cur):
            if nxt in parent:
                continue
            if len(parent) >= budget:
                return Decision(UNKNOWN, visited=len(parent), budget=budget)
            parent[nxt] = cur
            if is_goal(nxt):
                path = [nxt]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                chain = ContiguityChain(tuple(start.with_images(p) for p in path))
                return Decision(YES, chain, visited=len(parent), budget=budget)
            queue.append(nxt)
    return Decision(NO, visited=len(parent), budget=budget, info={"component": list(parent)})


def contiguity_class_reachable(
    f: VertexMap,
    goals: Callable[[VertexMap], bool] | Collection[VertexMap],
    budget: int,
) -> Decision:
    """Breadth-first search of the contiguity class of ``f`` for a goal map.

    ``goals`` is either a predicate on maps or a collection of maps.  Returns
    ``yes`` with a shortest chain from ``f`` to a goal, ``no`` once the whole
    class has been explored, or ``unknown`` when ``budget`` distinct maps
    have been visited without deciding.
    """
    _check_budget(budget)
    if not is_simplicial(f):
        raise ComplexError("start map is not simplicial")
    if callable(goals):
        pred = goals
        is_goal = lambda imgs: pred(f.with_images(imgs))  # noqa: E731
    else:
        targets = set()
        for g in goals:
            _check_pair(f, g)
            targets.add(g.images)
        is_goal = targets.__contains__
    return _bfs(f, is_goal, budget)


def contiguity_component(f: VertexMap, budget: int) -> Decision:
    """Explore the whole contiguity class of ``f``; ``no`` lists it in ``info['component']``."""
    _check_budget(budget)
    return _bfs(f, lambda imgs: False, budget)


def in_same_contiguity_class(f: VertexMap, g: VertexMap, budget: int) -> Decision:
    _check_pair(f, g)
    if not is_simplicial(g):
        raise ComplexError("goal map is not simplicial")
    return contiguity_class_reachable(f, [g], budget)


def restrict(f: VertexMap, U: Complex) -> VertexMap:
    if not U.is_subcomplex_of(f.source):
        raise ComplexError("restriction domain is not a subcomplex of the source")
    return VertexMap(U, f.target, tuple(f.images[f.source.index[v]] for v in U.vertices))


def compose(g: VertexMap, f: VertexMap) -> VertexMap:
    """``g o f``."""
    if f.target != g.source:
        raise ComplexError("cannot compose: target of f differs from source of g")
    return VertexMap(f.source, g.target, tuple(g.images[w] for w in f.images))


def has_contiguity_extension(
    K: Complex,
    L: Complex,
    phi: VertexMap,
    psi: VertexMap,
    phi_ext: VertexMap,
    budget: int,
    chain: ContiguityChain | None = None,
) -> Decision:
    """Decide whether ``psi`` extends to some ``psi_ext ~ phi_ext`` along ``L ⊆ K``.

    ``phi ~ psi`` must hold: pass ``chain`` as evidence, otherwise it is
    checked by search within ``budget`` (an inconclusive check returns
    ``unknown``).  One breadth-first search from ``phi_ext`` is run with all
    simplicial extensions of ``psi`` as goals.  A ``yes`` witness is the pair
    ``(psi_ext, chain from phi_ext to psi_ext)``.
    """
    _check_budget(budget)
    incl = inclusion(L, K)
    if phi.source != L or psi.source != L or phi.target != psi.target:
        raise ComplexError("phi and psi must be maps L -> M")
    if phi_ext.source != K or phi_ext.target != phi.target:
        raise ComplexError("phi_ext must be a map K -> M")
    if compose(phi_ext, incl) != phi:
        raise ComplexError("phi_ext does not restrict to phi")
    for m in (phi, psi, phi_ext):
        if not is_simplicial(m):
            raise ComplexError("all maps must be simplicial")
    if chain is not None:
        if not (validate_chain(chain) and {chain.start, chain.end} == {phi, psi}):
            raise ComplexError("supplied chain does not connect phi and psi")
    else:
        pre = in_same_contiguity_class(phi, psi, budget)
        if pre.unknown:
            return Decision(UNKNOWN, visited=pre.visited, budget=budget, info={"stage": "precondition"})
        if pre.no:
            raise ComplexError("phi and psi are not in the same contiguity class")
    space = _MapSpace(K, phi.target)
    pinned = {K.index[v]: psi.images[i] for i, v in enumerate(L.vertices)}
    goals = set(space.simplicial_maps(pinned))
    if not goals:
        return Decision(NO, visited=0, budget=budget, info={"extensions": 0})
    res = _bfs(phi_ext, goals.__contains__, budget)
    res.info["extensions"] = len(goals)
    if res.yes:
        found: ContiguityChain = res.witness  # type: ignore[assignment]
        return Decision(YES, (found.end, found), visited=res.visited, budget=budget, info=res.info)
    return res


def maps_from_images(source: Complex, target: Complex, rows: Iterable[Sequence[int]]) -> list[VertexMap]:
    return [VertexMap(source, target, tuple(r)) for r in rows]
