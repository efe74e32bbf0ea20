"""Simplicial LS-category engine.

``scat`` and ``gscat`` are found by enumerating partitions of the facets
into k+1 blocks for k = 0, 1, ...  Block assignment follows the
restricted-growth rule (facet i may only open block j if blocks < j are
already open), so each set partition is visited once.

For ``scat`` a block is tested with :func:`is_categorical`.  Being
categorical passes to sub-blocks, so a partially filled block that fails
prunes the whole branch.  For ``gscat`` the test (strong collapsibility of
the generated subcomplex) is not hereditary and is only applied to
complete blocks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .complex import Complex, ComplexError, bits, core, is_strongly_collapsible, maximalize
from .constructions import diagonal, fat_wedge
from .graphs import Graph, arboricity, is_forest
from .maps import (
    NO,
    UNKNOWN,
    YES,
    ContiguityChain,
    Decision,
    VertexMap,
    _bfs,
    _MapSpace,
    compose,
    inclusion,
    validate_chain,
)

__all__ = [
    "Cover",
    "CatResult",
    "is_categorical",
    "categorical_chain",
    "scat",
    "gscat",
    "wscat_le",
    "wscat_bounds",
    "verify_inequalities",
    "validate_cover",
    "cone_cover",
    "clear_memo",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Cover:
    """A partition of the facets of ``ambient`` into blocks of facet masks."""

    ambient: Complex
    blocks: tuple[tuple[int, ...], ...]

    def block_facets(self) -> list[list[tuple[str, ...]]]:
        return [[self.ambient.labels(f) for f in b] for b in self.blocks]

    def subcomplexes(self) -> list[Complex]:
        return [self.ambient.subcomplex(b) for b in self.blocks]

    def is_partition(self) -> bool:
        flat = [f for b in self.blocks for f in b]
        return (all(self.blocks) and len(flat) == len(set(flat))
                and set(flat) == set(self.ambient.facet_masks))


@dataclass
class CatResult:
    """An interval ``lower <= value <= upper`` with a witness cover for ``upper``.

    ``chains[j]`` (scat only) is a contiguity chain from the inclusion of
    block j to a constant map.
    """

    lower: int
    upper: int
    witness: Cover | None = None
    chains: list[ContiguityChain] | None = None
    stats: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"value only known to lie in [{self.lower}, {self.upper}]")
        return self.lower


# -- categorical blocks -----------------------------------------------------------

def _block_masks(K: Complex, U: Iterable) -> frozenset[int]:
    out = set()
    facet_set = set(K.facet_masks)
    for f in U:
        try:
            m = f if isinstance(f, int) else K.mask(f)
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None
        if m not in facet_set:
            raise ComplexError(f"{K.labels(m)} is not a facet of the complex")
        out.add(m)
    if not out:
        raise ComplexError("a block needs at least one facet")
    return frozenset(out)


def _retract_image(K: Complex, images: list[int], source_facets: Sequence[int]) -> bool:
    """Strong-collapse the image of a map one step; False when nothing is dominated."""
    img = set()
    for s in source_facets:
        m = 0
        for b in bits(s):
            m |= 1 << images[b]
        img.add(m)
    img = maximalize(img)
    support = 0
    for m in img:
        support |= m
    for v in bits(support):
        common = -1
        for m in img:
            if m >> v & 1:
                common &= m
        common &= ~(1 << v)
        if common:
            w = (common & -common).bit_length() - 1
            for i, x in enumerate(images):
                if x == v:
                    images[i] = w
            return True
    return False


def _edge_path(K: Complex, src: int, dst: int) -> list[int] | None:
    adj = [0] * K.n_vertices
    for f in K.facet_masks:
        for b in bits(f):
            adj[b] |= f
    prev = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = [v]
            while prev[path[-1]] != -1:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in bits(adj[v]):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def categorical_chain(K: Complex, block: Iterable) -> ContiguityChain | None:
    """Build a chain from the inclusion of ``block`` to a constant map, if the cheap route works.

    The image of the current map is strong-collapsed one dominated vertex at
    a time (each retraction is contiguous to the previous map).  If the
    image ends up as isolated points, they are walked along edge paths of
    ``K`` onto a common vertex.  Returns None when this route gets stuck;
    that says nothing about whether the block is categorical.
    """
    masks = _block_masks(K, block)
    U = K.subcomplex(sorted(masks))
    start = inclusion(U, K)
    images = list(start.images)
    maps = [start]
    while _retract_image(K, images, U.facet_masks):
        maps.append(start.with_images(images))
    if any(start.with_images(images).image_mask(s).bit_count() > 1 for s in U.facet_masks):
        return None
    points = sorted(set(images))
    goal = points[0]
    for p in points[1:]:
        path = _edge_path(K, p, goal)
        if path is None:
            return None
        cur = p
        for nxt in path[1:]:
            images = [nxt if x == cur else x for x in images]
            maps.append(start.with_images(images))
            cur = nxt
    chain = ContiguityChain(tuple(maps))
    if not validate_chain(chain):
        raise AssertionError("constructed categorical chain failed validation")
    return chain


_CAT_MEMO: dict[tuple, Decision] = {}


def is_categorical(
    K: Complex,
    U: Iterable,
    budget: int = DEFAULT_BUDGET,
    *,
    fast_path: bool = True,
    shortcut: bool = True,
    reduce: bool = True,
) -> Decision:
    """Decide whether the subcomplex generated by the facets ``U`` is categorical in ``K``.

    Parameters
    ----------
    K : Complex
    U : iterable of facets (label sequences or masks of ``K``)
    budget : int
        Cap on distinct maps visited by the breadth-first search.
    fast_path : bool
        For connected ``K`` of dimension <= 1 decide by acyclicity of ``U``.
    shortcut : bool
        Try :func:`categorical_chain` before searching.
    reduce : bool
        Search from the core of the block instead of the block itself.

    Returns
    -------
    Decision
        ``yes`` carries a chain from the inclusion to a constant map.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    masks = _block_masks(K, U)
    key = (K, masks, budget, fast_path, shortcut, reduce)
    hit = _CAT_MEMO.get(key)
    if hit is not None:
        return hit
    res = _is_categorical(K, masks, budget, fast_path, shortcut, reduce)
    _CAT_MEMO[key] = res
    return res


def _is_categorical(
    K: Complex, masks: frozenset[int], budget: int, fast_path: bool, shortcut: bool, reduce: bool
) -> Decision:
    if fast_path and K.dim <= 1 and K.is_connected():
        edges = [K.labels(m) for m in masks if m.bit_count() == 2]
        if not is_forest(Graph.from_complex(K), edges):
            return Decision(NO, info={"route": "cycle"})
        chain = categorical_chain(K, masks)
        assert chain is not None  # forests in connected graphs always retract to a point
        return Decision(YES, chain, info={"route": "forest"})
    if shortcut:
        chain = categorical_chain(K, masks)
        if chain is not None:
            return Decision(YES, chain, info={"route": "collapse"})
    U = K.subcomplex(sorted(masks))
    # i_U ~ i_{U0} o r with U0 = core(U) and r the collapse retraction, so
    # U is categorical iff U0 is; the search from U0 is far smaller.
    U0, steps = core(U) if reduce else (U, [])
    res = _bfs(inclusion(U0, K), lambda imgs: len(set(imgs)) == 1, budget)
    res.info.pop("component", None)
    res.info["route"] = "search"
    res.info["searched_vertices"] = U0.n_vertices
    if res.yes:
        res = Decision(YES, _lift_chain(U, K, steps, res.witness), visited=res.visited,
                       budget=budget, info=res.info)
    return res


def _lift_chain(U: Complex, K: Complex, steps, chain0: ContiguityChain) -> ContiguityChain:
    """Turn a chain from the inclusion of core(U) into one from the inclusion of U."""
    start = inclusion(U, K)
    images = list(start.images)
    maps = [start]
    for st in steps:
        v, w = K.index[st.removed], K.index[st.dominator]
        images = [w if x == v else x for x in images]
        maps.append(start.with_images(images))
    U0 = chain0.start.source
    # after all retractions every vertex of U sits on a vertex of U0
    to_u0 = [U0.index[K.vertices[x]] for x in images]
    for g in chain0.maps[1:]:
        maps.append(start.with_images([g.images[j] for j in to_u0]))
    chain = ContiguityChain(tuple(maps))
    if not validate_chain(chain):
        raise AssertionError("lifted categorical chain failed validation")
    return chain


def clear_memo() -> None:
    _CAT_MEMO.clear()


# -- partition search ---------------------------------------------------------------

def _search_partitions(
    facets: Sequence[int],
    k: int,
    partial_test: Callable[[frozenset[int]], str],
    final_test: Callable[[frozenset[int]], str] | None = None,
    prune: Callable[[list[list[int]], int], bool] | None = None,
) -> tuple[list[list[int]] | None, bool, int]:
    """First partition of ``facets`` into exactly k+1 blocks passing the tests.

    ``partial_test`` is applied to a block each time a facet joins it and
    must be hereditary; ``final_test`` is applied to complete blocks.  Both
    return YES / NO / UNKNOWN; any non-YES rejects.  ``prune(blocks, i)`` may
    cut the branch before facet ``i`` is placed.  Returns the partition (or
    None), whether any UNKNOWN was met, and the number of nodes visited.
    """
    m = len(facets)
    nblocks = k + 1
    blocks: list[list[int]] = []
    saw_unknown = False
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal saw_unknown, nodes
        nodes += 1
        if i == m:
            if len(blocks) != nblocks:
                return False
            if final_test is not None:
                for b in blocks:
                    st = final_test(frozenset(b))
                    if st == UNKNOWN:
                        saw_unknown = True
                    if st != YES:
                        return False
            return True
        if nblocks - len(blocks) > m - i:
            return False
        if prune is not None and prune(blocks, i):
            return False
        f = facets[i]
        for b in blocks:
            b.append(f)
            st = partial_test(frozenset(b))
            if st == YES and rec(i + 1):
                return True
            if st == UNKNOWN:
                saw_unknown = True
            b.pop()
        if len(blocks) < nblocks:
            blocks.append([f])
            st = partial_test(frozenset(blocks[-1]))
            if st == YES and rec(i + 1):
                return True
            if st == UNKNOWN:
                saw_unknown = True
            blocks.pop()
        return False

    if rec(0):
        return [list(b) for b in blocks], saw_unknown, nodes
    return None, saw_unknown, nodes


def cone_cover(K: Complex) -> Cover:
    """Facets grouped by a greedy vertex hitting set; every block is a cone."""
    remaining = set(K.facet_masks)
    blocks = []
    while remaining:
        best = max(range(K.n_vertices),
                   key=lambda v: (sum(1 for f in remaining if f >> v & 1), -v))
        block = tuple(sorted((f for f in remaining if f >> best & 1), key=K.facet_masks.index))
        blocks.append(block)
        remaining -= set(block)
    return Cover(K, tuple(blocks))


def validate_cover(cover: Cover, kind: str = "scat", budget: int = DEFAULT_BUDGET) -> bool:
    """Re-check a witness: partition of the facets, every block categorical / strongly collapsible."""
    if not cover.is_partition():
        return False
    if kind == "gscat":
        return all(is_strongly_collapsible(S) for S in cover.subcomplexes())
    return all(is_categorical(cover.ambient, b, budget).yes for b in cover.blocks)


def _transfer(K: Complex, K0: Complex, steps, cover0: Cover, chains0: list[ContiguityChain]) -> tuple[Cover, list[ContiguityChain]]:
    """Pull a categorical cover of the core ``K0`` back to ``K`` along the collapse retraction."""
    # r_t: composite of the first t retractions, as vertex index maps on K
    r = list(range(K.n_vertices))
    stages = [list(r)]
    for st in steps:
        v, w = K.index[st.removed], K.index[st.dominator]
        r = [w if x == v else x for x in r]
        stages.append(list(r))
    core_idx = [K0.index[K.vertices[x]] for x in r]
    block_of = {}
    for j, b in enumerate(cover0.blocks):
        for f in b:
            block_of[f] = j
    assigned: list[list[int]] = [[] for _ in cover0.blocks]
    for F in K.facet_masks:
        img = 0
        for b in bits(F):
            img |= 1 << core_idx[b]
        j = min(block_of[f] for f in K0.facet_masks if f & img == img)
        assigned[j].append(F)
    blocks = [b for b in assigned if b]
    kept = [j for j, b in enumerate(assigned) if b]
    cover = Cover(K, tuple(tuple(b) for b in blocks))
    chains = []
    for j, b in zip(kept, blocks):
        B = K.subcomplex(b)
        src_idx = [K.index[v] for v in B.vertices]
        maps = []
        for stage in stages:
            imgs = tuple(stage[i] for i in src_idx)
            if not maps or maps[-1].images != imgs:
                maps.append(VertexMap(B, K, imgs))
        U0 = chains0[j].start.source
        # B's image under r lies in the block U0 of the core; precompose the core chain
        to_u0 = VertexMap(B, U0, tuple(U0.index[K0.vertices[core_idx[i]]] for i in src_idx))
        for g in chains0[j].maps[1:]:
            imgs = tuple(K.index[K0.vertices[x]] for x in compose(g, to_u0).images)
            if maps[-1].images != imgs:
                maps.append(VertexMap(B, K, imgs))
        chain = ContiguityChain(tuple(maps))
        if not validate_chain(chain) or not chain.end.is_constant():
            raise AssertionError("transferred chain failed validation")
        chains.append(chain)
    return cover, chains


def scat(
    K: Complex,
    budget: int = DEFAULT_BUDGET,
    *,
    use_core: bool = True,
    fast_path: bool = True,
    shortcut: bool = True,
    reduce: bool = True,
) -> CatResult:
    """Simplicial LS-category of ``K`` as an interval with a witness cover.

    Connected graphs go through arboricity when ``fast_path`` is set.
    Otherwise the search runs on the core of ``K`` (unless ``use_core`` is
    False) and the resulting cover is pulled back to ``K``.  ``budget`` caps
    each contiguity-class search; levels where some block check ran out of
    budget are left unrefuted and the result becomes an interval.
    ``fast_path``, ``shortcut`` and ``reduce`` are passed to
    :func:`is_categorical`; switching them off leaves plain map-graph search.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if fast_path and K.dim <= 1 and K.is_connected():
        return _graph_scat_result(K)
    work, steps = core(K) if use_core else (K, [])
    if work.n_vertices == 1:
        chain = categorical_chain(K, K.facet_masks)
        return CatResult(0, 0, Cover(K, (tuple(K.facet_masks),)), [chain] if chain else None,
                         stats={"core_vertices": 1})

    def test(block: frozenset[int]) -> str:
        return is_categorical(work, block, budget, fast_path=fast_path, shortcut=shortcut,
                              reduce=reduce).status

    ub_cover = cone_cover(work)
    ub = len(ub_cover.blocks) - 1
    lower = 0
    refuted_so_far = True
    found = None
    nodes_total = 0
    for k in range(ub):
        part, saw_unknown, nodes = _search_partitions(work.facet_masks, k, test)
        nodes_total += nodes
        if part is not None:
            found = (k, part)
            break
        if refuted_so_far and not saw_unknown:
            lower = k + 1
        else:
            refuted_so_far = False
    if found is None:
        upper, cover0 = ub, ub_cover
    else:
        upper, cover0 = found[0], Cover(work, tuple(tuple(b) for b in found[1]))
    if refuted_so_far:
        lower = upper
    chains0 = []
    for b in cover0.blocks:
        d = is_categorical(work, b, budget, fast_path=fast_path, shortcut=shortcut, reduce=reduce)
        if not d.yes:
            d = Decision(YES, categorical_chain(work, b))  # cone blocks always retract
        chains0.append(d.witness)
    stats = {"core_vertices": work.n_vertices, "core_facets": work.n_facets, "nodes": nodes_total}
    if use_core and steps:
        cover, chains = _transfer(K, work, steps, cover0, chains0)
    else:
        cover, chains = cover0, chains0
    return CatResult(lower, upper, cover, chains, stats)


def _graph_scat_result(K: Complex) -> CatResult:
    G = Graph.from_complex(K)
    if not G.edges:
        return CatResult(0, 0, Cover(K, (tuple(K.facet_masks),)),
                         [categorical_chain(K, K.facet_masks)], stats={"route": "graph"})
    ups, forests = arboricity(G)
    blocks = tuple(tuple(K.mask(e) for e in f) for f in forests if f)
    chains = [categorical_chain(K, b) for b in blocks]
    return CatResult(ups - 1, ups - 1, Cover(K, blocks), chains,
                     stats={"route": "graph", "arboricity": ups})


def gscat(K: Complex) -> CatResult:
    """Geometric simplicial category, computed on ``K`` itself (never on its core).

    Blocks must generate strongly collapsible subcomplexes.  Partial blocks
    are pruned only by necessary conditions that survive adding facets: for
    graphs a partial block must stay acyclic, and the connected components
    still to be merged cannot outnumber what the unplaced facets can join.
    """
    facets = K.facet_masks
    if is_strongly_collapsible(K):
        return CatResult(0, 0, Cover(K, (tuple(facets),)))
    graph_like = K.dim <= 1
    # tail_merge[i]: components the facets i.. can merge at most
    tail_merge = [0] * (len(facets) + 1)
    for i in range(len(facets) - 1, -1, -1):
        tail_merge[i] = tail_merge[i + 1] + facets[i].bit_count() - 1

    def n_components(block: Sequence[int]) -> int:
        comps: list[int] = []
        for f in block:
            merged = f
            rest = []
            for c in comps:
                if c & merged:
                    merged |= c
                else:
                    rest.append(c)
            comps = rest + [merged]
        return len(comps)

    def partial(block: frozenset[int]) -> str:
        if graph_like:
            edges = [K.labels(m) for m in block if m.bit_count() == 2]
            if not is_forest(Graph.from_complex(K), edges):
                return NO
        return YES

    def prune(blocks: list[list[int]], i: int) -> bool:
        need = sum(n_components(b) - 1 for b in blocks)
        return need > tail_merge[i]

    def final(block: frozenset[int]) -> str:
        return YES if is_strongly_collapsible(K.subcomplex(sorted(block))) else NO

    ub_cover = cone_cover(K)
    ub = len(ub_cover.blocks) - 1
    for k in range(1, ub):
        part, _, _ = _search_partitions(facets, k, partial, final, prune)
        if part is not None:
            return CatResult(k, k, Cover(K, tuple(tuple(b) for b in part)))
    return CatResult(ub, ub, ub_cover)


# -- Whitehead formulation ------------------------------------------------------------

def wscat_le(K: Complex, basepoint: str, n: int, budget: int = DEFAULT_BUDGET) -> Decision:
    """Decide whether the diagonal ``K -> K^(n+1)`` factors through the fat wedge up to contiguity.

    Enumerates every simplicial ``delta: K -> T^(n+1) K`` and runs one
    breadth-first search from the diagonal with all ``I o delta`` as goals.
    Only practical for complexes with about four vertices and n <= 2.
    A ``yes`` witness is ``(delta, chain from I o delta to the diagonal)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if basepoint not in K.index:
        raise ComplexError(f"{basepoint!r} is not a vertex")
    if not K.is_connected():
        raise ComplexError("wscat is only decided for connected complexes")
    N = n + 1
    T, incl = fat_wedge(K, basepoint, N)
    diag = diagonal(K, N)
    space = _MapSpace(K, T)
    goals: dict[tuple[int, ...], tuple[int, ...]] = {}
    for d in space.simplicial_maps():
        goals.setdefault(tuple(incl.images[x] for x in d), d)
    if not goals:
        return Decision(NO, info={"deltas": 0})
    res = _bfs(diag, goals.__contains__, budget)
    res.info.pop("component", None)
    res.info["deltas"] = len(goals)
    if res.yes:
        chain: ContiguityChain = res.witness  # type: ignore[assignment]
        delta = VertexMap(K, T, goals[chain.end.images])
        return Decision(YES, (delta, chain.reversed()), visited=res.visited, budget=budget, info=res.info)
    return res


def wscat_bounds(K: Complex, basepoint: str, max_n: int = 2, budget: int = DEFAULT_BUDGET) -> tuple[int, int | None]:
    """``(lower, upper)`` on wscat from the decisions for n = 0..max_n; upper None if not reached."""
    lower = 0
    decided = True
    for n in range(max_n + 1):
        d = wscat_le(K, basepoint, n, budget)
        if d.yes:
            return lower, n
        if d.no and decided:
            lower = n + 1
        else:
            decided = False
    return lower, None


# -- inequality harness -----------------------------------------------------------------

def _compare(name: str, lhs: tuple[int, float], rhs: tuple[float, float]) -> dict:
    if lhs[1] <= rhs[0]:
        status = "confirmed"
    elif lhs[0] > rhs[1]:
        status = "violated"
    else:
        status = "undetermined"
    return {"check": name, "lhs": list(lhs), "rhs": list(rhs), "status": status}


def verify_inequalities(
    K: Complex,
    L: Complex | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    wscat_max_n: int = 2,
) -> list[dict]:
    """Evaluate the known scat inequalities on ``K`` (and ``L``) with interval semantics.

    Each entry reports ``lhs <= rhs`` as ``confirmed`` (upper(lhs) <= lower(rhs)),
    ``violated`` (lower(lhs) > upper(rhs)) or ``undetermined``.
    """
    from .constructions import product, sd

    inf = float("inf")
    out = []
    sk = scat(K, budget)
    k0 = core(K)[0]
    out.append(_compare("scat(sd K) <= scat K", _bounds(scat(sd(K), budget)), _bounds(sk)))
    out.append(_compare("scat K < #vertices(core K)", (sk.lower + 1, sk.upper + 1), (k0.n_vertices, k0.n_vertices)))
    out.append(_compare("scat K < #facets(core K)", (sk.lower + 1, sk.upper + 1), (k0.n_facets, k0.n_facets)))
    gk = gscat(K)
    out.append(_compare("scat K <= gscat K", _bounds(sk), _bounds(gk)))
    if K.is_connected() and K.n_vertices <= 4 and wscat_max_n >= 0:
        lo, hi = wscat_bounds(K, K.vertices[0], wscat_max_n, budget)
        out.append(_compare("scat K <= wscat K", _bounds(sk), (lo, inf if hi is None else hi)))
    if L is not None:
        sl = scat(L, budget)
        sp = scat(product(K, L), budget)
        rhs = ((sk.lower + 1) * (sl.lower + 1), (sk.upper + 1) * (sl.upper + 1))
        out.append(_compare("scat(K x L) + 1 <= (scat K + 1)(scat L + 1)", (sp.lower + 1, sp.upper + 1), rhs))
    return out


def _bounds(r: CatResult) -> tuple[int, int]:
    return (r.lower, r.upper)

