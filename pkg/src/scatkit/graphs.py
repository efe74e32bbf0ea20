"""Graphs as one-dimensional complexes: forests, arboricity, tree covers.

Exact arboricity is found by backtracking edges into k forests, starting
from the Nash-Williams density lower bound and increasing k.  Each forest
keeps a union-find with rollback so acyclicity checks and undo are cheap.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .complex import Complex, ComplexError, from_facets

__all__ = [
    "Graph",
    "UnionFind",
    "is_forest",
    "find_cycle",
    "nash_williams_bound",
    "arboricity",
    "verify_forest_decomposition",
    "forests_to_trees",
    "graph_scat",
    "graph_gscat",
    "bisect_edges",
    "bisect_off_tree",
    "spanning_tree",
    "minimal_bisection",
]

Edge = tuple[str, str]


class UnionFind:
    """Disjoint sets with union by size and an undo stack (no path compression)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[tuple[int, int] | None] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((ra, rb))
        return True

    def undo(self) -> None:
        ra, rb = self.history.pop()
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]


@dataclass(frozen=True)
class Graph:
    """A simple graph viewed from a complex of dimension at most one."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_complex(cls, K: Complex) -> "Graph":
        if K.dim > 1:
            raise ComplexError("a graph needs a complex of dimension at most 1")
        edges = tuple(K.labels(f) for f in K.facet_masks if f.bit_count() == 2)
        return cls(K.vertices, edges)  # type: ignore[arg-type]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> "Graph":
        es = sorted({tuple(sorted(e)) for e in edges})
        if any(len(e) != 2 or e[0] == e[1] for e in es):
            raise ComplexError("edges must join two distinct vertices")
        vs = sorted(set(vertices) | {v for e in es for v in e})
        return cls(tuple(vs), tuple(es))  # type: ignore[arg-type]

    def to_complex(self) -> Complex:
        isolated = set(self.vertices) - {v for e in self.edges for v in e}
        return from_facets([list(e) for e in self.edges] + [[v] for v in sorted(isolated)])

    @property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.adjacency()
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def _as_graph(G: Graph | Complex) -> Graph:
    return G if isinstance(G, Graph) else Graph.from_complex(G)


def _norm(e: Sequence[str]) -> Edge:
    a, b = e
    return (a, b) if a <= b else (b, a)


def is_forest(G: Graph | Complex, edges: Iterable[Sequence[str]] | None = None) -> bool:
    G = _as_graph(G)
    idx = G.index
    uf = UnionFind(len(G.vertices))
    for e in (G.edges if edges is None else edges):
        a, b = _norm(e)
        if not uf.union(idx[a], idx[b]):
            return False
    return True


def find_cycle(G: Graph | Complex, edges: Iterable[Sequence[str]] | None = None) -> list[str] | None:
    """Vertices of some cycle ``[v0, v1, ..., vk]`` (closing edge vk-v0), or None."""
    G = _as_graph(G)
    es = sorted({_norm(e) for e in (G.edges if edges is None else edges)})
    adj: dict[str, list[str]] = {}
    for a, b in es:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for v in adj:
        adj[v].sort()
    parent: dict[str, str | None] = {}
    for root in sorted(adj):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, iter(adj[root]))]
        depth = {root: 0}
        while stack:
            v, it = stack[-1]
            for w in it:
                if w == parent[v]:
                    continue
                if w in parent:
                    if depth[w] < depth[v]:
                        # back edge v -> w closes a cycle
                        cyc = [v]
                        while cyc[-1] != w:
                            cyc.append(parent[cyc[-1]])  # type: ignore[arg-type]
                        cyc.reverse()
                        return cyc
                    continue
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, iter(adj[w])))
                break
            else:
                stack.pop()
    return None


def nash_williams_bound(G: Graph | Complex, exhaustive_limit: int = 12, max_subset: int = 8) -> int:
    """Lower bound on arboricity: the largest ``ceil(q_n / (n - 1))`` found.

    ``q_n`` is the largest edge count of an n-vertex subgraph.  All vertex
    subsets are considered when the graph has at most ``exhaustive_limit``
    vertices, otherwise those with at most ``max_subset`` vertices; the
    whole graph is always included.  Only connected subsets are enumerated:
    a disconnected subgraph is never denser than its densest component, so
    the bound is unchanged.
    """
    G = _as_graph(G)
    n, m = len(G.vertices), len(G.edges)
    if n < 2 or m == 0:
        raise ComplexError("the bound needs at least two vertices and one edge")
    idx = G.index
    adj = [0] * n
    for a, b in G.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    best = -(-m // (n - 1))
    limit = n if n <= exhaustive_limit else max_subset
    # q[size] = max edges among connected subsets of that size
    q = [0] * (limit + 1)

    # each connected subset is produced once, from its least vertex (ESU enumeration)
    def extend(root: int, chosen: int, closed: int, ext: int, size: int, count: int) -> None:
        if count > q[size]:
            q[size] = count
        if size == limit:
            return
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            fresh = adj[w] & ~closed & ~((1 << (root + 1)) - 1)
            extend(root, chosen | 1 << w, closed | adj[w] | 1 << w, ext | fresh,
                   size + 1, count + (adj[w] & chosen).bit_count())

    for v in range(n):
        higher = adj[v] & ~((1 << (v + 1)) - 1)
        extend(v, 1 << v, adj[v] | 1 << v, higher, 1, 0)
    for size in range(2, limit + 1):
        best = max(best, -(-q[size] // (size - 1)))
    return best


def _edge_order(G: Graph) -> list[Edge]:
    """Edges in breadth-first discovery order from the least vertex, canonical within a vertex."""
    adj = G.adjacency()
    order: list[Edge] = []
    seen_e: set[Edge] = set()
    seen_v: set[str] = set()
    for root in G.vertices:
        if root in seen_v:
            continue
        seen_v.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                e = _norm((v, w))
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    return order


def _decompose(G: Graph, k: int) -> list[list[Edge]] | None:
    idx = G.index
    edges = _edge_order(G)
    ends = [(idx[a], idx[b]) for a, b in edges]
    m = len(edges)
    ufs = [UnionFind(len(G.vertices)) for _ in range(k)]
    assign = [-1] * m

    def rec(i: int, opened: int) -> bool:
        if i == m:
            return True
        a, b = ends[i]
        for j in range(min(opened + 1, k)):
            if ufs[j].union(a, b):
                assign[i] = j
                if rec(i + 1, max(opened, j + 1)):
                    return True
                ufs[j].undo()
        return False

    if not rec(0, 0):
        return None
    forests: list[list[Edge]] = [[] for _ in range(k)]
    for e, j in zip(edges, assign):
        forests[j].append(e)
    return [sorted(f) for f in forests]


def verify_forest_decomposition(G: Graph | Complex, forests: Sequence[Sequence[Edge]]) -> bool:
    G = _as_graph(G)
    flat = [_norm(e) for f in forests for e in f]
    if len(flat) != len(set(flat)) or set(flat) != set(G.edges):
        return False
    return all(is_forest(G, f) for f in forests)


def arboricity(G: Graph | Complex) -> tuple[int, list[list[Edge]]]:
    """Exact arboricity and a witnessing decomposition into edge-disjoint forests."""
    G = _as_graph(G)
    if not G.edges:
        return 0, []
    k = nash_williams_bound(G)
    while True:
        forests = _decompose(G, k)
        if forests is not None:
            if not verify_forest_decomposition(G, forests):
                raise AssertionError("forest decomposition failed verification")
            return k, forests
        k += 1


def _components(vertices: Iterable[str], edges: Iterable[Edge]) -> list[set[str]]:
    vs = sorted(set(vertices))
    idx = {v: i for i, v in enumerate(vs)}
    uf = UnionFind(len(vs))
    for a, b in edges:
        uf.union(idx[a], idx[b])
    groups: dict[int, set[str]] = {}
    for v in vs:
        groups.setdefault(uf.find(idx[v]), set()).add(v)
    return sorted(groups.values(), key=min)


def forests_to_trees(G: Graph | Complex, forests: Sequence[Sequence[Edge]]) -> list[list[Edge]]:
    """Turn each forest into one tree containing it by linking its trees with G-paths.

    For each forest the tree holding the least vertex is grown: a shortest
    path in ``G`` to another of the forest's trees is added, skipping any
    path edge that would close a cycle, until a single tree remains.  The
    result covers ``G`` with the same number of trees (not edge-disjoint).
    """
    G = _as_graph(G)
    if not G.is_connected():
        raise ComplexError("forests_to_trees needs a connected graph")
    adj = G.adjacency()
    out = []
    for forest in forests:
        tree = {_norm(e) for e in forest}
        if not tree:
            out.append([])
            continue
        while True:
            comps = _components({v for e in tree for v in e}, tree)
            if len(comps) == 1:
                break
            home = comps[0]
            others = set().union(*comps[1:])
            # breadth-first search from the home tree to the nearest other tree
            prev: dict[str, str | None] = {v: None for v in sorted(home)}
            queue = deque(sorted(home))
            hit = None
            while queue and hit is None:
                v = queue.popleft()
                for w in adj[v]:
                    if w in prev:
                        continue
                    prev[w] = v
                    if w in others:
                        hit = w
                        break
                    queue.append(w)
            path = [hit]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])  # type: ignore[arg-type]
            verts = {v for e in tree for v in e} | set(path)  # type: ignore[arg-type]
            idx = {v: i for i, v in enumerate(sorted(verts))}
            uf = UnionFind(len(idx))
            for a, b in tree:
                uf.union(idx[a], idx[b])
            for a, b in zip(path, path[1:]):
                if uf.union(idx[a], idx[b]):
                    tree.add(_norm((a, b)))
        out.append(sorted(tree))
    return out


def _require_connected(G: Graph) -> None:
    if not G.is_connected():
        raise ComplexError("this operation needs a connected graph")


def graph_scat(G: Graph | Complex) -> int:
    """scat of a connected graph: arboricity minus one (0 for a single vertex)."""
    G = _as_graph(G)
    _require_connected(G)
    return max(arboricity(G)[0] - 1, 0)


def graph_gscat(G: Graph | Complex) -> int:
    G = _as_graph(G)
    _require_connected(G)
    return max(arboricity(G)[0] - 1, 0)


def spanning_tree(G: Graph | Complex) -> list[Edge]:
    """Breadth-first spanning tree from the least vertex, neighbours in canonical order."""
    G = _as_graph(G)
    _require_connected(G)
    adj = G.adjacency()
    root = G.vertices[0]
    seen = {root}
    queue = deque([root])
    tree = []
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.append(_norm((v, w)))
                queue.append(w)
    return sorted(tree)


def bisect_edges(G: Graph | Complex, edges: Iterable[Sequence[str]]) -> Graph:
    """Replace each listed edge ``uw`` by ``u-{u,w}-w`` through a new midpoint."""
    G = _as_graph(G)
    cut = {_norm(e) for e in edges}
    if not cut <= set(G.edges):
        raise ComplexError("can only bisect edges of the graph")
    taken = set(G.vertices)
    new_edges = []
    for e in G.edges:
        if e in cut:
            mid = "{" + e[0] + "," + e[1] + "}"
            while mid in taken:
                mid += "'"
            taken.add(mid)
            new_edges += [(e[0], mid), (mid, e[1])]
        else:
            new_edges.append(e)
    return Graph.from_edges(new_edges, G.vertices)


def bisect_off_tree(G: Graph | Complex) -> Graph:
    """Bisect every edge outside the canonical breadth-first spanning tree."""
    G = _as_graph(G)
    tree = set(spanning_tree(G))
    return bisect_edges(G, [e for e in G.edges if e not in tree])


def minimal_bisection(G: Graph | Complex, size: int, target: int = 1) -> list[Edge] | None:
    """First ``size``-subset of edges (canonical order) whose bisection has scat ``target``."""
    G = _as_graph(G)
    for subset in combinations(G.edges, size):
        if graph_scat(bisect_edges(G, subset)) == target:
            return list(subset)
    return None


def forest_masks(K: Complex, forests: Sequence[Sequence[Edge]]) -> list[frozenset[int]]:
    """Facet masks of ``K`` for each forest (the graph's edges are its facets)."""
    out = []
    for f in forests:
        out.append(frozenset(K.mask(e) for e in f))
    return out


def isolated_masks(K: Complex) -> list[int]:
    return [f for f in K.facet_masks if f.bit_count() == 1]

