"""Small complexes used by the tests and by ``scatkit verify``.

All fixtures are built on demand; none of them needs files.
"""
from __future__ import annotations

import random
from itertools import combinations

from .complex import Complex, dominated_pairs, from_facets, isomorphic
from .constructions import sd

__all__ = [
    "boundary_triangle",
    "simplex",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "sd_k5",
    "mother",
    "search_mother",
    "graph_fixtures",
    "connected_graphs",
    "minimal_fixtures",
]


def boundary_triangle() -> Complex:
    """The hollow triangle on a, b, c."""
    return from_facets([["a", "b"], ["b", "c"], ["a", "c"]])


def simplex(n: int) -> Complex:
    """The full n-simplex on vertices v0..vn."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return from_facets([[f"v{i}" for i in range(n + 1)]])


def complete_graph(n: int) -> Complex:
    if n < 2:
        return from_facets([["v0"]])
    return from_facets([[f"v{i}", f"v{j}"] for i, j in combinations(range(n), 2)])


def cycle_graph(n: int) -> Complex:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_facets([[f"c{i}", f"c{(i + 1) % n}"] for i in range(n)])


def path_graph(n: int) -> Complex:
    """Path with n vertices (a tree)."""
    if n < 2:
        return from_facets([["p0"]])
    return from_facets([[f"p{i}", f"p{i + 1}"] for i in range(n - 1)])


def star_graph(leaves: int) -> Complex:
    return from_facets([["hub", f"l{i}"] for i in range(leaves)])


def sd_k5() -> Complex:
    return sd(complete_graph(5))


# Found by search_mother(1); certified in the tests with is_collapsible,
# core and scat.  Collapsible, no dominated vertex, scat 1.
_MOTHER = [
    ["0", "1", "2"], ["0", "1", "3"], ["0", "2", "3"],
    ["0", "2", "4"], ["1", "2", "4"], ["1", "3", "4"],
]


def mother() -> Complex:
    """A collapsible 2-complex that is its own core (not strongly collapsible)."""
    return from_facets(_MOTHER)


def _edges_of(facets: set[frozenset[str]]) -> set[frozenset[str]]:
    return {frozenset(e) for f in facets for e in combinations(sorted(f), 2)}


def search_mother(seed: int = 0, max_vertices: int = 8, tries: int = 20000) -> Complex | None:
    """Random search for a collapsible complex without dominated vertices.

    Complexes are grown from an edge by elementary expansions (a pendant
    edge to a new vertex, or a triangle glued along two existing edges
    sharing a vertex whose third edge is new), so every candidate is
    collapsible by construction.  Returns the first candidate with more
    than two vertices and no dominated vertex.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        facets = {frozenset("01")}
        nv = 2
        for _ in range(rng.randint(6, 20)):
            if rng.random() < 0.3 and nv < max_vertices:
                verts = sorted({v for f in facets for v in f})
                facets.add(frozenset([rng.choice(verts), str(nv)]))
                nv += 1
                continue
            edges = _edges_of(facets)
            cand = [(e1, e2) for e1 in edges for e2 in edges
                    if e1 != e2 and len(e1 & e2) == 1 and (e1 ^ e2) not in edges]
            if not cand:
                continue
            cand.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
            e1, e2 = rng.choice(cand)
            tri = e1 | e2
            facets = {f for f in facets if not f <= tri}
            facets.add(tri)
        K = from_facets([sorted(f) for f in facets])
        if K.n_vertices > 2 and not dominated_pairs(K):
            return K
    return None


def graph_fixtures() -> dict[str, Complex]:
    """Connected graphs: complete graphs, cycles, trees and sd K5."""
    out = {f"K{n}": complete_graph(n) for n in (3, 4, 5)}
    out.update({f"C{n}": cycle_graph(n) for n in (3, 4, 5, 6)})
    out["P4"] = path_graph(4)
    out["star3"] = star_graph(3)
    out["sdK5"] = sd_k5()
    return out


def minimal_fixtures() -> dict[str, Complex]:
    """Complexes without dominated vertices."""
    return {
        "boundary_triangle": boundary_triangle(),
        "sd_boundary_triangle": sd(boundary_triangle()),
        "K5": complete_graph(5),
    }


def connected_graphs(max_edges: int) -> list[Complex]:
    """All connected graphs with 1..max_edges edges, one per isomorphism class.

    Grown edge by edge: each graph is extended by a pendant edge to a new
    vertex or by an edge between two non-adjacent vertices.  Every connected
    graph arises this way (remove a non-bridge edge or a leaf), and
    duplicates are removed with :func:`isomorphic`.
    """
    level = [frozenset([(0, 1)])]
    out: list[Complex] = []
    for _ in range(max_edges):
        out += [_graph_complex(g) for g in level]
        buckets: dict[tuple, list[tuple[frozenset, Complex]]] = {}
        nxt = []
        for g in level:
            n = 1 + max(v for e in g for v in e)
            cands = [g | {(v, n)} for v in range(n)]
            cands += [g | {(a, b)} for a, b in combinations(range(n), 2) if (a, b) not in g]
            for h in cands:
                H = _graph_complex(h)
                key = _degree_key(h)
                bucket = buckets.setdefault(key, [])
                if any(isomorphic(H, other) is not None for _, other in bucket):
                    continue
                bucket.append((h, H))
                nxt.append(h)
        level = nxt
    return out


def _degree_key(edges: frozenset) -> tuple:
    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return (len(deg), tuple(sorted(deg.values())))


def _graph_complex(edges: frozenset) -> Complex:
    return from_facets([[f"g{a}", f"g{b}"] for a, b in sorted(edges)])
