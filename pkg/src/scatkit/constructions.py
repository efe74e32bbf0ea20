"""Complexes and maps built from other complexes.

Vertex labels of derived complexes are canonical serializations of what
the vertex stands for: ``{a,b}`` for the barycentre of the simplex ab,
``(a,x)`` for a product vertex.  Labels of an n-fold power are flattened
tuples ``(a,b,c)``.  Product labels are split back into coordinates on
top-level commas, so factor labels must not contain unbracketed commas.
"""
from __future__ import annotations

from itertools import permutations, product as cartesian
from typing import Sequence

from .complex import Complex, ComplexError, bits, from_facets
from .maps import ContiguityChain, VertexMap, is_contiguous, is_simplicial, validate_chain

__all__ = [
    "simplex_label",
    "pair_label",
    "sd",
    "sd_iter",
    "sd_map",
    "sd_contiguity_chain",
    "product",
    "power",
    "coordinates",
    "projection",
    "projections",
    "diagonal",
    "tuple_map",
    "product_map",
    "power_map",
    "join",
    "join_with_renaming",
    "cone",
    "suspension",
    "fat_wedge",
    "fat_wedge_map",
]


def simplex_label(labels: Sequence[str]) -> str:
    return "{" + ",".join(sorted(labels)) + "}"


def pair_label(coords: Sequence[str]) -> str:
    return "(" + ",".join(coords) + ")"


# -- barycentric subdivision ------------------------------------------------

def _sd_with_index(K: Complex) -> tuple[Complex, dict[int, int]]:
    simplices = K.simplices()
    label_of = {m: simplex_label(K.labels(m)) for m in simplices}
    facets = []
    for F in K.facet_masks:
        for order in permutations(bits(F)):
            chain = []
            m = 0
            for v in order:
                m |= 1 << v
                chain.append(label_of[m])
            facets.append(chain)
    S = from_facets(facets)
    return S, {m: S.index[label_of[m]] for m in simplices}


def sd(K: Complex) -> Complex:
    """First barycentric subdivision.

    Vertices are the simplices of ``K``; facets are the maximal inclusion
    chains, i.e. the full flags of each facet of ``K``.
    """
    return _sd_with_index(K)[0]


def sd_iter(K: Complex, n: int) -> Complex:
    if n < 0:
        raise ValueError("number of subdivisions must be nonnegative")
    for _ in range(n):
        K = sd(K)
    return K


def sd_map(f: VertexMap) -> VertexMap:
    """The induced map ``sd f``: the barycentre of s goes to the barycentre of f(s)."""
    if not is_simplicial(f):
        raise ComplexError("sd is only defined for simplicial maps")
    sK, idx_k = _sd_with_index(f.source)
    sL, idx_l = _sd_with_index(f.target)
    return _sd_map(f, sK, idx_k, sL, idx_l)


def _sd_map(f: VertexMap, sK: Complex, idx_k: dict[int, int], sL: Complex, idx_l: dict[int, int]) -> VertexMap:
    images = [0] * sK.n_vertices
    for m, i in idx_k.items():
        images[i] = idx_l[f.image_mask(m)]
    return VertexMap(sK, sL, tuple(images))


def sd_contiguity_chain(phi: VertexMap, psi: VertexMap) -> ContiguityChain:
    """A contiguity chain from ``sd phi`` to ``sd psi`` for directly contiguous maps.

    Both ``sd phi`` and ``sd psi`` are moved to the map F that sends the
    barycentre of s to the barycentre of ``phi(s) | psi(s)``.  Each step
    changes the image of one barycentre, always the canonically least among
    the highest-dimensional simplices where the current map and F differ.
    The two halves are joined at F.
    """
    if not is_contiguous(phi, psi):
        raise ComplexError("sd_contiguity_chain needs directly contiguous maps")
    sK, idx_k = _sd_with_index(phi.source)
    sL, idx_l = _sd_with_index(phi.target)
    # highest dimension first; sort is stable so canonical order holds within a dimension
    order = sorted(phi.source.simplices(), key=lambda m: -m.bit_count())

    def walk(start: VertexMap) -> list[VertexMap]:
        cur = list(start.images)
        out = [start]
        for m in order:
            i = idx_k[m]
            target = idx_l[phi.image_mask(m) | psi.image_mask(m)]
            if cur[i] != target:
                cur[i] = target
                out.append(start.with_images(cur))
        return out

    a = walk(_sd_map(phi, sK, idx_k, sL, idx_l))
    b = walk(_sd_map(psi, sK, idx_k, sL, idx_l))
    chain = ContiguityChain(tuple(a + b[::-1][1:]))
    if not validate_chain(chain):
        raise AssertionError("constructed sd chain failed validation")
    return chain


# -- products -----------------------------------------------------------------

def _factor(K: Complex) -> tuple[list[tuple[str, ...]], list[list[int]]]:
    return [(v,) for v in K.vertices], [list(bits(F)) for F in K.facet_masks]


def _product_coords(
    left: list[tuple[str, ...]], lfac: list[list[int]],
    right: list[tuple[str, ...]], rfac: list[list[int]],
) -> tuple[list[tuple[str, ...]], list[list[int]]]:
    coords = [a + b for a in left for b in right]
    nr = len(right)
    facets = [[i * nr + j for i in F for j in G] for F in lfac for G in rfac]
    return coords, facets


def _product_of(factors: Sequence[Complex]) -> Complex:
    coords, facets = _factor(factors[0])
    for F in factors[1:]:
        coords, facets = _product_coords(coords, facets, *_factor(F))
    labels = [pair_label(c) for c in coords]
    return from_facets([[labels[i] for i in F] for F in facets])


def product(K: Complex, L: Complex) -> Complex:
    """Categorical product; its facets are the products of facet pairs."""
    return _product_of([K, L])


def power(K: Complex, n: int) -> Complex:
    """``K^n`` with flattened tuple labels, built as ``product(K^(n-1), K)``."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    return _product_of([K] * n)


def _split_top(s: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def coordinates(P: Complex) -> list[tuple[str, ...]]:
    """Coordinate tuples of the vertices of a product complex, in vertex order."""
    out = []
    for lab in P.vertices:
        if not (lab.startswith("(") and lab.endswith(")")):
            raise ComplexError(f"{lab!r} is not a product vertex label")
        out.append(tuple(_split_top(lab[1:-1])))
    return out


def projection(P: Complex, factors: Sequence[Complex], j: int) -> VertexMap:
    """Projection of the product ``P`` of ``factors`` onto factor ``j`` (0-based)."""
    coords = coordinates(P)
    if any(len(c) != len(factors) for c in coords):
        raise ComplexError("product labels do not match the number of factors")
    tgt = factors[j]
    return VertexMap(P, tgt, tuple(tgt.index[c[j]] for c in coords))


def projections(K: Complex, n: int) -> list[VertexMap]:
    P = power(K, n)
    return [projection(P, [K] * n, j) for j in range(n)]


def diagonal(K: Complex, n: int) -> VertexMap:
    if n < 1:
        raise ValueError("diagonal needs n >= 1")
    P = power(K, n)
    return VertexMap(K, P, tuple(P.index[pair_label([v] * n)] for v in K.vertices))


def tuple_map(*fs: VertexMap) -> VertexMap:
    """``v -> (f1(v), ..., fn(v))`` into the product of the targets."""
    if not fs:
        raise ValueError("tuple_map needs at least one map")
    src = fs[0].source
    if any(f.source != src for f in fs):
        raise ComplexError("tuple_map needs maps with a common source")
    target = _product_of([f.target for f in fs])
    images = []
    for i in range(src.n_vertices):
        images.append(target.index[pair_label([f.target.vertices[f.images[i]] for f in fs])])
    return VertexMap(src, target, tuple(images))


def product_map(*fs: VertexMap) -> VertexMap:
    """``f1 x ... x fn`` between the products of the sources and of the targets."""
    if not fs:
        raise ValueError("product_map needs at least one map")
    src = _product_of([f.source for f in fs])
    tgt = _product_of([f.target for f in fs])
    images = [tgt.index[pair_label([f(x) for f, x in zip(fs, c)])] for c in coordinates(src)]
    return VertexMap(src, tgt, tuple(images))


def power_map(f: VertexMap, n: int) -> VertexMap:
    return product_map(*([f] * n))


# -- joins ----------------------------------------------------------------------

def join_with_renaming(K: Complex, L: Complex) -> tuple[Complex, dict[str, str]]:
    """Join plus the renaming applied to ``L``'s labels (identity when disjoint)."""
    taken = set(K.vertices)
    rename = {}
    for v in L.vertices:
        new = v
        while new in taken:
            new += "'"
        rename[v] = new
        taken.add(new)
    facets = [list(K.labels(F)) + [rename[w] for w in L.labels(G)]
              for F in K.facet_masks for G in L.facet_masks]
    return from_facets(facets), rename


def join(K: Complex, L: Complex) -> Complex:
    """``K * L``: facets are unions of a facet of each factor.

    Labels of ``L`` that clash with ``K`` get primes appended.
    """
    return join_with_renaming(K, L)[0]


def cone(K: Complex, apex: str = "*") -> Complex:
    return join(K, from_facets([[apex]]))


def suspension(K: Complex) -> Complex:
    return join(K, from_facets([["N"], ["S"]]))


# -- fat wedge --------------------------------------------------------------------

def fat_wedge(K: Complex, basepoint: str, n: int) -> tuple[Complex, VertexMap]:
    """``T^n K`` inside ``K^n`` together with its inclusion.

    The union over j of the full subcomplexes of ``K^n`` spanned by the
    vertices whose j-th coordinate is the basepoint.
    """
    if n < 1:
        raise ValueError("fat wedge needs n >= 1")
    if basepoint not in K.index:
        raise ComplexError(f"{basepoint!r} is not a vertex")
    P = power(K, n)
    fac_lists = [K.labels(F) for F in K.facet_masks]
    facets = []
    for j in range(n):
        for combo in cartesian(fac_lists, repeat=n - 1):
            parts = list(combo[:j]) + [(basepoint,)] + list(combo[j:])
            facets.append([pair_label(c) for c in cartesian(*parts)])
    T = from_facets(facets)
    incl = VertexMap(T, P, tuple(P.index[v] for v in T.vertices))
    return T, incl


def fat_wedge_map(f: VertexMap, source_base: str, target_base: str, n: int) -> VertexMap:
    """``T^n f``: the restriction of ``f^n`` to the fat wedges."""
    if f(source_base) != target_base:
        raise ComplexError("fat_wedge_map needs a pointed map")
    TK, _ = fat_wedge(f.source, source_base, n)
    TL, _ = fat_wedge(f.target, target_base, n)
    images = [TL.index[pair_label([f(x) for x in c])] for c in coordinates(TK)]
    return VertexMap(TK, TL, tuple(images))
