"""Finite abstract simplicial complexes stored by their facets.

Vertices carry string labels and are kept in lexicographic (canonical)
order.  Internally every simplex is an ``int`` bitmask over the dense
vertex indices, so membership, subset and union tests are single integer
operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "Complex",
    "CollapseStep",
    "ComplexError",
    "from_facets",
    "is_simplex",
    "link",
    "star",
    "dominated_by",
    "dominated_pairs",
    "core",
    "is_strongly_collapsible",
    "isomorphic",
    "strong_homotopy_equivalent",
    "is_collapsible",
    "bits",
    "maximalize",
]

_FACE_CACHE_LIMIT = 1 << 20


class ComplexError(ValueError):
    """Raised when a complex or a vertex argument is malformed."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def maximalize(masks: Iterable[int]) -> list[int]:
    """Keep only the inclusion-maximal masks, deduplicated, in canonical order."""
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    kept.sort(key=_mask_key)
    return kept


def _check_label(label: object) -> str:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise ComplexError(f"malformed vertex label: {label!r}")
    return label


class Complex:
    """An immutable finite abstract simplicial complex.

    Parameters
    ----------
    vertices : sequence of str
        Vertex labels.  Sorted lexicographically on construction.
    facet_masks : iterable of int
        Simplices as bitmasks over ``vertices`` (after sorting).  They are
        maximalized, so non-maximal masks may be passed.

    Most callers should use :func:`from_facets` instead.
    """

    __slots__ = ("vertices", "index", "facet_masks", "_faces", "_hash", "_vertex_facets")

    def __init__(self, vertices: Sequence[str], facet_masks: Iterable[int]):
        verts = tuple(vertices)
        if list(verts) != sorted(verts):
            raise ComplexError("vertices must be given in canonical (sorted) order")
        if len(set(verts)) != len(verts):
            raise ComplexError("duplicate vertex labels")
        facets = maximalize(m for m in facet_masks if m)
        if not facets:
            raise ComplexError("the empty complex is not allowed")
        covered = 0
        for f in facets:
            covered |= f
        if covered != (1 << len(verts)) - 1:
            raise ComplexError("every vertex must lie in some facet")
        self.vertices: tuple[str, ...] = verts
        self.index: dict[str, int] = {v: i for i, v in enumerate(verts)}
        self.facet_masks: tuple[int, ...] = tuple(facets)
        self._faces: frozenset[int] | None = None
        self._vertex_facets: tuple[tuple[int, ...], ...] | None = None
        self._hash = hash((self.vertices, self.facet_masks))

    # -- basic queries ---------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facet_masks)

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facet_masks) - 1

    @property
    def facets(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.labels(f) for f in self.facet_masks)

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in bits(mask))

    def mask(self, simplex: Iterable[str]) -> int:
        """Bitmask of a set of labels; raises ``KeyError`` on unknown labels."""
        m = 0
        for v in simplex:
            m |= 1 << self.index[v]
        return m

    def vertex_facets(self, i: int) -> tuple[int, ...]:
        """Facet masks containing the vertex with index ``i``."""
        if self._vertex_facets is None:
            table: list[list[int]] = [[] for _ in self.vertices]
            for f in self.facet_masks:
                for j in bits(f):
                    table[j].append(f)
            self._vertex_facets = tuple(tuple(t) for t in table)
        return self._vertex_facets[i]

    def has_mask(self, mask: int) -> bool:
        """True iff the vertex set ``mask`` is a simplex (or empty)."""
        faces = self.faces()
        if faces is not None:
            return mask in faces
        return any(mask & f == mask for f in self.facet_masks)

    def faces(self) -> frozenset[int] | None:
        """All nonempty simplices as masks, or None if there are too many to cache."""
        if self._faces is None:
            total = sum(1 << f.bit_count() for f in self.facet_masks)
            if total > _FACE_CACHE_LIMIT:
                return None
            out: set[int] = {0}
            for f in self.facet_masks:
                if f in out:
                    continue
                sub = f
                while sub:
                    out.add(sub)
                    sub = (sub - 1) & f
            self._faces = frozenset(out)
        return self._faces

    def simplices(self) -> list[int]:
        """Every nonempty simplex, sorted by dimension then canonically."""
        faces = self.faces()
        if faces is None:
            out: set[int] = set()
            for f in self.facet_masks:
                sub = f
                while sub:
                    out.add(sub)
                    sub = (sub - 1) & f
            faces = frozenset(out)
        return sorted((m for m in faces if m), key=lambda m: (m.bit_count(), _mask_key(m)))

    def subcomplex(self, masks: Iterable[int]) -> "Complex":
        """The subcomplex generated by ``masks`` (masks over this complex's vertices)."""
        masks = list(masks)
        support = 0
        for m in masks:
            support |= m
        return self.induce_masks(support, masks)

    def induce_masks(self, support: int, masks: Iterable[int]) -> "Complex":
        keep = list(bits(support))
        remap = {old: new for new, old in enumerate(keep)}
        new_masks = []
        for m in masks:
            nm = 0
            for b in bits(m):
                nm |= 1 << remap[b]
            new_masks.append(nm)
        return Complex([self.vertices[i] for i in keep], new_masks)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def components(self) -> list[int]:
        """Vertex masks of the connected components, canonically ordered."""
        comps: list[int] = []
        for f in self.facet_masks:
            merged = f
            rest = []
            for c in comps:
                if c & merged:
                    merged |= c
                else:
                    rest.append(c)
            comps = rest + [merged]
        return sorted(comps, key=lambda m: (m & -m))

    def is_subcomplex_of(self, other: "Complex") -> bool:
        if not set(self.vertices) <= set(other.vertices):
            return False
        return all(other.has_mask(other.mask(self.labels(f))) for f in self.facet_masks)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.vertices == other.vertices and self.facet_masks == other.facet_masks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        shown = " ".join("".join(f) if all(len(v) == 1 for v in f) else "{" + ",".join(f) + "}"
                         for f in self.facets[:8])
        more = "" if self.n_facets <= 8 else f" ... (+{self.n_facets - 8})"
        return f"Complex(n_vertices={self.n_vertices}, facets=[{shown}{more}])"


@dataclass(frozen=True)
class CollapseStep:
    """One elementary strong collapse: ``removed`` was dominated by ``dominator``."""

    removed: str
    dominator: str


def from_facets(facet_lists: Iterable[Iterable[str]]) -> Complex:
    """Build the complex generated by the given simplices.

    >>> from_facets([["a", "b"], ["a", "b", "c"]]).facets
    (('a', 'b', 'c'),)
    """
    simplices = []
    for raw in facet_lists:
        if isinstance(raw, str):
            raise ComplexError("each simplex must be a list of labels, not a string")
        simplex = [_check_label(v) for v in raw]
        if not simplex:
            raise ComplexError("empty simplex in facet list")
        simplices.append(simplex)
    if not simplices:
        raise ComplexError("the empty complex is not allowed")
    verts = sorted({v for s in simplices for v in s})
    index = {v: i for i, v in enumerate(verts)}
    masks = []
    for s in simplices:
        m = 0
        for v in s:
            m |= 1 << index[v]
        masks.append(m)
    return Complex(verts, masks)


def _vertex_index(K: Complex, v: str) -> int:
    try:
        return K.index[v]
    except KeyError:
        raise ComplexError(f"{v!r} is not a vertex of the complex") from None


def is_simplex(K: Complex, simplex: Iterable[str]) -> bool:
    labels = set(simplex)
    if not labels or not labels <= K.index.keys():
        return False
    return K.has_mask(K.mask(labels))


def link(K: Complex, v: str) -> Complex | None:
    """Link of ``v``; None when ``v`` is isolated (its link is empty)."""
    i = _vertex_index(K, v)
    bit = 1 << i
    masks = [f & ~bit for f in K.vertex_facets(i)]
    if not any(masks):
        return None
    return K.subcomplex(m for m in masks if m)


def star(K: Complex, v: str) -> Complex:
    i = _vertex_index(K, v)
    return K.subcomplex(K.vertex_facets(i))


def dominated_by(K: Complex, v: str, w: str) -> bool:
    if v == w:
        raise ComplexError("a vertex is not compared with itself")
    i, j = _vertex_index(K, v), _vertex_index(K, w)
    return all(f >> j & 1 for f in K.vertex_facets(i))


def _dominators(K: Complex, i: int) -> int:
    common = -1
    for f in K.vertex_facets(i):
        common &= f
    return common & ~(1 << i)


def dominated_pairs(K: Complex) -> list[tuple[str, str]]:
    """All (dominated, dominator) pairs in canonical order."""
    out = []
    for i in range(K.n_vertices):
        for j in bits(_dominators(K, i)):
            out.append((K.vertices[i], K.vertices[j]))
    return out


def delete_vertex(K: Complex, v: str) -> Complex:
    """Remove the open star of ``v``."""
    i = _vertex_index(K, v)
    bit = 1 << i
    masks = [f & ~bit for f in K.facet_masks]
    return K.induce_masks(((1 << K.n_vertices) - 1) & ~bit, [m for m in masks if m])


def core(
    K: Complex,
    choose: Callable[[list[tuple[str, str]]], tuple[str, str]] | None = None,
) -> tuple[Complex, list[CollapseStep]]:
    """Strong-collapse ``K`` until no vertex is dominated.

    By default the canonically smallest dominated vertex is removed at each
    round, dominated by its canonically smallest dominator.  ``choose`` may
    override that choice; it receives the list of all current
    (dominated, dominator) pairs.
    """
    steps: list[CollapseStep] = []
    while K.n_vertices > 1:
        if choose is None:
            pick = None
            for i in range(K.n_vertices):
                doms = _dominators(K, i)
                if doms:
                    pick = (K.vertices[i], K.vertices[(doms & -doms).bit_length() - 1])
                    break
        else:
            pairs = dominated_pairs(K)
            pick = choose(pairs) if pairs else None
        if pick is None:
            break
        K = delete_vertex(K, pick[0])
        steps.append(CollapseStep(*pick))
    return K, steps


def is_strongly_collapsible(K: Complex) -> bool:
    return core(K)[0].n_vertices == 1


def _profile(K: Complex, i: int) -> tuple[int, ...]:
    return tuple(sorted(f.bit_count() for f in K.vertex_facets(i)))


def isomorphic(K: Complex, L: Complex) -> dict[str, str] | None:
    """A vertex bijection carrying the facets of ``K`` onto those of ``L``, or None.

    Exact backtracking; vertices of ``K`` are assigned in canonical order and
    candidates in ``L`` are tried in canonical order, so the returned witness
    is the canonically first one.
    """
    n = K.n_vertices
    if n != L.n_vertices or K.n_facets != L.n_facets:
        return None
    if sorted(f.bit_count() for f in K.facet_masks) != sorted(f.bit_count() for f in L.facet_masks):
        return None
    pk = [_profile(K, i) for i in range(n)]
    pl = [_profile(L, i) for i in range(n)]
    if sorted(pk) != sorted(pl):
        return None
    adj_k = [0] * n
    adj_l = [0] * n
    for M, adj in ((K, adj_k), (L, adj_l)):
        for f in M.facet_masks:
            for b in bits(f):
                adj[b] |= f & ~(1 << b)
    l_facets = set(L.facet_masks)
    # facets of K that become fully assigned once vertex i is placed
    done_at: list[list[int]] = [[] for _ in range(n)]
    for f in K.facet_masks:
        done_at[f.bit_length() - 1].append(f)
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        for c in range(n):
            if used >> c & 1 or pl[c] != pk[i]:
                continue
            ok = True
            for j in range(i):
                if (adj_k[i] >> j & 1) != (adj_l[c] >> image[j] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[i] = c
            for f in done_at[i]:
                m = 0
                for b in bits(f):
                    m |= 1 << image[b]
                if m not in l_facets:
                    ok = False
                    break
            if ok:
                used |= 1 << c
                if extend(i + 1):
                    return True
                used &= ~(1 << c)
            image[i] = -1
        return False

    if not extend(0):
        return None
    return {K.vertices[i]: L.vertices[image[i]] for i in range(n)}


def strong_homotopy_equivalent(K: Complex, L: Complex) -> bool:
    return isomorphic(core(K)[0], core(L)[0]) is not None


def _collapse_moves(facets: frozenset[int]) -> Iterator[frozenset[int]]:
    """All complexes reachable by one elementary (simple) collapse."""
    flist = sorted(facets, key=_mask_key)
    for sigma in flist:
        if sigma.bit_count() < 2:
            continue
        for b in bits(sigma):
            tau = sigma & ~(1 << b)
            if any(f != sigma and f & tau == tau for f in flist):
                continue
            rest = [f for f in flist if f != sigma]
            new = list(rest)
            for c in bits(sigma):
                face = sigma & ~(1 << c)
                if face == tau or not face:
                    continue
                if not any(f & face == face for f in rest):
                    new.append(face)
            yield frozenset(maximalize(new))


def is_collapsible(K: Complex) -> bool:
    """True iff ``K`` collapses to a vertex through elementary simple collapses.

    Depth-first search over collapse sequences; complexes already shown to be
    dead ends are memoized.
    """
    if K.n_vertices == 1:
        return True
    if K.dim <= 1:
        # a graph collapses iff it is a tree
        return K.is_connected() and sum(1 for f in K.facet_masks if f.bit_count() == 2) == K.n_vertices - 1
    dead: set[frozenset[int]] = set()

    def search(state: frozenset[int]) -> bool:
        if len(state) == 1 and next(iter(state)).bit_count() == 1:
            return True
        if state in dead:
            return False
        for nxt in _collapse_moves(state):
            if nxt not in dead and search(nxt):
                return True
        dead.add(state)
        return False

    return search(frozenset(K.facet_masks))


def all_subsets(mask: int, size: int) -> Iterator[int]:
    for combo in combinations(list(bits(mask)), size):
        m = 0
        for b in combo:
            m |= 1 << b
        yield m
