"""Hypothesis strategies for small complexes and maps."""
from __future__ import annotations

from hypothesis import strategies as st

from scatkit.complex import from_facets
from scatkit.maps import VertexMap, contiguous_neighbors, simplicial_maps

LETTERS = "abcdef"


@st.composite
def facet_lists(draw, max_vertices: int = 5, max_facets: int = 5):
    n = draw(st.integers(1, max_vertices))
    labels = list(LETTERS[:n])
    gens = draw(st.lists(st.sets(st.sampled_from(labels), min_size=1), min_size=1, max_size=max_facets))
    return [sorted(g) for g in gens]


@st.composite
def complexes(draw, max_vertices: int = 5, max_facets: int = 5):
    return from_facets(draw(facet_lists(max_vertices, max_facets)))


@st.composite
def simplicial_pairs(draw, max_vertices: int = 4):
    """A simplicial map and a directly contiguous partner."""
    K = draw(complexes(max_vertices, 4))
    L = draw(complexes(max_vertices, 4))
    maps = simplicial_maps(K, L)
    phi = draw(st.sampled_from(maps))
    psi = draw(st.sampled_from(contiguous_neighbors(phi)))
    return phi, psi


@st.composite
def vertex_maps(draw, max_vertices: int = 4):
    """An arbitrary (not necessarily simplicial) vertex map."""
    K = draw(complexes(max_vertices, 4))
    L = draw(complexes(max_vertices, 4))
    images = draw(st.lists(st.integers(0, L.n_vertices - 1), min_size=K.n_vertices, max_size=K.n_vertices))
    return VertexMap(K, L, tuple(images))
