import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from scatkit.complex import ComplexError, core, from_facets
from scatkit.fixtures import boundary_triangle, complete_graph, minimal_fixtures, mother
from scatkit.maps import (
    ContiguityChain,
    VertexMap,
    compose,
    constant,
    contiguity_class_reachable,
    contiguity_component,
    contiguous_neighbors,
    has_contiguity_extension,
    identity,
    in_same_contiguity_class,
    inclusion,
    is_contiguous,
    is_simplicial,
    restrict,
    simplicial_maps,
    validate_chain,
)
from strategies import complexes, simplicial_pairs, vertex_maps

BD = boundary_triangle()
D2 = from_facets([["a", "b", "c"]])


def _as_dict(f: VertexMap) -> dict:
    return f.assignment


def test_is_simplicial_examples():
    assert is_simplicial(identity(BD))
    # a->a, b->b, c->a sends every edge to a simplex
    assert is_simplicial(VertexMap.from_assignment(BD, BD, {"a": "a", "b": "b", "c": "a"}))
    assert not is_simplicial(VertexMap.from_assignment(D2, BD, {"a": "a", "b": "b", "c": "c"}))


def test_vertex_map_must_be_total():
    with pytest.raises(ComplexError):
        VertexMap.from_assignment(BD, BD, {"a": "a"})
    with pytest.raises(ComplexError):
        VertexMap.from_assignment(BD, BD, {"a": "a", "b": "b", "c": "zz"})


@given(vertex_maps())
def test_is_simplicial_matches_all_faces(f):
    assert is_simplicial(f) == oracles.is_simplicial(_as_dict(f), f.source.facets, f.target.facets)


def test_contiguity_examples():
    rot = VertexMap.from_assignment(BD, BD, {"a": "b", "b": "c", "c": "a"})
    assert is_contiguous(identity(BD), identity(BD))
    assert not is_contiguous(identity(BD), rot)
    P = from_facets([["a", "b"], ["c"]])
    assert is_contiguous(constant(BD, P, "a"), constant(BD, P, "b"))
    assert not is_contiguous(constant(BD, P, "a"), constant(BD, P, "c"))


def test_contiguity_errors():
    with pytest.raises(ComplexError):
        is_contiguous(identity(BD), identity(D2))
    bad = VertexMap.from_assignment(D2, BD, {"a": "a", "b": "b", "c": "c"})
    with pytest.raises(ComplexError):
        is_contiguous(bad, bad)


@settings(max_examples=150)
@given(st.data())
def test_facet_condition_equals_face_condition(data):
    phi, _ = data.draw(simplicial_pairs())
    psi = data.draw(st.sampled_from(simplicial_maps(phi.source, phi.target)))
    expect = oracles.is_contiguous(_as_dict(phi), _as_dict(psi), phi.source.facets, phi.target.facets)
    assert is_contiguous(phi, psi) == expect
    assert is_contiguous(psi, phi) == expect


@given(simplicial_pairs())
def test_neighbors_are_exactly_contiguous_maps(pair):
    phi, _ = pair
    nbrs = {g.images for g in contiguous_neighbors(phi)}
    brute = {g.images for g in simplicial_maps(phi.source, phi.target) if is_contiguous(phi, g)}
    assert nbrs == brute


@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=4, max_facets=3))
def test_simplicial_maps_match_enumeration(K, L):
    got = {tuple(sorted(f.assignment.items())) for f in simplicial_maps(K, L)}
    want = {tuple(sorted(m.items())) for m in oracles.simplicial_maps(K.facets, L.facets)}
    assert got == want


# -- class search -------------------------------------------------------------------------

def test_identity_of_minimal_complex_is_alone():
    for K in minimal_fixtures().values():
        d = contiguity_class_reachable(identity(K), lambda f: f.is_constant(), 10**6)
        assert d.no
        assert d.info["component"] == [identity(K).images]


def test_simplex_identity_reaches_a_constant():
    d = contiguity_class_reachable(identity(D2), lambda f: f.is_constant(), 100)
    assert d.yes and len(d.witness) >= 2
    assert validate_chain(d.witness) and d.witness.end.is_constant()


def test_goal_already_reached():
    c = constant(BD, BD, "a")
    d = contiguity_class_reachable(c, [c], 10)
    assert d.yes and d.witness.maps == (c,)


def test_budget_zero_rejected():
    with pytest.raises(ValueError):
        contiguity_class_reachable(identity(BD), [identity(BD)], 0)


def test_budget_exhaustion_is_unknown():
    # the identity of a path reaches a constant, but not within one visited map
    P = from_facets([["a", "b"], ["b", "c"], ["c", "d"]])
    d = contiguity_class_reachable(identity(P), lambda f: f.is_constant(), 1)
    assert d.unknown and d.visited == 1


def test_same_class_examples():
    assert in_same_contiguity_class(identity(BD), identity(BD), 10).yes
    assert in_same_contiguity_class(identity(BD), constant(BD, BD, "a"), 10**6).no
    f = identity(D2)
    g = constant(D2, D2, "a")
    d = in_same_contiguity_class(f, g, 10)
    assert d.yes and len(d.witness) == 2


@settings(max_examples=40, deadline=None)
@given(complexes(max_vertices=4, max_facets=3), complexes(max_vertices=4, max_facets=3), st.data())
def test_class_decisions_match_exhaustive_classes(K, L, data):
    maps = simplicial_maps(K, L)
    f = data.draw(st.sampled_from(maps))
    g = data.draw(st.sampled_from(maps))
    d = in_same_contiguity_class(f, g, 10**6)
    assert not d.unknown
    assert d.yes == oracles.same_class(_as_dict(f), _as_dict(g), K.facets, L.facets)
    if d.yes:
        assert validate_chain(d.witness) and d.witness.start == f and d.witness.end == g


@pytest.mark.parametrize("facets", [
    [["a", "b"], ["b", "c"], ["a", "c"]],
    [["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]],
    [["a", "b"], ["b", "c"], ["c", "d"], ["d", "e"], ["a", "e"]],
    [["a", "b", "c"], ["c", "d"], ["d", "e"], ["c", "e"]],
])
def test_no_answers_on_five_vertices_confirmed_by_enumeration(facets):
    K = from_facets(facets)
    d = contiguity_component(identity(K), 10**6)
    assert d.no
    comp = set(d.info["component"])
    # the component found must be a full class of the brute-force partition
    classes = oracles.contiguity_classes(K.facets, K.facets)
    ident = tuple(sorted(identity(K).assignment.items()))
    want = next(c for c in classes if ident in c)
    got = {tuple(sorted(zip(K.vertices, (K.vertices[i] for i in imgs)))) for imgs in comp}
    assert got == want


# -- restriction and composition ---------------------------------------------------------------

def test_restrict_identity_is_inclusion():
    U = from_facets([["a", "b"]])
    assert restrict(identity(BD), U) == inclusion(U, BD)
    with pytest.raises(ComplexError):
        restrict(identity(BD), from_facets([["a", "b", "c"]]))


def test_compose_with_constant():
    f = VertexMap.from_assignment(BD, BD, {"a": "b", "b": "c", "c": "a"})
    assert compose(constant(BD, BD, "a"), f) == constant(BD, BD, "a")
    with pytest.raises(ComplexError):
        compose(identity(D2), identity(BD))


@given(simplicial_pairs(), st.data())
def test_restriction_preserves_contiguity(pair, data):
    phi, psi = pair
    K = phi.source
    keep = data.draw(st.lists(st.sampled_from(K.facet_masks), min_size=1, unique=True))
    U = K.subcomplex(keep)
    assert is_contiguous(restrict(phi, U), restrict(psi, U))


@given(simplicial_pairs(), st.data())
def test_restriction_to_full_subcomplex_stays_contiguous(pair, data):
    phi, psi = pair
    K, L = phi.source, phi.target
    keep = data.draw(st.lists(st.sampled_from(K.facet_masks), min_size=1, unique=True))
    U = K.subcomplex(keep)
    support = 0
    for v in U.vertices:
        support |= 1 << phi.images[K.index[v]] | 1 << psi.images[K.index[v]]
    # full subcomplex of L spanned by the images
    Lf = L.induce_masks(support, [f & support for f in L.facet_masks if f & support])
    a = VertexMap(U, Lf, tuple(Lf.index[phi(v)] for v in U.vertices))
    b = VertexMap(U, Lf, tuple(Lf.index[psi(v)] for v in U.vertices))
    assert is_contiguous(a, b)


@given(simplicial_pairs(), simplicial_pairs())
def test_composition_of_simplicial_maps_is_simplicial(p, q):
    f, g = p[0], q[0]
    assume(f.target == g.source)
    assert is_simplicial(compose(g, f))


# -- chains ------------------------------------------------------------------------------------

def test_chain_validation_rejects_gaps():
    rot = VertexMap.from_assignment(BD, BD, {"a": "b", "b": "c", "c": "a"})
    assert not validate_chain(ContiguityChain((identity(BD), rot)))
    assert validate_chain(ContiguityChain((identity(BD),)))
    with pytest.raises(ValueError):
        ContiguityChain(())


# -- extension property -------------------------------------------------------------------------

def test_extension_trivial_when_subcomplex_is_everything():
    phi = identity(D2)
    psi = constant(D2, D2, "a")
    d = has_contiguity_extension(D2, D2, phi, psi, phi, 100)
    assert d.yes
    ext, chain = d.witness
    assert ext == psi and validate_chain(chain)


def test_extension_fails_for_triangle_minus_edge():
    L = from_facets([["a", "b"], ["a", "c"]])
    d = has_contiguity_extension(BD, L, inclusion(L, BD), constant(L, BD, "a"), identity(BD), 10**6)
    assert d.no


def test_extension_fails_for_collapsible_fixture_minus_a_triangle():
    K = mother()
    # drop a triangle whose complement is strongly collapsible
    for sigma in K.facet_masks:
        L = K.subcomplex([f for f in K.facet_masks if f != sigma])
        if core(L)[0].n_vertices == 1:
            break
    else:
        pytest.fail("no facet with strongly collapsible complement")
    v = core(L)[0].vertices[0]
    d = has_contiguity_extension(K, L, inclusion(L, K), constant(L, K, v), identity(K), 10**6)
    assert d.no


def test_core_inclusion_extends():
    K = from_facets([["a", "b"], ["b", "c"], ["a", "c"], ["c", "d"]])
    K0, _ = core(K)
    i0 = inclusion(K0, K)
    # phi = psi = the inclusion; any phi_ext restricting to it works
    d = has_contiguity_extension(K, K0, i0, i0, identity(K), 10**6)
    assert d.yes


def test_extension_rejects_wrong_restriction():
    L = from_facets([["a", "b"], ["a", "c"]])
    with pytest.raises(ComplexError):
        has_contiguity_extension(BD, L, inclusion(L, BD), constant(L, BD, "a"),
                                 constant(BD, BD, "b"), 100)


def test_extension_precondition_checked():
    # identity and a constant on the hollow triangle are not in one class
    with pytest.raises(ComplexError):
        has_contiguity_extension(BD, BD, identity(BD), constant(BD, BD, "a"), identity(BD), 10**6)


def test_k5_identity_class():
    K = complete_graph(5)
    d = contiguity_component(identity(K), 10**6)
    assert d.no and len(d.info["component"]) == 1


@given(complexes(max_vertices=5, max_facets=4), complexes(max_vertices=5, max_facets=4), st.data())
def test_constants_contiguous_iff_vertices_share_a_simplex(K, L, data):
    u = data.draw(st.sampled_from(L.vertices))
    v = data.draw(st.sampled_from(L.vertices))
    want = frozenset((u, v)) in oracles.faces(L.facets)
    assert is_contiguous(constant(K, L, u), constant(K, L, v)) == want
