import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from scatkit.complex import (
    CollapseStep,
    Complex,
    ComplexError,
    core,
    delete_vertex,
    dominated_by,
    dominated_pairs,
    from_facets,
    is_collapsible,
    is_simplex,
    is_strongly_collapsible,
    isomorphic,
    link,
    star,
    strong_homotopy_equivalent,
)
from scatkit.constructions import cone, sd
from scatkit.fixtures import boundary_triangle, complete_graph, cycle_graph, mother, simplex
from strategies import complexes, facet_lists

D2 = from_facets([["a", "b", "c"]])
BD = boundary_triangle()


# -- construction -----------------------------------------------------------------------

def test_single_simplex():
    assert D2.facets == (("a", "b", "c"),)
    assert D2.n_vertices == 3 and D2.dim == 2


def test_hollow_triangle_has_three_facets():
    assert BD.n_facets == 3 and BD.n_vertices == 3


def test_absorption():
    K = from_facets([["a", "b"], ["a", "b", "c"]])
    assert K.facets == (("a", "b", "c"),)


def test_duplicate_labels_in_simplex_are_merged():
    assert from_facets([["a", "a", "b"]]).facets == (("a", "b"),)


@pytest.mark.parametrize("bad", [[], [[]], [["a b"]], [[""]], [[1, 2]], ["ab"]])
def test_bad_inputs_rejected(bad):
    with pytest.raises(ComplexError):
        from_facets(bad)


def test_phantom_vertex_rejected():
    with pytest.raises(ComplexError):
        Complex(["a", "b"], [0b01])


@given(facet_lists())
def test_facets_form_an_antichain(gens):
    K = from_facets(gens)
    masks = K.facet_masks
    assert not any(a != b and a & b == a for a in masks for b in masks)
    assert set(map(frozenset, K.facets)) == oracles.maximal(gens)


@given(facet_lists(), st.sets(st.sampled_from("abcdefg"), min_size=1, max_size=4))
def test_is_simplex_matches_face_enumeration(gens, sigma):
    K = from_facets(gens)
    assert is_simplex(K, sigma) == (frozenset(sigma) in oracles.faces(gens))


# -- simplex queries ----------------------------------------------------------------------

def test_is_simplex_examples():
    assert not is_simplex(BD, ["a", "b", "c"])
    assert is_simplex(D2, ["a", "c"])
    assert not is_simplex(BD, ["a", "d"])


def test_link_and_star():
    assert link(BD, "a").facets == (("b",), ("c",))
    assert link(D2, "a").facets == (("b", "c"),)
    assert star(D2, "a") == D2
    assert link(from_facets([["a"], ["b", "c"]]), "a") is None
    with pytest.raises(ComplexError):
        star(BD, "z")


def test_dominated_by_examples():
    assert dominated_by(D2, "a", "b")
    assert not dominated_by(BD, "a", "b")
    assert dominated_by(from_facets([["a", "b"], ["a", "c"]]), "b", "a")
    with pytest.raises(ComplexError):
        dominated_by(D2, "a", "a")
    with pytest.raises(ComplexError):
        dominated_by(D2, "a", "q")


# -- cores --------------------------------------------------------------------------------

def test_core_of_simplex_is_a_point():
    K0, steps = core(D2)
    assert K0.n_vertices == 1 and len(steps) == 2
    # canonical rule: least dominated vertex, least dominator
    assert steps == [CollapseStep("a", "b"), CollapseStep("b", "c")]


def test_minimal_complexes_are_their_own_core():
    for K in (BD, sd(BD)):
        K0, steps = core(K)
        assert K0 == K and steps == []


def test_strong_collapsibility_examples():
    assert is_strongly_collapsible(cone(BD))
    assert is_strongly_collapsible(cone(complete_graph(4)))
    assert not is_strongly_collapsible(BD)
    assert is_strongly_collapsible(from_facets([["x"]]))


@given(complexes(max_vertices=6, max_facets=6))
def test_core_is_idempotent(K):
    K0, _ = core(K)
    assert core(K0)[1] == []
    assert not dominated_pairs(K0) or K0.n_vertices == 1


@given(complexes(max_vertices=6, max_facets=6), st.randoms(use_true_random=False))
def test_core_unique_up_to_isomorphism(K, rnd):
    K1, _ = core(K)
    K2, _ = core(K, choose=lambda pairs: rnd.choice(pairs))
    assert isomorphic(K1, K2) is not None


@given(complexes(max_vertices=6, max_facets=6))
def test_collapse_log_replays(K):
    _, steps = core(K)
    cur = K
    for st_ in steps:
        assert dominated_by(cur, st_.removed, st_.dominator)
        cur = delete_vertex(cur, st_.removed)
    assert cur == core(K)[0]


# -- isomorphism ---------------------------------------------------------------------------

def test_isomorphism_examples():
    relabeled = from_facets([["x", "y"], ["y", "z"], ["x", "z"]])
    assert isomorphic(BD, relabeled) is not None
    assert isomorphic(BD, sd(BD)) is None
    assert isomorphic(simplex(1), simplex(2)) is None
    assert isomorphic(sd(BD), cycle_graph(6)) is not None


@given(complexes(max_vertices=6, max_facets=6), st.randoms(use_true_random=False))
def test_isomorphic_finds_a_valid_bijection_after_relabeling(K, rnd):
    names = [f"q{i}" for i in range(K.n_vertices)]
    rnd.shuffle(names)
    ren = dict(zip(K.vertices, names))
    L = from_facets([[ren[v] for v in f] for f in K.facets])
    iso = isomorphic(K, L)
    assert iso is not None
    assert {frozenset(iso[v] for v in f) for f in K.facets} == {frozenset(f) for f in L.facets}


def test_strong_homotopy_equivalence():
    assert strong_homotopy_equivalent(D2, from_facets([["p"]]))
    assert not strong_homotopy_equivalent(BD, sd(BD))


@given(complexes(max_vertices=6, max_facets=6))
def test_complex_equivalent_to_its_core(K):
    assert strong_homotopy_equivalent(K, core(K)[0])


# -- simple collapsibility ------------------------------------------------------------------

def _collapsible_oracle(facets) -> bool:
    """Search over all face sets: remove a free face together with its unique coface."""
    start = frozenset(oracles.faces(facets))
    seen = set()
    stack = [start]
    while stack:
        S = stack.pop()
        if len(S) == 1:
            return True
        if S in seen:
            continue
        seen.add(S)
        for tau in S:
            cofaces = [s for s in S if tau < s]
            if len(cofaces) == 1 and len(cofaces[0]) == len(tau) + 1:
                stack.append(S - {tau, cofaces[0]})
    return False


def test_collapsibility_examples():
    assert is_collapsible(D2)
    assert not is_collapsible(BD)
    K = mother()
    assert is_collapsible(K) and not is_strongly_collapsible(K)


@settings(max_examples=60)
@given(complexes(max_vertices=5, max_facets=4))
def test_collapsibility_matches_face_search(K):
    assert is_collapsible(K) == _collapsible_oracle(K.facets)


@given(complexes(max_vertices=6, max_facets=5))
def test_strong_collapsible_implies_collapsible(K):
    if is_strongly_collapsible(K):
        assert is_collapsible(K)


def test_mother_fixture_is_reproducible_by_search():
    from scatkit.fixtures import search_mother

    assert search_mother(1) == mother()
    rng = random.Random(3)
    K = search_mother(rng.randint(0, 50))
    assert K is not None and is_collapsible(K) and not dominated_pairs(K)
