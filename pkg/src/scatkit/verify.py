"""Reproduction suite run by ``scatkit verify``.

Every check returns ``(ok, detail)``; :func:`run_checks` times it against
its limit.  A check passes only if it is correct and inside the limit.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .category import clear_memo, gscat, is_categorical, scat, validate_cover, wscat_le
from .complex import Complex, core, from_facets, is_collapsible, is_strongly_collapsible, isomorphic
from .constructions import cone, product, sd, sd_contiguity_chain, suspension
from .fixtures import (
    boundary_triangle,
    complete_graph,
    connected_graphs,
    cycle_graph,
    graph_fixtures,
    minimal_fixtures,
    mother,
    path_graph,
    sd_k5,
    simplex,
    star_graph,
)
from .graphs import arboricity, bisect_edges, bisect_off_tree, is_forest, minimal_bisection
from .maps import (
    VertexMap,
    constant,
    contiguity_component,
    contiguous_neighbors,
    has_contiguity_extension,
    identity,
    inclusion,
    simplicial_maps,
    validate_chain,
)

__all__ = ["Check", "CHECKS", "run_checks", "random_complex", "random_contiguous_pair"]


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    limit: float
    func: Callable[[], tuple[bool, str]]


def random_complex(rng: random.Random, max_vertices: int = 4, max_facets: int = 4) -> Complex:
    """Random complex on at most ``max_vertices`` vertices with at most ``max_facets`` generators."""
    n = rng.randint(1, max_vertices)
    labels = [chr(ord("a") + i) for i in range(n)]
    gens = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, n)
        gens.append(rng.sample(labels, size))
    return from_facets(gens)


def random_contiguous_pair(rng: random.Random, max_vertices: int = 4) -> tuple[VertexMap, VertexMap]:
    K = random_complex(rng, max_vertices)
    L = random_complex(rng, max_vertices)
    phi = rng.choice(simplicial_maps(K, L))
    psi = rng.choice(contiguous_neighbors(phi))
    return phi, psi


def _exact(r, value: int) -> bool:
    return r.exact and r.value == value


# -- individual checks ---------------------------------------------------------------

def check_scat_boundary() -> tuple[bool, str]:
    r = scat(boundary_triangle())
    return _exact(r, 1) and validate_cover(r.witness), f"[{r.lower},{r.upper}]"


def check_cones() -> tuple[bool, str]:
    out = []
    ok = True
    for name, K in [("bd", boundary_triangle()), ("C5", cycle_graph(5)), ("K4", complete_graph(4))]:
        r = scat(cone(K))
        ok &= _exact(r, 0)
        out.append(f"{name}:{r.lower}")
    return ok, " ".join(out)


def check_suspension() -> tuple[bool, str]:
    r = scat(suspension(boundary_triangle()), 10**6, shortcut=False)
    return _exact(r, 1) and validate_cover(r.witness, budget=10**6), f"[{r.lower},{r.upper}]"


def check_arboricity_complete() -> tuple[bool, str]:
    want = {4: 2, 5: 3, 6: 3, 7: 4}
    got = {n: arboricity(complete_graph(n))[0] for n in want}
    return got == want, str(got)


def check_k5_subdivision() -> tuple[bool, str]:
    vals = []
    for fast in (True, False):
        vals.append((scat(complete_graph(5), fast_path=fast), scat(sd_k5(), fast_path=fast)))
    ok = all(_exact(a, 2) and _exact(b, 1) for a, b in vals)
    return ok, " ".join(f"K5={a.lower} sdK5={b.lower}" for a, b in vals)


def check_gscat() -> tuple[bool, str]:
    g5, gs = gscat(complete_graph(5)), gscat(sd_k5())
    ups = arboricity(complete_graph(5))[0]
    ok = (_exact(g5, 2) and g5.value == ups - 1 and _exact(gs, 1)
          and validate_cover(g5.witness, "gscat") and validate_cover(gs.witness, "gscat"))
    return ok, f"gscat K5={g5.lower} gscat sdK5={gs.lower}"


def check_core_minimal() -> tuple[bool, str]:
    bd = boundary_triangle()
    sbd = sd(bd)
    c1, s1 = core(bd)
    c2, s2 = core(sbd)
    ok = c1 == bd and c2 == sbd and not s1 and not s2 and isomorphic(bd, sbd) is None
    return ok, f"steps {len(s1)},{len(s2)}"


def check_identity_component() -> tuple[bool, str]:
    sizes = {}
    ok = True
    for name, K in minimal_fixtures().items():
        d = contiguity_component(identity(K), 10**6)
        sizes[name] = len(d.info.get("component", ())) if d.no else d.status
        ok &= d.no and sizes[name] == 1
    return ok, str(sizes)


def check_sd_chains(n: int = 200, seed: int = 11) -> tuple[bool, str]:
    rng = random.Random(seed)
    good = 0
    from .constructions import sd_map

    for _ in range(n):
        phi, psi = random_contiguous_pair(rng)
        chain = sd_contiguity_chain(phi, psi)
        if validate_chain(chain) and chain.start == sd_map(phi) and chain.end == sd_map(psi):
            good += 1
    return good == n, f"{good}/{n}"


def check_sd_monotone(n: int = 50, seed: int = 5) -> tuple[bool, str]:
    rng = random.Random(seed)
    cases = list(graph_fixtures().values()) + [random_complex(rng) for _ in range(n)]
    violations = 0
    for K in cases:
        a, b = scat(sd(K)), scat(K)
        if a.lower > b.upper:
            violations += 1
    return violations == 0, f"{len(cases)} complexes, {violations} violations"


def check_product() -> tuple[bool, str]:
    d1 = simplex(1)
    iso = isomorphic(product(d1, d1), simplex(3)) is not None
    p = scat(product(boundary_triangle(), d1), 10**6)
    a, b = scat(boundary_triangle()), scat(d1)
    rhs_low = (a.lower + 1) * (b.lower + 1)
    ok = iso and p.upper + 1 <= rhs_low and rhs_low == 2
    return ok, f"iso={iso} scat(prod)=[{p.lower},{p.upper}] rhs={rhs_low}"


def check_wscat() -> tuple[bool, str]:
    d1 = simplex(1)
    bd = boundary_triangle()
    r = [wscat_le(d1, "v0", 0, 10**6), wscat_le(bd, "a", 0, 10**6), wscat_le(bd, "a", 1, 10**6)]
    ok = r[0].yes and r[1].no and r[2].no
    return ok, " ".join(d.status for d in r)


def check_extension() -> tuple[bool, str]:
    K = boundary_triangle()
    L = from_facets([["a", "b"], ["a", "c"]])
    phi = inclusion(L, K)
    psi = constant(L, K, "a")
    d = has_contiguity_extension(K, L, phi, psi, identity(K), 10**6)
    return d.no, d.status


def check_forest_equivalence(max_edges: int = 6) -> tuple[bool, str]:
    total = agree = 0
    for G in connected_graphs(max_edges):
        fm = G.facet_masks
        for r in range(1, len(fm) + 1):
            for U in combinations(fm, r):
                d = is_categorical(G, U, 10**6, fast_path=False, shortcut=False, reduce=False)
                total += 1
                if not d.unknown and d.yes == is_forest(G, [G.labels(m) for m in U]):
                    agree += 1
    return agree == total, f"{agree}/{total}"


def check_bisection(limits: tuple[float, float] = (10, 30)) -> tuple[bool, str]:
    """Off-tree bisections, then a 3-edge bisection of K5; each part has its own time limit."""
    ok = True
    out = []
    t0 = time.perf_counter()
    for name, G, want in [("C3", cycle_graph(3), 1), ("K4", complete_graph(4), 1), ("K5", complete_graph(5), 1),
                          ("P4", path_graph(4), 0), ("star3", star_graph(3), 0)]:
        r = scat(bisect_off_tree(G).to_complex())
        ok &= _exact(r, want)
        out.append(f"{name}:{r.lower}")
    t1 = time.perf_counter()
    cut = minimal_bisection(complete_graph(5), 3)
    if cut is None:
        return False, "no 3-edge bisection of K5 found"
    r = scat(bisect_edges(complete_graph(5), cut).to_complex())
    ok &= _exact(r, 1)
    t2 = time.perf_counter()
    ok &= t1 - t0 <= limits[0] and t2 - t1 <= limits[1]
    out.append(f"K5 cut {cut} ({t1 - t0:.2f}s, {t2 - t1:.2f}s)")
    return ok, " ".join(out)


def check_mother() -> tuple[bool, str]:
    K = mother()
    c, steps = core(K)
    r = scat(K)
    ok = is_collapsible(K) and c == K and not steps and not is_strongly_collapsible(K) and _exact(r, 1)
    return ok, f"{K.n_vertices} vertices, {K.n_facets} facets, scat=[{r.lower},{r.upper}]"


CHECKS: list[Check] = [
    Check(1, "scat of the hollow triangle is 1", 1, check_scat_boundary),
    Check(2, "cones are strongly collapsible (scat 0)", 5, check_cones),
    Check(3, "suspension of the hollow triangle has scat 1", 30, check_suspension),
    Check(4, "arboricity of K4..K7", 10, check_arboricity_complete),
    Check(5, "scat K5 = 2 and scat sd K5 = 1, both engines", 60, check_k5_subdivision),
    Check(6, "gscat K5 = 2 and gscat sd K5 = 1", 30, check_gscat),
    Check(7, "minimal cores of hollow triangle and its subdivision", 1, check_core_minimal),
    Check(8, "identity class of a minimal complex is a singleton", 30, check_identity_component),
    Check(9, "subdivided contiguous pairs are joined by a valid chain", 60, check_sd_chains),
    Check(10, "scat does not increase under subdivision", 120, check_sd_monotone),
    Check(11, "product of edges is a 3-simplex; product bound", 30, check_product),
    Check(12, "wscat decisions for an edge and the hollow triangle", 60, check_wscat),
    Check(13, "contiguity extension fails for an edge removed from a triangle", 10, check_extension),
    Check(14, "categorical subgraphs are exactly forests", 120, check_forest_equivalence),
    Check(15, "bisecting off-tree edges gives scat 1", 40, check_bisection),
    Check(16, "collapsible complex that is its own core has scat 1", 120, check_mother),
]


def run_checks(numbers: list[int] | None = None) -> list[dict]:
    out = []
    for chk in CHECKS:
        if numbers is not None and chk.number not in numbers:
            continue
        clear_memo()
        t0 = time.perf_counter()
        try:
            ok, detail = chk.func()
        except Exception as exc:  # a crash is a failure, reported like one
            ok, detail = False, f"error: {exc!r}"
        dt = time.perf_counter() - t0
        out.append({
            "number": chk.number,
            "name": chk.name,
            "passed": bool(ok) and dt <= chk.limit,
            "correct": bool(ok),
            "seconds": round(dt, 3),
            "limit": chk.limit,
            "detail": detail,
        })
    return out
