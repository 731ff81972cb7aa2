"""Catalog loading, dimension-raising moves, base discovery, the constructor."""
from __future__ import annotations

import pytest

from anticollapse.collapse import (
    Matching,
    certificate_matching,
    core_erosion,
    free_faces,
    replay,
    search_collapse,
    verify_matching_acyclic,
)
from anticollapse.complexes import SimplicialComplex, from_facets
from anticollapse.constructions import (
    Refusal,
    admissible,
    catalog,
    double_cone,
    double_cone_labels,
    find_base_case,
    find_dim3_base,
    lift_matching,
    load_base_case,
    stacking_move,
    theorem2_construct,
)
from anticollapse.duality import alexander_dual
from anticollapse.errors import InputError, SearchBudgetExceeded
from anticollapse.homology import homology

from conftest import random_complex, rp2


# -- catalog -----------------------------------------------------------


def test_catalog_y28_census():
    entry = catalog("Y28_2")
    assert len(entry.facets_listed) == 21
    assert entry.facets_listed[0] == (1, 2, 3)
    assert entry.facets_listed[-1] == (1, 2, 6)
    assert entry.complex.dim == 2
    assert entry.certificate is not None  # a collapse was found and verified


def test_catalog_y38_census():
    entry = catalog("Y38_3")
    assert len(entry.facets_listed) == 35
    assert entry.facets_listed[0] == (4, 6, 7, 8)
    assert entry.complex.n_faces(2) == 56  # complete 2-skeleton


def test_catalog_c38_census():
    entry = catalog("C38_3")
    assert len(entry.facets_listed) == 35
    assert "top-core" in entry.claims and "dual-top-core" in entry.claims


def test_catalog_rejects_unknown():
    with pytest.raises(InputError):
        catalog("Y99_9")


def test_catalog_dual_y28_has_no_free_faces():
    entry = catalog("dual_Y28_2")
    assert entry.complex.dim == 4
    assert free_faces(entry.complex) == []
    assert entry.certificate is not None
    end = replay(entry.complex, entry.certificate)
    assert end.is_simplex()


def test_catalog_dual_y38_expands_but_keeps_free_faces():
    # the bundled 35-facet list admits exactly four expansion moves, so its
    # dual keeps four free pairs while still expanding to the simplex
    entry = catalog("dual_Y38_3")
    assert entry.complex.dim == 3
    assert len(free_faces(entry.complex)) == 4
    assert replay(entry.complex, entry.certificate).is_simplex()


def test_catalog_c38_cores_on_both_sides():
    X = catalog("C38_3").complex
    residue, collapsible = core_erosion(X)
    assert not collapsible and residue.n_faces(3) > 0
    dual = alexander_dual(X)
    residue_d, collapsible_d = core_erosion(dual)
    assert not collapsible_d and residue_d.n_faces(dual.dim) > 0


def test_c38_random_collapses_always_leave_top_critical_cells():
    # a surviving core forces a critical cell in the top dimension no
    # matter how the random collapse run goes
    from anticollapse.collapse import random_discrete_morse

    X = catalog("C38_3").complex
    for seed in range(5):
        vector, _ = random_discrete_morse(X, rng_seed=seed)
        assert vector.counts[3] >= 1


def test_dual_certificate_transport_of_reference_collapse():
    from anticollapse.duality import dual_certificate

    entry = catalog("Y28_2")
    anti = dual_certificate(entry.complex, entry.certificate)
    dual = alexander_dual(entry.complex)
    end = replay(dual, anti)
    assert end.is_simplex()
    assert len(end.ground_set) == 8


# -- double cone ---------------------------------------------------------


def test_double_cone_of_edge_is_triangle():
    X = from_facets([[1, 2]])
    Y = double_cone(X, 1)
    a, b = double_cone_labels(X, 1)
    assert (a, b) == (1, 3)
    assert Y == SimplicialComplex.simplex(3)


def test_double_cone_of_simplex_is_next_simplex():
    for n in range(2, 6):
        X = SimplicialComplex.simplex(n)
        assert double_cone(X, 1) == SimplicialComplex.simplex(n + 1)


def test_double_cone_counts():
    X = rp2()
    Y = double_cone(X, 1)
    assert len(Y.support) == 7
    assert Y.dim == 3


def test_double_cone_homology_shift_rp2():
    Y = double_cone(rp2(), 1)
    profile = homology(Y)
    assert profile.betti == (0, 0, 0, 0)
    assert profile.torsion == ((), (), (2,), ())


def test_double_cone_homology_shift_cycle():
    Y = double_cone(SimplicialComplex.simplex_boundary(3), 2)
    profile = homology(Y)
    assert profile.betti == (0, 0, 1)


def test_double_cone_homology_shift_random(rng):
    for _ in range(10):
        X = random_complex(rng, max_vertices=5)
        if not X.faces_of_dim(0):
            continue
        v = min(X.support)
        before = homology(X)
        after = homology(double_cone(X, v))
        assert after.betti[0] == 0
        for i, b in enumerate(before.betti):
            assert after.betti[i + 1] == b
            assert after.torsion[i + 1] == before.torsion[i]


def test_double_cone_preserves_no_free_faces():
    for name in ("dual_Y28_2",):
        X = catalog(name).complex
        assert free_faces(X) == []
        Y = double_cone(X, min(X.support))
        assert free_faces(Y) == []
    for d in (2, 3):
        X = load_base_case(d).complex
        Y = double_cone(X, min(X.support))
        assert free_faces(Y) == []


# -- matching lift -------------------------------------------------------


def _critical_cells(X, matching: Matching):
    matched = matching.matched_faces()
    return {f for f in X.faces if f and f not in matched}


def test_lift_matching_empty_gives_all_critical():
    X = from_facets([[1, 2], [2, 3]])
    lifted = lift_matching(X, 1, Matching(frozenset()))
    assert len(lifted) == 0


def test_lift_matching_edge_example():
    # collapse the edge to its far vertex, distinguish the near one
    X = from_facets([[1, 2]])
    M = Matching(frozenset({((1,), (1, 2))}))
    lifted = lift_matching(X, 1, M)
    cone = double_cone(X, 1)
    assert verify_matching_acyclic(cone, lifted)
    critical = _critical_cells(cone, lifted)
    # critical cells are exactly the double cone over the critical vertex
    expected = double_cone(from_facets([[2]], ground=X.ground_set), 1)
    assert critical == {f for f in expected.faces if f}


def test_lift_matching_critical_cells_are_double_cone(rng):
    # whenever the critical cells form a subcomplex, their lift is its cone
    done = 0
    while done < 10:
        X = random_complex(rng, max_vertices=5)
        if not X.faces_of_dim(0):
            continue
        cert = search_collapse(X, rng_seed=rng.randrange(1 << 32), restarts=4)
        if cert is None:
            continue
        M = certificate_matching(cert)
        x = min(X.support)
        lifted = lift_matching(X, x, M)
        cone = double_cone(X, x)
        assert verify_matching_acyclic(cone, lifted)
        critical = _critical_cells(X, M)
        critical_complex = SimplicialComplex(
            X.ground_set, critical | {()} if critical else set()
        )
        expected = double_cone(critical_complex, x)
        assert _critical_cells(cone, lifted) == {f for f in expected.faces if f}
        done += 1


def test_lift_matching_of_reference_collapse():
    entry = catalog("Y28_2")
    M = certificate_matching(entry.certificate)
    X = entry.complex
    lifted = lift_matching(X, 1, M)
    cone = double_cone(X, 1)
    assert verify_matching_acyclic(cone, lifted)
    critical = _critical_cells(cone, lifted)
    assert max(len(f) for f in critical) == 2  # a 1-dimensional subcomplex


def test_lift_matching_rejects_cyclic_input():
    X = SimplicialComplex.simplex_boundary(3)
    chase = Matching(frozenset({((1,), (1, 2)), ((2,), (2, 3)), ((3,), (1, 3))}))
    with pytest.raises(InputError):
        lift_matching(X, 1, chase)


# -- stacking move -------------------------------------------------------


def test_stacking_move_on_triangle():
    X = SimplicialComplex.simplex(3)
    Y = stacking_move(X, (1, 2, 3))
    assert set(Y.facets()) == {(1, 2, 4), (1, 3, 4), (2, 3, 4)}


def test_stacking_move_counts():
    X = SimplicialComplex.simplex(3)
    once = stacking_move(X, (1, 2, 3))
    twice = stacking_move(once, min(once.faces_of_dim(2)))
    assert once.n_faces(2) == 3
    assert twice.n_faces(2) == 5  # 1 + 2 * 2


def test_stacking_move_preserves_homology_and_no_free_faces():
    X = load_base_case(3).complex
    Y = stacking_move(X, min(X.faces_of_dim(3)))
    assert len(Y.support) == 9
    assert Y.dim == 3
    assert free_faces(Y) == []
    assert homology(Y).is_trivial()


def test_stacking_move_rejects_non_facet():
    X = SimplicialComplex.simplex(3)
    with pytest.raises(InputError):
        stacking_move(X, (1, 2))
    with pytest.raises(InputError):
        stacking_move(X, (1, 2, 4))


# -- base discovery ------------------------------------------------------


def test_find_base_case_recovers_golden_witness():
    entry = find_base_case(rng_seed=20250808, budget=50)
    X = entry.complex
    assert X.dim == 2 and X.support == frozenset(range(1, 9))
    assert free_faces(X) == []
    assert homology(X).is_trivial()
    assert replay(X, entry.certificate).is_simplex()


def test_find_dim3_base_recovers_golden_witness():
    entry = find_dim3_base(rng_seed=20250808, budget=50)
    X = entry.complex
    assert X.dim == 3 and X.support == frozenset(range(1, 9))
    assert free_faces(X) == []
    assert replay(X, entry.certificate).is_simplex()


def test_base_search_always_fails_on_seven_vertices():
    with pytest.raises(SearchBudgetExceeded) as info:
        find_base_case(rng_seed=3, budget=40, n=7)
    assert info.value.stats["attempts"] == 40


def test_golden_bases_load_and_verify():
    for d in (2, 3):
        entry = load_base_case(d)
        assert entry.complex.dim == d
        assert free_faces(entry.complex) == []
        assert replay(entry.complex, entry.certificate).is_simplex()


def test_golden_base_is_evasive():
    # expandable but with no free faces, hence not collapsible, and the
    # vertex-elimination test must therefore refuse it as well
    from anticollapse.collapse import is_non_evasive

    X = load_base_case(2).complex
    assert search_collapse(X, rng_seed=1, restarts=4) is None
    assert not is_non_evasive(X)


# -- the constructor -----------------------------------------------------


def test_refusal_reasons():
    assert theorem2_construct(8, 5, rng_seed=0) == Refusal(
        "d>=n-3",
        "any contractible complex on n vertices of dimension at least n-3 "
        "has a free face",
    )
    assert isinstance(theorem2_construct(12, 1, rng_seed=0), Refusal)
    assert theorem2_construct(12, 1, rng_seed=0).reason == "d=1"
    assert theorem2_construct(9, 0, rng_seed=0).reason == "d=0"
    assert theorem2_construct(6, 2, rng_seed=0).reason == "n<=7"


def test_constructor_validates_input():
    with pytest.raises(InputError):
        theorem2_construct(0, 2)
    with pytest.raises(InputError):
        theorem2_construct(8, -1)


def test_partition_matches_closed_form():
    for n in range(1, 13):
        for d in range(0, n + 2):
            result = theorem2_construct(n, d, rng_seed=0) if not admissible(n, d) else None
            if result is not None:
                assert isinstance(result, Refusal), (n, d)
            assert admissible(n, d) == (n >= 8 and 2 <= d <= n - 4)


def test_witness_10_4():
    result = theorem2_construct(10, 4, rng_seed=11)
    assert not isinstance(result, Refusal)
    X, cert = result
    assert X.dim == 4
    assert len(X.support) == 10
    assert free_faces(X) == []
    assert replay(X, cert).is_simplex()


def test_witness_deterministic_complex():
    a = theorem2_construct(9, 3, rng_seed=5)
    b = theorem2_construct(9, 3, rng_seed=5)
    assert a[0] == b[0]


def test_witnesses_are_integrally_acyclic():
    # expandable to the simplex means simple-homotopy trivial, so the
    # homology computation must come back empty on every route
    for n, d in ((9, 3), (9, 4), (10, 2)):
        X, _ = theorem2_construct(n, d, rng_seed=5)
        assert homology(X).is_trivial()


@pytest.mark.slow
def test_witness_matrix_through_twelve():
    for n in range(8, 13):
        for d in range(2, n - 3):
            result = theorem2_construct(n, d, rng_seed=2)
            assert not isinstance(result, Refusal)
            X, cert = result
            assert X.dim == d and len(X.support) == n
            assert free_faces(X) == []
            assert replay(X, cert).is_simplex()
