"""Face-family construction, queries, and the facet file format."""
from __future__ import annotations

from itertools import combinations
from math import comb
from random import Random

import pytest

from anticollapse.complexes import (
    SimplicialComplex,
    connected_components,
    digest,
    format_facet_file,
    from_facets,
    hasse_edges,
    join,
    link_and_del,
    make_face,
    parse_facet_text,
    pure_part,
    relabeled,
    skeleton,
)
from anticollapse.errors import InputError

from conftest import random_complex

Y28_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 3, 8), (1, 6, 8),
    (1, 7, 8), (2, 3, 7), (3, 4, 6), (2, 4, 6), (2, 5, 8), (2, 6, 7),
    (2, 7, 8), (3, 4, 7), (3, 5, 7), (3, 5, 8), (4, 5, 8), (4, 6, 8),
    (4, 7, 8), (5, 6, 7), (1, 2, 6),
]


def test_make_face_sorts_and_validates():
    assert make_face([3, 1, 2]) == (1, 2, 3)
    with pytest.raises(InputError):
        make_face([1, 1, 2])
    with pytest.raises(InputError):
        make_face([0, 2])
    with pytest.raises(InputError):
        make_face([-1])


def test_from_facets_path_closure():
    X = from_facets([[1, 2], [2, 3]])
    assert X.faces == frozenset({(), (1,), (2,), (3,), (1, 2), (2, 3)})
    assert X.dim == 1
    assert X.ground_set == frozenset({1, 2, 3})


def test_from_facets_empty_input_gives_empty_complex():
    X = from_facets([])
    assert X.faces == frozenset({()})
    assert X.dim == -1


def test_from_facets_absorbs_redundant_faces():
    X = from_facets([[1, 2, 3], [1, 2]])
    assert X.facets() == ((1, 2, 3),)


def test_from_facets_idempotent_on_random_complexes():
    rng = Random(11)
    for _ in range(50):
        X = random_complex(rng)
        again = from_facets(X.facets(), ground=X.ground_set)
        assert again == X


def test_face_counts_of_full_simplex():
    for n in range(1, 8):
        X = SimplicialComplex.simplex(n)
        for k in range(-1, n):
            assert X.n_faces(k) == comb(n, k + 1)


def test_y28_census():
    X = from_facets(Y28_FACETS)
    assert X.n_faces(0) == 8
    assert X.n_faces(1) == 28  # the closure carries the complete 1-skeleton
    assert X.n_faces(2) == 21


def test_link_and_del_of_full_triangle():
    X = SimplicialComplex.simplex(3)
    link, deleted = link_and_del(X, 1)
    edge = from_facets([[2, 3]])
    assert link == edge
    assert deleted == edge


def test_link_and_del_of_triangle_boundary():
    X = SimplicialComplex.simplex_boundary(3)
    link, deleted = link_and_del(X, 1)
    assert link == from_facets([[2], [3]], ground=[2, 3])
    assert deleted == from_facets([[2, 3]])


def test_link_of_y28_vertex_one():
    # eight facets contain vertex 1, so the link is a graph with 8 edges
    X = from_facets(Y28_FACETS)
    containing = [f for f in Y28_FACETS if 1 in f]
    assert len(containing) == 8
    link, _ = link_and_del(X, 1)
    assert link.n_faces(0) == 7
    assert link.n_faces(1) == 8


def test_link_requires_ground_vertex():
    X = from_facets([[1, 2]])
    with pytest.raises(InputError):
        link_and_del(X, 9)


def test_link_of_unused_ground_vertex():
    X = from_facets([[1, 2]], ground=[1, 2, 3])
    link, deleted = link_and_del(X, 3)
    assert not link.faces  # vertex 3 carries no faces at all
    assert deleted.faces == X.faces


def test_join_cone_over_edge():
    point = from_facets([[1]])
    edge = from_facets([[2, 3]])
    assert join(point, edge) == SimplicialComplex.simplex(3)


def test_join_identity_with_empty_complex():
    X = from_facets([[1, 2], [2, 3]])
    empty = SimplicialComplex.empty([9])
    joined = join(X, empty)
    assert joined.faces == X.faces
    assert joined.ground_set == X.ground_set | {9}


def test_join_two_point_pairs_is_four_cycle():
    pair1 = from_facets([[1], [2]])
    pair2 = from_facets([[3], [4]])
    square = join(pair1, pair2)
    assert set(square.facets()) == {(1, 3), (1, 4), (2, 3), (2, 4)}


def test_join_rejects_overlap():
    with pytest.raises(InputError):
        join(from_facets([[1]]), from_facets([[1, 2]]))


def test_skeleton_of_simplex_is_complete_graph():
    X = skeleton(SimplicialComplex.simplex(8), 1)
    assert X.n_faces(1) == 28
    assert X.dim == 1
    assert X.ground_set == frozenset(range(1, 9))


def test_pure_part_drops_lower_facets():
    X = from_facets([[1, 2, 3], [4, 5]])
    assert pure_part(X) == from_facets([[1, 2, 3]], ground=X.ground_set)


def test_downward_closure_exhaustive_small():
    rng = Random(5)
    for _ in range(30):
        X = random_complex(rng, max_vertices=5)
        for f in X.faces:
            for k in range(len(f)):
                for g in combinations(f, k):
                    assert g in X.faces


def test_hasse_lower_neighbor_counts():
    X = from_facets([[1, 2, 3], [2, 3, 4]])
    lower_count: dict = {}
    for low, high in hasse_edges(X):
        lower_count[high] = lower_count.get(high, 0) + 1
    for f in X.faces:
        if f:
            assert lower_count[f] == len(f)


def test_connected_components():
    assert connected_components(from_facets([[1, 2], [3, 4]])) == 2
    assert connected_components(from_facets([[1, 2], [2, 3]])) == 1


def test_relabeled_injective():
    X = from_facets([[1, 2]])
    Y = relabeled(X, {1: 5})
    assert Y.facets() == ((2, 5),)
    with pytest.raises(InputError):
        relabeled(X, {1: 2})


def test_digest_ignores_facet_order_and_detects_changes():
    X = from_facets([[1, 2], [2, 3]])
    Y = from_facets([[2, 3], [1, 2]])
    assert digest(X) == digest(Y)
    Z = from_facets([[1, 2], [2, 3], [1, 3]])
    assert digest(X) != digest(Z)


def test_facet_file_round_trip():
    rng = Random(17)
    for _ in range(25):
        X = random_complex(rng)
        text = format_facet_file(X, header_comments=["round trip"])
        back = parse_facet_text(text)
        assert back == SimplicialComplex(X.ground_set, X.faces)


def test_facet_file_ground_directive():
    X = parse_facet_text("ground 5\n1 2\n")
    assert X.ground_set == frozenset(range(1, 6))
    assert X.facets() == ((1, 2),)


def test_facet_file_void_and_empty():
    void = parse_facet_text("ground 3\nvoid\n")
    assert not void.faces
    empty = parse_facet_text("ground 3\n")
    assert empty.faces == frozenset({()})
    assert parse_facet_text(format_facet_file(void)) == void


def test_facet_file_rejects_bad_lines():
    with pytest.raises(InputError):
        parse_facet_text("1 1 2\n")
    with pytest.raises(InputError):
        parse_facet_text("ground 0\n")
    with pytest.raises(InputError):
        parse_facet_text("1 2\nground 3\n")


def test_euler_characteristic():
    assert SimplicialComplex.simplex(4).euler_characteristic() == 0
    # reduced: a circle gives -1, a 2-sphere gives +1
    assert SimplicialComplex.simplex_boundary(3).euler_characteristic() == -1
    assert SimplicialComplex.simplex_boundary(4).euler_characteristic() == 1
    assert from_facets([[1], [2]]).euler_characteristic() == 1
    assert SimplicialComplex.empty([1, 2]).euler_characteristic() == -1
    assert SimplicialComplex.void([1, 2]).euler_characteristic() == 0
