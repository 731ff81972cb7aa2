"""Shared generators and reference complexes for the test suite."""
from __future__ import annotations

from itertools import combinations
from random import Random

import pytest

from anticollapse.complexes import SimplicialComplex, from_facets

# Six-vertex triangulation of the real projective plane (antipodal quotient
# of the icosahedron): 6 vertices, 15 edges, 10 triangles, every edge in
# exactly two triangles.
RP2_FACETS = [
    (1, 2, 5),
    (1, 2, 6),
    (1, 3, 4),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 4),
    (2, 3, 6),
    (2, 4, 5),
    (3, 5, 6),
    (4, 5, 6),
]


def rp2() -> SimplicialComplex:
    return from_facets(RP2_FACETS)


def random_complex(rng: Random, max_vertices: int = 6) -> SimplicialComplex:
    """A random nonvoid complex on a ground set of up to max_vertices."""
    n = rng.randint(1, max_vertices)
    ground = list(range(1, n + 1))
    facets = []
    n_gen = rng.randint(1, max(2, n))
    for _ in range(n_gen):
        size = rng.randint(1, n)
        facets.append(tuple(sorted(rng.sample(ground, size))))
    return from_facets(facets, ground=ground)


def all_complexes_on(ground: tuple[int, ...]):
    """Every downward-closed family over a small ground set, void included."""
    yield SimplicialComplex.empty(ground)
    subsets = []
    for k in range(1, len(ground) + 1):
        subsets.extend(combinations(ground, k))
    total = len(subsets)
    for pick in range(1 << total):
        chosen = {subsets[i] for i in range(total) if pick >> i & 1}
        closed = True
        for f in chosen:
            for g in combinations(f, len(f) - 1):
                if g and g not in chosen:
                    closed = False
                    break
            if not closed:
                break
        if not closed:
            continue
        faces = set(chosen)
        if faces:
            faces.add(())
        yield SimplicialComplex(ground, faces, _checked=True)


@pytest.fixture
def rng() -> Random:
    return Random(0xC0FFEE)
