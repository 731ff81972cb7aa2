"""Random generation and classification of rationally acyclic complexes.

A d-dimensional hypertree on n vertices (here always with complete (d-1)-
skeleton when generated) is a complex with vanishing reduced rational
homology everywhere: the d-dimensional analogue of a spanning tree.  The
generator processes the candidate top faces in a seeded random order and
keeps exactly those that do not create a rational cycle, stopping at the
spanning count C(n-1, d).  The processing order is not a uniform sampler
over hypertrees.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from math import comb
from random import Random
from typing import Iterator, Optional

from .collapse import core_erosion, free_faces, search_collapse
from .complexes import Face, SimplicialComplex, from_facets
from .duality import alexander_dual, is_anticollapsible
from .errors import InputError, SizeError
from .homology import (
    IncrementalRank,
    boundary_column,
    homology,
    smith_invariant_factors,
)

FOUND = "found"
REFUTED = "refuted-by-core"
UNKNOWN = "unknown"


def _derive_seed(master: int, counter: int) -> int:
    return (master * 6364136223846793005 + counter * 1442695040888963407 + 1) % (1 << 63)


def complete_skeleton(n: int, d: int) -> list[Face]:
    """Facets of the complete d-skeleton on {1..n}."""
    return list(combinations(range(1, n + 1), d + 1))


def kruskal_generate(n: int, d: int, rng_seed: int) -> SimplicialComplex:
    """Grow a random d-hypertree on {1..n} over the complete (d-1)-skeleton.

    Candidate d-faces are visited in a seeded random order, once each, and a
    candidate is kept exactly when its boundary column is independent of the
    kept ones over Q.  Stops at C(n-1, d) kept faces.
    """
    if d + 1 < 2 or n < d + 1:
        raise InputError(f"need n >= d+1 >= 2, got n={n}, d={d}")
    rng = Random(rng_seed)
    candidates = complete_skeleton(n, d)
    rng.shuffle(candidates)
    rows = sorted(combinations(range(1, n + 1), d))
    row_index = {f: i for i, f in enumerate(rows)}
    state = IncrementalRank()
    target = comb(n - 1, d)
    accepted: list[Face] = []
    for sigma in candidates:
        if len(accepted) == target:
            break
        if state.add(boundary_column(sigma, row_index)):
            accepted.append(sigma)
    if len(accepted) != target:
        raise RuntimeError("candidate pool exhausted before the spanning count")
    facets = accepted + ([] if d == 1 else complete_skeleton(n, d - 1))
    return from_facets(facets, ground=range(1, n + 1))


def _bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = [row[:] for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def spanning_torsion_order(X: SimplicialComplex, d: int) -> int:
    """|H_(d-1)| of a spanning complex with complete (d-1)-skeleton.

    Uses the reduced top boundary matrix with rows restricted to the
    (d-1)-faces avoiding the largest vertex; for such complexes the absolute
    determinant equals the order of the torsion group (the d = 1 case is the
    classical reduced incidence matrix of a spanning tree).
    """
    n = len(X.ground_set)
    if X.ground_set != frozenset(range(1, n + 1)):
        raise InputError("spanning torsion shortcut needs ground set {1..n}")
    top = sorted(X.faces_of_dim(d))
    if len(top) != comb(n - 1, d):
        raise InputError("spanning torsion shortcut needs exactly C(n-1, d) top faces")
    rows = [f for f in combinations(range(1, n + 1), d) if n not in f]
    row_index = {f: i for i, f in enumerate(rows)}
    dense = [[0] * len(top) for _ in rows]
    for j, face in enumerate(top):
        for k in range(len(face)):
            sub = face[:k] + face[k + 1 :]
            i = row_index.get(sub)
            if i is not None:
                dense[i][j] = -1 if k % 2 else 1
    return abs(_bareiss_det(dense))


def torsion_order(X: SimplicialComplex, d: int) -> int:
    """|H_(d-1)(X)| from the integer normal form (must be finite)."""
    profile = homology(X)
    if d - 1 < 0 or d - 1 >= len(profile.betti):
        return 1
    if profile.betti[d - 1] != 0:
        raise InputError("torsion order is only defined when the group is finite")
    order = 1
    for t in profile.torsion[d - 1]:
        order *= t
    return order


@dataclass
class HypertreeReport:
    """Classification of one candidate hypertree."""

    complex: SimplicialComplex
    facet_count: int
    q_acyclic: bool
    torsion_order: int
    d_collapsible: bool
    collapsible: str
    anticollapsible: str
    free_face_count: int

    @property
    def no_free_faces(self) -> bool:
        return self.free_face_count == 0

    def is_class_a(self) -> bool:
        """Collapsible but provably not anticollapsible."""
        return self.collapsible == FOUND and self.anticollapsible == REFUTED

    def is_class_b(self) -> bool:
        """Provably neither collapsible nor anticollapsible."""
        return self.collapsible == REFUTED and self.anticollapsible == REFUTED


_SKELETON_RANK_CACHE: dict[tuple[int, int], int] = {}


def _complete_skeleton_rank(n: int, k: int) -> int:
    """Rank over Q of the k-th boundary map of the complete complex on [n]."""
    key = (n, k)
    if key not in _SKELETON_RANK_CACHE:
        rows = sorted(combinations(range(1, n + 1), k))
        row_index = {f: i for i, f in enumerate(rows)}
        state = IncrementalRank()
        for face in combinations(range(1, n + 1), k + 1):
            state.add(boundary_column(face, row_index))
        _SKELETON_RANK_CACHE[key] = state.rank
    return _SKELETON_RANK_CACHE[key]


def _has_complete_lower_skeleton(X: SimplicialComplex, d: int) -> bool:
    n = len(X.ground_set)
    return all(X.n_faces(k) == comb(n, k + 1) for k in range(d))


def is_hypertree(
    X: SimplicialComplex,
    d: int,
    rng_seed: int = 0,
    restarts: int = 64,
) -> HypertreeReport:
    """Verify rational acyclicity and classify collapse behaviour.

    The collapsible / anticollapsible flags are three-valued: a certificate
    was found, the property was refuted by a surviving top-dimensional core
    (on the complex or on its dual), or unknown within the search budget.
    """
    if X.dim != d:
        raise InputError(f"expected a complex of dimension {d}, got {X.dim}")
    n = len(X.ground_set)
    facet_count = X.n_faces(d)

    if _has_complete_lower_skeleton(X, d) and facet_count == comb(n - 1, d):
        # complete lower skeleton: acyclicity reduces to the top rank
        rows = sorted(X.faces_of_dim(d - 1))
        row_index = {f: i for i, f in enumerate(rows)}
        state = IncrementalRank()
        for face in sorted(X.faces_of_dim(d)):
            state.add(boundary_column(face, row_index))
        lower_ok = all(
            comb(n, k + 1) - _complete_skeleton_rank(n, k) - _complete_skeleton_rank(n, k + 1) == 0
            for k in range(d - 1)
        )
        top_ok = (
            state.rank == facet_count
            and comb(n, d) - _complete_skeleton_rank(n, d - 1) - state.rank == 0
        )
        q_acyclic = lower_ok and top_ok
        torsion = spanning_torsion_order(X, d) if q_acyclic else 0
    else:
        profile = homology(X)
        q_acyclic = not any(profile.betti)
        torsion = torsion_order(X, d) if q_acyclic else 0

    residue, d_collapsible = core_erosion(X)
    del residue
    if not d_collapsible:
        collapsible = REFUTED
    else:
        cert = search_collapse(X, rng_seed=rng_seed, restarts=restarts, backtrack=False)
        collapsible = FOUND if cert is not None else UNKNOWN

    dual = alexander_dual(X)
    if dual.dim >= 1:
        _, dual_top_collapsible = core_erosion(dual)
    else:
        dual_top_collapsible = True
    if not dual_top_collapsible:
        anticollapsible = REFUTED
    else:
        anti = is_anticollapsible(
            X, rng_seed=_derive_seed(rng_seed, 1), restarts=restarts, backtrack=False
        )
        anticollapsible = FOUND if anti is not None else UNKNOWN

    return HypertreeReport(
        complex=X,
        facet_count=facet_count,
        q_acyclic=q_acyclic,
        torsion_order=torsion,
        d_collapsible=d_collapsible,
        collapsible=collapsible,
        anticollapsible=anticollapsible,
        free_face_count=len(free_faces(X)),
    )


def kalai_check(n: int, d: int) -> tuple[int, int, bool]:
    """Exhaustively sum squared torsion orders over all spanning complexes.

    Enumerates every complex with complete (d-1)-skeleton and exactly
    C(n-1, d) top faces, sums |H_(d-1)|^2 over the rationally acyclic ones,
    and compares with n^C(n-2, d).
    """
    total_candidates = comb(n, d + 1)
    if total_candidates > 25:
        raise SizeError(
            f"exhaustive enumeration guard: C({n},{d + 1}) = {total_candidates} > 25"
        )
    target = comb(n - 1, d)
    rows = sorted(combinations(range(1, n + 1), d))
    row_index = {f: i for i, f in enumerate(rows)}
    all_faces = complete_skeleton(n, d)
    columns = {f: boundary_column(f, row_index) for f in all_faces}
    weighted_sum = 0
    for subset in combinations(all_faces, target):
        state = IncrementalRank()
        ok = True
        for f in subset:
            if not state.add(columns[f]):
                ok = False
                break
        if not ok:
            continue
        dense = [[0] * target for _ in rows]
        for j, f in enumerate(subset):
            for i, v in columns[f].items():
                dense[i][j] = v
        order = 1
        for t in smith_invariant_factors(dense):
            if t > 1:
                order *= t
        weighted_sum += order * order
    expected = n ** comb(n - 2, d)
    return weighted_sum, expected, weighted_sum == expected


@dataclass
class SurveySummary:
    trials: int
    class_a_seeds: list[int]
    class_b_seeds: list[int]
    no_free_face_seeds: list[int]
    invalid_seeds: list[int]


def survey(
    n: int,
    d: int,
    trials: int,
    rng_seed: int,
    restarts: int = 64,
) -> Iterator[tuple[int, HypertreeReport]]:
    """Generate and classify one hypertree per trial, yielding (seed, report).

    Per-trial seeds are derived from the master seed by a counter, so any
    single trial can be replayed in isolation from its recorded seed.
    """
    if trials < 1:
        raise InputError("at least one trial")
    for t in range(trials):
        seed = _derive_seed(rng_seed, t)
        X = kruskal_generate(n, d, seed)
        yield seed, is_hypertree(X, d, rng_seed=seed, restarts=restarts)


def run_survey(
    n: int,
    d: int,
    trials: int,
    rng_seed: int,
    csv_path: Optional[str] = None,
    restarts: int = 64,
    stop_after_class_a: Optional[int] = None,
) -> SurveySummary:
    """Drive a survey, optionally writing one CSV row per trial.

    stop_after_class_a stops early once that many collapsible-but-refuted-
    expansion examples have been seen (the seeds are recorded either way).
    """
    summary = SurveySummary(0, [], [], [], [])
    writer = None
    handle = None
    if csv_path is not None:
        handle = open(csv_path, "w", newline="", encoding="utf-8")
        writer = csv.writer(handle)
        writer.writerow(
            [
                "seed",
                "facets",
                "q_acyclic",
                "torsion",
                "dcollapsible",
                "collapsible",
                "anticollapsible",
                "free_faces",
            ]
        )
    try:
        for seed, report in survey(n, d, trials, rng_seed, restarts=restarts):
            summary.trials += 1
            if not report.q_acyclic or report.facet_count != comb(n - 1, d):
                summary.invalid_seeds.append(seed)
            if report.is_class_a():
                summary.class_a_seeds.append(seed)
            if report.is_class_b():
                summary.class_b_seeds.append(seed)
            if report.no_free_faces:
                summary.no_free_face_seeds.append(seed)
            if writer is not None:
                writer.writerow(
                    [
                        seed,
                        report.facet_count,
                        report.q_acyclic,
                        report.torsion_order,
                        report.d_collapsible,
                        report.collapsible,
                        report.anticollapsible,
                        report.free_face_count,
                    ]
                )
            if (
                stop_after_class_a is not None
                and len(summary.class_a_seeds) >= stop_after_class_a
            ):
                break
    finally:
        if handle is not None:
            handle.close()
    return summary
