"""Reference complexes, dimension-raising moves, and the main constructor.

For every admissible pair (n, d) the constructor produces a d-dimensional
complex on n vertices that expands to the full simplex by elementary
anticollapses yet has no free face at all, together with a replayable
expansion certificate.  Inadmissible pairs get a principled refusal.

The 8-vertex bases in dimensions 2 and 3 are discovered by randomized
search over spanning complexes and shipped as golden files that are
re-verified on load; the dimension-4 base is the dual of a bundled
reference complex.  Higher cases follow by the double cone (n, d) ->
(n+1, d+1) and the stacking move (n, 2) -> (n+1, 2).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from pathlib import Path
from random import Random
from typing import Iterable, Optional, Union

from .collapse import (
    Certificate,
    Matching,
    core_erosion,
    free_faces,
    replay,
    search_collapse,
    verify_matching_acyclic,
)
from .complexes import (
    Face,
    SimplicialComplex,
    format_facet_file,
    from_facets,
    parse_facet_text,
    relabeled,
)
from .duality import alexander_dual, dual_certificate, is_anticollapsible
from .errors import InputError, SearchBudgetExceeded
from .homology import IncrementalRank, boundary_column, homology
from .hypertrees import kruskal_generate, spanning_torsion_order

# -- bundled reference complexes ---------------------------------------
#
# Facet lists are kept in their published order; loaders expose them both
# verbatim and as complexes on ground set {1..8}.

Y28_2_FACETS: tuple[Face, ...] = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 3, 8), (1, 6, 8),
    (1, 7, 8), (2, 3, 7), (3, 4, 6), (2, 4, 6), (2, 5, 8), (2, 6, 7),
    (2, 7, 8), (3, 4, 7), (3, 5, 7), (3, 5, 8), (4, 5, 8), (4, 6, 8),
    (4, 7, 8), (5, 6, 7), (1, 2, 6),
)

Y38_3_FACETS: tuple[Face, ...] = (
    (4, 6, 7, 8), (2, 5, 7, 8), (1, 5, 7, 8), (3, 4, 7, 8), (2, 4, 7, 8),
    (2, 3, 7, 8), (1, 3, 7, 8), (2, 5, 6, 8), (3, 4, 6, 8), (1, 4, 6, 8),
    (2, 3, 6, 8), (1, 3, 6, 8), (3, 4, 5, 8), (2, 4, 5, 8), (1, 3, 5, 8),
    (1, 2, 5, 8), (2, 3, 4, 8), (1, 2, 4, 8), (4, 5, 6, 7), (3, 5, 6, 7),
    (2, 5, 6, 7), (1, 4, 6, 7), (1, 3, 6, 7), (1, 2, 6, 7), (1, 4, 5, 7),
    (1, 3, 4, 7), (1, 2, 4, 7), (3, 4, 5, 6), (1, 4, 5, 6), (2, 3, 5, 6),
    (2, 3, 4, 6), (1, 2, 4, 6), (1, 3, 4, 5), (1, 2, 3, 5), (1, 2, 3, 4),
)

C38_3_FACETS: tuple[Face, ...] = (
    (1, 5, 7, 8), (3, 4, 5, 8), (1, 2, 6, 7), (1, 2, 3, 5), (1, 3, 4, 6),
    (2, 4, 7, 8), (4, 5, 6, 7), (2, 3, 7, 8), (1, 3, 5, 6), (2, 4, 5, 8),
    (1, 3, 4, 8), (2, 3, 4, 5), (1, 2, 4, 6), (2, 4, 6, 7), (2, 4, 5, 7),
    (1, 3, 5, 7), (1, 3, 4, 5), (2, 3, 6, 7), (3, 5, 7, 8), (3, 4, 5, 7),
    (1, 3, 4, 7), (2, 3, 6, 8), (2, 3, 4, 6), (1, 3, 7, 8), (1, 5, 6, 7),
    (2, 5, 6, 8), (4, 6, 7, 8), (1, 5, 6, 8), (2, 3, 5, 6), (1, 2, 3, 8),
    (3, 4, 6, 8), (1, 2, 5, 7), (1, 2, 4, 8), (5, 6, 7, 8), (3, 4, 6, 7),
)

CLAIM_COLLAPSIBLE = "collapsible"
CLAIM_ANTICOLLAPSIBLE = "anticollapsible"
CLAIM_NO_FREE_FACES = "no-free-faces"
CLAIM_Q_ACYCLIC = "q-acyclic"
CLAIM_Z_ACYCLIC = "z-acyclic"
CLAIM_CONTRACTIBLE = "contractible-certified"
CLAIM_TOP_CORE = "top-core"
CLAIM_DUAL_TOP_CORE = "dual-top-core"

CATALOG_NAMES = (
    "Y28_2",
    "Y38_3",
    "C38_3",
    "dual_Y28_2",
    "dual_Y38_3",
    "dual_C38_3",
)

# The 35-facet 3-dimensional list admits exactly four expansion moves, so
# its dual keeps four free faces; the no-free-face claim holds only for the
# dual of the 2-dimensional list.
_CATALOG_CLAIMS: dict[str, frozenset[str]] = {
    "Y28_2": frozenset(
        {CLAIM_COLLAPSIBLE, CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE,
         CLAIM_DUAL_TOP_CORE}
    ),
    "Y38_3": frozenset(
        {CLAIM_COLLAPSIBLE, CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE,
         CLAIM_DUAL_TOP_CORE}
    ),
    "C38_3": frozenset(
        {CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC, CLAIM_TOP_CORE, CLAIM_DUAL_TOP_CORE}
    ),
    "dual_Y28_2": frozenset(
        {CLAIM_ANTICOLLAPSIBLE, CLAIM_NO_FREE_FACES, CLAIM_Q_ACYCLIC,
         CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE}
    ),
    "dual_Y38_3": frozenset(
        {CLAIM_ANTICOLLAPSIBLE, CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC,
         CLAIM_CONTRACTIBLE}
    ),
    "dual_C38_3": frozenset(
        {CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC, CLAIM_TOP_CORE, CLAIM_DUAL_TOP_CORE}
    ),
}

_CATALOG_VERIFY_SEED = 0x5EED

# Canonical digests of the bundled complexes; the reproduction table checks
# these so that any edit to a facet list or golden file is caught.
EXPECTED_DIGESTS = {
    "Y28_2": "dc2f9d22237258de79f36a00563f03df56637630685669a707897b89376568b0",
    "Y38_3": "5e6c2331a67a3739ca66f1cac015fdec0a7b24e74342b517b56d58e336552a4d",
    "C38_3": "d8b2f39a7b4d59e1cb9ef346191e2235a9deabafe3650d38de99e37f3415c154",
    "dual_Y28_2": "c6243d3e236d0e372f7ce4f6af4b44db30847b99713dc9b210ebaa9151321649",
    "dual_Y38_3": "4bd2f1e1b7246abd9f03e3a863d8fb641181852f28634ac572e2ba06cd5da5c1",
    "dual_C38_3": "2441255fcd1f9b96cb49641473b496694ca23ece4a0dd5f4d1c59acfed9f3fb9",
    "base_8_2": "a12476cacbad1cfc7948f4ed23234622b4e84e3dacd7373234f928af7ff8a2bb",
    "base_8_3": "c52194b106b6d2d3212248888eb3aa283acead2ef044dbfe19192c520c8aa4ba",
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    complex: SimplicialComplex
    claims: frozenset[str]
    facets_listed: tuple[Face, ...]
    certificate: Optional[Certificate] = None


class ClaimVerificationError(RuntimeError):
    """A bundled complex failed one of its advertised properties."""


def _verify_claims(
    name: str, X: SimplicialComplex, claims: frozenset[str]
) -> Optional[Certificate]:
    """Re-check every claimed flag; returns a certificate when one exists."""
    certificate = None
    profile = None
    if {CLAIM_Q_ACYCLIC, CLAIM_Z_ACYCLIC} & claims:
        profile = homology(X)
    for claim in sorted(claims):
        if claim == CLAIM_NO_FREE_FACES:
            ok = not free_faces(X)
        elif claim == CLAIM_Q_ACYCLIC:
            ok = not any(profile.betti)
        elif claim == CLAIM_Z_ACYCLIC:
            ok = profile.is_trivial()
        elif claim == CLAIM_COLLAPSIBLE:
            cert = search_collapse(X, rng_seed=_CATALOG_VERIFY_SEED, restarts=64)
            ok = cert is not None
            certificate = certificate or cert
        elif claim == CLAIM_ANTICOLLAPSIBLE:
            cert = is_anticollapsible(X, rng_seed=_CATALOG_VERIFY_SEED, restarts=64)
            ok = cert is not None
            certificate = certificate or cert
        elif claim == CLAIM_CONTRACTIBLE:
            ok = certificate is not None
        elif claim == CLAIM_TOP_CORE:
            ok = not core_erosion(X)[1]
        elif claim == CLAIM_DUAL_TOP_CORE:
            ok = not core_erosion(alexander_dual(X))[1]
        else:
            raise InputError(f"unknown claim {claim!r}")
        if not ok:
            raise ClaimVerificationError(f"{name}: claim {claim!r} failed verification")
    return certificate


@lru_cache(maxsize=None)
def catalog(name: str) -> CatalogEntry:
    """A bundled reference complex with its claims re-verified on load."""
    if name not in CATALOG_NAMES:
        raise InputError(f"unknown catalog name {name!r}")
    listed: tuple[Face, ...]
    if name.endswith("Y28_2"):
        listed = Y28_2_FACETS
    elif name.endswith("Y38_3"):
        listed = Y38_3_FACETS
    else:
        listed = C38_3_FACETS
    base = from_facets(listed, ground=range(1, 9))
    X = alexander_dual(base) if name.startswith("dual_") else base
    claims = _CATALOG_CLAIMS[name]
    certificate = _verify_claims(name, X, claims)
    return CatalogEntry(name, X, claims, listed if not name.startswith("dual_") else X.facets(), certificate)


# -- dimension-raising constructions -----------------------------------


def _fresh_labels(used: frozenset[int], count: int) -> list[int]:
    labels = []
    v = 1
    while len(labels) < count:
        if v not in used:
            labels.append(v)
        v += 1
    return labels


def double_cone_labels(X: SimplicialComplex, x: int) -> tuple[int, int]:
    """The two cone labels: the smallest integers unused once x is retired."""
    used = X.ground_set - {x}
    a, b = _fresh_labels(used, 2)
    return a, b


def double_cone(X: SimplicialComplex, x: int) -> SimplicialComplex:
    """Union of two cones over copies of X that differ in one vertex.

    The distinguished vertex x is re-labeled b in the copy coned over a and
    re-labeled a in the copy coned over b, so the result lives on one more
    vertex and gains one dimension.  When x is not a vertex of X both cones
    are taken over X itself.
    """
    if not X.faces:
        raise InputError("the double cone needs a nonvoid complex")
    a, b = double_cone_labels(X, x)
    if x in X.ground_set:
        X_b = relabeled(X, {x: b})
        X_a = relabeled(X, {x: a})
    else:
        X_b = X
        X_a = X
    faces = set()
    for f in X_b.faces:
        faces.add(f)
        faces.add(tuple(sorted((a,) + f)))
    for f in X_a.faces:
        faces.add(f)
        faces.add(tuple(sorted((b,) + f)))
    ground = (X.ground_set - {x}) | {a, b}
    return SimplicialComplex(ground, faces, _checked=True)


def lift_matching(X: SimplicialComplex, x: int, matching: Matching) -> Matching:
    """Lift an acyclic matching on X to one on the double cone over x.

    Every pair lifts through the first cone label; pairs whose free face
    avoids the relabeled vertex survive unchanged; pairs whose coface also
    avoids it lift through the second label as well.  Critical cells of the
    result are exactly the double cone of the input's critical cells
    whenever those form a subcomplex.
    """
    for low, high in matching.pairs:
        if low not in X.faces or high not in X.faces:
            raise InputError(f"pair ({low}, {high}) is not a face pair of the complex")
    if not verify_matching_acyclic(X, matching):
        raise InputError("input matching is not acyclic")
    a, b = double_cone_labels(X, x)

    def to_b(face: Face) -> Face:
        return tuple(sorted(b if v == x else v for v in face))

    pairs: set[tuple[Face, Face]] = set()
    for low, high in matching.pairs:
        tau, sigma = to_b(low), to_b(high)
        pairs.add((tuple(sorted((a,) + tau)), tuple(sorted((a,) + sigma))))
        if b not in tau:
            pairs.add((tau, sigma))
        if b not in sigma:
            pairs.add((tuple(sorted((b,) + tau)), tuple(sorted((b,) + sigma))))
    return Matching(frozenset(pairs))


def stacking_move(X: SimplicialComplex, sigma: Face) -> SimplicialComplex:
    """Replace a top-dimensional facet by the cone over its boundary.

    The cone point is a fresh vertex, so the result has one more vertex,
    the same dimension, and d more top-dimensional faces than before.
    """
    sigma = tuple(sorted(sigma))
    if sigma not in X.faces or len(sigma) - 1 != X.dim:
        raise InputError(f"{sigma} is not a top-dimensional facet")
    (v,) = _fresh_labels(X.ground_set, 1)
    faces = set(X.faces)
    faces.discard(sigma)
    for k in range(len(sigma)):
        for rho in combinations(sigma, k):
            faces.add(tuple(sorted((v,) + rho)))
    return SimplicialComplex(X.ground_set | {v}, faces, _checked=True)


# -- randomized discovery of the 8-vertex bases ------------------------


def _spanning_basis_anneal(
    n: int,
    d: int,
    rng: Random,
    objective,
    max_steps: int = 6000,
    uphill: float = 0.03,
    candidate_window: int = 14,
) -> Optional[list[Face]]:
    """Walk the spanning-complex exchange graph, driving an objective to zero.

    One move swaps a kept top face for an unused one while preserving full
    boundary rank, accepting improvements and an occasional uphill step.
    """
    rows = sorted(combinations(range(1, n + 1), d))
    row_index = {f: i for i, f in enumerate(rows)}
    all_faces = list(combinations(range(1, n + 1), d + 1))
    columns = {f: boundary_column(f, row_index) for f in all_faces}

    start = kruskal_generate(n, d, rng.randrange(1 << 60))
    basis = sorted(start.faces_of_dim(d))
    basis_set = set(basis)
    score = objective(basis_set)
    steps = 0
    while score > 0 and steps < max_steps:
        steps += 1
        i = rng.randrange(len(basis))
        rest = basis[:i] + basis[i + 1 :]
        state = IncrementalRank()
        for f in rest:
            state.add(columns[f])
        outside = [f for f in all_faces if f not in basis_set]
        rng.shuffle(outside)
        for cand in outside[:candidate_window]:
            if not state.reduce(columns[cand]):
                continue  # would drop the rank
            trial_set = set(rest)
            trial_set.add(cand)
            trial_score = objective(trial_set)
            if trial_score <= score or rng.random() < uphill:
                basis = rest + [cand]
                basis_set = trial_set
                score = trial_score
                break
    return basis if score == 0 else None


def _free_edge_count(n: int):
    def objective(basis_set) -> int:
        degree: dict[Face, int] = {}
        for f in basis_set:
            for e in combinations(f, len(f) - 1):
                degree[e] = degree.get(e, 0) + 1
        return sum(1 for c in degree.values() if c == 1)

    return objective


def _expansion_move_count(n: int, d: int):
    cofaces = list(combinations(range(1, n + 1), d + 2))

    def objective(basis_set) -> int:
        moves = 0
        for s in cofaces:
            missing = 0
            for j in range(len(s)):
                if s[:j] + s[j + 1 :] not in basis_set:
                    missing += 1
                    if missing > 1:
                        break
            if missing == 1:
                moves += 1
        return moves

    return objective


def _spanning_complex(n: int, d: int, basis: Iterable[Face]) -> SimplicialComplex:
    lower = list(combinations(range(1, n + 1), d)) if d >= 2 else []
    return from_facets(list(basis) + lower, ground=range(1, n + 1))


def find_base_case(
    rng_seed: int,
    budget: int = 200,
    n: int = 8,
    out_dir: Optional[str] = None,
) -> CatalogEntry:
    """Search for a 2-dimensional complex on n vertices with no free faces
    that expands to the full simplex, and certify it.

    Spanning 2-complexes are generated and perturbed by exchange moves until
    no edge lies in exactly one triangle; survivors are filtered for
    integral acyclicity and a replayable expansion certificate.  Raises
    SearchBudgetExceeded with statistics when the budget runs out.
    """
    rng = Random(rng_seed)
    stats = {"attempts": 0, "annealed": 0, "torsion_rejects": 0, "expansion_rejects": 0}
    started = time.time()
    objective = _free_edge_count(n)
    for _ in range(budget):
        stats["attempts"] += 1
        basis = _spanning_basis_anneal(n, 2, rng, objective)
        if basis is None:
            continue
        stats["annealed"] += 1
        X = _spanning_complex(n, 2, basis)
        if X.support != frozenset(range(1, n + 1)) or free_faces(X):
            continue
        if spanning_torsion_order(X, 2) != 1:
            stats["torsion_rejects"] += 1
            continue
        profile = homology(X)
        if not profile.is_trivial():
            stats["torsion_rejects"] += 1
            continue
        cert = is_anticollapsible(X, rng_seed=rng.randrange(1 << 60), restarts=64)
        if cert is None:
            stats["expansion_rejects"] += 1
            continue
        entry = CatalogEntry(
            name=f"base_{n}_2",
            complex=X,
            claims=frozenset(
                {CLAIM_ANTICOLLAPSIBLE, CLAIM_NO_FREE_FACES, CLAIM_Q_ACYCLIC,
                 CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE}
            ),
            facets_listed=X.facets(),
            certificate=cert,
        )
        if out_dir is not None:
            persist_entry(entry, out_dir, rng_seed)
        return entry
    stats["seconds"] = round(time.time() - started, 1)
    raise SearchBudgetExceeded(
        f"no expandable no-free-face 2-complex on {n} vertices found", stats
    )


def find_dim3_base(
    rng_seed: int,
    budget: int = 200,
    n: int = 8,
    out_dir: Optional[str] = None,
) -> CatalogEntry:
    """Search for a 3-dimensional no-free-face expandable complex on n
    vertices, as the dual of a collapsible spanning 3-complex that admits
    no expansion move at all.
    """
    rng = Random(rng_seed)
    stats = {"attempts": 0, "annealed": 0, "torsion_rejects": 0, "collapse_rejects": 0}
    started = time.time()
    objective = _expansion_move_count(n, 3)
    for _ in range(budget):
        stats["attempts"] += 1
        basis = _spanning_basis_anneal(n, 3, rng, objective)
        if basis is None:
            continue
        stats["annealed"] += 1
        X = _spanning_complex(n, 3, basis)
        if spanning_torsion_order(X, 3) != 1:
            stats["torsion_rejects"] += 1
            continue
        cert = search_collapse(X, rng_seed=rng.randrange(1 << 60), restarts=64)
        if cert is None:
            stats["collapse_rejects"] += 1
            continue
        witness = alexander_dual(X)
        if free_faces(witness) or witness.dim != 3:
            continue
        anti = dual_certificate(X, cert)
        entry = CatalogEntry(
            name=f"base_{n}_3",
            complex=witness,
            claims=frozenset(
                {CLAIM_ANTICOLLAPSIBLE, CLAIM_NO_FREE_FACES, CLAIM_Q_ACYCLIC,
                 CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE}
            ),
            facets_listed=witness.facets(),
            certificate=anti,
        )
        if out_dir is not None:
            persist_entry(entry, out_dir, rng_seed)
        return entry
    stats["seconds"] = round(time.time() - started, 1)
    raise SearchBudgetExceeded(
        f"no expansion-stuck collapsible spanning 3-complex on {n} vertices found",
        stats,
    )


def persist_entry(entry: CatalogEntry, out_dir: str, rng_seed: int) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    comments = [f"{entry.name} discovered with seed {rng_seed}"]
    (out / f"{entry.name}.facets").write_text(
        format_facet_file(entry.complex, header_comments=comments), encoding="utf-8"
    )
    if entry.certificate is not None:
        (out / f"{entry.name}.cert").write_text(
            entry.certificate.to_json() + "\n", encoding="utf-8"
        )


# -- golden base-case loading ------------------------------------------


@lru_cache(maxsize=None)
def load_base_case(d: int) -> CatalogEntry:
    """Load a shipped 8-vertex base witness and re-verify everything.

    The facet file and certificate are package data; verification checks
    the dimension, the support, the absence of free faces, integral
    acyclicity, and that the certificate replays from the complex to the
    full simplex.
    """
    if d not in (2, 3):
        raise InputError("golden bases exist for dimensions 2 and 3 only")
    name = f"base_8_{d}"
    pkg = resources.files("anticollapse.data")
    X = parse_facet_text((pkg / f"{name}.facets").read_text(encoding="utf-8"))
    cert = Certificate.from_json((pkg / f"{name}.cert").read_text(encoding="utf-8"))
    if X.dim != d or X.support != frozenset(range(1, 9)):
        raise ClaimVerificationError(f"{name}: wrong dimension or support")
    if free_faces(X):
        raise ClaimVerificationError(f"{name}: free faces present")
    if not homology(X).is_trivial():
        raise ClaimVerificationError(f"{name}: not integrally acyclic")
    end = replay(X, cert)
    if not end.is_simplex():
        raise ClaimVerificationError(f"{name}: certificate does not reach the simplex")
    return CatalogEntry(
        name=name,
        complex=X,
        claims=frozenset(
            {CLAIM_ANTICOLLAPSIBLE, CLAIM_NO_FREE_FACES, CLAIM_Q_ACYCLIC,
             CLAIM_Z_ACYCLIC, CLAIM_CONTRACTIBLE}
        ),
        facets_listed=X.facets(),
        certificate=cert,
    )


# -- the constructor ----------------------------------------------------

REFUSE_DIM_ZERO = "d=0"
REFUSE_DIM_ONE = "d=1"
REFUSE_TOP_DIMS = "d>=n-3"
REFUSE_SMALL_N = "n<=7"

_REFUSAL_TEXT = {
    REFUSE_DIM_ZERO: "a stuck complex of dimension 0 would be a single vertex, "
    "which is the trivial end state, never a stuck one",
    REFUSE_DIM_ONE: "a 1-dimensional contractible complex is a tree and a tree "
    "always has a leaf, which is a free face",
    REFUSE_TOP_DIMS: "any contractible complex on n vertices of dimension at "
    "least n-3 has a free face",
    REFUSE_SMALL_N: "on up to 7 vertices every contractible complex is "
    "collapsible, so none of them is ever stuck",
}


@dataclass(frozen=True)
class Refusal:
    reason: str
    citation: str

    def __str__(self) -> str:
        return f"refusal: {self.reason} ({self.citation})"


def _refusal(reason: str) -> Refusal:
    return Refusal(reason, _REFUSAL_TEXT[reason])


def admissible(n: int, d: int) -> bool:
    """Pairs for which a no-free-face expandable witness exists: n >= 8 and
    2 <= d <= n - 4."""
    return n >= 8 and 2 <= d <= n - 4


ConstructionResult = Union[tuple[SimplicialComplex, Certificate], Refusal]


@lru_cache(maxsize=None)
def _construct_complex(n: int, d: int) -> SimplicialComplex:
    """The witness complex for an admissible pair, built deterministically."""
    if n == 8:
        if d == 2:
            return load_base_case(2).complex
        if d == 3:
            return load_base_case(3).complex
        return catalog("dual_Y28_2").complex  # d == 4
    if d >= 3:
        inner = _construct_complex(n - 1, d - 1)
        return double_cone(inner, min(inner.support))
    inner = _construct_complex(n - 1, 2)
    return stacking_move(inner, min(inner.faces_of_dim(2)))


def theorem2_construct(n: int, d: int, rng_seed: int = 0) -> ConstructionResult:
    """Either a verified witness for (n, d) or a principled refusal.

    A witness is a d-dimensional complex on n vertices with zero free faces
    and a replayable expansion certificate to the full simplex.  Witnesses
    exist exactly for n >= 8 with 2 <= d <= n - 4; every other pair is
    refused with the matching reason.
    """
    if not isinstance(n, int) or not isinstance(d, int) or n < 1 or d < 0:
        raise InputError(f"need integers n >= 1 and d >= 0, got n={n}, d={d}")
    if d == 0:
        return _refusal(REFUSE_DIM_ZERO)
    if d == 1:
        return _refusal(REFUSE_DIM_ONE)
    if d >= n - 3:
        return _refusal(REFUSE_TOP_DIMS)
    if n <= 7:
        return _refusal(REFUSE_SMALL_N)
    X = _construct_complex(n, d)
    if X.dim != d or len(X.support) != n:
        raise RuntimeError(f"constructed witness has wrong shape for ({n}, {d})")
    if free_faces(X):
        raise RuntimeError(f"constructed witness for ({n}, {d}) has a free face")
    certificate = _witness_certificate(n, d, rng_seed)
    end = replay(X, certificate)
    if not end.is_simplex():
        raise RuntimeError(f"witness certificate for ({n}, {d}) does not replay")
    return X, certificate


@lru_cache(maxsize=None)
def _witness_certificate(n: int, d: int, rng_seed: int) -> Certificate:
    X = _construct_complex(n, d)
    if n == 8 and d in (2, 3):
        return load_base_case(d).certificate
    cert = is_anticollapsible(X, rng_seed=rng_seed, restarts=256)
    if cert is None:
        raise RuntimeError(
            f"expansion search exhausted its budget on the ({n}, {d}) witness"
        )
    return cert
