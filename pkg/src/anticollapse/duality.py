"""Combinatorial duality against a fixed ground set.

The dual of X on ground set V has as faces the complements of the non-faces
of X.  Taking faces literally (so that the full simplex dualizes to the
complex with no faces, and the complex with only the empty face dualizes to
the full boundary) makes the construction an exact involution.

Every elementary collapse on X transports to an elementary anticollapse on
the dual, which is how expansion certificates are produced here.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from .collapse import (
    ANTICOLLAPSE,
    COLLAPSE,
    Certificate,
    StepPair,
    replay,
    search_collapse,
)
from .complexes import (
    EMPTY_FACE,
    Face,
    SimplicialComplex,
    digest,
    from_facets,
)
from .errors import InputError
from .homology import field_betti


def minimal_nonfaces(X: SimplicialComplex) -> list[Face]:
    """Inclusion-minimal subsets of the ground set that are not faces."""
    if not X.faces:
        return [EMPTY_FACE]
    ground = sorted(X.ground_set)
    minimal: list[Face] = []
    # level-wise: a k-set is a candidate iff all its (k-1)-subsets are faces
    level: list[Face] = [EMPTY_FACE]
    for size in range(1, len(ground) + 1):
        next_level: list[Face] = []
        seen: set[Face] = set()
        for f in level:
            start = f[-1] if f else 0
            for v in ground:
                if v <= start:
                    continue
                cand = f + (v,)
                if cand in seen:
                    continue
                seen.add(cand)
                if all(cand[:j] + cand[j + 1 :] in X.faces for j in range(size)):
                    if cand in X.faces:
                        next_level.append(cand)
                    else:
                        minimal.append(cand)
        level = next_level
    return sorted(minimal)


def alexander_dual(X: SimplicialComplex) -> SimplicialComplex:
    """The dual complex on the same ground set.

    Computed from minimal non-faces: the facets of the dual are exactly the
    complements of the minimal non-faces of X.
    """
    ground = X.ground_set
    nonfaces = minimal_nonfaces(X)
    if not nonfaces:
        return SimplicialComplex.void(ground)
    facets = [tuple(sorted(ground - set(m))) for m in nonfaces]
    if facets == [EMPTY_FACE]:
        # the only minimal non-face is the ground set itself
        return SimplicialComplex.empty(ground)
    return from_facets([f for f in facets if f], ground=ground)


def dual_by_enumeration(X: SimplicialComplex) -> SimplicialComplex:
    """Subset-enumeration oracle for the dual; guarded to small ground sets."""
    ground = sorted(X.ground_set)
    if len(ground) > 16:
        raise InputError("enumeration oracle is limited to 16 ground vertices")
    faces = set()
    for size in range(len(ground) + 1):
        for sub in combinations(ground, size):
            comp = tuple(sorted(set(ground) - set(sub)))
            if comp not in X.faces:
                faces.add(sub)
    return SimplicialComplex(X.ground_set, faces, _checked=True)


def dual_step(step: StepPair, ground: frozenset[int]) -> StepPair:
    """Transport one move through complementation.

    A collapse removing (free, coface) becomes the anticollapse adding
    (coface complement, free complement), and conversely.
    """
    free_c = tuple(sorted(ground - set(step.coface)))
    coface_c = tuple(sorted(ground - set(step.free)))
    direction = ANTICOLLAPSE if step.direction == COLLAPSE else COLLAPSE
    return StepPair(free_c, coface_c, direction)


def dual_certificate(X: SimplicialComplex, cert: Certificate) -> Certificate:
    """Transport a collapse certificate on X to an expansion certificate on
    the dual of X.

    When the collapse ends at a single vertex, the transported sequence is
    finished with the dual of the trivial final collapse, so the output
    expands the dual of X all the way to the full simplex.
    """
    if cert.kind != COLLAPSE:
        raise InputError("only collapse certificates are transported")
    end = replay(X, cert)  # validates the input certificate
    ground = X.ground_set
    steps = [dual_step(s, ground) for s in cert.steps]
    if len(end.faces) == 2 and end.n_faces(0) == 1:
        # ends at a lone vertex v: append the dual of the trivial collapse,
        # adding the missing (n-2)-face and the top face
        (v,) = next(iter(end.faces_of_dim(0)))
        steps.append(
            StepPair(
                tuple(sorted(ground - {v})),
                tuple(sorted(ground)),
                ANTICOLLAPSE,
            )
        )
    start_complex = alexander_dual(X)
    transported = Certificate(
        ANTICOLLAPSE,
        tuple(steps),
        digest(start_complex),
        "",
    )
    # fill in the end digest by replaying
    final = _replay_loose(start_complex, transported)
    return Certificate(ANTICOLLAPSE, tuple(steps), digest(start_complex), digest(final))


def _replay_loose(X: SimplicialComplex, cert: Certificate) -> SimplicialComplex:
    from .collapse import _Workbench  # replay without an end digest

    wb = _Workbench(X)
    for step in cert.steps:
        wb.apply(wb.mask(step.free), wb.mask(step.coface), step.direction, True)
    return wb.to_complex(X.ground_set)


def is_anticollapsible(
    X: SimplicialComplex,
    rng_seed: int = 0,
    restarts: int = 64,
    backtrack: bool = True,
) -> Optional[Certificate]:
    """Search for an expansion of X to the full simplex on its ground set.

    Runs the collapse search on the dual and transports the result back.
    Success gives a replayable expansion certificate; failure within budget
    proves nothing.
    """
    if not X.faces:
        raise InputError("expansion search needs a nonvoid complex")
    if X.is_simplex():
        d = digest(X)
        return Certificate(ANTICOLLAPSE, (), d, d)
    dual = alexander_dual(X)
    if not dual.faces_of_dim(0):
        return None  # dual carries no vertex, nothing can collapse
    cert = search_collapse(dual, rng_seed=rng_seed, restarts=restarts, backtrack=backtrack)
    if cert is None:
        return None
    return dual_certificate(dual, cert)


def check_alexander_duality(X: SimplicialComplex, field: int | str = "Q") -> bool:
    """Field-coefficient rank duality between X and its dual.

    Checks that the reduced Betti number of X in dimension i equals that of
    the dual in dimension n - i - 3 for every i, n the ground set size.
    """
    n = len(X.ground_set)
    dual = alexander_dual(X)
    for i in range(-1, n + 1):
        if field_betti(X, i, field) != field_betti(dual, n - i - 3, field):
            return False
    return True
