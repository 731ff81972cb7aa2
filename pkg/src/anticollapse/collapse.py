"""Elementary collapses and expansions, with replayable certificates.

A free face is a nonempty face properly contained in exactly one other face;
removing the pair is an elementary collapse and adding such a pair is an
elementary anticollapse.  Orderings of such moves are recorded as
certificates whose replay re-validates every precondition and checks the
start and end digests, so a certificate is independently verifiable.

The one degenerate move, with the empty face as the free side, is
representable but gated behind a flag: it is only legal when collapsing a
lone vertex or when expanding the complex with no faces, and it exists for
bookkeeping under duality.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from random import Random
from typing import Iterable, Optional

from .complexes import (
    EMPTY_FACE,
    Face,
    SimplicialComplex,
    digest,
    link_and_del,
)
from .errors import InputError, StepError

COLLAPSE = "collapse"
ANTICOLLAPSE = "anticollapse"


@dataclass(frozen=True)
class StepPair:
    free: Face
    coface: Face
    direction: str

    def __post_init__(self):
        if self.direction not in (COLLAPSE, ANTICOLLAPSE):
            raise InputError(f"unknown step direction {self.direction!r}")
        if len(self.coface) != len(self.free) + 1 or not set(self.free) <= set(self.coface):
            raise InputError(f"({self.free}, {self.coface}) is not a face/coface pair")

    def reversed(self) -> "StepPair":
        other = ANTICOLLAPSE if self.direction == COLLAPSE else COLLAPSE
        return StepPair(self.free, self.coface, other)


@dataclass(frozen=True)
class Certificate:
    """An ordered, replayable sequence of elementary moves of one kind."""

    kind: str
    steps: tuple[StepPair, ...]
    start_hash: str
    end_hash: str

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "start": self.start_hash,
            "end": self.end_hash,
            "steps": [[list(s.free), list(s.coface)] for s in self.steps],
        }
        return json.dumps(payload, indent=1)

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            payload = json.loads(text)
            kind = payload["kind"]
            steps = tuple(
                StepPair(tuple(free), tuple(coface), kind)
                for free, coface in payload["steps"]
            )
            return Certificate(kind, steps, payload["start"], payload["end"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate: {exc}") from exc


@dataclass(frozen=True)
class Matching:
    """A set of face/coface pairs with every face in at most one pair."""

    pairs: frozenset[tuple[Face, Face]]

    def __post_init__(self):
        seen: set[Face] = set()
        for low, high in self.pairs:
            if len(high) != len(low) + 1 or not set(low) <= set(high):
                raise InputError(f"({low}, {high}) is not a face/coface pair")
            for f in (low, high):
                if f in seen:
                    raise InputError(f"face {f} appears in two pairs")
                seen.add(f)

    def __len__(self) -> int:
        return len(self.pairs)

    def matched_faces(self) -> frozenset[Face]:
        return frozenset(f for pair in self.pairs for f in pair)


@dataclass(frozen=True)
class MorseVector:
    """Critical cell counts per dimension from one acyclic matching."""

    counts: tuple[int, ...]

    def alternating_sum(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    def is_point_vector(self) -> bool:
        return self.counts[:1] == (1,) and not any(self.counts[1:])

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.counts) + ")"


# -- mask workbench ----------------------------------------------------
#
# Engines below run on integer bitmasks over the sorted ground set.  Only
# nonempty faces are cells; the empty face never enters the workbench.


class _Workbench:
    __slots__ = ("labels", "bit_of", "faces", "by_size", "deg", "all_bits")

    def __init__(self, X: SimplicialComplex):
        self.labels: tuple[int, ...] = tuple(sorted(X.ground_set))
        self.bit_of = {v: 1 << i for i, v in enumerate(self.labels)}
        self.all_bits = (1 << len(self.labels)) - 1
        self.faces: set[int] = set()
        self.by_size: dict[int, set[int]] = {}
        self.deg: dict[int, int] = {}
        for f in X.faces:
            if f:
                self.faces.add(self.mask(f))
        for m in self.faces:
            self.by_size.setdefault(m.bit_count(), set()).add(m)
            self.deg.setdefault(m, 0)
        for m in self.faces:
            k = m.bit_count()
            if k >= 2:
                rest = m
                while rest:
                    b = rest & -rest
                    rest ^= b
                    self.deg[m ^ b] += 1

    def mask(self, face: Face) -> int:
        m = 0
        for v in face:
            b = self.bit_of.get(v)
            if b is None:
                raise InputError(f"vertex {v} is outside the ground set")
            m |= b
        return m

    def face(self, mask: int) -> Face:
        return tuple(v for v in self.labels if self.bit_of[v] & mask)

    def max_size(self) -> int:
        sizes = [s for s, fs in self.by_size.items() if fs]
        return max(sizes) if sizes else 0

    def _insert(self, m: int) -> None:
        self.faces.add(m)
        self.by_size.setdefault(m.bit_count(), set()).add(m)
        self.deg.setdefault(m, 0)
        rest = m
        while rest:
            b = rest & -rest
            rest ^= b
            sub = m ^ b
            if sub:
                self.deg[sub] = self.deg.get(sub, 0) + 1

    def _remove(self, m: int) -> None:
        self.faces.discard(m)
        self.by_size[m.bit_count()].discard(m)
        rest = m
        while rest:
            b = rest & -rest
            rest ^= b
            sub = m ^ b
            if sub:
                self.deg[sub] -= 1

    def unique_coface(self, m: int) -> int:
        rest = self.all_bits & ~m
        while rest:
            b = rest & -rest
            rest ^= b
            if (m | b) in self.faces:
                return m | b
        raise StepError(f"face {self.face(m)} has no coface")

    def free_pairs_at_max_dim(self) -> list[tuple[int, int]]:
        """Free pairs whose coface size is maximal; empty if none anywhere."""
        for size in range(self.max_size(), 0, -1):
            found = []
            for t in self.by_size.get(size - 1, ()):
                if self.deg.get(t, 0) == 1:
                    c = self.unique_coface(t)
                    if self.deg.get(c, 0) == 0:
                        found.append((t, c))
            if found:
                found.sort()
                return found
        return []

    def collapse(self, t: int, c: int) -> None:
        self._remove(c)
        self._remove(t)

    def expand(self, t: int, c: int) -> None:
        self._insert(t)
        self._insert(c)

    def is_single_vertex(self) -> bool:
        return len(self.faces) == 1 and next(iter(self.faces)).bit_count() == 1

    def to_complex(self, ground: Iterable[int]) -> SimplicialComplex:
        faces = {self.face(m) for m in self.faces}
        if faces:
            faces.add(EMPTY_FACE)
        return SimplicialComplex(ground, faces, _checked=True)

    # step validation shared by apply_step and replay

    def check_collapse(self, t: int, c: int, allow_trivial: bool) -> None:
        if t == 0:
            if not allow_trivial:
                raise StepError("the empty face may only collapse with the trivial flag")
            if not (len(self.faces) == 1 and c in self.faces and c.bit_count() == 1):
                raise StepError("trivial collapse needs a single-vertex complex")
            return
        if t not in self.faces:
            raise StepError(f"free face {self.face(t)} is not in the complex")
        if c not in self.faces:
            raise StepError(f"coface {self.face(c)} is not in the complex")
        if self.deg.get(t, 0) != 1 or self.unique_coface(t) != c:
            raise StepError(f"{self.face(t)} is not free with coface {self.face(c)}")
        if self.deg.get(c, 0) != 0:
            raise StepError(f"{self.face(c)} is not a facet")

    def check_expand(self, t: int, c: int, allow_trivial: bool) -> None:
        if t in self.faces or (t == 0 and self.faces):
            raise StepError(f"added face {self.face(t)} is already present")
        if c in self.faces:
            raise StepError(f"added coface {self.face(c)} is already present")
        if t == 0:
            if not allow_trivial:
                raise StepError("the empty face may only expand with the trivial flag")
            if self.faces:
                raise StepError("trivial expansion needs the complex with no faces")
            return
        rest = c
        while rest:
            b = rest & -rest
            rest ^= b
            facet = c ^ b
            if facet != t and facet not in self.faces:
                raise StepError(
                    f"facet {self.face(facet)} of {self.face(c)} is missing; "
                    "only the added free face may be absent"
                )

    def apply(self, t: int, c: int, direction: str, allow_trivial: bool) -> None:
        if direction == COLLAPSE:
            self.check_collapse(t, c, allow_trivial)
            if t == 0:
                self._remove(c)
            else:
                self.collapse(t, c)
        else:
            self.check_expand(t, c, allow_trivial)
            if t == 0:
                self._insert(c)
            else:
                self.expand(t, c)


# -- public operations -------------------------------------------------


def free_faces(X: SimplicialComplex, allow_trivial: bool = False) -> list[StepPair]:
    """All currently available collapse pairs (free face, unique coface).

    The free side is contained in exactly one other face, which forces that
    face to be a facet one dimension up.  With the trivial flag, a lone
    vertex yields the pair (empty face, vertex).
    """
    pairs: list[StepPair] = []
    wb = _Workbench(X)
    for m in sorted(wb.faces):
        if wb.deg.get(m, 0) == 1:
            c = wb.unique_coface(m)
            if wb.deg.get(c, 0) == 0:
                pairs.append(StepPair(wb.face(m), wb.face(c), COLLAPSE))
    if allow_trivial and wb.is_single_vertex():
        only = next(iter(wb.faces))
        pairs.append(StepPair(EMPTY_FACE, wb.face(only), COLLAPSE))
    return pairs


def apply_step(
    X: SimplicialComplex, step: StepPair, allow_trivial: bool = False
) -> SimplicialComplex:
    """Apply one validated elementary move; the ground set never changes."""
    wb = _Workbench(X)
    t, c = wb.mask(step.free), wb.mask(step.coface)
    wb.apply(t, c, step.direction, allow_trivial)
    return wb.to_complex(X.ground_set)


def replay(
    X: SimplicialComplex, cert: Certificate, allow_trivial: bool = True
) -> SimplicialComplex:
    """Replay a certificate from its start complex, revalidating every step.

    Raises StepError if any precondition or digest fails; returns the end
    complex on success.
    """
    if digest(X) != cert.start_hash:
        raise StepError("certificate start digest does not match the complex")
    wb = _Workbench(X)
    for step in cert.steps:
        if step.direction != cert.kind:
            raise StepError("certificate mixes step directions")
        wb.apply(wb.mask(step.free), wb.mask(step.coface), step.direction, allow_trivial)
    end = wb.to_complex(X.ground_set)
    if digest(end) != cert.end_hash:
        raise StepError("certificate end digest does not match the replayed complex")
    return end


def certificate_matching(cert: Certificate) -> Matching:
    """The (acyclic) matching formed by a certificate's step pairs."""
    return Matching(frozenset((s.free, s.coface) for s in cert.steps if s.free))


def core_erosion(
    X: SimplicialComplex, rng_seed: int | None = None
) -> tuple[SimplicialComplex, bool]:
    """Exhaust top-dimensional collapses and report d-collapsibility.

    Repeatedly removes a (d-1)-face lying in exactly one d-face together
    with that d-face, until no such pair remains.  The boolean is True iff
    no d-faces survive; when False, the top-dimensional part of the residue
    is a core (every (d-1)-face of it lies in at least two d-faces), which
    certifies that no collapse order can do better.
    """
    d = X.dim
    if d < 1:
        raise InputError("erosion needs a complex of dimension at least 1")
    wb = _Workbench(X)
    rng = Random(rng_seed) if rng_seed is not None else None
    top = d + 1  # mask size of d-faces
    candidates = sorted(m for m in wb.by_size.get(top - 1, ()) if wb.deg.get(m, 0) == 1)
    while candidates:
        if rng is None:
            t = candidates.pop()
        else:
            t = candidates.pop(rng.randrange(len(candidates)))
        if wb.deg.get(t, 0) != 1 or t not in wb.faces:
            continue
        c = wb.unique_coface(t)
        wb.collapse(t, c)
        rest = c
        while rest:
            b = rest & -rest
            rest ^= b
            sub = c ^ b
            if sub != t and wb.deg.get(sub, 0) == 1:
                candidates.append(sub)
    survivors = wb.by_size.get(top, set())
    return wb.to_complex(X.ground_set), not survivors


def _greedy_collapse(wb: _Workbench, rng: Random) -> Optional[list[tuple[int, int]]]:
    """One randomized greedy run to a single vertex; None when stuck."""
    steps: list[tuple[int, int]] = []
    while True:
        if wb.is_single_vertex():
            return steps
        pairs = wb.free_pairs_at_max_dim()
        if not pairs:
            return None
        t, c = pairs[rng.randrange(len(pairs))]
        wb.collapse(t, c)
        steps.append((t, c))


def _backtrack_collapse(
    X: SimplicialComplex, node_budget: int
) -> Optional[list[tuple[int, int]]]:
    """Exhaustive search over collapse orders with memoized dead states."""
    wb = _Workbench(X)
    dead: set[frozenset[int]] = set()
    budget = [node_budget]

    def recurse() -> Optional[list[tuple[int, int]]]:
        if wb.is_single_vertex():
            return []
        state = frozenset(wb.faces)
        if state in dead or budget[0] <= 0:
            return None
        budget[0] -= 1
        for t, c in wb.free_pairs_at_max_dim():
            wb.collapse(t, c)
            tail = recurse()
            wb.expand(t, c)
            if tail is not None:
                return [(t, c)] + tail
        dead.add(state)
        return None

    return recurse()


def search_collapse(
    X: SimplicialComplex,
    rng_seed: int = 0,
    restarts: int = 64,
    backtrack: bool = True,
    backtrack_face_limit: int = 25,
    backtrack_node_budget: int = 50_000,
) -> Optional[Certificate]:
    """Look for a full collapse of X to a single vertex.

    Randomized greedy (free pairs with top-dimensional coface, uniform
    choice) with seeded restarts; optionally falls back to exhaustive
    backtracking on small complexes.  Absence of a certificate is not a
    proof of non-collapsibility.
    """
    if not X.faces_of_dim(0):
        raise InputError("collapse search needs at least one vertex")
    start = digest(X)
    rng = Random(rng_seed)
    for _ in range(max(1, restarts)):
        wb = _Workbench(X)
        steps = _greedy_collapse(wb, rng)
        if steps is not None:
            return _certificate_from_masks(X, wb, steps, start)
    faces_above_0 = len(X.faces) - X.n_faces(0) - 1
    if backtrack and 0 < faces_above_0 <= backtrack_face_limit:
        steps = _backtrack_collapse(X, backtrack_node_budget)
        if steps is not None:
            wb = _Workbench(X)
            for t, c in steps:
                wb.collapse(t, c)
            return _certificate_from_masks(X, wb, steps, start)
    return None


def _certificate_from_masks(
    X: SimplicialComplex, end_wb: _Workbench, steps: list[tuple[int, int]], start: str
) -> Certificate:
    tr = end_wb.face
    pairs = tuple(StepPair(tr(t), tr(c), COLLAPSE) for t, c in steps)
    end = digest(end_wb.to_complex(X.ground_set))
    return Certificate(COLLAPSE, pairs, start, end)


def random_discrete_morse(
    X: SimplicialComplex, rng_seed: int = 0
) -> tuple[MorseVector, Matching]:
    """Random collapses dimension by dimension, deleting a random top face
    as a critical cell whenever no free pair exists, until nothing remains.

    Returns the per-dimension critical cell counts and the acyclic matching
    of collapsed pairs.  A run returning (1, 0, ..., 0) certifies
    collapsibility.
    """
    if not X.faces_of_dim(0):
        raise InputError("the random collapse procedure needs at least one vertex")
    rng = Random(rng_seed)
    wb = _Workbench(X)
    counts = [0] * (X.dim + 1)
    pairs: list[tuple[Face, Face]] = []
    while wb.faces:
        if wb.is_single_vertex():
            counts[0] += 1
            only = next(iter(wb.faces))
            wb._remove(only)
            continue
        free = wb.free_pairs_at_max_dim()
        if free:
            t, c = free[rng.randrange(len(free))]
            wb.collapse(t, c)
            pairs.append((wb.face(t), wb.face(c)))
        else:
            top = sorted(wb.by_size[wb.max_size()])
            victim = top[rng.randrange(len(top))]
            counts[victim.bit_count() - 1] += 1
            wb._remove(victim)
    return MorseVector(tuple(counts)), Matching(frozenset(pairs))


def verify_matching_acyclic(X: SimplicialComplex, matching: Matching) -> bool:
    """Decide acyclicity of the orientation induced by a matching.

    Unmatched cover edges point up and matched ones point down; a directed
    cycle must then alternate matched and unmatched edges between two
    consecutive dimensions (down-edges are never adjacent, and a cycle with
    as many ups as downs and no two adjacent downs alternates strictly).
    So it suffices to search the pair graph: pair p reaches pair q when the
    free face of p lies in the coface of q.
    """
    by_coface: dict[Face, int] = {}
    pair_list = sorted(matching.pairs)
    for idx, (low, high) in enumerate(pair_list):
        if low not in X.faces or high not in X.faces:
            raise InputError(f"pair ({low}, {high}) is not a face pair of the complex")
        by_coface[high] = idx
    succ: list[list[int]] = []
    for low, high in pair_list:
        out = []
        for v in X.ground_set - set(low):
            other = tuple(sorted(low + (v,)))
            if other != high and other in by_coface:
                out.append(by_coface[other])
        succ.append(out)
    color = [0] * len(pair_list)  # 0 new, 1 active, 2 done
    for root in range(len(pair_list)):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return False
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(succ[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return True


# -- non-evasiveness ---------------------------------------------------

# Shared across calls; plain dict reads and single-key inserts are atomic
# under the interpreter lock, which is all the recursion needs.
_NONEVASIVE_MEMO: dict[tuple, bool] = {}
_CANON_BRUTE_LIMIT = 20_160  # brute-force permutation budget per call


def _canonical_key(X: SimplicialComplex) -> tuple:
    """A deterministic relabeled facet list, shared by isomorphic complexes
    whenever the refinement plus bounded brute force finds the true minimum.
    Key equality always implies isomorphism, so memoization stays sound.
    """
    support = sorted(X.support)
    facets = X.facets()
    if not support:
        return ("trivial", len(X.faces))
    neighbors: dict[int, set[int]] = {v: set() for v in support}
    for (u, v) in X.faces_of_dim(1):
        neighbors[u].add(v)
        neighbors[v].add(u)
    inv: dict[int, tuple] = {
        v: tuple(sorted(len(f) for f in facets if v in f)) for v in support
    }
    for _ in range(2):
        inv = {
            v: (inv[v], tuple(sorted(inv[u] for u in neighbors[v])))
            for v in support
        }
    groups: dict[tuple, list[int]] = {}
    for v in support:
        groups.setdefault(inv[v], []).append(v)
    ordered_groups = [sorted(groups[k]) for k in sorted(groups)]
    total = 1
    for g in ordered_groups:
        for i in range(2, len(g) + 1):
            total *= i
        if total > _CANON_BRUTE_LIMIT:
            break
    if total <= _CANON_BRUTE_LIMIT:
        best = None
        for perm_parts in _group_orders(ordered_groups):
            labels = {v: i + 1 for i, v in enumerate(perm_parts)}
            key = tuple(sorted(tuple(sorted(labels[v] for v in f)) for f in facets))
            if best is None or key < best:
                best = key
        return ("facets", best)
    flat = [v for g in ordered_groups for v in g]
    labels = {v: i + 1 for i, v in enumerate(flat)}
    return (
        "facets",
        tuple(sorted(tuple(sorted(labels[v] for v in f)) for f in facets)),
    )


def _group_orders(groups: list[list[int]]):
    if not groups:
        yield []
        return
    head, tail = groups[0], groups[1:]
    for rest in _group_orders(tail):
        for perm in permutations(head):
            yield list(perm) + rest


def is_non_evasive(X: SimplicialComplex) -> bool:
    """Recursive vertex-elimination test.

    A single vertex passes; otherwise some vertex must have both its link
    and its deletion pass recursively.  Memoized on a canonical relabeling
    so isomorphic sub-instances are solved once.
    """
    support = X.support
    if not support:
        return False
    if len(support) == 1:
        return True
    if len(X.facets()) == 1:
        return True  # a simplex is a cone
    key = _canonical_key(X)
    cached = _NONEVASIVE_MEMO.get(key)
    if cached is not None:
        return cached
    result = False
    for v in sorted(support):
        lk, dl = link_and_del(X, v)
        if is_non_evasive(lk) and is_non_evasive(dl):
            result = True
            break
    _NONEVASIVE_MEMO[key] = result
    return result
