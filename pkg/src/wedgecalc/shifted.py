"""Shifted complexes: the shift condition, order search, and the filtration
that adds one maximal face at a time to the star of the minimal vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .complex import (
    Face,
    SimplicialComplex,
    as_face,
    face_key,
    from_mask,
    to_mask,
)
from .errors import BoundaryNotInLink, NotShifted, TooManyVertices

#: Default search budget, 9! orders.
DEFAULT_PERM_LIMIT = math.factorial(9)

Witness = tuple[Face, int, int]


@dataclass(frozen=True)
class ShiftCheck:
    """Verdict of the shift condition; truthy iff shifted."""

    shifted: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.shifted


def is_shifted(K: SimplicialComplex, order: Sequence[int] | None = None) -> ShiftCheck:
    """Check the shift condition under ``order`` (labels listed smallest first).

    On failure the witness ``(sigma, nu, nu_prime)`` names a face ``sigma``,
    a vertex ``nu`` of it and a smaller vertex ``nu_prime`` such that
    ``(sigma - nu) + nu_prime`` is not a face.
    """
    order = K.vertices if order is None else tuple(order)
    if sorted(order) != list(K.vertices):
        raise ValueError(f"order {list(order)} is not a permutation of {list(K.vertices)}")
    rank = {v: i for i, v in enumerate(order)}
    for fmask in K.face_masks():
        if not fmask:
            continue
        sigma = from_mask(fmask)
        for nu in sorted(sigma, key=rank.__getitem__):
            base = fmask & ~(1 << nu)
            for nu_prime in order[: rank[nu]]:
                bit = 1 << nu_prime
                if fmask & bit:
                    continue
                if not K.contains_mask(base | bit):
                    return ShiftCheck(False, (sigma, nu, nu_prime))
    return ShiftCheck(True)


def _face_degrees(K: SimplicialComplex) -> dict[int, int]:
    deg = dict.fromkeys(K.vertices, 0)
    for m in K.face_masks():
        for v in from_mask(m):
            deg[v] += 1
    return deg


def _candidate_orders(K: SimplicialComplex, prune: bool) -> Iterator[tuple[int, ...]]:
    if not prune:
        yield from permutations(K.vertices)
        return
    # an earlier vertex lies in at least as many faces as a later one, so only
    # orders with non-increasing face degree can be shifted
    deg = _face_degrees(K)
    levels = sorted(set(deg.values()), reverse=True)
    groups = [sorted(v for v in K.vertices if deg[v] == d) for d in levels]
    # each group occupies a fixed block of positions, so the product runs in
    # lexicographic order of the concatenated tuple
    for parts in product(*(permutations(g) for g in groups)):
        yield tuple(v for part in parts for v in part)


def find_shifted_order(
    K: SimplicialComplex,
    perm_limit: int = DEFAULT_PERM_LIMIT,
    *,
    prune: bool = True,
) -> tuple[int, ...] | None:
    """Lexicographically least vertex order under which ``K`` is shifted."""
    n = K.n_vertices
    if math.factorial(n) > perm_limit:
        raise TooManyVertices(
            f"{n}! orders exceed the search limit {perm_limit}", n=n, limit=perm_limit
        )
    for order in _candidate_orders(K, prune):
        if is_shifted(K, order):
            return order
    return None


@dataclass(frozen=True)
class Filtration:
    vertex: int
    base: SimplicialComplex
    steps: tuple[Face, ...] = field(default=())


def filtration(K: SimplicialComplex, *, check: bool = True) -> Filtration:
    """Link of the minimal vertex plus the maximal faces still to be adjoined.

    Steps are sorted lexicographically.  Each step's codimension-one faces
    must already lie in the link; a failure there raises
    :class:`BoundaryNotInLink`.
    """
    if check:
        verdict = is_shifted(K)
        if not verdict:
            raise NotShifted("complex is not shifted in its label order", witness=verdict.witness)
    v = K.vertices[0]
    base = K.link([v])
    rest = K.restriction(K.vertices[1:])
    steps = tuple(
        sorted((from_mask(m) for m in rest.maximal_masks if not base.contains_mask(m)))
    )
    for tau in steps:
        tmask = to_mask(tau)
        for u in tau:
            if not base.contains_mask(tmask & ~(1 << u)):
                raise BoundaryNotInLink(
                    f"facet of {list(tau)} missing from link({v})", face=tau, vertex=v
                )
    return Filtration(v, base, steps)


# -- generators -------------------------------------------------------------


def shift_closure(n: int, generators: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Smallest complex on ``1..n`` shifted in natural order containing the
    generators and every singleton.

    A face is in the closure iff it is dominated componentwise (both sorted)
    by a subset of some generator, so closing under "subset" and "replace a
    vertex by any smaller one" reaches everything.
    """
    verts = tuple(range(1, n + 1))
    gens = {as_face(g) for g in generators} | {(v,) for v in verts}
    found: set[Face] = set()
    stack = list(gens)
    while stack:
        f = stack.pop()
        if f in found:
            continue
        found.add(f)
        fs = set(f)
        for i, nu in enumerate(f):
            stack.append(f[:i] + f[i + 1 :])
            for smaller in range(1, nu):
                if smaller not in fs:
                    stack.append(tuple(sorted(fs - {nu} | {smaller})))
    return SimplicialComplex(verts, (to_mask(f) for f in found))


def shifted_complexes(n: int) -> list[SimplicialComplex]:
    """Every complex on ``1..n`` containing all singletons and shifted in
    natural order, found by breadth-first face addition.
    """
    verts = tuple(range(1, n + 1))
    start = SimplicialComplex(verts, (1 << v for v in verts))
    all_subsets = [to_mask(c) for k in range(2, n + 1) for c in combinations(verts, k)]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for K in frontier:
            for s in all_subsets:
                if K.contains_mask(s):
                    continue
                # s can be added iff all its facets and all its down-shifts are faces
                if not _addable(K, s):
                    continue
                L = SimplicialComplex(verts, K.maximal_masks + (s,))
                if L not in seen:
                    seen.add(L)
                    nxt.append(L)
        frontier = nxt
    return sorted(seen, key=lambda K: (len(K.face_masks()), [face_key(f) for f in K.maximal_faces]))


def _addable(K: SimplicialComplex, s: int) -> bool:
    face = from_mask(s)
    for nu in face:
        below = s & ~(1 << nu)
        if not K.contains_mask(below):
            return False
        for smaller in range(1, nu):
            bit = 1 << smaller
            if s & bit:
                continue
            if not K.contains_mask(below | bit):
                return False
    return True


def random_shifted_complex(
    n: int, rng: random.Random, *, n_generators: int | None = None
) -> SimplicialComplex:
    """Shift closure of a few random faces on ``1..n``."""
    if n_generators is None:
        n_generators = rng.randint(0, 3)
    gens = []
    for _ in range(n_generators):
        size = rng.randint(1, n)
        gens.append(rng.sample(range(1, n + 1), size))
    return shift_closure(n, gens)


def count_orders(K: SimplicialComplex) -> int:
    return math.factorial(K.n_vertices)
