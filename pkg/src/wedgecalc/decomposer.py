"""Inductive wedge decomposition of ``(CX, X)^K``.

For a shifted complex the minimal vertex ``v`` has a star that is a cone on
its link, so the polyhedral product of the star has the homotopy type of
the one for the link.  The remaining maximal faces of ``K`` away from ``v``
are then adjoined one at a time.  Adjoining ``I`` adds the summands of
``((X_I joined) ∗ X_v) ⋊ X̄``, where ``X̄`` is the product over the vertices
outside ``I ∪ {v}``, and deals with each summand of ``(X_I joined) ⋊ X̄``
according to the attaching map: summands on which it is essential split off
and are removed, the others are null and contribute their suspension.
Which case occurs is decided by whether the boundary of ``I`` already
bounds in the matching full subcomplex.

Isolated vertices are split off first and recombined with the gluing
formula along the empty face.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from .algebra import (
    EMPTY,
    Decomposition,
    Summand,
    half_smash_expand,
    left_half_smash_expand,
    product_join_expand,
    relabel,
    subtract,
    substitute_join,
)
from .complex import Face, SimplicialComplex, as_face, simplicial_wedge, to_mask
from .errors import KOutOfRange, NotShifted, OverlapNotTau
from .shifted import filtration, find_shifted_order, is_shifted

BASE_CASE = "base-case"
CONE_REDUCTION = "cone-reduction"
ADJOIN_FACE = "adjoin-face"
SPLIT_ISOLATED = "split-isolated"
GLUE = "glue"


@dataclass(frozen=True)
class TraceRecord:
    complex_id: str
    action: str
    face: Face | None
    state_before: Decomposition
    subtracted: Decomposition
    added: Decomposition
    state_after: Decomposition

    def to_json(self) -> dict:
        return {
            "complex": self.complex_id,
            "action": self.action,
            "face": list(self.face) if self.face is not None else None,
            "state_before": self.state_before.to_json(),
            "subtracted": self.subtracted.to_json(),
            "added": self.added.to_json(),
            "state_after": self.state_after.to_json(),
        }


@dataclass
class Trace:
    records: list[TraceRecord] = field(default_factory=list)

    def add(self, *args) -> TraceRecord:
        rec = TraceRecord(*args)
        self.records.append(rec)
        return rec

    def for_complex(self, complex_id: str) -> list[TraceRecord]:
        return [r for r in self.records if r.complex_id == complex_id]

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.records]


def replay(records: Sequence[TraceRecord]) -> Decomposition:
    """Re-run a chain of records for one complex from its first state."""
    state = records[0].state_before
    for rec in records:
        state = (state - rec.subtracted) + rec.added
    return state


# -- closed forms -----------------------------------------------------------


def closed_form_skeleton(labels: Iterable[int], k: int) -> Decomposition:
    """Decomposition for the full k-skeleton of the simplex on ``labels``."""
    labels = as_face(labels)
    n = len(labels)
    if not 0 <= k <= n - 2:
        raise KOutOfRange(f"k={k} outside [0, {n - 2}]", k=k, n=n)
    return Decomposition(
        {
            Summand(k + 1, I): comb(j - 1, k + 1)
            for j in range(k + 2, n + 1)
            for I in combinations(labels, j)
        }
    )


def closed_form_boundary(labels: Iterable[int]) -> Decomposition:
    labels = as_face(labels)
    return Decomposition([Summand(len(labels) - 1, labels)])


def closed_form_disjoint_points(labels: Iterable[int]) -> Decomposition:
    labels = as_face(labels)
    return Decomposition(
        {Summand(1, I): j - 1 for j in range(2, len(labels) + 1) for I in combinations(labels, j)}
    )


# -- elementary steps -------------------------------------------------------


def _in_span(columns: list[dict[int, int]], target: dict[int, int]) -> bool:
    """Exact test that ``target`` is a rational combination of ``columns``."""
    basis: dict[int, dict[int, int]] = {}  # pivot row -> reduced vector

    def reduce(vec: dict[int, int]) -> dict[int, int]:
        vec = dict(vec)
        while vec:
            piv = min(vec)
            if piv not in basis:
                return vec
            b = basis[piv]
            a, c = vec[piv], b[piv]
            out = {}
            for key in vec.keys() | b.keys():
                val = c * vec.get(key, 0) - a * b.get(key, 0)
                if val:
                    out[key] = val
            g = gcd(*out.values()) if out else 1
            vec = {key: val // g for key, val in out.items()}
        return vec

    for col in columns:
        r = reduce(col)
        if r:
            basis[min(r)] = r
    return not reduce(target)


def boundary_cycle_bounds(L: SimplicialComplex, tau: Sequence[int]) -> bool:
    """Whether the boundary sphere of ``tau`` bounds in ``L`` (rationally).

    ``L`` must contain every facet of ``tau``.  Edges reduce to a
    connectivity question; larger faces use an exact span test on the
    boundary map one dimension up.
    """
    tau = tuple(tau)
    k = len(tau)
    if k == 2:
        parent = {v: v for v in L.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in L.faces_of_dim(1):
            parent[find(f[0])] = find(f[1])
        return find(tau[0]) == find(tau[1])
    rows = {f: i for i, f in enumerate(L.faces_of_dim(k - 2))}
    columns = []
    for f in L.faces_of_dim(k - 1):
        columns.append({rows[f[:i] + f[i + 1 :]]: (-1) ** i for i in range(k)})
    target = {rows[tau[:i] + tau[i + 1 :]]: (-1) ** i for i in range(k)}
    return _in_span(columns, target)


def adjoin_step(
    state: Decomposition,
    v: int,
    tau: Iterable[int],
    V: Iterable[int],
    *,
    complex_before: SimplicialComplex | None = None,
) -> tuple[Decomposition, Decomposition, Decomposition]:
    """Adjoin the face ``tau`` to a complex whose star at ``v`` is already in place.

    The new state is the cofibre ``D`` of ``(X_tau joined) ⋊ X̄ -> state``
    wedged with ``((X_tau joined) ∗ X_v) ⋊ X̄``.  The source splits into
    summands ``⟨k-1; tau ∪ S⟩`` for ``S`` inside the complement.  Without
    ``complex_before`` every one of them is assumed to split off ``state``.
    Given the complex before the step, a summand whose boundary cycle
    already bounds in the full subcomplex on ``tau ∪ S`` maps trivially,
    and its suspension goes into the cofibre instead.

    Returns ``(new_state, subtracted, added)``.
    """
    tau = as_face(tau)
    V = set(V)
    if len(tau) < 2:
        raise ValueError(f"adjoined face {list(tau)} needs at least two vertices")
    if v in tau or v > tau[0] or not set(tau) <= V:
        raise ValueError(f"vertex {v} and face {list(tau)} do not fit the vertex set")
    k = len(tau)
    rest = sorted(V - {v} - set(tau))
    source = half_smash_expand(Summand(k - 1, tau), rest)
    add = half_smash_expand(Summand.of(k, tau + (v,)), rest)
    if complex_before is None:
        return subtract(state, source) + add, source, add
    split, null = [], []
    for s in source:
        L = complex_before.restriction(s.indices)
        if boundary_cycle_bounds(L, tau):
            null.append(Summand(s.suspension + 1, s.indices))
        else:
            split.append(s)
    sub = Decomposition(split)
    added = add + Decomposition(null)
    return subtract(state, sub) + added, sub, added


def decompose_glued(
    d1: Decomposition,
    d2: Decomposition,
    V1: Iterable[int],
    V2: Iterable[int],
    tau: Iterable[int],
) -> Decomposition:
    """Decomposition of ``K1 ∪_tau K2`` from decompositions of the pieces."""
    tau = set(as_face(tau))
    V1, V2 = set(V1), set(V2)
    if V1 & V2 != tau:
        raise OverlapNotTau(
            "vertex sets must meet exactly in tau", shared=sorted(V1 & V2), tau=sorted(tau)
        )
    M = sorted(V1 - tau)
    N = sorted(V2 - tau)
    out = EMPTY
    if M and N:
        out = out + product_join_expand(M, N)
    out = out + left_half_smash_expand(N, d1)
    out = out + left_half_smash_expand(M, d2)
    return out


# -- main recursion ---------------------------------------------------------


def _cid(K: SimplicialComplex) -> str:
    return "K[" + ",".join(map(str, K.vertices)) + "]"


def _decompose(
    K: SimplicialComplex, trace: Trace, rng: random.Random | None, assume_split: bool = False
) -> Decomposition:
    cid = _cid(K)
    if K.n_vertices <= 1 or K.is_simplex():
        trace.add(cid, BASE_CASE, None, EMPTY, EMPTY, EMPTY, EMPTY)
        return EMPTY

    iso = K.isolated_vertices()
    if iso:
        if len(iso) == K.n_vertices:
            result = closed_form_disjoint_points(iso)
            trace.add(cid, BASE_CASE, None, EMPTY, EMPTY, result, result)
            return result
        core_vertices = tuple(v for v in K.vertices if v not in iso)
        core = _decompose(K.restriction(core_vertices), trace, rng, assume_split)
        result = decompose_glued(core, closed_form_disjoint_points(iso), core_vertices, iso, ())
        trace.add(cid, SPLIT_ISOLATED, iso, core, core, result, result)
        return result

    filt = filtration(K, check=False)
    state = _decompose(filt.base, trace, rng, assume_split)
    trace.add(cid, CONE_REDUCTION, (filt.vertex,), state, EMPTY, EMPTY, state)
    steps = list(filt.steps)
    if rng is not None:
        rng.shuffle(steps)
    current = K.star([filt.vertex])
    for tau in steps:
        new, sub, add = adjoin_step(
            state, filt.vertex, tau, K.vertices,
            complex_before=None if assume_split else current,
        )
        current = SimplicialComplex(current.vertices, current.maximal_masks + (to_mask(tau),))
        trace.add(cid, ADJOIN_FACE, tau, state, sub, add, new)
        state = new
    return state


def decompose(
    K: SimplicialComplex,
    *,
    order: Sequence[int] | None = None,
    rng: random.Random | None = None,
    assume_split: bool = False,
) -> tuple[Decomposition, Trace]:
    """Decompose ``(CX, X)^K`` for a shifted complex.

    ``K`` must be shifted in the natural order of its labels unless
    ``order`` (labels smallest first) names another shifted order.  With
    ``rng`` the filtration steps are adjoined in a random order.
    """
    K.require_singletons()
    if order is not None:
        order = tuple(order)
        verdict = is_shifted(K, order)
        if not verdict:
            raise NotShifted("complex is not shifted in the given order", witness=verdict.witness, order=order)
        forward = dict(zip(order, K.vertices))
        if any(a != b for a, b in forward.items()):
            backward = {b: a for a, b in forward.items()}
            d, trace = decompose(K.relabel(forward), rng=rng, assume_split=assume_split)
            return relabel(d, backward), trace
    else:
        verdict = is_shifted(K)
        if not verdict:
            raise NotShifted(
                "complex is not shifted in its label order; try find_shifted_order or bbcg",
                witness=verdict.witness,
            )
    trace = Trace()
    return _decompose(K, trace, rng, assume_split), trace


def decompose_any_order(K: SimplicialComplex, **kwargs) -> tuple[Decomposition, Trace]:
    """Like :func:`decompose`, searching for a shifted order when needed."""
    if is_shifted(K):
        return decompose(K, **kwargs)
    order = find_shifted_order(K)
    if order is None:
        raise NotShifted("complex is not shifted under any vertex order; try bbcg")
    return decompose(K, order=order, **kwargs)


def decompose_wedge_construction(
    K: SimplicialComplex,
    J: Mapping[int, int] | Sequence[int],
    *,
    base: Decomposition | None = None,
) -> tuple[Decomposition, SimplicialComplex, dict[int, Face]]:
    """Decomposition of ``(CX, X)^{K(J)}`` by substituting joins into that of ``K``.

    ``base`` may supply a decomposition of ``K`` obtained some other way
    (for instance by gluing); otherwise ``K`` has to be shifted.
    Returns the decomposition, ``K(J)`` and the vertex-copy map.
    """
    KJ, label_map = simplicial_wedge(K, J)
    if base is None:
        base, _ = decompose_any_order(K)
    return substitute_join(base, label_map), KJ, label_map
