"""Finite simplicial complexes on labelled vertex sets.

Faces are stored as integer bitmasks where bit ``v`` stands for vertex
label ``v``; a complex keeps only its maximal faces and materializes the
full face list on demand.  Every subset test, restriction, star and link
runs off the maximal faces, so large complexes stay cheap until someone
asks for all faces.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateVertexInFace,
    FaceNotInComplex,
    KOutOfRange,
    MissingMultiplicity,
    MissingSingleton,
    NonpositiveMultiplicity,
    OverlapNotExactlyTau,
    TooManyVertices,
    VertexOutOfRange,
    VertexSetsOverlap,
)

Face = tuple[int, ...]

#: Above this many faces the full face list is never materialized.
FACE_LIMIT = 1 << 20


def to_mask(labels: Iterable[int]) -> int:
    m = 0
    for v in labels:
        m |= 1 << v
    return m


def from_mask(mask: int) -> Face:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def as_face(labels: Iterable[int]) -> Face:
    """Validate and sort a collection of vertex labels into a face."""
    items = list(labels)
    for v in items:
        if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
            raise VertexOutOfRange(f"vertex label {v!r} is not a positive integer", vertex=v)
    face = tuple(sorted(items))
    if len(set(face)) != len(face):
        raise DuplicateVertexInFace(f"face {items} repeats a vertex", face=items)
    return face


def face_key(face: Sequence[int]) -> tuple[int, Face]:
    """Canonical face order: by cardinality, then lexicographically."""
    return (len(face), tuple(face))


def _maximal(masks: Iterable[int]) -> tuple[int, ...]:
    kept: list[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & k == m for k in kept):
            kept.append(m)
    if not kept:
        kept = [0]
    return tuple(sorted(kept, key=lambda m: face_key(from_mask(m))))


class SimplicialComplex:
    """An immutable simplicial complex.

    ``vertices`` is the ambient vertex set; it may contain labels that are
    not faces of the complex (ghost vertices).  The empty face is always
    present, so the smallest complex is ``{∅}``.
    """

    __slots__ = ("_vertices", "_vmask", "_max", "_faces")

    def __init__(self, vertices: Iterable[int], maximal_masks: Iterable[int]):
        verts = as_face(vertices)
        vmask = to_mask(verts)
        masks = _maximal(maximal_masks)
        for m in masks:
            if m & ~vmask:
                raise VertexOutOfRange(
                    f"face {list(from_mask(m))} uses vertices outside {list(verts)}",
                    face=from_mask(m),
                    vertices=verts,
                )
        self._vertices: Face = verts
        self._vmask = vmask
        self._max = masks
        self._faces: tuple[int, ...] | None = None

    # -- basic data ---------------------------------------------------------

    @property
    def vertices(self) -> Face:
        return self._vertices

    @property
    def vertex_mask(self) -> int:
        return self._vmask

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def maximal_masks(self) -> tuple[int, ...]:
        return self._max

    @property
    def maximal_faces(self) -> list[Face]:
        return [from_mask(m) for m in self._max]

    @property
    def dim(self) -> int:
        return max(popcount(m) for m in self._max) - 1

    def face_masks(self) -> tuple[int, ...]:
        """Every face as a mask, in canonical order (∅ first)."""
        if self._faces is None:
            if sum(1 << popcount(m) for m in self._max) > 4 * FACE_LIMIT:
                raise TooManyVertices("complex too large to enumerate all faces", limit=FACE_LIMIT)
            found: set[int] = set()
            for m in self._max:
                found.update(submasks(m))
            if len(found) > FACE_LIMIT:
                raise TooManyVertices("complex too large to enumerate all faces", limit=FACE_LIMIT)
            self._faces = tuple(sorted(found, key=lambda f: face_key(from_mask(f))))
        return self._faces

    @property
    def faces(self) -> list[Face]:
        return [from_mask(m) for m in self.face_masks()]

    def faces_of_dim(self, d: int) -> list[Face]:
        return [from_mask(m) for m in self.face_masks() if popcount(m) == d + 1]

    def f_vector(self) -> list[int]:
        """Face counts by cardinality 1, 2, ... (the empty face is omitted)."""
        counts = [0] * (self.dim + 1)
        for m in self.face_masks():
            if m:
                counts[popcount(m) - 1] += 1
        return counts

    def contains_mask(self, mask: int) -> bool:
        return any(mask & m == mask for m in self._max)

    def __contains__(self, face: Iterable[int]) -> bool:
        return self.contains_mask(to_mask(face))

    def is_simplex(self) -> bool:
        """True when the complex is the full simplex on its vertex set."""
        return self._max == (self._vmask,)

    def missing_singletons(self) -> Face:
        return tuple(v for v in self._vertices if not self.contains_mask(1 << v))

    def require_singletons(self) -> None:
        missing = self.missing_singletons()
        if missing:
            raise MissingSingleton(f"vertices {list(missing)} are not faces", vertices=missing)

    # -- constructions ------------------------------------------------------

    def restriction(self, labels: Iterable[int]) -> SimplicialComplex:
        """Full subcomplex on ``labels``."""
        labels = as_face(labels)
        smask = to_mask(labels)
        if smask & ~self._vmask:
            raise VertexOutOfRange("restriction set not inside the vertex set", labels=labels)
        return SimplicialComplex(labels, (m & smask for m in self._max))

    def _check_face(self, sigma: Iterable[int]) -> int:
        smask = to_mask(as_face(sigma))
        if not self.contains_mask(smask):
            raise FaceNotInComplex(f"{list(from_mask(smask))} is not a face", face=from_mask(smask))
        return smask

    def star(self, sigma: Iterable[int]) -> SimplicialComplex:
        smask = self._check_face(sigma)
        return SimplicialComplex(self._vertices, (m for m in self._max if m & smask == smask))

    def link(self, sigma: Iterable[int]) -> SimplicialComplex:
        smask = self._check_face(sigma)
        verts = from_mask(self._vmask & ~smask)
        return SimplicialComplex(verts, (m & ~smask for m in self._max if m & smask == smask))

    def isolated_vertices(self) -> Face:
        """Vertices that are faces but lie in no edge."""
        return tuple(v for v in self._vertices if (1 << v) in self._max)

    def relabel(self, mapping: Mapping[int, int]) -> SimplicialComplex:
        """Rename vertices through an injective map."""
        new_verts = [mapping[v] for v in self._vertices]
        if len(set(new_verts)) != len(new_verts):
            raise DuplicateVertexInFace("relabeling is not injective", mapping=dict(mapping))
        return SimplicialComplex(
            new_verts, (to_mask(mapping[v] for v in from_mask(m)) for m in self._max)
        )

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._vmask == other._vmask and self._max == other._max

    def __hash__(self) -> int:
        return hash((self._vmask, self._max))

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={list(self._vertices)}, maximal_faces={[list(f) for f in self.maximal_faces]})"

    def to_json(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "maximal_faces": [list(f) for f in self.maximal_faces if f],
        }


# -- constructors -------------------------------------------------------------


def build_complex(
    vertex_set: Iterable[int], generating_faces: Iterable[Iterable[int]] = ()
) -> SimplicialComplex:
    """Downward closure of ``generating_faces`` on ``vertex_set``.

    >>> build_complex({1, 2}, [(1, 2)]).faces
    [(), (1,), (2,), (1, 2)]
    """
    verts = as_face(vertex_set)
    vmask = to_mask(verts)
    masks = []
    for gen in generating_faces:
        face = as_face(gen)
        m = to_mask(face)
        if m & ~vmask:
            raise VertexOutOfRange(
                f"face {list(face)} has vertices outside {list(verts)}", face=face, vertices=verts
            )
        masks.append(m)
    return SimplicialComplex(verts, masks)


def star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    return K.star(sigma)


def link(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    return K.link(sigma)


def restriction(K: SimplicialComplex, labels: Iterable[int]) -> SimplicialComplex:
    return K.restriction(labels)


def isolated_vertices(K: SimplicialComplex) -> Face:
    return K.isolated_vertices()


def join_complexes(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.vertex_mask & K2.vertex_mask:
        raise VertexSetsOverlap(
            "join needs disjoint vertex sets",
            shared=from_mask(K1.vertex_mask & K2.vertex_mask),
        )
    return SimplicialComplex(
        K1.vertices + K2.vertices, (a | b for a in K1.maximal_masks for b in K2.maximal_masks)
    )


def simplex(labels: Iterable[int]) -> SimplicialComplex:
    labels = as_face(labels)
    return SimplicialComplex(labels, [to_mask(labels)])


def cone(K: SimplicialComplex, v: int) -> SimplicialComplex:
    return join_complexes(K, simplex([v]))


def skeleton(labels: Iterable[int], k: int) -> SimplicialComplex:
    """All faces of cardinality at most ``k + 1`` on ``labels``."""
    labels = as_face(labels)
    if not -1 <= k <= len(labels) - 1:
        raise KOutOfRange(f"k={k} outside [-1, {len(labels) - 1}]", k=k, n=len(labels))
    return SimplicialComplex(labels, (to_mask(c) for c in combinations(labels, k + 1)))


def boundary_simplex(labels: Iterable[int]) -> SimplicialComplex:
    labels = as_face(labels)
    return skeleton(labels, len(labels) - 2)


def disjoint_points(labels: Iterable[int]) -> SimplicialComplex:
    labels = as_face(labels)
    return SimplicialComplex(labels, (1 << v for v in labels))


def glue(K1: SimplicialComplex, K2: SimplicialComplex, tau: Iterable[int]) -> SimplicialComplex:
    """Union of ``K1`` and ``K2`` along the common face ``tau``.

    The vertex sets must meet exactly in ``tau``; ``tau = ()`` gives the
    disjoint union.
    """
    tau = as_face(tau)
    tmask = to_mask(tau)
    shared = K1.vertex_mask & K2.vertex_mask
    if shared != tmask:
        raise OverlapNotExactlyTau(
            "vertex sets must intersect exactly in tau",
            shared=from_mask(shared),
            tau=tau,
        )
    for K in (K1, K2):
        if not K.contains_mask(tmask):
            raise FaceNotInComplex(f"tau {list(tau)} is not a face of both complexes", face=tau)
    # with shared vertices equal to tau and tau a face of each, the common
    # faces are exactly the subsets of tau
    return SimplicialComplex(
        from_mask(K1.vertex_mask | K2.vertex_mask), K1.maximal_masks + K2.maximal_masks
    )


def double_vertex(K: SimplicialComplex, v: int, new: int) -> SimplicialComplex:
    """Simplicial wedge on ``v``: the copies are ``v`` itself and ``new``.

    K(v) = (v, new) * link(v)  ∪  {v, new} * rest(v).
    """
    if new in K.vertices:
        raise VertexSetsOverlap(f"label {new} already used", label=new)
    if not K.contains_mask(1 << v):
        raise MissingSingleton(f"vertex {v} is not a face", vertices=(v,))
    a, b = 1 << v, 1 << new
    lk = K.link([v])
    rest = K.restriction([u for u in K.vertices if u != v])
    masks = [m | a | b for m in lk.maximal_masks]
    masks += [m | a for m in rest.maximal_masks] + [m | b for m in rest.maximal_masks]
    return SimplicialComplex(K.vertices + (new,), masks)


def wedge_label_map(vertices: Sequence[int], J: Mapping[int, int] | Sequence[int]) -> dict[int, Face]:
    """Consecutive relabeling: vertex ``v`` gets ``J[v]`` fresh labels, blocks in vertex order."""
    vertices = as_face(vertices)
    if not isinstance(J, Mapping):
        J = list(J)
        if len(J) != len(vertices):
            raise MissingMultiplicity(
                f"expected {len(vertices)} multiplicities, got {len(J)}", expected=len(vertices)
            )
        J = dict(zip(vertices, J))
    label_map: dict[int, Face] = {}
    nxt = 1
    for v in vertices:
        if v not in J:
            raise MissingMultiplicity(f"no multiplicity for vertex {v}", vertex=v)
        j = J[v]
        if isinstance(j, bool) or not isinstance(j, int) or j <= 0:
            raise NonpositiveMultiplicity(f"multiplicity {j!r} for vertex {v}", vertex=v, value=j)
        label_map[v] = tuple(range(nxt, nxt + j))
        nxt += j
    return label_map


def simplicial_wedge(
    K: SimplicialComplex, J: Mapping[int, int] | Sequence[int]
) -> tuple[SimplicialComplex, dict[int, Face]]:
    """Iterated simplicial wedge K(J).

    Returns the new complex together with the map from each old vertex to
    the tuple of its copies.  ``J`` is either a mapping or a sequence
    aligned with ``K.vertices``.
    """
    label_map = wedge_label_map(K.vertices, J)
    K.require_singletons()
    out = K.relabel({v: copies[0] for v, copies in label_map.items()})
    for copies in label_map.values():
        for prev, new in zip(copies, copies[1:]):
            out = double_vertex(out, prev, new)
    return out, label_map
