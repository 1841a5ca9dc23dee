"""Integer simplicial homology and the full-subcomplex wedge formula.

Homology comes from Smith normal forms of the augmented boundary maps,
computed exactly over Python integers.  :func:`bbcg` then reads each
missing vertex set ``I`` of ``K`` as contributing ``β̃_d(K_I)`` copies of
``Σ^{d+1} X̂^I``.  This path shares no code with the inductive decomposer
and serves as its oracle.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Decomposition, Summand
from .complex import SimplicialComplex, from_mask, popcount, submasks
from .errors import TooManyVertices, TorsionInShiftedComplex, TorsionPresent, VoidComplex
from .shifted import find_shifted_order

DEFAULT_MAX_VERTICES = 20
EXACT_CHECK_MAX_N = 9

EXACT = "exact"
SUSPENDED_ONLY = "suspended-only"


# -- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]
    """Nonzero invariant factors d1 | d2 | ..., all positive."""

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def _diagonalize(rows: list[dict[int, int]]) -> list[int]:
    """Reduce a sparse integer matrix to diagonal form, destroying ``rows``.

    Pivot on an entry of least magnitude, clear its column with row
    operations and its row with column operations.  Once the pivot column is
    clear, column operations only touch the pivot row, so the row and column
    can be dropped without updating anything else.
    """
    cols: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            cols.setdefault(c, set()).add(r)
    live = {r for r, row in enumerate(rows) if row}
    diag: list[int] = []

    def set_entry(r: int, c: int, val: int) -> None:
        row = rows[r]
        if val:
            row[c] = val
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            bucket = cols.get(c)
            if bucket is not None:
                bucket.discard(r)
                if not bucket:
                    del cols[c]

    while live:
        # least magnitude pivot, stopping early at a unit
        best = None
        for r in live:
            for c, v in rows[r].items():
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, r, c)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pr, pc = best
        while True:
            p = rows[pr][pc]
            # clear the pivot column
            dirty = False
            for r in list(cols.get(pc, ())):
                if r == pr:
                    continue
                q = rows[r][pc] // p
                if q:
                    for c, v in list(rows[pr].items()):
                        set_entry(r, c, rows[r].get(c, 0) - q * v)
                if rows[r].get(pc, 0):
                    dirty = True
                    pr_new = r
                if not rows[r]:
                    live.discard(r)
            if dirty:
                # a remainder smaller than p survived; pivot on it
                pr = pr_new
                continue
            # clear the pivot row; only the pivot row changes
            for c, v in list(rows[pr].items()):
                if c == pc:
                    continue
                q = v // p
                set_entry(pr, c, v - q * p)
            rest = [c for c in rows[pr] if c != pc]
            if rest:
                pc = rest[0]
                continue
            break
        diag.append(abs(rows[pr][pc]))
        set_entry(pr, pc, 0)
        live.discard(pr)
    return diag


def _normalize(diag: Sequence[int]) -> tuple[int, ...]:
    """Turn any nonzero diagonal into the divisibility chain with the same group."""
    d = sorted(x for x in diag if x)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix (dense input)."""
    rows = [{c: int(v) for c, v in enumerate(row) if v} for row in matrix]
    return SmithForm(_normalize(_diagonalize(rows)))


def _smith_sparse(rows: list[dict[int, int]]) -> SmithForm:
    return SmithForm(_normalize(_diagonalize(rows)))


# -- chain complex ----------------------------------------------------------


def boundary_rows(K: SimplicialComplex, d: int) -> tuple[list[dict[int, int]], int, int]:
    """Sparse boundary map from d-faces to (d-1)-faces.

    Rows index (d-1)-faces in canonical order, columns index d-faces.  For
    ``d = 0`` this is the augmentation onto the empty face.
    """
    lower = [m for m in K.face_masks() if popcount(m) == d]
    upper = [m for m in K.face_masks() if popcount(m) == d + 1]
    pos = {m: i for i, m in enumerate(lower)}
    rows: list[dict[int, int]] = [{} for _ in lower]
    for j, m in enumerate(upper):
        for i, v in enumerate(from_mask(m)):
            rows[pos[m & ~(1 << v)]][j] = -1 if i % 2 else 1
    return rows, len(lower), len(upper)


def boundary_matrix(K: SimplicialComplex, d: int) -> list[list[int]]:
    rows, n_rows, n_cols = boundary_rows(K, d)
    return [[row.get(j, 0) for j in range(n_cols)] for row in rows]


@dataclass(frozen=True)
class HomologyProfile:
    reduced_betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion.values())

    def euler(self) -> int:
        """Reduced Euler characteristic."""
        return sum((-1) ** d * b for d, b in self.reduced_betti.items())

    def is_acyclic(self) -> bool:
        return not any(self.reduced_betti.values()) and not self.has_torsion

    def to_json(self) -> dict:
        return {
            "reduced_betti": {str(d): b for d, b in sorted(self.reduced_betti.items())},
            "torsion": {str(d): list(t) for d, t in sorted(self.torsion.items()) if t},
        }


def reduced_homology(K: SimplicialComplex) -> HomologyProfile:
    """Reduced integral homology of ``K`` (ghost vertices ignored)."""
    faces = K.face_masks()
    if len(faces) <= 1:
        raise VoidComplex("complex has no vertices", vertices=K.vertices)
    top = K.dim
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    counts = [0] * (top + 2)
    for m in faces:
        counts[popcount(m)] += 1
    for d in range(0, top + 1):
        rows, _, _ = boundary_rows(K, d)
        snf = _smith_sparse(rows)
        ranks[d] = snf.rank
        if d >= 1 and snf.torsion:
            torsion[d - 1] = snf.torsion
    betti = {}
    for d in range(0, top + 1):
        betti[d] = counts[d + 1] - ranks[d] - ranks.get(d + 1, 0)
    return HomologyProfile(betti, torsion)


def reduced_euler_from_faces(K: SimplicialComplex) -> int:
    return sum((-1) ** (popcount(m) - 1) for m in K.face_masks() if m) - 1


# -- full-subcomplex formula ------------------------------------------------


@dataclass(frozen=True)
class BBCGResult:
    decomposition: Decomposition
    validity: str
    warnings: tuple[str, ...] = ()
    shifted_order: tuple[int, ...] | None = None
    shifted_source: str = "checked"
    subcomplexes: tuple[tuple[tuple[int, ...], HomologyProfile], ...] = ()

    @property
    def exact(self) -> bool:
        return self.validity == EXACT


def max_vertices_from_env() -> int:
    raw = os.environ.get("WEDGECALC_MAX_VERTICES")
    return int(raw) if raw else DEFAULT_MAX_VERTICES


def _is_cone(K: SimplicialComplex) -> bool:
    common = K.maximal_masks[0]
    for m in K.maximal_masks[1:]:
        common &= m
    return common != 0


def bbcg(
    K: SimplicialComplex,
    *,
    max_vertices: int | None = None,
    assume_shifted: bool | None = None,
    keep_subcomplexes: bool = False,
) -> BBCGResult:
    """Wedge decomposition read off the homology of the full subcomplexes.

    ``validity`` is ``"exact"`` when ``K`` is shifted (searched for when it
    has at most nine vertices, otherwise taken from ``assume_shifted``) and
    ``"suspended-only"`` otherwise.
    """
    K.require_singletons()
    limit = max_vertices if max_vertices is not None else max_vertices_from_env()
    n = K.n_vertices
    if n > limit:
        raise TooManyVertices(f"{n} vertices exceed the subset cap {limit}", n=n, limit=limit)

    order = None
    if n <= EXACT_CHECK_MAX_N:
        order = find_shifted_order(K)
        shifted = order is not None
        source = "checked"
    else:
        shifted = bool(assume_shifted)
        source = "caller-asserted"

    counts: dict[Summand, int] = {}
    profiles = []
    torsion_sets = []
    vmask = K.vertex_mask
    for imask in submasks(vmask):
        if not imask or K.contains_mask(imask):
            continue
        KI = SimplicialComplex(from_mask(imask), (m & imask for m in K.maximal_masks))
        if _is_cone(KI):
            if keep_subcomplexes:
                profiles.append((from_mask(imask), HomologyProfile({d: 0 for d in range(KI.dim + 1)})))
            continue
        prof = reduced_homology(KI)
        if keep_subcomplexes:
            profiles.append((from_mask(imask), prof))
        if prof.has_torsion:
            torsion_sets.append(from_mask(imask))
        idx = from_mask(imask)
        for d, b in prof.reduced_betti.items():
            if b:
                s = Summand(d + 1, idx)
                counts[s] = counts.get(s, 0) + b

    notes: list[str] = []
    validity = EXACT if shifted else SUSPENDED_ONLY
    if torsion_sets:
        if shifted and source == "checked":
            raise TorsionInShiftedComplex(
                "full subcomplex of a shifted complex has torsion", subsets=torsion_sets
            )
        validity = SUSPENDED_ONLY
        msg = f"TorsionPresent: torsion in K_I for I in {[list(s) for s in sorted(torsion_sets)]}"
        notes.append(msg)
        warnings.warn(msg, TorsionPresent, stacklevel=2)
    profiles.sort(key=lambda p: (len(p[0]), p[0]))
    return BBCGResult(
        Decomposition(counts),
        validity,
        tuple(notes),
        order,
        source,
        tuple(profiles),
    )
