"""Formal wedges of suspended smash products.

A :class:`Summand` ``⟨j; I⟩`` stands for ``Σ^j X_{i1} ∧ ... ∧ X_{ik}``; a
:class:`Decomposition` is a finite multiset of summands, read as their wedge.
Two summands are identified only when suspension and index set agree.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    EmptyFactor,
    EmptyIndexSet,
    IndexSetsOverlap,
    MissingSubstitution,
    NotASubMultiset,
    NotASuspension,
    OverlappingIndices,
    OverlappingReplacementLabels,
    ParseError,
)

CONTRACTIBLE = "∗"


@dataclass(frozen=True)
class Summand:
    suspension: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(self.indices)
        if not idx:
            raise EmptyIndexSet("a summand needs at least one index")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise OverlappingIndices("indices must be strictly increasing", indices=idx)
        if self.suspension < 0:
            raise ValueError(f"negative suspension {self.suspension}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, suspension: int, indices: Iterable[int]) -> Summand:
        """Build from an unsorted index collection."""
        idx = sorted(indices)
        if len(set(idx)) != len(idx):
            raise OverlappingIndices("repeated index", indices=idx)
        return cls(suspension, tuple(idx))

    def sort_key(self) -> tuple:
        return (len(self.indices), self.indices, self.suspension)

    def __lt__(self, other: Summand) -> bool:
        return self.sort_key() < other.sort_key()

    def render(self, names: Mapping[int, str] | None = None) -> str:
        smash = "∧".join(f"X{names[i] if names else i}" for i in self.indices)
        if self.suspension == 0:
            return smash
        if self.suspension == 1:
            return f"Σ {smash}"
        return f"Σ^{self.suspension} {smash}"

    def __str__(self) -> str:
        return self.render()


class Decomposition:
    """Immutable multiset of summands with positive multiplicities."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Summand, int] | Iterable[Summand] = ()):
        counts: Counter[Summand] = Counter()
        if isinstance(terms, Mapping):
            for s, m in terms.items():
                if m < 0:
                    raise ValueError(f"negative multiplicity {m} for {s}")
                counts[s] += m
        else:
            counts.update(terms)
        self._terms = {s: counts[s] for s in sorted(counts) if counts[s] > 0}

    @classmethod
    def of(cls, *items: tuple[int, Iterable[int]] | tuple[int, Iterable[int], int]) -> Decomposition:
        """Shorthand: ``Decomposition.of((1, (3, 4)), (2, (1, 2, 3, 4), 2))``."""
        counts: Counter[Summand] = Counter()
        for item in items:
            mult = item[2] if len(item) == 3 else 1
            counts[Summand.of(item[0], item[1])] += mult
        return cls(counts)

    # -- multiset protocol ----------------------------------------------------

    def items(self) -> Iterator[tuple[Summand, int]]:
        return iter(self._terms.items())

    def __iter__(self) -> Iterator[Summand]:
        for s, m in self._terms.items():
            for _ in range(m):
                yield s

    def __getitem__(self, s: Summand) -> int:
        return self._terms.get(s, 0)

    def __len__(self) -> int:
        """Total multiplicity."""
        return sum(self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def distinct(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: Decomposition) -> Decomposition:
        counts = Counter(self._terms)
        counts.update(other._terms)
        return Decomposition(counts)

    def __sub__(self, other: Decomposition) -> Decomposition:
        return subtract(self, other)

    def labels(self) -> frozenset[int]:
        return frozenset(i for s in self._terms for i in s.indices)

    def __repr__(self) -> str:
        return f"Decomposition({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> list[dict]:
        return [
            {"suspension": s.suspension, "indices": list(s.indices), "multiplicity": m}
            for s, m in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> Decomposition:
        counts: Counter[Summand] = Counter()
        try:
            for term in data:
                mult = int(term.get("multiplicity", 1))
                if mult <= 0:
                    raise ParseError(f"nonpositive multiplicity in {term}")
                counts[Summand.of(int(term["suspension"]), [int(i) for i in term["indices"]])] += mult
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed decomposition term: {exc}") from exc
        return cls(counts)


EMPTY = Decomposition()


# -- expansion rules --------------------------------------------------------


def _disjoint(a: Iterable[int], b: Iterable[int]) -> bool:
    return not set(a) & set(b)


def join_closed_form(indices: Iterable[int]) -> Summand:
    """Iterated join of the given spaces: ``⟨k-1; I⟩``."""
    idx = sorted(indices)
    if not idx:
        raise EmptyIndexSet("join of no spaces")
    return Summand.of(len(idx) - 1, idx)


def join_summands(s1: Summand, s2: Summand) -> Summand:
    """``Y ∗ Z ≃ Σ Y ∧ Z``, so suspensions add plus one."""
    if not _disjoint(s1.indices, s2.indices):
        raise IndexSetsOverlap("cannot join summands sharing indices", left=s1.indices, right=s2.indices)
    return Summand.of(s1.suspension + s2.suspension + 1, s1.indices + s2.indices)


def half_smash_expand(s: Summand, extra: Iterable[int]) -> Decomposition:
    """Split ``s ⋊ (∏ X_t)`` for a suspension ``s``: one term per subset of ``extra``."""
    extra = sorted(extra)
    if s.suspension < 1:
        raise NotASuspension(f"{s} is not a suspension", summand=s.render())
    if not _disjoint(s.indices, extra):
        raise OverlappingIndices("half-smash factor meets the summand", indices=s.indices, extra=extra)
    return Decomposition(
        Summand.of(s.suspension, s.indices + sub)
        for k in range(len(extra) + 1)
        for sub in combinations(extra, k)
    )


def product_join_expand(left: Iterable[int], right: Iterable[int]) -> Decomposition:
    """Wedge expansion of ``(∏_left X) ∗ (∏_right X)``."""
    left, right = sorted(left), sorted(right)
    if not left or not right:
        raise EmptyFactor("both product factors must be nonempty", left=left, right=right)
    if not _disjoint(left, right):
        raise OverlappingIndices("product factors overlap", left=left, right=right)
    return Decomposition(
        Summand.of(1, a + b)
        for i in range(1, len(left) + 1)
        for a in combinations(left, i)
        for j in range(1, len(right) + 1)
        for b in combinations(right, j)
    )


def left_half_smash_expand(extra: Iterable[int], d: Decomposition) -> Decomposition:
    """``(∏ X_t) ⋉ d``, expanded summand by summand."""
    extra = sorted(extra)
    counts: Counter[Summand] = Counter()
    for s, m in d.items():
        for t in half_smash_expand(s, extra):
            counts[t] += m
    return Decomposition(counts)


def subtract(d1: Decomposition, d2: Decomposition) -> Decomposition:
    counts = Counter(dict(d1.items()))
    for s, m in d2.items():
        if counts[s] < m:
            raise NotASubMultiset(
                f"{s} occurs {counts[s]} times, need {m}",
                missing=s.render(),
                have=counts[s],
                need=m,
            )
        counts[s] -= m
    return Decomposition(counts)


def substitute_join(d: Decomposition, J: Mapping[int, Sequence[int]]) -> Decomposition:
    """Replace each ``X_i`` by the join of the spaces ``J[i]``.

    ``⟨a; I⟩`` becomes ``⟨a + Σ(|J(i)| - 1); ∪ J(i)⟩``.
    """
    used: dict[int, int] = {}
    for old, new in J.items():
        if not new:
            raise MissingSubstitution(f"empty replacement for {old}", label=old)
        for lab in new:
            if lab in used and used[lab] != old:
                raise OverlappingReplacementLabels(
                    f"label {lab} replaces both {used[lab]} and {old}", label=lab
                )
            used[lab] = old
    counts: Counter[Summand] = Counter()
    for s, m in d.items():
        extra = 0
        labels: list[int] = []
        for i in s.indices:
            if i not in J:
                raise MissingSubstitution(f"no replacement for X{i}", label=i)
            extra += len(J[i]) - 1
            labels.extend(J[i])
        counts[Summand.of(s.suspension + extra, labels)] += m
    return Decomposition(counts)


def relabel(d: Decomposition, mapping: Mapping[int, int]) -> Decomposition:
    return substitute_join(d, {k: (v,) for k, v in mapping.items()})


# -- rendering --------------------------------------------------------------


def render(d: Decomposition, fmt: str = "text", names: Mapping[int, str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(d.to_json())
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if not d:
        return CONTRACTIBLE
    parts = []
    for s, m in d.items():
        body = s.render(names)
        parts.append(body if m == 1 else f"{m}·{body}")
    return " ∨ ".join(parts)


canonical_render = render
