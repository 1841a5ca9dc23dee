"""Evaluate symbolic wedges at spheres.

With ``X_i = S^{n_i}`` a summand ``Σ^j X_{i1} ∧ ... ∧ X_{ik}`` is the sphere
of dimension ``j + n_{i1} + ... + n_{ik}``.  Taking every ``n_i = 1`` gives
the moment-angle complex ``Z_K = (D², S¹)^K``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import Decomposition
from .complex import SimplicialComplex
from .decomposer import decompose
from .errors import MissingDimension, SuspendedOnlyNotAcknowledged
from .homology import EXACT, bbcg
from .shifted import find_shifted_order, is_shifted

SphereCounts = dict[int, int]


def sphere_assignment(labels: Sequence[int], dims: Sequence[int] | int) -> dict[int, int]:
    """Pair labels with dimensions; a single int assigns it to every label."""
    if isinstance(dims, int):
        dims = [dims] * len(labels)
    if len(dims) != len(labels):
        raise MissingDimension(
            f"{len(labels)} labels but {len(dims)} dimensions", labels=list(labels), dims=list(dims)
        )
    out = dict(zip(labels, dims))
    for v, n in out.items():
        if n < 1:
            raise MissingDimension(f"sphere dimension {n} for X{v} must be at least 1", label=v)
    return out


def specialize(d: Decomposition, dims: Mapping[int, int]) -> SphereCounts:
    """Sphere dimensions (with multiplicity) of the wedge ``d`` at ``X_i = S^{dims[i]}``."""
    out: Counter[int] = Counter()
    for s, m in d.items():
        try:
            total = s.suspension + sum(dims[i] for i in s.indices)
        except KeyError as exc:
            raise MissingDimension(f"no sphere dimension for X{exc.args[0]}", label=exc.args[0]) from None
        out[total] += m
    return dict(sorted(out.items()))


def poincare_coefficients(spheres: Mapping[int, int]) -> dict[int, int]:
    """Poincaré polynomial of a wedge of spheres, including the constant 1."""
    coeffs: Counter[int] = Counter({0: 1})
    for dim, m in spheres.items():
        coeffs[dim] += m
    return dict(sorted(coeffs.items()))


def render_polynomial(coeffs: Mapping[int, int], var: str = "t") -> str:
    parts = []
    for deg, c in sorted(coeffs.items()):
        if not c:
            continue
        if deg == 0:
            parts.append(str(c))
            continue
        mono = var if deg == 1 else f"{var}^{deg}"
        parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) or "0"


@dataclass(frozen=True)
class MomentAngleResult:
    spheres: SphereCounts
    validity: str
    decomposition: Decomposition

    @property
    def poincare(self) -> dict[int, int]:
        return poincare_coefficients(self.spheres)

    def poincare_str(self) -> str:
        return render_polynomial(self.poincare)

    def to_json(self) -> dict:
        return {
            "spheres": [{"dim": d, "mult": m} for d, m in self.spheres.items()],
            "poincare": self.poincare_str(),
            "validity": self.validity,
        }


def moment_angle(
    K: SimplicialComplex,
    dims: Mapping[int, int] | None = None,
    *,
    suspended_only_ok: bool = False,
) -> MomentAngleResult:
    """Sphere content of ``(D², S¹)^K`` (or of any sphere assignment ``dims``).

    Shifted complexes go through the inductive decomposition and are exact.
    Anything else needs ``suspended_only_ok`` and is only claimed after one
    suspension.
    """
    if dims is None:
        dims = dict.fromkeys(K.vertices, 1)
    K.require_singletons()
    if K.n_vertices <= 9:
        order = find_shifted_order(K)
    else:
        order = K.vertices if is_shifted(K) else None
    if order is not None:
        d, _ = decompose(K, order=order)
        validity = EXACT
    else:
        if not suspended_only_ok:
            raise SuspendedOnlyNotAcknowledged(
                "complex is not shifted; pass suspended_only_ok to get the suspended answer"
            )
        res = bbcg(K)
        d = res.decomposition
        validity = res.validity
    return MomentAngleResult(specialize(d, dims), validity, d)


def moment_angle_poincare(K: SimplicialComplex, **kwargs) -> dict[int, int]:
    return moment_angle(K, **kwargs).poincare
