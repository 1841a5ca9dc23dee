import warnings

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import complexes, shifted
from wedgecalc.algebra import Decomposition, relabel
from wedgecalc.complex import boundary_simplex, build_complex, disjoint_points, simplex
from wedgecalc.errors import MissingSingleton, TooManyVertices, TorsionPresent, VoidComplex
from wedgecalc.homology import (
    bbcg,
    boundary_matrix,
    reduced_euler_from_faces,
    reduced_homology,
    smith_normal_form,
)

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
       (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]


def sympy_factors(rows):
    if not rows or not rows[0]:
        return ()
    M = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = [abs(int(M[i, i])) for i in range(min(M.shape))]
    return tuple(d for d in diag if d)


def rank_mod2(rows) -> int:
    vecs = [int("".join(str(v % 2) for v in row), 2) for row in rows if row]
    rank = 0
    while vecs:
        piv = max(vecs)
        if not piv:
            break
        vecs.remove(piv)
        top = piv.bit_length() - 1
        vecs = [v ^ piv if v >> top & 1 else v for v in vecs]
        rank += 1
    return rank


def test_snf_small():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).factors == (1, 1, 1)
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.factors == (1, 6) and snf.rank == 2
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()
    assert smith_normal_form([[2, 4], [4, 8]]).factors == (2,)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=1, max_size=5), min_size=1, max_size=5))
@settings(max_examples=200)
def test_snf_against_sympy(rows):
    width = min(len(r) for r in rows)
    rows = [r[:width] for r in rows]
    assert smith_normal_form(rows).factors == sympy_factors(rows)


def test_projective_plane_torsion():
    P = build_complex(range(1, 7), RP2)
    d2 = boundary_matrix(P, 2)
    # the rank over Q and over GF(2) differ by one, which is the Z/2 in H_1
    assert sympy.Matrix(d2).rank() == rank_mod2(d2) + 1
    assert smith_normal_form(d2).torsion == (2,)
    prof = reduced_homology(P)
    assert prof.torsion == {1: (2,)} and prof.euler() == 0


def test_examples(worked):
    assert {d: b for d, b in reduced_homology(boundary_simplex([1, 2, 3, 4])).reduced_betti.items() if b} == {2: 1}
    # connected graph: E - V + 1 independent cycles
    assert reduced_homology(worked).reduced_betti == {0: 0, 1: 5 - 4 + 1}
    assert reduced_homology(disjoint_points([1, 2])).reduced_betti == {0: 1}
    assert reduced_homology(simplex([1])).is_acyclic()
    with pytest.raises(VoidComplex):
        reduced_homology(build_complex([1], []))


def test_bbcg_examples(worked, square):
    res = bbcg(worked)
    assert res.exact
    assert res.decomposition == Decomposition.of(
        (1, (3, 4)), (2, (1, 2, 3)), (2, (1, 2, 4)), (2, (1, 2, 3, 4), 2)
    )
    sq = bbcg(square, keep_subcomplexes=True)
    assert sq.validity == "suspended-only"
    assert sq.decomposition == Decomposition.of((1, (1, 3)), (1, (2, 4)), (2, (1, 2, 3, 4)))
    # 15 nonempty subsets, 8 of them faces (4 vertices, 4 edges)
    assert len(sq.subcomplexes) == 15 - 8
    full = bbcg(simplex([1, 2, 3]))
    assert full.decomposition == Decomposition() and full.exact


def test_bbcg_guards(monkeypatch):
    with pytest.raises(MissingSingleton):
        bbcg(build_complex([1, 2], [(1,)]))
    with pytest.raises(TooManyVertices):
        bbcg(disjoint_points(range(1, 6)), max_vertices=4)
    monkeypatch.setenv("WEDGECALC_MAX_VERTICES", "3")
    with pytest.raises(TooManyVertices):
        bbcg(disjoint_points(range(1, 5)))


def test_bbcg_caller_asserted_for_large_n():
    K = disjoint_points(range(1, 11))
    res = bbcg(K, assume_shifted=True)
    assert res.shifted_source == "caller-asserted" and res.exact


def test_torsion_warning():
    with pytest.warns(TorsionPresent):
        res = bbcg(build_complex(range(1, 7), RP2))
    assert res.validity == "suspended-only"


@given(complexes(max_n=6))
@settings(max_examples=150)
def test_boundary_squares_to_zero(K):
    for d in range(1, K.dim + 1):
        A = sympy.Matrix(boundary_matrix(K, d - 1))
        B = sympy.Matrix(boundary_matrix(K, d))
        if A.shape[1] and B.shape[0]:
            assert (A * B).is_zero_matrix


@given(complexes(max_n=6))
@settings(max_examples=150)
def test_euler_characteristic(K):
    assert reduced_homology(K).euler() == reduced_euler_from_faces(K)


@given(complexes(max_n=6))
@settings(max_examples=100)
def test_betti_matches_rational_rank(K):
    # oracle: beta_d = f_d - rank d_d - rank d_{d+1} with ranks from sympy
    prof = reduced_homology(K)
    ranks = {}
    for d in range(0, K.dim + 2):
        M = boundary_matrix(K, d) if d <= K.dim else []
        ranks[d] = sympy.Matrix(M).rank() if M and M[0] else 0
    for d in range(0, K.dim + 1):
        f = len(K.faces_of_dim(d))
        assert prof.reduced_betti[d] == f - ranks[d] - ranks[d + 1]


@given(shifted(max_n=6))
@settings(max_examples=60)
def test_shifted_subcomplexes_torsion_free(K):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        res = bbcg(K, keep_subcomplexes=True)
    assert res.exact
    assert not any(p.has_torsion for _, p in res.subcomplexes)


@given(complexes(max_n=5))
@settings(max_examples=60, deadline=None)
def test_bbcg_invariant_under_order_preserving_relabel(K):
    shift = {v: 3 * v + 1 for v in K.vertices}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = bbcg(K).decomposition
        b = bbcg(K.relabel(shift)).decomposition
    back = {3 * v + 1: v for v in K.vertices}
    assert relabel(b, back) == a
