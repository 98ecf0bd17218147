from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lattgen import GF, QQ, Subspace
from lattgen.linalg import (AmbientMismatch, mat_inverse, mat_mul, nullspace_raw, rref_raw,
                            solve_combination)

import oracles


def matrices(p, rows, cols):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                    min_size=0, max_size=rows)


def _vecset(S: Subspace, p: int):
    return frozenset(tuple(int(x) for x in v) for v in S.vectors())


@settings(max_examples=80, deadline=None)
@given(A=matrices(3, 3, 4), B=matrices(3, 3, 4))
def test_meet_join_against_vector_sets(A, B):
    F, d = GF(3), 4
    SA, SB = Subspace.span(F, A, d), Subspace.span(F, B, d)
    VA = oracles.span([tuple(r) for r in A], 3, d)
    VB = oracles.span([tuple(r) for r in B], 3, d)
    assert _vecset(SA, 3) == VA
    assert _vecset(SA & SB, 3) == VA & VB
    assert _vecset(SA | SB, 3) == oracles.join(VA, VB, 3, d)


@settings(max_examples=60, deadline=None)
@given(A=matrices(4, 3, 3), B=matrices(4, 3, 3))
def test_dimension_formula_over_gf4(A, B):
    F = GF(2, 2)
    SA = Subspace.from_raw(F, A, 3) if A else Subspace.zero(F, 3)
    SB = Subspace.from_raw(F, B, 3) if B else Subspace.zero(F, 3)
    assert (SA | SB).rank + (SA & SB).rank == SA.rank + SB.rank
    assert SA & SB <= SA <= SA | SB
    assert SA.orthogonal_complement().orthogonal_complement() == SA
    assert SA.orthogonal_complement().rank == 3 - SA.rank


@settings(max_examples=40, deadline=None)
@given(A=st.lists(st.lists(st.builds(Fraction, st.integers(-8, 8), st.integers(1, 6)),
                           min_size=3, max_size=3), max_size=3))
def test_rref_idempotent_over_q(A):
    R, piv = rref_raw(QQ, A)
    assert rref_raw(QQ, R)[0] == R
    S = Subspace.span(QQ, A, 3) if A else Subspace.zero(QQ, 3)
    assert S.rank == len(piv)
    for row in nullspace_raw(QQ, A, 3) if A else []:
        assert all(sum(a * b for a, b in zip(r, row)) == 0 for r in A)


def test_point_and_json_round_trip():
    F = GF(2, 2)
    P = Subspace.point(F, ["w", 1, 0])
    assert P.rank == 1
    # scalar multiples give the same point; rref makes the leading entry 1
    assert Subspace.point(F, ["w+1", "w", 0]) == P
    assert Subspace.from_json(F, P.to_json(), 3) == P
    assert P.to_json() == [["1", "w+1", "0"]]


def test_raw_codes_are_not_integers():
    # 2 is the code of w in GF(4), while the integer 2 maps to 0
    F = GF(2, 2)
    assert Subspace.from_raw(F, [[2, 1, 0]], 3) != Subspace.span(F, [[2, 1, 0]], 3)
    assert Subspace.span(F, [[2, 1, 0]], 3) == Subspace.point(F, [0, 1, 0])


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.full(GF(2), 3) | Subspace.full(GF(2), 4)
    with pytest.raises(AmbientMismatch):
        Subspace.full(GF(2), 3) & Subspace.full(GF(3), 3)


def test_small_matrix_helpers():
    F = GF(5)
    M = [[1, 2], [3, 4]]
    I = mat_mul(F, M, mat_inverse(F, M))
    assert I == [[1, 0], [0, 1]]
    assert solve_combination(F, [[1, 0, 1], [0, 1, 1]], [2, 3, 0]) == [2, 3]
    assert solve_combination(F, [[1, 0, 0]], [0, 1, 0]) is None
