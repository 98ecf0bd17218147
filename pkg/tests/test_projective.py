from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lattgen import GF, QQ, Subspace
from lattgen.projective import (BadIndices, DegenerateQuadrangle, NotASubfield, NotAtoms,
                                NotInCoordinateRing, OutOfInterval, PointAtInfinity,
                                ProjectivePoint, apply_matrix, canonical_frame,
                                canonical_quadrangle, coring_add, coring_mul, coring_recip,
                                coring_sub, delta, delta_read, embed, extract_coordinate,
                                general_position, in_ring, parse_point, point_str,
                                projectivity, quadrangle_transform, third_atom, type_of)


def test_frame_laws():
    for F, d in [(GF(2), 3), (GF(5), 4), (GF(2, 2), 3), (QQ, 3)]:
        assert canonical_frame(F, d).laws_hold()


def test_frame_rendering():
    F = GF(5)
    fr = canonical_frame(F, 3)
    assert point_str(fr.a(1)) == "[1,0,0]"
    assert point_str(fr.c(1, 2)) == "[1,4,0]"
    assert point_str(delta(fr, 3, 1, 2)) == "[2,0,-1]"
    assert fr.zero.rank == 0 and fr.one.rank == 3
    assert delta(fr, 3, 1, 0) == fr.a(3) and delta(fr, 3, 1, 1) == fr.c(1, 3)


# worked values over GF(5), frame indices (i, j, k) = (3, 1, 2)
def test_gf5_examples():
    F = GF(5)
    fr = canonical_frame(F, 3)
    D = lambda r: delta(fr, 3, 1, r)  # noqa: E731
    assert coring_add(fr, 3, 1, 2, D(2), D(4)) == D(1)
    assert coring_mul(fr, 3, 1, 2, D(2), D(3)) == D(1)
    assert coring_sub(fr, 3, 1, 2, D(2), D(4)) == D(3)
    assert coring_recip(fr, 3, 1, 2, D(2)) == D(3)
    assert coring_recip(fr, 3, 1, 2, fr.a(3)) == fr.a(1)
    u = parse_point(F, "[2,3,-1]")
    assert extract_coordinate(fr, u, 1) == D(2)
    assert extract_coordinate(fr, u, 2) == delta(fr, 3, 2, 3)


@pytest.mark.parametrize("F", [GF(2, 2), GF(3, 2)], ids=str)
def test_ring_over_extension_fields(F):
    fr = canonical_frame(F, 3)
    for i, j, k in itertools.permutations((1, 2, 3)):
        for a, b in itertools.product(F.elements(), repeat=2):
            x, y = delta(fr, i, j, a), delta(fr, i, j, b)
            assert delta_read(fr, i, j, coring_add(fr, i, j, k, x, y)) == a + b
            assert delta_read(fr, i, j, coring_mul(fr, i, j, k, x, y)) == a * b
            assert delta_read(fr, i, j, coring_sub(fr, i, j, k, x, y)) == a - b
        for a in F.elements()[1:]:
            assert delta_read(fr, i, j, coring_recip(fr, i, j, k, delta(fr, i, j, a))) == 1 / a


@settings(max_examples=50, deadline=None)
@given(a=st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9)),
       b=st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9)))
def test_ring_over_rationals(a, b):
    fr = canonical_frame(QQ, 3)
    x, y = delta(fr, 3, 1, a), delta(fr, 3, 1, b)
    assert delta_read(fr, 3, 1, coring_add(fr, 3, 1, 2, x, y)).value == a + b
    assert delta_read(fr, 3, 1, coring_mul(fr, 3, 1, 2, x, y)).value == a * b
    assert delta_read(fr, 3, 1, coring_sub(fr, 3, 1, 2, x, y)).value == a - b
    if a:
        assert delta_read(fr, 3, 1, coring_recip(fr, 3, 1, 2, x)).value == 1 / a


def test_projectivities_commute_with_delta():
    F = GF(7)
    fr = canonical_frame(F, 4)
    for p, q, r in itertools.permutations((1, 2, 3, 4), 3):
        for a in F.elements():
            assert projectivity(fr, "r-for-p", p, q, r, delta(fr, p, q, a)) == delta(fr, r, q, a)
            assert projectivity(fr, "r-for-q", p, q, r, delta(fr, p, q, a)) == delta(fr, p, r, a)


def test_ring_membership_and_errors():
    F = GF(3)
    fr = canonical_frame(F, 3)
    assert in_ring(fr, 3, 1, delta(fr, 3, 1, 2))
    assert not in_ring(fr, 3, 1, fr.a(1))
    with pytest.raises(NotInCoordinateRing):
        coring_add(fr, 3, 1, 2, fr.a(1), fr.a(3))
    with pytest.raises(BadIndices):
        coring_mul(fr, 1, 1, 2, fr.a(3), fr.a(3))
    with pytest.raises(BadIndices):
        delta(fr, 1, 4, 1)
    with pytest.raises(OutOfInterval):
        projectivity(fr, "r-for-p", 1, 2, 3, fr.a(3))
    with pytest.raises(PointAtInfinity):
        extract_coordinate(fr, parse_point(F, "[1,1,0]"), 1)
    with pytest.raises(NotAtoms):
        extract_coordinate(fr, fr.a(1) | fr.a(2), 1)


def test_point_literals():
    F = GF(5)
    assert parse_point(F, "[2,4,3]") == parse_point(F, "[4,3,1]")
    assert str(ProjectivePoint.of(QQ, ["1/2", 1, 1])) == "[-1/2,-1,-1]"
    assert str(ProjectivePoint.of(F, [0, 2, 0])) == "[0,1,0]"
    with pytest.raises(ValueError):
        parse_point(F, "2,4,3")


def test_third_atom():
    F = GF(5)
    fr = canonical_frame(F, 3)
    for a, b in itertools.combinations([fr.a(1), fr.a(2), fr.c(1, 2), fr.c(2, 3)], 2):
        c = third_atom(a, b)
        assert c.rank == 1 and c <= a | b and c not in (a, b)
    assert third_atom(fr.a(1), fr.a(1)).rank == 0


def test_quadrangles():
    F = GF(3)
    q = canonical_quadrangle(F)
    assert general_position(q) and type_of(q) == (4, 0)
    assert not general_position((q[0], q[1], third_atom(q[0], q[1]), q[3]))
    swap = (q[1], q[0], q[2], q[3])
    M = quadrangle_transform(q, swap)
    assert [apply_matrix(M, x) for x in q] == list(swap)
    # lines in general position: the dual quadrangle
    lines = [q[0] | q[1], q[1] | q[2], q[2] | q[3], q[3] | q[0]]
    assert general_position(lines) and type_of(lines) == (0, 4)
    with pytest.raises(DegenerateQuadrangle):
        quadrangle_transform(q, (q[0], q[0], q[2], q[3]))


def test_embed():
    X = Subspace.point(GF(2), [1, 1, 0])
    assert embed(X, GF(2, 2)).to_json() == [["1", "1", "0"]]
    with pytest.raises(NotASubfield):
        embed(X, GF(3))
