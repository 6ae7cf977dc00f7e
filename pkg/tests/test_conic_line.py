from __future__ import annotations

import math
import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicpierce.abelian import AngleElem
from cubicpierce.conic_line import (
    U_INF,
    ConicKind,
    TangentChordWarning,
    angle_embedding,
    class_direction,
    direction_class_of_chord,
    finite_subgroup_obstruction,
    group_for,
    gt_collinear_check,
    on_conic,
    phi_ell,
    phi_ell_inverse,
    phi_Q,
    phi_Q_inverse,
)
from cubicpierce.errors import DegenerateInputError, UsageError
from cubicpierce.plane import ProjPoint

A = ProjPoint.affine


class TestParametrizations:
    def test_phi_Q(self):
        assert phi_Q(2, "parabola") == A(2, 4)
        assert phi_Q(2, "hyperbola") == A(2, F(1, 2))
        assert phi_Q(1, "ellipse") == A(0, 1)
        assert phi_Q(U_INF, "ellipse") == A(-1, 0)

    def test_phi_ell(self):
        assert phi_ell(-3, "parabola") == ProjPoint(1, 3, 0)
        assert phi_ell(F(1, 2), "hyperbola") == ProjPoint(1, F(-1, 2), 0)
        assert phi_ell(-1, "ellipse") == ProjPoint(1, -1, 0)

    @pytest.mark.parametrize("kind", list(ConicKind))
    def test_inverses(self, kind):
        for t in (F(1), F(-2, 3), F(5, 7)):
            assert on_conic(phi_Q(t, kind), kind)
            assert phi_Q_inverse(phi_Q(t, kind), kind) == t
            assert phi_ell_inverse(phi_ell(t, kind), kind) == t

    def test_inverse_rejections(self):
        with pytest.raises(UsageError):
            phi_Q_inverse(A(1, 2), "parabola")
        with pytest.raises(UsageError):
            phi_ell_inverse(ProjPoint(0, 1, 0), "parabola")
        with pytest.raises(UsageError):
            phi_ell_inverse(ProjPoint(1, 0, 0), "hyperbola")


class TestBridge:
    @pytest.mark.parametrize(
        "x, y, z, kind",
        [(1, 2, -3, "parabola"), (1, 2, F(1, 2), "hyperbola"), (0, 1, -1, "ellipse")],
    )
    def test_examples(self, x, y, z, kind):
        assert gt_collinear_check(x, y, z, kind) == (True, True)

    def test_negative(self):
        assert gt_collinear_check(1, 2, 3, "parabola") == (False, False)

    def test_same_point(self):
        with pytest.raises(DegenerateInputError):
            gt_collinear_check(1, 1, -2, "parabola")

    def test_ellipse_point_at_u_infinity(self):
        # (-1, 0) and (1, 0) span the horizontal diameter, direction (1:0:0) = phi_ell(inf)
        assert gt_collinear_check(U_INF, 0, U_INF, "ellipse") == (True, True)

    def test_obstruction(self):
        assert finite_subgroup_obstruction("parabola") == 2
        assert finite_subgroup_obstruction("hyperbola") == 2
        assert finite_subgroup_obstruction("ellipse") == math.inf

    def test_obstruction_consistency(self):
        rng = random.Random(3)
        mult = group_for("hyperbola")
        add = group_for("parabola")
        for _ in range(500):
            z = F(rng.randint(-40, 40), rng.randint(1, 40))
            if z != 0 and mult.add(z, z) == 1:
                assert z in (1, -1)
            if add.add(z, z) == 0:
                assert z == 0


rat = st.fractions(min_value=-20, max_value=20, max_denominator=20)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(list(ConicKind)), rat, rat, rat, st.booleans())
def test_bridge_property(kind, x, y, z, complete):
    g = group_for(kind)
    if kind is ConicKind.HYPERBOLA and 0 in (x, y, z):
        return
    if x == y:
        return
    if complete:
        z = g.neg(g.add(x, y))
    zero, geo = gt_collinear_check(x, y, z, kind)
    assert zero == geo
    if complete:
        assert zero


class TestDirectionClasses:
    def test_examples(self):
        assert direction_class_of_chord(AngleElem(0), AngleElem(F(1, 4))) == AngleElem(F(1, 4))
        assert direction_class_of_chord(AngleElem(0), AngleElem(F(1, 2))) == AngleElem(F(1, 2))
        a, b = AngleElem(F(1, 9), 1), AngleElem(F(3, 7))
        assert direction_class_of_chord(a, b) == direction_class_of_chord(a.shift(F(1, 2)), b.shift(F(1, 2)))

    def test_tangent_warns(self):
        with pytest.warns(TangentChordWarning):
            assert direction_class_of_chord(AngleElem(F(1, 3)), AngleElem(F(1, 3))) == AngleElem(F(2, 3))

    def test_chord_matches_class_direction(self):
        # chord (1,0)-(0,1) has slope -1; class 1/4 maps to direction angle 3pi/4
        dx, dy = class_direction(AngleElem(F(1, 4)))
        assert abs(dy / dx + 1) < 1e-12

    def test_float_cross_check(self):
        rng = random.Random(11)
        theta = 0.1234567

        def cross(u, v):
            return u[0] * v[1] - u[1] * v[0]

        def chord(a, b):
            (x1, y1), (x2, y2) = angle_embedding(a, theta), angle_embedding(b, theta)
            n = math.hypot(x2 - x1, y2 - y1)
            return ((x2 - x1) / n, (y2 - y1) / n)

        def rand_angle():
            return AngleElem(F(rng.randint(0, 59), 60), rng.randint(-1, 1))

        done = 0
        while done < 1000:
            a, b, c, d = (rand_angle() for _ in range(4))
            if a == b or c == d:
                continue
            done += 1
            u, v = chord(a, b), chord(c, d)
            assert abs(cross(u, class_direction(a + b, theta))) < 1e-9
            if a + b == c + d:
                assert abs(cross(u, v)) < 1e-9
            else:
                assert abs(cross(u, v)) > 1e-6

    @settings(max_examples=200, deadline=None)
    @given(
        st.fractions(0, 1, max_denominator=30),
        st.fractions(0, 1, max_denominator=30),
        st.fractions(0, 1, max_denominator=30),
    )
    def test_covariance(self, a, b, r):
        A_, B_ = AngleElem(a), AngleElem(b)
        if A_ == B_:
            return
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            base = direction_class_of_chord(A_, B_)
            assert direction_class_of_chord(B_, A_) == base
            assert direction_class_of_chord(A_.shift(r), B_.shift(r)) == base.shift(2 * r)
