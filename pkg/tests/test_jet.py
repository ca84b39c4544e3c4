import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import taylorjet as tj
from taylorjet import (
    AlignmentError,
    ConditioningWarning,
    DomainError,
    Jet,
    NonFiniteError,
    PoleError,
    derivatives,
    div,
    jet_const,
    jet_var,
    lift_elementary,
    linear_combine,
    mul,
    pow_int,
    reciprocal,
    truncate,
)


def jets(x0, *rows):
    return [Jet(x0, row) for row in rows]


coeff_lists = st.lists(
    st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=31,
)


def aligned_pair(draw):
    a = draw(coeff_lists)
    b = draw(
        st.lists(
            st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False),
            min_size=len(a),
            max_size=len(a),
        )
    )
    return a, b


aligned_pairs = st.composite(aligned_pair)()


class TestConstructors:
    def test_const(self):
        assert jet_const(3, 0, 2).coeffs.tolist() == [3, 0, 0]
        assert jet_const(0, 5, 0).coeffs.tolist() == [0]
        assert jet_const(1, 2, 3).coeffs.tolist() == [1, 0, 0, 0]

    def test_var(self):
        assert jet_var(2, 3).coeffs.tolist() == [2, 1, 0, 0]
        assert jet_var(0, 1).coeffs.tolist() == [0, 1]
        assert jet_var(-1, 0).coeffs.tolist() == [-1]

    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteError):
            Jet(0.0, [1.0, float("nan")])
        with pytest.raises(NonFiniteError):
            Jet(float("inf"), [1.0])

    def test_coeffs_are_immutable(self):
        j = jet_var(0, 3)
        with pytest.raises(ValueError):
            j.coeffs[0] = 5.0

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            jet_const(1, 0, -1)


class TestLinearCombine:
    def test_componentwise_sum(self):
        a, b = jets(0.0, [1, 2], [3, 4])
        assert linear_combine(a, b, 1, 1).coeffs.tolist() == [4, 6]

    def test_self_cancel(self):
        a = Jet(1.0, [0.5, -0.25, 3.0])
        assert linear_combine(a, a, 1, -1).coeffs.tolist() == [0, 0, 0]

    def test_scaling(self):
        a = Jet(0.0, [1, 1, 1])
        assert linear_combine(a, a, 2, 0).coeffs.tolist() == [2, 2, 2]

    def test_alignment_errors(self):
        a = Jet(0.0, [1, 2])
        with pytest.raises(AlignmentError):
            linear_combine(a, Jet(1.0, [1, 2]), 1, 1)
        with pytest.raises(AlignmentError):
            linear_combine(a, Jet(0.0, [1, 2, 3]), 1, 1)

    def test_overflow_raises(self):
        a = Jet(0.0, [1e308, 0.0])
        with pytest.raises(NonFiniteError):
            linear_combine(a, a, 1, 1)


class TestMul:
    def test_polynomial_expansion(self):
        one_plus, one_minus = jets(0.0, [1, 1, 0], [1, -1, 0])
        prod = mul(one_plus, one_minus)
        assert prod.coeffs.tolist() == [1, 0, -1]
        assert derivatives(prod).tolist() == [1, 0, -2]

    def test_identity(self):
        u = Jet(0.0, [0.3, -0.7, 2.0])
        assert mul(u, jet_const(1, 0, 2)).coeffs.tolist() == u.coeffs.tolist()

    def test_x_squared(self):
        x = Jet(0.0, [0, 1, 0])
        assert mul(x, x).coeffs.tolist() == [0, 0, 1]

    def test_overflow_raises(self):
        big = Jet(0.0, [1e200, 1e200])
        with pytest.raises(NonFiniteError):
            mul(big, big)

    @given(aligned_pairs)
    @settings(deadline=None)
    def test_commutes_bitwise(self, pair):
        a, b = pair
        u, v = jets(0.0, a, b)
        left = mul(u, v).coeffs
        right = mul(v, u).coeffs
        assert np.array_equal(left, right)

    @given(aligned_pairs, st.data())
    @settings(deadline=None)
    def test_truncation_consistent(self, pair, data):
        a, b = pair
        m = data.draw(st.integers(0, len(a) - 1))
        u, v = jets(0.0, a, b)
        full = truncate(mul(u, v), m)
        cut = mul(truncate(u, m), truncate(v, m))
        assert np.array_equal(full.coeffs, cut.coeffs)


class TestDiv:
    def test_self_division(self):
        v = Jet(0.0, [2.0, -1.0, 0.5, 3.0])
        assert div(v, v).coeffs.tolist() == [1, 0, 0, 0]

    def test_unit_denominator(self):
        u = Jet(0.0, [0.1, 2.0, -0.3])
        assert div(u, jet_const(1, 0, 2)).coeffs.tolist() == u.coeffs.tolist()

    def test_geometric_series(self):
        u, v = jets(0.0, [1, 0, 0, 0, 0], [1, -1, 0, 0, 0])
        q = div(u, v)
        assert q.coeffs.tolist() == [1, 1, 1, 1, 1]
        assert derivatives(q).tolist() == [1, 1, 2, 6, 24]

    def test_tan_derivatives(self):
        # frozen from the symbolic oracle (see test_oracle.py)
        s, c = tj.lift_elementary("sin", jet_var(0, 5)), tj.lift_elementary(
            "cos", jet_var(0, 5)
        )
        assert derivatives(div(s, c)) == pytest.approx(
            [0, 1, 0, 2, 0, 16], abs=1e-12
        )

    def test_pole_error(self):
        u = jet_const(1, 0, 2)
        with pytest.raises(PoleError):
            div(u, jet_var(0, 2))

    def test_conditioning_warning(self):
        u = jet_const(1, 0, 1)
        v = Jet(0.0, [1e-9, 1.0])
        with pytest.warns(ConditioningWarning):
            div(u, v)

    def test_no_warning_for_healthy_denominator(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            div(jet_const(1, 0, 1), jet_const(2, 0, 1))

    @given(aligned_pairs, st.data())
    @settings(deadline=None, max_examples=60)
    def test_truncation_consistent(self, pair, data):
        a, b = pair
        if abs(b[0]) < 0.5:
            b[0] = 0.5
        m = data.draw(st.integers(0, len(a) - 1))
        u, v = jets(0.0, a, b)
        full = truncate(div(u, v), m)
        cut = div(truncate(u, m), truncate(v, m))
        assert np.max(np.abs(full.coeffs - cut.coeffs)) <= 1e-12

    @given(aligned_pairs)
    @settings(deadline=None, max_examples=60)
    def test_round_trip(self, pair):
        # residual scaled as in the triangular-solve contract:
        # |mul(div(u,v),v) - u| <= tol * max(|u|, size*max|v|*max|y|)
        a, b = pair
        if abs(b[0]) < 0.5:
            b[0] = 0.5
        u, v = jets(0.0, a, b)
        y = div(u, v)
        recon = mul(y, v)
        scale = max(
            np.max(np.abs(u.coeffs)),
            len(a) * np.max(np.abs(v.coeffs)) * np.max(np.abs(y.coeffs)),
        )
        assert np.max(np.abs(recon.coeffs - u.coeffs)) <= 1e-10 * scale

    @given(aligned_pairs)
    @settings(deadline=None, max_examples=60)
    def test_matches_reciprocal_route(self, pair):
        a, b = pair
        if abs(b[0]) < 0.5:
            b[0] = 0.5
        u, v = jets(0.0, a, b)
        direct = div(u, v).coeffs
        via_recip = mul(u, reciprocal(v)).coeffs
        for got, want in zip(via_recip, direct):
            if abs(want) < 1e-8:
                assert abs(got - want) <= 1e-12
            else:
                assert abs(got - want) <= 1e-10 * abs(want)


class TestReciprocal:
    def test_constant(self):
        assert reciprocal(jet_const(2, 1, 3)).coeffs.tolist() == [0.5, 0, 0, 0]

    def test_involution(self):
        v = Jet(0.0, [2.0, 1.0, 1.0])
        back = reciprocal(reciprocal(v))
        assert back.coeffs == pytest.approx(v.coeffs.tolist(), rel=1e-12)

    def test_geometric(self):
        v = Jet(0.0, [1, -1, 0, 0])
        assert reciprocal(v).coeffs.tolist() == [1, 1, 1, 1]


class TestDerivatives:
    def test_unscaling(self):
        assert derivatives(Jet(0.0, [1, 1, 1, 1])).tolist() == [1, 1, 2, 6]

    def test_zero_jet(self):
        assert derivatives(jet_const(0, 0, 4)).tolist() == [0] * 5

    def test_overflow(self):
        with pytest.raises(NonFiniteError):
            derivatives(Jet(0.0, np.ones(201)))

    def test_tiny_coefficients_survive_large_factorials(self):
        # 300! * 1e-300 is representable even though 300! alone is not
        coeffs = np.zeros(301)
        coeffs[300] = 1e-300
        out = derivatives(Jet(0.0, coeffs))
        assert np.isfinite(out[300]) and out[300] > 0


class TestPowInt:
    def test_square(self):
        x = jet_var(2, 3)
        assert pow_int(x, 2).coeffs.tolist() == [4, 4, 1, 0]

    def test_zero_exponent(self):
        assert pow_int(jet_var(3, 2), 0).coeffs.tolist() == [1, 0, 0]

    def test_negative_exponent(self):
        v = Jet(0.0, [2.0, 1.0])
        got = pow_int(v, -1)
        assert got.coeffs == pytest.approx(reciprocal(v).coeffs.tolist())

    def test_negative_exponent_at_pole(self):
        with pytest.raises(PoleError):
            pow_int(jet_var(0, 2), -2)

    def test_non_integer_rejected(self):
        with pytest.raises(TypeError):
            pow_int(jet_var(0, 2), 1.5)


class TestLifts:
    def test_exp_of_zero(self):
        assert lift_elementary("exp", jet_const(0, 0, 3)).coeffs.tolist() == [
            1,
            0,
            0,
            0,
        ]

    def test_sin_maclaurin(self):
        got = lift_elementary("sin", jet_var(0, 3))
        assert got.coeffs == pytest.approx([0, 1, 0, -1 / 6])

    def test_cos_maclaurin(self):
        got = lift_elementary("cos", jet_var(0, 4))
        assert got.coeffs == pytest.approx([1, 0, -0.5, 0, 1 / 24])

    def test_ln_exp_round_trip(self):
        v = Jet(0.0, [1.0, 0.5, 0.25])
        back = lift_elementary("ln", lift_elementary("exp", v))
        assert back.coeffs == pytest.approx(v.coeffs.tolist(), rel=1e-12)

    def test_sqrt_squares_back(self):
        v = Jet(0.0, [4.0, 1.0, -0.5, 0.25])
        root = lift_elementary("sqrt", v)
        assert mul(root, root).coeffs == pytest.approx(v.coeffs.tolist(), rel=1e-12)

    def test_pow_int_tag(self):
        x = jet_var(2, 3)
        assert lift_elementary("pow-int", x, exponent=3).coeffs.tolist() == [
            8,
            12,
            6,
            1,
        ]

    @pytest.mark.parametrize("tag", ["ln", "sqrt"])
    def test_domain_errors(self, tag):
        with pytest.raises(DomainError):
            lift_elementary(tag, jet_const(-1, 0, 2))
        with pytest.raises(DomainError):
            lift_elementary(tag, jet_const(0, 0, 2))

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            lift_elementary("tanh", jet_var(0, 2))

    def test_pow_int_requires_exponent(self):
        with pytest.raises(ValueError):
            lift_elementary("pow-int", jet_var(0, 2))


class TestOperatorSugar:
    def test_arithmetic(self):
        x = jet_var(1, 2)
        y = (x + 1) * (x - 1)
        assert y.coeffs.tolist() == [0, 2, 1]
        assert (-x).coeffs.tolist() == [-1, -1, 0]
        assert (1 / x).coeffs == pytest.approx([1, -1, 1])
        assert (x**2).coeffs.tolist() == [1, 2, 1]

    def test_scalar_promotion_keeps_alignment_strict(self):
        x = jet_var(0, 2)
        other = jet_var(1, 2)
        with pytest.raises(AlignmentError):
            x + other
