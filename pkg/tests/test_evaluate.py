import math

import numpy as np
import pytest

import taylorjet as tj
from taylorjet import (
    DomainError,
    NonFiniteError,
    PoleError,
    SizeLimitError,
    eval_jet,
    eval_point,
    symbolic_derivative,
)
from taylorjet.expr import Binary, Const, Unary, Var, parse_text, structural_eq


class TestEvalPoint:
    @pytest.mark.parametrize(
        "text,x,want",
        [
            ("x^3", 2.0, 8.0),
            ("sin(x)", 0.0, 0.0),
            ("1/(1-x)", 0.5, 2.0),
            ("exp(ln(x))", 3.5, 3.5),
            ("sqrt(x^2)", -2.0, 2.0),
            ("-x^2", 3.0, -9.0),
            ("2*x+1", 4.0, 9.0),
        ],
    )
    def test_values(self, text, x, want):
        assert eval_point(parse_text(text), x) == pytest.approx(want, rel=1e-15)

    def test_division_by_zero(self):
        with pytest.raises(PoleError) as err:
            eval_point(parse_text("1/x"), 0.0)
        assert err.value.position == 1

    def test_ln_domain(self):
        with pytest.raises(DomainError):
            eval_point(parse_text("ln(x)"), -1.0)

    def test_sqrt_domain(self):
        with pytest.raises(DomainError):
            eval_point(parse_text("sqrt(x)"), -1.0)

    def test_zero_to_negative_power(self):
        with pytest.raises(PoleError):
            eval_point(parse_text("x^-1"), 0.0)

    def test_overflow_is_an_error(self):
        with pytest.raises(NonFiniteError):
            eval_point(parse_text("exp(exp(x))"), 10.0)


class TestEvalJet:
    def test_variable(self):
        jet = eval_jet(parse_text("x"), 3.0, 2)
        assert jet.coeffs.tolist() == [3, 1, 0]

    def test_tangent_derivatives(self):
        jet = eval_jet(parse_text("sin(x)/cos(x)"), 0.0, 5)
        assert tj.derivatives(jet) == pytest.approx(
            [0, 1, 0, 2, 0, 16], abs=1e-12
        )

    def test_geometric_derivatives(self):
        jet = eval_jet(parse_text("1/(1-x)"), 0.0, 4)
        assert tj.derivatives(jet).tolist() == [1, 1, 2, 6, 24]

    def test_value_matches_point_evaluation(self):
        rng = np.random.default_rng(2)
        for text in ("sin(x)/cos(x)", "exp(x)/(1+x)", "x^3", "sqrt(1+x)/(2-x)"):
            tree = parse_text(text)
            for _ in range(10):
                x0 = float(rng.uniform(-0.4, 0.4))
                jet = eval_jet(tree, x0, 6)
                assert jet.coeffs[0] == pytest.approx(
                    eval_point(tree, x0), abs=1e-12
                )

    @pytest.mark.parametrize("method", ["recursion", "cramer", "reciprocal"])
    def test_division_methods_agree(self, method):
        tree = parse_text("(1+x^2)/(1-x)")
        want = eval_jet(tree, 0.0, 8).coeffs
        got = eval_jet(tree, 0.0, 8, method=method).coeffs
        assert got == pytest.approx(want.tolist(), rel=1e-10)

    def test_cramer_cap(self):
        with pytest.raises(SizeLimitError):
            eval_jet(parse_text("1/(1-x)"), 0.0, 13, method="cramer")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            eval_jet(parse_text("x"), 0.0, 2, method="lu")

    def test_pole_error_carries_position(self):
        with pytest.raises(PoleError) as err:
            eval_jet(parse_text("1/x"), 0.0, 2)
        assert err.value.position == 1

    def test_domain_error_carries_position(self):
        with pytest.raises(DomainError) as err:
            eval_jet(parse_text("2+ln(x)"), -3.0, 2)
        assert err.value.position == 2

    def test_compensated_close_to_default(self):
        tree = parse_text("exp(x)/(1+x)")
        a = eval_jet(tree, 0.25, 10).coeffs
        b = eval_jet(tree, 0.25, 10, compensated=True).coeffs
        assert b == pytest.approx(a.tolist(), rel=1e-13)


class TestSymbolicDerivative:
    def test_var(self):
        assert structural_eq(symbolic_derivative(Var()), Const(1.0))

    def test_const(self):
        assert structural_eq(symbolic_derivative(Const(5.0)), Const(0.0))

    def test_quotient_rule_shape(self):
        # d(x/sin x) = (sin x - x cos x) / sin(x)^2 after light rules
        got = symbolic_derivative(parse_text("x/sin(x)"))
        want = Binary(
            "/",
            Binary(
                "-",
                Unary("sin", Var()),
                Binary("*", Var(), Unary("cos", Var())),
            ),
            Binary("^", Unary("sin", Var()), Const(2.0)),
        )
        assert structural_eq(got, want)

    def test_product_rule(self):
        got = symbolic_derivative(parse_text("x*sin(x)"))
        want = Binary(
            "+",
            Unary("sin", Var()),
            Binary("*", Var(), Unary("cos", Var())),
        )
        assert structural_eq(got, want)

    def test_power_rule(self):
        got = symbolic_derivative(parse_text("x^3"))
        # the trailing "* 1" from the chain rule is dropped by light rules
        want = Binary("*", Const(3.0), Binary("^", Var(), Const(2.0)))
        assert structural_eq(got, want)

    def test_chain_rule_through_exp(self):
        got = symbolic_derivative(parse_text("exp(x^2)"))
        want = Binary(
            "*",
            Unary("exp", Binary("^", Var(), Const(2.0))),
            Binary("*", Const(2.0), Var()),
        )
        assert structural_eq(got, want)

    @pytest.mark.parametrize(
        "text,x,want",
        [
            ("x^3", 1.0, 3.0),
            ("sin(x)", 0.0, 1.0),
            ("1/(1-x)", 0.0, 1.0),
            ("sqrt(x)", 4.0, 0.25),
            ("ln(x)", 2.0, 0.5),
        ],
    )
    def test_numeric_values(self, text, x, want):
        dtree = symbolic_derivative(parse_text(text))
        assert eval_point(dtree, x) == pytest.approx(want, rel=1e-12)


class TestDerivativeShiftProperty:
    # coefficient j of the derivative jet is (j+1) times coefficient j+1
    # of the original jet
    @pytest.mark.parametrize(
        "text,x0",
        [
            ("sin(x)/cos(x)", 0.2),
            ("exp(x)/(1+x)", 0.0),
            ("(x/(1+x))/(2-x)", 0.0),
            ("x/sin(x)", 1.0),
            ("sqrt(1+x)/(2-x)", 0.1),
        ],
    )
    def test_shift(self, text, x0):
        n = 7
        tree = parse_text(text)
        base = eval_jet(tree, x0, n)
        shifted = eval_jet(symbolic_derivative(tree), x0, n - 1)
        for j in range(n):
            want = (j + 1) * base.coeffs[j + 1]
            got = shifted.coeffs[j]
            if abs(want) < 1e-8:
                assert abs(got - want) <= 1e-9
            else:
                assert abs(got - want) <= 1e-9 * abs(want)
