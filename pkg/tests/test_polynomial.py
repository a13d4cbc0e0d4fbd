import numpy as np
import pytest
import sympy

from spinorlab.exceptions import AsymmetricEntry, DegenerateMetric, ParseError, SchemaError, UnsupportedDimension
from spinorlab.polynomial import (
    PolynomialMetric,
    ScalarJet,
    format_coefficient,
    format_polynomial,
    parse_polynomial,
    parse_polynomial_metric,
)

x1, x2, x3, x4 = sympy.symbols("x1:5")

WAVE = """\
# null coordinates
m = 2
g[0][1] = 1
g[1][0] = 1
g[2][3] = 1 + x1^2*x2   # deformed
"""


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x1*x2 - 3/4*x3^2", x1 * x2 - sympy.Rational(3, 4) * x3**2),
        ("(1,2)*x1", (1 + 2 * sympy.I) * x1),
        ("-(x1 + 1)^2", -(x1**2) - 2 * x1 - 1),
        ("0.5*x4 / 2", x4 / 4),
    ],
)
def test_parse_polynomial(text, expected):
    assert sympy.expand(parse_polynomial(text) - expected) == 0


@pytest.mark.parametrize(
    "text, column",
    [
        ("x1 / x2", 4),
        ("x0 + 1", 1),
        ("x1^x2", 4),
        ("(x1,1)", 2),
        ("", 1),
        ("2 $", 3),
        ("(x1 + 2", 8),
        ("x1 x2", 4),
    ],
)
def test_parse_polynomial_errors(text, column):
    with pytest.raises(ParseError) as exc_info:
        parse_polynomial(text, line=7)
    assert exc_info.value.line == 7
    assert exc_info.value.column == column


def test_parse_metric():
    metric = parse_polynomial_metric(WAVE)
    assert metric.m == 2
    assert metric.entry(1, 0) == 1
    assert sympy.expand(metric.entry(3, 2) - 1 - x1**2 * x2) == 0
    assert metric.entry(0, 0) == 0


def test_parse_metric_infers_dimension():
    assert parse_polynomial_metric("g[0][1] = x5").m == 3
    assert parse_polynomial_metric("g[0][1] = 1\ng[2][3] = 1", m=4).n == 8


def test_parse_metric_error_position():
    with pytest.raises(ParseError) as exc_info:
        parse_polynomial_metric("g[0][1] = 1\ng[2][3] = 1 + * x2\n")
    assert (exc_info.value.line, exc_info.value.column) == (2, 15)
    with pytest.raises(ParseError) as exc_info:
        parse_polynomial_metric("g[0][1] = 1\n\n  h = 3\n")
    assert (exc_info.value.line, exc_info.value.column) == (3, 3)


def test_parse_metric_conflicts():
    with pytest.raises(AsymmetricEntry):
        parse_polynomial_metric("g[0][1] = x1\ng[1][0] = x2")
    with pytest.raises(ParseError):
        parse_polynomial_metric("g[0][1] = x1\ng[0][1] = x1")


def test_metric_validation():
    with pytest.raises(UnsupportedDimension):
        PolynomialMetric(0, {})
    with pytest.raises(SchemaError):
        PolynomialMetric(2, {(0, 4): 1})
    with pytest.raises(SchemaError):
        PolynomialMetric(2, {(0, 1): "y"})
    with pytest.raises(AsymmetricEntry):
        PolynomialMetric(2, {(0, 1): x1, (1, 0): x2})


def test_text_and_json_forms():
    metric = parse_polynomial_metric(WAVE + "g[0][0] = (1,-1/2)*x3\n")
    assert parse_polynomial_metric(metric.to_text()) == metric
    assert PolynomialMetric.from_json(metric.to_json()) == metric
    with pytest.raises(SchemaError):
        PolynomialMetric.from_json({"entries": []})


def test_format():
    assert format_coefficient(sympy.Rational(-1, 2)) == "(-1/2)"
    assert format_coefficient(1 + 2 * sympy.I) == "(1,2)"
    assert format_polynomial(0) == "0"
    assert format_polynomial(3 * x1 * x2**2) == "3*x1*x2^2"


def test_jet():
    metric = parse_polynomial_metric(WAVE)
    jet = metric.jet([1, 2, 0, 0])
    assert jet.g[2, 3] == jet.g[3, 2] == 3
    assert jet.dg[0, 2, 3] == 4
    assert jet.dg[1, 3, 2] == 1
    assert jet.d2g[0, 0, 2, 3] == 4
    assert jet.d2g[0, 1, 2, 3] == jet.d2g[1, 0, 2, 3] == 2
    assert jet.d3g[0, 0, 1, 2, 3] == jet.d3g[1, 0, 0, 3, 2] == 2
    assert np.allclose(jet.ginv @ jet.g, np.eye(4))
    assert all(value == 0 for value in jet.symmetry_residual().values())
    assert np.allclose(metric.evaluate([0, 0, 0, 0]), metric.jet([0, 0, 0, 0], order=0).g)


def test_jet_errors():
    metric = parse_polynomial_metric("g[0][1] = x1\ng[2][3] = 1")
    with pytest.raises(DegenerateMetric):
        metric.jet([0, 0, 0, 0])
    with pytest.raises(SchemaError):
        metric.jet([1, 0])


def test_scaled():
    metric = parse_polynomial_metric(WAVE).scaled(2 * x1)
    assert metric.entry(0, 1) == 2 * x1


def test_scalar_jet():
    jet = ScalarJet.at("x1^2*x2", 4, [1, 2, 0, 0])
    assert jet.value == 2
    assert np.allclose(jet.gradient, [4, 1, 0, 0])
    assert np.allclose(jet.hessian[:2, :2], [[4, 2], [2, 0]])
    with pytest.raises(SchemaError):
        ScalarJet.at("y", 4, [0, 0, 0, 0])
