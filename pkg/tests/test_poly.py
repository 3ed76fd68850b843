import numpy as np
import pytest

from dunkl_dihedral.errors import ConsistencyError
from dunkl_dihedral.group import DihedralElement, DihedralSystem, compose
from dunkl_dihedral.poly import (
    HomogeneousPolynomial,
    directional_derivative,
    divided_difference,
    divide_linear,
    evaluate,
    group_action,
    inner_power,
    relative_error,
)

rng = np.random.default_rng(7)
M = HomogeneousPolynomial.monomial


def test_evaluate_examples():
    assert evaluate(M(2, 1), (2, 3)) == 12
    assert evaluate(HomogeneousPolynomial.constant(1), (5, -2)) == 1
    assert evaluate(HomogeneousPolynomial.zero(4), (1.5, 2)) == 0


def test_homogeneity():
    for n in range(8):
        p = HomogeneousPolynomial(n, rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1))
        x, lam = rng.standard_normal(2), 1.7
        assert abs(p(lam * x) - lam**n * p(x)) <= 1e-12 * abs(lam**n * p(x))


def test_directional_derivative_examples():
    assert directional_derivative(M(2, 1), (1, 0)).allclose(M(1, 1, 2.0))
    assert directional_derivative(M(0, 3), (1, 0)).norm() == 0
    y, xi, n = (0.4, -1.1), (0.3, 2.0), 5
    lhs = directional_derivative(inner_power(y, n), xi)
    rhs = inner_power(y, n - 1) * (n * (xi[0] * y[0] + xi[1] * y[1]))
    assert relative_error(lhs, rhs) <= 1e-14
    assert directional_derivative(HomogeneousPolynomial.constant(3), (1, 0)).degree == 0


def test_group_action_examples():
    p = M(1, 0)
    assert group_action(DihedralElement.identity(4), p).allclose(p)
    assert group_action(DihedralElement.rotation(1, 4), p).allclose(M(0, 1, -1.0), atol=1e-15)
    q = HomogeneousPolynomial(5, rng.standard_normal(6))
    g = DihedralElement.reflection(2, 7)
    assert relative_error(group_action(g, group_action(g, q)), q) <= 1e-13


@pytest.mark.parametrize("s", [3, 4, 6])
def test_group_action_is_a_homomorphism(s):
    p = HomogeneousPolynomial(6, rng.standard_normal(7))
    for g in DihedralSystem(s).elements:
        for h in DihedralSystem(s).elements:
            lhs = group_action(g, group_action(h, p))
            assert relative_error(lhs, group_action(compose(h, g), p)) <= 1e-12


def test_divided_difference_examples():
    assert divided_difference(M(3, 0), (1, 0)).allclose(M(2, 0, 2.0))
    assert divided_difference(M(2, 0), (1, 0)).norm() == 0
    assert divided_difference(M(1, 1), (1, 0)).allclose(M(0, 1, 2.0))


def test_divided_difference_of_inner_power():
    alpha = np.array([np.sin(np.pi / 5), -np.cos(np.pi / 5)])
    y, n = np.array([0.8, 0.45]), 6
    refl = np.eye(2) - 2 * np.outer(alpha, alpha)
    q = divided_difference(inner_power(y, n), alpha)
    for x in rng.standard_normal((50, 2)):
        expected = ((x @ y) ** n - ((refl @ x) @ y) ** n) / (alpha @ x)
        assert abs(q(x) - expected) <= 1e-11 * max(1.0, abs(expected))


def test_division_remainder_flags_inconsistency(monkeypatch):
    from dunkl_dihedral import poly

    _, rem = divide_linear(M(2, 0) + M(0, 2), (1, 0))
    assert rem == pytest.approx(1.0)
    # a negative tolerance makes even an exact division fail the remainder check
    monkeypatch.setattr(poly, "DIVISION_TOL", -1.0)
    with pytest.raises(ConsistencyError):
        divided_difference(M(3, 0), (1, 0))


def test_inner_power_examples():
    assert inner_power((1, 0), 3).allclose(M(3, 0))
    assert inner_power((3, 4), 0).allclose(HomogeneousPolynomial.constant(1))
    assert inner_power((1, 1), 2).allclose(HomogeneousPolynomial(2, [1, 2, 1]))
