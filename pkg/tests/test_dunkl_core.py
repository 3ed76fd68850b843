import itertools
import math

import numpy as np
import pytest

from dunkl_dihedral import coeffs
from dunkl_dihedral.dunkl_core import (
    A_matrix,
    apply_dunkl,
    element_A,
    eta_k,
    intertwine,
    intertwine_naive,
    intertwine_poly,
    matrix_of,
    resolvent_as_group_algebra,
    resolvent_direct,
    resolvent_series,
)
from dunkl_dihedral.errors import ConvergenceError, RegularityError
from dunkl_dihedral.group import DihedralElement, GroupAlgebraMap, Multiplicity, act
from dunkl_dihedral.kernel import alternating_poly
from dunkl_dihedral.poly import HomogeneousPolynomial, directional_derivative, inner_power, relative_error

rng = np.random.default_rng(11)
E1, E2 = (1.0, 0.0), (0.0, 1.0)


def random_poly(n):
    return HomogeneousPolynomial(n, rng.standard_normal(n + 1))


def test_dunkl_rank_one_examples():
    k = Multiplicity.of(2, "0.3", "0.7")
    x1 = HomogeneousPolynomial.monomial(1, 0)
    x2 = HomogeneousPolynomial.monomial(0, 1)
    # (1, 0) is alpha_1, an odd-index root, so it carries k2
    assert apply_dunkl(E1, x1, k).coeffs[0] == pytest.approx(1 + 2 * 0.7)
    assert apply_dunkl(E2, x2, k).coeffs[0] == pytest.approx(1 + 2 * 0.3)
    assert apply_dunkl(E1, x2, k).norm() == 0


def test_dunkl_operator_pointwise_oracle():
    k = Multiplicity.of(4, 1)
    y = np.array([0.6, -1.3])
    p = inner_power(y, 2)
    tp = apply_dunkl(E1, p, k)

    def f(x):
        return float(np.asarray(x) @ y) ** 2

    h = 1e-5
    for x in rng.standard_normal((20, 2)):
        value = (f(x + h * np.array(E1)) - f(x - h * np.array(E1))) / (2 * h)
        for j, alpha in enumerate(k.system.positive_roots, start=1):
            g = k.system.reflection_of_root(j)
            value += float(k.on_root(j)) * alpha[0] * (f(x) - f(act(g, x))) / float(alpha @ x)
        assert abs(tp(x) - value) <= 1e-9 * max(1.0, abs(value))


@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_dunkl_operators_commute(s):
    k = Multiplicity.of(s, "1/2") if s % 2 else Multiplicity.of(s, 1, "1/3")
    for n in range(2, 8):
        p = random_poly(n)
        a = apply_dunkl(E1, apply_dunkl(E2, p, k), k)
        b = apply_dunkl(E2, apply_dunkl(E1, p, k), k)
        assert relative_error(a, b) <= 1e-11


def test_element_A():
    a = element_A(Multiplicity.of(4, 1))
    assert all(a[DihedralElement.reflection(j, 4)] == 1 for j in range(4))
    assert all(a[DihedralElement.rotation(j, 4)] == 0 for j in range(4))
    a = element_A(Multiplicity.of(4, 2, 3))
    assert [a[DihedralElement.reflection(j, 4)] for j in range(4)] == [2, 3, 2, 3]
    a = element_A(Multiplicity.of(3, 5))
    assert [a[DihedralElement.reflection(j, 3)] for j in range(3)] == [5, 5, 5]


def test_matrix_of_examples():
    k = Multiplicity.of(4, 2)
    assert np.allclose(matrix_of(1, element_A(k)).matrix, 0, atol=1e-15)
    assert np.allclose(matrix_of(3, GroupAlgebraMap.identity(4)).matrix, np.eye(4))
    assert matrix_of(0, element_A(k)).matrix[0, 0] == pytest.approx(float(k.gamma))
    for n in (2, 5):
        assert np.allclose(A_matrix(n, k).matrix, matrix_of(n, element_A(k)).matrix, atol=1e-12)


@pytest.mark.parametrize("s,k1,k2", [(4, 1, 2), (3, 1, 1), (6, "1/2", "3/2")])
def test_powers_of_A_from_factorization_counts(s, k1, k2):
    k = Multiplicity.of(s, k1, k2)
    table = coeffs.c_table(k, 5)
    for n in (3, 6):
        a = A_matrix(n, k).matrix
        for m in range(6):
            assert np.max(np.abs(matrix_of(n, table[m]).matrix - np.linalg.matrix_power(a, m))) <= 1e-10 * max(
                1.0, float(k.delta) ** m
            )


def test_spectrum_of_A_in_delta_disc():
    for s, k1, k2 in [(3, 1, 1), (4, 1, 2), (6, 0.5, 1.5)]:
        k = Multiplicity.of(s, k1, k2)
        for n in range(1, 10):
            eig = np.linalg.eigvals(A_matrix(n, k).matrix)
            assert np.max(np.abs(eig)) <= float(k.delta) + 1e-8


def test_resolvent_examples():
    k = Multiplicity.of(4, 1)
    assert np.allclose(resolvent_direct(1, k).matrix, np.eye(2) / 5, atol=1e-15)
    zero = Multiplicity.of(5, 0)
    for n in (1, 4, 9):
        assert np.allclose(resolvent_direct(n, zero).matrix, np.eye(n + 1) / n)
        assert np.allclose(resolvent_series(n, zero).matrix, np.eye(n + 1) / n)
    for s, kv, n in [(4, 1, 2), (3, "1/2", 1)]:
        k = Multiplicity.of(s, kv)
        diff = resolvent_series(n, k).matrix - resolvent_direct(n, k).matrix
        assert np.max(np.sum(np.abs(diff), axis=1)) <= 1e-10


@pytest.mark.parametrize("s,k1,k2", [(3, 1, 1), (4, 1, 1), (4, 1, 2), (6, "1/2", "3/2"), (5, "-0.2", "-0.2")])
def test_resolvent_residual(s, k1, k2):
    k = Multiplicity.of(s, k1, k2)
    for n in range(1, 13):
        h = resolvent_direct(n, k).matrix
        system = (n + complex(k.gamma)) * np.eye(n + 1) - A_matrix(n, k).matrix
        assert np.max(np.sum(np.abs(system @ h - np.eye(n + 1)), axis=1)) <= 1e-12


def test_resolvent_singular_multiplicity():
    # gamma = -4/... : n + gamma - A_n singular at n = 1 when 1 + gamma = 0 and A_1 = 0
    k = Multiplicity.of(4, "-1/4")
    with pytest.raises(RegularityError):
        resolvent_direct(1, k)


def test_series_precondition():
    k = Multiplicity.of(4, 1, -1)
    assert not k.series_ok
    with pytest.raises(ConvergenceError, match="delta"):
        resolvent_series(2, k)


def test_resolvent_group_algebra_values():
    k = Multiplicity.of(4, 1)
    cmap = resolvent_as_group_algebra(1, k)
    from fractions import Fraction

    assert cmap[DihedralElement.reflection(0, 4)] == Fraction(1, 9)
    assert cmap[DihedralElement.rotation(1, 4)] == Fraction(4, 45)
    assert cmap[DihedralElement.identity(4)] == Fraction(13, 45)
    for n in range(1, 8):
        diff = matrix_of(n, resolvent_as_group_algebra(n, k)).matrix - resolvent_direct(n, k).matrix
        assert np.max(np.abs(diff)) <= 1e-10


def test_intertwine_examples():
    k = Multiplicity.of(6, 1)
    x = (0.4, -0.9)
    assert intertwine(HomogeneousPolynomial.constant(1), x, k) == 1
    y = (1.2, 0.5)
    for kv in (1, "1/2"):
        for s in (3, 4, 6):
            km = Multiplicity.of(s, kv)
            expected = (x[0] * y[0] + x[1] * y[1]) / (1 + float(km.gamma))
            assert intertwine(inner_power(y, 1), x, km) == pytest.approx(expected, rel=1e-13)
    p = random_poly(5)
    assert intertwine(p, x, Multiplicity.of(4, 0)) == pytest.approx(p(x), rel=1e-13)


def test_intertwine_poly_matches_pointwise():
    k = Multiplicity.of(4, 1, 2)
    for n in range(7):
        p = random_poly(n)
        vp = intertwine_poly(p, k)
        for x in rng.standard_normal((100 // 7 + 1, 2)):
            expected = intertwine(p, x, k)
            assert abs(vp(x) - expected) <= 1e-12 * max(1.0, abs(expected))


def test_intertwine_against_tuple_sum():
    k = Multiplicity.of(4, 1)
    p = inner_power((0.7, -0.3), 2)
    for x in [(0.3, 0.5), (-1.1, 0.2)]:
        assert abs(intertwine(p, x, k) - intertwine_naive(p, x, k)) <= 1e-11


@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_intertwining_property(s):
    k = Multiplicity.of(s, "1/2") if s % 2 else Multiplicity.of(s, 1, 2)
    for n in range(1, 9):
        p = random_poly(n)
        for xi in (E1, E2):
            lhs = apply_dunkl(xi, intertwine_poly(p, k), k)
            rhs = intertwine_poly(directional_derivative(p, xi), k)
            assert relative_error(lhs, rhs) <= 1e-9


def _finite_difference_eta(s):
    # product of central differences along every root is exact on a degree-s polynomial
    h = alternating_poly(Multiplicity.of(s, 0).system)
    roots = Multiplicity.of(s, 0).system.positive_roots
    t = 0.5
    total = 0.0
    for signs in itertools.product((1, -1), repeat=s):
        point = sum(sg * t / 2 * a for sg, a in zip(signs, roots))
        total += math.prod(signs) * h(point).real
    return total / t**s


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
def test_eta_at_zero_multiplicity(s):
    expected = _finite_difference_eta(s)
    assert eta_k(Multiplicity.of(s, 0)) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("k1,k2", [(0.5, 0.5), (0.5, 1), (1, 0.5), (1, 1)])
def test_eta_b2_against_printed_formula(k1, k2):
    from dunkl_dihedral.b2integral import eta_b2_printed

    k = Multiplicity.of(4, k1, k2)
    # the printed constant assumes roots of squared length 2: it is 2^s times h(T)[h] for unit roots
    assert eta_b2_printed(k) / eta_k(k) == pytest.approx(16, rel=1e-10)


def test_eta_order_independent():
    k = Multiplicity.of(6, "0.3", "1.2")
    base = eta_k(k)
    for order in [(5, 4, 3, 2, 1, 0), (2, 0, 5, 1, 4, 3)]:
        assert eta_k(k, order) == pytest.approx(base, rel=1e-10)
