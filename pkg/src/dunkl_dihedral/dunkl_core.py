"""Dunkl operators, the group-algebra element A, resolvents H_n and the intertwiner V_k.

All operators act on homogeneous polynomials through dense matrices in the
monomial basis.  Matrices are cached per (s, k, n): the multiplicity enters
the caches through :attr:`Multiplicity.key`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import coeffs
from .errors import ConvergenceError, RegularityError, ValidationError
from .group import DihedralSystem, GroupAlgebraMap, Multiplicity
from .poly import (
    HomogeneousPolynomial,
    action_matrix,
    derivative_matrices,
    directional_matrix,
    divided_difference_matrix,
    linear_form,
    multiply_x_matrices,
)

COND_THRESHOLD = 1e12


@dataclass(frozen=True)
class OperatorMatrix:
    """A linear endomorphism of the degree-``n`` space, in the monomial basis."""

    degree: int
    matrix: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.degree, self.matrix @ other.matrix)
        if isinstance(other, HomogeneousPolynomial):
            return HomogeneousPolynomial(other.degree, self.matrix @ other.coeffs)
        return self.matrix @ other


def _root_values(key):
    s, k1, k2 = key
    cast = (lambda z: z.real) if k1.imag == 0 and k2.imag == 0 else (lambda z: z)
    vals = []
    for j in range(1, s + 1):
        kv = k1 if (s % 2 or j % 2 == 0) else k2
        vals.append(cast(kv))
    return vals


def _gamma(key):
    return sum(_root_values(key))


# --- Dunkl operators ------------------------------------------------------------


@lru_cache(maxsize=2048)
def _dunkl_matrix(key, xi: tuple, n: int) -> np.ndarray:
    s = key[0]
    sys_ = DihedralSystem(s)
    mat = directional_matrix(xi, n).astype(complex)
    for j, (kv, alpha) in enumerate(zip(_root_values(key), sys_.positive_roots), start=1):
        weight = kv * (alpha[0] * xi[0] + alpha[1] * xi[1])
        if weight == 0:
            continue
        mat = mat + weight * divided_difference_matrix(sys_.reflection_of_root(j), tuple(alpha), n)
    mat.setflags(write=False)
    return mat


def dunkl_matrix(xi, n: int, k: Multiplicity) -> np.ndarray:
    """Matrix of ``T_xi`` from degree ``n`` to degree ``n - 1`` (``n >= 1``)."""
    if n < 1:
        raise ValidationError("Dunkl operators lower the degree; need n >= 1")
    return _dunkl_matrix(k.key, (float(xi[0]), float(xi[1])), n)


def apply_dunkl(xi, p: HomogeneousPolynomial, k: Multiplicity) -> HomogeneousPolynomial:
    """``T_xi p = d_xi p + sum_a k(a) <a, xi> (p - p o sigma_a) / <a, .>``."""
    if p.degree == 0:
        return HomogeneousPolynomial.zero(0)
    xi = np.asarray(xi)
    if np.iscomplexobj(xi):
        re = dunkl_matrix(xi.real, p.degree, k) @ p.coeffs
        im = dunkl_matrix(xi.imag, p.degree, k) @ p.coeffs
        return HomogeneousPolynomial(p.degree - 1, re + 1j * im)
    return HomogeneousPolynomial(p.degree - 1, dunkl_matrix(xi, p.degree, k) @ p.coeffs)


# --- the element A and its resolvent --------------------------------------------


def element_A(k: Multiplicity) -> GroupAlgebraMap:
    """``A = sum_{a in R+} k(a) sigma_a``."""
    sys_ = k.system
    return GroupAlgebraMap(
        k.s, {sys_.reflection_of_root(j): k.on_root(j) for j in range(1, k.s + 1)}
    )


def matrix_of(n: int, m: GroupAlgebraMap) -> OperatorMatrix:
    """Matrix of ``sum_g c(g) g`` acting on the degree-``n`` space."""
    out = np.zeros((n + 1, n + 1), dtype=complex)
    for g in sorted(m):
        c = m[g]
        if c != 0:
            out += complex(c) * action_matrix(g, n)
    return OperatorMatrix(n, out)


@lru_cache(maxsize=1024)
def _a_matrix(key, n: int) -> np.ndarray:
    s = key[0]
    sys_ = DihedralSystem(s)
    out = np.zeros((n + 1, n + 1), dtype=complex)
    for j, kv in enumerate(_root_values(key), start=1):
        if kv != 0:
            out += kv * action_matrix(sys_.reflection_of_root(j), n)
    out.setflags(write=False)
    return out


def A_matrix(n: int, k: Multiplicity) -> OperatorMatrix:
    """``A_n``: the restriction of A to the degree-``n`` space."""
    return OperatorMatrix(n, _a_matrix(k.key, n))


def _bombieri_scale(n: int) -> np.ndarray:
    # orthogonal maps act unitarily on coefficients divided by sqrt(binomial)
    return np.sqrt(np.array([comb(n, i) for i in range(n + 1)], dtype=float))


@lru_cache(maxsize=1024)
def _resolvent(key, n: int) -> np.ndarray:
    a = _a_matrix(key, n)
    shift = n + _gamma(key)
    system = shift * np.eye(n + 1) - a
    scale = _bombieri_scale(n)
    scaled = system * scale[None, :] / scale[:, None]
    cond = np.linalg.cond(scaled)
    if not np.isfinite(cond) or cond > COND_THRESHOLD:
        raise RegularityError(
            f"(n + gamma) - A_n is numerically singular at n={n} (condition {cond:.3e}); "
            "k is outside M* here or marginal"
        )
    h_scaled = np.linalg.solve(scaled, np.eye(n + 1))
    h = h_scaled * scale[:, None] / scale[None, :]
    # one step of iterative refinement in the monomial basis
    residual = np.eye(n + 1) - system @ h
    h = h + (h_scaled @ (residual * scale[:, None] / scale[None, :])) * scale[:, None] / scale[None, :]
    h.setflags(write=False)
    return h


def resolvent_direct(n: int, k: Multiplicity) -> OperatorMatrix:
    """``H_n = ((n + gamma) - A_n)^-1`` by a dense solve."""
    if n < 1:
        raise ValidationError("resolvents are defined for n >= 1")
    return OperatorMatrix(n, _resolvent(k.key, n))


def series_terms_needed(n: int, k: Multiplicity, tol: float) -> int:
    """Smallest M whose geometric tail bound ``(d/|N|)^(M+1) / (|N| - d)`` is <= tol."""
    big_n = abs(n + complex(k.gamma))
    d = float(k.delta)
    if d == 0:
        return 0
    ratio = d / big_n
    m = 0
    tail = ratio / (big_n - d)
    while tail > tol:
        m += 1
        tail *= ratio
        if m > 100_000:
            raise ConvergenceError("resolvent series needs more than 1e5 terms")
    return m


def resolvent_series(n: int, k: Multiplicity, tol: float = 1e-13) -> OperatorMatrix:
    """``H_n = sum_m A_n^m / (n + gamma)^(m+1)``, truncated by the geometric tail bound."""
    if n < 1:
        raise ValidationError("resolvents are defined for n >= 1")
    if not k.series_ok:
        raise ConvergenceError(
            f"resolvent series requires delta < |1 + gamma|; got delta={k.delta}, "
            f"|1 + gamma|={abs(1 + complex(k.gamma))}"
        )
    a = _a_matrix(k.key, n)
    big_n = n + complex(k.gamma)
    terms = series_terms_needed(n, k, tol)
    power = np.eye(n + 1, dtype=complex) / big_n
    total = power.copy()
    for _ in range(terms):
        power = a @ power / big_n
        total += power
    return OperatorMatrix(n, total)


def resolvent_as_group_algebra(n: int, k: Multiplicity) -> GroupAlgebraMap:
    """``H_n`` as ``sum_g C_n(g) g``."""
    if not k.series_ok:
        raise ConvergenceError("group-algebra resolvent requires delta < |1 + gamma|")
    return coeffs.C_map(n, k)


# --- the intertwining operator ----------------------------------------------------


def intertwine(p: HomogeneousPolynomial, x, k: Multiplicity) -> complex:
    """``V_k(p)(x) = (d_x H)^n p`` for homogeneous ``p`` of degree n."""
    x = (float(x[0]), float(x[1]))
    q = p.coeffs
    for m in range(p.degree, 0, -1):
        q = _resolvent(k.key, m) @ q
        q = directional_matrix(x, m) @ q
    return complex(q[0])


def intertwine_poly(p: HomogeneousPolynomial, k: Multiplicity) -> HomogeneousPolynomial:
    """``V_k(p)`` as a polynomial in x.

    Carries a bihomogeneous array ``C[a, b]`` (x-monomial a, argument
    monomial b): each step applies ``H_m`` to the argument, then
    ``d_x = x1 d1 + x2 d2`` moves one degree from the argument to x.
    """
    n = p.degree
    coef = p.coeffs[None, :].astype(complex)
    for m in range(n, 0, -1):
        coef = coef @ _resolvent(k.key, m).T
        d1, d2 = derivative_matrices(m)
        m1, m2 = multiply_x_matrices(n - m)
        coef = m1 @ (coef @ d1.T) + m2 @ (coef @ d2.T)
    return HomogeneousPolynomial(n, coef[:, 0])


def intertwine_naive(p: HomogeneousPolynomial, x, k: Multiplicity) -> complex:
    """Tuple sum ``sum C(g_1..g_n) d_{g_1 x} ... d_{g_n x} p`` over G^n (test oracle, small n)."""
    from itertools import product

    from .group import act, compose
    from .poly import directional_derivative

    n = p.degree
    if n > 4:
        raise ValidationError("naive intertwiner is an oracle for n <= 4 only")
    elements = k.system.elements
    cmaps = {m: coeffs.C_map(m, k) for m in range(1, n + 1)}
    total = 0j
    for tup in product(elements, repeat=n):
        # tup = (g_1, ..., g_n); weight C_n(g_n) C_{n-1}(g_n^-1 g_{n-1}) ... C_1(g_2^-1 g_1)
        weight = complex(cmaps[n][tup[-1]]) if n else 1.0
        for j in range(n - 1, 0, -1):
            weight *= complex(cmaps[j][compose(tup[j].inverse, tup[j - 1])])
        if weight == 0:
            continue
        q = p
        for g in tup:
            q = directional_derivative(q, act(g, x))
        total += weight * q.coeffs[0]
    return total


def alternating_product(system: DihedralSystem) -> HomogeneousPolynomial:
    """``prod_{a in R+} <a, x>``."""
    h = HomogeneousPolynomial.constant(1.0)
    for alpha in system.positive_roots:
        h = h * linear_form(alpha)
    return h


def eta_k(k: Multiplicity, order=None):
    """``h(T)[h]``: apply ``T_a`` for every positive root to the alternating polynomial.

    ``order`` permutes the roots (Dunkl operators commute, so it must not matter).
    """
    roots = k.system.positive_roots
    if order is not None:
        roots = [roots[i] for i in order]
    q = alternating_product(k.system)
    for alpha in roots:
        q = apply_dunkl(alpha, q, k)
    value = complex(q.coeffs[0])
    return value.real if k.is_real else value
