"""Homogeneous polynomials in two real variables with complex coefficients.

A degree-``n`` polynomial stores ``n + 1`` coefficients; entry ``i`` multiplies
the monomial ``x1**(n - i) * x2**i``.  Linear maps between homogeneous
spaces (group actions, derivatives, divided differences) are exposed as
dense matrices acting on these coefficient vectors.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .errors import ConsistencyError
from .group import DihedralElement

DIVISION_TOL = 1e-12


class HomogeneousPolynomial:
    """Degree-``n`` homogeneous polynomial ``sum_i c_i x1^(n-i) x2^i``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError(f"degree must be >= 0, got {degree}")
        if coeffs is None:
            arr = np.zeros(degree + 1, dtype=complex)
        else:
            arr = np.array(coeffs, dtype=complex).reshape(-1)
        if arr.shape != (degree + 1,):
            raise ValueError(f"degree {degree} needs {degree + 1} coefficients, got {arr.size}")
        arr.setflags(write=False)
        self.degree = degree
        self.coeffs = arr

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPolynomial":
        return cls(degree)

    @classmethod
    def constant(cls, value) -> "HomogeneousPolynomial":
        return cls(0, [value])

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1.0) -> "HomogeneousPolynomial":
        """``coeff * x1**a * x2**b``."""
        c = np.zeros(a + b + 1, dtype=complex)
        c[b] = coeff
        return cls(a + b, c)

    def __call__(self, x) -> complex:
        return evaluate(self, x)

    def __add__(self, other):
        _same_degree(self, other)
        return HomogeneousPolynomial(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same_degree(self, other)
        return HomogeneousPolynomial(self.degree, self.coeffs - other.coeffs)

    def __neg__(self):
        return HomogeneousPolynomial(self.degree, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            return HomogeneousPolynomial(self.degree + other.degree, np.convolve(self.coeffs, other.coeffs))
        return HomogeneousPolynomial(self.degree, self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return HomogeneousPolynomial(self.degree, self.coeffs / scalar)

    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def allclose(self, other, rtol=1e-12, atol=0.0) -> bool:
        return self.degree == other.degree and relative_error(self, other) <= rtol + atol

    def __repr__(self) -> str:
        return f"HomogeneousPolynomial(degree={self.degree}, coeffs={self.coeffs.tolist()})"


def _same_degree(p, q):
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def relative_error(p: HomogeneousPolynomial, q: HomogeneousPolynomial) -> float:
    """Max coefficient difference scaled by the larger max coefficient (absolute if both vanish)."""
    _same_degree(p, q)
    diff = float(np.max(np.abs(p.coeffs - q.coeffs)))
    scale = max(p.norm(), q.norm())
    return diff / scale if scale > 0 else diff


def evaluate(p: HomogeneousPolynomial, x) -> complex:
    """Horner scheme in ``x1`` with running powers of ``x2``; fixed summation order."""
    x1, x2 = complex(x[0]), complex(x[1])
    coeffs = p.coeffs
    acc = complex(coeffs[0])
    pow2 = 1.0 + 0j
    for c in coeffs[1:]:
        pow2 *= x2
        acc = acc * x1 + c * pow2
    return acc


# --- linear maps between homogeneous spaces -------------------------------------


def _linear_powers(a, b, n):
    """Coefficient arrays of ``(a x1 + b x2)**e`` for ``e = 0..n``."""
    out = [np.ones(1, dtype=complex)]
    lin = np.array([a, b], dtype=complex)
    for _ in range(n):
        out.append(np.convolve(out[-1], lin))
    return out


def substitution_matrix(m: np.ndarray, n: int) -> np.ndarray:
    """Matrix of ``p -> p(M x)`` on degree-``n`` coefficient vectors."""
    (a, b), (c, d) = np.asarray(m)
    first = _linear_powers(a, b, n)
    second = _linear_powers(c, d, n)
    out = np.empty((n + 1, n + 1), dtype=complex)
    for i in range(n + 1):
        out[:, i] = np.convolve(first[n - i], second[i])
    return out


@lru_cache(maxsize=4096)
def action_matrix(g: DihedralElement, n: int) -> np.ndarray:
    """Matrix of ``p -> (x -> p(g x))`` on the degree-``n`` space."""
    mat = substitution_matrix(g.matrix(), n)
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=256)
def derivative_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of d/dx1 and d/dx2 from degree ``n`` to degree ``n - 1``."""
    d1 = np.zeros((n, n + 1))
    d2 = np.zeros((n, n + 1))
    for i in range(n + 1):
        if n - i > 0:
            d1[i, i] = n - i
        if i > 0:
            d2[i - 1, i] = i
    d1.setflags(write=False)
    d2.setflags(write=False)
    return d1, d2


def directional_matrix(xi, n: int) -> np.ndarray:
    d1, d2 = derivative_matrices(n)
    return xi[0] * d1 + xi[1] * d2


def _divide_linear(q: np.ndarray, a: complex, b: complex) -> tuple[np.ndarray, float]:
    """Divide coefficient vector(s) ``q`` (degree n, along axis 0) by ``a x1 + b x2``.

    Returns the quotient and the max-abs remainder.  Runs forwards when
    ``|a| >= |b|`` and backwards otherwise, so the recurrence ratio stays <= 1.
    """
    n = q.shape[0] - 1
    r = np.zeros((n,) + q.shape[1:], dtype=complex)
    if abs(a) >= abs(b):
        prev = 0
        for i in range(n):
            r[i] = (q[i] - b * prev) / a
            prev = r[i]
        remainder = q[n] - b * prev
    else:
        nxt = 0
        for i in range(n, 0, -1):
            r[i - 1] = (q[i] - a * nxt) / b
            nxt = r[i - 1]
        remainder = q[0] - a * nxt
    return r, float(np.max(np.abs(remainder))) if np.size(remainder) else 0.0


@lru_cache(maxsize=4096)
def divided_difference_matrix(g: DihedralElement, alpha: tuple, n: int) -> np.ndarray:
    """Matrix of ``p -> (p - p o g) / <alpha, .>`` from degree ``n`` to ``n - 1``.

    ``g`` must be the reflection through ``alpha``-perp.
    """
    diff = np.eye(n + 1, dtype=complex) - action_matrix(g, n)
    quotient, rem = _divide_linear(diff, alpha[0], alpha[1])
    scale = max(1.0, float(np.max(np.abs(diff))))
    if rem > DIVISION_TOL * scale * (n + 1):
        raise ConsistencyError(f"divided difference left remainder {rem:.3e} at degree {n}")
    quotient.setflags(write=False)
    return quotient


# --- operations on polynomials --------------------------------------------------


def directional_derivative(p: HomogeneousPolynomial, xi) -> HomogeneousPolynomial:
    """``xi_1 d1 p + xi_2 d2 p``; a constant maps to the zero constant."""
    if p.degree == 0:
        return HomogeneousPolynomial.zero(0)
    return HomogeneousPolynomial(p.degree - 1, directional_matrix(xi, p.degree) @ p.coeffs)


def group_action(g: DihedralElement, p: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """The polynomial ``x -> p(g x)``."""
    return HomogeneousPolynomial(p.degree, action_matrix(g, p.degree) @ p.coeffs)


def divided_difference(p: HomogeneousPolynomial, alpha) -> HomogeneousPolynomial:
    """Exact quotient ``(p(x) - p(sigma_alpha x)) / <alpha, x>`` for a unit root ``alpha``."""
    if p.degree == 0:
        return HomogeneousPolynomial.zero(0)
    alpha = np.asarray(alpha, dtype=float)
    refl = np.eye(2) - 2.0 * np.outer(alpha, alpha) / float(alpha @ alpha)
    diff = p.coeffs - substitution_matrix(refl, p.degree) @ p.coeffs
    quotient, rem = _divide_linear(diff, alpha[0], alpha[1])
    if rem > DIVISION_TOL * max(1.0, p.norm()) * (p.degree + 1):
        raise ConsistencyError(f"divided difference left remainder {rem:.3e}")
    return HomogeneousPolynomial(p.degree - 1, quotient)


def divide_linear(p: HomogeneousPolynomial, v) -> tuple[HomogeneousPolynomial, float]:
    """Quotient of ``p`` by ``<v, x>`` and the size of the remainder."""
    quotient, rem = _divide_linear(p.coeffs, complex(v[0]), complex(v[1]))
    return HomogeneousPolynomial(p.degree - 1, quotient), rem


def inner_power(y, n: int) -> HomogeneousPolynomial:
    """``<x, y>**n`` expanded in the monomial basis."""
    y1, y2 = complex(y[0]), complex(y[1])
    coeffs = [comb(n, i) * y1 ** (n - i) * y2**i for i in range(n + 1)]
    return HomogeneousPolynomial(n, coeffs)


def linear_form(v) -> HomogeneousPolynomial:
    """``<v, x>`` as a degree-1 polynomial."""
    return HomogeneousPolynomial(1, [v[0], v[1]])


def multiply_x_matrices(j: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of multiplication by x1 and by x2 from degree ``j`` to ``j + 1``."""
    m1 = np.zeros((j + 2, j + 1))
    m2 = np.zeros((j + 2, j + 1))
    idx = np.arange(j + 1)
    m1[idx, idx] = 1.0
    m2[idx + 1, idx] = 1.0
    return m1, m2
