"""Graded Dunkl kernel, generalized Bessel function and the alternating polynomial.

Everything is kept graded: ``E_n(., y)`` is the homogeneous degree-``n``
component of ``E_k(., y)`` as a polynomial in x, and series values are
partial sums of evaluated components.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import coeffs
from .dunkl_core import alternating_product, intertwine_poly
from .errors import SizeError
from .group import DihedralSystem, Multiplicity, act, compose
from .poly import HomogeneousPolynomial, group_action, inner_power

MAX_DEGREE_CAP = 60


class ConvergenceWarning(RuntimeWarning):
    """The kernel series hit its degree cap before the stopping rule fired."""


def E_n(n: int, y, k: Multiplicity) -> HomogeneousPolynomial:
    """``E_n(., y) = V_k(<., y>^n) / n!``."""
    return intertwine_poly(inner_power(y, n), k) / math.factorial(n)


def E_n_naive(n: int, x, y, k: Multiplicity) -> complex:
    """``sum_{g_1..g_n} C(g_1..g_n) prod_j <g_j x, y>`` over G^n.

    ``C(g_1..g_n) = C_n(g_n) C_{n-1}(g_n^-1 g_{n-1}) ... C_1(g_2^-1 g_1)``.
    Oracle only: the cost is (2s)^n.
    """
    if n > 3:
        raise SizeError("the tuple-sum oracle is limited to n <= 3")
    if n == 0:
        return 1.0 + 0j
    elements = k.system.elements
    cmaps = {m: coeffs.C_map(m, k) for m in range(1, n + 1)}
    inner = {g: float(act(g, x) @ np.asarray(y, dtype=float)) for g in elements}
    total = 0j
    for tup in product(elements, repeat=n):
        weight = complex(cmaps[n][tup[-1]])
        for j in range(n - 1, 0, -1):
            weight *= complex(cmaps[j][compose(tup[j].inverse, tup[j - 1])])
        term = weight
        for g in tup:
            term *= inner[g]
        total += term
    return total


def bessel_tuple_term(n: int, x, y, k: Multiplicity) -> complex:
    """Degree-``n`` term of the group-averaged kernel from the tuple formula.

    ``(1/|G|)(1/n) sum_{g_1..g_n} C_{n-1}(g_n^-1 g_{n-1}) ... C_1(g_2^-1 g_1) prod_j <g_j x, y>``.
    """
    if n > 3:
        raise SizeError("the tuple-sum oracle is limited to n <= 3")
    if n == 0:
        return 1.0 + 0j
    elements = k.system.elements
    cmaps = {m: coeffs.C_map(m, k) for m in range(1, n)}
    inner = {g: float(act(g, x) @ np.asarray(y, dtype=float)) for g in elements}
    total = 0j
    for tup in product(elements, repeat=n):
        weight = 1.0 + 0j
        for j in range(n - 1, 0, -1):
            weight *= complex(cmaps[j][compose(tup[j].inverse, tup[j - 1])])
        for g in tup:
            weight *= inner[g]
        total += weight
    return total / (len(elements) * n)


def group_average(p: HomogeneousPolynomial, system: DihedralSystem) -> HomogeneousPolynomial:
    """``x -> (1/|G|) sum_g p(g x)``."""
    total = HomogeneousPolynomial.zero(p.degree)
    for g in system.elements:
        total = total + group_action(g, p)
    return total / system.order


def alternating_poly(system: DihedralSystem) -> HomogeneousPolynomial:
    """The fundamental alternating polynomial ``h(x) = prod_{a in R+} <a, x>``."""
    return alternating_product(system)


@dataclass
class GradedKernel:
    """Homogeneous components of ``E_k(., y)`` (or of its group average), built lazily."""

    y: tuple
    k: Multiplicity
    averaged: bool = False
    components: list = field(default_factory=list)

    def __post_init__(self):
        self.y = (float(self.y[0]), float(self.y[1]))

    def component(self, n: int) -> HomogeneousPolynomial:
        while len(self.components) <= n:
            m = len(self.components)
            p = E_n(m, self.y, self.k)
            if self.averaged:
                p = group_average(p, self.k.system)
            self.components.append(p)
        return self.components[n]

    def __getitem__(self, n: int) -> HomogeneousPolynomial:
        return self.component(n)

    def terms(self, x, n_max: int) -> list[complex]:
        return [self.component(n)(x) for n in range(n_max + 1)]

    def partial_sum(self, x, n_max: int) -> complex:
        return complex(sum(self.terms(x, n_max)))


@dataclass(frozen=True)
class KernelValue:
    """A truncated series value with its truncation report."""

    value: complex
    n_used: int
    tail_estimate: float
    converged: bool
    last_term: float

    def as_dict(self) -> dict:
        return {
            "value_re": float(self.value.real),
            "value_im": float(self.value.imag),
            "N_used": self.n_used,
            "tail_estimate": self.tail_estimate,
            "converged": self.converged,
        }


def sum_graded(graded: GradedKernel, x, tol: float = 1e-12, max_degree: int = MAX_DEGREE_CAP) -> KernelValue:
    """Sum components until three consecutive terms are below ``tol * |partial sum|``."""
    max_degree = min(max_degree, MAX_DEGREE_CAP)
    total = 0j
    small = 0
    term = 0j
    n = 0
    for n in range(max_degree + 1):
        term = graded.component(n)(x)
        total += term
        # odd components of the averaged kernel vanish identically
        small = small + 1 if abs(term) <= tol * abs(total) else 0
        if small >= 3:
            break
    converged = small >= 3
    r = float(np.hypot(*x) * np.hypot(*graded.y))
    tail = r ** (n + 1) / math.factorial(n + 1)
    if not converged:
        warnings.warn(
            f"kernel series reached degree {n} without settling; last term {abs(term):.3e}",
            ConvergenceWarning,
            stacklevel=2,
        )
    return KernelValue(total, n, tail, converged, float(abs(term)))


def graded_kernel(y, k: Multiplicity) -> GradedKernel:
    return GradedKernel(tuple(y), k)


def graded_bessel(y, k: Multiplicity) -> GradedKernel:
    return GradedKernel(tuple(y), k, averaged=True)


def dunkl_kernel(x, y, k: Multiplicity, tol: float = 1e-12, max_degree: int = MAX_DEGREE_CAP) -> KernelValue:
    """``E_k(x, y) = sum_n E_n(x, y)`` with adaptive truncation."""
    if not np.any(np.asarray(y, dtype=float)):
        return KernelValue(1.0 + 0j, 0, 0.0, True, 0.0)
    return sum_graded(graded_kernel(y, k), x, tol, max_degree)


def generalized_bessel(x, y, k: Multiplicity, tol: float = 1e-12, max_degree: int = MAX_DEGREE_CAP) -> KernelValue:
    """``E_k^G(x, y) = (1/|G|) sum_g E_k(g x, y)``, averaging components before evaluation."""
    if not np.any(np.asarray(y, dtype=float)):
        return KernelValue(1.0 + 0j, 0, 0.0, True, 0.0)
    return sum_graded(graded_bessel(y, k), x, tol, max_degree)
