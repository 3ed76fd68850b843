"""Rotation sums U, complex Dunkl operators and recovery of E_k from its group average.

The plane is identified with C (``y = y1 + i y2``).  With
``T = (T1 - i T2)/2`` and ``Tbar = (T1 + i T2)/2`` one has
``2 T E_k(., w) = conj(w) E_k(., w)`` and ``2 Tbar E_k(., w) = w E_k(., w)``.

All identities are applied degree by degree: a first-order operator maps
the degree-(n+1) component to degree n, so reconstructing ``E_n`` needs the
components of U up to degree ``n + (number of operators)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .dunkl_core import apply_dunkl, eta_k
from .errors import ChartError, DegenerateMultiplicityError, ValidationError
from .group import Multiplicity, act
from .kernel import GradedKernel, alternating_poly, graded_bessel
from .poly import HomogeneousPolynomial, divide_linear

E1 = (1.0, 0.0)
E2 = (0.0, 1.0)


@dataclass
class GradedU:
    """Components ``U_0..U_N`` of ``U(., y)`` with their provenance tag."""

    y: tuple
    k: Multiplicity
    provenance: str
    components: list = field(default_factory=list)

    @property
    def max_degree(self) -> int:
        return len(self.components) - 1

    def __getitem__(self, n: int) -> HomogeneousPolynomial:
        return self.components[n]

    def value(self, x, n_max: int | None = None) -> complex:
        n_max = self.max_degree if n_max is None else n_max
        return complex(sum(self.components[n](x) for n in range(n_max + 1)))


def rotated_points(y, k: Multiplicity) -> list[np.ndarray]:
    """``r_j y`` for ``j = 0..s-1``."""
    s = k.s
    return [act(g, y) for g in k.system.elements[:s]]


def U_from_rotations(y, k: Multiplicity, N: int) -> GradedU:
    """``U_n = sum_{j<s} E_n(., r_j y)``."""
    kernels = [GradedKernel(tuple(w), k) for w in rotated_points(y, k)]
    comps = []
    for n in range(N + 1):
        total = HomogeneousPolynomial.zero(n)
        for ker in kernels:
            total = total + ker[n]
        comps.append(total)
    return GradedU(tuple(map(float, y)), k, "rotation_sum", comps)


def shifted_eta(k: Multiplicity, tol: float = 1e-12):
    eta = eta_k(k)
    if abs(eta) <= tol:
        raise DegenerateMultiplicityError(f"eta_k = {eta} vanishes; the shift construction is undefined")
    return eta


def U_from_definition(y, k: Multiplicity, N: int) -> GradedU:
    """``(|G|/2) {E_k^G + h(.) h(y) E_{k+1}^G / eta_k}`` componentwise.

    The second term contributes at x-degree ``m + s`` from degree m of ``E_{k+1}^G``.
    """
    eta = shifted_eta(k)
    order = k.system.order
    s = k.s
    h = alternating_poly(k.system)
    hy = h(y)
    base = graded_bessel(y, k)
    shifted = graded_bessel(y, k.shifted())
    comps = []
    for n in range(N + 1):
        comp = base[n]
        if n >= s and hy != 0:
            comp = comp + (h * shifted[n - s]) * (hy / eta)
        comps.append(comp * (order / 2))
    return GradedU(tuple(map(float, y)), k, "shift_definition", comps)


def apply_T(p: HomogeneousPolynomial, conj: bool, k: Multiplicity) -> HomogeneousPolynomial:
    """``T p = (T1 - i T2) p / 2``, or ``Tbar p = (T1 + i T2) p / 2`` when ``conj``."""
    t1 = apply_dunkl(E1, p, k)
    t2 = apply_dunkl(E2, p, k)
    sign = 1j if conj else -1j
    return (t1 + t2 * sign) * 0.5


def _complex(y) -> complex:
    return complex(float(y[0]), float(y[1]))


def _require_nonzero(y):
    if abs(_complex(y)) == 0:
        raise ChartError("y = 0: the recovery formulas divide by y (use E_k(x, 0) = 1)")


def _pair_operator(p: HomogeneousPolynomial, a: complex, k: Multiplicity) -> HomogeneousPolynomial:
    """``[a T - conj(a) Tbar] p``; on ``E_k(., w)`` this multiplies by ``i Im(a conj(w))``."""
    return apply_T(p, False, k) * a - apply_T(p, True, k) * a.conjugate()


def _pair_weights(y, q: int, printed: bool) -> list[complex]:
    yc = _complex(y)
    weights = []
    for j in range(1, q):
        w = cmath.exp(1j * math.pi * j / q)
        # a = w^j y kills both E_k(., w^j y) and E_k(., -w^j y)
        weights.append(w if printed else w * yc)
    return weights


def even_recovery_divisor(y, k: Multiplicity, printed: bool = False) -> complex:
    """``2 y prod_j i Im(a_j conj(y))`` for the pair weights ``a_j``.

    With ``a_j = w^j y`` the factors are ``i |y|^2 sin(j pi / q)``; the
    ``printed`` variant uses ``a_j = w^j``.  Raises :class:`ChartError` naming
    the first vanishing factor.
    """
    _require_nonzero(y)
    q = k.s // 2
    yc = _complex(y)
    out = 2 * yc
    for j, a in enumerate(_pair_weights(y, q, printed), start=1):
        factor = (a * yc.conjugate()).imag
        if abs(factor) <= 1e-12 * abs(a) * abs(yc):
            raise ChartError(f"factor j={j}: Im(a_{j} conj(y)) vanishes at y={tuple(y)}")
        out *= 1j * factor
    return out


def recover_graded_even(U: GradedU, printed: bool = False) -> list[HomogeneousPolynomial]:
    """Components of ``E_k(., y)`` from ``[y + 2 Tbar] prod_j [a_j T - conj(a_j) Tbar] U / divisor``.

    ``a_j = w^j y`` with ``w = exp(i pi / q)``; the product leaves only
    ``E_k(., y) + (-1)^(q-1) E_k(., -y)`` and ``y + 2 Tbar`` removes the
    second term.  ``printed=True`` uses ``a_j = w^j`` instead, which does not
    annihilate the other rotated kernels (kept to exhibit the discrepancy).
    Degree n uses ``U_{n+q-1}`` and ``U_{n+q}``; returns ``E_0..E_{N-q}``.
    """
    k = U.k
    if k.s % 2:
        raise ValidationError("the product recovery formula needs an even dihedral system")
    q = k.s // 2
    yc = _complex(U.y)
    divisor = even_recovery_divisor(U.y, k, printed)
    weights = _pair_weights(U.y, q, printed)

    def product_part(p):
        for a in weights:
            p = _pair_operator(p, a, k)
        return p

    parts = [product_part(U[m]) for m in range(q - 1, U.max_degree + 1)]
    out = []
    for n in range(U.max_degree - q + 1):
        comp = parts[n] * yc + apply_T(parts[n + 1], True, k) * 2
        out.append(comp / divisor)
    return out


def recover_kernel_even(x, y, k: Multiplicity, N: int = 30, printed: bool = False) -> complex:
    """``E_k(x, y)`` for s = 2q, rebuilt from the rotation sum U truncated at degree N + q."""
    if k.s % 2:
        raise ValidationError("recover_kernel_even needs an even dihedral system")
    _require_nonzero(y)
    U = U_from_rotations(y, k, N + k.s // 2)
    return complex(sum(c(x) for c in recover_graded_even(U, printed)))


def T_y(p: HomogeneousPolynomial, y, k: Multiplicity) -> HomogeneousPolynomial:
    """``y1 T1 + y2 T2``."""
    return apply_dunkl((float(y[0]), float(y[1])), p, k)


def ident1_graded(U: GradedU) -> list[HomogeneousPolynomial]:
    """``(T_y U)_n``, which should equal ``|y|^2 (1 - (-1)^n) E_n(., y)`` for s = 4."""
    return [T_y(U[m], U.y, U.k) for m in range(1, U.max_degree + 1)]


def recover_graded_b2(U: GradedU) -> list[HomogeneousPolynomial]:
    """Components of ``E_k`` from ``[y + 2 Tbar] T_y U = 2 y |y|^2 E_k`` (s = 4)."""
    k = U.k
    if k.s != 4:
        raise ValidationError("this identity is specific to I2(4)")
    _require_nonzero(U.y)
    yc = _complex(U.y)
    norm2 = abs(yc) ** 2
    tyu = ident1_graded(U)
    out = []
    for n in range(len(tyu) - 1):
        comp = tyu[n] * yc + apply_T(tyu[n + 1], True, k) * 2
        out.append(comp / (2 * yc * norm2))
    return out


def recover_kernel_b2(x, y, k: Multiplicity, N: int = 30) -> complex:
    if k.s != 4:
        raise ValidationError("recover_kernel_b2 needs s = 4")
    _require_nonzero(y)
    U = U_from_rotations(y, k, N + 2)
    return complex(sum(c(x) for c in recover_graded_b2(U)))


def i23_coefficients(y) -> tuple[float, float, float]:
    """``(f0, f1, f2) = (1/3, 2 y1 / (3|y|^2), 2 y2 / (3|y|^2))``."""
    _require_nonzero(y)
    y1, y2 = float(y[0]), float(y[1])
    norm2 = y1 * y1 + y2 * y2
    return 1.0 / 3.0, 2.0 * y1 / (3.0 * norm2), 2.0 * y2 / (3.0 * norm2)


def recover_graded_i23(U: GradedU) -> list[HomogeneousPolynomial]:
    """Components of ``E_k`` from ``[f0 + f1 T1 + f2 T2] U`` (s = 3)."""
    k = U.k
    if k.s != 3:
        raise ValidationError("the single-combination recovery exists only for s = 3")
    f0, f1, f2 = i23_coefficients(U.y)
    out = []
    for n in range(U.max_degree):
        nxt = U[n + 1]
        comp = U[n] * f0 + apply_dunkl(E1, nxt, k) * f1 + apply_dunkl(E2, nxt, k) * f2
        out.append(comp)
    return out


def recover_kernel_i23(x, y, k: Multiplicity, N: int = 30) -> complex:
    if k.s != 3:
        raise ValidationError("odd-s recovery is implemented for s = 3 only (larger odd s are incompatible)")
    U = U_from_rotations(y, k, N + 1)
    return complex(sum(c(x) for c in recover_graded_i23(U)))


def signed_sum_over_h(y, k: Multiplicity, N: int) -> list[HomogeneousPolynomial]:
    """Components of ``sum_g det(g) E_k(., g y) / h`` up to degree N.

    The signed sum is formed degree by degree and divided by h as a
    polynomial, so small values of ``h(x)`` cost no precision.
    """
    s = k.s
    kernels = [(g.det, GradedKernel(tuple(act(g, y)), k)) for g in k.system.elements]
    out = []
    for n in range(s, N + s + 1):
        total = HomogeneousPolynomial.zero(n)
        for det, ker in kernels:
            total = total + ker[n] * det
        for alpha in k.system.positive_roots:
            total, _ = divide_linear(total, alpha)
        out.append(total)
    return out


def shift_principle_sides(x, y, k: Multiplicity, N: int = 30) -> tuple[complex, complex]:
    """``E_{k+1}^G(x, y)`` and ``eta_k / (|G| h(x) h(y)) sum_g det(g) E_k(x, g y)``."""
    h = alternating_poly(k.system)
    hx, hy = h(x), h(y)
    if hx == 0 or hy == 0:
        raise ChartError("the shift principle divides by h(x) h(y); both points must avoid the mirrors")
    lhs = graded_bessel(y, k.shifted()).partial_sum(x, N)
    signed = sum(q(x) for q in signed_sum_over_h(y, k, N))
    rhs = eta_k(k) * signed / (k.system.order * hy)
    return lhs, complex(rhs)
