"""Integral representation of the B2 (s = 4) generalized Bessel function and kernel.

With ``nu = k1 + k2`` and the normalized Bessel series
``I_a(u) = sum_j (u/2)^(2j) / (j! (a)_j)``, the group-averaged kernel is a
double average of ``I_{nu+1/2}(sqrt(Z/2))`` over two symmetric Beta
measures ``mu^k(du) ~ (1 - u^2)^(k-1) du`` on [-1, 1], where

    Z = |x|^2 |y|^2 + u (x1^2 - x2^2)(y1^2 - y2^2) + 4 v x1 x2 y1 y2.

The u-measure carries the multiplicity of the diagonal roots (k2), the
v-measure that of the coordinate axes (k1).

Internally the Bessel series is written as ``Phi_p(t) = sum t^j / (j! (p)_j)``
so that ``I_p(sqrt(Z/2)) = Phi_p(Z/8)`` and ``Phi_p' = Phi_{p+1} / p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .dunkl_core import eta_k
from .errors import ChartError, ConstantMismatchError, SingularPointError, ValidationError
from .group import Multiplicity, act
from .kernel import alternating_poly

DEFAULT_NODES = 64
# |x|, |y| around 2 so that the u v term carries a visible share of U
VALIDATION_POINTS = (
    ((1.2, 0.4), (1.8, -0.8)),
    ((0.6, -1.4), (1.0, 1.6)),
    ((2.2, 0.8), (-0.4, 1.4)),
    ((-1.0, 1.8), (1.2, 0.6)),
    ((1.6, 1.0), (0.8, -1.8)),
    ((0.4, 2.4), (1.4, 0.2)),
    ((-1.8, -0.6), (0.7, 1.2)),
    ((0.9, 1.5), (-1.6, 1.1)),
    ((2.0, -0.4), (0.6, 1.9)),
    ((1.4, 0.0), (1.0, 1.0)),  # h(x) = 0: the uv-term cannot see lambda here
)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi nodes for the probability measure ``mu^k`` on [-1, 1]."""

    k: float
    M: int
    nodes: np.ndarray
    weights: np.ndarray

    def moments(self) -> tuple[float, float, float]:
        """``(sum w, sum w u, sum w u^2)``; the last should be ``1 / (2k + 1)``."""
        w, u = self.weights, self.nodes
        return float(w.sum()), float(w @ u), float(w @ (u * u))

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)


@lru_cache(maxsize=64)
def _rule(k: float, M: int) -> QuadratureRule:
    nodes, weights = roots_jacobi(M, k - 1.0, k - 1.0)
    weights = weights / weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(k, M, nodes, weights)


def quadrature_rule(k, M: int = DEFAULT_NODES) -> QuadratureRule:
    k = float(k)
    if not k > 0:
        raise ValidationError(f"the measure mu^k needs k > 0, got {k}")
    if M < 1:
        raise ValidationError(f"node count must be positive, got {M}")
    return _rule(k, int(M))


def _phi(t, p: float) -> np.ndarray:
    """``sum_j t^j / (j! (p)_j)`` elementwise, for ``t >= 0`` and ``p > 0``."""
    t = np.asarray(t, dtype=float)
    total = np.ones_like(t)
    term = np.ones_like(t)
    j = 0
    while True:
        term = term * t / ((j + 1) * (p + j))
        total = total + term
        j += 1
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            return total
        if j > 2000:
            raise ValidationError("Bessel series did not settle in 2000 terms")


def modified_bessel(u, index):
    """``sum_j (u/2)^(2j) / (j! (index)_j)``, normalized to 1 at u = 0.

    ``index = 1/2`` gives ``cosh u``.
    """
    index = float(index)
    if index <= -0.5 or index == 0:
        raise ValidationError(f"Bessel index must be > -1/2 and nonzero, got {index}")
    u = np.asarray(u, dtype=float)
    t = (u / 2) ** 2
    if index > 0:
        out = _phi(t, index)
    else:
        # (index)_j alternates sign once: fall back to a plain loop
        out = np.ones_like(t)
        term = np.ones_like(t)
        for j in range(2000):
            term = term * t / ((j + 1) * (index + j))
            out = out + term
            if np.all(np.abs(term) <= 1e-17 * np.abs(out)):
                break
    return float(out) if out.ndim == 0 else out


def Z(x, y, u, v):
    x1, x2 = float(x[0]), float(x[1])
    y1, y2 = float(y[0]), float(y[1])
    return (
        (x1 * x1 + x2 * x2) * (y1 * y1 + y2 * y2)
        + u * (x1 * x1 - x2 * x2) * (y1 * y1 - y2 * y2)
        + 4 * v * x1 * x2 * y1 * y2
    )


def _check_b2(k: Multiplicity):
    if k.s != 4:
        raise ValidationError("the integral representation is specific to I2(4)")
    if not k.is_real or not (k.k1 > 0 and k.k2 > 0):
        raise ValidationError(f"the integral representation needs k1, k2 > 0, got ({k.k1}, {k.k2})")


def _grid(k: Multiplicity, M: int):
    # u carries the diagonal roots (k2), v the coordinate axes (k1)
    ru = quadrature_rule(k.k2, M)
    rv = quadrature_rule(k.k1, M)
    U, V = np.meshgrid(ru.nodes, rv.nodes, indexing="ij")
    W = np.outer(ru.weights, rv.weights)
    return U, V, W


def bessel_index(k: Multiplicity) -> float:
    """Index of the Bessel series in the representation: ``nu + 1/2``."""
    return float(k.k1 + k.k2) + 0.5


def bessel_quadrature(x, y, k: Multiplicity, M: int = DEFAULT_NODES, index: float | None = None) -> float:
    """``E_k^G(x, y)`` as the double quadrature of ``I(sqrt(Z/2))``.

    ``index`` overrides the Bessel index (default ``nu + 1/2``).
    """
    _check_b2(k)
    U, V, W = _grid(k, M)
    p = bessel_index(k) if index is None else float(index)
    vals = modified_bessel(np.sqrt(np.maximum(Z(x, y, U, V), 0.0) / 2), p)
    return float(np.sum(W * vals))


def differentiation_rule_sides(x, y, u: float, v: float, nu: float, step: float = 0.02) -> tuple[float, float]:
    """Finite-difference ``d_u d_v I_{nu-1/2}(sqrt(Z/2))`` and ``h(x)h(y)/(4nu^2-1) I_{nu+3/2}``.

    The mixed difference is Richardson-extrapolated over ``step`` and ``step/2``.
    """
    index = nu - 0.5

    def f(a, b):
        return modified_bessel(np.sqrt(Z(x, y, a, b) / 2), index)

    def mixed(d):
        return (f(u + d, v + d) - f(u + d, v - d) - f(u - d, v + d) + f(u - d, v - d)) / (4 * d * d)

    fd = (4 * mixed(step / 2) - mixed(step)) / 3
    h = alternating_poly(Multiplicity.of(4, 1).system)
    rule = h(x).real * h(y).real / (4 * nu * nu - 1) * modified_bessel(np.sqrt(Z(x, y, u, v) / 2), nu + 1.5)
    return float(fd), float(rule)


def eta_b2_printed(k: Multiplicity) -> float:
    """``4 (2k1+1)(2k2+1)/((nu+2)(nu+1)) prod_{j=1..4} (2nu + j)`` (roots of squared length 2)."""
    _check_b2(k)
    k1, k2 = float(k.k1), float(k.k2)
    nu = k1 + k2
    prod = 1.0
    for j in range(1, 5):
        prod *= 2 * nu + j
    return 4 * (2 * k1 + 1) * (2 * k2 + 1) / ((nu + 2) * (nu + 1)) * prod


def _u_quarter(x, y, k: Multiplicity, N: int) -> float:
    from .shift import U_from_rotations

    return U_from_rotations(y, k, N).value(x).real / 4


def _weighted_pieces(x, y, k: Multiplicity, M: int) -> tuple[float, float]:
    """``(iint I dmu dmu, iint I u v dmu dmu)``."""
    U, V, W = _grid(k, M)
    vals = _phi(Z(x, y, U, V) / 8, bessel_index(k))
    return float(np.sum(W * vals)), float(np.sum(W * vals * U * V))


@dataclass(frozen=True)
class LambdaReport:
    chain: float
    printed: float
    best_fit: float
    residual: float
    printed_residual: float
    eta: float
    points: int

    def as_dict(self) -> dict:
        return {
            "lambda_chain": self.chain,
            "lambda_printed": self.printed,
            "lambda_best_fit": self.best_fit,
            "residual": self.residual,
            "printed_residual": self.printed_residual,
            "eta_k": self.eta,
            "points": self.points,
        }


def lambda_chain(k: Multiplicity) -> float:
    """``(2nu+1)(2nu+3)(2k1+1)(2k2+1) / eta_k`` with ``eta_k = h(T)[h]``.

    Two u- and v-integrations by parts each contribute ``(2k+1)``, and the
    index shift ``I_{p+2}`` contributes ``4 p (p+1)`` with ``p = nu + 1/2``.
    """
    _check_b2(k)
    k1, k2 = float(k.k1), float(k.k2)
    nu = k1 + k2
    return (2 * nu + 1) * (2 * nu + 3) * (2 * k1 + 1) * (2 * k2 + 1) / float(eta_k(k))


def lambda_printed(k: Multiplicity) -> float:
    _check_b2(k)
    k1, k2 = float(k.k1), float(k.k2)
    nu = k1 + k2
    return 4 * (4 * nu * nu - 1) * (k1 + 1) * (k2 + 1) / float(eta_k(k))


def lambda_report(k: Multiplicity, M: int = DEFAULT_NODES, N: int = 40, points=VALIDATION_POINTS) -> LambdaReport:
    """Compare ``U/4`` with ``iint I (1 + lambda u v)`` for the chain and printed constants."""
    _check_b2(k)
    chain = lambda_chain(k)
    printed = lambda_printed(k)
    targets, base, uv = [], [], []
    for x, y in points:
        targets.append(_u_quarter(x, y, k, N))
        b, w = _weighted_pieces(x, y, k, M)
        base.append(b)
        uv.append(w)
    targets, base, uv = map(np.asarray, (targets, base, uv))
    scale = np.abs(targets)
    best = float(np.sum((targets - base) * uv) / np.sum(uv * uv))

    def residual(lam):
        return float(np.max(np.abs(base + lam * uv - targets) / scale))

    return LambdaReport(chain, printed, best, residual(chain), residual(printed), float(eta_k(k)), len(points))


def lambda_const(k: Multiplicity, M: int = DEFAULT_NODES) -> float:
    """The constant in front of ``u v``; raises if its validation residual exceeds 1e-4."""
    report = lambda_report(k, M)
    if report.residual > 1e-4:
        raise ConstantMismatchError(
            f"lambda = {report.chain} fails validation (residual {report.residual:.3e}); "
            f"best fit {report.best_fit}",
            report,
        )
    return report.chain


# --- integral form of E_k -------------------------------------------------------

_ROOTS = None


def _roots_b2():
    global _ROOTS
    if _ROOTS is None:
        sys_ = Multiplicity.of(4, 1).system
        _ROOTS = [(tuple(a), j) for j, a in enumerate(sys_.positive_roots, start=1)]
    return _ROOTS


class _Integrand:
    """``G = T_y W`` with ``W = iint I (1 + lambda u v)``, and its x-gradient, by quadrature."""

    def __init__(self, y, k: Multiplicity, M: int):
        self.y = (float(y[0]), float(y[1]))
        self.k = k
        self.U, self.V, self.W = _grid(k, M)
        self.p = bessel_index(k)
        self.lam = lambda_chain(k)
        self.roots = [(np.array(a), float(k.on_root(j)), k.system.reflection_of_root(j)) for a, j in _roots_b2()]
        y1, y2 = self.y
        self.ny = y1 * y1 + y2 * y2
        self.A = y1 * y1 - y2 * y2
        self.B = 4 * y1 * y2

    def _s_terms(self, x):
        s_val = 0.0
        grad = np.zeros(2)
        for alpha, kv, _ in self.roots:
            ax = float(alpha @ x)
            ay = float(alpha @ self.y)
            s_val += kv * ay / ax
            grad -= kv * ay * alpha / (ax * ax)
        return s_val, grad

    def _z_parts(self, x):
        x1, x2 = float(x[0]), float(x[1])
        U, V = self.U, self.V
        z = (x1 * x1 + x2 * x2) * self.ny + U * self.A * (x1 * x1 - x2 * x2) + V * self.B * x1 * x2
        d1 = 2 * x1 * self.ny + 2 * U * self.A * x1 + V * self.B * x2
        d2 = 2 * x2 * self.ny - 2 * U * self.A * x2 + V * self.B * x1
        return z, d1, d2

    def value(self, x):
        x = np.asarray(x, dtype=float)
        z, d1, d2 = self._z_parts(x)
        dy = self.y[0] * d1 + self.y[1] * d2
        s_val, _ = self._s_terms(x)
        p, lam, uv = self.p, self.lam, self.U * self.V
        f0 = _phi(z / 8, p)
        f1 = _phi(z / 8, p + 1)
        integrand = f1 * dy / (8 * p) * (1 + lam * uv) + 2 * lam * s_val * f0 * uv
        return float(np.sum(self.W * integrand))

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        y1, y2 = self.y
        U, V = self.U, self.V
        z, d1, d2 = self._z_parts(x)
        dy = y1 * d1 + y2 * d2
        # second derivatives of Z contracted with y
        d11 = 2 * self.ny + 2 * U * self.A
        d22 = 2 * self.ny - 2 * U * self.A
        d12 = V * self.B
        dy_1 = y1 * d11 + y2 * d12
        dy_2 = y1 * d12 + y2 * d22
        s_val, s_grad = self._s_terms(x)
        p, lam, uv = self.p, self.lam, U * V
        f0 = _phi(z / 8, p)
        f1 = _phi(z / 8, p + 1)
        f2 = _phi(z / 8, p + 2)
        out = []
        for di, dyi, si in ((d1, dy_1, s_grad[0]), (d2, dy_2, s_grad[1])):
            integrand = (
                f2 * di * dy / (64 * p * (p + 1)) * (1 + lam * uv)
                + f1 * dyi / (8 * p) * (1 + lam * uv)
                + 2 * lam * si * f0 * uv
                + 2 * lam * s_val * f1 * di / (8 * p) * uv
            )
            out.append(float(np.sum(self.W * integrand)))
        return np.array(out)

    def dunkl(self, x):
        """``(T1 G, T2 G)`` at x."""
        x = np.asarray(x, dtype=float)
        out = self.gradient(x)
        g_x = self.value(x)
        for alpha, kv, g in self.roots:
            diff = (g_x - self.value(act(g, x))) / float(alpha @ x)
            out = out + kv * alpha * diff
        return out


def _off_mirrors(x):
    x = np.asarray(x, dtype=float)
    scale = float(np.hypot(*x))
    for alpha, j in _roots_b2():
        if abs(float(np.asarray(alpha) @ x)) <= 1e-12 * max(scale, 1.0):
            raise SingularPointError(f"x={tuple(x)} lies on the mirror of root {j}")


def kernel_integral_b2(x, y, k: Multiplicity, M: int = DEFAULT_NODES) -> complex:
    """``E_k(x, y) = [y + 2 Tbar] G / (y |y|^2)`` with ``G = T_y W`` evaluated by quadrature.

    ``W = U/4`` is the Bessel double integral with the ``(1 + lambda u v)``
    weight; the x-derivatives of ``Z`` and of the difference quotients are
    taken analytically inside the integrand.
    """
    _check_b2(k)
    if float(np.hypot(*np.asarray(y, dtype=float))) == 0:
        raise ChartError("y = 0: the integral formula divides by y (use E_k(x, 0) = 1)")
    _off_mirrors(x)
    integrand = _Integrand(y, k, M)
    g = integrand.value(x)
    t1, t2 = integrand.dunkl(x)
    tbar = (t1 + 1j * t2) / 2
    yc = complex(float(y[0]), float(y[1]))
    return complex(2 * (yc * g + 2 * tbar) / (yc * abs(yc) ** 2))
