"""Factorization coefficients ``c_m(g)`` and resolvent coefficients ``C_n(g)``.

``c_m(g)`` is the k-weighted number of ordered factorizations of ``g`` into
``m`` reflections taken from the positive system; ``C_n(g)`` is the
generating sum ``sum_m c_m(g) / (n + gamma)**(m + 1)``, so that
``H_n = sum_g C_n(g) g``.

Rational multiplicities are kept exact throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import ConvergenceError, SizeError, ValidationError
from .group import (
    DihedralElement,
    GroupAlgebraMap,
    Multiplicity,
    classify,
    compose,
)

BRUTEFORCE_BUDGET = 10**7


def _exact(value):
    if isinstance(value, complex):
        return value
    return Fraction(value)


def _exact_pair(k: Multiplicity):
    return _exact(k.k1), _exact(k.k2)


def _check_element(g: DihedralElement, k: Multiplicity):
    if g.s != k.s:
        raise ValidationError(f"{g} belongs to D2({g.s}) but the multiplicity lives on I2({k.s})")


def c_bruteforce(m: int, g: DihedralElement, k: Multiplicity, budget: int = BRUTEFORCE_BUDGET):
    """Enumerate all ``m``-tuples of positive roots whose reflection product is ``g``."""
    _check_element(g, k)
    if m < 0:
        raise ValidationError("m must be >= 0")
    s = k.s
    if s**m > budget:
        raise SizeError(f"{s}**{m} tuples exceed the enumeration budget {budget}")
    values = [_exact(v) for v in k.values]
    reflections = [k.system.reflection_of_root(j) for j in range(1, s + 1)]
    total = Fraction(0)
    for tup in product(range(s), repeat=m):
        h = DihedralElement.identity(s)
        weight = Fraction(1)
        for i in tup:
            h = compose(h, reflections[i])
            weight = weight * values[i]
        if h == g:
            total += weight
    return total


def c_table(k: Multiplicity, m_max: int, side: str = "left") -> list[GroupAlgebraMap]:
    """``[c_0, ..., c_m_max]`` built by ``c_{m+1}(g) = sum_a k(a) c_m(sigma_a g)``.

    ``side="right"`` uses ``c_m(g sigma_a)`` instead; both orderings agree.
    """
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    sys_ = k.system
    s = k.s
    values = [_exact(v) for v in k.values]
    reflections = [sys_.reflection_of_root(j) for j in range(1, s + 1)]
    table = [GroupAlgebraMap(s, {g: Fraction(int(g.is_identity)) for g in sys_.elements})]
    for _ in range(m_max):
        prev = table[-1]
        nxt = GroupAlgebraMap(s)
        for g in sys_.elements:
            acc = Fraction(0)
            for kv, refl in zip(values, reflections):
                h = compose(refl, g) if side == "left" else compose(g, refl)
                acc += kv * prev[h]
            nxt[g] = acc
        table.append(nxt)
    return table


def c_recursion(m: int, g: DihedralElement, k: Multiplicity, side: str = "left"):
    """``c_m(g)`` via the one-reflection recursion started from ``c_0 = delta_e``."""
    _check_element(g, k)
    if m < 0:
        raise ValidationError("m must be >= 0")
    return c_table(k, m, side)[m][g]


def c_closed(m: int, g: DihedralElement, k: Multiplicity):
    """Closed form of ``c_m(g)`` for ``m >= 1``.

    Constant k: ``k**m * s**(m-1)`` when the parity of ``m`` matches the kind
    of ``g`` (odd <-> reflection), else 0.  Two orbits (even s = 2q):
    ``q**(m-1)/2 * [(k1+k2)**m +- (k1-k2)**m]`` with the sign from :func:`classify`.
    """
    _check_element(g, k)
    if m < 1:
        raise ValidationError("closed forms hold for m >= 1; c_0 is the identity indicator")
    k1, k2 = _exact_pair(k)
    s = k.s
    if s % 2:
        if k1 != k2:
            raise ValidationError("odd s requires k1 == k2")
        matches = g.is_reflection == (m % 2 == 1)
        return k1**m * Fraction(s) ** (m - 1) if matches else Fraction(0)
    label = classify(g, "odd" if m % 2 else "even")
    if label == "excluded":
        return Fraction(0)
    q = s // 2
    a, b = (k1 + k2) ** m, (k1 - k2) ** m
    half = Fraction(q) ** (m - 1) / 2
    return half * (a + b) if label == "plus" else half * (a - b)


def _resolvent_ratios(n: int, k: Multiplicity):
    k1, k2 = _exact_pair(k)
    big_n = n + _exact(k.gamma)
    half_s = Fraction(k.s, 2)
    t = half_s * (k1 + k2) / big_n
    u = half_s * (k1 - k2) / big_n
    return big_n, t, u


def C_n(n: int, g: DihedralElement, k: Multiplicity, mode: str = "series"):
    """Resolvent coefficient ``C_n(g)``.

    ``mode="series"`` sums ``sum_m c_m(g)/(n+gamma)**(m+1)`` in closed
    geometric form (two geometric series in ``(s/2)(k1 +- k2)/(n+gamma)``);
    exact for rational k.  ``mode="closed"`` returns the constant-k corollary
    formulas, including the printed identity-element formula, which is kept
    for adjudication (see :func:`identity_formula_residual`).
    """
    _check_element(g, k)
    if n < 1:
        raise ValidationError("C_n is defined for n >= 1")
    if mode == "closed":
        return _C_closed(n, g, k)
    if mode != "series":
        raise ValidationError(f"unknown mode {mode!r}")
    big_n, t, u = _resolvent_ratios(n, k)
    if abs(t) >= 1 or abs(u) >= 1:
        raise ConvergenceError(
            f"geometric ratios |{complex(t):.4g}|, |{complex(u):.4g}| must be < 1 at n={n}"
        )
    if k.s % 2 == 0 and g.index % 2:
        sign = -1
    else:
        sign = 1
    pre = 1 / (k.s * big_n)
    if g.is_reflection:
        return pre * (t / (1 - t * t) + sign * u / (1 - u * u))
    value = pre * (t * t / (1 - t * t) + sign * u * u / (1 - u * u))
    if g.is_identity:
        value += 1 / big_n
    return value


@lru_cache(maxsize=64)
def _cached_table(k: Multiplicity, m_max: int) -> tuple:
    return tuple(c_table(k, m_max))


def C_n_direct(n: int, g: DihedralElement, k: Multiplicity, tol: float = 1e-16):
    """Truncated ``sum_m c_m(g) / (n+gamma)**(m+1)`` from the recursion table, in floating point.

    The cut-off uses ``|c_m(g)| <= delta**m``.
    """
    _check_element(g, k)
    big_n = n + complex(k.gamma)
    d = float(k.delta)
    if d >= abs(big_n):
        raise ConvergenceError(f"direct series needs delta < |n + gamma| at n={n}")
    ratio = d / abs(big_n)
    m_max = 0
    tail = 1 / (abs(big_n) - d)
    while tail > tol * (1 / abs(big_n)) and ratio > 0:
        m_max += 1
        tail *= ratio
    table = _cached_table(k, m_max)
    if k.is_real:
        # c_m grows like delta**m: divide exactly before rounding
        exact_n = n + _exact(k.gamma)
        total = 0.0
        for m in range(m_max + 1):
            total += float(table[m][g] / exact_n ** (m + 1))
        return total
    total = 0j
    power = 1 / big_n
    for m in range(m_max + 1):
        total += complex(table[m][g]) * power
        power /= big_n
    return total


def _C_closed(n, g, k):
    if not k.is_constant:
        raise ValidationError("closed C_n formulas assume a constant multiplicity")
    gamma = _exact(k.gamma)
    r = k.s
    if g.is_reflection:
        return gamma / (n * r * (n + 2 * gamma))
    if g.is_identity:
        return printed_identity_formula(n, k)
    return gamma**2 / (n * r * (n + gamma) * (n + 2 * gamma))


def printed_identity_formula(n: int, k: Multiplicity):
    """The identity-element formula as printed: ``(n+gamma) / (n |R+| (n+2 gamma))``."""
    gamma = _exact(k.gamma)
    return (n + gamma) / (n * k.s * (n + 2 * gamma))


def identity_series_formula(n: int, k: Multiplicity):
    """``1/(n+gamma) + gamma**2/(n |R+| (n+gamma)(n+2 gamma))``: the summed definition, constant k."""
    gamma = _exact(k.gamma)
    return 1 / (n + gamma) + gamma**2 / (n * k.s * (n + gamma) * (n + 2 * gamma))


def identity_formula_residual(n: int, k: Multiplicity):
    """Printed identity formula minus the series value of ``C_n(Id)``."""
    return printed_identity_formula(n, k) - C_n(n, k.system.identity, k)


def C_map(n: int, k: Multiplicity, mode: str = "series") -> GroupAlgebraMap:
    """``{g: C_n(g)}`` over the whole group."""
    return GroupAlgebraMap(k.s, {g: C_n(n, g, k, mode) for g in k.system.elements})


@dataclass(frozen=True)
class CoeffTable:
    """Exact ``c_m(g)`` for ``m <= m_max`` and every group element."""

    multiplicity: Multiplicity
    m_max: int
    table: tuple

    @classmethod
    def build(cls, k: Multiplicity, m_max: int) -> "CoeffTable":
        return cls(k, m_max, tuple(c_table(k, m_max)))

    @property
    def s(self) -> int:
        return self.multiplicity.s

    def __getitem__(self, m: int) -> GroupAlgebraMap:
        return self.table[m]

    def rows(self):
        """Yield ``(g, orbit_label, m, c_m(g))`` in deterministic order."""
        sys_ = self.multiplicity.system
        for m, cm in enumerate(self.table):
            for g in sys_.elements:
                yield g, sys_.element_orbit(g), m, cm[g]
