"""Dihedral groups D2(s) and the root systems I2(s).

Group elements are kept symbolic (kind + index mod s) so that every
combinatorial computation is exact integer arithmetic.  Matrices are only
built on demand, for geometry.

In complex notation the rotation ``r_j`` is ``z -> z * w**j`` and the
reflection ``sigma_j`` is ``z -> conj(z) * w**j`` with ``w = exp(2i pi / s)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Number

import numpy as np

from .errors import ValidationError

ROTATION = "rotation"
REFLECTION = "reflection"

_SNAP_TARGETS = (0.0, 0.5, -0.5, 1.0, -1.0)


def _snap(value: float) -> float:
    # cos/sin of rational multiples of pi: land exactly on 0, +-1/2, +-1
    for target in _SNAP_TARGETS:
        if abs(value - target) < 4e-16:
            return target
    return value


def unit_cos_sin(numerator: int, denominator: int) -> tuple[float, float]:
    """Return ``(cos t, sin t)`` for ``t = numerator * pi / denominator``."""
    numerator %= 2 * denominator
    t = math.pi * numerator / denominator
    return _snap(math.cos(t)), _snap(math.sin(t))


@dataclass(frozen=True, order=True)
class DihedralElement:
    """A rotation ``r_index`` or reflection ``sigma_index`` of D2(s)."""

    kind: str
    index: int
    s: int

    def __post_init__(self):
        if self.kind not in (ROTATION, REFLECTION):
            raise ValidationError(f"unknown element kind {self.kind!r}")
        if self.s < 2:
            raise ValidationError(f"dihedral order parameter must be >= 2, got {self.s}")
        object.__setattr__(self, "index", self.index % self.s)

    @classmethod
    def rotation(cls, j: int, s: int) -> "DihedralElement":
        return cls(ROTATION, j, s)

    @classmethod
    def reflection(cls, j: int, s: int) -> "DihedralElement":
        return cls(REFLECTION, j, s)

    @classmethod
    def identity(cls, s: int) -> "DihedralElement":
        return cls(ROTATION, 0, s)

    @property
    def is_rotation(self) -> bool:
        return self.kind == ROTATION

    @property
    def is_reflection(self) -> bool:
        return self.kind == REFLECTION

    @property
    def is_identity(self) -> bool:
        return self.kind == ROTATION and self.index == 0

    @property
    def det(self) -> int:
        return 1 if self.kind == ROTATION else -1

    @property
    def inverse(self) -> "DihedralElement":
        if self.kind == REFLECTION:
            return self
        return DihedralElement(ROTATION, -self.index, self.s)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return compose(self, other)

    def matrix(self) -> np.ndarray:
        """Real 2x2 matrix of the element acting on column vectors."""
        c, s_ = unit_cos_sin(2 * self.index, self.s)
        if self.kind == ROTATION:
            return np.array([[c, -s_], [s_, c]])
        return np.array([[c, s_], [s_, -c]])

    def __str__(self) -> str:
        return ("r" if self.kind == ROTATION else "sigma") + f"_{self.index}"


def compose(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    """Return ``a o b`` (apply ``b`` first)."""
    if a.s != b.s:
        raise ValidationError(f"cannot compose elements of D2({a.s}) and D2({b.s})")
    s = a.s
    if a.kind == ROTATION:
        return DihedralElement(b.kind, b.index + a.index, s)
    if b.kind == ROTATION:
        return DihedralElement(REFLECTION, a.index - b.index, s)
    return DihedralElement(ROTATION, a.index - b.index, s)


def conjugate(w: DihedralElement, g: DihedralElement) -> DihedralElement:
    """Return ``w g w^-1``."""
    return compose(compose(w, g), w.inverse)


def act(g: DihedralElement, x) -> np.ndarray:
    """Apply ``g`` to a point of the plane."""
    return g.matrix() @ np.asarray(x, dtype=float)


def positive_roots(s: int) -> list[np.ndarray]:
    """Unit positive roots ``alpha_j = -i exp(i j pi / s)``, ``j = 1..s``."""
    if s < 2:
        raise ValidationError(f"dihedral order parameter must be >= 2, got {s}")
    roots = []
    for j in range(1, s + 1):
        c, sn = unit_cos_sin(j, s)
        roots.append(np.array([sn, -c]))
    return roots


def classify(g: DihedralElement, m_parity: str) -> str:
    """Label ``g`` as ``plus``/``minus``/``excluded`` for factorizations of length parity ``m_parity``.

    Odd lengths reach reflections (``plus`` on even-index ones), even lengths
    reach rotations (``plus`` on even-index ones).
    """
    if g.s % 2:
        raise ValidationError("classify is only defined for even s")
    if m_parity not in ("even", "odd"):
        raise ValidationError(f"m_parity must be 'even' or 'odd', got {m_parity!r}")
    wanted = REFLECTION if m_parity == "odd" else ROTATION
    if g.kind != wanted:
        return "excluded"
    return "plus" if g.index % 2 == 0 else "minus"


@dataclass(frozen=True)
class DihedralSystem:
    """The root system I2(s) with positive system ``{-i exp(i j pi/s)}``."""

    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 2:
            raise ValidationError(f"dihedral order parameter must be an integer >= 2, got {self.s!r}")

    @property
    def order(self) -> int:
        return 2 * self.s

    @property
    def n_orbits(self) -> int:
        return 2 if self.s % 2 == 0 else 1

    @cached_property
    def positive_roots(self) -> tuple[np.ndarray, ...]:
        return tuple(positive_roots(self.s))

    def root_orbit(self, j: int) -> int:
        """Orbit label (0 or 1) of root ``alpha_j``; always 0 for odd s."""
        return j % 2 if self.s % 2 == 0 else 0

    def reflection_of_root(self, j: int) -> DihedralElement:
        return DihedralElement(REFLECTION, j, self.s)

    @cached_property
    def elements(self) -> tuple[DihedralElement, ...]:
        """All 2s elements: rotations r_0..r_{s-1}, then reflections sigma_0..sigma_{s-1}."""
        rot = [DihedralElement(ROTATION, j, self.s) for j in range(self.s)]
        ref = [DihedralElement(REFLECTION, j, self.s) for j in range(self.s)]
        return tuple(rot + ref)

    @property
    def identity(self) -> DihedralElement:
        return DihedralElement.identity(self.s)

    def element_orbit(self, g: DihedralElement) -> str:
        """Name of the set among O0..O3 containing ``g`` (even s), else ``reflection``/``rotation``."""
        if self.s % 2:
            return g.kind
        parity = g.index % 2
        if g.kind == REFLECTION:
            return f"O{parity}"
        return f"O{2 + parity}"


def _as_number(value):
    if isinstance(value, str):
        value = value.strip()
        try:
            return Fraction(value)
        except ValueError:
            return complex(value.replace("i", "j"))
    if not isinstance(value, Number):
        raise ValidationError(f"multiplicity values must be numbers, got {value!r}")
    return value


@dataclass(frozen=True)
class Multiplicity:
    """A multiplicity function on I2(s).

    ``k1`` is carried by the even-index roots (and all roots when s is odd),
    ``k2`` by the odd-index roots.  Values may be ints, Fractions, floats or
    complex numbers; exact types stay exact in :mod:`.coeffs`.
    """

    system: DihedralSystem
    k1: Number
    k2: Number = None
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k1 = _as_number(self.k1)
        k2 = k1 if self.k2 is None else _as_number(self.k2)
        if self.system.s % 2 and k1 != k2:
            raise ValidationError(
                f"odd s={self.system.s} has a single root orbit; k1={k1} and k2={k2} must agree"
            )
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "_key", (self.system.s, complex(k1), complex(k2)))

    @classmethod
    def of(cls, s: int, k1, k2=None) -> "Multiplicity":
        return cls(DihedralSystem(s), k1, k2)

    @property
    def s(self) -> int:
        return self.system.s

    @property
    def key(self) -> tuple:
        """Hashable numeric key used by the resolvent caches."""
        return self._key

    def on_root(self, j: int):
        return self.k1 if self.system.root_orbit(j) == 0 else self.k2

    def on_reflection(self, g: DihedralElement):
        if not g.is_reflection:
            raise ValidationError(f"{g} is not a reflection")
        return self.on_root(g.index)

    @property
    def values(self) -> tuple:
        """Multiplicity of each positive root, in root order ``j = 1..s``."""
        return tuple(self.on_root(j) for j in range(1, self.s + 1))

    @property
    def gamma(self):
        s = self.s
        if s % 2 == 0:
            return (s // 2) * (self.k1 + self.k2)
        return s * self.k1

    @property
    def delta(self) -> float:
        s = self.s
        if s % 2 == 0:
            return (s // 2) * (abs(self.k1) + abs(self.k2))
        return s * abs(self.k1)

    @property
    def series_ok(self) -> bool:
        """Sufficient condition ``delta < |1 + gamma|`` for the resolvent series."""
        return self.delta < abs(1 + self.gamma)

    @property
    def is_zero(self) -> bool:
        return self.k1 == 0 and self.k2 == 0

    @property
    def is_constant(self) -> bool:
        return self.k1 == self.k2

    @property
    def is_real(self) -> bool:
        return not isinstance(self.k1, complex) and not isinstance(self.k2, complex)

    def shifted(self, by=1) -> "Multiplicity":
        """The multiplicity ``k + by`` on every root."""
        return Multiplicity(self.system, self.k1 + by, self.k2 + by)

    def as_float(self) -> tuple:
        cast = float if self.is_real else complex
        return cast(self.k1), cast(self.k2)


class GroupAlgebraMap(dict):
    """An element ``sum_g c(g) g`` of the group algebra of D2(s), stored as ``{g: c(g)}``.

    Missing elements have coefficient zero.  Multiplication is convolution.
    """

    def __init__(self, s: int, values=None):
        super().__init__()
        self.s = s
        for g, c in (values or {}).items():
            if g.s != s:
                raise ValidationError(f"element {g} does not belong to D2({s})")
            self[g] = c

    def __missing__(self, key):
        return 0

    @classmethod
    def identity(cls, s: int) -> "GroupAlgebraMap":
        return cls(s, {DihedralElement.identity(s): 1})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraMap):
            return GroupAlgebraMap(self.s, {g: c * other for g, c in self.items()})
        if other.s != self.s:
            raise ValidationError("group algebra elements of different groups")
        out = GroupAlgebraMap(self.s)
        for g, a in self.items():
            for h, b in other.items():
                gh = compose(g, h)
                out[gh] = out[gh] + a * b
        return out

    def __rmul__(self, scalar):
        return GroupAlgebraMap(self.s, {g: scalar * c for g, c in self.items()})

    def __add__(self, other):
        out = GroupAlgebraMap(self.s, dict(self))
        for g, c in other.items():
            out[g] = out[g] + c
        return out

    def dense(self) -> list:
        """Coefficients in the canonical element order of :class:`DihedralSystem`."""
        return [self[g] for g in DihedralSystem(self.s).elements]
