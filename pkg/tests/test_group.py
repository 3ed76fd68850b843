import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_dihedral.errors import ValidationError
from dunkl_dihedral.group import (
    DihedralElement,
    DihedralSystem,
    GroupAlgebraMap,
    Multiplicity,
    act,
    classify,
    compose,
    conjugate,
    positive_roots,
)

R = DihedralElement.rotation
S = DihedralElement.reflection


@st.composite
def elements(draw, s=None):
    s = s if s is not None else draw(st.integers(2, 9))
    kind = draw(st.sampled_from(["rotation", "reflection"]))
    return DihedralElement(kind, draw(st.integers(0, s - 1)), s)


@st.composite
def triples(draw):
    s = draw(st.integers(2, 9))
    return draw(elements(s)), draw(elements(s)), draw(elements(s))


def test_composition_examples():
    assert compose(S(1, 4), S(3, 4)) == R(2, 4)
    assert compose(R(2, 4), R(3, 4)) == R(1, 4)
    for s in range(2, 8):
        for j in range(s):
            assert compose(S(j, s), S(j, s)).is_identity


def test_compose_rejects_mixed_groups():
    with pytest.raises(ValidationError):
        compose(R(1, 4), R(1, 5))


@given(triples())
def test_group_axioms(t):
    a, b, c = t
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, a.inverse).is_identity
    assert compose(a, b).det == a.det * b.det


@given(triples())
def test_composition_matches_matrices(t):
    a, b, _ = t
    assert np.allclose(compose(a, b).matrix(), a.matrix() @ b.matrix(), atol=1e-14)


def test_act_examples():
    assert np.allclose(act(R(1, 4), (1, 0)), (0, 1))
    assert np.allclose(act(S(2, 4), (1, 0)), (-1, 0))
    assert np.allclose(act(DihedralElement.identity(5), (0.3, -2)), (0.3, -2))


def test_positive_roots():
    r4 = positive_roots(4)
    assert np.allclose(r4[1], (1, 0)) and np.allclose(r4[3], (0, 1))
    r2 = positive_roots(2)
    assert np.allclose(r2[0], (1, 0)) and np.allclose(r2[1], (0, 1))
    for s in range(2, 9):
        assert len(positive_roots(s)) == s
        assert np.allclose([np.linalg.norm(a) for a in positive_roots(s)], 1.0, atol=1e-15)
    with pytest.raises(ValidationError):
        positive_roots(1)


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6, 8])
def test_reflection_of_root_is_the_root_reflection(s):
    rng = np.random.default_rng(0)
    sys_ = DihedralSystem(s)
    for j, alpha in enumerate(sys_.positive_roots, start=1):
        g = sys_.reflection_of_root(j)
        for x in rng.standard_normal((100, 2)):
            assert np.max(np.abs(act(g, x) - (x - 2 * (alpha @ x) * alpha))) <= 1e-14


@pytest.mark.parametrize("s", [2, 3, 4, 7])
def test_rotation_sum_cancels(s):
    x = np.array([0.7, -1.3])
    total = sum(act(R(j, s), x) for j in range(1, s + 1))
    assert np.max(np.abs(total)) <= 1e-13


def test_conjugate_examples():
    assert conjugate(R(1, 4), S(0, 4)) == S(2, 4)
    g = S(3, 6)
    assert conjugate(g, g) == g
    assert conjugate(DihedralElement.identity(6), g) == g


def test_classify():
    assert classify(S(2, 4), "odd") == "plus"
    assert classify(R(1, 4), "even") == "minus"
    assert classify(R(1, 4), "odd") == "excluded"
    with pytest.raises(ValidationError):
        classify(R(1, 3), "odd")


def test_multiplicity_derived_quantities():
    k = Multiplicity.of(6, 1, "-1/2")
    gamma = sum(k.values)
    delta = sum(abs(v) for v in k.values)
    assert k.gamma == gamma and k.delta == delta
    assert k.series_ok == (k.delta < abs(1 + k.gamma))
    k3 = Multiplicity.of(3, 2)
    assert k3.gamma == 6 and k3.values == (2, 2, 2)
    assert k3.shifted().gamma == k3.gamma + 3
    with pytest.raises(ValidationError):
        Multiplicity.of(3, 1, 2)


def test_group_algebra_convolution():
    s = 4
    a = GroupAlgebraMap(s, {S(j, s): 1 for j in range(s)})
    sq = a * a
    # two reflections: every rotation is reached s/... times, total s^2 = 16
    assert sum(sq.values()) == 16
    assert sq[DihedralElement.identity(s)] == 4
    assert (GroupAlgebraMap.identity(s) * a) == a
