import itertools
from fractions import Fraction

import pytest

from conftest import basis_elements, mono
from heisenberg_sc.fock import FockElement, apply_heisenberg
from heisenberg_sc.linalg import MalformedInputError
from heisenberg_sc.modes import (
    ModeOperator,
    VirasoroFamily,
    conformal_vector,
    field_coefficient,
    gbinom,
    lh_commutator_check,
    read_central_charge,
    vertex_mode,
    virasoro_bracket_check,
    virasoro_mode,
)
from heisenberg_sc.scalars import gq
from heisenberg_sc.semiconformal import QuadraticVector


def test_generalized_binomial():
    assert gbinom(5, 2) == 10
    assert gbinom(-1, 3) == -1
    assert gbinom(-3, 2) == 6
    assert gbinom(7, 0) == 1
    assert gbinom(2, 3) == 0


def test_field_coefficient_first_derivative():
    # d/dz h(z) = sum_j (-j-1) h(j) z^{-j-2}
    for j in range(-5, 6):
        assert field_coefficient(2, j) == -j - 1
        assert field_coefficient(1, j) == 1


@pytest.mark.parametrize("d", [1, 2])
def test_single_field_modes_are_heisenberg_modes(d):
    for i in range(1, d + 1):
        h = mono(d, (1, i))
        for w in basis_elements(d, 3):
            for m in range(-3, 4):
                assert vertex_mode(h, m, w) == apply_heisenberg(i, m, w)


def test_derivative_field_modes(vac1):
    v = mono(1, (2, 1))
    for w in basis_elements(1, 4):
        for m in range(-3, 5):
            assert vertex_mode(v, m, w) == apply_heisenberg(1, m - 1, w).scale(-m)


def _normal_ordered_product(d, factors, m, w):
    """Independent oracle: expand the normally ordered product of derived fields termwise.

    Each factor ``(n, i)`` contributes ``h_i(j)`` with coefficient ``(-1)^(n-1) C(j+n-1, n-1)``
    and power ``z^{-j-n}``; ``v_m`` is the part with total power ``-m-1``. Annihilators act first.
    """
    total = FockElement.zero(d)
    span = range(-8, 9)
    for js in itertools.product(span, repeat=len(factors)):
        if sum(j + n for j, (n, _) in zip(js, factors)) != m + 1:
            continue
        coeff = 1
        for j, (n, _) in zip(js, factors):
            coeff *= (-1) ** (n - 1) * gbinom(j + n - 1, n - 1)
        if not coeff:
            continue
        ops = sorted(zip(js, factors), key=lambda t: t[0] >= 0)  # creation operators to the left
        out = w
        for j, (_, i) in reversed(ops):
            out = apply_heisenberg(i, j, out)
        total = total + out.scale(coeff)
    return total


@pytest.mark.parametrize(
    "factors",
    [((1, 1), (1, 1)), ((2, 1), (1, 2)), ((2, 2), (2, 1)), ((3, 1),), ((1, 1), (1, 2), (1, 2))],
)
def test_products_match_termwise_oracle(factors):
    d = 2
    v = mono(d, *factors)
    for w in basis_elements(d, 2):
        for m in range(-2, 4):
            assert vertex_mode(v, m, w) == _normal_ordered_product(d, factors, m, w), (m, w)


@pytest.mark.parametrize("d", [1, 2])
def test_creation_axiom(d):
    vac = FockElement.vacuum(d)
    for v in basis_elements(d, 4):
        assert vertex_mode(v, -1, vac) == v
        for m in range(0, 4):
            assert vertex_mode(v, m, vac).is_zero()


@pytest.mark.parametrize("d", [1, 2])
def test_translation_covariance(d):
    omega = conformal_vector(d)
    for v in basis_elements(d, 3):
        dv = virasoro_mode(omega, -1, v)
        for w in basis_elements(d, 2):
            for m in range(-2, 4):
                assert vertex_mode(dv, m, w) == vertex_mode(v, m - 1, w).scale(-m)


def test_commutator_formula_for_weight_one_field():
    d = 2
    for i in (1, 2):
        h = mono(d, (1, i))
        for v in basis_elements(d, 2):
            for w in basis_elements(d, 2):
                for m, n in itertools.product(range(-2, 3), repeat=2):
                    lhs = vertex_mode(h, m, vertex_mode(v, n, w)) - vertex_mode(v, n, vertex_mode(h, m, w))
                    rhs = FockElement.zero(d)
                    for k in range(0, 3):
                        rhs = rhs + vertex_mode(vertex_mode(h, k, v), m + n - k, w).scale(gbinom(m, k))
                    assert lhs == rhs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_L0_is_degree_operator(d):
    omega = conformal_vector(d)
    for w in basis_elements(d, 4):
        (k,) = w.weights()
        assert virasoro_mode(omega, 0, w) == w.scale(k)


def test_conformal_vector_examples():
    assert conformal_vector(1) == mono(1, (1, 1), (1, 1), coeff=Fraction(1, 2))
    om = conformal_vector(2, (gq(1), gq(0)))
    want = mono(2, (1, 1), (1, 1), coeff="1/2") + mono(2, (1, 2), (1, 2), coeff="1/2") + mono(2, (2, 1))
    assert om == want


def test_L_minus_one_examples(vac1):
    omega = conformal_vector(1)
    assert virasoro_mode(omega, -1, vac1).is_zero()
    assert virasoro_mode(omega, -1, mono(1, (1, 1))) == mono(1, (2, 1))


def test_virasoro_mode_requires_weight_two():
    with pytest.raises(MalformedInputError):
        virasoro_mode(mono(1, (1, 1)), 0, FockElement.vacuum(1))


def test_mode_operator_family_is_consistent():
    omega = conformal_vector(2)
    fam = VirasoroFamily(omega)
    op = ModeOperator(omega, 1)
    for w in basis_elements(2, 3):
        assert fam.L(0)(w) == op(w) == virasoro_mode(omega, 0, w)


@pytest.mark.parametrize(
    "omega, c",
    [
        (conformal_vector(1), 1),
        (conformal_vector(2), 2),
        (QuadraticVector.make([[1, 0], [0, 0]]).to_element(), 1),
        (conformal_vector(1, (gq(1),)), -11),
    ],
)
def test_bracket_relations_and_central_charge(omega, c):
    rep = virasoro_bracket_check(omega, degree_bound=3, mode_bound=3)
    assert rep.ok
    assert rep.central_charge == gq(c)


def test_bracket_check_on_zero_vector():
    rep = virasoro_bracket_check(FockElement.zero(2), degree_bound=2, mode_bound=2)
    assert rep.ok and rep.central_charge == gq(0)


def test_bracket_check_rejects_non_projector():
    omega = QuadraticVector.make([[0, 1], [1, 0]]).to_element()
    assert not virasoro_bracket_check(omega, degree_bound=2, mode_bound=2, stop_at_first=True).ok


def test_central_charge_reading():
    assert read_central_charge(conformal_vector(3)) == gq(3)
    assert read_central_charge(mono(2, (1, 1), (1, 2), coeff=2)) == gq(8)  # tr(A^2) with A = [[0,2],[2,0]]


@pytest.mark.parametrize(
    "h, Lambda",
    [
        (mono(1, (1, 1)), None),
        (mono(2, (1, 1), coeff="3/5") + mono(2, (1, 2), coeff="4/5"), None),
        (mono(2, (1, 2), coeff="2+1i"), None),
    ],
)
def test_lh_commutator(h, Lambda):
    assert lh_commutator_check(h, degree_bound=3, Lambda=Lambda, mode_bound=2)


def test_lh_commutator_fails_with_shifted_vector():
    # with Lambda != 0 the field h(z) is no longer primary
    assert not lh_commutator_check(mono(1, (1, 1)), degree_bound=2, Lambda=(gq(1),), mode_bound=2)


def test_lh_commutator_needs_weight_one():
    with pytest.raises(MalformedInputError):
        lh_commutator_check(mono(1, (2, 1)))
