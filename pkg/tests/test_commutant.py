import random

import pytest

from heisenberg_sc import commutant as cm
from heisenberg_sc.corpus import random_point
from heisenberg_sc.fock import basis_of_degree
from heisenberg_sc.linalg import MalformedInputError, Matrix, Subspace
from heisenberg_sc.scalars import gq
from heisenberg_sc.semiconformal import ScPoint
from heisenberg_sc.variety import involution

HALF = [["1/2", "1/2"], ["1/2", "1/2"]]


def P(A, Lambda=None):
    return ScPoint.from_projector(A if isinstance(A, Matrix) else Matrix(A), Lambda)


def test_graded_operator_shapes_and_trivial_cases():
    top, bottom = P(Matrix.identity(2)), P(Matrix.zeros(2))
    for n in range(4):
        gm = cm.graded_operator(top, cm.COMPLEMENT, n)
        assert gm.matrix.shape == (len(basis_of_degree(2, n + 1)), len(basis_of_degree(2, n)))
        assert gm.matrix.is_zero()
        assert cm.graded_operator(bottom, cm.LPRIME, n).matrix.is_zero()
    with pytest.raises(MalformedInputError):
        cm.graded_operator(top, "L(0)", 1)


def test_weight_one_kernel_example():
    p = P(Matrix.diag([1, 0]))
    assert cm.nullity(p, cm.LPRIME, 1) == 1
    assert cm._weight1_kernel(p, cm.LPRIME).same_as(Subspace(2, ((0, 1),)))


@pytest.mark.parametrize(
    "A",
    [Matrix.diag([1, 0]), Matrix(HALF), Matrix([["4/3", "0+2/3i"], ["0+2/3i", "-1/3"]]), Matrix.diag([0, 1, 1])],
)
def test_explicit_operator_matches_mode_calculus(A):
    p = P(A)
    for which in (cm.LPRIME, cm.COMPLEMENT):
        for n in range(4):
            assert cm.graded_operator(p, which, n) == cm.graded_operator_by_modes(p, which, n)


def test_commutant_dims_examples():
    prof = cm.commutant_dims(P(Matrix.diag([1, 0])), 5)
    assert prof.dims_commutant == [1, 1, 2, 3, 5, 7]
    assert prof.matches_expected and prof.tensor_identity_holds
    prof = cm.commutant_dims(P(Matrix.identity(2)), 5)
    assert prof.dims_commutant == [1, 0, 0, 0, 0, 0]
    prof = cm.commutant_dims(P(Matrix.diag([1, 0, 0])), 4)
    assert prof.dims_double_commutant == [1, 1, 2, 3, 5]
    assert prof.dims_commutant[0] == prof.dims_double_commutant[0] == 1


def test_commutant_requires_lambda_zero():
    p = P(Matrix.diag([1, 0]), (gq(1), gq(0)))
    with pytest.raises(cm.PreconditionViolation):
        cm.commutant_dims(p)
    with pytest.raises(cm.PreconditionViolation):
        cm.weight1_identification(p)


@pytest.mark.parametrize(
    "A, im, ker",
    [
        (Matrix.identity(2), ((1, 0), (0, 1)), ()),
        (Matrix.diag([1, 0]), ((1, 0),), ((0, 1),)),
        (Matrix(HALF), ((1, 1),), ((1, -1),)),
    ],
)
def test_weight_one_identification_examples(A, im, ker):
    p = P(A)
    assert cm.weight1_identification(p)
    assert cm._weight1_kernel(p, cm.COMPLEMENT).same_as(Subspace(2, im))
    assert cm._weight1_kernel(p, cm.LPRIME).same_as(Subspace(2, ker))


def test_tensor_identity_example():
    prof = cm.commutant_dims(P(Matrix.diag([1, 0])), 4)
    assert prof.convolution[2] == 1 * 2 + 1 * 1 + 2 * 1 == prof.dims_total[2] == 5
    assert cm.tensor_dim_check(P(Matrix.diag([1, 1, 0])), 5)
    assert cm.tensor_dim_check(P(Matrix.zeros(2)), 4)


def test_dimension_criterion():
    assert cm.dimension_criterion_check(P(Matrix.diag([1, 0])), 5)
    assert cm.dimension_criterion_check(P(Matrix.diag([1, 0, 0])), 4)
    for A in (Matrix.zeros(2), Matrix.identity(2)):
        with pytest.raises(cm.PreconditionViolation):
            cm.dimension_criterion_check(P(A))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_random_points_match_expected_and_involution_swaps(d):
    rng = random.Random(f"commutant:{d}")
    for _ in range(3):
        p = random_point(rng, d)
        prof = cm.commutant_dims(p, 4)
        assert prof.matches_expected and prof.tensor_identity_holds
        assert cm.weight1_identification(p)
        dual = cm.commutant_dims(involution(p), 4)
        assert dual.dims_commutant == prof.dims_double_commutant
        assert dual.dims_double_commutant == prof.dims_commutant


def test_profile_json_table():
    data = cm.commutant_dims(P(Matrix.diag([1, 0])), 3).to_json()
    assert [row["commutant"]["actual"] for row in data["table"]] == [1, 1, 2, 3]
    assert data["rank"] == 1 and data["matches_expected"]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_L_minus_one_injective_in_positive_degree(d):
    nulls = cm.l_minus_one_nullities(d, 6)
    assert nulls[0] == 1 and nulls[1:] == [0] * 6
