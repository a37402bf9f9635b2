import itertools

import pytest

from conftest import basis_elements, mono
from heisenberg_sc.fock import (
    FockElement,
    apply_heisenberg,
    basis_of_degree,
    canonical,
    injected_fault,
)
from heisenberg_sc.linalg import MalformedInputError
from heisenberg_sc.partitions import colored_partition_numbers


def test_basis_sizes_rank_one():
    assert [len(basis_of_degree(1, n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_weight_two_basis_rank_two():
    b = basis_of_degree(2, 2)
    # h_i(-1)h_j(-1) with i <= j, plus h_k(-2)
    assert len(b) == 2 * 3 // 2 + 2
    assert set(b) == {((1, 1), (1, 1)), ((1, 1), (1, 2)), ((1, 2), (1, 2)), ((2, 1),), ((2, 2),)}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_degree_zero_is_vacuum(d):
    assert basis_of_degree(d, 0).monomials == ((),)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dimensions_match_generating_function(d):
    assert [len(basis_of_degree(d, n)) for n in range(9)] == list(colored_partition_numbers(d, 8))


@pytest.mark.parametrize("d, n", [(2, 4), (3, 5)])
def test_basis_is_canonical_and_duplicate_free(d, n):
    b = basis_of_degree(d, n)
    assert len(set(b)) == len(b)
    for m in b:
        assert canonical(m) == m
        assert sum(k for k, _ in m) == n
    assert basis_of_degree(d, n).monomials == b.monomials


def test_annihilation_examples(vac1):
    h = mono(1, (1, 1))
    assert apply_heisenberg(1, 1, h) == vac1
    assert apply_heisenberg(1, 0, h).is_zero()
    hh = mono(1, (1, 1), (1, 1))
    assert apply_heisenberg(1, 2, hh).is_zero()
    assert apply_heisenberg(1, 1, hh) == h.scale(2)


def test_creation_canonicalizes():
    v = apply_heisenberg(2, -1, mono(2, (2, 1)))
    assert list(v.terms) == [((2, 1), (1, 2))]


def test_flavor_out_of_range():
    with pytest.raises(MalformedInputError):
        apply_heisenberg(3, 1, FockElement.vacuum(2))
    with pytest.raises(MalformedInputError):
        FockElement.monomial(1, [(1, 2)])


@pytest.mark.parametrize("d", [1, 2, 3])
def test_heisenberg_relations(d):
    modes = [m for m in range(-4, 5)]
    for w in basis_elements(d, 5):
        for i, j in itertools.product(range(1, d + 1), repeat=2):
            for m, n in itertools.product(modes, modes):
                lhs = apply_heisenberg(i, m, apply_heisenberg(j, n, w)) - apply_heisenberg(
                    j, n, apply_heisenberg(i, m, w)
                )
                want = w.scale(m) if (i == j and m + n == 0) else FockElement.zero(d)
                assert lhs == want, (i, j, m, n, w)


def test_weight_bookkeeping():
    for w in basis_elements(2, 4):
        (k,) = w.weights()
        for n in range(1, 4):
            up = apply_heisenberg(1, -n, w)
            assert up.weights() == {k + n}
            down = apply_heisenberg(2, n, w)
            assert down.is_zero() or down.weights() == {k - n}


def test_element_arithmetic():
    v = mono(2, (2, 1)) + mono(2, (1, 1), (1, 2), coeff="1/3+1i")
    zero = FockElement.zero(2)
    assert v + zero == v
    assert (v - v).is_zero() and not (v - v).terms
    half = mono(1, (2, 1), coeff="1/2")
    assert half + half == mono(1, (2, 1))
    with pytest.raises(MalformedInputError):
        v + FockElement.zero(3)


def test_zero_coefficients_dropped():
    v = FockElement(1, [(((1, 1),), 1), (((1, 1),), -1), (((2, 1),), 0)])
    assert v.terms == {}


def test_json_round_trip_and_order():
    v = FockElement(2, [(((1, 2), (2, 1)), "1/2"), ((), "-3+1i")])
    data = v.to_json()
    assert data[1]["monomial"] == [[2, 1], [1, 2]]
    assert FockElement.from_json(2, data) == v
    assert FockElement.from_json(2, [{"monomial": [[1, 2], [2, 1]], "coeff": "1/2"}]) == mono(2, (2, 1), (1, 2), coeff="1/2")


def test_fault_changes_one_structure_constant(vac1):
    h = mono(1, (1, 1))
    with injected_fault(3):
        assert apply_heisenberg(1, 1, h) == vac1.scale(3)
    assert apply_heisenberg(1, 1, h) == vac1
