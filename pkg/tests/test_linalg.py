"""Exact matrix arithmetic and linear solves."""

from fractions import Fraction

import pytest

from racah_dunkl import InconsistentSystem, RationalMatrix, matrix_rank, solve_in_span
from racah_dunkl.linalg import leading_principal_minors


def F(a, b=1):
    return Fraction(a, b)


def test_from_fractions_and_back():
    m = RationalMatrix.from_fractions([[F(1, 2), F(1, 3)], [F(0), F(-2)]])
    assert m.at(0, 0) == F(1, 2)
    assert m.to_fractions() == [[F(1, 2), F(1, 3)], [F(0), F(-2)]]


def test_add_mul_against_reference():
    a = RationalMatrix.from_fractions([[F(1, 2), F(2)], [F(-1), F(1, 3)]])
    b = RationalMatrix.from_fractions([[F(3), F(0)], [F(1, 5), F(1)]])
    total = a + b
    assert total.to_fractions() == [[F(7, 2), F(2)], [F(-4, 5), F(4, 3)]]
    prod = a * b
    # manual product
    assert prod.to_fractions() == [
        [F(1, 2) * 3 + 2 * F(1, 5), F(2)],
        [F(-3) + F(1, 3) * F(1, 5), F(1, 3)],
    ]


def test_commutator_and_identity():
    a = RationalMatrix.from_fractions([[F(0), F(1)], [F(0), F(0)]])
    b = RationalMatrix.from_fractions([[F(0), F(0)], [F(1), F(0)]])
    comm = a.commutator(b)
    assert comm.to_fractions() == [[F(1), F(0)], [F(0), F(-1)]]
    assert (a * RationalMatrix.identity(2)) == a
    assert not comm.is_zero
    assert (comm - comm).is_zero


def test_diag_multiplication():
    a = RationalMatrix.from_fractions([[F(1), F(2)], [F(3), F(4)]])
    d = [F(1, 2), F(3)]
    right = a.mul_diag_right(d)
    assert right.to_fractions() == [[F(1, 2), F(6)], [F(3, 2), F(12)]]
    left = a.mul_diag_left(d)
    assert left.to_fractions() == [[F(1, 2), F(1)], [F(9), F(12)]]
    full = a * RationalMatrix.diagonal(d)
    assert full == right


def test_scale_and_equality_cross_denominator():
    a = RationalMatrix([[2, 4]], 2)
    b = RationalMatrix([[1, 2]], 1)
    assert a == b
    assert a.scale(F(1, 2)).to_fractions() == [[F(1, 2), F(1)]]


def test_solve_in_span():
    cols = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    target = [F(2), F(3), F(5)]
    (sol,) = solve_in_span(cols, [target])
    assert sol == [F(2), F(3)]
    with pytest.raises(InconsistentSystem):
        solve_in_span(cols, [[F(1), F(0), F(0)]])
    with pytest.raises(ValueError):
        solve_in_span([[F(1), F(2)], [F(2), F(4)]], [[F(1), F(2)]])


def test_matrix_rank():
    assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert matrix_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert matrix_rank([[F(0), F(0)]]) == 0


def test_leading_principal_minors():
    entries = [[F(2), F(1)], [F(1), F(2)]]
    assert leading_principal_minors(entries) == [F(2), F(3)]
