from fractions import Fraction

import pytest

from qpmut.linalg import Matrix, complement, coordinates, fraction_str, intersect, span_contains, to_fraction
from oracles import naive_det, naive_rank


def test_to_fraction_accepts_strings_and_unicode_minus():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction("−3/2") == Fraction(-3, 2)
    assert to_fraction(4) == 4


def test_fraction_str_is_canonical():
    assert fraction_str(Fraction(4, 2)) == "2"
    assert fraction_str(Fraction(-2, 4)) == "-1/2"


def test_shapes_of_empty_products():
    A = Matrix.zeros(2, 0)
    B = Matrix.zeros(0, 3)
    assert (A @ B).shape == (2, 3)
    assert (A @ B).is_zero()


def test_rank_and_det_against_naive():
    M = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert M.rank() == naive_rank(M.rows) == 2
    N = Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert N.det() == naive_det(N.rows)
    assert N @ N.inverse() == Matrix.identity(3)


def test_left_kernel_annihilates():
    M = Matrix([[1, 2], [2, 4], [0, 1]])
    K = M.left_kernel()
    assert K.nrows == 1
    assert (K @ M).is_zero()


def test_solve_left():
    A = Matrix([[1, 0, 1], [0, 1, 1]])
    X = Matrix([[2, 3]])
    assert A.solve_left(X @ A) == X
    assert A.solve_left(Matrix([[0, 0, 1]])) is None


def test_complement_completes_a_basis():
    B = Matrix([[1, 1, 0]])
    C = complement(B)
    assert C.nrows == 2
    assert Matrix.vstack([B, C]).rank() == 3


def test_coordinates_and_intersection():
    B = Matrix([[1, 0, 1], [0, 1, 1]])
    v = Matrix([[3, -2, 1]])
    assert coordinates(B, v) @ B == v
    I = intersect(B, Matrix([[1, 1, 2], [1, 0, 0]]))
    assert I.nrows == 1 and span_contains(B, I)


def test_mismatched_shapes_raise():
    with pytest.raises(Exception):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
