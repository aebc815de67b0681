"""Fraction-free determinants and resultants on polynomial matrices."""

import random
from fractions import Fraction

import pytest

from inflectionary.matrices import (
    det_cofactor,
    det_polymatrix,
    resultant,
    sylvester_matrix,
)
from inflectionary.poly import SparsePoly

XL = ("x", "lambda")
X = SparsePoly.variable(XL, "x")
L = SparsePoly.variable(XL, "lambda")
T = SparsePoly.variable(("t",), "t")


def const(v):
    return SparsePoly.constant(XL, v)


def _random_matrix(rng, n):
    return [[const(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
             for _ in range(n)] for _ in range(n)]


class TestDeterminant:
    def test_identity_and_diagonal(self):
        eye = [[const(1 if i == j else 0) for j in range(3)] for i in range(3)]
        assert det_polymatrix(eye) == const(1)
        diag = [[const(2 if i == j else 0) for j in range(3)] for i in range(3)]
        assert det_polymatrix(diag) == const(8)

    def test_two_by_two_symbolic(self):
        m = [[const(1), X], [const(1), L]]
        assert det_polymatrix(m) == L - X

    def test_singular_matrix(self):
        m = [[X, L], [2 * X, 2 * L]]
        assert det_polymatrix(m).is_zero

    def test_row_swap_flips_sign(self):
        m = [[X, const(1)], [L, const(3)]]
        swapped = [m[1], m[0]]
        assert det_polymatrix(swapped) == -det_polymatrix(m)

    def test_pivot_column_with_leading_zero(self):
        m = [[const(0), X], [L, const(1)]]
        assert det_polymatrix(m) == -X * L

    def test_zero_column_gives_zero(self):
        m = [[const(0), X, L],
             [const(0), const(1), const(2)],
             [const(0), L, X]]
        assert det_polymatrix(m).is_zero

    def test_matches_cofactor_expansion_on_random_input(self):
        rng = random.Random(42)
        for n in (2, 3, 4):
            for _ in range(8):
                m = _random_matrix(rng, n)
                assert det_polymatrix(m) == det_cofactor(m)

    def test_polynomial_entries_match_cofactor(self):
        rng = random.Random(17)
        entries = [X, L, X * L, X + L, const(2), X * X, L - 1, const(0)]
        for _ in range(6):
            m = [[rng.choice(entries) for _ in range(3)] for _ in range(3)]
            assert det_polymatrix(m) == det_cofactor(m)

    def test_rejects_ragged_input(self):
        with pytest.raises(ValueError):
            det_polymatrix([[const(1)], [const(1), const(2)]])
        with pytest.raises(ValueError):
            det_polymatrix([])


class TestSylvester:
    def test_layout(self):
        # a = x^2 + lambda, b = x - 1: one a-row then two b-rows
        a = X * X + L
        b = X - 1
        m = sylvester_matrix(a, b, "x")
        assert len(m) == 3
        lam = SparsePoly.variable(("lambda",), "lambda")
        one = SparsePoly.constant(("lambda",), 1)
        assert m[0] == [one, SparsePoly.zero(("lambda",)), lam]
        assert m[1] == [one, -one, SparsePoly.zero(("lambda",))]
        assert m[2] == [SparsePoly.zero(("lambda",)), one, -one]


class TestResultant:
    def test_linear_pair(self):
        a = T - 3
        b = T - 5
        r = resultant(a, b, "t")
        assert r == SparsePoly.constant((), -2)

    def test_symbolic_linear_pair(self):
        # res(x - a, x - b) = a - b with a, b in a parameter ring
        a = X - L
        b = X - (L + 1)
        assert resultant(a, b, "x") == SparsePoly.constant(("lambda",), -1)

    def test_quadratic_against_linear(self):
        a = X * X - L
        b = X - 1
        assert resultant(a, b, "x") == SparsePoly(("lambda",), {(0,): 1, (1,): -1})

    def test_common_root_vanishes(self):
        a = (T - 1) * (T - 2)
        b = (T - 1) * (T - 3)
        assert resultant(a, b, "t").is_zero

    def test_constant_cases(self):
        c = SparsePoly.constant(("t",), 4)
        assert resultant(c, T * T + 1, "t") == SparsePoly.constant((), 16)
        assert resultant(c, SparsePoly.constant(("t",), 7), "t") == SparsePoly.constant((), 1)
        with pytest.raises(ValueError):
            resultant(SparsePoly.zero(("t",)), SparsePoly.zero(("t",)), "t")

    def test_zero_argument(self):
        assert resultant(SparsePoly.zero(("t",)), T - 1, "t").is_zero

    def test_multiplicative_in_first_argument(self):
        rng = random.Random(23)
        for _ in range(6):
            r1 = Fraction(rng.randint(-4, 4))
            r2 = Fraction(rng.randint(-4, 4))
            r3 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            a1, a2, b = T - r1, T - r2, T - r3
            lhs = resultant(a1 * a2, b, "t")
            rhs = resultant(a1, b, "t") * resultant(a2, b, "t")
            assert lhs == rhs

    def test_product_of_root_differences(self):
        # res(f, g) = lc(f)^deg(g) * prod g(root_i) for monic f
        f = (T - 1) * (T + 2)
        g = T * T - 3
        expected = (1 - 3) * (4 - 3)
        assert resultant(f, g, "t") == SparsePoly.constant((), expected)
