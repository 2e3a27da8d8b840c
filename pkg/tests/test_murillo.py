from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from sullivan.algebra import (
    Element,
    basis,
    build_algebra,
    coefficient_vector,
    format_element,
    parse_element,
)
from sullivan.cohomology import cochain_maps, top_class
from sullivan.errors import PreconditionError
from sullivan.linalg import RationalMatrix, solve_membership
from sullivan.models import (
    elliptic_pure_n35,
    elliptic_pure_n37,
    nonpure_n23,
    projective_plane,
    projective_plane_times_s3,
    tower_two_even_mixed,
)
from sullivan.murillo import (
    _det,
    coefficient_matrix,
    exact_divide,
    murillo_fundamental_class,
)


def _entries_as_text(matrix):
    return [[format_element(e) for e in row] for row in matrix.entries]


def test_coefficient_matrix_n37():
    matrix = coefficient_matrix(elliptic_pure_n37())
    assert _entries_as_text(matrix) == [
        ["x2^2", "0"],
        ["x2*x6^2", "0"],
        ["0", "x6^3"],
    ]


def test_coefficient_matrix_n35():
    matrix = coefficient_matrix(elliptic_pure_n35())
    assert _entries_as_text(matrix) == [
        ["x2^2", "0"],
        ["x6^2", "0"],
        ["0", "x6^3"],
    ]


def test_coefficient_matrix_single_column():
    matrix = coefficient_matrix(projective_plane())
    assert _entries_as_text(matrix) == [["x2^2"]]


def test_row_identity_and_triangularity():
    for build in (elliptic_pure_n37, elliptic_pure_n35, tower_two_even_mixed):
        matrix = coefficient_matrix(build())
        for j in range(len(matrix.odd_gens)):
            assert matrix.row_identity_holds(j)
        assert matrix.is_triangular()


def test_coefficient_matrix_rejects_nonpure():
    with pytest.raises(PreconditionError):
        coefficient_matrix(nonpure_n23())


def test_fundamental_class_n37():
    omega = murillo_fundamental_class(elliptic_pure_n37())
    assert format_element(omega) == "x2*x6^5*y5 - x2^2*x6^3*y15"


def test_fundamental_class_n35():
    omega = murillo_fundamental_class(elliptic_pure_n35())
    assert format_element(omega) == "x2^2*x6^3*y13 - x6^5*y5"


def test_fundamental_class_single_even():
    omega = murillo_fundamental_class(projective_plane())
    assert format_element(omega) == "x2^2"


def test_fundamental_class_with_closed_odd_generator():
    # rows are [0] for y3 and [x2^2] for y5; only the j=2 minor survives
    omega = murillo_fundamental_class(projective_plane_times_s3())
    assert format_element(omega) == "x2^2*y3"


def test_fundamental_class_matches_top_class_up_to_scalar_mod_boundaries():
    for build in (
        projective_plane,
        projective_plane_times_s3,
        elliptic_pure_n37,
        elliptic_pure_n35,
        tower_two_even_mixed,
    ):
        model = build()
        omega = murillo_fundamental_class(model)
        n, space = top_class(model)
        rep = space.representatives[0]
        ambient = basis(model.algebra, n)
        _, incoming = cochain_maps(model, n)
        cols = [incoming.column(j) for j in range(incoming.ncols)]
        cols.append(coefficient_vector(rep, ambient))
        stacked = RationalMatrix.from_columns(cols, len(ambient))
        sol = solve_membership(stacked, coefficient_vector(omega, ambient))
        assert sol is not None
        assert sol[-1] != 0  # the top-class coordinate is a nonzero scalar


def test_determinant_matches_permutation_expansion():
    rng = random.Random(20260819)
    alg = build_algebra([("x2", 2), ("x4", 4), ("y5", 5)])
    x2 = alg.gen_element("x2")
    x4 = alg.gen_element("x4")

    def random_poly():
        e = alg.zero()
        for _ in range(rng.randint(1, 2)):
            c = Fraction(rng.randint(-3, 3))
            a = rng.randint(0, 2)
            b = rng.randint(0, 1)
            term = c * alg.one()
            for _ in range(a):
                term = term * x2
            for _ in range(b):
                term = term * x4
            e = e + term
        return e

    def naive_det(entries):
        n = len(entries)
        total = alg.zero()
        for perm in permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = sign * alg.one()
            for i in range(n):
                prod = prod * entries[i][perm[i]]
            total = total + prod
        return total

    for trial in range(4):
        n = 5  # forces the fraction-free elimination path
        entries = [[random_poly() for _ in range(n)] for _ in range(n)]
        assert _det(entries, alg) == naive_det(entries)


def test_exact_divide_roundtrip():
    alg = build_algebra([("x2", 2), ("x4", 4), ("y5", 5)])
    a = parse_element("x2^2*x4 + 2*x2^4", alg)
    b = parse_element("x2^2", alg)
    q = exact_divide(a * b, b)
    assert q == a
    with pytest.raises(ZeroDivisionError):
        exact_divide(a, alg.zero())
