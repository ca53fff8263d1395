import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lueroth_kit.algebra import QuadraticField, adjugate_conic, gens
from lueroth_kit.bateman import BatemanTuple, b_pairing, example_instance
from lueroth_kit.instances import random_bateman_pair, random_form
from lueroth_kit.algebra import E
from lueroth_kit.linalg import ExactMatrix, det, rank
from lueroth_kit.morley import (
    CANDIDATES,
    Convention,
    ConicPencil,
    DegenerateTupleError,
    calibrate,
    calibration_candidates_passing,
    closedness_relation,
    conic_to_vec,
    kernel_pencil,
    morley_matrix,
    example_base_points,
    example_morley_matrix,
    example_pencil,
    pfaffian_value,
    prop_check,
    tangent_rank,
    tangent_system,
    vec_to_conic,
)

x1, x2, x3, e1, e2, e3 = gens()

# frozen after the sympy checks below
EXAMPLE_MATRIX = (
    (0, -12, 12, -12, 0, 12),
    (12, 0, 24, -12, -24, 0),
    (-12, -24, 0, 0, 0, 12),
    (12, 12, 0, 0, -12, -12),
    (0, 24, 0, 12, 0, -12),
    (-12, 0, -12, 12, 12, 0),
)
RANDOM7_COORDS = (1, -5, 3, -8, -7, 8, -6, 2, 9, -8, 7, -3, -8, -7, 4, 4, -7, -2)
RANDOM7_PFAFFIAN = -290


def random_tuple(rng):
    return BatemanTuple(tuple(rng.randint(-9, 9) for _ in range(18)))


def test_zero_tuple():
    T = BatemanTuple((0,) * 18)
    assert morley_matrix(T) == ExactMatrix.zeros(6, 6)
    assert pfaffian_value(T) == 0


def test_single_coordinate():
    coords = [0] * 18
    coords[12] = 1  # d_3_11
    M = morley_matrix(BatemanTuple(tuple(coords)))
    assert M[0, 1] == 1 and M[1, 0] == -1
    assert sum(1 for r in M.rows for c in r if c != 0) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_skew_and_linear(seed):
    rng = random.Random(seed)
    S, T = random_tuple(rng), random_tuple(rng)
    M = morley_matrix(S)
    assert M.is_skew()
    assert morley_matrix(S + T) == M + morley_matrix(T)
    assert morley_matrix(S.scale(3)) == M.scale(3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pfaffian_squared_is_det(seed):
    T = random_tuple(random.Random(seed))
    M = morley_matrix(T)
    assert pfaffian_value(T) ** 2 == det(M)
    assert sp.Matrix([list(r) for r in M.rows]).det() == det(M)


def test_calibration_unique():
    passing = calibration_candidates_passing()
    assert passing == [Convention(0, "derivative", "half")]
    assert calibrate() == passing[0]
    assert len(CANDIDATES) == 12


def test_example_matrix_pinned():
    M = example_morley_matrix()
    assert M.rows == EXAMPLE_MATRIX
    S = sp.Matrix(EXAMPLE_MATRIX)
    assert S.rank() == 4 and S.det() == 0
    assert rank(M) == 4 and pfaffian_value(b_pairing(*example_instance())) == 0


def test_example_pencil():
    pencil = kernel_pencil(b_pairing(*example_instance()))
    assert pencil == example_pencil()
    assert pencil.contains(e1 ** 2 + e2 ** 2 + e3 ** 2)
    assert pencil.contains(e1 ** 2 - e1 * e2 + e2 ** 2 + e1 * e3 + e2 * e3)
    assert not pencil.contains(e1 ** 2)
    # independent route: sympy nullspace of the pinned matrix
    null = sp.Matrix(EXAMPLE_MATRIX).nullspace()
    basis = (e1 ** 2, e1 * e2, e1 * e3, e2 ** 2, e2 * e3, e3 ** 2)
    conics = []
    for v in null:
        coeffs = [Fraction(str(c)) / (2 if k in (0, 3, 5) else 1) for k, c in enumerate(v)]
        conics.append(sum((c * m for c, m in zip(coeffs, basis)), 0 * e1))
    assert ConicPencil.from_conics(conics) == pencil


def test_base_points():
    pts = example_base_points()
    pencil = example_pencil()
    assert pencil.base_points_vanish(pts)
    K = QuadraticField(-2)
    assert all(p[0].field == K or p[1].field == K for p in pts)
    assert not pencil.base_points_vanish([(K(1), K(1), K(1))])


def test_prop_check_random():
    rng = random.Random(11)
    for _ in range(50):
        Q, C = random_bateman_pair(rng)
        Qstar = adjugate_conic(Q)
        assert prop_check(Qstar, C)
        T = b_pairing(Qstar, C)
        assert rank(morley_matrix(T)) == 4
        assert pfaffian_value(T) == 0
        assert kernel_pencil(T).contains(Qstar)


def test_generic_tuple_pfaffian_pinned():
    rng = random.Random(7)
    T = random_tuple(rng)
    assert T.coords == RANDOM7_COORDS
    assert pfaffian_value(T) == RANDOM7_PFAFFIAN
    assert sp.Matrix([list(r) for r in morley_matrix(T).rows]).det() == RANDOM7_PFAFFIAN ** 2


def test_generic_tuples_nonzero():
    rng = random.Random(8)
    assert all(pfaffian_value(random_tuple(rng)) != 0 for _ in range(30))


def test_degenerate_tuple():
    with pytest.raises(DegenerateTupleError) as info:
        kernel_pencil(BatemanTuple((0,) * 18))
    assert info.value.rank == 0
    with pytest.raises(DegenerateTupleError):
        kernel_pencil(random_tuple(random.Random(7)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_vec_round_trip(seed):
    q = random_form(random.Random(seed), 2, E)
    assert vec_to_conic(conic_to_vec(q)) == q


def test_tangent_rank():
    Qstar, C = example_instance()
    assert tangent_rank(Qstar, C) == 7
    assert tangent_rank(Qstar, 0 * x1) == 3
    rng = random.Random(4)
    for _ in range(5):
        Q, C = random_bateman_pair(rng)
        assert tangent_rank(adjugate_conic(Q), C) == 7


def test_closedness_relation():
    rng = random.Random(6)
    for Qstar, C in [example_instance()] + [
        (adjugate_conic(Q), C) for Q, C in (random_bateman_pair(rng) for _ in range(5))
    ]:
        A = tangent_system(Qstar, C)
        rel = closedness_relation(Qstar)
        assert any(r != 0 for r in rel)
        assert all(sum(r * A[i, j] for i, r in enumerate(rel)) == 0 for j in range(A.ncols))
        assert rank(A) == 7
