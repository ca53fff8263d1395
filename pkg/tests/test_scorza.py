import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SYMS, from_sympy, to_sympy
from lueroth_kit.algebra import QuadraticField, gens
from lueroth_kit.apolarity import Pentagon, clebsch_from_lines
from lueroth_kit.instances import random_lines, random_pentagon, random_quartic, random_unimodular
from lueroth_kit.scorza import scorza, scorza_fast, scorza_naive, sym_tensor

x1, x2, x3 = gens()[:3]

# Clebsch quartic of the lines x1, x2, x3, x1+x2+x3, x1+2x2+3x3; pinned after
# the fast kernel, the literal loop and the einsum oracle below all agreed
PINNED_CLEBSCH_IMAGE = (
    "-144*x1^3*x2 + 48*x1^3*x3 - 432*x1^2*x2^2 - 648*x1^2*x2*x3 + 192*x1^2*x3^2"
    " - 288*x1*x2^3 - 1080*x1*x2^2*x3 - 840*x1*x2*x3^2 + 144*x1*x3^3"
    " - 96*x2^3*x3 - 240*x2^2*x3^2 - 144*x2*x3^3"
)


def einsum_oracle(f):
    """The contraction from sympy fourth derivatives, slots fed in a shuffled order.

    Returns a sympy polynomial in x1, x2, x3.
    """
    X = SYMS[:3]
    fs = to_sympy(f)
    D = np.zeros((3, 3, 3, 3), dtype=np.int64)
    for idx in itertools.product(range(3), repeat=4):
        D[idx] = int(sp.diff(fs, *[X[i] for i in idx]))  # = 24 F
    eps = np.zeros((3, 3, 3), dtype=np.int64)
    for p in itertools.permutations(range(3)):
        eps[p] = sp.combinatorics.Permutation(list(p)).signature()
    S = np.einsum(
        "adg,bej,chk,fil,cwab,fdxe,yigh,lkjz->wxyz", eps, eps, eps, eps, D, D, D, D, optimize=True
    )
    out = sum(int(S[idx]) * X[idx[0]] * X[idx[1]] * X[idx[2]] * X[idx[3]]
              for idx in itertools.product(range(3), repeat=4))
    return sp.expand(out / sp.Integer(24) ** 4)


def test_sym_tensor_examples():
    T = sym_tensor(x1 ** 4)
    assert T[(0, 0, 0, 0)] == 1
    assert all(T[i] == 0 for i in itertools.product(range(3), repeat=4) if i != (0, 0, 0, 0))
    T = sym_tensor(x1 ** 3 * x2)
    assert T[(0, 0, 0, 1)] == Fraction(1, 4) == T[(1, 0, 0, 0)]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sym_tensor_round_trip(seed):
    f = random_quartic(seed)
    T = sym_tensor(f)
    assert T.to_form() == f
    full = T.full()
    for p in itertools.permutations(range(4)):
        assert (full == full.transpose(p)).all()


def test_fast_matches_einsum_oracle():
    rng = random.Random(3)
    for _ in range(3):
        f = random_quartic(rng, bound=3)
        assert to_sympy(scorza_fast(f)) == einsum_oracle(f)


def test_fast_matches_naive():
    rng = random.Random(20)
    for _ in range(5):
        f = random_quartic(rng, bound=3)
        assert scorza_fast(f) == scorza_naive(f)


def test_fourth_powers_vanish():
    for l in random_lines(8, n=4):
        assert scorza(l ** 4).is_zero()
        assert scorza_naive(l ** 4).is_zero()


def test_fermat_image_frozen():
    # diagonal F: the four brackets need four symbols' indices to differ, which
    # three indices cannot supply
    f = x1 ** 4 + x2 ** 4 + x3 ** 4
    assert scorza_naive(f).is_zero()
    assert scorza_fast(f).is_zero()


def test_clebsch_image_pinned():
    lines = [x1, x2, x3, x1 + x2 + x3, x1 + 2 * x2 + 3 * x3]
    S = scorza(clebsch_from_lines(lines))
    assert str(S) == PINNED_CLEBSCH_IMAGE
    assert to_sympy(S) == einsum_oracle(clebsch_from_lines(lines))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sl3_equivariance(seed):
    rng = random.Random(seed)
    f = random_quartic(rng, bound=4)
    g = random_unimodular(rng)
    assert scorza(f.substitute_linear(g)) == scorza(f).substitute_linear(g)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool))
def test_degree_four_homogeneity(seed, lam):
    f = random_quartic(seed)
    assert scorza(f * lam) == scorza(f) * lam ** 4


def test_rational_scaling_and_large_coefficients():
    f = random_quartic(4)
    assert scorza(f / 7) == scorza(f) / 7 ** 4
    # large enough to leave int64 and take the object path
    big = f * 10 ** 6
    assert scorza(big) == scorza(f) * 10 ** 24


def test_quadratic_field_path():
    K = QuadraticField(-2)
    t = K.gen
    y1, y2, y3 = gens(K)[:3]
    g = (y1 + t * y2) ** 4 + y3 ** 4 + y1 * y2 * y3 * (y1 + y2)
    assert scorza_fast(g) == scorza_naive(g)
    f = random_quartic(9, bound=3)
    lifted = f * K(1)
    assert scorza_fast(lifted) == scorza_fast(f) * K(1)


def test_sympy_round_trip_of_output():
    f = random_quartic(12, bound=3)
    S = scorza(f)
    assert from_sympy(to_sympy(S)) == S


def test_pentagon_vertices_on_image():
    # classical circumscription, checked here on a few pentagons
    for seed in range(3):
        p = random_pentagon(seed, bound=3)
        S = scorza(clebsch_from_lines(p.lines))
        assert not S.is_zero()
        for v in p.vertices:
            assert S.eval(x=v) == 0
    p = Pentagon((x1, x2, x3, x1 + x2 + x3, x1 + 2 * x2 + 3 * x3))
    S = scorza(clebsch_from_lines(p.lines))
    assert all(S.eval(x=v) == 0 for v in p.vertices)


def test_rejects_non_quartics():
    with pytest.raises(ValueError):
        scorza(x1 ** 3)
