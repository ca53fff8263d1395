import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lueroth_kit.linalg import ExactMatrix, det
from lueroth_kit.repcheck import (
    CLASS_REPS,
    CLASS_SIZES,
    IRREP_DIMS,
    IRREPS,
    ClassFunction,
    NotACharacterError,
    NotARepresentationError,
    WeightMultiset,
    all_lifts,
    character_S2V,
    character_V,
    character_wedge2_S2V,
    combination,
    compose,
    decompose_s4,
    format_decomposition,
    format_sl2,
    irrep,
    lift,
    peel,
    permutes_frame,
    sl2_plethysm,
    sym2_matrix,
    sym_power,
    tables,
    trace,
)


def test_lifts_permute_the_frame():
    for p, A in all_lifts().items():
        assert permutes_frame(A, p)
        assert det(A) == 1


def test_lifts_form_a_homomorphism():
    lifts = all_lifts()
    for p, q in itertools.product(lifts, repeat=2):
        assert lifts[p] @ lifts[q] == lifts[compose(p, q)]


def test_transposition_lifts():
    # p1 <-> p4
    A = lift((3, 1, 2, 0))
    assert A.rows == ((1, 0, 0), (1, -1, 0), (1, 0, -1))
    B = lift((1, 0, 2, 3))
    assert B.rows == ((0, -1, 0), (-1, 0, 0), (0, 0, -1))


def test_class_sizes():
    assert sum(CLASS_SIZES) == 24
    assert sum(d * d for d in IRREP_DIMS) == 24


def test_irreps_orthonormal():
    for (i, a), (j, b) in itertools.product(enumerate(IRREPS), repeat=2):
        assert a.inner(b) == (1 if i == j else 0)


def test_decompositions():
    assert format_decomposition(decompose_s4(character_V())) == "V3'"
    assert format_decomposition(decompose_s4(character_S2V())) == "1 + V2 + V3"
    assert decompose_s4(character_wedge2_S2V()) == (0, 1, 1, 2, 2)
    assert character_wedge2_S2V() == character_S2V().wedge2()


def test_sym2_of_character_matches_matrices():
    assert character_V().sym2() == character_S2V()


def test_measured_traces_agree_with_sym2_matrix():
    for p in CLASS_REPS:
        A = lift(p)
        assert sym2_matrix(A).nrows == 6
        assert trace(sym2_matrix(A)) == character_S2V().values[CLASS_REPS.index(p)]


def test_non_characters_rejected():
    with pytest.raises(NotACharacterError):
        decompose_s4(ClassFunction((1, 0, 0, 0, 0)))
    with pytest.raises(NotACharacterError):
        decompose_s4(ClassFunction((-1, -1, -1, -1, -1)))
    with pytest.raises(ValueError):
        ClassFunction((1, 2))


def test_f_row_is_informational():
    rows = {r.name: r for r in tables()}
    f = rows["F = Lambda^2(V3+1)"]
    assert f.computed == "V3 + V3'" and f.claimed == "2V3"
    assert f.agrees is False and not f.blocking
    assert rows["C^3"].agrees is None


def test_blocking_rows_agree():
    for r in tables():
        if r.blocking:
            assert r.agrees, r


def test_sl2_plethysms():
    V2 = WeightMultiset.irreducible(2)
    assert sl2_plethysm(2, V2) == {4: 1, 0: 1}
    assert sl2_plethysm(4, V2) == {8: 1, 4: 1, 0: 1}
    assert format_sl2(sl2_plethysm(4, V2)) == "V(8) + V(4) + V(0)"
    # Clebsch-Gordan sanity: Sym^2 V(1) = V(2)
    assert sl2_plethysm(2, WeightMultiset.irreducible(1)) == {2: 1}


def test_peel_rejects_non_representations():
    with pytest.raises(NotARepresentationError):
        peel(WeightMultiset({2: 1, 0: 1}))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(1, 4))
def test_weight_multisets_symmetric(n, k):
    ms = sym_power(k, WeightMultiset.irreducible(n))
    assert ms.is_symmetric()
    parts = peel(ms)
    assert sum(m * (top + 1) for top, m in parts.items()) == sum(ms.values())


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_decompose_round_trip(mults):
    chi = combination(mults)
    if chi.dim == 0:
        return
    assert decompose_s4(chi) == tuple(mults)
    assert chi.dim == sum(m * d for m, d in zip(mults, IRREP_DIMS))
    assert chi.inner(chi) == sum(m * m for m in mults)


def test_irrep_lookup():
    assert irrep("V3'").dim == 3
    assert irrep("eps").values == tuple(Fraction(v) for v in (1, -1, 1, 1, -1))
