"""Acceptance criteria, one test each.

Every criterion prints a single PASS/FAIL line with its wall time; the lines
are collected and repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` to get just the lines.
"""

import random
import time

import pytest

from lueroth_kit import apolarity, geiser, morley, repcheck, scorza, verify
from lueroth_kit.algebra import adjugate_conic, gens
from lueroth_kit.bateman import BatemanTuple, b_pairing, example_instance
from lueroth_kit.instances import (
    random_bateman_pair,
    random_lines,
    random_pentagon,
    random_quartic,
    random_unimodular,
)
from lueroth_kit.linalg import rank

RESULTS = []

x1, x2, x3, e1, e2, e3 = gens()


def _span(conics):
    return morley.ConicPencil.from_conics(conics)


def c01():
    Qstar, C = example_instance()
    pencil = morley.kernel_pencil(b_pairing(Qstar, C))
    target = _span([e1 ** 2 + e2 ** 2 + e3 ** 2, e1 ** 2 - e1 * e2 + e2 ** 2 + e1 * e3 + e2 * e3])
    return pencil.generators == target.generators, f"kernel {[str(g) for g in pencil.generators]}"


def c02():
    Qstar, C = example_instance()
    pencil = morley.kernel_pencil(b_pairing(Qstar, C))
    pts = morley.example_base_points()
    ok = pencil.base_points_vanish(pts) and len(pts) == 4
    return ok, "4 points over Q(sqrt(-2))"


def _pairs(n=500, seed=2024):
    rng = random.Random(seed)
    return [(adjugate_conic(Q), C) for Q, C in (random_bateman_pair(rng) for _ in range(n))]


def c03():
    bad = sum(1 for Qstar, C in _pairs() if not morley.prop_check(Qstar, C))
    return bad == 0, f"500 pairs, {bad} violations"


def c04():
    ranks, pf_bad = set(), 0
    for Qstar, C in _pairs():
        T = b_pairing(Qstar, C)
        ranks.add(rank(morley.morley_matrix(T)))
        pf_bad += morley.pfaffian_value(T) != 0
    rng = random.Random(99)
    generic_zero = sum(
        1 for _ in range(100)
        if morley.pfaffian_value(BatemanTuple(tuple(rng.randint(-9, 9) for _ in range(18)))) == 0
    )
    ok = ranks == {4} and pf_bad == 0 and generic_zero == 0
    return ok, f"ranks {sorted(ranks)}, nonzero Pf on Bateman {pf_bad}, zero Pf on random {generic_zero}/100"


def c05():
    Qstar, C = example_instance()
    A = morley.tangent_system(Qstar, C)
    rel = morley.closedness_relation(Qstar)
    holds = any(rel) and all(sum(r * A[i, j] for i, r in enumerate(rel)) == 0 for j in range(A.ncols))
    r = morley.tangent_rank(Qstar, C)
    return r == 7 and holds, f"rank {r}, relation holds {holds}"


def c06():
    rng = random.Random(6)
    inv = apolarity.catalecticant_invariant
    clebsch = all(inv(apolarity.clebsch_from_lines(random_lines(rng))) == 0 for _ in range(100))
    homog = True
    for lam in (2, -3, 5):
        f = random_quartic(rng)
        homog &= inv(f * lam) == lam ** 6 * inv(f)
    sl3 = True
    for _ in range(20):
        f, g = random_quartic(rng), random_unimodular(rng)
        sl3 &= inv(f.substitute_linear(g)) == inv(f)
    fermat = apolarity.catalecticant_kernel(x1 ** 4 + x2 ** 4 + x3 ** 4) == [e1 * e2, e1 * e3, e2 * e3]
    return clebsch and homog and sl3 and fermat, f"clebsch {clebsch}, homogeneity {homog}, SL3 {sl3}, Fermat {fermat}"


def c07():
    rng = random.Random(7)
    # one-time numba compilation is paid here, outside the per-quartic timing;
    # the numpy backend below has no such warm-up
    scorza.scorza_fast(x1 ** 4 + x2 ** 4)
    worst_fast, same = 0.0, True
    for _ in range(20):
        f = random_quartic(rng, bound=9)
        for backend in (None, "numpy"):
            t = time.perf_counter()
            S = scorza.scorza_fast(f, backend=backend)
            worst_fast = max(worst_fast, time.perf_counter() - t)
        same &= S == scorza.scorza_naive(f)
    powers = all(scorza.scorza_fast(l ** 4).is_zero() for l in random_lines(rng, n=10))
    equi = True
    for _ in range(10):
        f, g = random_quartic(rng), random_unimodular(rng)
        equi &= scorza.scorza_fast(f.substitute_linear(g)) == scorza.scorza_fast(f).substitute_linear(g)
    ok = same and powers and equi and worst_fast < 1.0
    return ok, f"fast==naive {same}, l^4 -> 0 {powers}, equivariant {equi}, slowest fast {worst_fast:.3f}s"


def c08():
    rng = random.Random(8)
    dims = {len(apolarity.lueroth_space_from_pentagon(random_pentagon(rng))) for _ in range(20)}
    return dims == {5}, f"dimensions {sorted(dims)}"


def c09():
    s2 = repcheck.format_decomposition(repcheck.decompose_s4(repcheck.character_S2V()))
    V2 = repcheck.WeightMultiset.irreducible(2)
    sym2 = repcheck.sl2_plethysm(2, V2)
    sym4 = repcheck.sl2_plethysm(4, V2)
    ok = s2 == "1 + V2 + V3" and sym2 == {4: 1, 0: 1} and sym4 == {8: 1, 4: 1, 0: 1}
    return ok, f"S^2 = {s2}; Sym^2 = {repcheck.format_sl2(sym2)}; Sym^4 = {repcheck.format_sl2(sym4)}"


def c10():
    rng = random.Random(10)
    nets = [("example", geiser.example_net())] + [
        (f"seed-{k}", geiser.net_from_QC(*random_bateman_pair(rng))) for k in range(5)
    ]
    bad = []
    for name, net in nets:
        try:
            pts = geiser.seven_points_numeric(net)
            ok = (
                len(pts) == 7
                and geiser.max_residual(net, pts) < 1e-8
                and geiser.no_six_on_conic(pts)[0]
                and len(geiser.fiber(net)) == 2
            )
            bq = geiser.branch_quartic(net, held_out=10)
            ok = ok and bq.residual < 1e-6
        except geiser.GeiserError as exc:
            ok = False
            name = f"{name} ({exc})"
        if not ok:
            bad.append(name)
    return not bad, f"{len(nets)} instances, failing {bad}"


def c11():
    first = verify.verify_paper(seed=42, jobs=1).dumps()
    second = verify.verify_paper(seed=42, jobs=1).dumps()
    parallel = verify.verify_paper(seed=42, jobs=4).dumps()
    ok = first == second == parallel
    return ok, f"{len(first)} bytes, identical across runs and 1/4 workers: {ok}"


CRITERIA = [
    (1, "worked-example kernel pencil", c01, 1.0),
    (2, "base points over Q(sqrt(-2))", c02, 1.0),
    (3, "Q* in the Morley kernel (500 pairs)", c03, 30.0),
    (4, "rank drop and Pfaffian", c04, 30.0),
    (5, "tangent rank 7", c05, 1.0),
    (6, "catalecticant", c06, 30.0),
    (7, "Scorza covariant", c07, None),  # per-quartic fast limit is checked inside
    (8, "Lueroth builder dimension 5", c08, 10.0),
    (9, "representation tables", c09, 1.0),
    (10, "Geiser numeric suite", c10, 60.0),
    (11, "verify-paper determinism", c11, None),
]


def run_criterion(n):
    _, name, fn, limit = CRITERIA[n - 1]
    t = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t
    in_time = limit is None or elapsed < limit
    passed = bool(ok) and in_time
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{'PASS' if passed else 'FAIL'}  [{n:2d}] {name}: {elapsed:.2f}s{budget}; {detail}"
    RESULTS.append(line)
    print(line)
    return passed, line


@pytest.mark.parametrize("n", [c[0] for c in CRITERIA])
def test_criterion(n):
    passed, line = run_criterion(n)
    assert passed, line


if __name__ == "__main__":
    for c in CRITERIA:
        run_criterion(c[0])
