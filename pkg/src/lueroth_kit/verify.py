"""End-to-end regression harness behind ``lueroth-kit verify-paper``.

Each statement has a stable id, a module tag, a short anchor naming the claim
it checks, and a kind: ``blocking`` statements decide the exit code,
``informational`` ones are reported only.  Reports are deterministic in the
seed; wall-clock timings are left out unless requested, and floating-point
diagnostics are rounded so BLAS threading cannot change the bytes.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import apolarity, bateman, geiser, morley, repcheck, scorza
from .algebra import adjugate_conic, gens
from .instances import (
    random_bateman_pair,
    random_lines,
    random_pentagon,
    random_quartic,
    random_unimodular,
)
from .linalg import rank, same_span

BLOCKING = "blocking"
INFORMATIONAL = "informational"


@dataclass(frozen=True)
class Statement:
    id: str
    module: str
    anchor: str
    kind: str
    run: object = field(repr=False, compare=False)


@dataclass
class Outcome:
    id: str
    module: str
    anchor: str
    kind: str
    status: str  # pass / fail
    details: dict
    elapsed: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "id": self.id,
            "module": self.module,
            "anchor": self.anchor,
            "kind": self.kind,
            "status": self.status,
            "details": self.details,
        }
        if timings:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


@dataclass
class VerificationReport:
    seed: int
    outcomes: list

    @property
    def failures(self) -> list:
        return [o for o in self.outcomes if o.kind == BLOCKING and o.status != "pass"]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self):
        return self.failures[0].id if self.failures else None

    def to_json(self, timings: bool = False) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "first_failure": self.first_failure,
            "statements": [o.to_json(timings) for o in self.outcomes],
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"

    def table(self, timings: bool = False) -> str:
        lines = []
        for o in self.outcomes:
            kind = "" if o.kind == BLOCKING else " (info)"
            t = f"  {o.elapsed:7.2f}s" if timings else ""
            lines.append(f"{o.status.upper():4}  {o.id:28} {o.anchor}{kind}{t}")
        lines.append("all blocking checks passed" if self.ok else f"FAILED: {self.first_failure}")
        return "\n".join(lines) + "\n"


def _sci(x: float) -> str:
    return f"{x:.1e}"


def _rng(seed: int, sid: str) -> random.Random:
    return random.Random(f"{seed}:{sid}")


# ---------------------------------------------------------------------------
# statements

def _calibration(seed):
    passing = morley.calibration_candidates_passing()
    return len(passing) == 1, {
        "passing": [c.to_json() for c in passing],
        "candidates": len(morley.CANDIDATES),
    }


def _qstar_in_kernel(seed, n=500):
    rng = _rng(seed, "bateman-pairs")
    bad = 0
    for _ in range(n):
        Q, C = random_bateman_pair(rng)
        if not morley.prop_check(adjugate_conic(Q), C):
            bad += 1
    return bad == 0, {"instances": n, "violations": bad}


def _rank_drop(seed, n=500, m=100):
    rng = _rng(seed, "bateman-pairs")
    ranks, pf_nonzero = {}, 0
    for _ in range(n):
        Q, C = random_bateman_pair(rng)
        T = bateman.b_pairing(adjugate_conic(Q), C)
        r = rank(morley.morley_matrix(T))
        ranks[r] = ranks.get(r, 0) + 1
        if morley.pfaffian_value(T) != 0:
            pf_nonzero += 1
    rng = _rng(seed, "random-tuples")
    generic_zero = 0
    for _ in range(m):
        T = bateman.BatemanTuple(tuple(rng.randint(-9, 9) for _ in range(18)))
        if morley.pfaffian_value(T) == 0:
            generic_zero += 1
    ok = ranks == {4: n} and pf_nonzero == 0 and generic_zero == 0
    return ok, {
        "bateman_ranks": {str(k): v for k, v in sorted(ranks.items())},
        "bateman_nonzero_pfaffians": pf_nonzero,
        "random_tuples": m,
        "random_zero_pfaffians": generic_zero,
    }


def _example_pencil(seed):
    Qstar, C = bateman.example_instance()
    pencil = morley.kernel_pencil(bateman.b_pairing(Qstar, C))
    return pencil == morley.example_pencil(), {"kernel": [str(g) for g in pencil.generators]}


def _base_points(seed):
    pencil = morley.example_pencil()
    return pencil.base_points_vanish(morley.example_base_points()), {"field": "Q(sqrt(-2))"}


def _tangent_rank(seed):
    Qstar, C = bateman.example_instance()
    A = morley.tangent_system(Qstar, C)
    rel = morley.closedness_relation(Qstar)
    holds = all(sum(r * A[i, j] for i, r in enumerate(rel)) == 0 for j in range(A.ncols))
    r = rank(A)
    return r == 7 and holds, {"rank": r, "relation_holds": holds}


def _conic_vec(q):
    return [q.coefficient(exp) for exp in apolarity.CONIC_MONOMIALS]


def _catalecticant(seed):
    rng = _rng(seed, "catalecticant")
    clebsch_nonzero = 0
    for _ in range(100):
        f = apolarity.clebsch_from_lines(random_lines(rng))
        if apolarity.catalecticant_invariant(f) != 0:
            clebsch_nonzero += 1
    homog = True
    for lam in (2, -3):
        f = random_quartic(rng)
        homog &= apolarity.catalecticant_invariant(f * lam) == lam ** 6 * apolarity.catalecticant_invariant(f)
    inv = True
    for _ in range(20):
        f = random_quartic(rng)
        g = random_unimodular(rng)
        inv &= apolarity.catalecticant_invariant(f.substitute_linear(g)) == apolarity.catalecticant_invariant(f)
    x1, x2, x3, e1, e2, e3 = gens()
    kernel = apolarity.catalecticant_kernel(x1 ** 4 + x2 ** 4 + x3 ** 4)
    fermat = same_span([_conic_vec(q) for q in kernel], [_conic_vec(q) for q in (e1 * e2, e1 * e3, e2 * e3)])
    return clebsch_nonzero == 0 and homog and inv and fermat, {
        "clebsch_nonzero": clebsch_nonzero,
        "homogeneity": homog,
        "sl3_invariance": inv,
        "fermat_kernel": fermat,
    }


def _lueroth_builder(seed):
    rng = _rng(seed, "pentagons")
    dims = [len(apolarity.lueroth_space_from_pentagon(random_pentagon(rng))) for _ in range(20)]
    return set(dims) == {5}, {"dimensions": sorted(set(dims))}


def _scorza_oracle(seed):
    rng = _rng(seed, "scorza")
    mismatches = 0
    for _ in range(20):
        f = random_quartic(rng, bound=3)
        if scorza.scorza_fast(f) != scorza.scorza_naive(f):
            mismatches += 1
    powers_zero = all(
        scorza.scorza_fast(l ** 4).is_zero() for l in random_lines(rng, n=5)
    )
    equivariant = True
    for _ in range(10):
        f = random_quartic(rng, bound=3)
        g = random_unimodular(rng)
        equivariant &= scorza.scorza_fast(f.substitute_linear(g)) == scorza.scorza_fast(f).substitute_linear(g)
    ok = mismatches == 0 and powers_zero and equivariant
    return ok, {"mismatches": mismatches, "fourth_powers_zero": powers_zero, "equivariant": equivariant}


def _scorza_pentagon(seed):
    rng = _rng(seed, "scorza-pentagon")
    hits = 0
    for _ in range(3):
        p = random_pentagon(rng, bound=3)
        S = scorza.scorza_fast(apolarity.clebsch_from_lines(p.lines))
        if not S.is_zero() and all(S.eval(x=v, e=(0, 0, 0)) == 0 for v in p.vertices):
            hits += 1
    return hits == 3, {"pentagons": 3, "circumscribed": hits}


def _repcheck(seed):
    rows = repcheck.tables()
    ok = all(r.agrees for r in rows if r.blocking)
    return ok, {"rows": [r.to_json() for r in rows if r.blocking]}


def _repcheck_f(seed):
    # recorded side by side, not adjudicated: passes once a genuine decomposition is computed
    rows = [r for r in repcheck.tables() if not r.blocking]
    return True, {"rows": [r.to_json() for r in rows]}


def _geiser_nets(seed):
    rng = _rng(seed, "geiser")
    nets = [("example", geiser.example_net())]
    for k in range(5):
        Q, C = random_bateman_pair(rng)
        nets.append((f"random-{k + 1}", geiser.net_from_QC(Q, C)))
    return nets


def _geiser(seed, tol=geiser.DEFAULT_TOL):
    out, ok = [], True
    for name, net in _geiser_nets(seed):
        rec = {"instance": name}
        try:
            pts = geiser.seven_points_numeric(net, tol)
            res = geiser.max_residual(net, pts)
            six_ok, _ = geiser.no_six_on_conic(pts)
            fib = len(geiser.fiber(net, seed=seed, tol=tol))
            bq = geiser.branch_quartic(net, seed=seed)
            good = bool(res < tol) and six_ok and fib == 2 and bq.residual < 1e-6 and bq.numeric_rank_15 == 14
            rec.update({
                "base_points": len(pts),
                "residual_below_tol": bool(res < tol),
                "no_six_on_conic": bool(six_ok),
                "fiber": fib,
                "branch_residual_below_1e-6": bool(bq.residual < 1e-6),
                "rank_15": bq.numeric_rank_15,
            })
        except geiser.GeiserError as exc:
            good = False
            rec["error"] = str(exc)
        rec["ok"] = good
        ok &= good
        out.append(rec)
    return ok, {"instances": out}


def _geiser_sextic(seed, tol=geiser.DEFAULT_TOL):
    worst = 0.0
    for _, net in _geiser_nets(seed):
        pts = geiser.seven_points_numeric(net, tol)
        S = geiser.NumericForm(geiser.ramification_sextic(net))
        worst = max(worst, float(max(S.normalized(pts))))
    return worst < 1e-6, {"worst_normalized_value": _sci(worst)}


STATEMENTS = (
    Statement("S01-calibration", "morley", "unique index convention passing the kernel conditions", BLOCKING, _calibration),
    Statement("S02-qstar-kernel", "morley", "Q* lies in the kernel of M(b(Q*,C))", BLOCKING, _qstar_in_kernel),
    Statement("S03-rank-drop", "morley", "M(b(Q*,C)) has rank 4 and zero Pfaffian", BLOCKING, _rank_drop),
    Statement("S04-example-pencil", "morley", "kernel pencil of the worked example", BLOCKING, _example_pencil),
    Statement("S05-base-points", "morley", "base points of the worked-example pencil", BLOCKING, _base_points),
    Statement("S06-tangent-rank", "morley", "tangent system of the fibre has rank 7", BLOCKING, _tangent_rank),
    Statement("S07-catalecticant", "apolarity", "catalecticant of sums of five fourth powers", BLOCKING, _catalecticant),
    Statement("S08-lueroth-builder", "apolarity", "quartics through the ten vertices of a pentagon", BLOCKING, _lueroth_builder),
    Statement("S09-scorza-oracle", "scorza", "Scorza contraction: oracle agreement and equivariance", BLOCKING, _scorza_oracle),
    Statement("S10-scorza-pentagon", "scorza", "Scorza image passes through the pentagon vertices", INFORMATIONAL, _scorza_pentagon),
    Statement("S11-rep-tables", "repcheck", "S4 and SL2 decompositions", BLOCKING, _repcheck),
    Statement("S12-rep-fibre", "repcheck", "F = Lambda^2(V3+1) as S4-representation", INFORMATIONAL, _repcheck_f),
    Statement("S13-geiser-suite", "geiser", "cubic net: seven points, degree 2, branch quartic", BLOCKING, _geiser),
    Statement("S14-geiser-sextic", "geiser", "base points lie on the Jacobian sextic", INFORMATIONAL, _geiser_sextic),
)


def statement_ids() -> list:
    return [s.id for s in STATEMENTS]


def select(only=None) -> list:
    """Statements whose id or module matches one of the ``only`` filters."""
    if not only:
        return list(STATEMENTS)
    chosen = [s for s in STATEMENTS if any(s.module == f or s.id == f or s.id.startswith(f) for f in only)]
    if not chosen:
        raise ValueError(f"no statement matches {only}")
    return chosen


def run_statement(sid: str, seed: int) -> Outcome:
    st = next(s for s in STATEMENTS if s.id == sid)
    t0 = time.perf_counter()
    try:
        ok, details = st.run(seed)
        status = "pass" if ok else "fail"
    except Exception as exc:  # reported, not raised
        status, details = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    return Outcome(st.id, st.module, st.anchor, st.kind, status, details, time.perf_counter() - t0)


def verify_paper(seed: int = 0, only=None, jobs: int = 1) -> VerificationReport:
    ids = [s.id for s in select(only)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_statement, ids, [seed] * len(ids)))
    else:
        outcomes = [run_statement(i, seed) for i in ids]
    outcomes.sort(key=lambda o: o.id)
    return VerificationReport(seed, outcomes)
