"""Numeric Geiser involution of a Bateman configuration.

This is the only floating-point module.  The net of cubics and the
ramification sextic are exact polynomials; points, the branch quartic and
fibre counts are complex128 approximations.  Nothing computed here is fed
back into the exact modules.

Two plane cubics are intersected by an exact resultant: after a seeded
unimodular change of coordinates the Sylvester determinant in ``y2`` is
evaluated at ten integer values of ``y1`` and interpolated exactly, its
degree-9 roots are found from the companion matrix (``numpy.roots``), the
matching ``y2`` is read off the first cubic and both are polished by
Newton's method on the affine system.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import QQ, X, Poly, gens, monomials, require_form
from .bateman import syzygy_from_QC
from .instances import random_unimodular
from .linalg import ExactMatrix, det, rank

DEFAULT_TOL = 1e-8


class GeiserError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# numeric evaluation of exact forms
# ---------------------------------------------------------------------------

class NumericForm:
    """complex128 evaluator for a form in the x-variables."""

    def __init__(self, p: Poly):
        if p.field != QQ:
            raise ValueError("numeric forms need rational coefficients")
        items = sorted(p.terms.items())
        self.exps = np.array([exp[:3] for exp, _ in items], dtype=np.int64).reshape(-1, 3)
        self.coeffs = np.array([float(c) for _, c in items], dtype=np.complex128)
        self.norm = float(np.linalg.norm(self.coeffs)) or 1.0
        self.grad = [None] * 3
        self._poly = p

    def __call__(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=np.complex128))
        if not len(self.coeffs):
            return np.zeros(len(pts), dtype=np.complex128)
        powers = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
        return powers @ self.coeffs

    def gradient(self, i: int) -> NumericForm:
        if self.grad[i] is None:
            self.grad[i] = NumericForm(self._poly.diff(i))
        return self.grad[i]

    def normalized(self, pts) -> np.ndarray:
        """|f(p)| / (|coeffs| |p|^deg) for each point."""
        pts = np.atleast_2d(np.asarray(pts, dtype=np.complex128))
        deg = int(self.exps[0].sum()) if len(self.exps) else 0
        scale = self.norm * np.linalg.norm(pts, axis=1) ** deg
        return np.abs(self(pts)) / scale


def unit(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.complex128)
    return p / np.linalg.norm(p)


# ---------------------------------------------------------------------------
# exact univariate helpers
# ---------------------------------------------------------------------------

def interpolate(xs, ys) -> list:
    """Exact Newton interpolation; coefficients, highest degree first."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        shifted = poly + [Fraction(0)]
        for k in range(len(poly)):
            shifted[k + 1] -= xs[i] * poly[k]
        shifted[-1] += coef[i]
        poly = shifted
    while len(poly) > 1 and poly[0] == 0:
        poly.pop(0)
    return poly


def _univariate_in_y2(p: Poly, y1):
    """Coefficients (y2^3 .. y2^0) of p(y1, y2, 1)."""
    deg = max(sum(exp[:3]) for exp in p.terms)
    out = [Fraction(0)] * (deg + 1)
    for exp, c in p.terms.items():
        out[deg - exp[1]] += c * Fraction(y1) ** exp[0]
    return out


def sylvester(f, g) -> ExactMatrix:
    m, n = len(f) - 1, len(g) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (m - 1 - i))
    return ExactMatrix(rows)


def _newton(F, G, y, steps=30):
    """Polish an affine root (y1, y2) of F(y1, y2, 1) = G(y1, y2, 1) = 0."""
    y = np.array(y, dtype=np.complex128)
    for _ in range(steps):
        p = np.array([y[0], y[1], 1.0])
        r = np.array([F(p)[0], G(p)[0]])
        J = np.array(
            [[F.gradient(0)(p)[0], F.gradient(1)(p)[0]], [G.gradient(0)(p)[0], G.gradient(1)(p)[0]]]
        )
        try:
            step = np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            break
        y = y - step
        if np.linalg.norm(step) <= 1e-15 * max(1.0, np.linalg.norm(y)):
            break
    return y


def _polish(F, G, p, steps=8):
    """Homogeneous Newton on F = G = 0 with the chart <p0, p> = 1."""
    p0 = p.copy()
    for _ in range(steps):
        r = np.array([F(p)[0], G(p)[0], np.vdot(p0, p) - 1])
        J = np.array(
            [[F.gradient(i)(p)[0] for i in range(3)], [G.gradient(i)(p)[0] for i in range(3)], p0.conj()]
        )
        try:
            step = np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            break
        p = p - step
        if np.linalg.norm(step) <= 1e-16:
            break
    return unit(p)


def intersect_cubics(f: Poly, g: Poly, seed: int = 0, tries: int = 20) -> np.ndarray:
    """The 9 intersection points of two plane cubics, unit-normalized rows."""
    require_form(f, X, 3, "cubic")
    require_form(g, X, 3, "cubic")
    rng = random.Random(seed)
    for _ in range(tries):
        P = random_unimodular(rng, steps=8, bound=3)
        fp, gp = f.substitute_linear(P), g.substitute_linear(P)
        if fp.coefficient((0, 3, 0, 0, 0, 0)) == 0 or gp.coefficient((0, 3, 0, 0, 0, 0)) == 0:
            continue
        xs = list(range(-5, 6))
        ys = [det(sylvester(_univariate_in_y2(fp, t), _univariate_in_y2(gp, t))) for t in xs]
        res = interpolate(xs, ys)
        if len(res) != 10 or not _squarefree(res):
            continue
        lead = max(abs(c) for c in res)
        F, G = NumericForm(fp), NumericForm(gp)
        pts = []
        for t in np.roots([float(c / lead) for c in res]):
            cands = np.roots(_cubic_numeric(fp, t))
            y2 = min(cands, key=lambda c: abs(G(np.array([t, c, 1.0]))[0]))
            y = _newton(F, G, (t, y2))
            pts.append(np.array([y[0], y[1], 1.0]))
        Pm = np.array(P, dtype=float)
        F0, G0 = NumericForm(f), NumericForm(g)
        out = np.array([_polish(F0, G0, unit(Pm @ p)) for p in pts])
        if _min_separation(out) < 1e-6:
            # two roots polished onto the same point; try other coordinates
            continue
        return out
    raise GeiserError("no generic coordinate change found for the cubic pair")


def _poly_rem(a, b):
    a = list(a)
    while len(a) >= len(b):
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _squarefree(p) -> bool:
    """Exact test on coefficients listed from the leading term down."""
    p = [Fraction(c) for c in p]
    n = len(p) - 1
    a, b = p, [c * (n - i) for i, c in enumerate(p[:-1])]
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) == 1


def _min_separation(pts) -> float:
    best = np.inf
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = np.linalg.norm(pts[j] - pts[i] * np.vdot(pts[i], pts[j]))
            best = min(best, d)
    return best


def _cubic_numeric(p: Poly, y1: complex) -> np.ndarray:
    out = np.zeros(4, dtype=np.complex128)
    for exp, c in p.terms.items():
        out[3 - exp[1]] += float(c) * y1 ** exp[0]
    return out


# ---------------------------------------------------------------------------
# the net of cubics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicNet:
    cubics: tuple
    Q: Poly
    C: Poly
    degenerate: bool = False

    def syzygy_holds(self) -> bool:
        l = self.Q.gradient(X)
        N = self.cubics
        return (l[0] * N[0] - l[1] * N[1] + l[2] * N[2]).is_zero()

    def numeric(self) -> list:
        return [NumericForm(N) for N in self.cubics]

    def image(self, pts) -> np.ndarray:
        return np.stack([N(pts) for N in self.numeric()], axis=1)


def net_from_QC(Q: Poly, C: Poly) -> CubicNet:
    """Signed 2x2 minors of the syzygy matrix; l1 N1 - l2 N2 + l3 N3 = 0."""
    M = syzygy_from_QC(Q, C)
    cubics = M.minors()
    coeff_rows = [[N.coefficient(exp) for exp in monomials(3, X)] for N in cubics]
    degenerate = rank(ExactMatrix(coeff_rows)) < 3
    return CubicNet(tuple(cubics), Q, C, degenerate)


def _residuals(net: CubicNet, pts) -> np.ndarray:
    return np.max(np.stack([N.normalized(pts) for N in net.numeric()]), axis=0)


def seven_points_numeric(net: CubicNet, tol: float = DEFAULT_TOL, seed: int = 0) -> np.ndarray:
    """Base points of the net: solutions of N1 = N2 = 0 on which N3 also vanishes.

    If N1 and N2 meet non-transversally, seeded combinations N1 + a N3 and
    N2 + b N3 are tried instead; their common zeros contain the same base points.
    """
    if net.degenerate:
        raise GeiserError("degenerate net")
    N1, N2, N3 = net.cubics
    rng = random.Random(seed)
    pairs = [(N1, N2)] + [
        (N1 + N3 * rng.randint(-5, 5), N2 + N3 * rng.randint(-5, 5)) for _ in range(5)
    ]
    for f, g in pairs:
        try:
            sols = intersect_cubics(f, g, seed)
            break
        except GeiserError:
            continue
    else:
        raise GeiserError("no transversal pair of cubics in the net")
    res = _residuals(net, sols)
    keep = sols[res < tol]
    if len(keep) != 7:
        raise GeiserError(f"{len(keep)} base points survived the tolerance {tol:g}, expected 7")
    return keep


def max_residual(net: CubicNet, pts) -> float:
    return float(np.max(_residuals(net, pts)))


def conic_row(p) -> np.ndarray:
    x, y, z = p
    return np.array([x * x, x * y, x * z, y * y, y * z, z * z])


def no_six_on_conic(points, rtol: float = 1e-8):
    """(ok, smallest relative singular value) over all 6-subsets."""
    worst = np.inf
    for subset in itertools.combinations(range(len(points)), 6):
        A = np.array([conic_row(unit(points[i])) for i in subset])
        s = np.linalg.svd(A, compute_uv=False)
        worst = min(worst, s[-1] / s[0])
    return bool(worst > rtol), float(worst)


def ramification_sextic(net: CubicNet) -> Poly:
    """Jacobian determinant of (N1, N2, N3)."""
    J = [N.gradient(X) for N in net.cubics]
    return (
        J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
        - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
        + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0])
    )


def compose_net(net: CubicNet, g) -> CubicNet:
    return CubicNet(
        tuple(N.substitute_linear(g) for N in net.cubics),
        net.Q.substitute_linear(g),
        net.C.substitute_linear(g),
        net.degenerate,
    )


# ---------------------------------------------------------------------------
# branch quartic
# ---------------------------------------------------------------------------

QUARTIC_EXPS = np.array([exp[:3] for exp in monomials(4, X)], dtype=np.int64)


def quartic_row(y) -> np.ndarray:
    y = unit(y)
    return np.prod(y[None, :] ** QUARTIC_EXPS, axis=1)


def sample_sextic(sextic: Poly, n: int, rng: random.Random) -> np.ndarray:
    """Points of the sextic on random rational lines a + t b."""
    pts = []
    while len(pts) < n:
        a = [rng.randint(-9, 9) for _ in range(3)]
        b = [rng.randint(-9, 9) for _ in range(3)]
        if all(c == 0 for c in b):
            continue
        ts = list(range(7))
        vals = [sextic.eval(x=[ai + t * bi for ai, bi in zip(a, b)], e=(0, 0, 0)) for t in ts]
        coeffs = interpolate(ts, vals)
        if len(coeffs) != 7:
            continue
        lead = max(abs(c) for c in coeffs)
        for t in np.roots([float(c / lead) for c in coeffs]):
            pts.append(unit(np.array(a, dtype=complex) + t * np.array(b, dtype=complex)))
    return np.array(pts[:n])


@dataclass
class BranchQuartic:
    coefficients: np.ndarray  # over QUARTIC monomials, unit norm, phase-fixed
    residual: float  # worst normalized evaluation on held-out points
    singular_values: np.ndarray = field(repr=False)
    numeric_rank_15: int = 0

    def to_json(self) -> dict:
        names = ["x1^%d*x2^%d*x3^%d" % tuple(e) for e in QUARTIC_EXPS]
        return {
            "monomials": names,
            "coefficients_real": [float(c.real) for c in self.coefficients],
            "coefficients_imag": [float(c.imag) for c in self.coefficients],
            "held_out_residual": self.residual,
            "numeric_rank_15": self.numeric_rank_15,
        }


def _distinct_images(net: CubicNet, sextic: Poly, n: int, rng: random.Random, sep: float = 1e-10):
    """Images of sextic samples, keeping only points hit exactly once.

    A line through three base points is contracted by the net and splits off
    the Jacobian sextic.  Every random line meets it, so its image point shows
    up once per sampled line; such repeated images are dropped altogether.
    """
    images, counts = [], []
    for lines in range(1, 60):
        for y in net.image(sample_sextic(sextic, 6, rng)):
            y = unit(y)
            hit = next((k for k, z in enumerate(images) if abs(abs(np.vdot(y, z)) - 1) <= sep), None)
            if hit is None:
                images.append(y)
                counts.append(1)
            else:
                counts[hit] += 1
        single = [y for y, c in zip(images, counts) if c == 1]
        if lines >= 3 and len(single) >= n:
            return np.array(single[:n])
    raise GeiserError(f"only {len(single)} distinct branch points found")


def branch_quartic(net: CubicNet, samples: int = 30, tol: float = 1e-6, seed: int = 0, held_out: int = 10):
    if samples < 20:
        raise ValueError("need at least 20 samples")
    rng = random.Random(seed)
    sextic = ramification_sextic(net)
    images = _distinct_images(net, sextic, samples + held_out, rng)
    rows = np.array([quartic_row(y) for y in images])
    fit, test = rows[:samples], rows[samples:]
    _, s, vh = np.linalg.svd(fit)
    v = vh[-1].conj()
    v = v / v[np.argmax(np.abs(v))]
    v = v / np.linalg.norm(v)
    residual = float(np.max(np.abs(test @ v) / np.linalg.norm(test, axis=1)))
    s15 = np.linalg.svd(rows[:15], compute_uv=False)
    numeric_rank = int(np.sum(s15 > 1e-9 * s15[0]))
    out = BranchQuartic(v, residual, s, numeric_rank)
    if residual > tol:
        raise GeiserError(f"branch quartic fit residual {residual:.3e} exceeds {tol:g}")
    return out


def fiber(net: CubicNet, target=None, seed: int = 0, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Preimages of ``target`` under x -> (N1 : N2 : N3), base points removed."""
    rng = random.Random(seed)
    if target is None:
        # a drawn target can be special (on the branch curve, or making the
        # two cubics tangent); draw again in that case
        for _ in range(10):
            target = [rng.randint(1, 9) * rng.choice([-1, 1]) for _ in range(3)]
            try:
                return fiber(net, target, seed, tol)
            except GeiserError:
                continue
        raise GeiserError("no regular target found")
    y = [Fraction(c) for c in target]
    if y[0] == 0:
        raise ValueError("target needs a nonzero first coordinate")
    N1, N2, N3 = net.cubics
    f = N1 * y[1] - N2 * y[0]
    g = N1 * y[2] - N3 * y[0]
    sols = intersect_cubics(f, g, seed)
    base = _residuals(net, sols) < tol
    return sols[~base]


def example_net() -> CubicNet:
    from .bateman import example_conic, example_instance

    return net_from_QC(example_conic(), example_instance()[1])
