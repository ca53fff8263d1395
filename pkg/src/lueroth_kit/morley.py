"""The Morley skew matrix on dual conics and its kernel pencils.

Rows and columns are indexed by the dual-conic basis
``1/2 e1^2, e1e2, e1e3, 1/2 e2^2, e2e3, 1/2 e3^2``.  Entries are the signed
sums of tuple coordinates in :data:`FORMULA`, written with 1-based labels
``"ijk"``.  How a label maps to a coordinate of a :class:`BatemanTuple` is a
:class:`Convention`; :func:`calibrate` picks it by demanding that
``Q*`` lie in the kernel of ``M(b(Q*, C))`` and that the worked example
have the pencil spanned by
``e1^2 + e2^2 + e3^2`` and ``e1^2 - e1*e2 + e2^2 + e1*e3 + e2*e3``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import E, X, Poly, from_coefficients, gens, gram, monomials, require_form
from .bateman import BatemanTuple, b_pairing, example_instance
from .linalg import ExactMatrix, canonical_basis, kernel_basis, pfaffian, rank

CONIC_MONOMIALS = monomials(2, E)  # e1^2, e1e2, e1e3, e2^2, e2e3, e3^2
HALF_BASIS = ("1/2*e1^2", "e1*e2", "e1*e3", "1/2*e2^2", "e2*e3", "1/2*e3^2")
_SQUARE_SLOTS = (0, 3, 5)

# upper triangle, 1-based (row, col) -> [(sign, label)]
FORMULA = {
    (1, 2): [(1, "311")],
    (1, 3): [(-1, "211")],
    (1, 4): [(1, "321")],
    (1, 5): [(-1, "221"), (1, "331")],
    (1, 6): [(-1, "231")],
    (2, 3): [(1, "111"), (-1, "221"), (-1, "331")],
    (2, 4): [(1, "322")],
    (2, 5): [(1, "121"), (-1, "222"), (1, "332")],
    (2, 6): [(1, "131"), (-1, "232")],
    (3, 4): [(-1, "121"), (1, "332")],
    (3, 5): [(-1, "131"), (-1, "232"), (1, "333")],
    (3, 6): [(-1, "233")],
    (4, 5): [(1, "122")],
    (4, 6): [(1, "132")],
    (5, 6): [(1, "133")],
}

EXAMPLE_PENCIL_TEXT = ("e1^2 + e2^2 + e3^2", "e1^2 - e1*e2 + e2^2 + e1*e3 + e2*e3")


class CalibrationError(RuntimeError):
    pass


class DegenerateTupleError(ValueError):
    def __init__(self, rank: int):
        super().__init__(f"Morley matrix has rank {rank}, expected 4")
        self.rank = rank


@dataclass(frozen=True, order=True)
class Convention:
    """How formula labels and conic vectors are read.

    e_position: which label position (0, 1, 2) carries the e-index.
    pairing: "derivative" reads d^3T/de dx dx, "coefficient" the monomial
        coefficient (half the derivative when the two x-indices agree).
    conic_scaling: "half" uses the 1/2-basis, "monomial" plain coefficients.
    """

    e_position: int = 0
    pairing: str = "derivative"
    conic_scaling: str = "half"

    def to_json(self) -> dict:
        return asdict(self)


CANDIDATES = tuple(
    Convention(p, pairing, scaling)
    for p, pairing, scaling in itertools.product(
        range(3), ("coefficient", "derivative"), ("half", "monomial")
    )
)


def _read(T: BatemanTuple, label: str, conv: Convention):
    idx = [int(ch) - 1 for ch in label]
    i = idx[conv.e_position]
    j, k = [idx[p] for p in range(3) if p != conv.e_position]
    v = T.delta(i, j, k)
    if conv.pairing == "coefficient" and j == k:
        v = v / 2
    return v


def morley_matrix(T: BatemanTuple, conv: Convention | None = None) -> ExactMatrix:
    conv = conv or calibrate()
    zero = T.field(0)
    M = [[zero] * 6 for _ in range(6)]
    for (r, c), parts in FORMULA.items():
        v = sum((s * _read(T, label, conv) for s, label in parts), zero)
        M[r - 1][c - 1] = v
        M[c - 1][r - 1] = -v
    out = ExactMatrix(M)
    assert out.is_skew()
    return out


def conic_to_vec(q: Poly, conv: Convention | None = None) -> list:
    conv = conv or calibrate()
    if not q.is_zero():
        require_form(q, E, 2, "dual conic")
    v = [q.coefficient(exp) for exp in CONIC_MONOMIALS]
    if conv.conic_scaling == "half":
        v = [2 * c if k in _SQUARE_SLOTS else c for k, c in enumerate(v)]
    return v


def vec_to_conic(v, conv: Convention | None = None) -> Poly:
    conv = conv or calibrate()
    if conv.conic_scaling == "half":
        v = [c / 2 if k in _SQUARE_SLOTS else c for k, c in enumerate(v)]
    return from_coefficients(v, CONIC_MONOMIALS)


@dataclass(frozen=True)
class ConicPencil:
    """A 2-dimensional space of dual conics, kept in canonical reduced form."""

    generators: tuple

    @classmethod
    def from_conics(cls, conics) -> ConicPencil:
        vecs = [[q.coefficient(exp) for exp in CONIC_MONOMIALS] for q in conics]
        basis = canonical_basis(vecs)
        if len(basis) != 2:
            raise ValueError(f"conics span a space of dimension {len(basis)}, not 2")
        return cls(tuple(from_coefficients(v, CONIC_MONOMIALS) for v in basis))

    def contains(self, q: Poly) -> bool:
        vecs = [[g.coefficient(exp) for exp in CONIC_MONOMIALS] for g in self.generators]
        vecs.append([q.coefficient(exp) for exp in CONIC_MONOMIALS])
        return len(canonical_basis(vecs)) == 2

    def base_points_vanish(self, points) -> bool:
        return all(g.eval(x=(0, 0, 0), e=p) == 0 for g in self.generators for p in points)


def example_pencil() -> ConicPencil:
    e1, e2, e3 = gens()[3:]
    return ConicPencil.from_conics(
        [e1 ** 2 + e2 ** 2 + e3 ** 2, e1 ** 2 - e1 * e2 + e2 ** 2 + e1 * e3 + e2 * e3]
    )


def example_base_points():
    """(1 : +-t : 1) and (+-t : 1 : 1) with t^2 = -2."""
    from .algebra import QuadraticField

    K = QuadraticField(-2)
    t = K.gen
    one = K(1)
    return [(one, t, one), (one, -t, one), (t, one, one), (-t, one, one)]


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------

def _kernel_conics(M: ExactMatrix, conv: Convention) -> list:
    return [vec_to_conic(v, conv) for v in kernel_basis(M)]


def _candidate_passes(conv: Convention, pairs) -> bool:
    for Qstar, C in pairs:
        M = morley_matrix(b_pairing(Qstar, C), conv)
        if any(c != 0 for c in M.apply(conic_to_vec(Qstar, conv))):
            return False
    Qstar, C = example_instance()
    conics = _kernel_conics(morley_matrix(b_pairing(Qstar, C), conv), conv)
    if len(conics) != 2:
        return False
    return ConicPencil.from_conics(conics) == example_pencil()


def calibration_pairs(n: int = 50, seed: int = 20100101):
    from .instances import random_bateman_pair
    from .algebra import adjugate_conic

    rng = random.Random(seed)
    out = []
    for _ in range(n):
        Q, C = random_bateman_pair(rng)
        out.append((adjugate_conic(Q), C))
    return out


def calibration_table(n: int = 50, seed: int = 20100101) -> list:
    pairs = calibration_pairs(n, seed)
    return [(conv, _candidate_passes(conv, pairs)) for conv in CANDIDATES]


@lru_cache(maxsize=None)
def calibrate(n: int = 50, seed: int = 20100101) -> Convention:
    """Select the unique reading convention of :data:`FORMULA` (see module doc)."""
    passing = sorted(conv for conv, ok in calibration_table(n, seed) if ok)
    if not passing:
        raise CalibrationError("no convention satisfies the kernel checks")
    return passing[0]


def calibration_candidates_passing(n: int = 50, seed: int = 20100101) -> list:
    return sorted(conv for conv, ok in calibration_table(n, seed) if ok)


def convention_json(conv: Convention | None = None) -> str:
    return json.dumps((conv or calibrate()).to_json(), sort_keys=True)


# ---------------------------------------------------------------------------

def kernel_pencil(T: BatemanTuple, conv: Convention | None = None) -> ConicPencil:
    conv = conv or calibrate()
    M = morley_matrix(T, conv)
    r = rank(M)
    if r != 4:
        raise DegenerateTupleError(r)
    return ConicPencil.from_conics(_kernel_conics(M, conv))


def pfaffian_value(T: BatemanTuple, conv: Convention | None = None):
    return pfaffian(morley_matrix(T, conv))


def prop_check(Qstar: Poly, C: Poly, conv: Convention | None = None) -> bool:
    """Whether M(b(Q*, C)) annihilates Q*."""
    conv = conv or calibrate()
    M = morley_matrix(b_pairing(Qstar, C), conv)
    return all(c == 0 for c in M.apply(conic_to_vec(Qstar, conv)))


# ---------------------------------------------------------------------------
# tangent space of the fibre of b through (Q*, C)
# ---------------------------------------------------------------------------

WEDGE_PAIRS = ((0, 1), (0, 2), (1, 2))
TANGENT_ROWS = tuple((m, ab) for m in range(3) for ab in WEDGE_PAIRS)


def _wedge(k: int, j: int):
    """e_k ^ e_j as (sign, pair) or None."""
    if k == j:
        return None
    return (1, (k, j)) if k < j else (-1, (j, k))


def twisted_differential(T: Poly, Qstar: Poly) -> dict:
    """d_{Q*} T = sum_{i,j} dt_j/dx_i * (dQ*/de_i ^ e_j) for T = sum_j t_j e_j.

    T has bidegree (2, 1); the result maps (m, (a, b)) to the coefficient of
    x_m (e_a ^ e_b).  For Q* = e1^2 + e2^2 + e3^2 this is twice the de Rham d.
    """
    out = {row: 0 for row in TANGENT_ROWS}
    for i in range(3):
        dq = Qstar.diff(3 + i)
        for j in range(3):
            lin = T.diff(3 + j).diff(i)
            if lin.is_zero():
                continue
            for k in range(3):
                g = dq.coefficient(tuple(int(n == 3 + k) for n in range(6)))
                w = _wedge(k, j)
                if g == 0 or w is None:
                    continue
                s, ab = w
                for m in range(3):
                    c = lin.coefficient(tuple(int(n == m) for n in range(6)))
                    if c != 0:
                        out[(m, ab)] += s * g * c
    return out


def tangent_system(Qstar: Poly, C: Poly) -> ExactMatrix:
    """9x9 matrix of (R*, l) -> d_{Q*}(d_{R*} C + l * tr).

    Columns: the six conic monomials for R*, then l = x1, x2, x3.
    Rows: TANGENT_ROWS.
    """
    require_form(Qstar, E, 2, "Q*")
    if not C.is_zero():
        require_form(C, X, 3, "C")
    x = gens()[:3]
    e = gens()[3:]
    tr = sum((xi * ei for xi, ei in zip(x, e)), Poly())
    images = []
    for exp in CONIC_MONOMIALS:
        R = Poly({exp: 1})
        images.append(sum((C.diff(i) * R.diff(3 + i) for i in range(3)), Poly()))
    for xi in x:
        images.append(xi * tr)
    cols = []
    for T in images:
        d = twisted_differential(T, Qstar)
        cols.append([d[row] for row in TANGENT_ROWS])
    return ExactMatrix.from_columns(cols)


def closedness_relation(Qstar: Poly) -> list:
    """Row functional of the next differential S^1 (x) L^2 -> L^3.

    Every image of :func:`twisted_differential` is annihilated by it.
    """
    rel = []
    for m, (a, b) in TANGENT_ROWS:
        c = 3 - a - b
        g = Qstar.diff(3 + m).coefficient(tuple(int(n == 3 + c) for n in range(6)))
        # e_c ^ e_a ^ e_b = sign(c, a, b) e1^e2^e3
        sign = 1 if (c, a, b) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        rel.append(sign * g)
    return rel


def tangent_rank(Qstar: Poly, C: Poly) -> int:
    return rank(tangent_system(Qstar, C))


def example_morley_matrix() -> ExactMatrix:
    Qstar, C = example_instance()
    return morley_matrix(b_pairing(Qstar, C))

