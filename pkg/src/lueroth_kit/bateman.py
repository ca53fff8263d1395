"""Bateman seven-tuples: syzygy matrices, normal form and the pairing b(Q*, C).

A tensor in ``V (x) S^2 V*`` is handled as a polynomial of bidegree
(2 in x, 1 in e), ``T = sum_i q_i(x) e_i``.  Its 18 ambient coordinates are

    delta[i, jk] = d^3 T / de_i dx_j dx_k        (i = 1..3, j <= k)

so ``delta[i, jk]`` is the (j, k) second partial of ``q_i``.  The V(0,1)
summand is the image of ``s -> sum_i x_i s e_i``; its complement V(1,2) is
the kernel of the divergence ``sum_i dq_i/dx_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    E,
    QQ,
    X,
    Poly,
    adjugate3,
    det3,
    gens,
    gram,
    join_fields,
    monomials,
    require_form,
)
from .linalg import ExactMatrix, rank

PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
COORD_INDEX = tuple((i, j, k) for i in range(3) for j, k in PAIRS)


class NotNormalFormError(ValueError):
    pass


@dataclass(frozen=True)
class SyzygyMatrix:
    """2x3 matrix: linear forms on top, quadratic forms below."""

    linear: tuple
    quadratic: tuple

    def __post_init__(self):
        if len(self.linear) != 3 or len(self.quadratic) != 3:
            raise ValueError("a syzygy matrix has three columns")
        for l in self.linear:
            if not l.is_zero():
                require_form(l, X, 1, "first-row entry")
        for q in self.quadratic:
            if not q.is_zero():
                require_form(q, X, 2, "second-row entry")

    def first_row_matrix(self):
        """Coefficient matrix L with l_j = sum_i L[i][j] x_i."""
        cols = [[l.coefficient(exp) for exp in monomials(1, X)] for l in self.linear]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def is_normal_form(self) -> bool:
        return list(self.linear) == list(gens()[:3])

    def minors(self) -> tuple:
        l, q = self.linear, self.quadratic
        return (
            l[1] * q[2] - l[2] * q[1],
            l[0] * q[2] - l[2] * q[0],
            l[0] * q[1] - l[1] * q[0],
        )


@dataclass(frozen=True)
class BatemanTuple:
    """Ambient coordinates ``delta[i, jk]`` of a tensor in V (x) S^2 V*."""

    coords: tuple  # 18 scalars in COORD_INDEX order
    field: object = QQ
    provenance: tuple | None = None  # (Q*, C) when built by b_pairing
    projected: bool = False
    degenerate: bool = False

    def __post_init__(self):
        if len(self.coords) != 18:
            raise ValueError("a Bateman tuple has 18 coordinates")

    def delta(self, i: int, j: int, k: int):
        """0-based access, symmetric in (j, k)."""
        j, k = min(j, k), max(j, k)
        return self.coords[COORD_INDEX.index((i, j, k))]

    def __add__(self, other):
        return BatemanTuple(
            tuple(a + b for a, b in zip(self.coords, other.coords)),
            join_fields(self.field, other.field),
        )

    def scale(self, c) -> BatemanTuple:
        return BatemanTuple(tuple(c * a for a in self.coords), self.field, projected=self.projected)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_tensor(self) -> Poly:
        return tensor_from_coords(self.coords, self.field)

    def to_json(self) -> dict:
        out = {
            "field": self.field.to_json(),
            "projected": self.projected,
            "coords": {
                f"d_{i + 1}_{j + 1}{k + 1}": self.field.coeff_to_json(c)
                for (i, j, k), c in zip(COORD_INDEX, self.coords)
            },
        }
        if self.degenerate:
            out["degenerate"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> BatemanTuple:
        from .algebra import field_from_json

        field = field_from_json(data.get("field", {"kind": "Q"}))
        raw = data["coords"]
        coords = tuple(
            field.coeff_from_json(raw[f"d_{i + 1}_{j + 1}{k + 1}"]) for i, j, k in COORD_INDEX
        )
        return cls(coords, field, projected=bool(data.get("projected", False)))


def coords_from_tensor(T: Poly) -> tuple:
    if not T.is_zero() and T.bidegrees() != {(2, 1)}:
        raise ValueError(f"expected bidegree (2, 1) in (x, e), got {T}")
    out = []
    for i, j, k in COORD_INDEX:
        out.append(T.diff(3 + i).diff(j).diff(k).coefficient((0,) * 6))
    return tuple(out)


def tensor_from_coords(coords, field=QQ) -> Poly:
    terms = {}
    for (i, j, k), c in zip(COORD_INDEX, coords):
        exp = [0] * 6
        exp[3 + i] = 1
        exp[j] += 1
        exp[k] += 1
        terms[tuple(exp)] = c / 2 if j == k else c
    return Poly(terms, field)


def row_to_tensor(qs) -> Poly:
    e = gens()[3:]
    return sum((q * ei for q, ei in zip(qs, e)), Poly())


def tensor_to_row(T: Poly) -> tuple:
    return tuple(T.diff(3 + i) for i in range(3))


def divergence(qs) -> Poly:
    return sum((q.diff(i) for i, q in enumerate(qs)), Poly())


# ---------------------------------------------------------------------------

def syzygy_from_QC(Q: Poly, C: Poly) -> SyzygyMatrix:
    require_form(Q, X, 2, "Q")
    require_form(C, X, 3, "C")
    return SyzygyMatrix(Q.gradient(X), C.gradient(X))


def normal_form(M: SyzygyMatrix):
    """Column operation A with (l1, l2, l3) A = (x1, x2, x3), applied to both rows."""
    L = M.first_row_matrix()
    d = det3(L)
    if d == 0:
        raise NotNormalFormError("first-row linear forms are dependent")
    adj = adjugate3(L)
    A = [[adj[i][j] / d for j in range(3)] for i in range(3)]
    x = gens()[:3]
    new_q = tuple(
        sum((M.quadratic[i] * A[i][j] for i in range(3)), Poly()) for j in range(3)
    )
    return SyzygyMatrix(tuple(x), new_q), ExactMatrix(A)


def v12_project(M: SyzygyMatrix) -> BatemanTuple:
    """Remove the V(0,1) part: q_i <- q_i - x_i * div(q) / 4."""
    if not M.is_normal_form():
        raise NotNormalFormError("first row must be (x1, x2, x3)")
    qs = project_row(M.quadratic)
    T = row_to_tensor(qs)
    return BatemanTuple(coords_from_tensor(T), T.field, projected=True)


def project_row(qs) -> tuple:
    x = gens()[:3]
    s = divergence(qs)
    return tuple(q - xi * s * Fraction(1, 4) for q, xi in zip(qs, x))


def raw_pairing(Qstar: Poly, C: Poly) -> Poly:
    """sum_i dQ*/de_i * dC/dx_i, bidegree (2, 1), before projection."""
    require_form(Qstar, E, 2, "Q*")
    require_form(C, X, 3, "C")
    return sum((Qstar.diff(3 + i) * C.diff(i) for i in range(3)), Poly())


def b_pairing(Qstar: Poly, C: Poly) -> BatemanTuple:
    """The bilinear map b : V(2,0) x V(0,3) -> V(1,2)."""
    if not Qstar.is_zero():
        require_form(Qstar, E, 2, "Q*")
    if not C.is_zero():
        require_form(C, X, 3, "C")
    field = join_fields(Qstar.field, C.field)
    T = sum((Qstar.diff(3 + i) * C.diff(i) for i in range(3)), Poly({}, field))
    qs = project_row(tensor_to_row(T))
    T = row_to_tensor(qs)
    coords = tuple(field(c) for c in coords_from_tensor(T))
    degenerate = Qstar.is_zero() or det3(gram(Qstar, E)) == 0
    return BatemanTuple(coords, field, (Qstar, C), projected=True, degenerate=degenerate)


def bateman_from_QC(Q: Poly, C: Poly) -> BatemanTuple:
    """Convenience: b(adj(Q), C) for a conic Q in the x-variables."""
    from .algebra import adjugate_conic

    return b_pairing(adjugate_conic(Q), C)


@dataclass(frozen=True)
class D2Result:
    scalar: object
    tracefree_zero: bool
    matrix: tuple = field(repr=False)


def d2_check(Qstar: Poly, Q: Poly) -> D2Result:
    """Decompose sum_i dQ*/de_i (x) dQ/dx_i into trace multiple + trace-free part.

    The pairing is a bidegree (1,1) form ``sum N[k][j] e_k x_j``; the scalar
    is ``trace(N) / 3``, the multiple of ``tr = sum x_i e_i``.
    """
    require_form(Q, X, 2, "Q")
    if not Qstar.is_zero():
        require_form(Qstar, E, 2, "Q*")
    P = sum((Qstar.diff(3 + i) * Q.diff(i) for i in range(3)), Poly())
    N = [[P.diff(3 + k).diff(j).coefficient((0,) * 6) for j in range(3)] for k in range(3)]
    scalar = sum(N[i][i] for i in range(3)) / 3
    tracefree_zero = all(N[k][j] == (scalar if j == k else 0) for j in range(3) for k in range(3))
    return D2Result(scalar, tracefree_zero, tuple(tuple(r) for r in N))


def pairing_differential_rank(Qstar: Poly, C: Poly) -> int:
    """Rank of (R*, D) -> b(R*, C) + b(Q*, D) on the 16-dim space of directions."""
    cols = []
    for exp in monomials(2, E):
        cols.append(b_pairing(Poly({exp: 1}), C).coords)
    for exp in monomials(3, X):
        cols.append(b_pairing(Qstar, Poly({exp: 1})).coords)
    return rank(ExactMatrix.from_columns(cols))


def example_instance():
    """Q* = e1^2 + e2^2 + e3^2 and C = x1^3 + x2^3 - x3^3 - (x1 + x2 + x3)^3."""
    x1, x2, x3, e1, e2, e3 = gens()
    Qstar = e1 ** 2 + e2 ** 2 + e3 ** 2
    C = x1 ** 3 + x2 ** 3 - x3 ** 3 - (x1 + x2 + x3) ** 3
    return Qstar, C


def example_conic() -> Poly:
    x1, x2, x3 = gens()[:3]
    return x1 ** 2 + x2 ** 2 + x3 ** 2

