"""Catalecticants of plane quartics, Clebsch and Lueroth builders.

The catalecticant of a quartic ``f`` is the symmetric 6x6 matrix of the
apolarity pairing ``(D, D') -> D D' f`` on second-order operators
``D = d^2/dx_i dx_j``, indexed by the monomial basis
``e1^2, e1e2, e1e3, e2^2, e2e3, e3^2``.  No multinomial rescaling is
applied, so ``x1^4`` gives a single entry 24.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import E, X, Poly, from_coefficients, monomials, require_form
from .linalg import ExactMatrix, det, kernel_basis, rank

CONIC_MONOMIALS = monomials(2, E)
CONIC_LABELS = ("e1^2", "e1*e2", "e1*e3", "e2^2", "e2*e3", "e3^2")
QUARTIC_MONOMIALS = monomials(4, X)


class DegeneratePentagonError(ValueError):
    pass


@dataclass(frozen=True)
class CatalecticantData:
    quartic: Poly
    matrix: ExactMatrix
    labels: tuple = CONIC_LABELS

    @property
    def det(self):
        return det(self.matrix)

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def _apply_operator(exp_e, f: Poly) -> Poly:
    for i in range(3):
        for _ in range(exp_e[3 + i]):
            f = f.diff(i)
    return f


def catalecticant(f: Poly) -> CatalecticantData:
    require_form(f, X, 4, "quartic")
    rows = []
    for a in CONIC_MONOMIALS:
        fa = _apply_operator(a, f)
        rows.append([_apply_operator(b, fa).coefficient((0,) * 6) for b in CONIC_MONOMIALS])
    return CatalecticantData(f, ExactMatrix(rows))


def catalecticant_invariant(f: Poly):
    """Determinant of the catalecticant; degree 6 in the coefficients of ``f``."""
    return catalecticant(f).det


def catalecticant_kernel(f: Poly) -> list:
    """Kernel of the catalecticant as dual conics in the e-variables."""
    data = catalecticant(f)
    return [from_coefficients(v, CONIC_MONOMIALS) for v in kernel_basis(data.matrix)]


def clebsch_from_lines(lines) -> Poly:
    """Sum of fourth powers of the given linear forms."""
    total = Poly()
    for l in lines:
        if not l.is_zero():
            require_form(l, X, 1, "line")
        total = total + l ** 4
    return total


def line_coefficients(l: Poly) -> tuple:
    require_form(l, X, 1, "line")
    return tuple(l.coefficient(exp) for exp in monomials(1, X))


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True)
class Pentagon:
    """Five lines and their ten pairwise intersection points."""

    lines: tuple
    vertices: tuple = field(init=False)
    generic: bool = field(init=False)

    def __post_init__(self):
        if len(self.lines) != 5:
            raise ValueError("a pentagon has five lines")
        coeffs = [line_coefficients(l) for l in self.lines]
        verts = []
        for i, j in itertools.combinations(range(5), 2):
            p = cross(coeffs[i], coeffs[j])
            if all(c == 0 for c in p):
                raise DegeneratePentagonError(f"lines {i + 1} and {j + 1} are proportional")
            verts.append(p)
        generic = all(
            det(ExactMatrix([coeffs[i], coeffs[j], coeffs[k]])) != 0
            for i, j, k in itertools.combinations(range(5), 3)
        )
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "generic", generic)

    @classmethod
    def from_coefficients(cls, rows) -> Pentagon:
        return cls(tuple(Poly.linear(r, X) for r in rows))


def quartic_evaluation_matrix(points) -> ExactMatrix:
    mons = [Poly({exp: 1}) for exp in QUARTIC_MONOMIALS]
    return ExactMatrix([[m.eval(x=p, e=(0, 0, 0)) for m in mons] for p in points])


def lueroth_space_from_pentagon(p: Pentagon) -> list:
    """Canonical basis of the quartics through the ten vertices of ``p``."""
    if not p.generic:
        raise DegeneratePentagonError("three of the five lines are concurrent")
    A = quartic_evaluation_matrix(p.vertices)
    return [from_coefficients(v, QUARTIC_MONOMIALS) for v in kernel_basis(A)]
