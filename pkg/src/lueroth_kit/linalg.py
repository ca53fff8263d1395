"""Exact dense linear algebra over Q and quadratic fields."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .algebra import QQ, field_of, join_fields


class NotSkewSymmetricError(ValueError):
    pass


def _normalize(c):
    # integral rationals become ints so Bareiss stays in Z
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("Bareiss division was not exact")
        return q
    return _normalize(a / b)


class ExactMatrix:
    """Immutable dense matrix of exact scalars, row-major."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self.field = reduce(join_fields, (field_of(c) for r in rows for c in r), QQ)
        self.rows = tuple(tuple(self.field(c) for c in r) for r in rows)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> ExactMatrix:
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> ExactMatrix:
        return cls([list(r) for r in zip(*cols)])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}])"

    def transpose(self) -> ExactMatrix:
        return ExactMatrix([list(c) for c in zip(*self.rows)]) if self.rows else self

    T = property(transpose)

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> ExactMatrix:
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return ExactMatrix([[sum((a * b for a, b in zip(r, c)), 0) for c in cols] for r in self.rows])
        return self.apply(other)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, vec)), 0) for r in self.rows]

    def is_skew(self) -> bool:
        return self._skew_violation() is None

    def _skew_violation(self):
        if self.nrows != self.ncols:
            return "not square"
        for i in range(self.nrows):
            if self.rows[i][i] != 0:
                return f"diagonal entry ({i}, {i}) = {self.rows[i][i]} is nonzero"
            for j in range(i + 1, self.ncols):
                if self.rows[i][j] != -self.rows[j][i]:
                    return f"entries ({i}, {j}) = {self.rows[i][j]} and ({j}, {i}) = {self.rows[j][i]} are not opposite"
        return None

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "rows": [[self.field.coeff_to_json(c) for c in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> ExactMatrix:
        from .algebra import field_from_json

        field = field_from_json(data.get("field", {"kind": "Q"}))
        return cls([[field.coeff_from_json(c) for c in r] for r in data["rows"]])


def _clear_denominators(rows):
    """Scale rational rows to integer rows; returns (rows, product of scales)."""
    out, total = [], 1
    for r in rows:
        if not all(isinstance(c, (int, Fraction)) for c in r):
            return [list(r) for r in rows], 1
        m = math.lcm(*(Fraction(c).denominator for c in r)) if r else 1
        out.append([int(c * m) for c in r])
        total *= m
    return out, total


def _bareiss(rows, ncols):
    """Fraction-free forward elimination.

    Rational input is first scaled row by row to integers.  Returns
    (echelon rows, pivot columns, sign of the row permutation, scale); for
    full-rank square input the last pivot divided by ``scale`` is the
    determinant.
    """
    A, scale = _clear_denominators(rows)
    A = [[_normalize(c) for c in r] for r in A]
    m = len(A)
    sign = 1
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            for j in range(c + 1, ncols):
                A[i][j] = _exact_div(piv * A[i][j] - a_ic * A[r][j], prev)
            A[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots, sign, scale


def det(M: ExactMatrix):
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of a non-square {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    if n == 0:
        return M.field(1)
    A, pivots, sign, scale = _bareiss(M.rows, n)
    if len(pivots) < n:
        return M.field(0)
    return M.field(Fraction(sign * A[n - 1][n - 1]) / scale if scale != 1 else sign * A[n - 1][n - 1])


def rank(M: ExactMatrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(_bareiss(M.rows, M.ncols)[1])


def rref(M: ExactMatrix):
    """Reduced row echelon form with unit pivots; returns (rows, pivot columns)."""
    A = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c] if not isinstance(A[r][c], Fraction) else Fraction(1) / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return [tuple(M.field(x) for x in row) for row in A[:r]], pivots


def canonical_basis(vectors: Sequence[Sequence]) -> list:
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    return rref(ExactMatrix(vectors))[0]


def kernel_basis(M: ExactMatrix) -> list:
    """Right kernel in canonical reduced form (possibly empty)."""
    rows, pivots = rref(M)
    free = [c for c in range(M.ncols) if c not in pivots]
    zero, one = M.field(0), M.field(1)
    basis = []
    for f in free:
        v = [zero] * M.ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return canonical_basis(basis)


def left_kernel_basis(M: ExactMatrix) -> list:
    return kernel_basis(M.transpose())


def same_span(u: Sequence[Sequence], v: Sequence[Sequence]) -> bool:
    return canonical_basis(u) == canonical_basis(v)


def pfaffian(M: ExactMatrix):
    """Pfaffian by expansion along the first row; skew-symmetry is checked."""
    problem = M._skew_violation()
    if problem == "not square":
        raise ValueError("Pfaffian of a non-square matrix")
    if M.nrows % 2:
        raise ValueError(f"Pfaffian of odd dimension {M.nrows}")
    if problem is not None:
        raise NotSkewSymmetricError(problem)
    return M.field(_pf(M.rows, tuple(range(M.nrows))))


def _pf(rows, idx):
    if not idx:
        return 1
    i = idx[0]
    total = 0
    for k in range(1, len(idx)):
        a = rows[i][idx[k]]
        if a == 0:
            continue
        rest = idx[1:k] + idx[k + 1:]
        term = a * _pf(rows, rest)
        total = total + term if k % 2 else total - term
    return total
