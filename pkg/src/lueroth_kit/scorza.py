"""The Scorza quartic covariant as an epsilon-tensor contraction.

For a quartic ``f`` with polarization ``F`` (``F(x,x,x,x) = f(x)``) the
covariant is

    S(f)(x) = sum eps(a1,b1,c1) eps(a2,b2,d1) eps(a3,c2,d2) eps(b3,c3,d3)
              F[a1 a2 a3 a4] F[b1 b2 b3 b4] F[c1 c2 c3 c4] F[d1 d2 d3 d4]
              x[a4] x[b4] x[c4] x[d4]

with no extra normalizing factor.  Rational quartics are scaled to integer
tensors and contracted by the kernels in :mod:`lueroth_kit._kernels`;
quartics over a quadratic field, or with coefficients too large for int64,
go through an exact object-array path.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .algebra import QQ, X, Poly, monomials, require_form

INDEX_TUPLES = sorted(itertools.combinations_with_replacement(range(3), 4))
INT64_LIMIT = 2 ** 63 - 1
# each output coefficient sums at most 12 tensor entries of 1296 products
_TERM_BOUND = 12 * 1296


def _exp_of(idx) -> tuple:
    c = Counter(idx)
    return tuple(c[i] for i in range(3)) + (0, 0, 0)


def _multinomial(exp) -> int:
    return math.factorial(sum(exp)) // math.prod(math.factorial(k) for k in exp)


@dataclass(frozen=True)
class SymQuarticTensor:
    """Fully symmetric 3x3x3x3 tensor stored by its 15 distinct entries."""

    entries: dict  # sorted index 4-tuple -> scalar
    field: object = QQ

    def __getitem__(self, idx):
        return self.entries.get(tuple(sorted(idx)), self.field(0))

    def full(self) -> np.ndarray:
        out = np.empty((3, 3, 3, 3), dtype=object)
        for idx in itertools.product(range(3), repeat=4):
            out[idx] = self[idx]
        return out

    def to_form(self) -> Poly:
        return Poly(
            {_exp_of(idx): _multinomial(_exp_of(idx)[:3]) * c for idx, c in self.entries.items()},
            self.field,
        )


def sym_tensor(f: Poly) -> SymQuarticTensor:
    require_form(f, X, 4, "quartic")
    entries = {}
    for idx in INDEX_TUPLES:
        exp = _exp_of(idx)
        c = f.coefficient(exp)
        if c != 0:
            entries[idx] = c / _multinomial(exp[:3])
    return SymQuarticTensor(entries, f.field)


def _integer_tensor(f: Poly):
    """Integer array ``12 * L * F`` and the scale ``12 * L``, or None."""
    if f.field != QQ:
        return None
    denom = math.lcm(*(c.denominator for c in f.terms.values())) if f.terms else 1
    scale = 12 * denom
    T = sym_tensor(f)
    F = np.zeros((3, 3, 3, 3), dtype=object)
    biggest = 0
    for idx in itertools.product(range(3), repeat=4):
        v = T[idx] * scale
        assert v.denominator == 1
        F[idx] = int(v)
        biggest = max(biggest, abs(int(v)))
    if _TERM_BOUND * biggest ** 4 > INT64_LIMIT:
        return None
    return F.astype(np.int64), scale


def _to_quartic(S: np.ndarray, scale, field) -> Poly:
    terms = {}
    for idx in itertools.product(range(3), repeat=4):
        v = S[idx]
        if v != 0:
            exp = _exp_of(idx)
            terms[exp] = terms.get(exp, 0) + (int(v) if isinstance(v, np.integer) else v)
    div = Fraction(scale) ** 4
    return Poly({exp: c / div for exp, c in terms.items()}, field)


def scorza_fast(f: Poly, backend: str | None = None) -> Poly:
    """Contraction over the 6^4 nonzero epsilon assignments."""
    require_form(f, X, 4, "quartic")
    packed = _integer_tensor(f)
    if packed is not None:
        F, scale = packed
        return _to_quartic(_kernels.contract_fast(F, backend), scale, f.field)
    S = _kernels.fast_numpy(sym_tensor(f).full())
    return _to_quartic(S, 1, f.field)


def scorza_naive(f: Poly, backend: str | None = None) -> Poly:
    """Literal sum over all 3^16 index assignments (test oracle)."""
    require_form(f, X, 4, "quartic")
    packed = _integer_tensor(f)
    if packed is not None:
        F, scale = packed
        return _to_quartic(_kernels.contract_naive(F, backend), scale, f.field)
    return _to_quartic(_naive_exact(sym_tensor(f).full()), 1, f.field)


def _naive_exact(F: np.ndarray) -> np.ndarray:
    eps = _kernels.levi_civita(object)
    out = np.zeros((3, 3, 3, 3), dtype=object)
    for a1, b1, c1, a2, b2, d1, a3, c2, d2, b3, c3, d3 in itertools.product(range(3), repeat=12):
        w = eps[a1, b1, c1] * eps[a2, b2, d1] * eps[a3, c2, d2] * eps[b3, c3, d3]
        if w == 0:
            continue
        A, B, C, D = F[a1, a2, a3], F[b1, b2, b3], F[c1, c2, c3], F[d1, d2, d3]
        out += w * np.multiply.outer(np.multiply.outer(A, B), np.multiply.outer(C, D))
    return out


scorza = scorza_fast
