"""Character bookkeeping for the frame stabilizer S4 and SL2 weight peeling.

S4 acts on C^3 as the subgroup of PGL3 permuting the frame
(1:0:0), (0:1:0), (0:0:1), (1:1:1).  Each permutation has a unique real
determinant-one lift, and these lifts form an honest representation, so the
characters below are measured from explicit matrices.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .algebra import X, Poly, adjugate3, monomials
from .linalg import ExactMatrix, det

FRAME = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
CLASS_NAMES = ("e", "(12)", "(12)(34)", "(123)", "(1234)")
CLASS_SIZES = (1, 6, 3, 8, 6)
CLASS_REPS = ((0, 1, 2, 3), (1, 0, 2, 3), (1, 0, 3, 2), (1, 2, 0, 3), (1, 2, 3, 0))
# class of g^2 for g in each class
SQUARE_CLASS = (0, 0, 0, 3, 2)
IRREP_NAMES = ("1", "eps", "V2", "V3", "V3'")


class NotACharacterError(ValueError):
    pass


class NotARepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class ClassFunction:
    values: tuple  # one rational per class, in CLASS_NAMES order

    def __post_init__(self):
        if len(self.values) != 5:
            raise ValueError("S4 has five conjugacy classes")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def dim(self):
        return self.values[0]

    def __add__(self, other):
        return ClassFunction(tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        return ClassFunction(tuple(a * b for a, b in zip(self.values, other.values)))

    def inner(self, other) -> Fraction:
        total = sum(s * a * b for s, a, b in zip(CLASS_SIZES, self.values, other.values))
        return Fraction(total, 24)

    def wedge2(self) -> ClassFunction:
        sq = [self.values[c] for c in SQUARE_CLASS]
        return ClassFunction(tuple((a * a - b) / 2 for a, b in zip(self.values, sq)))

    def sym2(self) -> ClassFunction:
        sq = [self.values[c] for c in SQUARE_CLASS]
        return ClassFunction(tuple((a * a + b) / 2 for a, b in zip(self.values, sq)))


IRREPS = (
    ClassFunction((1, 1, 1, 1, 1)),
    ClassFunction((1, -1, 1, 1, -1)),
    ClassFunction((2, 0, 2, -1, 0)),
    ClassFunction((3, 1, -1, 0, -1)),
    ClassFunction((3, -1, -1, 0, 1)),
)
IRREP_DIMS = (1, 1, 2, 3, 3)


def irrep(name: str) -> ClassFunction:
    return IRREPS[IRREP_NAMES.index(name)]


def combination(mults) -> ClassFunction:
    out = ClassFunction((0,) * 5)
    for m, chi in zip(mults, IRREPS):
        out = out + ClassFunction(tuple(m * v for v in chi.values))
    return out


def decompose_s4(chi: ClassFunction) -> tuple:
    """Multiplicities over (1, eps, V2, V3, V3')."""
    mults = []
    for name, psi in zip(IRREP_NAMES, IRREPS):
        m = chi.inner(psi)
        if m.denominator != 1 or m < 0:
            raise NotACharacterError(f"multiplicity of {name} is {m}")
        mults.append(int(m))
    if sum(m * d for m, d in zip(mults, IRREP_DIMS)) != chi.dim:
        raise NotACharacterError("dimension mismatch")
    return tuple(mults)


def format_decomposition(mults) -> str:
    parts = []
    for m, name in zip(mults, IRREP_NAMES):
        if m:
            parts.append(name if m == 1 else f"{m}{name}")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# explicit matrices

def _cube_root(q: Fraction) -> Fraction:
    q = Fraction(q)
    sign = -1 if q < 0 else 1
    out = []
    for n in (abs(q.numerator), q.denominator):
        r = round(n ** (1 / 3))
        r = next((s for s in (r - 1, r, r + 1) if s ** 3 == n), None)
        if r is None:
            raise ValueError(f"{q} is not a rational cube")
        out.append(r)
    return sign * Fraction(out[0], out[1])


def lift(perm) -> ExactMatrix:
    """Determinant-one matrix A with A p_i proportional to p_perm[i]."""
    targets = [FRAME[perm[i]] for i in range(4)]
    # columns c_k * targets[k], with sum_k c_k targets[k] = targets[3]
    M = ExactMatrix.from_columns(targets[:3])
    d = det(M)
    if d == 0:
        raise ValueError("frame images are dependent")
    adj = adjugate3([list(r) for r in M.rows])
    c = [sum(adj[k][j] * targets[3][j] for j in range(3)) / d for k in range(3)]
    A = ExactMatrix([[c[k] * targets[k][i] for k in range(3)] for i in range(3)])
    s = 1 / _cube_root(det(A))
    return A.scale(s)


def permutes_frame(A: ExactMatrix, perm) -> bool:
    for i, p in enumerate(FRAME):
        img = A.apply(list(p))
        q = FRAME[perm[i]]
        if any(img[a] * q[b] != img[b] * q[a] for a in range(3) for b in range(3)):
            return False
        if all(v == 0 for v in img):
            return False
    return True


def s4_matrices() -> dict:
    """Class name -> determinant-one representative acting on C^3."""
    return {name: lift(p) for name, p in zip(CLASS_NAMES, CLASS_REPS)}


def all_lifts() -> dict:
    return {p: lift(p) for p in itertools.permutations(range(4))}


def compose(p, q) -> tuple:
    """(p q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(4))


def sym2_matrix(A: ExactMatrix) -> ExactMatrix:
    """Action p -> p(A^T x) on quadratic forms, in the monomial basis."""
    basis = monomials(2, X)
    At = [list(r) for r in A.transpose().rows]
    cols = []
    for exp in basis:
        img = Poly({exp: 1}).substitute_linear(At, X)
        cols.append([img.coefficient(b) for b in basis])
    return ExactMatrix.from_columns(cols)


def wedge2_matrix(A: ExactMatrix) -> ExactMatrix:
    n = A.nrows
    pairs = list(itertools.combinations(range(n), 2))
    return ExactMatrix(
        [
            [A[i, k] * A[j, l] - A[i, l] * A[j, k] for k, l in pairs]
            for i, j in pairs
        ]
    )


def trace(A: ExactMatrix):
    return sum((A[i, i] for i in range(A.nrows)), 0)


def measured_character(action) -> ClassFunction:
    reps = s4_matrices()
    return ClassFunction(tuple(trace(action(reps[name])) for name in CLASS_NAMES))


def character_V() -> ClassFunction:
    return measured_character(lambda A: A)


def character_S2V() -> ClassFunction:
    return measured_character(sym2_matrix)


def character_wedge2_S2V() -> ClassFunction:
    return measured_character(lambda A: wedge2_matrix(sym2_matrix(A)))


# ---------------------------------------------------------------------------
# SL2 weights

class WeightMultiset(Counter):
    """Multiset of SL2 weights, weight -> multiplicity."""

    @classmethod
    def irreducible(cls, n: int) -> WeightMultiset:
        return cls({n - 2 * k: 1 for k in range(n + 1)})

    def is_symmetric(self) -> bool:
        return all(self[w] == self[-w] for w in list(self))

    def weights(self) -> list:
        return sorted(self.elements(), reverse=True)


def sym_power(k: int, base: WeightMultiset) -> WeightMultiset:
    ws = base.weights()
    out = WeightMultiset()
    for combo in itertools.combinations_with_replacement(range(len(ws)), k):
        out[sum(ws[i] for i in combo)] += 1
    return out


def peel(ms: WeightMultiset) -> dict:
    """Greedy top-weight decomposition into V(n); n -> multiplicity."""
    ms = WeightMultiset({w: m for w, m in ms.items() if m})
    out = {}
    while ms:
        top = max(ms)
        m = ms[top]
        if m < 0 or top < 0:
            raise NotARepresentationError(f"weight {top} has multiplicity {m}")
        out[top] = m
        for w in range(top, -top - 1, -2):
            ms[w] -= m
            if ms[w] < 0:
                raise NotARepresentationError(f"weight {w} would get multiplicity {ms[w]}")
            if ms[w] == 0:
                del ms[w]
    return out


def sl2_plethysm(sym_power_: int, base: WeightMultiset) -> dict:
    return peel(sym_power(sym_power_, base))


def format_sl2(parts: dict) -> str:
    return " + ".join(
        (f"V({n})" if m == 1 else f"{m}V({n})") for n, m in sorted(parts.items(), reverse=True)
    )


# ---------------------------------------------------------------------------
# the tables

@dataclass(frozen=True)
class TableRow:
    name: str
    computed: str
    claimed: str | None  # None when nothing is claimed
    blocking: bool

    @property
    def agrees(self):
        if self.claimed is None:
            return None
        return self.computed == self.claimed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "computed": self.computed,
            "claimed": self.claimed,
            "agrees": self.agrees,
            "blocking": self.blocking,
        }


def s2_part(name: str) -> ClassFunction:
    """Character of the isotypic piece of S^2 V labelled by ``name``."""
    mults = decompose_s4(character_S2V())
    m = mults[IRREP_NAMES.index(name)]
    return combination([m if n == name else 0 for n in IRREP_NAMES])


def tables() -> list:
    V3, V2, one = s2_part("V3"), s2_part("V2"), s2_part("1")
    w2 = character_wedge2_S2V()
    split = V2.wedge2() + V2 * (V3 + one) + (V3 + one).wedge2()
    rows = [
        TableRow("C^3", format_decomposition(decompose_s4(character_V())), None, False),
        TableRow("S^2(C^3)", format_decomposition(decompose_s4(character_S2V())), "1 + V2 + V3", True),
        TableRow(
            "Lambda^2 S^2(C^3) (dim 15, split as Lambda^2 V2 + V2(V3+1) + Lambda^2(V3+1))",
            format_decomposition(decompose_s4(w2)),
            format_decomposition(decompose_s4(split)),
            True,
        ),
        TableRow(
            "F = Lambda^2(V3+1)",
            format_decomposition(decompose_s4((V3 + one).wedge2())),
            "2V3",
            False,
        ),
    ]
    V2w = WeightMultiset.irreducible(2)
    rows.append(TableRow("Sym^2 V(2)", format_sl2(sl2_plethysm(2, V2w)), "V(4) + V(0)", True))
    rows.append(TableRow("Sym^4 V(2)", format_sl2(sl2_plethysm(4, V2w)), "V(8) + V(4) + V(0)", True))
    return rows
