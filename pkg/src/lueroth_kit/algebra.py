"""Exact coefficient fields and bigraded polynomials.

Polynomials live in the six variables ``x1, x2, x3`` (point coordinates)
and ``e1, e2, e3`` (dual coordinates).  Coefficients are rationals
(:class:`fractions.Fraction`) or elements ``a + b*t`` of ``Q[t]/(t^2 - d)``.
Everything here is immutable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

VARIABLES = ("x1", "x2", "x3", "e1", "e2", "e3")
X, E = 0, 1  # variable groups


class FieldMismatchError(ValueError):
    pass


class RationalField:
    kind = "Q"

    def __call__(self, value):
        if isinstance(value, QuadElem):
            if value.b != 0:
                raise FieldMismatchError(f"{value} is not rational")
            return value.a
        return _to_fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return {"kind": "Q"}

    def coeff_to_json(self, c):
        return str(self(c))

    def coeff_from_json(self, raw):
        return Fraction(raw)


QQ = RationalField()


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


def _squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadraticField:
    """``Q(t)`` with ``t^2 = d`` for a square-free integer ``d``."""

    kind = "Qsqrt"

    def __init__(self, d: int):
        if not _squarefree(d):
            raise ValueError(f"d = {d} must be a square-free integer other than 0, 1")
        self.d = d

    def __call__(self, value):
        if isinstance(value, QuadElem):
            if value.field.d != self.d:
                raise FieldMismatchError(f"element of Q(sqrt({value.field.d})) used in Q(sqrt({self.d}))")
            return value
        return QuadElem(_to_fraction(value), Fraction(0), self)

    @property
    def gen(self) -> QuadElem:
        return QuadElem(Fraction(0), Fraction(1), self)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("Qsqrt", self.d))

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def to_json(self):
        return {"kind": "Qsqrt", "d": self.d}

    def coeff_to_json(self, c):
        c = self(c)
        return [str(c.a), str(c.b)]

    def coeff_from_json(self, raw):
        if isinstance(raw, list):
            a, b = raw
            return QuadElem(Fraction(a), Fraction(b), self)
        return self(Fraction(raw))


class QuadElem:
    """Element ``a + b*t`` of a quadratic field."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a: Fraction, b: Fraction, field: QuadraticField):
        self.a = a
        self.b = b
        self.field = field

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.field.d != self.field.d:
                raise FieldMismatchError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.d
        return QuadElem(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def conjugate(self) -> QuadElem:
        return QuadElem(self.a, -self.b, self.field)

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(Fraction(1), Fraction(0), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.field.d == other.field.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        d = self.field.d
        root = d ** 0.5 if d > 0 else 1j * (-d) ** 0.5
        return complex(float(self.a) + float(self.b) * root)

    def __repr__(self):
        root = f"sqrt({self.field.d})"
        if self.b == 0:
            return str(self.a)
        b = "" if self.b == 1 else "-" if self.b == -1 else f"{self.b}*"
        if self.a == 0:
            return f"{b}{root}"
        sign = "-" if self.b < 0 else "+"
        b = b.lstrip("-")
        return f"({self.a} {sign} {b}{root})"


def field_of(value):
    if isinstance(value, QuadElem):
        return value.field
    return QQ


def join_fields(a, b):
    """Smallest supported field containing both ``a`` and ``b``."""
    if a == b:
        return a
    if a == QQ:
        return b
    if b == QQ:
        return a
    raise FieldMismatchError(f"cannot combine {a} and {b}")


def is_integral(c) -> bool:
    return isinstance(c, (int, Fraction)) and Fraction(c).denominator == 1


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

Exponent = tuple  # 6-tuple of ints: (a1, a2, a3, b1, b2, b3)


def _var_index(var) -> int:
    if isinstance(var, int):
        if not 0 <= var < 6:
            raise ValueError(f"variable index {var} out of range")
        return var
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}") from None


class Poly:
    """Sparse polynomial in ``x1..x3, e1..e3`` with exact coefficients."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, field=QQ):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(k) for k in exp)
            if len(exp) != 6 or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent vector {exp}")
            field = join_fields(field, field_of(c))
            clean[exp] = c
        self.field = field
        self.terms = {exp: field(c) for exp, c in clean.items() if c != 0}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c, field=None) -> Poly:
        field = field or field_of(c)
        return cls({(0,) * 6: c}, field)

    @classmethod
    def var(cls, name, field=QQ) -> Poly:
        exp = [0] * 6
        exp[_var_index(name)] = 1
        return cls({tuple(exp): 1}, field)

    @classmethod
    def linear(cls, coeffs: Sequence, group: int = X) -> Poly:
        """``sum c_i * v_i`` over the x- (group 0) or e-variables (group 1)."""
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * 6
            exp[3 * group + i] = 1
            terms[tuple(exp)] = c
        field = reduce(join_fields, (field_of(c) for c in coeffs), QQ)
        return cls(terms, field)

    # basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Exponent):
        return self.terms.get(tuple(exp), self.field(0))

    def bidegrees(self) -> set:
        return {(sum(exp[:3]), sum(exp[3:])) for exp in self.terms}

    @property
    def bidegree(self):
        """The common bidegree, or ``None`` if not bihomogeneous (or zero)."""
        degs = self.bidegrees()
        return degs.pop() if len(degs) == 1 else None

    def is_form(self, group: int, degree: int) -> bool:
        """Homogeneous of ``degree`` in one group and free of the other."""
        want = (degree, 0) if group == X else (0, degree)
        return all(d == want for d in self.bidegrees())

    # arithmetic -----------------------------------------------------------
    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        field = join_fields(self.field, other.field)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return Poly(terms, field)

    __radd__ = __add__

    def __neg__(self):
        return Poly({exp: -c for exp, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            field = join_fields(self.field, field_of(other))
            return Poly({exp: c * other for exp, c in self.terms.items()}, field)
        if not isinstance(other, Poly):
            return NotImplemented
        field = join_fields(self.field, other.field)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return Poly(terms, field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # calculus & substitution ------------------------------------------------
    def diff(self, var) -> Poly:
        k = _var_index(var)
        terms = {}
        for exp, c in self.terms.items():
            if exp[k]:
                new = list(exp)
                new[k] -= 1
                terms[tuple(new)] = c * exp[k]
        return Poly(terms, self.field)

    def gradient(self, group: int = X) -> tuple:
        return tuple(self.diff(3 * group + i) for i in range(3))

    def eval(self, x: Sequence | None = None, e: Sequence | None = None):
        """Substitute a point for the x-group, the e-group, or both.

        A full substitution returns a scalar; otherwise a :class:`Poly`.
        """
        for pt in (x, e):
            if pt is not None and len(pt) != 3:
                raise ValueError("points have exactly three coordinates")
        field = self.field
        for pt in (x, e):
            for c in pt or ():
                field = join_fields(field, field_of(c))
        values = [None] * 6
        if x is not None:
            values[:3] = [field(c) for c in x]
        if e is not None:
            values[3:] = [field(c) for c in e]
        terms = {}
        for exp, c in self.terms.items():
            coeff = field(c)
            rest = list(exp)
            for k, v in enumerate(values):
                if v is not None and exp[k]:
                    coeff = coeff * v ** exp[k]
                    rest[k] = 0
                elif v is not None:
                    rest[k] = 0
            rest = tuple(rest)
            terms[rest] = terms.get(rest, 0) + coeff
        result = Poly(terms, field)
        if x is not None and e is not None:
            return result.coefficient((0,) * 6)
        return result

    def substitute_linear(self, g, group: int = X) -> Poly:
        """Composition ``p(g v)`` for a 3x3 matrix ``g`` acting on one group."""
        new_vars = [
            Poly.linear([g[i][j] for j in range(3)], group) for i in range(3)
        ]
        result = Poly({}, self.field)
        cache = {}
        for exp, c in self.terms.items():
            term = Poly.const(c, self.field)
            other = list(exp)
            for i in range(3):
                k = 3 * group + i
                other[k] = 0
                if exp[k]:
                    key = (i, exp[k])
                    if key not in cache:
                        cache[key] = new_vars[i] ** exp[k]
                    term = term * cache[key]
            term = term * Poly({tuple(other): 1})
            result = result + term
        return result

    def swap_groups(self) -> Poly:
        """Rename x_i <-> e_i."""
        return Poly({exp[3:] + exp[:3]: c for exp, c in self.terms.items()}, self.field)

    # presentation -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                VARIABLES[k] + (f"^{p}" if p > 1 else "") for k, p in enumerate(exp) if p
            )
            coeff = str(c)
            if mono:
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{coeff}*{mono}")
            else:
                parts.append(coeff)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "terms": [
                {"coeff": self.field.coeff_to_json(c), "xexp": list(exp[:3]), "eexp": list(exp[3:])}
                for exp, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        field = field_from_json(data.get("field", {"kind": "Q"}))
        terms = {}
        for t in data["terms"]:
            xexp = list(t.get("xexp", [0, 0, 0]))
            eexp = list(t.get("eexp", [0, 0, 0]))
            if len(xexp) != 3 or len(eexp) != 3:
                raise ValueError("exponent vectors have length 3")
            exp = tuple(xexp + eexp)
            terms[exp] = terms.get(exp, 0) + field.coeff_from_json(t["coeff"])
        return cls(terms, field)


def field_from_json(data: dict):
    kind = data.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Qsqrt":
        return QuadraticField(int(data["d"]))
    raise ValueError(f"unknown field kind {kind!r}")


def gens(field=QQ):
    """``x1, x2, x3, e1, e2, e3`` as polynomials."""
    return tuple(Poly.var(v, field) for v in VARIABLES)


def monomials(degree: int, group: int = X) -> list:
    """Exponent vectors of the degree-``degree`` monomials in one group, lex-descending."""
    out = []
    for a in itertools.product(range(degree, -1, -1), repeat=3):
        if sum(a) == degree:
            exp = a + (0, 0, 0) if group == X else (0, 0, 0) + a
            out.append(exp)
    return out


def monomial(exp: Exponent) -> Poly:
    return Poly({tuple(exp): 1})


def from_coefficients(coeffs: Iterable, exps: Sequence[Exponent]) -> Poly:
    coeffs = list(coeffs)
    field = reduce(join_fields, (field_of(c) for c in coeffs), QQ)
    return Poly(dict(zip(exps, coeffs)), field)


def require_form(p: Poly, group: int, degree: int, what: str = "polynomial"):
    if not p.is_form(group, degree):
        name = "x" if group == X else "e"
        raise ValueError(f"{what} must be homogeneous of degree {degree} in the {name}-variables, got {p}")


# ---------------------------------------------------------------------------
# Conics and their Gram matrices
# ---------------------------------------------------------------------------
#
# Symmetric convention: a11 x1^2 + a12 x1 x2 + ... has Gram entries
# G_ii = a_ii and G_ij = G_ji = a_ij / 2.

def gram(q: Poly, group: int = X) -> list:
    require_form(q, group, 2, "conic")
    G = [[q.field(0)] * 3 for _ in range(3)]
    for exp, c in q.terms.items():
        idx = [i for i in range(3) for _ in range(exp[3 * group + i])]
        i, j = idx
        if i == j:
            G[i][i] = c
        else:
            G[i][j] = G[j][i] = c / 2
    return G


def from_gram(G, group: int = X) -> Poly:
    terms = {}
    for i in range(3):
        for j in range(i, 3):
            exp = [0] * 6
            exp[3 * group + i] += 1
            exp[3 * group + j] += 1
            c = G[i][j] if i == j else G[i][j] + G[j][i]
            terms[tuple(exp)] = terms.get(tuple(exp), 0) + c
    field = reduce(join_fields, (field_of(G[i][j]) for i in range(3) for j in range(3)), QQ)
    return Poly(terms, field)


def det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def adjugate3(M):
    def minor(r, c):
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != c]
        return M[rows[0]][cols[0]] * M[rows[1]][cols[1]] - M[rows[0]][cols[1]] * M[rows[1]][cols[0]]

    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def adjugate_conic(q: Poly) -> Poly:
    """Dual conic whose Gram matrix is the adjugate of ``q``'s.

    A conic in the x-variables goes to one in the e-variables and vice
    versa.  Rank <= 1 input yields the zero form.
    """
    if q.is_form(X, 2):
        group = X
    elif q.is_form(E, 2):
        group = E
    else:
        raise ValueError(f"not a conic: {q}")
    return from_gram(adjugate3(gram(q, group)), 1 - group)


def conic_det(q: Poly):
    group = X if q.is_form(X, 2) else E
    return det3(gram(q, group))
