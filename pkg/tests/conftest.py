import sympy as sp

from lueroth_kit.algebra import Poly, QuadraticField
from lueroth_kit.cli import parse_expression

SYMS = sp.symbols("x1 x2 x3 e1 e2 e3")
X1, X2, X3, E1, E2, E3 = SYMS


def to_sympy(p: Poly):
    """Independent route: rebuild the polynomial term by term in sympy."""
    total = sp.Integer(0)
    for exp, c in p.terms.items():
        if isinstance(p.field, QuadraticField):
            coeff = sp.Rational(c.a.numerator, c.a.denominator) + sp.Rational(
                c.b.numerator, c.b.denominator
            ) * sp.sqrt(p.field.d)
        else:
            coeff = sp.Rational(c.numerator, c.denominator)
        total += coeff * sp.prod([v ** k for v, k in zip(SYMS, exp)])
    return sp.expand(total)


def from_sympy(expr) -> Poly:
    return parse_expression(str(sp.expand(expr)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
