"""Seeded small-integer instances with genericity certificates."""

from __future__ import annotations

import random

from .algebra import E, X, Poly, det3, from_coefficients, gram, monomials
from .apolarity import Pentagon

MAX_TRIES = 1000
KINDS = ("bateman-pair", "quartic", "pentagon")


class InstanceError(RuntimeError):
    pass


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_form(rng, degree: int, group: int = X, bound: int = 5) -> Poly:
    exps = monomials(degree, group)
    return from_coefficients([rng.randint(-bound, bound) for _ in exps], exps)


def random_bateman_pair(seed_or_rng, bound: int = 5):
    """(Q, C) with Q a nondegenerate conic and C a nonzero cubic, both in x."""
    rng = _rng(seed_or_rng)
    for _ in range(MAX_TRIES):
        Q = random_form(rng, 2, X, bound)
        C = random_form(rng, 3, X, bound)
        if not C.is_zero() and det3(gram(Q, X)) != 0:
            return Q, C
    raise InstanceError("could not draw a nondegenerate conic")


def random_quartic(seed_or_rng, bound: int = 9) -> Poly:
    rng = _rng(seed_or_rng)
    for _ in range(MAX_TRIES):
        f = random_form(rng, 4, X, bound)
        if not f.is_zero():
            return f
    raise InstanceError("could not draw a nonzero quartic")


def random_lines(seed_or_rng, n: int = 5, bound: int = 5) -> list:
    rng = _rng(seed_or_rng)
    return [Poly.linear([rng.randint(-bound, bound) for _ in range(3)], X) for _ in range(n)]


def random_pentagon(seed_or_rng, bound: int = 5) -> Pentagon:
    """Five lines, no two proportional and no three concurrent."""
    rng = _rng(seed_or_rng)
    for _ in range(MAX_TRIES):
        rows = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(5)]
        if any(all(c == 0 for c in r) for r in rows):
            continue
        try:
            p = Pentagon.from_coefficients(rows)
        except ValueError:
            continue
        if p.generic:
            return p
    raise InstanceError("could not draw a generic pentagon")


def random_unimodular(seed_or_rng, steps: int = 6, bound: int = 2) -> list:
    """Integer 3x3 matrix of determinant 1 (product of elementary matrices)."""
    rng = _rng(seed_or_rng)
    g = [[int(i == j) for j in range(3)] for i in range(3)]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        c = rng.choice([k for k in range(-bound, bound + 1) if k])
        g[i] = [a + c * b for a, b in zip(g[i], g[j])]
    return g


def random_instance(seed: int, kind: str):
    if kind == "bateman-pair":
        return random_bateman_pair(seed)
    if kind == "quartic":
        return random_quartic(seed)
    if kind == "pentagon":
        return random_pentagon(seed)
    raise ValueError(f"unknown instance kind {kind!r}; expected one of {KINDS}")
