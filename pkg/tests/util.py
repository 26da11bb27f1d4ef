"""Shared random generators for the test suite (seeded, exact rationals)."""

from __future__ import annotations

import random
from fractions import Fraction

from premetric import AreaOperator, Metric4, decompose
from premetric.linalg import det_ring, mat


def frac(rng: random.Random, span: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_kappa(rng: random.Random, span: int = 9) -> AreaOperator:
    return AreaOperator.from_rows(
        [[frac(rng, span) for _ in range(6)] for _ in range(6)])


def random_skewon(rng: random.Random) -> AreaOperator:
    return decompose(random_kappa(rng)).skewon


def random_invertible4(rng: random.Random, span: int = 4):
    while True:
        J = [[frac(rng, span, 3) for _ in range(4)] for _ in range(4)]
        if det_ring(mat(J)) != 0:
            return mat(J)


def random_spatial_jacobian(rng: random.Random, span: int = 4):
    while True:
        S = [[frac(rng, span, 3) for _ in range(3)] for _ in range(3)]
        if det_ring(mat(S)) != 0:
            rows = [[Fraction(1), Fraction(0), Fraction(0), Fraction(0)]]
            for r in range(3):
                rows.append([Fraction(0)] + list(S[r]))
            return mat(rows)


def random_lorentz_metric(rng: random.Random):
    """Random congruence of Minkowski; |det| is a perfect square."""
    S = random_invertible4(rng)
    mink = Metric4.minkowski().mat
    rows = [[sum(S[a][i] * mink[a][b] * S[b][j] for a in range(4) for b in range(4))
             for j in range(4)] for i in range(4)]
    return Metric4.make(rows)


def random_metric(rng: random.Random):
    """Random symmetric nondegenerate rational metric (any signature)."""
    while True:
        m = [[Fraction(0)] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                m[i][j] = m[j][i] = frac(rng, 5, 3)
        if det_ring(mat(m)) != 0:
            return Metric4.make(m)


def pythagorean_null(rng: random.Random):
    """Rational covector on the Minkowski null cone, nonzero."""
    while True:
        s, u, v = (rng.randint(-6, 6) for _ in range(3))
        if s == 0 or (u == 0 and v == 0):
            continue
        xi = [s * s + u * u + v * v, s * s - u * u - v * v, 2 * s * u, 2 * s * v]
        spatial = xi[1:]
        rng.shuffle(spatial)
        out = [Fraction(xi[0])] + [Fraction(x) for x in spatial]
        if rng.random() < 0.5:
            out[0] = -out[0]
        return tuple(out)
