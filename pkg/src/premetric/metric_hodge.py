"""Pseudo-Riemann metrics on the 4-fiber and the media they induce.

Covectors are plain 4-tuples of scalars.  The Hodge star of a metric acts on
2-forms through kappa^{ij}_{rs} = sqrt|det g| g^{ia} g^{jb} eps_{abrs}; in
exact mode a non-square |det g| produces SqrtExt entries so downstream
identities can still be checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .errors import Degenerate, NonPositiveParameter
from .scalars import is_exact, rational_sqrt, sqrt_scalar
from .tensor_core import AREA_BASIS, ABCDBlocks, AreaOperator, eps4, kappa_from_blocks

Covector4 = tuple


def _norm(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class Metric4:
    """Symmetric nondegenerate 4x4 metric with cached inverse/det/index."""

    mat: tuple

    @staticmethod
    def make(rows) -> "Metric4":
        m = tuple(tuple(_norm(x) for x in row) for row in rows)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise ValueError("metric must be 4x4")
        exact = all(is_exact(x) for row in m for x in row)
        for i in range(4):
            for j in range(i + 1, 4):
                if exact:
                    if m[i][j] != m[j][i]:
                        raise ValueError("metric must be symmetric")
                elif not math.isclose(float(m[i][j]), float(m[j][i]),
                                      rel_tol=1e-12, abs_tol=1e-12):
                    raise ValueError("metric must be symmetric")
        g = Metric4(m)
        if exact:
            if g.det == 0:
                raise Degenerate("det g = 0")
        else:
            scale = max(abs(float(x)) for row in m for x in row) or 1.0
            if abs(g.det) <= 1e-12 * scale ** 4:
                raise Degenerate("det g numerically zero")
        return g

    @staticmethod
    def diag(*entries) -> "Metric4":
        e = [_norm(x) for x in entries]
        z = Fraction(0)
        return Metric4.make([[e[i] if i == j else z for j in range(4)] for i in range(4)])

    @staticmethod
    def minkowski() -> "Metric4":
        return Metric4.diag(-1, 1, 1, 1)

    @staticmethod
    def euclidean() -> "Metric4":
        return Metric4.diag(1, 1, 1, 1)

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for row in self.mat for x in row)

    @cached_property
    def det(self):
        return linalg.det_ring(self.mat)

    @cached_property
    def inv(self) -> tuple:
        if self.exact:
            return linalg.inverse_field(self.mat)
        arr = np.linalg.inv(self.numpy())
        return tuple(tuple(float(arr[i, j]) for j in range(4)) for i in range(4))

    @cached_property
    def index(self) -> int:
        """Number of negative eigenvalues (stable under congruence)."""
        if self.exact:
            _, neg, zero = linalg.inertia_sym(self.mat)
            if zero:
                raise Degenerate("det g = 0")
            return neg
        ev = np.linalg.eigvalsh(self.numpy())
        scale = max(abs(ev).max(), 1e-300)
        if any(abs(x) <= 1e-12 * scale for x in ev):
            raise Degenerate("metric numerically degenerate")
        return int((ev < 0).sum())

    @property
    def lorentz(self) -> bool:
        return self.index in (1, 3)

    def numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.mat], dtype=float)

    def scale(self, s) -> "Metric4":
        s = _norm(s)
        return Metric4.make([[s * x for x in row] for row in self.mat])


def signature(g: Metric4) -> tuple[int, bool]:
    """(index sigma, lorentz flag); sigma counts negative eigenvalues."""
    return g.index, g.lorentz


def null_eval(g: Metric4, xi: Covector4):
    """g(xi, xi) for a covector, via the inverse metric."""
    gi = g.inv
    acc = None
    for i in range(4):
        if not xi[i]:
            continue
        for j in range(4):
            if not xi[j]:
                continue
            t = gi[i][j] * xi[i] * xi[j]
            acc = t if acc is None else acc + t
    if acc is None:
        return Fraction(0) if g.exact else 0.0
    return acc


def hodge_star(g: Metric4) -> AreaOperator:
    """The medium *_g induced by g, with kappa^2 = (-1)^sigma Id."""
    gi = g.inv
    if g.exact:
        s = sqrt_scalar(abs(g.det))
    else:
        s = math.sqrt(abs(g.det))
    rows = []
    for (r, ss) in AREA_BASIS:
        row = []
        for (i, j) in AREA_BASIS:
            acc = None
            for a in range(4):
                if not gi[i][a]:
                    continue
                for b in range(4):
                    e = eps4(a, b, r, ss)
                    if e and gi[j][b]:
                        t = e * gi[i][a] * gi[j][b]
                        acc = t if acc is None else acc + t
            row.append(s * acc if acc is not None else s - s)
        rows.append(tuple(row))
    return AreaOperator(tuple(rows))


def hodge_star_rational_part(g: Metric4) -> tuple[AreaOperator, object]:
    """(R, d) with *_g = sqrt(d) * R, R rational when g is; d = |det g|."""
    gi = g.inv
    rows = []
    for (r, ss) in AREA_BASIS:
        row = []
        for (i, j) in AREA_BASIS:
            acc = None
            for a in range(4):
                if not gi[i][a]:
                    continue
                for b in range(4):
                    e = eps4(a, b, r, ss)
                    if e and gi[j][b]:
                        t = e * gi[i][a] * gi[j][b]
                        acc = t if acc is None else acc + t
            row.append(acc if acc is not None else gi[0][0] - gi[0][0])
        rows.append(tuple(row))
    return AreaOperator(tuple(rows)), abs(g.det)


def conformal_factor(g: Metric4, h: Metric4):
    """lambda with h = lambda * g if one exists, else None; tests all entries."""
    lam = None
    for i in range(4):
        for j in range(4):
            if g.mat[i][j]:
                lam = h.mat[i][j] / g.mat[i][j]
                break
        if lam is not None:
            break
    if lam is None:
        return None
    exact = g.exact and h.exact
    for i in range(4):
        for j in range(4):
            lhs = h.mat[i][j]
            rhs = lam * g.mat[i][j]
            if exact:
                if lhs != rhs:
                    return None
            else:
                if not math.isclose(float(lhs), float(rhs), rel_tol=1e-9, abs_tol=1e-9):
                    return None
    return lam


def isotropic_medium(eps, mu) -> AreaOperator:
    """Permittivity/permeability medium: blocks (-eps Id, mu^-1 Id, 0, 0).

    Equals sqrt(eps/mu) *_g for g = diag(-1/(eps mu), 1, 1, 1).
    """
    eps = _norm(eps)
    mu = _norm(mu)
    if (is_exact(eps) and eps <= 0) or (not is_exact(eps) and float(eps) <= 0):
        raise NonPositiveParameter("permittivity must be positive")
    if (is_exact(mu) and mu <= 0) or (not is_exact(mu) and float(mu) <= 0):
        raise NonPositiveParameter("permeability must be positive")
    one = eps / eps
    z = eps - eps
    A = [[-eps if i == j else z for j in range(3)] for i in range(3)]
    B = [[one / mu if i == j else z for j in range(3)] for i in range(3)]
    Z = [[z] * 3 for _ in range(3)]
    return kappa_from_blocks(ABCDBlocks.make(A, B, Z, Z))
