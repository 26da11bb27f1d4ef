"""Antisymmetric (2,2)-tensors on a 4-dimensional fiber.

A linear electromagnetic medium at a point is a linear map on the
6-dimensional space of 2-forms.  We fix once and for all the ordered basis

    AREA_BASIS = [(0,1), (0,2), (0,3), (2,3), (3,1), (1,2)]

of coordinate 2-forms dx^i ^ dx^j; every module in the package shares this
enumeration.  An operator kappa with components kappa^{ij}_{kl} acts on
2-form components by G_kl = 1/2 kappa^{rs}_{kl} F_rs, which in the fixed
basis is the 6x6 matrix-vector product with

    M[row I][col J] = kappa^{(pair J)}_{(pair I)}.

The Levi-Civita symbol is purely combinatorial with eps_{0123} = +1 and the
raised copy equal to the lowered one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations

import numpy as np

from . import linalg
from .errors import (ComplexUnsupported, ConflictingComponent, SingularJacobian,
                     SingularOperator)
from .scalars import is_complex_scalar, is_exact

AREA_BASIS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

PAIR_INDEX: dict[tuple[int, int], tuple[int, int]] = {}
for _idx, (_a, _b) in enumerate(AREA_BASIS):
    PAIR_INDEX[(_a, _b)] = (_idx, 1)
    PAIR_INDEX[(_b, _a)] = (_idx, -1)


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


EPS4 = {p: _perm_sign(p) for p in permutations(range(4))}
EPS4_PERMS = tuple((s, p) for p, s in EPS4.items())


def eps4(a, b, c, d) -> int:
    return EPS4.get((a, b, c, d), 0)


def eps3(a, b, c) -> int:
    """Spatial Levi-Civita on indices 1..3 (eps3(1,2,3) = +1)."""
    return EPS4.get((0, a, b, c), 0)


# wedge pairing <u,v> with u^v = <u,v> dx0^dx1^dx2^dx3, in the fixed basis
WEDGE_PAIRING = tuple(
    tuple(eps4(*AREA_BASIS[i], *AREA_BASIS[j]) for j in range(6)) for i in range(6)
)


def wedge_pairing(u, v):
    """<u, v> for 2-forms given by components in the fixed basis."""
    acc = 0
    for i in range(6):
        for j in range(6):
            w = WEDGE_PAIRING[i][j]
            if w:
                acc = acc + w * u[i] * v[j]
    return acc


def _norm_scalar(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class AreaOperator:
    """Linear map on 2-forms; mat[I][J] = kappa^{(pair J)}_{(pair I)}."""

    mat: tuple

    @staticmethod
    def from_rows(rows) -> "AreaOperator":
        m = tuple(tuple(_norm_scalar(x) for x in row) for row in rows)
        if len(m) != 6 or any(len(r) != 6 for r in m):
            raise ValueError("expected a 6x6 matrix")
        return AreaOperator(m)

    @staticmethod
    def zero() -> "AreaOperator":
        return AreaOperator(tuple((Fraction(0),) * 6 for _ in range(6)))

    @staticmethod
    def identity(scale=Fraction(1)) -> "AreaOperator":
        s = _norm_scalar(scale)
        z = s - s
        return AreaOperator(tuple(tuple(s if i == j else z for j in range(6))
                                  for i in range(6)))

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for row in self.mat for x in row)

    @property
    def has_complex(self) -> bool:
        return any(is_complex_scalar(x) for row in self.mat for x in row)

    def component(self, i: int, j: int, k: int, l: int):
        """kappa^{ij}_{kl} with antisymmetry applied to either index pair."""
        if i == j or k == l:
            zz = self.mat[0][0]
            return zz - zz
        J, s1 = PAIR_INDEX[(i, j)]
        I, s2 = PAIR_INDEX[(k, l)]
        v = self.mat[I][J]
        return v if s1 * s2 == 1 else -v

    @cached_property
    def dense(self) -> tuple:
        """All 256 components kappa^{ij}_{kl} as a nested 4x4x4x4 tuple."""
        zero = self.mat[0][0] - self.mat[0][0]
        out = [[[[zero] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                J, s1 = PAIR_INDEX[(i, j)]
                for k in range(4):
                    for l in range(4):
                        if k == l:
                            continue
                        I, s2 = PAIR_INDEX[(k, l)]
                        v = self.mat[I][J]
                        out[i][j][k][l] = v if s1 * s2 == 1 else -v
        return tuple(tuple(tuple(tuple(r) for r in p) for p in q) for q in out)

    def numpy(self) -> np.ndarray:
        if self.has_complex:
            return np.array([[complex(x) for x in row] for row in self.mat], dtype=complex)
        return np.array([[float(x) for x in row] for row in self.mat], dtype=float)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other: "AreaOperator") -> "AreaOperator":
        return AreaOperator(linalg.mat_add(self.mat, other.mat))

    def __sub__(self, other: "AreaOperator") -> "AreaOperator":
        return AreaOperator(linalg.mat_sub(self.mat, other.mat))

    def __neg__(self) -> "AreaOperator":
        return AreaOperator(tuple(tuple(-x for x in row) for row in self.mat))

    def scale(self, s) -> "AreaOperator":
        return AreaOperator(linalg.mat_scale(self.mat, _norm_scalar(s)))

    def compose(self, other: "AreaOperator") -> "AreaOperator":
        return AreaOperator(linalg.mat_mul(self.mat, other.mat))

    def trace(self):
        return sum(self.mat[i][i] for i in range(6))

    def det6(self):
        return linalg.det_ring(self.mat)

    def adjugate(self) -> "AreaOperator":
        return AreaOperator(linalg.adjugate_ring(self.mat))

    def inverse(self) -> "AreaOperator":
        d = self.det6()
        if (is_exact(d) and d == 0) or (not is_exact(d) and abs(complex(d)) == 0.0):
            raise SingularOperator("det6 = 0")
        one = d / d
        return self.adjugate().scale(one / d)

    def wedge_adjoint(self) -> "AreaOperator":
        mt = linalg.transpose(self.mat)
        # conjugation by the pairing matrix [[0, I3], [I3, 0]] swaps the
        # 3x3 quadrants; avoids building the pairing explicitly
        swapped = tuple(
            tuple(mt[(r + 3) % 6][(c + 3) % 6] for c in range(6)) for r in range(6)
        )
        return AreaOperator(swapped)

    def blocks(self) -> "ABCDBlocks":
        return blocks_from_kappa(self)

    def __eq__(self, other):
        if not isinstance(other, AreaOperator):
            return NotImplemented
        return self.mat == other.mat

    def isclose(self, other: "AreaOperator", rel: float = 1e-10) -> bool:
        a, b = self.numpy(), other.numpy()
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-30)
        return bool(np.max(np.abs(a - b)) <= rel * scale)

    def __hash__(self):
        return hash(self.mat)


@dataclass(frozen=True)
class ABCDBlocks:
    """The four 3x3 matrices representing kappa in a space/time split chart."""

    A: tuple
    B: tuple
    C: tuple
    D: tuple

    @staticmethod
    def make(A, B, C, D) -> "ABCDBlocks":
        def norm(m):
            m = tuple(tuple(_norm_scalar(x) for x in row) for row in m)
            if len(m) != 3 or any(len(r) != 3 for r in m):
                raise ValueError("blocks must be 3x3")
            return m
        return ABCDBlocks(norm(A), norm(B), norm(C), norm(D))

    def symmetric_criterion(self) -> bool:
        """A = A^T, B = B^T, C = D^T: the block form of skewon-freeness."""
        A, B, C, D = self.A, self.B, self.C, self.D
        for i in range(3):
            for j in range(3):
                if A[i][j] != A[j][i] or B[i][j] != B[j][i] or C[i][j] != D[j][i]:
                    return False
        return True


@dataclass(frozen=True)
class MediumDecomposition:
    """Principal/skewon/axion split: kappa = principal + skewon + axion_coeff*Id."""

    principal: AreaOperator
    skewon: AreaOperator
    axion_coeff: object

    def reconstruct(self) -> AreaOperator:
        return self.principal + self.skewon + AreaOperator.identity(self.axion_coeff)


# ---------------------------------------------------------------------------
# construction


def kappa_from_components(entries) -> AreaOperator:
    """Build an operator from (i, j, k, l, value) tuples.

    Redundant entries must agree under the antisymmetry relations;
    unspecified independent components default to 0.
    """
    vals: dict[tuple[int, int], object] = {}
    for (i, j, k, l, v) in entries:
        for idx in (i, j, k, l):
            if not 0 <= idx <= 3:
                raise ValueError(f"index {idx} out of range 0..3")
        v = _norm_scalar(v)
        if i == j or k == l:
            if v != 0:
                raise ConflictingComponent(
                    f"component ({i},{j},{k},{l}) must vanish by antisymmetry")
            continue
        J, s1 = PAIR_INDEX[(i, j)]
        I, s2 = PAIR_INDEX[(k, l)]
        canon = v if s1 * s2 == 1 else -v
        if (I, J) in vals and vals[(I, J)] != canon:
            raise ConflictingComponent(
                f"conflicting values for slot ({i},{j},{k},{l})")
        vals[(I, J)] = canon
    z = Fraction(0)
    return AreaOperator(tuple(tuple(vals.get((I, J), z) for J in range(6))
                              for I in range(6)))


def blocks_from_kappa(kappa: AreaOperator) -> ABCDBlocks:
    """Extract the space/time-split 3x3 blocks from the operator."""
    k = kappa.dense
    zero = kappa.mat[0][0] - kappa.mat[0][0]
    A = [[zero] * 3 for _ in range(3)]
    B = [[zero] * 3 for _ in range(3)]
    C = [[zero] * 3 for _ in range(3)]
    D = [[zero] * 3 for _ in range(3)]
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    for r in range(1, 4):
        for i in range(1, 4):
            C[r - 1][i - 1] = k[r][0][i][0]
            accB = zero
            accA = zero
            accD = zero
            for a in range(1, 4):
                for b in range(1, 4):
                    eb = eps3(r, a, b)
                    if eb:
                        accB = accB + eb * k[a][b][i][0]
                    ea = eps3(i, a, b)
                    if ea:
                        accA = accA + ea * k[r][0][a][b]
                    for m in range(1, 4):
                        for n in range(1, 4):
                            e1 = eps3(r, m, n)
                            if e1 and ea:
                                accD = accD + (e1 * ea) * k[m][n][a][b]
            B[r - 1][i - 1] = -half * accB
            A[r - 1][i - 1] = -half * accA
            D[r - 1][i - 1] = quarter * accD
    return ABCDBlocks(linalg.mat(A), linalg.mat(B), linalg.mat(C), linalg.mat(D))


def kappa_from_blocks(blocks: ABCDBlocks) -> AreaOperator:
    """Inverse of blocks_from_kappa; exact round-trip."""
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    rows = []
    for i in range(3):
        rows.append(tuple(C[j][i] for j in range(3)) + tuple(B[j][i] for j in range(3)))
    for i in range(3):
        rows.append(tuple(A[j][i] for j in range(3)) + tuple(D[j][i] for j in range(3)))
    return AreaOperator(tuple(rows))


# ---------------------------------------------------------------------------
# algebra, module-level spellings


def trace(kappa: AreaOperator):
    return kappa.trace()


def compose(a: AreaOperator, b: AreaOperator) -> AreaOperator:
    return a.compose(b)


def add(a: AreaOperator, b: AreaOperator) -> AreaOperator:
    return a + b


def scale(kappa: AreaOperator, s) -> AreaOperator:
    return kappa.scale(s)


def negate(kappa: AreaOperator) -> AreaOperator:
    return -kappa


def det6(kappa: AreaOperator):
    return kappa.det6()


def adjugate(kappa: AreaOperator) -> AreaOperator:
    return kappa.adjugate()


def inverse(kappa: AreaOperator) -> AreaOperator:
    return kappa.inverse()


def wedge_adjoint(kappa: AreaOperator) -> AreaOperator:
    return kappa.wedge_adjoint()


def decompose(kappa: AreaOperator) -> MediumDecomposition:
    """Split into principal + skewon + axion parts (real scalars only)."""
    if kappa.has_complex:
        raise ComplexUnsupported(
            "principal/skewon/axion decomposition is undefined for complex media")
    half = Fraction(1, 2) if kappa.exact else 0.5
    adj = kappa.wedge_adjoint()
    skewon = (kappa - adj).scale(half)
    tr = kappa.trace()
    sixth = Fraction(1, 6) if kappa.exact else (1.0 / 6.0)
    axion_coeff = tr * sixth
    principal = kappa - skewon - AreaOperator.identity(axion_coeff)
    return MediumDecomposition(principal, skewon, axion_coeff)


def _lambda2(J) -> tuple:
    """Induced action of the coordinate change on 2-form components."""
    out = []
    for (k, l) in AREA_BASIS:
        row = []
        for (c, d) in AREA_BASIS:
            row.append(J[c][k] * J[d][l] - J[d][k] * J[c][l])
        out.append(tuple(row))
    return tuple(out)


def transform(kappa: AreaOperator, J) -> AreaOperator:
    """Standard (2,2)-tensor transformation under the Jacobian J = dx/dx~.

    Rows of J are old coordinates, columns new ones: J[a][b] = dx^a/dx~^b.
    """
    J = tuple(tuple(_norm_scalar(x) for x in row) for row in J)
    exact = all(is_exact(x) for row in J for x in row)
    if exact:
        d = linalg.det_ring(J)
        if d == 0:
            raise SingularJacobian("det J = 0")
        Jinv = linalg.inverse_field(J)
    else:
        arr = np.array([[complex(x) for x in row] for row in J])
        if abs(np.linalg.det(arr)) == 0.0:
            raise SingularJacobian("det J = 0")
        inv = np.linalg.inv(arr)
        if np.max(np.abs(inv.imag)) == 0.0:
            inv = inv.real
        Jinv = tuple(tuple(inv[r, c] for c in range(4)) for r in range(4))
    W = _lambda2(J)
    Winv = _lambda2(Jinv)
    return AreaOperator(linalg.mat_mul(W, linalg.mat_mul(kappa.mat, Winv)))
