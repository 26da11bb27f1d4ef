"""Closure-condition checks and metric reconstruction from skewon-free media.

A skewon-free medium with kappa^2 = -f Id (f > 0) is a multiple of the Hodge
star of a Lorentz metric; the metric is rebuilt from the space/time blocks
through a Schoenberg-Urbantke-style 4x4 matrix.  In exact mode the assembly
is done in a rational rescaling of that matrix (the normalising radicals are
an overall positive factor, and only the conformal class is determined), so
the determinant identity and the round-trip are checked with exact
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (Impossible, NotSkewonFree, NumericallyDegenerate,
                     PreconditionFailed, RelationViolated)
from .fresnel import tamm_rubilar
from .metric_hodge import Metric4, hodge_star, hodge_star_rational_part
from .scalars import is_exact, rational_sqrt, scalar_sign, sqrt_scalar
from .tensor_core import (ABCDBlocks, AreaOperator, blocks_from_kappa, decompose,
                          eps3, transform)

_FLOAT_TOL = 1e-10


@dataclass(frozen=True)
class ClosureReport:
    holds: bool
    f: object
    residual: float


def closure_check(kappa: AreaOperator) -> ClosureReport:
    """Does kappa^2 = -f Id hold with f = -trace(kappa^2)/6 > 0?"""
    k2 = kappa.compose(kappa)
    exact = kappa.exact
    sixth = Fraction(1, 6) if exact else (1.0 / 6.0)
    f = -(k2.trace() * sixth)
    resid_op = k2 + AreaOperator.identity(f)
    residual = max(abs(complex(x)) for row in resid_op.mat for x in row)
    if exact:
        holds = all(not x for row in resid_op.mat for x in row) and scalar_sign(f) > 0
    else:
        scale = max(abs(complex(x)) for row in k2.mat for x in row) or 1.0
        holds = residual <= _FLOAT_TOL * scale and float(f) > 0
    return ClosureReport(holds, f, float(residual))


def _blocks_criterion(blocks: ABCDBlocks, exact: bool) -> bool:
    if exact:
        return blocks.symmetric_criterion()
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    scale = max(abs(float(x)) for M in (A, B, C, D) for row in M for x in row) or 1.0
    for i in range(3):
        for j in range(3):
            if abs(float(A[i][j]) - float(A[j][i])) > _FLOAT_TOL * scale:
                return False
            if abs(float(B[i][j]) - float(B[j][i])) > _FLOAT_TOL * scale:
                return False
            if abs(float(C[i][j]) - float(D[j][i])) > _FLOAT_TOL * scale:
                return False
    return True


def skewon_free_check(kappa: AreaOperator) -> bool:
    """Vanishing skewon part; the block criterion is asserted equivalent."""
    dec = decompose(kappa)
    exact = kappa.exact
    if exact:
        via_decomp = all(not x for row in dec.skewon.mat for x in row)
    else:
        scale = max(abs(float(x)) for row in kappa.mat for x in row) or 1.0
        via_decomp = max(abs(float(x)) for row in dec.skewon.mat for x in row) \
            <= _FLOAT_TOL * scale
    via_blocks = _blocks_criterion(blocks_from_kappa(kappa), exact)
    if via_decomp != via_blocks:
        raise RuntimeError("skewon criteria disagree; conventions broken")
    return via_decomp


def diagonalize_A(kappa: AreaOperator):
    """Spatial rotation J = blockdiag(1, P^T) making the A-block diagonal.

    P is orthogonal with det +1 (float spectral decomposition; exact inputs
    with an already-diagonal A return the identity).
    """
    if not skewon_free_check(kappa):
        raise NotSkewonFree("diagonalize_A requires a skewon-free medium")
    A = blocks_from_kappa(kappa).A
    if all(not A[i][j] for i in range(3) for j in range(3) if i != j):
        one, zero = Fraction(1), Fraction(0)
        return tuple(tuple(one if i == j else zero for j in range(4)) for i in range(4))
    arr = np.array([[float(x) for x in row] for row in A])
    _, vecs = np.linalg.eigh(0.5 * (arr + arr.T))
    P = vecs.T
    if np.linalg.det(P) < 0:
        P = P.copy()
        P[0, :] = -P[0, :]
    J = np.eye(4)
    J[1:, 1:] = P.T
    return tuple(tuple(float(J[i, j]) for j in range(4)) for i in range(4))


def _spatial_rank_chart(kappa: AreaOperator):
    """(J, rank of A) bringing A to diagonal form: the Lemma's case analysis."""
    blocks = blocks_from_kappa(kappa)
    A = blocks.A
    exact = kappa.exact
    if exact:
        if linalg.det_ring(A) != 0:
            return linalg.identity(4), 3
        S, D = linalg.congruence_diagonalize(A)
        diag = [D[i][i] for i in range(3)]
        nz = [i for i, d in enumerate(diag) if d]
        rank = len(nz)
        if rank in (0, 2):
            case = "D" if rank == 0 else "B"
            raise Impossible(
                f"A-block rank {rank} (Case {case}) contradicts kappa^2 = -f Id "
                "for a real skewon-free medium")
        # permute the nonzero eigenvalue to the first spatial slot
        order = nz + [i for i in range(3) if i not in nz]
        P = tuple(tuple(Fraction(1) if order[r] == c else Fraction(0)
                        for c in range(3)) for r in range(3))
        T = linalg.mat_mul(P, S)       # spatial part of dx~/dx
        full = [[Fraction(0)] * 4 for _ in range(4)]
        full[0][0] = Fraction(1)
        for r in range(3):
            for c in range(3):
                full[r + 1][c + 1] = T[r][c]
        shear = [[Fraction(1) if i == j else Fraction(0) for j in range(4)]
                 for i in range(4)]
        shear[0][3] = Fraction(1)      # x~^0 = x^0 + x^3
        fwd = linalg.mat_mul(linalg.mat(shear), linalg.mat(full))
        return linalg.inverse_field(fwd), 1
    arr = np.array([[float(x) for x in row] for row in A])
    scale = max(np.max(np.abs(arr)), 1e-300)
    if abs(np.linalg.det(arr)) > 1e-9 * scale ** 3:
        return tuple(tuple(float(x) for x in row) for row in np.eye(4)), 3
    w, vecs = np.linalg.eigh(0.5 * (arr + arr.T))
    nz = [i for i in range(3) if abs(w[i]) > 1e-9 * scale]
    rank = len(nz)
    if rank in (0, 2):
        case = "D" if rank == 0 else "B"
        raise Impossible(f"A-block rank {rank} (Case {case}) is not realisable")
    P = vecs.T
    order = nz + [i for i in range(3) if i not in nz]
    P = P[order, :]
    if np.linalg.det(P) < 0:
        P[2, :] = -P[2, :]
    fwd = np.eye(4)
    fwd[1:, 1:] = P
    shear = np.eye(4)
    shear[0, 3] = 1.0
    fwd = shear @ fwd
    J = np.linalg.inv(fwd)
    return tuple(tuple(float(J[i, j]) for j in range(4)) for i in range(4)), 1


def normalize_chart(kappa: AreaOperator):
    """Jacobian of a chart in which the A-block is invertible.

    Requires a skewon-free medium with kappa^2 = -Id.  Case A returns the
    identity; a rank-1 A-block is first diagonalised, permuted to
    diag(a1, 0, 0), then fixed by the shear x~^0 = x^0 + x^3; ranks 2 and 0
    are impossible for real media and raise Impossible.
    """
    if not skewon_free_check(kappa):
        raise PreconditionFailed("normalize_chart requires a skewon-free medium")
    rep = closure_check(kappa)
    one_ok = rep.f == 1 if kappa.exact else abs(float(rep.f) - 1.0) <= 1e-9
    if not rep.holds or not one_ok:
        raise PreconditionFailed("normalize_chart requires kappa^2 = -Id")
    J, _rank = _spatial_rank_chart(kappa)
    newA = blocks_from_kappa(transform(kappa, J)).A
    if kappa.exact:
        if linalg.det_ring(newA) == 0:
            raise Impossible("shear failed to restore invertibility; "
                             "input is not a closure medium")
    else:
        arr = np.array([[float(x) for x in row] for row in newA])
        if abs(np.linalg.det(arr)) <= 1e-12 * max(np.max(np.abs(arr)), 1e-300) ** 3:
            raise NumericallyDegenerate("transformed A-block numerically singular")
    return J


@dataclass(frozen=True)
class KRelationsReport:
    K: tuple
    checked: tuple


def K_relations_check(kappa: AreaOperator) -> KRelationsReport:
    """Verify the block relations through K = C A.

    For a skewon-free medium with invertible A-block these relations are
    exactly the block form of kappa^2 = -Id, so a medium merely claiming
    closure gets a RelationViolated naming the failing identity.
    """
    if not skewon_free_check(kappa):
        raise PreconditionFailed("K relations require a skewon-free medium")
    exact = kappa.exact
    blocks = blocks_from_kappa(kappa)
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    if exact:
        if linalg.det_ring(A) == 0:
            raise PreconditionFailed("A-block must be invertible")
        Ainv = linalg.inverse_field(A)
    else:
        arr = np.array([[float(x) for x in row] for row in A])
        if abs(np.linalg.det(arr)) <= 1e-12 * max(np.max(np.abs(arr)), 1e-300) ** 3:
            raise PreconditionFailed("A-block must be invertible")
        inv = np.linalg.inv(arr)
        Ainv = tuple(tuple(float(inv[i, j]) for j in range(3)) for i in range(3))
    K = linalg.mat_mul(C, A)

    def close_mat(X, Y, name):
        if exact:
            if any(X[i][j] != Y[i][j] for i in range(3) for j in range(3)):
                raise RelationViolated(name)
        else:
            sc = max(abs(float(x)) for M in (X, Y) for row in M for x in row) or 1.0
            if any(abs(float(X[i][j]) - float(Y[i][j])) > 1e-9 * sc
                   for i in range(3) for j in range(3)):
                raise RelationViolated(name)

    Kt = linalg.transpose(K)
    close_mat(K, tuple(tuple(-x for x in row) for row in Kt), "K antisymmetric")
    close_mat(C, linalg.mat_mul(K, Ainv), "C = K A^-1")
    close_mat(D, tuple(tuple(-x for x in row) for row in linalg.mat_mul(Ainv, K)),
              "D = -A^-1 K")
    KA = linalg.mat_mul(K, Ainv)
    KA2 = linalg.mat_mul(KA, KA)
    eye = linalg.identity(3)
    target = tuple(tuple(-x for x in row)
                   for row in linalg.mat_mul(Ainv, linalg.mat_add(eye, KA2)))
    close_mat(B, target, "B = -A^-1 (Id + (K A^-1)^2)")
    return KRelationsReport(K, ("K antisymmetric", "C = K A^-1",
                                "D = -A^-1 K", "B = -A^-1 (Id + (K A^-1)^2)"))


@dataclass(frozen=True)
class ReconstructedMetric:
    g: Metric4
    sign_factor: int
    star_match: object
    star_match_squared: object
    chart_jacobian: tuple
    su_det_identity: bool
    f: object


def _kvector(A, K):
    half = Fraction(1, 2)
    out = []
    for i in range(3):
        acc = None
        for b in range(3):
            s = None
            for c in range(3):
                for d in range(3):
                    e = eps3(b + 1, c + 1, d + 1)
                    if e:
                        t = e * K[c][d]
                        s = t if s is None else s + t
            if s is not None and A[i][b]:
                t = A[i][b] * s
                acc = t if acc is None else acc + t
        out.append(acc * half if acc is not None else A[0][0] - A[0][0])
    return tuple(out)


def reconstruct_metric(kappa: AreaOperator) -> ReconstructedMetric:
    """Rebuild a Lorentz metric with kappa = star_match * *_g.

    Pipeline: closure and skewon checks, chart normalisation when the
    A-block is singular, Schoenberg-Urbantke assembly, signature fix to
    (-+++), pull-back to the original chart, and an exact verification that
    kappa is a multiple of the reconstructed Hodge star.
    """
    if not skewon_free_check(kappa):
        raise PreconditionFailed("reconstruction requires a skewon-free medium")
    rep = closure_check(kappa)
    if not rep.holds:
        raise PreconditionFailed("closure condition fails; medium is birefringent")
    f = rep.f
    exact = kappa.exact
    J, _ = _spatial_rank_chart(kappa)
    kt = transform(kappa, J)
    blocks = blocks_from_kappa(kt)
    A, C = blocks.A, blocks.C
    K = linalg.mat_mul(C, A)
    kvec = _kvector(A, K)
    if exact:
        detA = linalg.det_ring(A)
        if detA == 0:
            raise Impossible("A-block singular after chart normalisation")
        detA_inv = Fraction(1) / detA if isinstance(detA, Fraction) else 1 / detA
        G = [[None] * 4 for _ in range(4)]
        G[0][0] = detA
        for i in range(3):
            G[0][i + 1] = G[i + 1][0] = kvec[i]
        for i in range(3):
            for j in range(3):
                G[i + 1][j + 1] = -(f * A[i][j]) + detA_inv * kvec[i] * kvec[j]
        Gm = linalg.mat(G)
        detG = linalg.det_ring(Gm)
        su_ok = detG == -(detA * detA) * (f * f * f)
        if not su_ok:
            raise NumericallyDegenerate("Schur-complement determinant identity failed")
        Ginv = linalg.inverse_field(Gm)
        pos, neg, zero = linalg.inertia_sym(Ginv)
        if zero or {pos, neg} != {1, 3}:
            raise NumericallyDegenerate("reconstructed metric is not Lorentzian")
        sigma = 1 if neg == 1 else -1
        gm_t = linalg.mat_scale(Ginv, Fraction(sigma))
        Jinv = linalg.inverse_field(J)
        g_mat = linalg.mat_mul(linalg.transpose(Jinv), linalg.mat_mul(gm_t, Jinv))
        g = Metric4.make(g_mat)
        R, absdet = hodge_star_rational_part(g)
        T = kappa.compose(R.inverse())
        m = T.mat[0][0]
        for i in range(6):
            for j in range(6):
                expect = m if i == j else 0
                if T.mat[i][j] != expect:
                    raise NumericallyDegenerate("kappa is not proportional to *_g")
        if m * m != f * absdet:
            raise NumericallyDegenerate("star proportionality constant mismatch")
        sm_sq = f
        root = rational_sqrt(f) if isinstance(f, Fraction) else None
        sm = (scalar_sign(m) * root) if root is not None \
            else scalar_sign(m) * sqrt_scalar(f)
        return ReconstructedMetric(g, sigma, sm, sm_sq, J, True, f)
    # float path: literal SU matrix with its normalising radicals
    Af = np.array([[float(x) for x in row] for row in A])
    kf = np.array([float(x) for x in kvec])
    detA = float(np.linalg.det(Af))
    if abs(detA) <= 1e-12 * max(np.max(np.abs(Af)), 1e-300) ** 3:
        raise Impossible("A-block singular after chart normalisation")
    ff = float(f)
    s = 1.0 / math.sqrt(ff)
    G = np.zeros((4, 4))
    G[0, 0] = detA * s ** 3
    G[0, 1:] = G[1:, 0] = kf * s ** 3
    G[1:, 1:] = -s * Af + np.outer(s ** 3 * kf, kf) / detA
    G = G / math.sqrt(abs(detA * s ** 3))
    detG = float(np.linalg.det(G))
    if abs(detG + 1.0) > 1e-8:
        raise NumericallyDegenerate(f"det G = {detG}, expected -1")
    Ginv = np.linalg.inv(G)
    ev = np.linalg.eigvalsh(Ginv)
    neg = int((ev < 0).sum())
    if neg not in (1, 3):
        raise NumericallyDegenerate("reconstructed metric is not Lorentzian")
    sigma = 1 if neg == 1 else -1
    gm_t = sigma * Ginv
    Jf = np.array([[float(x) for x in row] for row in J])
    Jinv = np.linalg.inv(Jf)
    g_mat = Jinv.T @ gm_t @ Jinv
    g_mat = 0.5 * (g_mat + g_mat.T)
    g = Metric4.make(tuple(tuple(float(x) for x in row) for row in g_mat))
    star = hodge_star(g)
    kn = kappa.numpy()
    sn = star.numpy()
    idx = np.unravel_index(np.argmax(np.abs(sn)), sn.shape)
    m = kn[idx] / sn[idx]
    if not np.allclose(kn, m * sn, rtol=1e-7, atol=1e-7 * max(np.max(np.abs(kn)), 1e-300)):
        raise NumericallyDegenerate("kappa is not proportional to *_g")
    return ReconstructedMetric(g, sigma, float(m), float(m * m), J,
                               abs(detG + 1.0) <= 1e-8, ff)


def fresnel_lightcone_check(kappa: AreaOperator, g: Metric4) -> bool:
    """Does the quartic of kappa reproduce the light cone of g?

    True iff the Tamm-Rubilar density of kappa is a nonzero multiple lambda
    of that of *_g and kappa = lambda^(-1/3) *_g; False on any mismatch
    (including violated preconditions).
    """
    try:
        if not skewon_free_check(kappa):
            return False
    except Exception:
        return False
    dec = decompose(kappa)
    exact = kappa.exact and g.exact
    if exact:
        if dec.axion_coeff != 0:
            return False
    else:
        scale = max(abs(float(x)) for row in kappa.mat for x in row) or 1.0
        if abs(float(dec.axion_coeff)) > 1e-9 * scale:
            return False
    star = hodge_star(g)
    Gk = tamm_rubilar(kappa)
    Gs = tamm_rubilar(star)
    if exact:
        lam = Gk.proportionality(Gs)        # Gs = lam * Gk
        if lam is None or not lam:
            return False
        m = None
        for i in range(6):
            for j in range(6):
                if star.mat[i][j]:
                    m = kappa.mat[i][j] / star.mat[i][j]
                    break
            if m is not None:
                break
        if m is None:
            return False
        for i in range(6):
            for j in range(6):
                if kappa.mat[i][j] != m * star.mat[i][j]:
                    return False
        return m * m * m * lam == 1
    kn = kappa.numpy()
    sn = star.numpy()
    gk = np.array([float(x) for x in Gk.comps])
    gs = np.array([float(x) for x in Gs.comps])
    if np.max(np.abs(gk)) == 0:
        return False
    lam_idx = int(np.argmax(np.abs(gk)))
    lam = gs[lam_idx] / gk[lam_idx]
    if lam == 0 or not np.allclose(gs, lam * gk, rtol=1e-7,
                                   atol=1e-9 * max(np.max(np.abs(gs)), 1e-300)):
        return False
    idx = np.unravel_index(np.argmax(np.abs(sn)), sn.shape)
    m = kn[idx] / sn[idx]
    if not np.allclose(kn, m * sn, rtol=1e-7,
                       atol=1e-9 * max(np.max(np.abs(kn)), 1e-300)):
        return False
    return abs(m ** 3 * lam - 1.0) <= 1e-7
