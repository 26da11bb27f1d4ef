"""Leading-order geometric-optics kernels.

For a covector xi the map L_xi sends a candidate polarisation covector
alpha to the 3-form xi ^ kappa(xi ^ alpha).  Its kernel always contains xi;
the dimension of a complement V_xi detects whether xi lies on the Fresnel
surface.  The computation follows the adapted-coordinates route: complete
xi to a basis with e^0 = xi, transform the medium, and read off the 3x3
Q-matrix whose rank decides everything.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import ZeroCovector
from .fresnel import TammRubilar, fresnel_eval, tamm_rubilar
from .metric_hodge import Covector4, Metric4, null_eval
from .scalars import is_exact
from .tensor_core import AreaOperator, EPS4_PERMS, PAIR_INDEX, decompose, transform

_RANK_TOL = 1e-9


def L_xi_apply(kappa: AreaOperator, xi: Covector4, alpha: Covector4) -> tuple:
    """xi ^ kappa(xi ^ alpha) as 4 components T_d in the dual-index basis.

    A 3-form t is stored as T_d = (1/6) eps^{dabc} t_{abc}; the wedge and the
    medium action are evaluated exactly in the fixed bases.
    """
    v = []
    for (a, b) in ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)):
        v.append(xi[a] * alpha[b] - xi[b] * alpha[a])
    w = linalg.mat_vec(kappa.mat, v)

    def w_at(b, c):
        if b == c:
            return None
        I, s = PAIR_INDEX[(b, c)]
        return w[I] if s == 1 else -w[I]

    zero = v[0] - v[0]
    out = [zero, zero, zero, zero]
    for sgn, (d, a, b, c) in EPS4_PERMS:
        if not xi[a]:
            continue
        wbc = w_at(b, c)
        if wbc:
            out[d] = out[d] + sgn * xi[a] * wbc
    half = Fraction(1, 2)
    return tuple(x * half for x in out)


@dataclass(frozen=True)
class KernelReport:
    """Kernel data of L_xi: dim V_xi = dim ker L_xi - 1 and the Q-matrix."""

    dim_ker_L: int
    dim_V: int
    Q: tuple
    kernel_basis: tuple
    det_q: object
    fresnel_value: object
    consistent: bool


def _adapted_basis(xi):
    """S with x~ = S x and dx~^0 proportional to xi; exact when xi is."""
    n = len(xi)
    mags = [abs(float(x)) for x in xi]
    m = max(range(n), key=lambda i: mags[i])
    perm = list(range(n))
    perm[0], perm[m] = perm[m], perm[0]
    xip = [xi[p] for p in perm]
    inv0 = 1 / (Fraction(xip[0]) if isinstance(xip[0], int) else xip[0])
    xin = [x * inv0 for x in xip]
    rows = []
    for r in range(n):
        if r == 0:
            rows.append(tuple(xin[perm.index(c)] for c in range(n)))
        else:
            src = perm[r]
            rows.append(tuple(1 if c == src else 0 for c in range(n)))
    return linalg.mat(rows)


def kernel_report(kappa: AreaOperator, xi: Covector4,
                  tr: TammRubilar | None = None) -> KernelReport:
    """Adapted-basis kernel analysis of L_xi, with the Fresnel cross-check."""
    if all(not x for x in xi):
        raise ZeroCovector("xi must be nonzero")
    exact = kappa.exact and all(is_exact(x) for x in xi)
    S = _adapted_basis(xi)
    if exact:
        J = linalg.inverse_field(S)
    else:
        inv = np.linalg.inv(np.array([[float(x) for x in row] for row in S]))
        J = tuple(tuple(float(inv[r, c]) for c in range(4)) for r in range(4))
    kt = transform(kappa, J).dense
    rows = []
    for i in range(1, 4):
        row = []
        for j in range(1, 4):
            acc = None
            for sgn, p in EPS4_PERMS:
                if p[0] != 0 or p[3] != j:
                    continue
                a, b = p[1], p[2]
                t = sgn * kt[0][i][a][b]
                acc = t if acc is None else acc + t
            row.append(acc)
        rows.append(tuple(row))
    Q = tuple(rows)
    if exact:
        rank = linalg.rank_field(Q)
        null_left = linalg.nullspace_field(linalg.transpose(Q))
        det_q = linalg.det_ring(Q)
    else:
        arr = np.array([[float(x) for x in row] for row in Q])
        sv = np.linalg.svd(arr, compute_uv=False)
        top = max(sv[0], 1e-300)
        rank = int(np.sum(sv > _RANK_TOL * top))
        null_left = [tuple(v) for v in
                     np.linalg.svd(arr.T)[2][rank:]] if rank < 3 else []
        det_q = float(np.linalg.det(arr))
    dim_v = 3 - rank
    basis = [tuple(xi)]
    St = linalg.transpose(S)
    for u in null_left:
        alpha_t = (0,) + tuple(u)
        basis.append(linalg.mat_vec(St, alpha_t))
    G = tr if tr is not None else tamm_rubilar(kappa)
    fval = fresnel_eval(G, xi)
    if exact:
        consistent = (det_q == 0) == (fval == 0)
    else:
        qscale = max(max(abs(float(x)) for x in row) for row in Q) or 1.0
        gscale = (max(abs(float(c)) for c in G.comps) or 1.0) * \
            max(abs(float(x)) for x in xi) ** 4
        consistent = (abs(float(det_q)) <= 1e-9 * qscale ** 3) == \
            (abs(float(fval)) <= 1e-9 * max(gscale, 1e-300))
    return KernelReport(dim_v + 1, dim_v, Q, tuple(basis), det_q, fval, consistent)


@dataclass(frozen=True)
class HodgeKernelReport:
    H: tuple
    spectrum: tuple
    kernel_basis: tuple


def hodge_kernel(g: Metric4, xi: Covector4) -> HodgeKernelReport:
    """The 4x4 matrix H^{ir} = g(xi,xi) g^{ir} - xi_a g^{ai} xi_b g^{br}.

    ker L_xi for the medium *_g equals the null space of H; on the null cone
    it is the g-orthogonal complement of xi.
    """
    if all(not x for x in xi):
        raise ZeroCovector("xi must be nonzero")
    gi = g.inv
    gxx = null_eval(g, xi)
    raised = linalg.mat_vec(gi, xi)
    H = tuple(tuple(gxx * gi[i][r] - raised[i] * raised[r] for r in range(4))
              for i in range(4))
    arr = np.array([[float(x) for x in row] for row in H])
    spectrum = tuple(float(x) for x in np.linalg.eigvalsh(arr))
    if g.exact and all(is_exact(x) for x in xi):
        basis = tuple(linalg.nullspace_field(H))
    else:
        u, s, vt = np.linalg.svd(arr)
        top = max(s[0], 1e-300)
        rank = int(np.sum(s > _RANK_TOL * top))
        basis = tuple(tuple(float(x) for x in v) for v in vt[rank:])
    return HodgeKernelReport(H, spectrum, basis)


def axion_test(kappa: AreaOperator, samples: int = 20, seed: int = 0) -> bool:
    """True iff the medium is a multiple of the identity (axion type).

    Decided by the decomposition; cross-checked by sampling dim V_xi at
    `samples` random covectors (3 everywhere iff axion type).
    """
    dec = decompose(kappa)
    flag = all(not x for row in dec.principal.mat for x in row) and \
        all(not x for row in dec.skewon.mat for x in row)
    rng = random.Random(seed)
    G = tamm_rubilar(kappa)
    saw_non3 = False
    for _ in range(samples):
        xi = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(4))
        if all(not x for x in xi):
            xi = (1, 0, 0, 0)
        rep = kernel_report(kappa, xi, tr=G)
        if rep.dim_V != 3:
            saw_non3 = True
            if flag:
                raise RuntimeError("axion decomposition contradicts sampled dim V")
    if not flag and not saw_non3:
        raise RuntimeError("sampled dim V contradicts non-axion decomposition")
    return flag
