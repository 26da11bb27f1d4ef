"""Tamm-Rubilar tensor densities and Fresnel surfaces.

The rank-4 density is built from a triple contraction of the medium against
three Levi-Civita symbols, scaled by 1/48, then symmetrised with the 1/4!
average over index permutations.  Its diagonal values define the quartic
Fresnel surface in each cotangent fiber.

The contraction is organised so that for fixed output index (i,j,k,l) only
216 signed triple products survive; exact rational media additionally go
through an integer-cleared fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, permutations
import random

import numpy as np

from . import linalg, tensor_core
from .errors import Degenerate, DegeneratePolynomial, PreconditionFailed
from .metric_hodge import Metric4
from .scalars import is_exact, sqrt_scalar
from .tensor_core import EPS4_PERMS, AreaOperator, eps4

MULTI4 = tuple(combinations_with_replacement(range(4), 4))   # 35 sorted multi-indices
MULTI4_POS = {m: i for i, m in enumerate(MULTI4)}


def _multinomial(m) -> int:
    out = 24
    for v in set(m):
        c = m.count(v)
        out //= math.factorial(c)
    return out


MULTINOMIAL = tuple(_multinomial(m) for m in MULTI4)

# index bookkeeping for the contraction: for output index k, b5 runs over the
# complement of k and (b1, b2) over the two orderings of what remains
_B5 = tuple(tuple(b for b in range(4) if b != k) for k in range(4))
_PAIRS2 = {}
for _k in range(4):
    for _b5 in _B5[_k]:
        _rest = [x for x in range(4) if x not in (_k, _b5)]
        _b1, _b2 = _rest
        _PAIRS2[(_k, _b5)] = ((eps4(_b1, _b2, _b5, _k), _b1, _b2),
                              (eps4(_b2, _b1, _b5, _k), _b2, _b1))


def _g0_contract(k):
    """Unsymmetrised density times 48, as a nested 4^4 list; generic scalars."""
    zero = k[0][1][0][1] - k[0][1][0][1]
    F = [[[[None] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    for kk in range(4):
        for b5 in _B5[kk]:
            (s1, b1, b2), (s2, b3, b4) = _PAIRS2[(kk, b5)]
            for x in range(4):
                kx = k[x]
                for y in range(4):
                    v1 = kx[y][b1][b2]
                    v2 = kx[y][b3][b4]
                    acc = zero
                    if v1:
                        acc = acc + s1 * v1
                    if v2:
                        acc = acc + s2 * v2
                    F[kk][b5][x][y] = acc
    G0 = [[[[zero] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for j in range(4):
            for kk in range(4):
                Fk = F[kk]
                for ll in range(4):
                    Fl = F[ll]
                    acc = zero
                    for sa, (a1, a2, a3, a4) in EPS4_PERMS:
                        ka4j = k[a4][j]
                        for b5 in _B5[kk]:
                            f1 = Fk[b5][a1][a2]
                            if not f1:
                                continue
                            row = ka4j[b5]
                            for b6 in _B5[ll]:
                                f2 = Fl[b6][a3][i]
                                if not f2:
                                    continue
                                v = row[b6]
                                if v:
                                    acc = acc + sa * (f1 * f2 * v)
                    G0[i][j][kk][ll] = acc
    return G0


def _dense_as_int(kappa: AreaOperator):
    """(integer dense array, common denominator) or None when not rational."""
    den = 1
    for row in kappa.mat:
        for v in row:
            if isinstance(v, int):
                continue
            if not isinstance(v, Fraction):
                return None
            den = den * v.denominator // math.gcd(den, v.denominator)
    dense = kappa.dense
    k = [[[[int(dense[i][j][a][b] * den) for b in range(4)] for a in range(4)]
          for j in range(4)] for i in range(4)]
    return k, den


def tamm_rubilar_raw(kappa: AreaOperator) -> tuple:
    """Unsymmetrised rank-4 density; nested 4x4x4x4 tuple of scalars."""
    fast = _dense_as_int(kappa)
    if fast is not None:
        ki, den = fast
        g0 = _g0_contract(ki)
        s = Fraction(1, 48 * den ** 3)
        return tuple(tuple(tuple(tuple(v * s for v in r) for r in p) for p in q)
                     for q in g0)
    g0 = _g0_contract(kappa.dense)
    s = Fraction(1, 48)
    return tuple(tuple(tuple(tuple(v * s for v in r) for r in p) for p in q)
                 for q in g0)


@dataclass(frozen=True)
class TammRubilar:
    """Fully symmetric rank-4 contravariant density, weight 1.

    comps holds the 35 independent components in MULTI4 order.
    """

    comps: tuple

    def component(self, i: int, j: int, k: int, l: int):
        return self.comps[MULTI4_POS[tuple(sorted((i, j, k, l)))]]

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for x in self.comps)

    def is_zero(self) -> bool:
        return all(not x for x in self.comps)

    def scale(self, s) -> "TammRubilar":
        return TammRubilar(tuple(s * x for x in self.comps))

    def __add__(self, other: "TammRubilar") -> "TammRubilar":
        return TammRubilar(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "TammRubilar") -> "TammRubilar":
        return TammRubilar(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "TammRubilar":
        return TammRubilar(tuple(-a for a in self.comps))

    def proportionality(self, other: "TammRubilar"):
        """ratio with other = ratio * self, or None (exact scalars)."""
        ratio = None
        for a, b in zip(self.comps, other.comps):
            if a:
                ratio = b / a
                break
            if b:
                return None
        if ratio is None:
            return None
        for a, b in zip(self.comps, other.comps):
            if b != ratio * a:
                return None
        return ratio

    @cached_property
    def dense(self) -> tuple:
        return tuple(tuple(tuple(tuple(
            self.comps[MULTI4_POS[tuple(sorted((i, j, k, l)))]]
            for l in range(4)) for k in range(4)) for j in range(4)) for i in range(4))

    def transform(self, J) -> "TammRubilar":
        """Weight-1 density law under the Jacobian J = dx/dx~."""
        J = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in row) for row in J)
        detJ = linalg.det_ring(J)
        exact = all(is_exact(x) for row in J for x in row)
        if exact:
            Jinv = linalg.inverse_field(J)
        else:
            inv = np.linalg.inv(np.array([[float(x) for x in row] for row in J]))
            Jinv = tuple(tuple(inv[r, c] for c in range(4)) for r in range(4))
        dense = self.dense
        comps = []
        for m in MULTI4:
            acc = None
            for a in range(4):
                ja = Jinv[m[0]][a]
                if not ja:
                    continue
                for b in range(4):
                    jb = Jinv[m[1]][b]
                    if not jb:
                        continue
                    for c in range(4):
                        jc = Jinv[m[2]][c]
                        if not jc:
                            continue
                        for d in range(4):
                            jd = Jinv[m[3]][d]
                            if not jd:
                                continue
                            t = ja * jb * jc * jd * dense[a][b][c][d]
                            acc = t if acc is None else acc + t
            comps.append(detJ * acc if acc is not None else detJ - detJ)
        return TammRubilar(tuple(comps))


def tamm_rubilar(kappa: AreaOperator) -> TammRubilar:
    """Symmetric part of the raw density: the Tamm-Rubilar tensor density."""
    g0 = tamm_rubilar_raw(kappa)
    comps = []
    for m in MULTI4:
        distinct = set(permutations(m))
        acc = None
        for p in distinct:
            t = g0[p[0]][p[1]][p[2]][p[3]]
            acc = t if acc is None else acc + t
        comps.append(acc * Fraction(1, len(distinct)))
    return TammRubilar(tuple(comps))


def g_tensor(g: Metric4, kappa: AreaOperator) -> TammRubilar:
    """The symmetric 4-tensor obtained by dividing the density by sqrt|det g|."""
    if (g.exact and g.det == 0):
        raise Degenerate("det g = 0")
    tr = tamm_rubilar(kappa)
    if g.exact and tr.exact:
        s = sqrt_scalar(abs(g.det))
        inv = 1 / s if not isinstance(s, Fraction) else Fraction(1) / s
        return tr.scale(inv)
    return tr.scale(1.0 / math.sqrt(abs(float(g.det))))


def fresnel_eval(G: TammRubilar, xi):
    """Full quartic contraction G^{ijkl} xi_i xi_j xi_k xi_l."""
    acc = None
    for mult, m, comp in zip(MULTINOMIAL, MULTI4, G.comps):
        if not comp:
            continue
        t = comp * xi[m[0]] * xi[m[1]] * xi[m[2]] * xi[m[3]] * mult
        acc = t if acc is None else acc + t
    if acc is None:
        z = G.comps[0] - G.comps[0]
        return z
    return acc


# ---------------------------------------------------------------------------
# the quartic in xi0 along a fixed spatial direction


@dataclass(frozen=True)
class Quartic1D:
    """Coefficients (c4, c3, c2, c1, c0) of the restriction to a xi0 line."""

    c: tuple

    def eval(self, x):
        c4, c3, c2, c1, c0 = self.c
        return (((c4 * x + c3) * x + c2) * x + c1) * x + c0

    def as_floats(self) -> tuple:
        return tuple(float(x) for x in self.c)


def _cubic_real_roots(a2, a1, a0):
    """Real roots of t^3 + a2 t^2 + a1 t + a0 (float, Cardano/trig)."""
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    shift = -a2 / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    roots = []
    if disc > 0:
        u = -q / 2.0 + math.sqrt(disc)
        v = -q / 2.0 - math.sqrt(disc)
        roots.append(math.copysign(abs(u) ** (1 / 3), u)
                     + math.copysign(abs(v) ** (1 / 3), v) + shift)
    else:
        r = math.sqrt(max(-(p / 3.0) ** 3, 0.0))
        if r == 0.0:
            roots.append(shift)
        else:
            phi = math.acos(max(-1.0, min(1.0, -q / (2.0 * r))))
            m = 2.0 * math.sqrt(-p / 3.0)
            for kk in range(3):
                roots.append(m * math.cos((phi + 2.0 * math.pi * kk) / 3.0) + shift)
    return roots


def _quartic_discriminant(c4, c3, c2, c1, c0):
    a, b, c, d, e = c4, c3, c2, c1, c0
    return (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
            + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
            + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2
            + 18 * b**3 * c * d * e - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e
            + b**2 * c**2 * d**2)


def _quadratic_roots(b, c):
    """Complex roots of y^2 + b y + c."""
    disc = complex(b * b - 4.0 * c)
    s = np.sqrt(disc)
    return [(-b + s) / 2.0, (-b - s) / 2.0]


def quartic_roots(coeffs, cluster_tol: float = 1e-8):
    """Roots (with multiplicity) of a degree <= 4 polynomial, float mode.

    Ferrari's resolvent-cubic closed form, falling back to companion-matrix
    eigenvalues when the discriminant is within 1e-12 of zero.  Returns a
    list of (complex root, multiplicity) clustered at cluster_tol.
    """
    c = [float(x) for x in coeffs]
    if all(x == 0.0 for x in c):
        raise DegeneratePolynomial("all five coefficients vanish")
    scale = max(abs(x) for x in c)
    roots: list[complex]
    if abs(c[0]) <= 1e-14 * scale:
        nz = [x for x in c if abs(x) > 1e-14 * scale]
        trimmed = c[:]
        while trimmed and abs(trimmed[0]) <= 1e-14 * scale:
            trimmed.pop(0)
        roots = list(np.roots(trimmed)) if len(trimmed) > 1 else []
    else:
        disc = _quartic_discriminant(*c)
        if abs(disc) <= 1e-12 * scale ** 6:
            roots = list(np.roots(c))
        else:
            a3, a2, a1, a0 = (c[1] / c[0], c[2] / c[0], c[3] / c[0], c[4] / c[0])
            p = a2 - 3.0 * a3 * a3 / 8.0
            q = a1 - a3 * a2 / 2.0 + a3 ** 3 / 8.0
            r = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 ** 4 / 256.0
            shift = -a3 / 4.0
            if abs(q) <= 1e-14 * max(1.0, abs(p), abs(r)):
                ys = []
                for t in _quadratic_roots(p, r):
                    s = np.sqrt(complex(t))
                    ys.extend([s, -s])
            else:
                cubics = _cubic_real_roots(2.0 * p, p * p - 4.0 * r, -q * q)
                u0 = max(cubics)
                if u0 <= 0:
                    ys = [y for y in np.roots([1.0, 0.0, p, q, r])]
                else:
                    w = math.sqrt(u0)
                    A = (p + u0 - q / w) / 2.0
                    B = (p + u0 + q / w) / 2.0
                    ys = _quadratic_roots(w, A) + _quadratic_roots(-w, B)
            roots = [y + shift for y in ys]
    # multiplicity clustering
    out: list[list] = []
    for z in sorted(roots, key=lambda v: (round(v.real, 12), round(v.imag, 12))):
        for slot in out:
            if abs(z - slot[0]) <= cluster_tol * max(1.0, abs(z)):
                slot[1] += 1
                slot[0] = slot[0] + (z - slot[0]) / slot[1]
                break
        else:
            out.append([z, 1])
    return [(complex(z), m) for z, m in out]


def _poly_divmod(u, v):
    """Division of coefficient lists (descending), exact scalars."""
    u = list(u)
    q = [Fraction(0)] * max(len(u) - len(v) + 1, 0)
    while len(u) >= len(v) and any(u):
        if not u[0]:
            u.pop(0)
            continue
        f = u[0] / v[0]
        shift = len(u) - len(v)
        q[len(q) - 1 - shift] = f
        for i in range(len(v)):
            u[i] = u[i] - f * v[i]
        u.pop(0)
    while u and not u[0]:
        u.pop(0)
    return q, u


def _poly_gcd(u, v):
    u = [x for x in u]
    v = [x for x in v]
    while v and any(v):
        _, r = _poly_divmod(u, v)
        u, v = v, r
    if not u:
        return [Fraction(1)]
    lead = u[0]
    return [x / lead for x in u]


def _poly_deriv(u):
    n = len(u) - 1
    return [c * (n - i) for i, c in enumerate(u[:-1])]


def _poly_sub(u, v):
    pad = len(u) - len(v)
    if pad >= 0:
        vv = [Fraction(0)] * pad + list(v)
        out = [a - b for a, b in zip(u, vv)]
    else:
        uu = [Fraction(0)] * (-pad) + list(u)
        out = [a - b for a, b in zip(uu, v)]
    while out and not out[0]:
        out.pop(0)
    return out


def exact_multiplicity_structure(coeffs):
    """Square-free decomposition of an exact univariate polynomial.

    Yun's algorithm over Q; returns [(multiplicity, monic factor coeffs)]
    for the factors of degree >= 1.
    """
    f = [Fraction(x) for x in coeffs]
    while f and not f[0]:
        f.pop(0)
    if not f:
        raise DegeneratePolynomial("zero polynomial")
    if len(f) == 1:
        return []
    df = _poly_deriv(f)
    a = _poly_gcd(f, df)
    b, _ = _poly_divmod(f, a)
    c, _ = _poly_divmod(df, a)
    d = _poly_sub(c, _poly_deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        ai = _poly_gcd(b, d) if d else [x / b[0] for x in b]
        if len(ai) > 1:
            out.append((i, ai))
        b, _ = _poly_divmod(b, ai)
        if d:
            c, _ = _poly_divmod(d, ai)
        else:
            c = []
        d = _poly_sub(c, _poly_deriv(b)) if (c or len(b) > 1) else []
        i += 1
    return out


def quartic_in_xi0(G: TammRubilar, q) -> tuple[Quartic1D, list]:
    """Restrict the quartic to (xi0, q) and solve for xi0.

    Returns the five coefficients and the root multiset.  With exact
    coefficients the multiplicities come from the exact square-free
    factorisation (each factor then has simple, well-conditioned roots);
    float coefficients go through the closed-form solver with clustering.
    """
    zero = G.comps[0] - G.comps[0]
    cs = [zero, zero, zero, zero, zero]   # c4..c0 by number of 0-indices
    for mult, m, comp in zip(MULTINOMIAL, MULTI4, G.comps):
        if not comp:
            continue
        nzero = m.count(0)
        term = comp * mult
        for idx in m:
            if idx != 0:
                term = term * q[idx - 1]
        cs[4 - nzero] = cs[4 - nzero] + term
    quartic = Quartic1D(tuple(cs))
    if all(not x for x in cs):
        raise DegeneratePolynomial("all five coefficients vanish along this direction")
    if all(is_exact(x) and isinstance(x, (int, Fraction)) for x in cs):
        roots = []
        for m, factor in exact_multiplicity_structure(cs):
            fl = [float(x) for x in factor]
            for z in (np.roots(fl) if len(fl) > 1 else []):
                # one Newton step against the (simple-rooted) factor
                fz = np.polyval(fl, z)
                dz = np.polyval(np.polyder(fl), z)
                if dz != 0:
                    z = z - fz / dz
                roots.append((complex(z), m))
        roots.sort(key=lambda t: (t[0].real, t[0].imag))
        return quartic, roots
    return quartic, quartic_roots(quartic.as_floats())


# ---------------------------------------------------------------------------
# polarisation identity


def polarization_reconstruct(diag_eval) -> TammRubilar:
    """Recover a symmetric rank-4 tensor from its diagonal values.

    diag_eval maps a covector (4-tuple) to a scalar; the signed sum over all
    sign patterns theta in {+-1}^4 recovers each component.
    """
    signs = [(t0, t1, t2, t3) for t0 in (1, -1) for t1 in (1, -1)
             for t2 in (1, -1) for t3 in (1, -1)]
    comps = []
    w = Fraction(1, 384)   # 1 / (4! * 2^4)
    for m in MULTI4:
        acc = None
        for th in signs:
            xi = [0, 0, 0, 0]
            for slot, idx in enumerate(m):
                xi[idx] += th[slot]
            v = diag_eval(tuple(xi))
            t = v * (th[0] * th[1] * th[2] * th[3])
            acc = t if acc is None else acc + t
        comps.append(acc * w)
    return TammRubilar(tuple(comps))


# ---------------------------------------------------------------------------
# perfect-square detection (exact)


def _verify_square(G: TammRubilar, T):
    """gamma with gamma*G = sym(T x T) componentwise, or None."""
    third = Fraction(1, 3)

    def symTT(i, j, k, l):
        return (T[i][j] * T[k][l] + T[i][k] * T[j][l] + T[i][l] * T[j][k]) * third

    gamma = None
    for m in MULTI4:
        s = symTT(*m)
        gcomp = G.component(*m)
        if gcomp:
            gamma = s / gcomp
            break
        if s:
            return None
    if gamma is None or not gamma:
        return None
    for m in MULTI4:
        if symTT(*m) != gamma * G.component(*m):
            return None
    return gamma


def fit_perfect_square(G: TammRubilar):
    """(gamma, T) with gamma * G = sym(T x T) for a symmetric T, else None.

    Exact scalars only; quartic = (1/gamma)(xi^T T xi)^2 when found.
    """
    if not G.exact:
        return None

    def attempt(Gx: TammRubilar):
        for piv in range(4):
            gamma = Gx.component(piv, piv, piv, piv)
            if not gamma:
                continue
            T = [[Fraction(0)] * 4 for _ in range(4)]
            T[piv][piv] = gamma
            others = [j for j in range(4) if j != piv]
            for j in others:
                T[piv][j] = T[j][piv] = Gx.component(piv, piv, piv, j)
            for j in others:
                T[j][j] = (3 * gamma * Gx.component(piv, piv, j, j)
                           - 2 * T[piv][j] ** 2) / gamma
            for a in range(len(others)):
                for b in range(a + 1, len(others)):
                    j, k = others[a], others[b]
                    T[j][k] = T[k][j] = (3 * gamma * Gx.component(piv, piv, j, k)
                                         - 2 * T[piv][j] * T[piv][k]) / gamma
            if _verify_square(Gx, T) is not None:
                return T
        return None

    T = attempt(G)
    if T is not None:
        g = _verify_square(G, T)
        return g, tuple(tuple(r) for r in T)
    # retry in sheared coordinates when every pure-power component vanishes
    for (src, dst) in ((1, 0), (2, 0), (3, 0), (2, 1)):
        J = [[Fraction(1) if i == j else Fraction(0) for j in range(4)] for i in range(4)]
        J[src][dst] = Fraction(1)
        G2 = G.transform(J)
        T2 = attempt(G2)
        if T2 is None:
            continue
        Jm = linalg.mat(J)
        Tback = linalg.mat_mul(Jm, linalg.mat_mul(linalg.mat(T2), linalg.transpose(Jm)))
        g = _verify_square(G, Tback)
        if g is not None:
            return g, Tback
    return None


# ---------------------------------------------------------------------------
# singular points on the xi0 = 1 slice


@dataclass(frozen=True)
class SingularPointsReport:
    points: tuple
    curve_suspected: bool
    used_square_reduction: bool


def _slice_poly(G: TammRubilar):
    """Quartic restricted to xi0 = 1 as {spatial exponent triple: float}."""
    poly: dict[tuple[int, int, int], float] = {}
    for mult, m, comp in zip(MULTINOMIAL, MULTI4, G.comps):
        if not comp:
            continue
        e = [0, 0, 0]
        for idx in m:
            if idx:
                e[idx - 1] += 1
        key = tuple(e)
        poly[key] = poly.get(key, 0.0) + float(comp) * mult
    return {k: v for k, v in poly.items() if v != 0.0}


def _quadric_slice_poly(T):
    poly: dict[tuple[int, int, int], float] = {}
    for i in range(4):
        for j in range(4):
            e = [0, 0, 0]
            for idx in (i, j):
                if idx:
                    e[idx - 1] += 1
            key = tuple(e)
            poly[key] = poly.get(key, 0.0) + float(T[i][j])
    return {k: v for k, v in poly.items() if v != 0.0}


def _poly_eval3(poly, q):
    acc = 0.0
    for (e1, e2, e3), c in poly.items():
        acc += c * q[0] ** e1 * q[1] ** e2 * q[2] ** e3
    return acc


def _poly_diff3(poly, var):
    out = {}
    for e, c in poly.items():
        if e[var]:
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = out.get(tuple(ne), 0.0) + c * e[var]
    return out


def singular_points(G: TammRubilar, quadrant=None, *, grid_radius: float = 2.5,
                    grid_n: int = 9, tol: float = 1e-10, dedup: float = 1e-7,
                    curve_threshold: int = 12) -> SingularPointsReport:
    """Points q with f(q) = 0 and grad f(q) = 0 on the xi0 = 1 slice.

    Grid-seeded Gauss-Newton least squares on the four residuals.  When the
    quartic is exactly a perfect square the reduced quadric is used instead,
    so smooth doubled surfaces report no singular points.  Results are
    deduplicated, sorted, and flagged when they sample a curve rather than
    isolated points.
    """
    square = fit_perfect_square(G) if G.exact else None
    if square is not None:
        _, T = square
        poly = _quadric_slice_poly(T)
        used_square = True
    else:
        poly = _slice_poly(G)
        used_square = False
    grads = [_poly_diff3(poly, v) for v in range(3)]
    hess = [[_poly_diff3(grads[i], v) for v in range(3)] for i in range(3)]
    scale = max((abs(c) for c in poly.values()), default=0.0)
    if scale == 0.0:
        return SingularPointsReport((), False, used_square)

    def residual(q):
        return np.array([_poly_eval3(poly, q)] + [_poly_eval3(g, q) for g in grads])

    def jacobian(q):
        J = np.zeros((4, 3))
        for v in range(3):
            J[0, v] = _poly_eval3(grads[v], q)
        for i in range(3):
            for v in range(3):
                J[i + 1, v] = _poly_eval3(hess[i][v], q)
        return J

    seeds = np.linspace(-grid_radius, grid_radius, grid_n)
    found = []
    for s1 in seeds:
        for s2 in seeds:
            for s3 in seeds:
                q = np.array([s1, s2, s3])
                for _ in range(60):
                    r = residual(q)
                    if np.max(np.abs(r)) <= tol * scale:
                        break
                    J = jacobian(q)
                    step, *_ = np.linalg.lstsq(J, -r, rcond=None)
                    if not np.all(np.isfinite(step)):
                        break
                    norm = np.linalg.norm(step)
                    if norm > 1.0:
                        step = step / norm
                    q = q + step
                    if not np.all(np.isfinite(q)) or np.max(np.abs(q)) > 50:
                        break
                else:
                    continue
                if np.max(np.abs(residual(q))) <= tol * scale:
                    found.append(tuple(float(x) for x in q))
    if quadrant is not None:
        if isinstance(quadrant, str):
            quadrant = tuple(1 if ch == "+" else -1 for ch in quadrant)
        found = [p for p in found
                 if all(s * x >= -1e-9 for s, x in zip(quadrant, p))]
    found.sort()
    uniq: list[tuple] = []
    for p in found:
        if not any(max(abs(a - b) for a, b in zip(p, u)) <= dedup for u in uniq):
            uniq.append(p)
    return SingularPointsReport(tuple(uniq), len(uniq) >= curve_threshold, used_square)


# ---------------------------------------------------------------------------
# the Theorem-5.2 invariance suite


@dataclass(frozen=True)
class InvarianceReport:
    media_checked: int
    ok: bool
    failures: tuple

    def identity_ok(self, name: str) -> bool:
        return not any(f[0] == name for f in self.failures)


def random_rational_kappa(rng: random.Random, span: int = 9) -> AreaOperator:
    rows = [[Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(6)]
            for _ in range(6)]
    return AreaOperator.from_rows(rows)


def invariance_suite(kappa: AreaOperator | None, f, trials: int = 1,
                     seed: int = 0) -> InvarianceReport:
    """Check the four Tamm-Rubilar invariances exactly.

    With kappa given, checks that medium; with kappa None, checks `trials`
    seeded random rational media.  f is the scaling/shift scalar.  The four
    identities: cubic scaling under f*kappa, skewon annihilation, axion-shift
    invariance, and the adjugate identity (det6)^2 G(kappa) + G(adj) = 0.
    """
    f = Fraction(f) if isinstance(f, int) else f
    if kappa is not None and not kappa.exact:
        raise PreconditionFailed("invariance suite requires exact scalars")
    rng = random.Random(seed)
    media = [kappa] if kappa is not None else [random_rational_kappa(rng)
                                               for _ in range(trials)]
    failures = []
    for idx, med in enumerate(media):
        G = tamm_rubilar(med)
        f3 = f * f * f
        Gf = tamm_rubilar(med.scale(f))
        for m, a, b in zip(MULTI4, Gf.comps, G.comps):
            if a != f3 * b:
                failures.append(("scaling", idx, m, a, f3 * b))
                break
        Gskew = tamm_rubilar(tensor_core.decompose(med).skewon)
        for m, a in zip(MULTI4, Gskew.comps):
            if a != 0:
                failures.append(("skewon", idx, m, a, Fraction(0)))
                break
        Gshift = tamm_rubilar(med + AreaOperator.identity(f))
        for m, a, b in zip(MULTI4, Gshift.comps, G.comps):
            if a != b:
                failures.append(("axion_shift", idx, m, a, b))
                break
        det = med.det6()
        Gadj = tamm_rubilar(med.adjugate())
        det2 = det * det
        for m, a, b in zip(MULTI4, Gadj.comps, G.comps):
            if det2 * b + a != 0:
                failures.append(("adjugate", idx, m, det2 * b + a, Fraction(0)))
                break
    return InvarianceReport(len(media), not failures, tuple(failures))
