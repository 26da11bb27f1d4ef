import math
import random
from fractions import Fraction

import numpy as np
import pytest

from premetric import (AreaOperator, DegeneratePolynomial, GaussianRational,
                       Metric4, SqrtExt, decompose, fit_perfect_square,
                       fresnel_eval, g_tensor, hodge_star, invariance_suite,
                       null_eval, polarization_reconstruct, quartic_in_xi0,
                       singular_points, sqrt2_tower, tamm_rubilar,
                       tamm_rubilar_raw, transform)
from premetric.fresnel import (MULTI4, TammRubilar, exact_multiplicity_structure,
                               quartic_roots)
from premetric.fixtures import (biaxial, complex_z, kappa1, kappa2,
                                minkowski_star, principal_type)
from premetric.metric_hodge import hodge_star_rational_part
from premetric.scalars import scalar_sign

from util import frac, random_invertible4, random_kappa, random_metric, random_skewon

F = Fraction


def biaxial_paper_quartic(xi):
    x0, x1, x2, x3 = xi
    return (6 * x0 ** 4 - x0 ** 2 * (5 * x1 ** 2 + 8 * x2 ** 2 + 9 * x3 ** 2)
            + (x1 ** 2 + x2 ** 2 + x3 ** 2) * (x1 ** 2 + 2 * x2 ** 2 + 3 * x3 ** 2))


def test_raw_zero_and_axion():
    raw = tamm_rubilar_raw(AreaOperator.zero())
    assert all(not raw[i][j][k][l] for i in range(4) for j in range(4)
               for k in range(4) for l in range(4))
    # an axion medium has raw components but zero symmetric part
    G = tamm_rubilar(AreaOperator.identity(F(5)))
    assert G.is_zero()


def test_star_quartic_matches_metric_square():
    star = minkowski_star()
    G = tamm_rubilar(star)
    mink = Metric4.minkowski()
    rng = random.Random(41)
    for _ in range(20):
        xi = tuple(frac(rng) for _ in range(4))
        assert fresnel_eval(G, xi) == -null_eval(mink, xi) ** 2


def test_biaxial_quartic_is_minus_paper_polynomial():
    G = tamm_rubilar(biaxial())
    expected = polarization_reconstruct(biaxial_paper_quartic)
    assert G == expected.scale(F(-1))


def test_kappa1_kappa2_quartics():
    G1 = tamm_rubilar(kappa1())
    ref1 = polarization_reconstruct(
        lambda xi: (xi[0] - xi[1]) * (xi[0] - xi[2]) ** 3)
    assert G1 == ref1
    G2 = tamm_rubilar(kappa2())
    ref2 = polarization_reconstruct(
        lambda xi: -(xi[0] - xi[1]) ** 3 * (xi[0] - xi[2]))
    assert G2 == ref2
    assert G1.proportionality(G2) is None


def test_principal_type_zero_quartic():
    for lams in ((1, F(1, 2), 2, 3, 1), (0, 0, 0, 0, 0), (2, -3, F(7, 3), 1, -1)):
        G = tamm_rubilar(principal_type(lams))
        assert G.is_zero()


def test_g_tensor_identity_random():
    rng = random.Random(43)
    h = Metric4.euclidean()
    for _ in range(25):
        g = random_metric(rng)
        R, d = hodge_star_rational_part(g)
        w = fresnel_eval(tamm_rubilar(R), tuple(frac(rng) for _ in range(4)))
        # G(*_g) = d*sqrt(d)*G(R); squared comparison avoids the radical
        # here only structure is checked; the full identity test is below
        assert isinstance(w, F)
    for _ in range(10):
        g = random_metric(rng)
        xi = tuple(frac(rng) for _ in range(4))
        star = hodge_star(g)
        Gh = g_tensor(h, star)
        v = fresnel_eval(Gh, xi)
        lhs = v * v
        rhs = abs(g.det) * null_eval(g, xi) ** 4
        assert lhs == rhs
        if null_eval(g, xi) != 0:
            assert scalar_sign(v) == scalar_sign(g.det)


def test_g_tensor_scaling():
    g = Metric4.diag(2, 1, 2, 1)   # det = 4
    k = biaxial()
    G = tamm_rubilar(k)
    Gg = g_tensor(g, k)
    assert Gg == G.scale(F(1, 2))


def test_fresnel_eval_examples():
    Gb = tamm_rubilar(biaxial())
    s2 = SqrtExt(F(0), F(1), 2)
    assert fresnel_eval(Gb, (F(1), s2, F(0), F(0))) == 0
    xi_sing = (sqrt2_tower(1), sqrt2_tower(0, 0, 0, F(1, 2)),
               sqrt2_tower(0), sqrt2_tower(0, F(1, 2)))
    assert fresnel_eval(Gb, xi_sing) == 0
    Gs = tamm_rubilar(minkowski_star())
    assert fresnel_eval(Gs, (1, 0, 0, 0)) == -1


def test_quartic_in_xi0_star():
    G = tamm_rubilar(minkowski_star())
    quartic, roots = quartic_in_xi0(G, (F(1), F(0), F(0)))
    assert sorted((round(z.real, 9), m) for z, m in roots) == [(-1.0, 2), (1.0, 2)]
    struct = exact_multiplicity_structure(quartic.c)
    assert sorted(m for m, _ in struct) == [2]


def test_quartic_in_xi0_biaxial():
    G = tamm_rubilar(biaxial())
    quartic, roots = quartic_in_xi0(G, (F(1), F(0), F(0)))
    # -(6 x^4 - 5 x^2 + 1): roots +-1/sqrt2, +-1/sqrt3
    vals = sorted(z.real for z, m in roots for _ in range(m))
    expect = sorted([-1 / math.sqrt(2), -1 / math.sqrt(3),
                     1 / math.sqrt(3), 1 / math.sqrt(2)])
    assert max(abs(a - b) for a, b in zip(vals, expect)) < 1e-10


def test_quartic_in_xi0_kappa1_multiplicity():
    G = tamm_rubilar(kappa1())
    quartic, roots = quartic_in_xi0(G, (F(1), F(1), F(0)))
    # (x0-1)^4 at q1 = q2 = 1: one cluster of total multiplicity 4
    assert len(roots) == 1
    z, m = roots[0]
    assert m == 4 and abs(z - 1) < 1e-6
    struct = exact_multiplicity_structure(quartic.c)
    assert [m for m, _ in struct] == [4]


def test_quartic_degenerate():
    G = tamm_rubilar(principal_type())
    with pytest.raises(DegeneratePolynomial):
        quartic_in_xi0(G, (F(1), F(0), F(0)))


def test_quartic_roots_against_companion():
    rng = random.Random(47)
    for _ in range(60):
        cs = [rng.uniform(-3, 3) for _ in range(5)]
        cs[0] = cs[0] or 1.0
        mine = sorted((z for z, m in quartic_roots(cs) for _ in range(m)),
                      key=lambda z: (z.real, z.imag))
        ref = sorted(np.roots(cs), key=lambda z: (z.real, z.imag))
        assert max(abs(a - b) for a, b in zip(mine, ref)) < 1e-7
    # repeated-root cases go through the companion fallback; a root of
    # multiplicity m is only conditioned to ~eps^(1/m) in floats
    for roots in ((1.0, 1.0, 2.0, 3.0), (2.0, 2.0, 2.0, -1.0), (0.5, 0.5, 0.5, 0.5)):
        cs = np.poly(roots)
        got = quartic_roots(list(cs))
        total = sum(m for _, m in got)
        assert total == 4
        for z, m in got:
            assert min(abs(z - r) for r in roots) < 1e-3


def test_polarization_round_trip():
    Gb = tamm_rubilar(biaxial())
    assert polarization_reconstruct(lambda xi: fresnel_eval(Gb, xi)) == Gb
    zero = polarization_reconstruct(lambda xi: 0)
    assert zero.is_zero()
    mink = Metric4.minkowski()
    G = polarization_reconstruct(lambda xi: null_eval(mink, xi) ** 2)
    # equals the symmetrisation of g^-1 (x) g^-1
    gi = mink.inv
    for m in MULTI4:
        i, j, k, l = m
        expect = (gi[i][j] * gi[k][l] + gi[i][k] * gi[j][l]
                  + gi[i][l] * gi[j][k]) * F(1, 3)
        assert G.component(*m) == expect


def test_homogeneity():
    G = tamm_rubilar(kappa1())
    rng = random.Random(53)
    for _ in range(10):
        xi = tuple(frac(rng) for _ in range(4))
        lam = frac(rng, 7, 3)
        assert fresnel_eval(G, tuple(lam * x for x in xi)) == \
            lam ** 4 * fresnel_eval(G, xi)


def test_density_weight_transform():
    rng = random.Random(59)
    for _ in range(5):
        k = random_kappa(rng, span=3)
        J = random_invertible4(rng)
        assert tamm_rubilar(transform(k, J)) == tamm_rubilar(k).transform(J)


def test_fit_perfect_square():
    st = tamm_rubilar(minkowski_star())
    got = fit_perfect_square(st)
    assert got is not None
    gamma, T = got
    # quartic = (1/gamma)(xi^T T xi)^2
    rng = random.Random(61)
    for _ in range(10):
        xi = tuple(frac(rng) for _ in range(4))
        q = sum(T[i][j] * xi[i] * xi[j] for i in range(4) for j in range(4))
        assert gamma * fresnel_eval(st, xi) == q * q
    assert fit_perfect_square(tamm_rubilar(biaxial())) is None
    assert fit_perfect_square(tamm_rubilar(kappa1())) is None


def test_singular_points_biaxial():
    rep = singular_points(tamm_rubilar(biaxial()), "+++")
    assert len(rep.points) == 1
    p = rep.points[0]
    expect = (math.sqrt(1.5), 0.0, math.sqrt(0.5))
    assert max(abs(a - b) for a, b in zip(p, expect)) < 1e-9
    assert not rep.curve_suspected


def test_singular_points_star_smooth():
    rep = singular_points(tamm_rubilar(minkowski_star()))
    assert rep.points == ()
    assert rep.used_square_reduction


def test_singular_points_kappa1_curve():
    rep = singular_points(tamm_rubilar(kappa1()), grid_n=7)
    assert rep.curve_suspected
    assert len(rep.points) > 10
    # the flagged samples lie on the multiplicity-3 wall xi2 = 1 (cubic
    # flatness limits the attainable coordinate accuracy)
    assert all(abs(p[1] - 1.0) < 2e-2 for p in rep.points)


def test_invariance_suite_single_and_special():
    rng = random.Random(67)
    k = random_kappa(rng)
    rep = invariance_suite(k, F(7))
    assert rep.ok
    rep = invariance_suite(minkowski_star(), F(3))
    assert rep.ok
    G = tamm_rubilar(random_skewon(rng))
    assert G.is_zero()


def test_invariance_suite_batch():
    rep = invariance_suite(None, F(7), trials=5, seed=99)
    assert rep.ok and rep.media_checked == 5


def test_complex_medium_quartic():
    z = GaussianRational(1, 1)
    kz = complex_z(z)
    G = tamm_rubilar(kz)
    g0 = Metric4.diag(1, -1, -1, -1)
    ref = polarization_reconstruct(lambda xi: null_eval(g0, xi) ** 2)
    c = G.component(0, 0, 0, 0)
    assert c
    assert G == ref.scale(c)
