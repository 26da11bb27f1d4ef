import math
import random
from fractions import Fraction

import pytest

from premetric import (AreaOperator, Metric4, SqrtExt, ZeroCovector, axion_test,
                       fresnel_eval, hodge_kernel, hodge_star, kappa_from_components,
                       kernel_report, L_xi_apply, null_eval, sqrt2_tower,
                       tamm_rubilar)
from premetric.fixtures import biaxial, kappa1, minkowski_star

from util import frac, pythagorean_null, random_kappa

F = Fraction


def test_L_xi_basics():
    rng = random.Random(71)
    k = random_kappa(rng)
    xi = tuple(frac(rng) for _ in range(4))
    assert all(not t for t in L_xi_apply(k, xi, xi))
    axion = AreaOperator.identity(F(5))
    alpha = tuple(frac(rng) for _ in range(4))
    assert all(not t for t in L_xi_apply(axion, xi, alpha))
    out = L_xi_apply(minkowski_star(), (F(1), F(0), F(0), F(0)), (F(0), F(1), F(0), F(0)))
    assert any(t for t in out)


def test_kernel_report_star():
    star = minkowski_star()
    G = tamm_rubilar(star)
    rep = kernel_report(star, (F(1), F(1), F(0), F(0)), tr=G)
    assert rep.dim_V == 2 and rep.dim_ker_L == 3
    assert rep.det_q == 0 and rep.fresnel_value == 0 and rep.consistent
    rep = kernel_report(star, (F(1), F(0), F(0), F(0)), tr=G)
    assert rep.dim_V == 0 and rep.consistent
    with pytest.raises(ZeroCovector):
        kernel_report(star, (0, 0, 0, 0))


def test_kernel_report_biaxial_points():
    bi = biaxial()
    G = tamm_rubilar(bi)
    s2 = SqrtExt(F(0), F(1), 2)
    rep = kernel_report(bi, (F(1), s2, F(0), F(0)), tr=G)
    assert rep.dim_V == 1
    xi_sing = (sqrt2_tower(1), sqrt2_tower(0, 0, 0, F(1, 2)),
               sqrt2_tower(0), sqrt2_tower(0, F(1, 2)))
    rep = kernel_report(bi, xi_sing, tr=G)
    assert rep.dim_V == 2
    # float mode agrees
    rep = kernel_report(bi, (1.0, math.sqrt(2), 0.0, 0.0))
    assert rep.dim_V == 1 and rep.consistent


def test_kernel_basis_lies_in_kernel():
    rng = random.Random(73)
    star = minkowski_star()
    for _ in range(5):
        xi = pythagorean_null(rng)
        rep = kernel_report(star, xi)
        assert rep.dim_V == 2
        for alpha in rep.kernel_basis:
            assert all(not t for t in L_xi_apply(star, xi, alpha))


def test_dimV_iff_fresnel_zero():
    rng = random.Random(79)
    media = [minkowski_star(), biaxial(), kappa1()]
    for k in media:
        G = tamm_rubilar(k)
        for _ in range(30):
            xi = tuple(frac(rng) for _ in range(4))
            if all(not x for x in xi):
                continue
            rep = kernel_report(k, xi, tr=G)
            assert (rep.dim_V >= 1) == (fresnel_eval(G, xi) == 0)
            assert rep.dim_ker_L >= 1
            assert rep.consistent


def test_hodge_dimV_in_0_2():
    rng = random.Random(83)
    star = minkowski_star()
    G = tamm_rubilar(star)
    for _ in range(40):
        xi = tuple(frac(rng) for _ in range(4))
        if all(not x for x in xi):
            continue
        rep = kernel_report(star, xi, tr=G)
        assert rep.dim_V in (0, 2)


def test_hodge_kernel_null_direction():
    g = Metric4.minkowski()
    rep = hodge_kernel(g, (F(1), F(1), F(0), F(0)))
    zeros = sum(1 for ev in rep.spectrum if abs(ev) < 1e-12)
    assert zeros == 3
    for alpha in rep.kernel_basis:
        assert null_eval(g, tuple(F(1) * a for a in alpha)) is not None
        # each kernel covector is g-orthogonal to xi
        gi = g.inv
        pair = sum(gi[i][j] * alpha[i] * F((1, 1, 0, 0)[j]) for i in range(4)
                   for j in range(4))
        assert pair == 0
    assert len(rep.kernel_basis) == 3


def test_hodge_kernel_timelike():
    g = Metric4.minkowski()
    rep = hodge_kernel(g, (F(1), F(0), F(0), F(0)))
    zeros = sum(1 for ev in rep.spectrum if abs(ev) < 1e-12)
    assert zeros == 1
    # spectrum pattern (0, C1 g(xi,xi), C2 g(xi,xi), C3 sum xi_i^2)
    nonzero = sorted(ev for ev in rep.spectrum if abs(ev) >= 1e-12)
    assert len(nonzero) == 3


def test_axion_test():
    assert axion_test(AreaOperator.identity(F(5)))
    assert not axion_test(minkowski_star())
    perturbed = kappa_from_components([(0, 1, 0, 1, F(1, 1000))]) + \
        AreaOperator.identity(F(1))
    assert not axion_test(perturbed)
