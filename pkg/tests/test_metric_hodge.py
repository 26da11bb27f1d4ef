import math
import random
from fractions import Fraction

import pytest

from premetric import (AreaOperator, Degenerate, Metric4, NonPositiveParameter,
                       SqrtExt, conformal_factor, decompose, hodge_star,
                       isotropic_medium, null_eval, signature)
from premetric.closure import closure_check
from premetric.metric_hodge import hodge_star_rational_part

from util import frac, random_lorentz_metric, random_metric

F = Fraction


def test_signature_examples():
    assert signature(Metric4.minkowski()) == (1, True)
    assert signature(Metric4.euclidean()) == (0, False)
    assert signature(Metric4.diag(-1, 1, 1, 1)) == (1, True)
    eps = mu = F(1)
    g = Metric4.diag(-1 / (eps * mu), 1, 1, 1)
    assert signature(g)[1] is True
    assert signature(Metric4.diag(1, -1, -1, -1)) == (3, True)


def test_degenerate_metric_rejected():
    with pytest.raises(Degenerate):
        Metric4.diag(0, 1, 1, 1)


def test_hodge_star_squares():
    k = hodge_star(Metric4.minkowski())
    assert k.compose(k) == AreaOperator.identity(-1)
    k = hodge_star(Metric4.euclidean())
    assert k.compose(k) == AreaOperator.identity(1)


def test_hodge_star_random_metrics():
    rng = random.Random(29)
    checked = 0
    while checked < 200:
        # mix Lorentz congruences (rational stars) with arbitrary signatures
        g = random_lorentz_metric(rng) if checked % 2 == 0 else random_metric(rng)
        star = hodge_star(g)
        sigma, _ = signature(g)
        sq = star.compose(star)
        assert sq == AreaOperator.identity((-1) ** sigma)
        dec = decompose(star)
        assert all(not x for row in dec.skewon.mat for x in row)
        assert dec.axion_coeff == 0
        checked += 1


def test_hodge_star_conformal_invariance():
    rng = random.Random(31)
    for _ in range(20):
        g = random_metric(rng)
        lam = abs(frac(rng, 7, 4)) + F(1, 7)
        assert hodge_star(g.scale(lam)) == hodge_star(g)


def test_hodge_star_rational_part():
    g = Metric4.diag(-2, 1, 1, 1)     # |det| = 2, not a square
    star = hodge_star(g)
    assert isinstance(star.mat[0][3], SqrtExt)
    R, d = hodge_star_rational_part(g)
    assert d == 2
    s = SqrtExt(F(0), F(1), d)
    assert star == R.scale(s)


def test_null_eval():
    mink = Metric4.minkowski()
    assert null_eval(mink, (1, 1, 0, 0)) == 0
    assert null_eval(mink, (1, 0, 0, 0)) == -1
    assert null_eval(Metric4.euclidean(), (1, 2, 3, 4)) == 30


def test_null_zero_set_under_scaling():
    rng = random.Random(37)
    g = random_lorentz_metric(rng)
    for _ in range(40):
        xi = tuple(frac(rng) for _ in range(4))
        v = null_eval(g, xi)
        assert null_eval(g.scale(F(3)), xi) * 3 == v
        vneg = null_eval(g.scale(F(-2)), xi)
        assert (v == 0) == (vneg == 0)
        if v != 0:
            assert (v > 0) != (vneg > 0)


def test_conformal_factor():
    g = Metric4.minkowski()
    assert conformal_factor(g, g.scale(F(3))) == 3
    h = Metric4.diag(-1, 1, 1, 2)
    assert conformal_factor(g, h) is None


def test_isotropic_medium():
    assert isotropic_medium(1, 1) == hodge_star(Metric4.minkowski())
    k = isotropic_medium(2, F(1, 2))
    b = k.blocks()
    assert b.A == tuple(tuple(F(-2) if i == j else F(0) for j in range(3)) for i in range(3))
    assert b.B == tuple(tuple(F(2) if i == j else F(0) for j in range(3)) for i in range(3))
    assert all(not x for row in b.C for x in row)
    assert all(not x for row in b.D for x in row)
    # sqrt(eps/mu) * star of diag(-1/(eps mu),1,1,1), exact when the root is rational
    assert k == hodge_star(Metric4.diag(-1, 1, 1, 1)).scale(2)
    rep = closure_check(k)
    assert rep.holds and rep.f == 4


def test_isotropic_rejects_nonpositive():
    with pytest.raises(NonPositiveParameter):
        isotropic_medium(0, 1)
    with pytest.raises(NonPositiveParameter):
        isotropic_medium(1, F(-1, 2))


def test_isotropic_matches_scaled_star_float():
    eps, mu = 3.0, 0.7
    k = isotropic_medium(eps, mu)
    g = Metric4.diag(-1.0 / (eps * mu), 1.0, 1.0, 1.0)
    expect = hodge_star(g).scale(math.sqrt(eps / mu))
    assert k.isclose(expect, rel=1e-12)
