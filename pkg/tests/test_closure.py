import random
from fractions import Fraction

import numpy as np
import pytest

from premetric import (ABCDBlocks, AreaOperator, Impossible, Metric4,
                       NotSkewonFree, PreconditionFailed, RelationViolated,
                       closure_check, conformal_factor, diagonalize_A,
                       fit_perfect_square, fresnel_lightcone_check, hodge_star,
                       isotropic_medium, K_relations_check, kappa_from_blocks,
                       normalize_chart, reconstruct_metric, skewon_free_check,
                       tamm_rubilar, transform)
from premetric import linalg
from premetric.closure import _spatial_rank_chart
from premetric.fixtures import biaxial, case_c_medium, kappa1, minkowski_star

from util import (frac, random_kappa, random_lorentz_metric, random_skewon,
                  random_spatial_jacobian)

F = Fraction


def test_closure_check_examples():
    rep = closure_check(minkowski_star())
    assert rep.holds and rep.f == 1 and rep.residual == 0
    rep = closure_check(isotropic_medium(F(3), F(1, 2)))
    assert rep.holds and rep.f == 6
    rep = closure_check(biaxial())
    assert not rep.holds


def test_skewon_free_check():
    assert skewon_free_check(minkowski_star())
    assert skewon_free_check(kappa1())
    rng = random.Random(89)
    sk = random_skewon(rng)
    assert not skewon_free_check(sk)


def test_diagonalize_A():
    eye4 = linalg.identity(4)
    assert diagonalize_A(biaxial()) == eye4
    assert diagonalize_A(minkowski_star()) == eye4
    # symmetric off-diagonal A: spectral rotation makes it diagonal
    A = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    B = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    Z = [[0] * 3 for _ in range(3)]
    k = kappa_from_blocks(ABCDBlocks.make(A, B, Z, Z))
    J = diagonalize_A(k)
    At = k if J == eye4 else None
    from premetric import blocks_from_kappa
    At = blocks_from_kappa(transform(k, J)).A
    arr = np.array([[float(x) for x in row] for row in At])
    off = arr - np.diag(np.diag(arr))
    assert np.max(np.abs(off)) < 1e-12
    with pytest.raises(NotSkewonFree):
        diagonalize_A(random_skewon(random.Random(97)))


def test_normalize_chart_identity_and_case_c():
    assert normalize_chart(minkowski_star()) == linalg.identity(4)
    cc = case_c_medium()
    from premetric import blocks_from_kappa
    assert linalg.det_ring(blocks_from_kappa(cc).A) == 0
    J = normalize_chart(cc)
    newA = blocks_from_kappa(transform(cc, J)).A
    assert linalg.det_ring(newA) != 0


def test_case_c_determinant_formula():
    # after diagonalising and permuting A to diag(a1,0,0), the shear makes
    # det A' = -B11 (C^3_2)^2
    cc = case_c_medium()
    from premetric import blocks_from_kappa
    J, rank = _spatial_rank_chart(cc)
    assert rank == 1
    # reproduce the intermediate frame: spatial part only, before the shear
    fwd = linalg.inverse_field(J)
    shear = [[F(1) if i == j else F(0) for j in range(4)] for i in range(4)]
    shear[0][3] = F(1)
    spatial_fwd = linalg.mat_mul(linalg.inverse_field(linalg.mat(shear)), fwd)
    k_mid = transform(cc, linalg.inverse_field(spatial_fwd))
    b_mid = blocks_from_kappa(k_mid)
    assert b_mid.A[0][0] != 0 and all(
        not b_mid.A[i][j] for i in range(3) for j in range(3) if (i, j) != (0, 0))
    k_end = transform(cc, J)
    detA = linalg.det_ring(blocks_from_kappa(k_end).A)
    assert detA == -b_mid.B[0][0] * b_mid.C[2][1] ** 2


def test_spatial_rank_chart_impossible_cases():
    # rank-2 and rank-0 symmetric A-blocks contradict closure for real media
    Z = [[0] * 3 for _ in range(3)]
    B = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    k2 = kappa_from_blocks(ABCDBlocks.make([[1, 0, 0], [0, 1, 0], [0, 0, 0]], B, Z, Z))
    with pytest.raises(Impossible):
        _spatial_rank_chart(k2)
    k0 = kappa_from_blocks(ABCDBlocks.make(Z, B, Z, Z))
    with pytest.raises(Impossible):
        _spatial_rank_chart(k0)


def test_normalize_chart_preconditions():
    with pytest.raises(PreconditionFailed):
        normalize_chart(biaxial())       # not a closure medium
    with pytest.raises(PreconditionFailed):
        normalize_chart(minkowski_star().scale(2))   # f = 4, not 1


def test_K_relations_star_and_transformed():
    rep = K_relations_check(minkowski_star())
    assert all(not x for row in rep.K for x in row)
    rng = random.Random(101)
    for _ in range(5):
        J = random_spatial_jacobian(rng)
        kt = transform(minkowski_star(), J)
        K_relations_check(kt)


def test_K_relations_violation():
    # skewon-free, invertible A, but kappa^2 != -Id: C A + A C^T != 0
    A = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    B = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    C = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    D = [[C[j][i] for j in range(3)] for i in range(3)]
    k = kappa_from_blocks(ABCDBlocks.make(A, B, C, D))
    with pytest.raises(RelationViolated):
        K_relations_check(k)


def test_reconstruct_star_and_multiples():
    rec = reconstruct_metric(minkowski_star())
    assert conformal_factor(Metric4.minkowski(), rec.g) is not None
    assert rec.star_match in (1, -1) and rec.star_match_squared == 1
    assert rec.su_det_identity
    rec = reconstruct_metric(minkowski_star().scale(2))
    assert rec.f == 4 and rec.star_match in (2, -2)
    assert conformal_factor(Metric4.minkowski(), rec.g) is not None


def test_reconstruct_isotropic():
    eps, mu = F(2), F(1, 2)
    rec = reconstruct_metric(isotropic_medium(eps, mu))
    target = Metric4.diag(-1 / (eps * mu), 1, 1, 1)
    assert conformal_factor(target, rec.g) is not None


def test_reconstruct_case_c():
    rec = reconstruct_metric(case_c_medium())
    # the case-C medium is the vacuum star pushed through a shear; the
    # reconstructed metric must be conformal to the pushed-forward Minkowski
    J = linalg.mat([[F(1), F(0), F(0), -F(1)], [F(0), F(1), F(0), F(0)],
                    [F(0), F(0), F(1), F(0)], [F(0), F(0), F(0), F(1)]])
    mink = Metric4.minkowski().mat
    pushed = linalg.mat_mul(linalg.transpose(J), linalg.mat_mul(mink, J))
    assert conformal_factor(Metric4.make(pushed), rec.g) is not None


def test_reconstruct_random_lorentz_round_trip():
    rng = random.Random(103)
    for _ in range(5):
        g = random_lorentz_metric(rng)
        f = abs(frac(rng, 5, 3)) + F(1, 9)
        kappa = hodge_star(g).scale(f)
        rec = reconstruct_metric(kappa)
        assert rec.su_det_identity
        assert conformal_factor(g, rec.g) is not None
        assert rec.f == f * f
        assert rec.star_match_squared == f * f


def test_reconstruct_float_mode():
    g = Metric4.make([[float(x) for x in row] for row in
                      random_lorentz_metric(random.Random(107)).mat])
    kappa = hodge_star(g).scale(1.7)
    rec = reconstruct_metric(kappa)
    lam = conformal_factor(g, rec.g)
    assert lam is not None
    assert abs(rec.star_match_squared - 1.7 ** 2) < 1e-8


def test_reconstruct_preconditions():
    with pytest.raises(PreconditionFailed):
        reconstruct_metric(biaxial())
    rng = random.Random(109)
    with pytest.raises(PreconditionFailed):
        reconstruct_metric(random_skewon(rng) + minkowski_star())


def test_closure_implies_square_quartic():
    rng = random.Random(113)
    for _ in range(5):
        g = random_lorentz_metric(rng)
        f = abs(frac(rng, 5, 3)) + F(1, 9)
        kappa = hodge_star(g).scale(f)
        assert closure_check(kappa).holds
        assert fit_perfect_square(tamm_rubilar(kappa)) is not None


def test_fresnel_lightcone_check():
    g0 = Metric4.minkowski()
    assert fresnel_lightcone_check(minkowski_star().scale(3), g0)
    assert not fresnel_lightcone_check(biaxial(), g0)
    assert not fresnel_lightcone_check(kappa1(), g0)
    rng = random.Random(127)
    g = random_lorentz_metric(rng)
    assert fresnel_lightcone_check(hodge_star(g).scale(F(5, 3)), g)
    assert not fresnel_lightcone_check(hodge_star(g), Metric4.euclidean())
