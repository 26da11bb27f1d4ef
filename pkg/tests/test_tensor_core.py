import random
from fractions import Fraction

import pytest

from premetric import (AREA_BASIS, AreaOperator, ComplexUnsupported,
                       ConflictingComponent, GaussianRational, Metric4,
                       SingularJacobian, SingularOperator, blocks_from_kappa,
                       decompose, hodge_star, kappa_from_blocks,
                       kappa_from_components, transform, wedge_adjoint,
                       wedge_pairing)
from premetric import linalg
from premetric.fixtures import biaxial, kappa1, kappa2, minkowski_star

from util import random_invertible4, random_kappa, random_spatial_jacobian

F = Fraction


def test_kappa_from_components_zero():
    assert kappa_from_components([]) == AreaOperator.zero()


def test_kappa_from_components_identity_trace():
    entries = []
    for (i, j) in AREA_BASIS:
        entries.append((i, j, i, j, 1))
        entries.append((j, i, j, i, 1))   # redundant antisymmetric completion
    k = kappa_from_components(entries)
    assert k == AreaOperator.identity()
    assert k.trace() == 6


def test_kappa_from_components_antisymmetry():
    k = kappa_from_components([(0, 1, 1, 0, 1)])
    assert k.component(0, 1, 0, 1) == -1
    assert k.component(1, 0, 0, 1) == 1
    assert k.component(0, 1, 1, 0) == 1


def test_kappa_from_components_conflict():
    with pytest.raises(ConflictingComponent):
        kappa_from_components([(0, 1, 0, 1, 1), (1, 0, 0, 1, 1)])
    with pytest.raises(ConflictingComponent):
        kappa_from_components([(0, 0, 0, 1, 2)])


def test_antisymmetry_round_trip():
    rng = random.Random(3)
    k = random_kappa(rng)
    for i in range(4):
        for j in range(4):
            for a in range(4):
                for b in range(4):
                    v = k.component(i, j, a, b)
                    assert v == -k.component(j, i, a, b)
                    assert v == -k.component(i, j, b, a)


def test_blocks_of_identity():
    b = blocks_from_kappa(AreaOperator.identity())
    eye = linalg.identity(3)
    zero = tuple((F(0),) * 3 for _ in range(3))
    assert b.A == zero and b.B == zero
    assert b.C == eye and b.D == eye


def test_blocks_of_minkowski_star():
    b = blocks_from_kappa(hodge_star(Metric4.minkowski()))
    eye = linalg.identity(3)
    assert b.A == tuple(tuple(-x for x in r) for r in eye)
    assert b.B == eye
    assert all(not x for r in b.C for x in r)
    assert all(not x for r in b.D for x in r)


def test_biaxial_blocks_round_trip():
    k = biaxial()
    b = blocks_from_kappa(k)
    assert b.A == tuple(tuple(-F(v) if i == j else F(0) for j, v in enumerate((1, 2, 3)))
                        for i in range(3))
    assert kappa_from_blocks(b) == k


def test_blocks_round_trip_random():
    rng = random.Random(11)
    for _ in range(100):
        k = random_kappa(rng)
        assert kappa_from_blocks(blocks_from_kappa(k)) == k


def test_zero_blocks():
    z = tuple((F(0),) * 3 for _ in range(3))
    from premetric import ABCDBlocks
    assert kappa_from_blocks(ABCDBlocks(z, z, z, z)) == AreaOperator.zero()


def test_trace_compose():
    star = minkowski_star()
    assert star.compose(star) == AreaOperator.identity(-1)
    assert AreaOperator.zero().trace() == 0
    assert AreaOperator.identity().trace() == 6


def test_det6_and_adjugate():
    assert AreaOperator.identity().det6() == 1
    k1 = kappa1()
    assert k1.det6() == 1
    assert k1.trace() == 6
    star = minkowski_star()
    adj = star.adjugate()
    # kappa^2 = -Id and det6 = 1 force adj = -star
    assert adj == -star
    assert star.compose(star.inverse()) == AreaOperator.identity()


def test_adjugate_equals_det_times_inverse():
    rng = random.Random(5)
    for _ in range(10):
        k = random_kappa(rng)
        d = k.det6()
        if d == 0:
            continue
        assert k.adjugate() == k.inverse().scale(d)


def test_inverse_singular():
    with pytest.raises(SingularOperator):
        AreaOperator.zero().inverse()


def test_wedge_adjoint():
    assert wedge_adjoint(AreaOperator.identity()) == AreaOperator.identity()
    for g in (Metric4.minkowski(), Metric4.euclidean(), Metric4.diag(-2, 1, 3, 1)):
        star = hodge_star(g)
        assert wedge_adjoint(star) == star
    rng = random.Random(7)
    for _ in range(20):
        k = random_kappa(rng)
        adj = wedge_adjoint(k)
        assert wedge_adjoint(adj) == k
        u = [F(rng.randint(-5, 5)) for _ in range(6)]
        v = [F(rng.randint(-5, 5)) for _ in range(6)]
        ku = linalg.mat_vec(k.mat, v)
        aju = linalg.mat_vec(adj.mat, u)
        assert wedge_pairing(u, ku) == wedge_pairing(aju, v)


def test_decompose_axion_and_star():
    dec = decompose(AreaOperator.identity())
    assert dec.axion_coeff == 1
    assert all(not x for r in dec.principal.mat for x in r)
    assert all(not x for r in dec.skewon.mat for x in r)
    dec = decompose(minkowski_star())
    assert dec.axion_coeff == 0
    assert all(not x for r in dec.skewon.mat for x in r)


def test_decompose_reconstruct_and_projector_ranks():
    rng = random.Random(13)
    basis_ops = []
    for I in range(6):
        for J in range(6):
            rows = [[F(1) if (i, j) == (I, J) else F(0) for j in range(6)]
                    for i in range(6)]
            basis_ops.append(AreaOperator.from_rows(rows))
    cols_p, cols_w, cols_u = [], [], []
    for op in basis_ops:
        dec = decompose(op)
        assert dec.reconstruct() == op
        cols_p.append([x for row in dec.principal.mat for x in row])
        cols_w.append([x for row in dec.skewon.mat for x in row])
        ax = AreaOperator.identity(dec.axion_coeff)
        cols_u.append([x for row in ax.mat for x in row])
    assert linalg.rank_field(linalg.mat(cols_p)) == 20
    assert linalg.rank_field(linalg.mat(cols_w)) == 15
    assert linalg.rank_field(linalg.mat(cols_u)) == 1
    k = random_kappa(rng)
    dec = decompose(k)
    assert dec.reconstruct() == k
    # parts are annihilated by the complementary projections
    assert decompose(dec.principal).axion_coeff == 0
    assert all(not x for r in decompose(dec.principal).skewon.mat for x in r)
    assert all(not x for r in decompose(dec.skewon).principal.mat for x in r)


def test_decompose_rejects_complex():
    from premetric.fixtures import complex_z
    with pytest.raises(ComplexUnsupported):
        decompose(complex_z(GaussianRational(1, 1)))


def test_transform_identity_and_singular():
    k = biaxial()
    assert transform(k, linalg.identity(4)) == k
    with pytest.raises(SingularJacobian):
        transform(k, [[0] * 4] * 4)


def test_transform_swap_reproduces_kappa2():
    # spatial permutation x1 <-> x2 carries the first medium to the second
    J = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert transform(kappa1(), J) == kappa2()


def test_transform_block_law_for_A():
    rng = random.Random(17)
    for _ in range(10):
        k = random_kappa(rng, span=4)
        J = random_spatial_jacobian(rng)
        A = blocks_from_kappa(k).A
        At = blocks_from_kappa(transform(k, J)).A
        # A~ = det(dx/dx~) (dx~/dx) A (dx~/dx)^T with purely spatial change
        Jinv = linalg.inverse_field(J)
        T = tuple(tuple(Jinv[r][c] for c in range(1, 4)) for r in range(1, 4))
        d = linalg.det_ring(J)
        expect = linalg.mat_scale(
            linalg.mat_mul(T, linalg.mat_mul(A, linalg.transpose(T))), d)
        assert At == expect


def test_transform_functorial():
    # going x -> x~ with J1 = dx/dx~, then x~ -> x^ with J2 = dx~/dx^,
    # equals the single change with dx/dx^ = J1 J2
    rng = random.Random(19)
    for _ in range(6):
        k = random_kappa(rng, span=3)
        J1 = random_invertible4(rng)
        J2 = random_invertible4(rng)
        J12 = linalg.mat_mul(J1, J2)
        assert transform(k, J12) == transform(transform(k, J1), J2)


def test_transform_preserves_trace_det():
    rng = random.Random(23)
    k = random_kappa(rng)
    J = random_invertible4(rng)
    kt = transform(k, J)
    assert kt.trace() == k.trace()
    assert kt.det6() == k.det6()
