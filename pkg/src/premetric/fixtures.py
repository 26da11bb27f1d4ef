"""Bundled example media.

Every fixture is a pointwise medium from the worked examples: the vacuum
star, the biaxial crystal, the isotropic medium, the pair of skewon-free
media sharing a Fresnel surface, the principal-type medium with identically
vanishing quartic (built from cube roots of 2), and the one-complex-
parameter family whose Fresnel surface is the Minkowski light cone.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PremetricError
from .metric_hodge import Metric4, hodge_star, isotropic_medium
from .scalars import CubeRootExt, GaussianRational
from .tensor_core import ABCDBlocks, AreaOperator, kappa_from_blocks, transform

_F = Fraction


def _blocks(A, B, C, D) -> AreaOperator:
    return kappa_from_blocks(ABCDBlocks.make(A, B, C, D))


def minkowski_star() -> AreaOperator:
    return hodge_star(Metric4.minkowski())


def euclidean_star() -> AreaOperator:
    return hodge_star(Metric4.euclidean())


def biaxial() -> AreaOperator:
    """Biaxial crystal: A = -diag(1,2,3), B = Id, C = D = 0."""
    z = _F(0)
    A = [[-_F(1), z, z], [z, -_F(2), z], [z, z, -_F(3)]]
    B = [[_F(1), z, z], [z, _F(1), z], [z, z, _F(1)]]
    Z = [[z] * 3 for _ in range(3)]
    return _blocks(A, B, Z, Z)


def kappa1() -> AreaOperator:
    """First member of the non-injectivity pair; quartic (x0-x1)(x0-x2)^3."""
    A = [[0, -1, 1], [-1, -2, 1], [1, 1, -1]]
    B = [[0, _F(1, 2), 0], [_F(1, 2), 0, 0], [0, 0, 0]]
    C = [[0, 0, 0], [0, 2, 1], [_F(1, 2), -_F(1, 2), 1]]
    D = [[C[j][i] for j in range(3)] for i in range(3)]
    return _blocks(A, B, C, D)


def kappa2() -> AreaOperator:
    """Second member; quartic -(x0-x1)^3(x0-x2); a spatial swap of kappa1."""
    A = [[2, 1, -1], [1, 0, -1], [-1, -1, 1]]
    B = [[0, -_F(1, 2), 0], [-_F(1, 2), 0, 0], [0, 0, 0]]
    C = [[2, 0, 1], [0, 0, 0], [-_F(1, 2), _F(1, 2), 1]]
    D = [[C[j][i] for j in range(3)] for i in range(3)]
    return _blocks(A, B, C, D)


def principal_type(lams=(1, _F(1, 2), 2, 3, 1), exact: bool = True) -> AreaOperator:
    """Principal-type medium with identically zero Tamm-Rubilar density.

    Arbitrary parameters lams = (l1..l5); the fixed entries are cube roots
    of 2, exact in the ring Q(2^(1/3)) when exact is True.
    """
    l1, l2, l3, l4, l5 = lams
    if exact:
        def r(x):
            return CubeRootExt(_F(x), 0, 0, 2)
        third2 = CubeRootExt(0, 0, 1, 2)           # 2^(2/3)
        minus_third = CubeRootExt(0, 0, -_F(1, 2), 2)   # -2^(-1/3)
    else:
        def r(x):
            return float(x)
        third2 = 2.0 ** (2.0 / 3.0)
        minus_third = -(2.0 ** (-1.0 / 3.0))
    z = r(0)
    A = [[z] * 3 for _ in range(3)]
    B = [[z, z, r(l1)], [z, z, r(l2)], [r(l1), r(l2), r(l3)]]
    C = [[minus_third, z, r(l4)],
         [z, minus_third, r(l5)],
         [z, z, third2]]
    D = [[C[j][i] for j in range(3)] for i in range(3)]
    return _blocks(A, B, C, D)


def complex_z(z) -> AreaOperator:
    """One-complex-parameter medium whose Fresnel surface is the light cone.

    z may be a GaussianRational (exact) or a Python complex.
    """
    if isinstance(z, (int, Fraction)):
        z = GaussianRational(z, 0)
    if isinstance(z, GaussianRational):
        i = GaussianRational(0, 1)
        one = GaussianRational(1, 0)
    elif isinstance(z, complex):
        i = 1j
        one = 1.0 + 0j
    else:
        raise PremetricError("z must be complex")
    if not z:
        raise PremetricError("z must be nonzero")
    z2 = z * z
    zero = z - z
    A = [[-(one / (2 * z2)), zero, zero],
         [zero, -(2 * z), zero],
         [zero, zero, -z]]
    B = [[-x for x in row] for row in A]
    C = [[i * (one / (3 * z2) - z), zero, zero],
         [zero, i * (z - one / (6 * z2)), zero],
         [zero, zero, i * (-(one / (6 * z2)))]]
    return _blocks(A, B, C, C)


def isotropic_e2_mu05() -> AreaOperator:
    return isotropic_medium(_F(2), _F(1, 2))


def vacuum() -> AreaOperator:
    return isotropic_medium(_F(1), _F(1))


def case_c_medium() -> AreaOperator:
    """A closure medium whose A-block has rank 1 (the shear-fixable case).

    Built by pushing the vacuum star through the inverse of the repairing
    shear, so normalize_chart must undo it.
    """
    J = [[_F(1), _F(0), _F(0), -_F(1)],
         [_F(0), _F(1), _F(0), _F(0)],
         [_F(0), _F(0), _F(1), _F(0)],
         [_F(0), _F(0), _F(0), _F(1)]]
    return transform(minkowski_star(), J)


FIXTURES = {
    "minkowski_star": minkowski_star,
    "euclidean_star": euclidean_star,
    "biaxial": biaxial,
    "kappa1": kappa1,
    "kappa2": kappa2,
    "principal_type": lambda: principal_type(exact=False),
    "complex_z1": lambda: complex_z(GaussianRational(1, 0)),
    "complex_z_1_1": lambda: complex_z(GaussianRational(1, 1)),
    "complex_z_2_m1": lambda: complex_z(GaussianRational(2, -1)),
    "isotropic_e2_mu05": isotropic_e2_mu05,
    "vacuum": vacuum,
    "case_c": case_c_medium,
}


def fixture(name: str) -> AreaOperator:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise PremetricError(f"unknown fixture {name!r}; "
                             f"available: {', '.join(sorted(FIXTURES))}")


def write_fixture_files(directory: str) -> list[str]:
    """Serialise every bundled fixture to canonical JSON files."""
    import os
    from .mediumio import canonical_dumps, medium_to_json
    written = []
    os.makedirs(directory, exist_ok=True)
    for name in sorted(FIXTURES):
        kappa = FIXTURES[name]()
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w") as fh:
            fh.write(canonical_dumps(medium_to_json(kappa)))
        written.append(path)
    return written
