"""premetric: linear electromagnetic media as antisymmetric (2,2)-tensors.

Pointwise algebra of media on the 6-dimensional space of 2-forms, the
principal/skewon/axion decomposition, Hodge-star media of pseudo-Riemann
metrics, Tamm-Rubilar tensor densities and Fresnel surfaces, geometric-
optics wave kernels, closure-condition metric reconstruction, and the exact
polynomial machinery (Groebner bases, Schwartz-Zippel screening, recursive
Taylor verification) used to certify the medium-inversion invariance.
"""

from .errors import (ComplexUnsupported, ConflictingComponent, Degenerate,
                     DegeneratePolynomial, EmptyIdeal, Impossible,
                     NonPositiveParameter, NotSkewonFree, NumericallyDegenerate,
                     PreconditionFailed, PremetricError, RelationViolated,
                     SingularJacobian, SingularOperator, Timeout,
                     VariableMismatch, ZeroCovector)
from .scalars import (CubeRootExt, GaussianRational, SqrtExt, rational_sqrt,
                      sqrt2_tower, sqrt_scalar)
from .tensor_core import (AREA_BASIS, ABCDBlocks, AreaOperator,
                          MediumDecomposition, blocks_from_kappa, decompose,
                          eps3, eps4, kappa_from_blocks, kappa_from_components,
                          transform, wedge_adjoint, wedge_pairing)
from .metric_hodge import (Covector4, Metric4, conformal_factor, hodge_star,
                           isotropic_medium, null_eval, signature)
from .fresnel import (Quartic1D, TammRubilar, exact_multiplicity_structure,
                      fit_perfect_square, fresnel_eval, g_tensor,
                      invariance_suite, polarization_reconstruct,
                      quartic_in_xi0, singular_points, tamm_rubilar,
                      tamm_rubilar_raw)
from .wavekernel import (HodgeKernelReport, KernelReport, L_xi_apply,
                         axion_test, hodge_kernel, kernel_report)
from .closure import (ClosureReport, KRelationsReport, ReconstructedMetric,
                      closure_check, diagonalize_A, fresnel_lightcone_check,
                      K_relations_check, normalize_chart, reconstruct_metric,
                      skewon_free_check)
from .polyalg import (MonomialOrder, MultiPoly, big_identity_expr,
                      big_identity_pit_screen, big_identity_polys, buchberger,
                      claim2_groebner_repro, full_identity_verify, normal_form,
                      pit_verify, symbolic_kappa, taylor_zero_verify)
from . import fixtures, mediumio

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "0.1.0"
