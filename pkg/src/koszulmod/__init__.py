"""Exact Koszul modules, resonance and Chen ranks of finite commutative differential graded algebras."""

__version__ = "0.1.0"

from .polycore import GREVLEX, LEX, FreeVector, MonomialOrder, Polynomial, parse_polynomial, rational
from .groebner import (
    FPModule, HilbertSeries, Ideal, annihilator, exterior_power, fitting_ideal, groebner_basis,
    graded_dims_truncated, hilbert_series, intersect_ideals, minimalize, minors_ideal, syzygies,
)
from .lie import LieAlgebra, builtin_lie, lower_central_series, validate_lie
from .cdga import (
    CDGA, CDGAError, SimplicialComplex, bibby_model, builtin_cdga, catalog_keys, ce_complex,
    cohomology, cohomology_algebra, cohomology_quadratic_data, conf_elliptic_h2, coproduct, exterior_cdga,
    hirsch_extension, os_braid_truncation, quadratic_cdga, tensor_product, truncate, validate_cdga,
)
from .koszul import (
    CapTooSmall, KoszulError, aomoto_dims, b1_presentation, cochain_koszul_module, crowell_cokernel,
    koszul_chain, koszul_cochain, koszul_homology, weight_d1,
)
from .invariants import (
    ChenReport, ResonanceReport, VerifyReport, chen_free, chen_ranks, jump_locus, pbw_invert,
    resonance_jump_ideal, resonance_report, resonance_support_ideal, tangent_cone_ideal, verify, witt_ranks,
)
