"""Exact finite-field workbench for GRS, twisted Reed-Solomon and forged
non-GRS MDS codes, with replayable certificates."""

from .codes import LinearCode, dual, is_mds, min_distance, schur_square, square_dim, systematic_form
from .forge import Certificate, ForgeParams, certify, certify_forge, forge_build, verify_certificate
from .gf import Fe, Field, Poly
from .grs import INF, CauchyParams, GrsParams, cauchy_build, cauchy_fit, grs_decide, grs_generator
from .gtrs import GtrsParams, Twist, dual_square_witness, gtrs_dual_known, gtrs_generator, gtrs_systematic
from .matfield import Mat

__all__ = [
    "INF", "CauchyParams", "Certificate", "Fe", "Field", "ForgeParams", "GrsParams", "GtrsParams",
    "LinearCode", "Mat", "Poly", "Twist", "cauchy_build", "cauchy_fit", "certify", "certify_forge",
    "dual", "dual_square_witness", "forge_build", "grs_decide", "grs_generator", "gtrs_dual_known",
    "gtrs_generator", "gtrs_systematic", "is_mds", "min_distance", "schur_square", "square_dim",
    "systematic_form", "verify_certificate",
]
