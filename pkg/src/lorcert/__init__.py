"""Exact certificates for Lorentzian polynomials and volume polynomials of convex bodies."""

from .factors import extract_power_factor, find_disjoint_split, infer, split_disjoint
from .geometry import (
    Body,
    BodySystem,
    SegmentFamily,
    check_subspace_product,
    mixed_volume,
    volume_polynomial,
    volume_slices_check,
    zonotope_volume_polynomial,
)
from .inequalities import check_af, check_af_class, check_rkt, check_shephard_det, check_shephard_power
from .lorentzian import inertia, is_lorentzian, is_mconvex
from .poly import HomoPoly, normalized_coeffs, parse, slices, substitute_linear, to_text
from .realizer import SegmentConfig, realize, residual
from .report import CertReport

__all__ = [
    "Body", "BodySystem", "CertReport", "HomoPoly", "SegmentConfig", "SegmentFamily",
    "check_af", "check_af_class", "check_rkt", "check_shephard_det", "check_shephard_power",
    "check_subspace_product", "extract_power_factor", "find_disjoint_split", "inertia", "infer",
    "is_lorentzian", "is_mconvex", "mixed_volume", "normalized_coeffs", "parse", "realize", "residual",
    "slices", "split_disjoint", "substitute_linear", "to_text", "volume_polynomial",
    "volume_slices_check", "zonotope_volume_polynomial",
]
