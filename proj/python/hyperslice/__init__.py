"""Volumes of hyperplane sections of the unit cube."""

from ._hyperslice import (
    CertificateReport,
    CutClassification,
    DecayCheck,
    Error,
    McEstimate,
    OptimizerReport,
    PairResidual,
    QuadCoeffs,
    RigorousCertificate,
    SectionSpec,
    VolumeResult,
    certify_rigorous,
    classify_cut,
    closed_form_max,
    decay_inequality_check,
    default_y_grid,
    halfspace_volume,
    maximize,
    mc_halfspace_volume,
    mc_section_volume,
    pair_condition_check,
    quad_coeffs,
    quad_roots,
    section_volume,
    section_volume_integral,
    sigma,
    sign_certificates,
)

__all__ = [name for name in dir() if not name.startswith("_")]
