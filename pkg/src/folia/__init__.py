"""Transverse geometry and tautness diagnostics for homogeneous Riemannian foliations."""

from .diagnostics import (
    TautnessReport,
    critical_metric_residual,
    first_variation_integrand,
    normalized_total_scalar_curvature,
    ricci_tautness_pairing,
    scale_invariance_check,
    tautness_report,
)
from .document import InputDocument, generate_example, parse_input
from .lie_frame import (
    DEFAULT_TOL,
    ConnectionCoefficients,
    FrameTensor,
    LieFrameAlgebra,
    levi_civita_connection,
    rescale_transverse_metric,
    validate_algebra,
)
from .transverse import FoliationSpec, TransverseGeometry, compute_geometry, identity_residuals, validate_foliation

__version__ = "0.1.0"
