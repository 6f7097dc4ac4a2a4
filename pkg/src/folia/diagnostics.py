"""Tautness verdicts, criticality and variation diagnostics.

All integrals over the compact quotient are evaluated pointwise with unit
reference volume: every input is invariant, so integrands are constant.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InconsistentCriteria, ShapeMismatch
from .lie_frame import DEFAULT_TOL, LieFrameAlgebra, rescale_transverse_metric
from .transverse import FoliationSpec, TransverseGeometry, compute_geometry, identity_residuals, jacobi_operator

INDETERMINATE_FACTOR = 10.0


@dataclass
class TautnessReport:
    """Outcome of the four equivalent tautness criteria plus criticality data.

    ``criteria`` maps each criterion to its own verdict (True = taut):
    ``kappa_zero``, ``t_kappa_zero``, ``ric_tau_tau_nonnegative``,
    ``kappa_jacobi_field``.
    """

    taut: bool
    verdict: str
    kappa_norm: float
    t_kappa_norm: float
    ric_tau_tau: float
    jacobi_kappa_norm: float
    jacobi_eigenvalue: float | None
    jacobi_eigen_residual: float | None
    einstein: bool
    lambda_q: float | None
    critical_residual_norm: float
    critical: bool
    criteria: dict[str, bool]
    identity_residuals: dict[str, float]
    standing_assumptions: dict[str, float]
    tolerance: float
    failed_identities: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def critical_metric_residual(geom: TransverseGeometry) -> tuple[float, np.ndarray]:
    """``(lambda, Ric^Q + T_kappa - lambda g_Q)`` with ``lambda = S^Q / q``."""
    return _critical_residual(geom.ricci, geom.tautness, geom.scalar_q)


def _critical_residual(ric, t, scalar):
    q = ric.shape[0]
    lam = scalar / q
    return lam, ric + t - lam * np.eye(q)


def first_variation_integrand(geom: TransverseGeometry, h) -> float:
    """Pointwise integrand of the first variation of the normalized total transverse
    scalar curvature along ``d/dt g_Q = h``.

    The average scalar curvature equals ``S^Q`` for invariant data.
    """
    h = np.asarray(h, dtype=float)
    q = geom.q
    if h.shape != (q, q):
        raise ShapeMismatch(f"variation must have shape ({q}, {q}), got {h.shape}")
    s = geom.scalar_q
    g = np.eye(q)
    e = geom.tautness + geom.ricci - 0.5 * s * g + (q - 2) / (2 * q) * s * g
    return -float(np.sum(h * e))


def ricci_tautness_pairing(geom: TransverseGeometry) -> float:
    """``g_Q(Ric^Q, T_kappa)`` at a point."""
    return float(np.sum(geom.ricci * geom.tautness))


def normalized_total_scalar_curvature(geom: TransverseGeometry, volume: float = 1.0) -> float:
    """``vol^((2-q)/q) * S^Q * vol`` for constant ``S^Q``."""
    q = geom.q
    return volume ** ((2 - q) / q) * geom.scalar_q * volume


def scale_invariance_check(alg: LieFrameAlgebra, fol: FoliationSpec, factor: float, tol: float = DEFAULT_TOL):
    """Normalized functional before and after ``g_Q -> factor * g_Q``.

    The reference volume is 1; rescaling the transverse metric multiplies it
    by ``factor ** (q / 2)``.
    """
    scaled = rescale_transverse_metric(alg, fol, factor)
    before = normalized_total_scalar_curvature(compute_geometry(alg, fol, tol))
    after_geom = compute_geometry(scaled, fol, tol)
    after = normalized_total_scalar_curvature(after_geom, factor ** (fol.q / 2))
    return before, after


def tautness_report(geom: TransverseGeometry, tol: float | None = None) -> TautnessReport:
    """Evaluate the four tautness criteria independently and cross-check them.

    Raises :class:`InconsistentCriteria` when the criteria disagree outside the
    indeterminate band ``tol < |kappa_b| < 10 tol``.
    """
    tol = geom.tol if tol is None else tol
    alg, fol = geom.algebra, geom.foliation
    kappa, ric, t = geom.kappa, geom.ricci, geom.tautness
    q = geom.q

    kappa_norm = float(np.linalg.norm(kappa))
    t_norm = float(np.linalg.norm(t))
    ric_tt = float(kappa @ ric @ kappa)
    jk = jacobi_operator(alg, fol, kappa)
    jk_norm = float(np.linalg.norm(jk))

    criteria = {
        "kappa_zero": kappa_norm <= tol,
        "t_kappa_zero": t_norm <= tol,
        "ric_tau_tau_nonnegative": ric_tt >= -tol,
        "kappa_jacobi_field": jk_norm <= tol,
    }
    if tol < kappa_norm < INDETERMINATE_FACTOR * tol:
        verdict = "indeterminate"
    else:
        if len(set(criteria.values())) != 1:
            raise InconsistentCriteria(f"tautness criteria disagree: {criteria}")
        verdict = "taut" if criteria["kappa_zero"] else "nontaut"

    mu = mu_residual = None
    if kappa_norm > tol:
        # Rayleigh quotient, accepted only if kappa really is an eigenvector
        cand = float(jk @ kappa) / kappa_norm**2
        res = float(np.linalg.norm(jk - cand * kappa))
        if res <= tol * kappa_norm:
            mu, mu_residual = cand, res

    lam_candidate = geom.scalar_q / q
    einstein = float(np.max(np.abs(ric - lam_candidate * np.eye(q)))) <= tol
    _, crit = critical_metric_residual(geom)
    crit_norm = float(np.linalg.norm(crit))

    residuals = identity_residuals(geom)
    failed = [name for name, value in residuals.items() if value > tol]
    return TautnessReport(
        taut=criteria["kappa_zero"],
        verdict=verdict,
        kappa_norm=kappa_norm,
        t_kappa_norm=t_norm,
        ric_tau_tau=ric_tt,
        jacobi_kappa_norm=jk_norm,
        jacobi_eigenvalue=mu,
        jacobi_eigen_residual=mu_residual,
        einstein=einstein,
        lambda_q=lam_candidate if einstein else None,
        critical_residual_norm=crit_norm,
        critical=crit_norm <= tol,
        criteria=criteria,
        identity_residuals=residuals,
        standing_assumptions=geom.standing_assumptions(),
        tolerance=tol,
        failed_identities=failed,
    )
