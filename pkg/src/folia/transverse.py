"""Transverse geometry of a homogeneous Riemannian foliation.

The foliation is given by splitting the orthonormal invariant frame into
leaf indices ``L`` and normal indices ``N``.  Every object here is an
invariant (constant-component) tensor over ``N``; arrays are indexed by
position in ``fol.normal``, not by frame index.  Vectors and 1-forms share
components (the frame is orthonormal), so ``tau_b`` and ``kappa_b`` are the
same array.

Conventions, all fixed by the Carriere example (``kappa_b = -log(rho) dx_3``,
``Ric^Q = -(log rho)^2 g_Q``):

* ``nabla[u, y, z]``: ``nabla_{e_u} e_y = sum_z nabla[u, y, z] e_z`` for any
  frame index ``u`` and normal ``y, z``.  Leaf rows are ``pi[e_u, e_y]``,
  normal rows are ``pi(D_{e_u} e_y)``.
* ``R[x, y, z, w] = g_Q(R(e_x, e_y) e_z, e_w)`` with
  ``R(X, Y) Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z``,
  so ``R[x, y, x, y]`` is the sectional curvature.
* ``Ric[y, z] = sum_x R[x, y, x, z]``.
* ``(nabla eta)[x, y] = (nabla_{e_x} eta)(e_y)``; divergences contract the
  first slot; ``i_tau`` inserts ``tau`` in the first slot.
* ``d eta[x, y] = -eta([e_x, e_y])`` (no 1/2), ``(a ^ b)[x, y] = a_x b_y - a_y b_x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidFoliation, NotIntegrable, NotRiemannian, StandingAssumptionViolation
from .lie_frame import (
    DEFAULT_TOL,
    ConnectionCoefficients,
    FrameTensor,
    LieFrameAlgebra,
    curvature_symmetry_residual,
    levi_civita_connection,
)


@dataclass(frozen=True)
class FoliationSpec:
    """Partition of frame indices (0-based) into leaf and normal directions."""

    leaf: tuple[int, ...]
    normal: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaf", tuple(int(i) for i in self.leaf))
        object.__setattr__(self, "normal", tuple(int(i) for i in self.normal))

    @classmethod
    def from_leaf(cls, leaf: Sequence[int], dimension: int) -> "FoliationSpec":
        leaf = tuple(sorted(int(i) for i in leaf))
        normal = tuple(i for i in range(dimension) if i not in leaf)
        return cls(leaf, normal)

    @property
    def p(self) -> int:
        return len(self.leaf)

    @property
    def q(self) -> int:
        return len(self.normal)


def _check_partition(alg: LieFrameAlgebra, fol: FoliationSpec):
    n = alg.dimension
    everything = list(fol.leaf) + list(fol.normal)
    if any(i < 0 or i >= n for i in everything):
        raise InvalidFoliation(f"frame index out of range 1..{n}")
    if len(set(everything)) != len(everything) or len(everything) != n:
        raise InvalidFoliation("leaf and normal indices must partition the frame")
    if not fol.leaf or not fol.normal:
        raise InvalidFoliation("leaf and normal index sets must both be nonempty")


def validate_foliation(alg: LieFrameAlgebra, fol: FoliationSpec, tol: float = DEFAULT_TOL) -> FoliationSpec:
    """Check Frobenius integrability and leaf-invariance of ``g_Q``.

    Raises :class:`NotIntegrable` if some ``[e_a, e_b]`` (a, b leaf) has a
    normal component, :class:`NotRiemannian` if
    ``c[a, x, y] + c[a, y, x] != 0`` for a leaf, x, y normal.
    """
    _check_partition(alg, fol)
    c = alg.structure_constants
    L, N = list(fol.leaf), list(fol.normal)
    into_normal = np.abs(c[np.ix_(L, L, N)])
    if into_normal.max() > tol:
        a, b, x = np.unravel_index(np.argmax(into_normal), into_normal.shape)
        raise NotIntegrable(L[a], L[b], N[x], float(into_normal[a, b, x]))
    block = c[np.ix_(L, N, N)]
    lie_g = np.abs(block + block.transpose(0, 2, 1))
    if lie_g.max() > tol:
        a, x, y = np.unravel_index(np.argmax(lie_g), lie_g.shape)
        raise NotRiemannian(L[a], N[x], N[y], float(lie_g[a, x, y]))
    return fol


def mean_curvature_form(alg: LieFrameAlgebra, fol: FoliationSpec) -> np.ndarray:
    """``kappa_b(e_x) = sum_{a in L} g(D_{e_a} e_a, e_x)`` for x normal."""
    gamma = levi_civita_connection(alg).gamma
    L, N = list(fol.leaf), list(fol.normal)
    return np.array([gamma[L, L, x].sum() for x in N])


def transverse_connection(alg: LieFrameAlgebra, fol: FoliationSpec) -> ConnectionCoefficients:
    c = alg.structure_constants
    gamma = levi_civita_connection(alg).gamma
    L, N = list(fol.leaf), list(fol.normal)
    nabla = gamma[:, N, :][:, :, N].copy()
    nabla[L] = c[np.ix_(L, N, N)]
    return ConnectionCoefficients(nabla, columns=fol.normal)


def _nabla(alg, fol) -> np.ndarray:
    return transverse_connection(alg, fol).gamma


def _riemann_from(c: np.ndarray, nabla: np.ndarray, N: list[int]) -> np.ndarray:
    nn = nabla[N]
    r = np.einsum("xzk,ykw->xyzw", nn, nn) - np.einsum("yzk,xkw->xyzw", nn, nn)
    # nabla_[X,Y] Z: the bracket may have leaf and normal parts, each row uses its own rule
    r += np.einsum("xyu,uzw->xyzw", c[np.ix_(N, N, range(c.shape[0]))], nabla)
    return r


def transverse_curvature(alg: LieFrameAlgebra, fol: FoliationSpec):
    """Return ``(riemann_q, ricci_q, scalar_q)`` over the normal frame."""
    r = _riemann_from(alg.structure_constants, _nabla(alg, fol), list(fol.normal))
    ric = np.einsum("xyxz->yz", r)
    return r, ric, float(np.trace(ric))


def covariant_derivative_one_form(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``(nabla_tr eta)[x, y] = -sum_k eta_k nabla[x, y, k]`` for invariant eta."""
    nabla = _nabla(alg, fol)
    return -np.einsum("xyk,k->xy", nabla[list(fol.normal)], np.asarray(eta, dtype=float))


def tautness_tensor(alg: LieFrameAlgebra, fol: FoliationSpec) -> np.ndarray:
    """``T_kappa = nabla_tr kappa_b - kappa_b (x) kappa_b``."""
    kappa = mean_curvature_form(alg, fol)
    return covariant_derivative_one_form(alg, fol, kappa) - np.outer(kappa, kappa)


def div_q_one_form(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> float:
    nn = _nabla(alg, fol)[list(fol.normal)]
    return float(-np.einsum("xxk,k->", nn, np.asarray(eta, dtype=float)))


def div_q_sym2(alg: LieFrameAlgebra, fol: FoliationSpec, v) -> np.ndarray:
    """``(div_Q v)(e_y) = sum_x (nabla_{e_x} v)(e_x, e_y)`` for an invariant 2-tensor.

    Works for any 2-tensor, symmetric or not; the first slot is contracted.
    """
    nn = _nabla(alg, fol)[list(fol.normal)]
    v = np.asarray(v, dtype=float)
    return -(np.einsum("ky,xxk->y", v, nn) + np.einsum("xk,xyk->y", v, nn))


def div_b_one_form(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> float:
    kappa = mean_curvature_form(alg, fol)
    return div_q_one_form(alg, fol, eta) - float(kappa @ np.asarray(eta, dtype=float))


def div_b_sym2(alg: LieFrameAlgebra, fol: FoliationSpec, v) -> np.ndarray:
    kappa = mean_curvature_form(alg, fol)
    return div_q_sym2(alg, fol, v) - kappa @ np.asarray(v, dtype=float)


def exterior_derivative_one_form(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``d eta[x, y] = -sum_k eta_k c[x, y, k]`` over normal x, y, k."""
    N = list(fol.normal)
    c = alg.structure_constants[np.ix_(N, N, N)]
    return -np.einsum("xyk,k->xy", c, np.asarray(eta, dtype=float))


def lie_derivative_one_form(alg: LieFrameAlgebra, fol: FoliationSpec, vector, eta) -> np.ndarray:
    """``L_V eta = d(i_V eta) + i_V d eta`` for invariant V (normal) and eta; the first term is 0."""
    return np.asarray(vector, dtype=float) @ exterior_derivative_one_form(alg, fol, eta)


def leaf_lie_derivative(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``(L_{e_a} eta)(e_y)`` for every leaf a and normal y; zero iff eta is basic."""
    L, N = list(fol.leaf), list(fol.normal)
    return -np.einsum("ayk,k->ay", alg.structure_constants[np.ix_(L, N, N)], np.asarray(eta, dtype=float))


def a_tau_operator(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``A_tau eta = L_tau eta - nabla_tau eta``."""
    tau = mean_curvature_form(alg, fol)
    eta = np.asarray(eta, dtype=float)
    return lie_derivative_one_form(alg, fol, tau, eta) - tau @ covariant_derivative_one_form(alg, fol, eta)


def rough_laplacian(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``nabla_tr^* nabla_tr eta`` with ``nabla_tr^* = -div_B``."""
    return -div_b_sym2(alg, fol, covariant_derivative_one_form(alg, fol, eta))


def ricci_action(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``Ric^Q(eta)``, i.e. ``Ric^Q(eta^#, .)``."""
    _, ric, _ = transverse_curvature(alg, fol)
    return ric @ np.asarray(eta, dtype=float)


def jacobi_operator(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``J^Q(eta) = nabla^* nabla eta - Ric^Q(eta)``."""
    return rough_laplacian(alg, fol, eta) - ricci_action(alg, fol, eta)


def basic_laplacian(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """``Delta_B eta = -(div_B d eta + d div_B eta)``; ``div_B eta`` is constant so only the first term survives."""
    return -div_b_sym2(alg, fol, exterior_derivative_one_form(alg, fol, eta))


def hr_twisted_laplacian(alg: LieFrameAlgebra, fol: FoliationSpec, eta) -> np.ndarray:
    """Twisted Laplacian ``d~ delta~ + delta~ d~`` on an invariant 1-form.

    ``d~ = d - kappa ^ /2`` and ``delta~ = -div_B - i_kappa / 2``.
    """
    kappa = mean_curvature_form(alg, fol)
    eta = np.asarray(eta, dtype=float)
    # d~ of the constant function delta~ eta is -(delta~ eta) kappa / 2
    codiff = -div_b_one_form(alg, fol, eta) - 0.5 * float(kappa @ eta)
    first = -0.5 * codiff * kappa
    omega = exterior_derivative_one_form(alg, fol, eta) - 0.5 * (np.outer(kappa, eta) - np.outer(eta, kappa))
    second = -div_b_sym2(alg, fol, omega) - 0.5 * kappa @ omega
    return first + second


@dataclass(frozen=True, eq=False)
class TransverseGeometry:
    """Every transverse object of one validated (algebra, foliation) pair."""

    algebra: LieFrameAlgebra
    foliation: FoliationSpec
    ambient_connection: ConnectionCoefficients
    transverse_connection: ConnectionCoefficients
    riemann_q: FrameTensor
    ricci_q: FrameTensor
    scalar_q: float
    kappa_b: FrameTensor
    tau_b: FrameTensor
    nabla_kappa: FrameTensor
    t_kappa: FrameTensor
    div_b_kappa: float
    tol: float = DEFAULT_TOL

    @property
    def q(self) -> int:
        return self.foliation.q

    @property
    def kappa(self) -> np.ndarray:
        return self.kappa_b.entries

    @property
    def ricci(self) -> np.ndarray:
        return self.ricci_q.entries

    @property
    def tautness(self) -> np.ndarray:
        return self.t_kappa.entries

    @property
    def div_b_kappa_zero(self) -> bool:
        return abs(self.div_b_kappa) <= self.tol

    def standing_assumptions(self) -> dict[str, float]:
        """Residuals of: kappa_b basic, closed, basic-coclosed."""
        alg, fol, k = self.algebra, self.foliation, self.kappa
        return {
            "kappa_basic": _maxabs(leaf_lie_derivative(alg, fol, k)),
            "kappa_closed": _maxabs(exterior_derivative_one_form(alg, fol, k)),
            "div_b_kappa": abs(self.div_b_kappa),
        }

    def check_standing_assumptions(self):
        for name, value in self.standing_assumptions().items():
            if value > self.tol:
                raise StandingAssumptionViolation(name, value)


def _maxabs(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0


def compute_geometry(alg: LieFrameAlgebra, fol: FoliationSpec, tol: float = DEFAULT_TOL) -> TransverseGeometry:
    """Validate the foliation and bundle all transverse objects.

    ``alg`` is expected to have passed :func:`folia.lie_frame.validate_algebra`.
    """
    validate_foliation(alg, fol, tol)
    N = fol.normal
    kappa = mean_curvature_form(alg, fol)
    r, ric, s = transverse_curvature(alg, fol)
    nk = covariant_derivative_one_form(alg, fol, kappa)
    # symmetry classes are checked loosely here; identity_residuals reports the exact numbers
    loose = max(tol, 1e-6)
    return TransverseGeometry(
        algebra=alg,
        foliation=fol,
        ambient_connection=levi_civita_connection(alg),
        transverse_connection=transverse_connection(alg, fol),
        riemann_q=FrameTensor(r, N, "curvature-4", tol=loose),
        ricci_q=FrameTensor(ric, N, "symmetric-2", tol=loose),
        scalar_q=s,
        kappa_b=FrameTensor(kappa, N),
        tau_b=FrameTensor(kappa, N),
        nabla_kappa=FrameTensor(nk, N),
        t_kappa=FrameTensor(nk - np.outer(kappa, kappa), N),
        div_b_kappa=div_b_one_form(alg, fol, kappa),
        tol=tol,
    )


def identity_residuals(geom: TransverseGeometry) -> dict[str, float]:
    """Max-abs residual of every identity the engine checks, keyed by name."""
    alg, fol = geom.algebra, geom.foliation
    c = alg.structure_constants
    gamma = geom.ambient_connection.gamma
    nabla = geom.transverse_connection.gamma
    N = list(fol.normal)
    kappa, ric = geom.kappa, geom.ricci
    r = geom.riemann_q.entries
    sq = float(kappa @ kappa)
    rough = rough_laplacian(alg, fol, kappa)
    ric_k = ric @ kappa
    t = geom.tautness
    return {
        "torsion_free": _maxabs(gamma - gamma.transpose(1, 0, 2) - c),
        "metric_compatibility": max(
            _maxabs(gamma + gamma.transpose(0, 2, 1)), _maxabs(nabla + nabla.transpose(0, 2, 1))
        ),
        "curvature_symmetry": curvature_symmetry_residual(r),
        "first_bianchi": _maxabs(r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)),
        "ricci_symmetry": _maxabs(ric - ric.T),
        "nabla_kappa_symmetry": _maxabs(geom.nabla_kappa.entries - geom.nabla_kappa.entries.T),
        "trace_free": abs(float(np.trace(t))),
        "divergence_relation": abs(div_q_one_form(alg, fol, kappa) - geom.div_b_kappa - sq),
        "div_b_definition": _maxabs(div_b_sym2(alg, fol, t) - div_q_sym2(alg, fol, t) + kappa @ t),
        "contracted_bianchi": _maxabs(div_q_sym2(alg, fol, ric)),
        "tautness_divergence": _maxabs(div_b_sym2(alg, fol, t) - ric_k),
        "weitzenbock": _maxabs(basic_laplacian(alg, fol, kappa) - ric_k - rough - a_tau_operator(alg, fol, kappa)),
        "hr_weitzenbock": _maxabs(hr_twisted_laplacian(alg, fol, kappa) - ric_k - rough - 0.25 * sq * kappa),
        "jacobi_chain": _maxabs(jacobi_operator(alg, fol, kappa) + 2.0 * ric_k),
    }
