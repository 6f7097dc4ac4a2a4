"""Lie algebras with an orthonormal invariant frame.

Structure constants are stored dense as ``c[i, j, k]`` with
``[e_i, e_j] = sum_k c[i, j, k] e_k``.  Indices are 0-based here; the
document layer in :mod:`folia.cli` converts to and from 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AntisymmetryViolation, InvalidFactor, JacobiViolation, ShapeMismatch, ValidationError

DEFAULT_TOL = 1e-9


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LieFrameAlgebra:
    """Structure constants of a Lie algebra in an orthonormal frame."""

    structure_constants: np.ndarray
    frame_names: tuple[str, ...] | None = None

    def __post_init__(self):
        c = _frozen(self.structure_constants)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ShapeMismatch(f"structure constants must have shape (n, n, n), got {c.shape}")
        if c.shape[0] < 1:
            raise ShapeMismatch("dimension must be >= 1")
        object.__setattr__(self, "structure_constants", c)
        if self.frame_names is not None:
            names = tuple(str(s) for s in self.frame_names)
            if len(names) != c.shape[0]:
                raise ShapeMismatch(f"expected {c.shape[0]} frame names, got {len(names)}")
            object.__setattr__(self, "frame_names", names)

    @property
    def dimension(self) -> int:
        return self.structure_constants.shape[0]

    @classmethod
    def zeros(cls, n: int) -> "LieFrameAlgebra":
        return cls(np.zeros((n, n, n)))

    @classmethod
    def from_brackets(cls, n: int, brackets, frame_names=None) -> "LieFrameAlgebra":
        """Build from ``(i, j, k, value)`` entries (0-based, i != j).

        The mirror entry ``c[j, i, k] = -value`` is filled in.
        """
        c = np.zeros((n, n, n))
        for i, j, k, value in brackets:
            c[i, j, k] += value
            c[j, i, k] -= value
        return cls(c, frame_names)

    def bracket(self, x, y) -> np.ndarray:
        """Bracket of two constant-coefficient vectors given as component arrays."""
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants)

    def nonzero_brackets(self, tol: float = 0.0) -> list[tuple[int, int, int, float]]:
        """Entries with i < j and ``|c[i, j, k]| > tol``."""
        c = self.structure_constants
        n = self.dimension
        return [
            (i, j, k, float(c[i, j, k]))
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(n)
            if abs(c[i, j, k]) > tol
        ]


@dataclass(frozen=True, eq=False)
class FrameTensor:
    """Dense tensor over a subset of frame indices.

    ``indices`` are the (0-based) frame indices each slot ranges over;
    ``symmetry`` is one of ``none``, ``symmetric-2``, ``curvature-4``.
    """

    entries: np.ndarray
    indices: tuple[int, ...]
    symmetry: str = "none"
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        e = _frozen(self.entries)
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "indices", idx)
        if e.shape != (len(idx),) * e.ndim:
            raise ShapeMismatch(f"entries of shape {e.shape} do not live over {len(idx)} indices")
        if self.symmetry == "symmetric-2":
            if e.ndim != 2:
                raise ShapeMismatch("symmetric-2 tensor must have rank 2")
            err = float(np.max(np.abs(e - e.T), initial=0.0))
            if err > self.tol:
                raise ValidationError(f"tensor is not symmetric (residual {err:.3e})")
        elif self.symmetry == "curvature-4":
            if e.ndim != 4:
                raise ShapeMismatch("curvature-4 tensor must have rank 4")
            err = curvature_symmetry_residual(e)
            if err > self.tol:
                raise ValidationError(f"tensor lacks curvature symmetries (residual {err:.3e})")
        elif self.symmetry != "none":
            raise ValueError(f"unknown symmetry class {self.symmetry!r}")

    @property
    def rank(self) -> int:
        return self.entries.ndim

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.entries**2)))


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    """``gamma[i, j, k]`` with ``D_{e_i} e_j = sum_k gamma[i, j, k] e_k``.

    For a transverse connection the last two axes run over ``columns``
    (normal frame indices) while the first axis runs over the full frame.
    """

    gamma: np.ndarray
    columns: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", _frozen(self.gamma))
        if self.columns is not None:
            object.__setattr__(self, "columns", tuple(int(i) for i in self.columns))


def curvature_symmetry_residual(r: np.ndarray) -> float:
    """Max violation of slot antisymmetries and pair symmetry of a 4-tensor."""
    if r.size == 0:
        return 0.0
    return float(
        max(
            np.max(np.abs(r + r.transpose(1, 0, 2, 3))),
            np.max(np.abs(r + r.transpose(0, 1, 3, 2))),
            np.max(np.abs(r - r.transpose(2, 3, 0, 1))),
        )
    )


def antisymmetry_residual(c: np.ndarray) -> np.ndarray:
    return c + c.transpose(1, 0, 2)


def jacobi_residual(c: np.ndarray) -> np.ndarray:
    """``J[i, j, l, k]``: e_k component of the cyclic sum [[e_i,e_j],e_l] + ..."""
    t = np.einsum("ijm,mlk->ijlk", c, c)
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def validate_algebra(alg: LieFrameAlgebra, tol: float = DEFAULT_TOL) -> LieFrameAlgebra:
    """Check antisymmetry and the Jacobi identity; return the antisymmetrized algebra.

    Raises :class:`AntisymmetryViolation` or :class:`JacobiViolation` at the
    worst offending index when a residual exceeds ``tol``.
    """
    c = alg.structure_constants
    anti = np.abs(antisymmetry_residual(c))
    if anti.size and anti.max() > tol:
        i, j, k = np.unravel_index(np.argmax(anti), anti.shape)
        raise AntisymmetryViolation(int(i), int(j), int(k), float(anti[i, j, k]))
    c = 0.5 * (c - c.transpose(1, 0, 2))
    jac = np.abs(jacobi_residual(c))
    if jac.size and jac.max() > tol:
        i, j, l, k = np.unravel_index(np.argmax(jac), jac.shape)
        raise JacobiViolation(int(i), int(j), int(l), int(k), float(jac[i, j, l, k]))
    return LieFrameAlgebra(c, alg.frame_names)


def levi_civita_connection(alg: LieFrameAlgebra) -> ConnectionCoefficients:
    """Levi-Civita connection of the left-invariant metric making the frame orthonormal.

    Koszul formula for constant-coefficient frame fields::

        gamma[i, j, k] = (c[i, j, k] - c[j, k, i] + c[k, i, j]) / 2
    """
    c = alg.structure_constants
    gamma = 0.5 * (c - np.einsum("jki->ijk", c) + np.einsum("kij->ijk", c))
    return ConnectionCoefficients(gamma)


def rescale_transverse_metric(alg: LieFrameAlgebra, fol, factor: float) -> LieFrameAlgebra:
    """Re-express brackets after ``g_Q -> factor * g_Q`` with the leaf metric fixed.

    The new orthonormal frame is ``e_x / sqrt(factor)`` on normal indices,
    so ``c'[i, j, k] = c[i, j, k] * s_i * s_j / s_k`` with ``s = factor**-0.5``
    on normal indices and 1 on leaf indices.
    """
    if not np.isfinite(factor) or factor <= 0:
        raise InvalidFactor(f"rescale factor must be positive, got {factor}")
    s = np.ones(alg.dimension)
    s[list(fol.normal)] = 1.0 / np.sqrt(factor)
    c = alg.structure_constants * s[:, None, None] * s[None, :, None] / s[None, None, :]
    return LieFrameAlgebra(c, alg.frame_names)


def change_frame(alg: LieFrameAlgebra, rotation: np.ndarray) -> LieFrameAlgebra:
    """Structure constants in the frame ``e'_i = sum_p rotation[i, p] e_p``.

    ``rotation`` must be orthogonal for the new frame to stay orthonormal.
    """
    o = np.asarray(rotation, dtype=float)
    c = np.einsum("ip,jq,pqr,kr->ijk", o, o, alg.structure_constants, o)
    return LieFrameAlgebra(c)


def permute_frame(alg: LieFrameAlgebra, order: Sequence[int]) -> LieFrameAlgebra:
    """Relabel so that new index ``i`` is old index ``order[i]``."""
    order = list(order)
    c = alg.structure_constants[np.ix_(order, order, order)]
    names = None if alg.frame_names is None else tuple(alg.frame_names[i] for i in order)
    return LieFrameAlgebra(c, names)
