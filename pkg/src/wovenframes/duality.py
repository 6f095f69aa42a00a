"""Dual frames.

Every dual of a frame has the form ``S^-1 phi_i + u_i`` where the sequence
``U = {u_i}`` satisfies ``T_U T_phi^T = 0``. Writing ``U``'s synthesis
matrix as ``M W^T`` with ``W`` an orthonormal kernel basis of ``T_phi``
makes that constraint hold by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import NotAFrame, ShapeError
from .frame import Frame, frame_bounds, frame_operator, is_frame
from .rng import SplitMix64

ADMISSIBLE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PerturbationSequence:
    """A Bessel sequence ``u_1..u_n`` stored as its ``d x n`` synthesis matrix."""

    synthesis: np.ndarray
    bessel_bound: float

    @classmethod
    def from_synthesis(cls, t) -> "PerturbationSequence":
        t = numerics.as_matrix(t, "perturbation")
        t.setflags(write=False)
        s = t @ t.T
        hi = numerics.extreme_eigenvalues(0.5 * (s + s.T))[1] if t.size else 0.0
        return cls(t, max(hi, 0.0))

    @classmethod
    def zero(cls, dim: int, n: int) -> "PerturbationSequence":
        return cls.from_synthesis(np.zeros((dim, n)))

    @property
    def dim(self) -> int:
        return self.synthesis.shape[0]

    @property
    def n(self) -> int:
        return self.synthesis.shape[1]

    @property
    def vectors(self) -> np.ndarray:
        return self.synthesis.T.copy()

    def residual(self, phi: Frame) -> float:
        """Largest entry of ``T_U T_phi^T``; zero for an admissible sequence."""
        return float(np.max(np.abs(self.synthesis @ phi.synthesis.T)))

    def is_admissible(self, phi: Frame, tol: float = ADMISSIBLE_TOL) -> bool:
        return self.synthesis.shape == phi.synthesis.shape and self.residual(phi) <= tol


@dataclass(frozen=True, eq=False)
class DualFamily:
    parent: Frame
    canonical: Frame
    perturbation_basis: np.ndarray  # n x excess, orthonormal columns

    @property
    def excess(self) -> int:
        return self.perturbation_basis.shape[1]


def _require_frame(phi: Frame) -> None:
    if not is_frame(phi):
        raise NotAFrame("input does not span R^d")


def canonical_dual(phi: Frame) -> Frame:
    _require_frame(phi)
    return phi.transformed(numerics.spd_power(frame_operator(phi), -1.0))


def canonical_parseval(phi: Frame) -> Frame:
    """``S^{-1/2} phi``, the Parseval frame closest in spirit to ``phi``."""
    _require_frame(phi)
    return phi.transformed(numerics.spd_power(frame_operator(phi), -0.5))


def perturbation_space(phi: Frame) -> DualFamily:
    _require_frame(phi)
    _, w = numerics.rank_nullspace(phi.synthesis)
    w.setflags(write=False)
    return DualFamily(phi, canonical_dual(phi), w)


def make_dual(family: DualFamily, coeffs) -> tuple[Frame, PerturbationSequence]:
    """Dual with perturbation synthesis ``coeffs @ W.T``.

    ``coeffs`` is ``d x excess``; for an excess-0 frame pass a ``d x 0``
    array (or anything empty) to get the canonical dual.
    """
    d, k = family.parent.dim, family.excess
    m = np.asarray(coeffs, dtype=np.float64)
    if m.size == 0 and k == 0:
        m = np.zeros((d, 0))
    if m.shape != (d, k):
        raise ShapeError(f"coefficients must have shape {(d, k)}, got {m.shape}")
    u = PerturbationSequence.from_synthesis(m @ family.perturbation_basis.T)
    dual = Frame.from_synthesis(family.canonical.synthesis + u.synthesis)
    return dual, u


def scale_perturbation(u: PerturbationSequence, eps: float) -> PerturbationSequence:
    # exact rescaling keeps the Bessel bound consistent with eps**2 scaling
    t = u.synthesis * eps
    t.setflags(write=False)
    return PerturbationSequence(t, u.bessel_bound * eps * eps)


def dual_with(phi: Frame, u: PerturbationSequence, eps: float = 1.0) -> Frame:
    """``{S^-1 phi_i + eps * u_i}``."""
    return Frame.from_synthesis(canonical_dual(phi).synthesis + eps * u.synthesis)


def perturbation_of(phi: Frame, dual: Frame) -> PerturbationSequence:
    """Recover ``U`` from a dual: ``u_i = dual_i - S^-1 phi_i``."""
    return PerturbationSequence.from_synthesis(dual.synthesis - canonical_dual(phi).synthesis)


def random_dual(phi: Frame, seed: int, scale: float = 1.0) -> tuple[Frame, PerturbationSequence]:
    """Sample a dual with coefficient entries i.i.d. uniform on ``[-scale, scale]``.

    Draws come from SplitMix64 in row-major order over the ``d x excess``
    coefficient matrix, so a seed fixes the result.
    """
    if scale < 0:
        raise ValueError("scale must be non-negative")
    family = perturbation_space(phi)
    coeffs = SplitMix64(seed).uniform_array(-scale, scale, (phi.dim, family.excess))
    return make_dual(family, coeffs)


def is_parseval(phi: Frame, tol: float = 1e-8) -> bool:
    b = frame_bounds(phi)
    return abs(b.lower - 1.0) <= tol and abs(b.upper - 1.0) <= tol
