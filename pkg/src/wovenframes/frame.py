"""Finite frames in R^d and their spectral invariants.

Vectors are indexed from 0 in the Python API. The CLI renders index sets
1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import DimensionMismatch, ShapeError
from .numerics import REL_TOL, threshold

DUALITY_TOL = 1e-9


class Frame:
    """An ordered, immutable sequence of ``n`` vectors in ``R^d``.

    The vectors are stored exactly as given, as the columns of the synthesis
    matrix. A ``Frame`` need not span ``R^d``; use :func:`is_frame` to decide.

    >>> Frame([[1, 0], [1, 0], [0, 1]]).synthesis
    array([[1., 1., 0.],
           [0., 0., 1.]])
    """

    __slots__ = ("_t",)

    def __init__(self, vectors, dim: int | None = None):
        try:
            rows = np.array(vectors, dtype=np.float64)
        except ValueError:
            raise ShapeError("vectors must form a rectangular n x d array") from None
        if rows.ndim == 1 and rows.size == 0 and dim is not None:
            rows = rows.reshape(0, dim)
        if rows.ndim != 2:
            raise ShapeError("vectors must form a rectangular n x d array")
        if dim is not None and rows.shape[1] != dim:
            raise ShapeError(f"vectors have length {rows.shape[1]}, expected dim {dim}")
        if rows.shape[0] < 1 or rows.shape[1] < 1:
            raise ShapeError("a frame needs at least one vector of positive dimension")
        t = numerics.as_matrix(rows.T, "frame vectors")
        t.setflags(write=False)
        self._t = t

    @classmethod
    def from_synthesis(cls, t) -> "Frame":
        return cls(np.asarray(t, dtype=np.float64).T)

    @property
    def dim(self) -> int:
        return self._t.shape[0]

    @property
    def n(self) -> int:
        return self._t.shape[1]

    @property
    def synthesis(self) -> np.ndarray:
        """The ``d x n`` synthesis matrix (read-only view)."""
        return self._t

    @property
    def analysis(self) -> np.ndarray:
        return self._t.T

    @property
    def vectors(self) -> np.ndarray:
        """Copy of the vectors as the rows of an ``n x d`` array."""
        return self._t.T.copy()

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self._t[:, i].copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return self._t.shape == other._t.shape and bool(np.array_equal(self._t, other._t))

    def __hash__(self) -> int:
        return hash((self._t.shape, self._t.tobytes()))

    def __repr__(self) -> str:
        return f"Frame(dim={self.dim}, n={self.n}, vectors={self._t.T.tolist()})"

    def transformed(self, op) -> "Frame":
        """The frame ``{op @ phi_i}`` for a ``d x d`` matrix ``op``."""
        return Frame.from_synthesis(np.asarray(op, dtype=np.float64) @ self._t)

    def scaled(self, factors) -> "Frame":
        """Multiply vector ``i`` by ``factors[i]`` (or every vector by a scalar)."""
        return Frame.from_synthesis(self._t * np.asarray(factors, dtype=np.float64))

    def subframe(self, indices) -> "Frame":
        return Frame.from_synthesis(self._t[:, list(indices)])


@dataclass(frozen=True)
class BoundsReport:
    lower: float
    upper: float


@dataclass(frozen=True)
class ExcessReport:
    excess: int
    riesz_indices: tuple[int, ...]
    redundant_indices: tuple[int, ...]


def check_compatible(*frames: Frame) -> None:
    """Raise DimensionMismatch unless all frames share ``dim`` and ``n``."""
    first = frames[0]
    for f in frames[1:]:
        if f.dim != first.dim or f.n != first.n:
            raise DimensionMismatch(
                f"frames differ in shape: (d={first.dim}, n={first.n}) vs (d={f.dim}, n={f.n})"
            )


def synthesis(phi: Frame) -> np.ndarray:
    return phi.synthesis.copy()


def frame_operator(phi: Frame) -> np.ndarray:
    t = phi.synthesis
    s = t @ t.T
    return 0.5 * (s + s.T)


def frame_bounds(phi: Frame) -> BoundsReport:
    """Optimal frame bounds: the extreme eigenvalues of ``S = T T^T``.

    The lower bound is 0 (up to round-off) when ``phi`` does not span.
    """
    lo, hi = numerics.extreme_eigenvalues(frame_operator(phi))
    return BoundsReport(max(lo, 0.0), max(hi, 0.0))


def bessel_bound(phi: Frame) -> float:
    return frame_bounds(phi).upper


def is_frame(phi: Frame) -> bool:
    lo, hi = numerics.extreme_eigenvalues(frame_operator(phi))
    return lo > threshold(hi)


def riesz_bounds(phi: Frame) -> BoundsReport:
    """Extreme eigenvalues of the Gram matrix ``T^T T``."""
    t = phi.synthesis
    lo, hi = numerics.extreme_eigenvalues(t.T @ t)
    return BoundsReport(max(lo, 0.0), max(hi, 0.0))


def is_riesz_basis(phi: Frame) -> bool:
    if phi.n != phi.dim:
        return False
    b = riesz_bounds(phi)
    return b.lower > threshold(b.upper)


def excess(phi: Frame) -> ExcessReport:
    """Greedy left-to-right split into a basis of the span and redundant vectors.

    Vector ``i`` is kept when it is independent of the vectors kept before
    it; independence is judged against ``1e-10 * sigma_max`` of the whole
    synthesis matrix so that the split agrees with the global rank.
    """
    t = phi.synthesis
    sigma, _ = numerics.singular_values_jacobi(t)
    cutoff = REL_TOL * sigma.max()
    kept: list[int] = []
    redundant: list[int] = []
    for i in range(phi.n):
        trial = kept + [i]
        s, _ = numerics.singular_values_jacobi(t[:, trial])
        if cutoff > 0 and s.min() > cutoff:
            kept.append(i)
        else:
            redundant.append(i)
    return ExcessReport(len(redundant), tuple(kept), tuple(redundant))


def rank(phi: Frame) -> int:
    return numerics.rank_nullspace(phi.synthesis)[0]


def verify_duality(phi: Frame, psi: Frame, tol: float = DUALITY_TOL) -> bool:
    """True when ``f = sum <f, psi_i> phi_i`` for all f, i.e. ``T_phi T_psi^T = I``."""
    check_compatible(phi, psi)
    prod = phi.synthesis @ psi.synthesis.T
    return bool(np.max(np.abs(prod - np.eye(phi.dim))) <= tol)


def orthonormal_basis(d: int) -> Frame:
    return Frame(np.eye(d))
