"""Dense real linear algebra on small matrices.

Everything here works on ``float64`` numpy arrays. The eigensolver is cyclic
Jacobi, which is accurate and deterministic for the desk-scale matrices a
finite frame produces (dimension up to a few dozen).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NonFiniteValue, NonSymmetric, NotPositiveDefinite, ShapeError

# Frame-decision threshold: lambda_min > ABS_TOL + REL_TOL * lambda_max.
ABS_TOL = 1e-12
REL_TOL = 1e-10

SYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100


class SpectralDecomposition(NamedTuple):
    """Eigenvalues in ascending order and the matching unit eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite 2-D float64 array (a fresh copy)."""
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2:
        raise ShapeError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteValue(f"{name} has non-finite entries")
    return a


def threshold(lmax: float) -> float:
    """Smallest eigenvalue a frame operator must exceed to count as invertible."""
    return ABS_TOL + REL_TOL * max(lmax, 0.0)


def _symmetrized(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    scale = np.linalg.norm(a)
    asym = np.linalg.norm(a - a.T)
    if asym > SYMMETRY_TOL * scale:
        raise NonSymmetric(f"relative asymmetry {asym / scale:.3e} exceeds {SYMMETRY_TOL:g}")
    return 0.5 * (a + a.T)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # first component that is not round-off gets a positive sign
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        big = np.flatnonzero(np.abs(col) > 1e-12 * max(np.abs(col).max(), 1e-300))
        if big.size and col[big[0]] < 0:
            vectors[:, j] = -col
    return vectors


def _rotation(app: float, aqq: float, apq: float) -> tuple[float, float]:
    tau = (aqq - app) / (2.0 * apq)
    if abs(tau) > 1e150:
        t = 0.5 / tau
    else:
        t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c


def sym_eig(m) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    The input is symmetrized as ``(M + M.T) / 2`` after checking that its
    relative asymmetry is below ``1e-12``. Iteration stops once the
    off-diagonal Frobenius norm falls below ``1e-14 * ||M||_F``.

    Raises
    ------
    NonSymmetric
        The input is not symmetric within tolerance.
    NoConvergence
        The off-diagonal mass did not vanish within 100 sweeps.
    """
    sym = _symmetrized(m)
    n = sym.shape[0]
    # plain lists: per-element numpy indexing dominates at these sizes
    a = sym.tolist()
    v = np.eye(n).tolist()
    target = JACOBI_TOL * float(np.linalg.norm(sym))
    for _ in range(MAX_SWEEPS + 1):
        off = math.sqrt(sum(a[i][j] * a[i][j] for i in range(n) for j in range(n) if i != j))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                c, s = _rotation(a[p][p], a[q][q], apq)
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
                rp, rq = a[p], a[q]
                for k in range(n):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - s * y
                    rq[k] = s * x + c * y
                rp[q] = rq[p] = 0.0
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = c * x - s * y
                    row[q] = s * x + c * y
    else:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    w = np.array([a[i][i] for i in range(n)])
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], _fix_signs(np.array(v).reshape(n, n)[:, order]))


def extreme_eigenvalues(m) -> tuple[float, float]:
    w = sym_eig(m).eigenvalues
    return float(w[0]), float(w[-1])


def operator_norm(m) -> float:
    """Largest singular value, ``sqrt(lambda_max(M.T @ M))``.

    The smaller of ``M.T @ M`` and ``M @ M.T`` is decomposed; both share the
    nonzero spectrum.
    """
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    gram = a.T @ a if a.shape[1] <= a.shape[0] else a @ a.T
    return math.sqrt(max(sym_eig(gram).eigenvalues[-1], 0.0))


def spd_power(m, p: float) -> np.ndarray:
    """``V diag(lambda**p) V.T`` for a symmetric positive definite matrix.

    Intended for ``p`` in ``{-1, 1/2, -1/2}`` but any real power works.
    """
    w, v = sym_eig(m)
    if w[0] <= threshold(w[-1]):
        raise NotPositiveDefinite(f"smallest eigenvalue {w[0]:.3e} is not positive")
    out = (v * w**p) @ v.T
    return 0.5 * (out + out.T)


def singular_values_jacobi(m) -> tuple[np.ndarray, np.ndarray]:
    """One-sided (Hestenes) Jacobi SVD.

    Returns ``(sigma, V)`` where ``M @ V`` has mutually orthogonal columns of
    norms ``sigma``. Unlike ``sqrt(eig(M.T M))`` this resolves small singular
    values to relative accuracy, which rank decisions need.
    """
    a = as_matrix(m)
    cols = a.shape[1]
    colv = a.T.tolist()
    v = np.eye(cols).tolist()  # v[j] is column j of V
    # columns at round-off level never decorrelate; they are far below any rank threshold
    floor = (1e-14 * float(np.linalg.norm(a))) ** 2
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                cp, cq = colv[p], colv[q]
                alpha = math.fsum(x * x for x in cp)
                beta = math.fsum(y * y for y in cq)
                gamma = math.fsum(x * y for x, y in zip(cp, cq))
                if min(alpha, beta) <= floor or abs(gamma) <= 1e-15 * math.sqrt(alpha * beta):
                    continue
                rotated = True
                c, s = _rotation(alpha, beta, gamma)
                colv[p] = [c * x - s * y for x, y in zip(cp, cq)]
                colv[q] = [s * x + c * y for x, y in zip(cp, cq)]
                vp, vq = v[p], v[q]
                v[p] = [c * x - s * y for x, y in zip(vp, vq)]
                v[q] = [s * x + c * y for x, y in zip(vp, vq)]
        if not rotated:
            break
    else:
        raise NoConvergence(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")
    sigma = np.array([math.sqrt(math.fsum(x * x for x in col)) for col in colv])
    return sigma, np.array(v).reshape(cols, cols).T


def rank_nullspace(m, tol: float = REL_TOL) -> tuple[int, np.ndarray]:
    """Numerical rank and an orthonormal basis of the kernel.

    A singular value counts toward the rank when it exceeds ``tol * sigma_max``.
    The kernel basis is returned as the columns of a ``cols x (cols - rank)``
    matrix.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must lie in (0, 1)")
    a = as_matrix(m)
    cols = a.shape[1]
    if cols == 0:
        return 0, np.zeros((0, 0))
    sigma, v = singular_values_jacobi(a)
    smax = sigma.max()
    keep = sigma > tol * smax if smax > 0 else np.zeros(cols, dtype=bool)
    null = v[:, ~keep]
    return int(keep.sum()), _fix_signs(null.copy())
