"""Exhaustive wovenness checking.

A weaving of frames ``F_0..F_{m-1}`` (all with ``n`` vectors) is selected by
an assignment ``choice[i] in range(m)`` naming the frame that supplies vector
``i``. Assignments are enumerated in odometer order with ``choice[0]`` as the
least significant digit, i.e. assignment number ``k`` has
``choice[i] = (k // m**i) % m``. For a pair, ``sigma`` is the set of indices
taken from the first frame.

The oracle evaluates every assignment, batching the frame operators through
LAPACK's symmetric eigensolver, so it is an independent route from the
Jacobi kernel used by the certificates.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .frame import Frame, check_compatible, is_frame
from .numerics import ABS_TOL, REL_TOL
from .rng import SplitMix64

MAX_EVALUATIONS = 1 << 24
CHUNK = 1 << 14


@dataclass(frozen=True)
class PartitionAssignment:
    choice: tuple[int, ...]

    @classmethod
    def from_sigma(cls, n: int, sigma: Iterable[int]) -> "PartitionAssignment":
        s = set(sigma)
        if any(i < 0 or i >= n for i in s):
            raise ValueError(f"sigma must be a subset of range({n})")
        return cls(tuple(0 if i in s else 1 for i in range(n)))

    @classmethod
    def from_index(cls, k: int, n: int, m: int = 2) -> "PartitionAssignment":
        return cls(tuple((k // m**i) % m for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.choice)

    @property
    def sigma(self) -> tuple[int, ...]:
        """Sorted indices supplied by the first frame."""
        return tuple(i for i, c in enumerate(self.choice) if c == 0)

    def index(self, m: int = 2) -> int:
        return sum(c * m**i for i, c in enumerate(self.choice))

    def parts(self, m: int) -> list[tuple[int, ...]]:
        return [tuple(i for i, c in enumerate(self.choice) if c == j) for j in range(m)]


@dataclass(frozen=True)
class WeavingVerdict:
    woven: bool
    universal_lower: float
    universal_upper: float
    partitions_checked: int
    witness: PartitionAssignment | None = None
    witness_lower: float | None = None


def weave_multi(frames: Sequence[Frame], assignment: PartitionAssignment) -> Frame:
    check_compatible(*frames)
    if assignment.n != frames[0].n:
        raise DimensionMismatch("assignment length differs from the number of vectors")
    if any(not 0 <= c < len(frames) for c in assignment.choice):
        raise ValueError("assignment refers to a frame that does not exist")
    cols = [frames[c].synthesis[:, i] for i, c in enumerate(assignment.choice)]
    return Frame.from_synthesis(np.column_stack(cols))


def weave(phi: Frame, psi: Frame, sigma: Iterable[int]) -> Frame:
    """``{phi_i : i in sigma} U {psi_i : i not in sigma}``, index order kept."""
    check_compatible(phi, psi)
    return weave_multi([phi, psi], PartitionAssignment.from_sigma(phi.n, sigma))


def _outer_products(frames: Sequence[Frame]) -> np.ndarray:
    # (m, n, d, d): outer[j, i] = f_j[i] f_j[i]^T
    t = np.stack([f.synthesis.T for f in frames])
    return t[..., :, None] * t[..., None, :]


def _scan(outer: np.ndarray, start: int, stop: int):
    m, n, d, _ = outer.shape
    k = np.arange(start, stop, dtype=np.int64)
    s = np.zeros((k.size, d, d))
    for i in range(n):
        s += outer[(k // m**i) % m, i]
    w = np.linalg.eigvalsh(s)
    lo, hi = w[:, 0], w[:, -1]
    fail = lo <= ABS_TOL + REL_TOL * np.maximum(hi, 0.0)
    first = None
    if fail.any():
        j = int(np.argmax(fail))
        first = (start + j, float(lo[j]))
    return float(lo.min()), float(hi.max()), first


def exhaustive_multi(frames: Sequence[Frame], threads: int = 1) -> WeavingVerdict:
    """Evaluate every one of the ``m**n`` weavings.

    Work is split into fixed contiguous index ranges; ``threads`` only
    changes how many ranges run at once, never the result.
    """
    frames = list(frames)
    if not frames:
        raise ValueError("need at least one frame")
    check_compatible(*frames)
    m, n = len(frames), frames[0].n
    total = m**n
    if total > MAX_EVALUATIONS:
        raise TooLarge(f"{m}^{n} weavings exceed the limit of {MAX_EVALUATIONS}")
    outer = _outer_products(frames)
    ranges = [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _scan(outer, *r), ranges))
    else:
        parts = [_scan(outer, *r) for r in ranges]
    lower = min(p[0] for p in parts)
    upper = max(p[1] for p in parts)
    fails = [p[2] for p in parts if p[2] is not None]
    if not fails:
        return WeavingVerdict(True, lower, upper, total)
    k, lam = min(fails)
    return WeavingVerdict(False, lower, upper, total, PartitionAssignment.from_index(k, n, m), lam)


def exhaustive_pair(phi: Frame, psi: Frame, threads: int = 1) -> WeavingVerdict:
    return exhaustive_multi([phi, psi], threads=threads)


def riesz_woven(phi: Frame, psi: Frame) -> bool:
    """Every weaving is a Riesz basis (needs ``n == d``)."""
    check_compatible(phi, psi)
    if phi.n != phi.dim:
        raise DimensionMismatch(f"Riesz weaving needs n == d, got n={phi.n}, d={phi.dim}")
    # with n == d a weaving spans iff its vectors are independent
    return exhaustive_pair(phi, psi).woven


def random_frame(rng: SplitMix64, dim: int, n: int, max_tries: int = 1000) -> Frame:
    """Frame with i.i.d. uniform [-1, 1] entries, redrawn until it spans."""
    for _ in range(max_tries):
        f = Frame(rng.uniform_array(-1.0, 1.0, (n, dim)))
        if is_frame(f):
            return f
    raise RuntimeError("could not draw a spanning frame")


def counterexample_search(dim: int, n: int, trials: int, seed: int) -> list[tuple[Frame, Frame, WeavingVerdict]]:
    """Draw ``trials`` random frame pairs and keep the ones that are not woven."""
    if 2**n > MAX_EVALUATIONS:
        raise TooLarge(f"2^{n} weavings exceed the limit of {MAX_EVALUATIONS}")
    if n < dim:
        raise DimensionMismatch(f"{n} vectors cannot span R^{dim}")
    rng = SplitMix64(seed)
    found = []
    for _ in range(trials):
        phi = random_frame(rng, dim, n)
        psi = random_frame(rng, dim, n)
        verdict = exhaustive_pair(phi, psi)
        if not verdict.woven:
            found.append((phi, psi, verdict))
    return found
