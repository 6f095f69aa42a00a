"""Sufficient conditions for wovenness as checkable certificates.

Each ``cert_*`` function checks the hypotheses of one sufficient condition for weaving on
concrete frames. When they hold it returns universal bounds that every
weaving of the concluded frames is guaranteed to satisfy, without
enumerating partitions. Universal lower bounds that a hypothesis takes as
given are computed with the exhaustive oracle.

Several of the published constants do not follow from their own
derivations. In each such case the certificate evaluates the hypothesis as
published, computes the published bound next to a bound re-derived from the
same argument, and reports the smaller of the two. Both values appear in
``quantities`` (``*_printed`` / ``*_rigorous``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import numerics
from .duality import PerturbationSequence, canonical_dual, canonical_parseval, is_parseval
from .errors import (
    DimensionMismatch,
    NonFiniteValue,
    NotAFrame,
    NotDual,
    NotParseval,
    NotWoven,
    NoRedundancy,
    ZeroScalar,
)
from .frame import Frame, check_compatible, excess, frame_bounds, frame_operator, is_frame, verify_duality
from .weaving import exhaustive_pair

MARGIN = 1e-12
ALPHA_CAP = math.nextafter(1.0, 0.0)

DIRECTIONS = ("originals_to_duals", "duals_to_originals")


@dataclass(frozen=True, eq=False)
class CertificateResult:
    """Outcome of one certificate.

    ``concluded`` holds the frames whose weavings the guaranteed bounds
    cover; it is ``None`` only for certificates that work on scalars alone.
    """

    name: str
    applicable: bool
    quantities: dict[str, float]
    guaranteed_lower: float | None = None
    guaranteed_upper: float | None = None
    failed_condition: str | None = None
    kind: str = "two_sided"
    flags: tuple[str, ...] = ()
    concluded: tuple[Frame, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        for k, v in self.quantities.items():
            if not math.isfinite(v):
                raise ValueError(f"quantity {k!r} is not finite")
        if self.kind == "upper_only":
            ok = self.applicable and self.guaranteed_lower is None and self.guaranteed_upper is not None
        else:
            has_lower = self.guaranteed_lower is not None and self.guaranteed_lower > 0
            ok = self.applicable == has_lower
        if not ok or (self.failed_condition is None) != self.applicable:
            raise ValueError(f"inconsistent certificate result for {self.name}")


def _fail(name: str, q: dict, why: str, flags=()) -> CertificateResult:
    return CertificateResult(name, False, q, failed_condition=why, flags=tuple(flags))


def _ok(name, q, lower, upper, concluded, flags=()) -> CertificateResult:
    return CertificateResult(name, True, q, lower, upper, flags=tuple(flags), concluded=tuple(concluded))


def largest_satisfying(slack: Callable[[float], float], cap: float = math.inf) -> tuple[float, bool]:
    """Largest ``x`` in ``(0, cap]`` with ``slack(x) >= MARGIN``.

    ``slack`` must be non-increasing. Returns ``(x, hit_cap)``; ``x == 0``
    means no positive value qualifies. With ``cap = inf`` a slack that never
    drops below the margin yields ``(inf, True)``.
    """
    if math.isfinite(cap) and slack(cap) >= MARGIN:
        return cap, True
    if slack(0.0) < MARGIN:
        return 0.0, False
    hi = cap
    if not math.isfinite(cap):
        hi = 1.0
        while slack(hi) >= MARGIN:
            hi *= 2.0
            if hi > 1e300:
                return math.inf, True
    lo = 0.0
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if slack(mid) >= MARGIN:
            lo = mid
        else:
            hi = mid
    return lo, False


def _require_frames(*frames: Frame) -> None:
    for f in frames:
        if not is_frame(f):
            raise NotAFrame("certificate inputs must be frames")


def _require_admissible(u: PerturbationSequence, phi: Frame, label: str = "U") -> None:
    if not u.is_admissible(phi):
        raise NotDual(f"{label} does not satisfy T_U T_phi^T = 0 for its frame")


def _universal(phi: Frame, psi: Frame, what: str):
    verdict = exhaustive_pair(phi, psi)
    if not verdict.woven:
        raise NotWoven(f"{what} is not woven")
    return verdict


def _norm(m) -> float:
    return numerics.operator_norm(m)


def _upper(f: Frame) -> float:
    return frame_bounds(f).upper


# -- perturbation-free certificates -------------------------------------------------


def cert_synthesis_proximity(phi: Frame, psi: Frame) -> CertificateResult:
    """Frames with close synthesis operators are woven, bounds ``(A_phi/2, B_phi + B_psi)``."""
    name = "synthesis_proximity"
    check_compatible(phi, psi)
    _require_frames(phi, psi)
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    d = _norm(phi.synthesis - psi.synthesis)
    lhs = d * (math.sqrt(bp.upper) + math.sqrt(bq.upper))
    q = {"norm_T_diff": d, "A_phi": bp.lower, "B_phi": bp.upper, "B_psi": bq.upper,
         "lhs": lhs, "rhs": bp.lower / 2}
    if not d < 1:
        return _fail(name, q, "||T_phi - T_psi|| < 1")
    if not lhs <= bp.lower / 2:
        return _fail(name, q, "||T_phi - T_psi|| (sqrt B_phi + sqrt B_psi) <= A_phi / 2")
    return _ok(name, q, bp.lower / 2, bp.upper + bq.upper, (phi, psi))


def cert_operator_multiplier(phi: Frame, u) -> CertificateResult:
    """``phi`` and ``U phi`` are woven when ``||I - U||^2 < A_phi / B_phi``."""
    name = "operator_multiplier"
    op = numerics.as_matrix(u, "U")
    if op.shape != (phi.dim, phi.dim):
        raise DimensionMismatch(f"U must be {phi.dim} x {phi.dim}, got {op.shape}")
    _require_frames(phi)
    b = frame_bounds(phi)
    nu = _norm(np.eye(phi.dim) - op)
    q = {"norm_I_minus_U": nu, "A_phi": b.lower, "B_phi": b.upper, "ratio": b.lower / b.upper}
    if not nu * nu < b.lower / b.upper:
        return _fail(name, q, "||I - U||^2 < A_phi / B_phi")
    image = phi.transformed(op)
    lower = (math.sqrt(b.lower) - math.sqrt(b.upper) * nu) ** 2
    return _ok(name, q, lower, b.upper + _upper(image), (phi, image))


def cert_transitive_bridge(a1: float, a2: float, b_psi: float, b1: float, b2: float) -> CertificateResult:
    """Bridge (phi, psi) and (psi, eta) weavings into a (phi, eta) weaving.

    ``a1, b1`` and ``a2, b2`` are universal bounds of the two known weavings
    and ``b_psi`` the upper frame bound of the shared frame.
    """
    name = "transitive_bridge"
    vals = {"A1": float(a1), "A2": float(a2), "B_psi": float(b_psi), "B1": float(b1), "B2": float(b2)}
    if not all(math.isfinite(v) for v in vals.values()):
        raise NonFiniteValue("bridge inputs must be finite")
    lower = vals["A1"] + vals["A2"] - vals["B_psi"]
    q = dict(vals, slack=lower)
    if not lower > 0:
        return _fail(name, q, "A1 + A2 - B_psi > 0")
    return CertificateResult(name, True, q, lower, vals["B1"] + vals["B2"])


def cert_bessel_union(frames: Sequence[Frame]) -> CertificateResult:
    """Every weaving of Bessel sequences has Bessel bound ``sum B_j`` (upper bound only)."""
    frames = list(frames)
    check_compatible(*frames)
    bs = [_upper(f) for f in frames]
    q = {f"B_{j}": b for j, b in enumerate(bs)}
    return CertificateResult("bessel_union", True, q, None, math.fsum(bs), kind="upper_only",
                             flags=("upper_only",), concluded=tuple(frames))


def cert_canonical_dual_self(phi: Frame) -> CertificateResult:
    """``phi`` and its canonical dual are woven when ``S_phi`` is close to ``I``."""
    name = "canonical_dual_self"
    _require_frames(phi)
    b = frame_bounds(phi)
    s_inv = numerics.spd_power(frame_operator(phi), -1.0)
    lhs = _norm(np.eye(phi.dim) - s_inv)
    rhs = b.lower / (2 * (b.upper + math.sqrt(b.upper / b.lower)))
    dual = phi.transformed(s_inv)
    q = {"norm_I_minus_Sinv": lhs, "rhs": rhs, "A_phi": b.lower, "B_phi": b.upper,
         "norm_T_diff": _norm(phi.synthesis - dual.synthesis)}
    if not lhs <= rhs:
        return _fail(name, q, "||I - S^-1|| <= A / (2 (B + sqrt(B / A)))")
    return _ok(name, q, b.lower / 2, b.upper + 1 / b.lower, (phi, dual))


def cert_canonical_pair(phi: Frame, psi: Frame, direction: str = "originals_to_duals") -> CertificateResult:
    """Transfer wovenness between two frames and their canonical duals.

    ``originals_to_duals`` assumes (phi, psi) woven and concludes for the
    canonical duals; ``duals_to_originals`` is the converse. The hypothesis
    ``||S_phi^-1 - S_psi^-1|| < sqrt(A / B_psi)`` is required strictly.
    """
    name = "canonical_pair"
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    check_compatible(phi, psi)
    _require_frames(phi, psi)
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    sp, sq = frame_operator(phi), frame_operator(psi)
    ip, iq = numerics.spd_power(sp, -1.0), numerics.spd_power(sq, -1.0)
    dp, dq = phi.transformed(ip), psi.transformed(iq)
    d_inv = _norm(ip - iq)
    if direction == "originals_to_duals":
        a = _universal(phi, psi, "(phi, psi)").universal_lower
        concluded = (dp, dq)
        # the weaving sum is evaluated at S_phi^-1 f, whose norm is at least |f| / B_phi
        rigorous = math.sqrt(a) / bp.upper - math.sqrt(bq.upper) * d_inv
    else:
        a = _universal(dp, dq, "(canonical dual of phi, canonical dual of psi)").universal_lower
        concluded = (phi, psi)
        # evaluated at S_phi f against the duals, whose upper bound for psi is 1 / A_psi
        rigorous = bp.lower * math.sqrt(a) - _norm(sp - sq) / math.sqrt(bq.lower)
    rhs = math.sqrt(a / bq.upper)
    printed = math.sqrt(a) - math.sqrt(bq.upper) * d_inv
    q = {"A": a, "B_psi": bq.upper, "B_phi": bp.upper, "A_phi": bp.lower, "A_psi": bq.lower,
         "norm_Sinv_diff": d_inv, "rhs": rhs, "slack": rhs - d_inv,
         "base_printed": printed, "base_rigorous": rigorous,
         "direction_duals_to_originals": float(direction == "duals_to_originals")}
    if not d_inv < rhs:
        return _fail(name, q, "||S_phi^-1 - S_psi^-1|| < sqrt(A / B_psi)")
    if not rigorous > 0:
        return _fail(name, q, "re-derived lower bound is not positive")
    lower = min(printed, rigorous) ** 2
    return _ok(name, q, lower, _upper(concluded[0]) + _upper(concluded[1]), concluded)


def cert_canonical_parseval(phi: Frame, psi: Frame) -> CertificateResult:
    """Woven frames whose ``S^{1/2}`` are close have woven canonical Parseval frames."""
    name = "canonical_parseval"
    check_compatible(phi, psi)
    _require_frames(phi, psi)
    a = _universal(phi, psi, "(phi, psi)").universal_lower
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    sp, sq = frame_operator(phi), frame_operator(psi)
    hp, hq = numerics.spd_power(sp, 0.5), numerics.spd_power(sq, 0.5)
    mp, mq = numerics.spd_power(sp, -0.5), numerics.spd_power(sq, -0.5)
    n_half = _norm(hp - hq)
    np_, nq = _norm(mp), _norm(mq)
    rhs = (math.sqrt(nq * nq + a * bp.upper) - nq) / bp.upper / (np_ * nq)
    delta = _norm(mp - mq)
    printed = a - bp.upper * delta * delta - 2 * delta * nq
    rigorous = math.sqrt(a / bq.upper) - math.sqrt(bp.upper) * delta
    q = {"A": a, "B_phi": bp.upper, "B_psi": bq.upper, "norm_sqrtS_diff": n_half, "rhs": rhs,
         "norm_Sinvsqrt_phi": np_, "norm_Sinvsqrt_psi": nq, "norm_Sinvsqrt_diff": delta,
         "bound_printed": printed, "base_rigorous": rigorous}
    if not n_half < rhs:
        return _fail(name, q, "||S_phi^1/2 - S_psi^1/2|| below the canonical Parseval threshold")
    if not (printed > 0 and rigorous > 0):
        return _fail(name, q, "lower bound is not positive")
    concluded = (phi.transformed(mp), psi.transformed(mq))
    return _ok(name, q, min(printed, rigorous * rigorous), 2.0, concluded)


def cert_scalar_weaving(phi: Frame, psi: Frame, alpha, beta) -> CertificateResult:
    """Rescaling woven frames by bounded nonzero scalars keeps them woven.

    With ``C`` and ``D`` the smallest and largest scalar magnitudes the
    weavings of the rescaled pair have bounds ``(C^2 A, D^2 B)``.
    """
    name = "scalar_weaving"
    check_compatible(phi, psi)
    al = np.asarray(alpha, dtype=np.float64).reshape(-1)
    be = np.asarray(beta, dtype=np.float64).reshape(-1)
    if al.size != phi.n or be.size != phi.n:
        raise DimensionMismatch(f"need {phi.n} scalars for each frame")
    mags = np.abs(np.concatenate([al, be]))
    if not np.all(np.isfinite(mags)):
        raise NonFiniteValue("scalars must be finite")
    if np.any(mags == 0):
        raise ZeroScalar("scalars must be nonzero")
    v = _universal(phi, psi, "(phi, psi)")
    c, d = float(mags.min()), float(mags.max())
    q = {"A": v.universal_lower, "B": v.universal_upper, "C": c, "D": d}
    return _ok(name, q, c * c * v.universal_lower, d * d * v.universal_upper,
               (phi.scaled(al), psi.scaled(be)))


# -- certificates over dual families -------------------------------------------------


def dual_transfer_losses(a: float, b_u: float, b_phi: float, norm_s: float) -> tuple[float, float]:
    """``(printed, rigorous)`` loss terms for step size ``a``.

    printed: ``a^2 ||S|| B_U + 2 a sqrt(B_U B_phi ||S||)``;
    rigorous: ``2 a sqrt(B_U B_phi) ||S||`` (Cauchy-Schwarz on the cross term).
    """
    printed = a * a * norm_s * b_u + 2 * a * math.sqrt(b_u * b_phi * norm_s)
    rigorous = 2 * a * math.sqrt(b_u * b_phi) * norm_s
    return printed, rigorous


def dual_transfer_alpha(a_univ: float, b_u: float, b_phi: float, norm_s: float) -> float:
    """Largest step keeping both loss terms below ``a_univ`` (``inf`` when ``B_U = 0``)."""
    if b_u == 0:
        return math.inf
    return largest_satisfying(lambda x: a_univ - max(dual_transfer_losses(x, b_u, b_phi, norm_s)))[0]


def cert_dual_transfer(phi: Frame, psi: Frame, u: PerturbationSequence,
                       eps: float | None = None) -> CertificateResult:
    """Duals ``S^-1 phi_i + eps u_i`` stay woven with ``S_phi^-1 psi`` for small ``eps``.

    The guaranteed bounds cover the pair ``(psi, S_phi phi^d_eps)``; the bound
    for ``(S_phi^-1 psi, phi^d_eps)`` is recorded as ``lower_dual_pair``.
    ``eps`` defaults to half the largest admissible step.
    """
    name = "dual_transfer"
    check_compatible(phi, psi)
    _require_frames(phi, psi)
    _require_admissible(u, phi)
    a = _universal(phi, psi, "(phi, psi)").universal_lower
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    s = frame_operator(phi)
    norm_s = _norm(s)
    b_u = u.bessel_bound
    alpha = dual_transfer_alpha(a, b_u, bp.upper, norm_s)
    flags = ("alpha_unbounded",) if math.isinf(alpha) else ()
    if eps is None:
        eps = 1.0 if math.isinf(alpha) else alpha / 2
    q = {"A": a, "B_U": b_u, "B_phi": bp.upper, "norm_S_phi": norm_s, "eps": eps}
    if math.isfinite(alpha):
        q["alpha"] = alpha
    if not alpha > 0:
        return _fail(name, q, "no alpha > 0 with A_alpha < A", flags)
    if not 0 <= eps < alpha:
        return _fail(name, q, "eps must lie in [0, alpha)", flags)
    printed, rigorous = dual_transfer_losses(eps, b_u, bp.upper, norm_s)
    lower = a - max(printed, rigorous)
    q.update(A_eps_printed=printed, A_eps_rigorous=rigorous, lower_dual_pair=lower / bp.upper**2)
    image = Frame.from_synthesis(phi.synthesis + eps * (s @ u.synthesis))
    return _ok(name, q, lower, bq.upper + _upper(image), (psi, image), flags)


def cert_dual_family(phi: Frame, u: PerturbationSequence) -> CertificateResult:
    """``phi`` is woven with the dual ``S^-1 phi_i + alpha u_i`` when ``S_phi`` is near ``I``.

    ``alpha`` is the largest step in (0, 1) meeting the synthesis-proximity
    condition. The published Bessel bound ``sqrt(||S^-1|| B_phi)`` of the
    canonical dual is replaced by ``sqrt(||S^-1||) max(sqrt(B_phi), 1)``,
    which equals it when ``B_phi >= 1`` and stays valid below.
    """
    name = "dual_family"
    _require_frames(phi)
    _require_admissible(u, phi)
    b = frame_bounds(phi)
    s_inv = numerics.spd_power(frame_operator(phi), -1.0)
    n_inv = _norm(s_inv)
    lhs = _norm(np.eye(phi.dim) - s_inv)
    b_u = u.bessel_bound
    rhs = b.lower / (2 * b.upper * (1 + math.sqrt(n_inv)) + 2 * math.sqrt(b_u * b.upper))
    kappa_printed = math.sqrt(n_inv * b.upper)
    kappa = max(kappa_printed, math.sqrt(n_inv))
    sb, su = math.sqrt(b.upper), math.sqrt(b_u)

    def slack(x):
        return b.lower / 2 - (lhs * sb + x * su) * (sb + kappa + x * su)

    q = {"norm_I_minus_Sinv": lhs, "rhs": rhs, "A_phi": b.lower, "B_phi": b.upper, "B_U": b_u,
         "norm_Sinv": n_inv, "sqrt_B_dual_printed": kappa_printed, "sqrt_B_dual_rigorous": math.sqrt(n_inv)}
    if not lhs < rhs:
        return _fail(name, q, "||I - S^-1|| < A / (2 B (1 + sqrt||S^-1||) + 2 sqrt(B_U B))")
    alpha, capped = largest_satisfying(slack, ALPHA_CAP)
    q["alpha"] = alpha
    if not alpha > 0:
        return _fail(name, q, "no alpha in (0, 1) meets the proximity condition")
    dual = Frame.from_synthesis(phi.transformed(s_inv).synthesis + alpha * u.synthesis)
    upper = b.upper + (kappa + alpha * su) ** 2
    return _ok(name, q, b.lower / 2, upper, (phi, dual), ("alpha_capped",) if capped else ())


def parseval_pair_losses(a: float, b_u: float, b_v: float, b_phi: float, b_psi: float) -> tuple[float, float]:
    printed = a * b_u + a * b_v + 2 * math.sqrt(a * b_u * b_phi) + 2 * math.sqrt(a * b_v * b_psi)
    rigorous = 2 * a * (math.sqrt(b_u * b_phi) + math.sqrt(b_v * b_psi))
    return printed, rigorous


def parseval_pair_alpha0(a_univ, b_u, b_v, b_phi=1.0, b_psi=1.0) -> float:
    if b_u == 0 and b_v == 0:
        return math.inf
    return largest_satisfying(lambda x: a_univ - max(parseval_pair_losses(x, b_u, b_v, b_phi, b_psi)))[0]


def cert_parseval_dual_pair(phi: Frame, psi: Frame, u: PerturbationSequence, v: PerturbationSequence,
                            alpha: float | None = None) -> CertificateResult:
    """Woven Parseval frames have woven duals ``phi_i + alpha u_i`` and ``psi_i + alpha v_i``.

    ``alpha`` defaults to half of the largest admissible value ``alpha0``.
    """
    name = "parseval_dual_pair"
    check_compatible(phi, psi)
    if not (is_parseval(phi) and is_parseval(psi)):
        raise NotParseval("both frames must be Parseval within 1e-8")
    _require_admissible(u, phi, "U")
    _require_admissible(v, psi, "V")
    a = _universal(phi, psi, "(phi, psi)").universal_lower
    bp, bq = _upper(phi), _upper(psi)
    alpha0 = parseval_pair_alpha0(a, u.bessel_bound, v.bessel_bound, bp, bq)
    flags = ("alpha_unbounded",) if math.isinf(alpha0) else ()
    if alpha is None:
        alpha = 1.0 if math.isinf(alpha0) else alpha0 / 2
    q = {"A": a, "B_U": u.bessel_bound, "B_V": v.bessel_bound, "B_phi": bp, "B_psi": bq, "alpha": alpha}
    if math.isfinite(alpha0):
        q["alpha0"] = alpha0
    if not 0 <= alpha < alpha0:
        return _fail(name, q, "alpha must lie in [0, alpha0)", flags)
    printed, rigorous = parseval_pair_losses(alpha, u.bessel_bound, v.bessel_bound, bp, bq)
    q.update(loss_printed=printed, loss_rigorous=rigorous)
    concluded = (Frame.from_synthesis(phi.synthesis + alpha * u.synthesis),
                 Frame.from_synthesis(psi.synthesis + alpha * v.synthesis))
    return _ok(name, q, a - max(printed, rigorous), _upper(concluded[0]) + _upper(concluded[1]),
               concluded, flags)


def cert_perturbed_duals(phi: Frame, psi: Frame, u: PerturbationSequence, v: PerturbationSequence,
                         variant: str = "printed", alpha: float | None = None) -> CertificateResult:
    """Nearby woven frames have woven duals ``S^-1 phi_i + alpha u_i``, ``S^-1 psi_i + alpha v_i``.

    ``A`` is the universal lower bound of ``(S_phi^-1 phi, S_phi^-1 psi)``;
    ``variant="canonical"`` uses ``(S_phi^-1 phi, S_psi^-1 psi)`` instead.
    ``alpha`` defaults to half of the largest step allowed in (0, 1).
    """
    name = "perturbed_duals"
    if variant not in ("printed", "canonical"):
        raise ValueError("variant must be 'printed' or 'canonical'")
    check_compatible(phi, psi)
    _require_frames(phi, psi)
    _require_admissible(u, phi, "U")
    _require_admissible(v, psi, "V")
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    ip = numerics.spd_power(frame_operator(phi), -1.0)
    iq = numerics.spd_power(frame_operator(psi), -1.0)
    second = psi.transformed(ip if variant == "printed" else iq)
    a = _universal(phi.transformed(ip), second, "hypothesis pair").universal_lower
    d_t = _norm(phi.synthesis - psi.synthesis)
    d_inv = _norm(ip - iq)
    n_ip, n_iq = _norm(ip), _norm(iq)
    sbq, sbp = math.sqrt(bq.upper), math.sqrt(bp.upper)
    su, sv = math.sqrt(u.bessel_bound), math.sqrt(v.bessel_bound)
    ab_rhs = math.sqrt(a) / (sbq * n_ip * n_iq * (sbq + sbp))

    def slack(x):
        return math.sqrt(a / bq.upper) - d_inv - x * (su + sv) / sbq

    alpha_max, _ = largest_satisfying(slack, ALPHA_CAP)
    q = {"A": a, "norm_T_diff": d_t, "AB_rhs": ab_rhs, "norm_Sinv_diff": d_inv,
         "B_phi": bp.upper, "B_psi": bq.upper, "B_U": u.bessel_bound, "B_V": v.bessel_bound,
         "alpha_max": alpha_max, "variant_canonical": float(variant == "canonical")}
    if not d_t < ab_rhs:
        return _fail(name, q, "||T_phi - T_psi|| below the synthesis threshold")
    if not alpha_max > 0:
        return _fail(name, q, "no alpha in (0, 1) with ||S_phi^-1 - S_psi^-1|| + alpha (...) < sqrt(A / B_psi)")
    if alpha is None:
        alpha = alpha_max / 2
    q["alpha"] = alpha
    if not 0 <= alpha <= alpha_max:
        return _fail(name, q, "alpha must lie in [0, alpha_max]")
    base = math.sqrt(a) - alpha * (su + sv) - sbq * d_inv
    concluded = (Frame.from_synthesis(ip @ phi.synthesis + alpha * u.synthesis),
                 Frame.from_synthesis(iq @ psi.synthesis + alpha * v.synthesis))
    return _ok(name, q, base * base, _upper(concluded[0]) + _upper(concluded[1]), concluded)


def cert_duals_to_frames(phi: Frame, psi: Frame, phi_d: Frame, psi_d: Frame,
                         u: PerturbationSequence | None = None) -> CertificateResult:
    """Conclude (phi, psi) woven from woven duals ``phi_d``, ``psi_d``.

    The perturbations ``U`` and ``V`` are recovered from the duals; a
    supplied ``u`` must match. The oracle's verdict on (phi, psi) is
    recorded alongside (``oracle_lower``, ``oracle_woven``).
    """
    name = "duals_to_frames"
    check_compatible(phi, psi, phi_d, psi_d)
    _require_frames(phi, psi)
    if not (verify_duality(phi, phi_d) and verify_duality(psi, psi_d)):
        raise NotDual("phi_d and psi_d must be duals of phi and psi")
    cu = canonical_dual(phi).synthesis
    u_rec = PerturbationSequence.from_synthesis(phi_d.synthesis - cu)
    if u is not None and np.max(np.abs(u.synthesis - u_rec.synthesis), initial=0.0) > 1e-9:
        raise NotDual("U does not match phi_d - S_phi^-1 phi")
    v_rec = PerturbationSequence.from_synthesis(psi_d.synthesis - canonical_dual(psi).synthesis)
    hyp = _universal(phi_d, psi_d, "(phi_d, psi_d)")
    a = hyp.universal_lower
    bp, bq = frame_bounds(phi), frame_bounds(psi)
    b_qd = _upper(psi_d)
    d_sd = _norm(frame_operator(phi_d) - frame_operator(psi_d))
    d_s = _norm(frame_operator(phi) - frame_operator(psi))
    su, sv = math.sqrt(u_rec.bessel_bound), math.sqrt(v_rec.bessel_bound)
    lhs = su + math.sqrt(bq.upper) * d_sd
    printed = math.sqrt(a) - lhs
    # evaluate at S_phi f: phi_i = S_phi (phi_d_i - u_i), likewise for psi
    rigorous = (math.sqrt(a) - su) * bp.lower - math.sqrt(b_qd) * d_s - sv * bq.upper
    oracle = exhaustive_pair(phi, psi)
    q = {"A": a, "B": hyp.universal_upper, "B_U": u_rec.bessel_bound, "B_V": v_rec.bessel_bound,
         "B_psi": bq.upper, "norm_Sd_diff": d_sd, "norm_S_diff": d_s, "lhs": lhs, "rhs": math.sqrt(a),
         "base_printed": printed, "base_rigorous": rigorous,
         "oracle_lower": oracle.universal_lower, "oracle_woven": float(oracle.woven)}
    if not lhs < math.sqrt(a):
        return _fail(name, q, "sqrt B_U + sqrt B_psi ||S_phi_d - S_psi_d|| < sqrt A")
    if not rigorous > 0:
        return _fail(name, q, "re-derived lower bound is not positive")
    return _ok(name, q, min(printed, rigorous) ** 2, bp.upper + bq.upper, (phi, psi))


def cert_redundant_small_norm(phi: Frame, u: PerturbationSequence, eps: float) -> CertificateResult:
    """Frames with small redundant vectors are woven with the duals ``S^-1 phi_i + eps u_i``.

    ``phi`` is split greedily into a basis part and redundant vectors. ``A``
    is the universal lower bound of (basis, S_basis basis). The bound is
    first obtained for ``(S_phi phi, S_phi phi^d_eps)`` (recorded as
    ``lower_transformed_pair``); ``guaranteed_lower`` covers
    ``(phi, phi^d_eps)`` and is that value divided by ``||S_phi||^2``.
    """
    name = "redundant_small_norm"
    _require_frames(phi)
    _require_admissible(u, phi)
    if not (math.isfinite(eps) and eps >= 0):
        raise ValueError("eps must be finite and non-negative")
    ex = excess(phi)
    if ex.excess == 0:
        raise NoRedundancy("frame has no redundant vectors")
    basis = phi.subframe(ex.riesz_indices)
    a = _universal(basis, basis.transformed(frame_operator(basis)), "(basis, S_basis basis)").universal_lower
    b = frame_bounds(phi)
    norm_s = _norm(frame_operator(phi))
    red = math.fsum(float(phi[k] @ phi[k]) for k in ex.redundant_indices)
    b_u = u.bessel_bound
    lhs = red + 2 * math.sqrt(eps * b_u * b.upper)
    rhs = math.sqrt(a / b.upper)
    printed = math.sqrt(a) - math.sqrt(b.upper) * red - 2 * math.sqrt(eps * b_u) * b.upper
    rigorous = math.sqrt(a) - math.sqrt(b.upper) * red - eps * math.sqrt(b_u) * norm_s
    q = {"A": a, "redundant_norm_sq": red, "B_phi": b.upper, "B_U": b_u, "eps": eps,
         "norm_S_phi": norm_s, "lhs": lhs, "rhs": rhs,
         "base_printed": printed, "base_rigorous": rigorous}
    if not lhs < rhs:
        return _fail(name, q, "sum ||phi_redundant||^2 + 2 sqrt(eps B_U B_phi) < sqrt(A / B_phi)")
    if not rigorous > 0:
        return _fail(name, q, "re-derived lower bound is not positive")
    transformed = min(printed, rigorous) ** 2
    q["lower_transformed_pair"] = transformed
    dual = Frame.from_synthesis(canonical_dual(phi).synthesis + eps * u.synthesis)
    return _ok(name, q, transformed / norm_s**2, b.upper + _upper(dual), (phi, dual))


CERTIFICATES = {
    "synthesis_proximity": cert_synthesis_proximity,
    "operator_multiplier": cert_operator_multiplier,
    "transitive_bridge": cert_transitive_bridge,
    "bessel_union": cert_bessel_union,
    "redundant_small_norm": cert_redundant_small_norm,
    "dual_transfer": cert_dual_transfer,
    "canonical_dual_self": cert_canonical_dual_self,
    "dual_family": cert_dual_family,
    "parseval_dual_pair": cert_parseval_dual_pair,
    "perturbed_duals": cert_perturbed_duals,
    "duals_to_frames": cert_duals_to_frames,
    "canonical_pair": cert_canonical_pair,
    "canonical_parseval": cert_canonical_parseval,
    "scalar_weaving": cert_scalar_weaving,
}
