"""Seeded input generators for the certificate soundness trials.

Each generator maps a numpy Generator and a (d, n) shape to the keyword
arguments of one certificate. Perturbation sizes are drawn log-uniformly so
that every certificate sees both applicable and non-applicable inputs.
"""

from __future__ import annotations

import numpy as np

from wovenframes import certificates as C
from wovenframes.duality import PerturbationSequence, canonical_parseval, dual_with, make_dual, perturbation_space
from wovenframes.errors import NotParseval, NotWoven, NoRedundancy
from wovenframes.frame import Frame, frame_bounds, is_frame
from wovenframes.rng import SplitMix64
from wovenframes.weaving import exhaustive_multi, exhaustive_pair

SHAPES = [(d, n) for d in (2, 3, 4) for n in range(d, d + 4)]


def log_uniform(rng, lo, hi):
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_frame(rng, d, n):
    while True:
        f = Frame(rng.uniform(-1, 1, (n, d)))
        if is_frame(f) and frame_bounds(f).lower > 1e-3:
            return f


def tame_frame(rng, d, n):
    """Random frame pushed toward tightness, rescaled by a random factor."""
    p = canonical_parseval(random_frame(rng, d, n))
    mix = rng.uniform(0, 0.3)
    f = Frame.from_synthesis(p.synthesis + mix * rng.uniform(-1, 1, (d, n)) / np.sqrt(n))
    if not is_frame(f):
        return p
    return f.scaled(log_uniform(rng, 0.7, 1.4))


def near_parseval(rng, d, n):
    p = canonical_parseval(random_frame(rng, d, n))
    f = Frame.from_synthesis(p.synthesis + log_uniform(rng, 1e-5, 0.1) * rng.uniform(-1, 1, (d, n)))
    return f if is_frame(f) else p


def nearby(rng, phi, lo=1e-4, hi=0.3):
    t = phi.synthesis + log_uniform(rng, lo, hi) * rng.uniform(-1, 1, phi.synthesis.shape)
    f = Frame.from_synthesis(t)
    return f if is_frame(f) else phi


def perturbation(rng, phi, lo=1e-4, hi=1.0):
    fam = perturbation_space(phi)
    if fam.excess == 0:
        return PerturbationSequence.zero(phi.dim, phi.n)
    coeffs = log_uniform(rng, lo, hi) * rng.uniform(-1, 1, (phi.dim, fam.excess))
    return make_dual(fam, coeffs)[1]


def _redundant(rng, d, n):
    base = canonical_parseval(random_frame(rng, d, d)).synthesis
    extra = rng.uniform(-1, 1, (d, n - d)) * log_uniform(rng, 1e-3, 0.5)
    return Frame.from_synthesis(np.hstack([base, extra]))


def gen_synthesis_proximity(rng, d, n):
    phi = tame_frame(rng, d, n)
    return dict(phi=phi, psi=nearby(rng, phi))


def gen_operator_multiplier(rng, d, n):
    phi = tame_frame(rng, d, n)
    u = np.eye(d) + log_uniform(rng, 1e-3, 0.5) * rng.uniform(-1, 1, (d, d))
    return dict(phi=phi, u=u)


def gen_transitive_bridge(rng, d, n):
    phi = tame_frame(rng, d, n)
    psi = nearby(rng, phi, 1e-3, 0.2)
    eta = nearby(rng, psi, 1e-3, 0.2)
    v1, v2 = exhaustive_pair(phi, psi), exhaustive_pair(psi, eta)
    args = dict(a1=v1.universal_lower, a2=v2.universal_lower, b_psi=frame_bounds(psi).upper,
                b1=v1.universal_upper, b2=v2.universal_upper)
    return dict(args, _pair=(phi, eta))


def gen_bessel_union(rng, d, n):
    m = int(rng.integers(1, 4))
    return dict(frames=[Frame(rng.uniform(-1, 1, (n, d))) for _ in range(m)])


def gen_redundant_small_norm(rng, d, n):
    phi = _redundant(rng, d, n) if n > d else tame_frame(rng, d, n)
    return dict(phi=phi, u=perturbation(rng, phi, 1e-5, 0.3), eps=log_uniform(rng, 1e-3, 10.0))


def gen_dual_transfer(rng, d, n):
    phi = tame_frame(rng, d, n)
    return dict(phi=phi, psi=nearby(rng, phi), u=perturbation(rng, phi))


def gen_canonical_dual_self(rng, d, n):
    return dict(phi=near_parseval(rng, d, n))


def gen_dual_family(rng, d, n):
    phi = near_parseval(rng, d, n)
    return dict(phi=phi, u=perturbation(rng, phi, 1e-5, 1.0))


def gen_parseval_dual_pair(rng, d, n):
    phi = canonical_parseval(random_frame(rng, d, n))
    psi = canonical_parseval(nearby(rng, phi))
    kw = dict(phi=phi, psi=psi, u=perturbation(rng, phi), v=perturbation(rng, psi))
    if rng.uniform() < 0.3:
        kw["alpha"] = log_uniform(rng, 1e-3, 10.0)
    return kw


def gen_perturbed_duals(rng, d, n):
    phi = tame_frame(rng, d, n)
    psi = nearby(rng, phi, 1e-4, 0.1)
    variant = "canonical" if rng.uniform() < 0.5 else "printed"
    return dict(phi=phi, psi=psi, u=perturbation(rng, phi, 1e-4, 0.3), v=perturbation(rng, psi, 1e-4, 0.3),
                variant=variant)


def gen_duals_to_frames(rng, d, n):
    phi = tame_frame(rng, d, n)
    psi = nearby(rng, phi, 1e-4, 0.1)
    u, v = perturbation(rng, phi, 1e-5, 0.3), perturbation(rng, psi, 1e-5, 0.3)
    return dict(phi=phi, psi=psi, phi_d=dual_with(phi, u), psi_d=dual_with(psi, v))


def gen_canonical_pair(rng, d, n):
    phi = tame_frame(rng, d, n)
    direction = C.DIRECTIONS[int(rng.integers(0, 2))]
    return dict(phi=phi, psi=nearby(rng, phi), direction=direction)


def gen_canonical_parseval(rng, d, n):
    phi = tame_frame(rng, d, n)
    return dict(phi=phi, psi=nearby(rng, phi, 1e-4, 0.1))


def gen_scalar_weaving(rng, d, n):
    phi = tame_frame(rng, d, n)
    lo = log_uniform(rng, 0.1, 1.0)
    hi = lo * log_uniform(rng, 1.0, 5.0)

    def draw():
        return rng.uniform(lo, hi, n) * rng.choice([-1.0, 1.0], n)

    return dict(phi=phi, psi=nearby(rng, phi), alpha=draw(), beta=draw())


GENERATORS = {
    "synthesis_proximity": gen_synthesis_proximity,
    "operator_multiplier": gen_operator_multiplier,
    "transitive_bridge": gen_transitive_bridge,
    "bessel_union": gen_bessel_union,
    "redundant_small_norm": gen_redundant_small_norm,
    "dual_transfer": gen_dual_transfer,
    "canonical_dual_self": gen_canonical_dual_self,
    "dual_family": gen_dual_family,
    "parseval_dual_pair": gen_parseval_dual_pair,
    "perturbed_duals": gen_perturbed_duals,
    "duals_to_frames": gen_duals_to_frames,
    "canonical_pair": gen_canonical_pair,
    "canonical_parseval": gen_canonical_parseval,
    "scalar_weaving": gen_scalar_weaving,
}


def trial_seeds(master: int, count: int) -> list[int]:
    g = SplitMix64(master)
    return [g.next_u64() for _ in range(count)]


def run_trial(name: str, seed: int):
    """Draw inputs for one trial and run the certificate.

    Returns ``(result, concluded_frames, extra)``; ``result`` is ``None`` when
    a precondition error was raised, with the exception in ``extra``.
    """
    rng = np.random.default_rng(seed)
    d, n = SHAPES[int(rng.integers(0, len(SHAPES)))]
    kw = GENERATORS[name](rng, d, n)
    pair = kw.pop("_pair", None)
    try:
        r = C.CERTIFICATES[name](**kw)
    except (NotWoven, NoRedundancy, NotParseval) as exc:
        return None, None, exc
    concluded = pair if r.concluded is None else r.concluded
    return r, concluded, kw


def check_sound(r, concluded, rel=1e-9):
    """Compare a certificate's guarantee with the exhaustive oracle; returns the verdict."""
    v = exhaustive_multi(list(concluded))
    if r.kind == "two_sided":
        assert v.woven, f"{r.name}: certificate applicable but oracle finds a non-frame weaving"
        assert v.universal_lower >= r.guaranteed_lower * (1 - rel), (r.name, v.universal_lower, r.guaranteed_lower)
    assert v.universal_upper <= r.guaranteed_upper * (1 + rel), (r.name, v.universal_upper, r.guaranteed_upper)
    return v
