"""Command-line front end.

Exit codes: 0 success / woven / applicable, 1 not woven / not applicable,
2 input error, 3 numerical failure. A JSON report goes to stdout on 0 and 1;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import certificates as certs
from . import report
from .duality import PerturbationSequence, perturbation_space, random_dual
from .errors import DimensionMismatch, InputError, NumericalError
from .frame import excess, frame_bounds, is_frame, is_riesz_basis, riesz_bounds, verify_duality
from .rng import SplitMix64
from .weaving import counterexample_search, exhaustive_multi

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

# certificates `weave --cert` can run on a bare pair of frames
PAIR_CERTS = ("synthesis_proximity", "canonical_pair", "canonical_parseval", "bessel_union")


class UsageError(InputError):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _frame(path: str):
    return report.parse_frame_file(_read(path))


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _nonneg(text: str) -> float:
    v = float(text)
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError("expected a finite non-negative number")
    return v


def _scalars(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers") from None


def _emit(command, inputs, result, args, code=EXIT_OK) -> int:
    rep = report.make_report(command, inputs, result, deterministic=args.deterministic)
    report.validate(rep)
    sys.stdout.write(report.dumps(rep) + "\n")
    return code


def cmd_bounds(args) -> int:
    f = _frame(args.frame)
    res = report.bounds_result(frame_bounds(f), riesz_bounds(f), f, is_frame(f), is_riesz_basis(f))
    return _emit("bounds", [args.frame], res, args)


def cmd_excess(args) -> int:
    return _emit("excess", [args.frame], report.excess_result(excess(_frame(args.frame))), args)


def cmd_dual(args) -> int:
    f = _frame(args.frame)
    parent = SplitMix64(args.seed)
    # the first dual uses the seed itself, later ones child seeds, so prefixes agree across --count
    seeds = [args.seed] + [parent.next_u64() for _ in range(args.count - 1)]
    duals = []
    for s in seeds:
        d, u = random_dual(f, s, args.scale)
        duals.append({"seed": s, "frame": report.frame_json(d), "perturbation_bessel_bound": u.bessel_bound,
                      "is_dual": verify_duality(f, d)})
    res = {"kind": "duals", "seed": args.seed, "scale": args.scale,
           "excess": perturbation_space(f).excess, "duals": duals}
    return _emit("dual", [args.frame], res, args)


def cmd_weave(args) -> int:
    phi, psi = _frame(args.phi), _frame(args.psi)
    if args.cert is None:
        v = exhaustive_multi([phi, psi], threads=args.threads)
        return _emit("weave", [args.phi, args.psi], report.verdict_result(v, 2), args,
                     EXIT_OK if v.woven else EXIT_NEGATIVE)
    if args.cert not in PAIR_CERTS:
        raise UsageError(f"--cert supports {', '.join(PAIR_CERTS)}; use `certify {args.cert}`")
    if args.cert == "canonical_pair":
        r = certs.cert_canonical_pair(phi, psi, args.direction)
    elif args.cert == "bessel_union":
        r = certs.cert_bessel_union([phi, psi])
    else:
        r = certs.CERTIFICATES[args.cert](phi, psi)
    return _emit_cert("weave", [args.phi, args.psi], r, args)


def cmd_weave_multi(args) -> int:
    frames = [_frame(p) for p in args.frames]
    v = exhaustive_multi(frames, threads=args.threads)
    return _emit("weave-multi", args.frames, report.verdict_result(v, len(frames)), args,
                 EXIT_OK if v.woven else EXIT_NEGATIVE)


def cmd_search(args) -> int:
    found = counterexample_search(args.dim, args.count, args.trials, args.seed)
    res = {"kind": "search", "dim": args.dim, "count": args.count, "trials": args.trials, "seed": args.seed,
           "found": [{"phi": report.frame_json(p), "psi": report.frame_json(q),
                      "witness": report.witness_json(v.witness, v.witness_lower, 2)} for p, q, v in found]}
    return _emit("search", [], res, args)


def _emit_cert(command, inputs, r, args) -> int:
    oracle = None
    if args.verify and r.applicable and r.concluded is not None and len(r.concluded) >= 1:
        oracle = exhaustive_multi(list(r.concluded), threads=args.threads)
    return _emit(command, inputs, report.certificate_result(r, oracle), args,
                 EXIT_OK if r.applicable else EXIT_NEGATIVE)


def _perturbation(path, phi, seed_gen, scale) -> PerturbationSequence:
    """U from a vector file, a seeded random dual, or zero."""
    if path is not None:
        dim, rows = report.parse_vectors(_read(path))
        if dim != phi.dim or len(rows) != phi.n:
            raise DimensionMismatch(f"{path}: expected {phi.n} vectors of length {phi.dim}")
        return PerturbationSequence.from_synthesis(np.array(rows).T)
    if seed_gen is not None:
        return random_dual(phi, seed_gen.next_u64(), scale)[1]
    return PerturbationSequence.zero(phi.dim, phi.n)


def _expect(frames, k, name):
    if len(frames) != k:
        raise UsageError(f"{name} takes {k} frame file(s), got {len(frames)}")


def cmd_certify(args) -> int:
    name = args.name
    paths = args.frames
    frames = [_frame(p) for p in paths]
    gen = SplitMix64(args.seed) if args.seed is not None else None

    def pert(path, phi):
        return _perturbation(path, phi, gen, args.scale)

    if name == "transitive_bridge":
        if frames:
            _expect(frames, 3, name)
            phi, psi, eta = frames
            v1, v2 = exhaustive_multi([phi, psi]), exhaustive_multi([psi, eta])
            r = certs.cert_transitive_bridge(v1.universal_lower, v2.universal_lower, frame_bounds(psi).upper,
                                             v1.universal_upper, v2.universal_upper)
        else:
            vals = [args.a1, args.a2, args.b_psi, args.b1, args.b2]
            if any(v is None for v in vals):
                raise UsageError("transitive_bridge needs three frame files or --a1 --a2 --b-psi --b1 --b2")
            r = certs.cert_transitive_bridge(*vals)
    elif name == "bessel_union":
        if not frames:
            raise UsageError("bessel_union needs at least one frame file")
        r = certs.cert_bessel_union(frames)
    elif name == "operator_multiplier":
        _expect(frames, 1, name)
        if args.u is None:
            raise UsageError('operator_multiplier needs --u MATRIX.json ({"matrix": [[...]]})')
        r = certs.cert_operator_multiplier(frames[0], report.parse_matrix_file(_read(args.u)))
    elif name in ("synthesis_proximity", "canonical_parseval"):
        _expect(frames, 2, name)
        r = certs.CERTIFICATES[name](*frames)
    elif name == "canonical_pair":
        _expect(frames, 2, name)
        r = certs.cert_canonical_pair(*frames, direction=args.direction)
    elif name == "canonical_dual_self":
        _expect(frames, 1, name)
        r = certs.cert_canonical_dual_self(frames[0])
    elif name == "dual_family":
        _expect(frames, 1, name)
        r = certs.cert_dual_family(frames[0], pert(args.u, frames[0]))
    elif name == "redundant_small_norm":
        _expect(frames, 1, name)
        r = certs.cert_redundant_small_norm(frames[0], pert(args.u, frames[0]), args.eps or 0.0)
    elif name == "dual_transfer":
        _expect(frames, 2, name)
        r = certs.cert_dual_transfer(frames[0], frames[1], pert(args.u, frames[0]), args.eps)
    elif name == "parseval_dual_pair":
        _expect(frames, 2, name)
        phi, psi = frames
        r = certs.cert_parseval_dual_pair(phi, psi, pert(args.u, phi), pert(args.v, psi), args.alpha)
    elif name == "perturbed_duals":
        _expect(frames, 2, name)
        phi, psi = frames
        r = certs.cert_perturbed_duals(phi, psi, pert(args.u, phi), pert(args.v, psi),
                                       variant=args.variant, alpha=args.alpha)
    elif name == "duals_to_frames":
        _expect(frames, 4, name)
        r = certs.cert_duals_to_frames(*frames)
    elif name == "scalar_weaving":
        _expect(frames, 2, name)
        if args.phi_scalars is None or args.psi_scalars is None:
            raise UsageError("scalar_weaving needs --phi-scalars and --psi-scalars")
        r = certs.cert_scalar_weaving(frames[0], frames[1], args.phi_scalars, args.psi_scalars)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown certificate {name}")
    return _emit_cert(f"certify {name}", paths, r, args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp from the report")
    common.add_argument("--threads", type=int, default=1, help="worker threads for exhaustive checks")

    p = argparse.ArgumentParser(prog="wovenframes", description="Frame invariants, duals and woven frames.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", parents=[common], help="optimal frame and Riesz bounds")
    s.add_argument("frame")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("excess", parents=[common], help="excess and basis/redundant split")
    s.add_argument("frame")
    s.set_defaults(func=cmd_excess)

    s = sub.add_parser("dual", parents=[common], help="seeded random duals")
    s.add_argument("frame")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--scale", type=_nonneg, default=1.0)
    s.add_argument("--count", type=int, default=1)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("weave", parents=[common], help="check whether two frames are woven")
    s.add_argument("phi")
    s.add_argument("psi")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--cert", choices=sorted(certs.CERTIFICATES))
    s.add_argument("--direction", choices=certs.DIRECTIONS, default="originals_to_duals")
    s.add_argument("--verify", action="store_true", help="run the exhaustive oracle on the concluded frames")
    s.set_defaults(func=cmd_weave)

    s = sub.add_parser("weave-multi", parents=[common], help="exhaustive check of m frames")
    s.add_argument("frames", nargs="+")
    s.add_argument("--exhaustive", action="store_true", required=True)
    s.set_defaults(func=cmd_weave_multi)

    s = sub.add_parser("certify", parents=[common], help="run one certificate")
    s.add_argument("name", choices=sorted(certs.CERTIFICATES))
    s.add_argument("frames", nargs="*")
    s.add_argument("--u", help="perturbation vectors (frame file) or, for operator_multiplier, a matrix file")
    s.add_argument("--v", help="perturbation vectors for the second frame")
    s.add_argument("--seed", type=_seed, help="draw U (and V) from seeded random duals")
    s.add_argument("--scale", type=_nonneg, default=1.0)
    s.add_argument("--eps", type=_nonneg)
    s.add_argument("--alpha", type=_nonneg)
    s.add_argument("--variant", choices=("printed", "canonical"), default="printed")
    s.add_argument("--direction", choices=certs.DIRECTIONS, default="originals_to_duals")
    s.add_argument("--phi-scalars", type=_scalars)
    s.add_argument("--psi-scalars", type=_scalars)
    for flag in ("--a1", "--a2", "--b-psi", "--b1", "--b2"):
        s.add_argument(flag, type=float)
    s.add_argument("--verify", action="store_true", help="run the exhaustive oracle on the concluded frames")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("search", parents=[common], help="random search for non-woven pairs")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--count", type=int, required=True, help="vectors per frame")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=_seed, default=0)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "count", 1) < 1 and args.command == "dual":
        print("error: --count must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, ValueError) as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
