"""Command-line interface: deterministic experiment runs with file output.

Subcommands
-----------
trace      per-step entanglement record of one walk
average    mean Schmidt norm per step over seeded random initial states
fit        logarithmic fit + extrapolation of an ``average`` CSV
grid       Schmidt norm over a regular (theta, phi) grid at fixed step
compare    mean Schmidt norm for several sequences at several steps
parrondo   does a two-coin sequence beat both single-coin parents?
search     enumerate short patterns and rank them by mean Schmidt norm

Every output starts with a ``# manifest:`` comment (JSON: command, version,
parameters) so runs are self-describing; identical invocations produce
byte-identical files.  Data goes to --out (default stdout), diagnostics to
stderr.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import __version__
from .entanglement import MAX_SCHMIDT_NORM, reduced_density
from .experiments import (
    average_schmidt,
    compare_table,
    grid_schmidt,
    log_fit,
    parrondo_check,
)
from .output import make_manifest, read_average_csv, write_csv, write_json
from .sequences import enumerate_patterns, parse
from .walk import InitialState, evolve

__all__ = ["main"]


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated integer list") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _label_list(text: str) -> list[str]:
    labels = [part.strip() for part in text.split(",") if part.strip()]
    if not labels:
        raise argparse.ArgumentTypeError("empty sequence list")
    return labels


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parrondoqw",
        description="Quantum-walk entanglement experiments with deterministic coin sequences.",
    )
    parser.add_argument("--version", action="version", version=f"parrondoqw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, samples_default: int) -> None:
        p.add_argument("--samples", type=_positive_int, default=samples_default,
                       help=f"random initial states (default {samples_default})")
        p.add_argument("--seed", type=int, default=1, help="master RNG seed (default 1)")
        p.add_argument("--threads", type=_positive_int, default=1,
                       help="worker threads; never changes results (default 1)")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("trace", help="per-step record of a single walk")
    p.add_argument("--seq", required=True, help="coin sequence label, e.g. XXH")
    p.add_argument("--theta", type=float, required=True, help="initial theta")
    p.add_argument("--phi", type=float, default=0.0, help="initial phi (default 0)")
    p.add_argument("--degrees", action="store_true", help="interpret angles as degrees")
    p.add_argument("--steps", type=_positive_int, required=True)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(run=_cmd_trace)

    p = sub.add_parser("average", help="mean Schmidt norm per step")
    p.add_argument("--seq", required=True)
    p.add_argument("--steps", type=_positive_int, required=True)
    add_common(p, samples_default=100)
    p.set_defaults(run=_cmd_average)

    p = sub.add_parser("fit", help="log fit + extrapolation of an average CSV")
    p.add_argument("--in", dest="input", required=True, help="trajectory CSV from 'average'")
    p.add_argument("--tmin", type=_positive_int, default=10,
                   help="first step included in the fit (default 10)")
    p.add_argument("--extrapolate", type=_int_list, default=[400],
                   help="comma-separated steps to predict (default 400)")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(run=_cmd_fit)

    p = sub.add_parser("grid", help="Schmidt norm over a (theta, phi) grid")
    p.add_argument("--seq", required=True)
    p.add_argument("--t", type=_positive_int, required=True, help="step at which S is recorded")
    p.add_argument("--theta-steps", type=_positive_int, default=37)
    p.add_argument("--phi-steps", type=_positive_int, default=72)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(run=_cmd_grid)

    p = sub.add_parser("compare", help="rank sequences by mean Schmidt norm")
    p.add_argument("--seqs", type=_label_list, required=True, help="comma-separated labels")
    p.add_argument("--t-list", type=_int_list, required=True, help="comma-separated steps")
    add_common(p, samples_default=1000)
    p.set_defaults(run=_cmd_compare)

    p = sub.add_parser("parrondo", help="two-coin sequence vs both single-coin parents")
    p.add_argument("--ab", required=True, help="combined sequence label")
    p.add_argument("--a", required=True, help="first single-coin baseline")
    p.add_argument("--b", required=True, help="second single-coin baseline")
    p.add_argument("--t", type=_positive_int, required=True)
    add_common(p, samples_default=100)
    p.set_defaults(run=_cmd_parrondo)

    p = sub.add_parser("search", help="enumerate and rank short patterns")
    p.add_argument("--alphabet", default="HFMX", help="coin letters to combine (default HFMX)")
    p.add_argument("--max-period", type=_positive_int, default=3)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--top", type=_positive_int, default=None, help="keep only the best N rows")
    add_common(p, samples_default=1000)
    p.set_defaults(run=_cmd_search)

    return parser


# ---------------------------------------------------------------------------
# Command implementations.
# ---------------------------------------------------------------------------


def _cmd_trace(args) -> None:
    theta, phi = args.theta, args.phi
    if args.degrees:
        theta = math.radians(theta)
        phi = math.radians(phi)
    sequence = parse(args.seq)
    initial = InitialState(theta, phi)
    manifest = make_manifest(
        "trace", __version__,
        seq=sequence.label, theta=theta, phi=initial.phi, steps=args.steps,
    )
    rows = []
    for state in evolve(initial, sequence, args.steps):
        rec = reduced_density(state)
        rows.append((
            rec.step, rec.schmidt_norm, rec.pop0, rec.pop1,
            rec.coherence.real, rec.coherence.imag,
            rec.eigen_minus, rec.eigen_plus,
        ))
    write_csv(
        args.out, manifest,
        ["t", "S", "pop0", "pop1", "re_coherence", "im_coherence", "E_minus", "E_plus"],
        rows,
    )


def _cmd_average(args) -> None:
    sequence = parse(args.seq)
    manifest = make_manifest(
        "average", __version__,
        seq=sequence.label, steps=args.steps, samples=args.samples, seed=args.seed,
    )
    traj = average_schmidt(sequence, args.steps, args.samples, args.seed, threads=args.threads)
    rows = (
        (int(t), m, s, m / MAX_SCHMIDT_NORM)
        for t, m, s in zip(traj.steps, traj.mean_s, traj.std_s)
    )
    write_csv(args.out, manifest, ["t", "mean_S", "std_S", "mean_S_over_sqrt2"], rows)


def _cmd_fit(args) -> None:
    input_manifest, traj = read_average_csv(args.input)
    fit = log_fit(traj, t_min=args.tmin, extrapolate_to=args.extrapolate)
    manifest = make_manifest(
        "fit", __version__,
        input=args.input, tmin=args.tmin, extrapolate=args.extrapolate,
    )
    ratios = dict(fit.extrapolation_ratios())
    write_json(
        args.out, manifest,
        {
            "a": fit.a,
            "b": fit.b,
            "fit_t_min": fit.fit_range[0],
            "fit_t_max": fit.fit_range[1],
            "residual_rms": fit.residual_rms,
            "extrapolation": [
                {"t": t, "S": s, "S_over_sqrt2": ratios[t]}
                for t, s in fit.extrapolation
            ],
            "input_manifest": input_manifest,
        },
    )


def _cmd_grid(args) -> None:
    sequence = parse(args.seq)
    manifest = make_manifest(
        "grid", __version__,
        seq=sequence.label, t=args.t,
        theta_steps=args.theta_steps, phi_steps=args.phi_steps,
    )
    result = grid_schmidt(sequence, args.t, args.theta_steps, args.phi_steps,
                          threads=args.threads)
    rows = (
        (theta, phi, result.values[i, j])
        for i, theta in enumerate(result.theta_axis)
        for j, phi in enumerate(result.phi_axis)
    )
    write_csv(args.out, manifest, ["theta", "phi", "S"], rows)


def _cmd_compare(args) -> None:
    sequences = [parse(label) for label in args.seqs]
    manifest = make_manifest(
        "compare", __version__,
        seqs=[s.label for s in sequences], t_list=args.t_list,
        samples=args.samples, seed=args.seed,
    )
    table = compare_table(sequences, args.t_list, args.samples, args.seed,
                          threads=args.threads)
    rows = (
        (row.sequence_label, row.t, row.mean_s, row.mean_s_over_sqrt2)
        for row in table.rows
    )
    write_csv(args.out, manifest, ["sequence", "t", "mean_S", "mean_S_over_sqrt2"], rows)


def _cmd_parrondo(args) -> None:
    seq_ab, seq_a, seq_b = parse(args.ab), parse(args.a), parse(args.b)
    manifest = make_manifest(
        "parrondo", __version__,
        ab=seq_ab.label, a=seq_a.label, b=seq_b.label,
        t=args.t, samples=args.samples, seed=args.seed,
    )
    report = parrondo_check(seq_ab, seq_a, seq_b, args.t, args.samples, args.seed,
                            threads=args.threads)
    write_json(
        args.out, manifest,
        {
            "sequence": report.sequence_label,
            "single_a": report.single_a_label,
            "single_b": report.single_b_label,
            "t": report.t,
            "samples": report.samples,
            "seed": report.seed,
            "mean_combined": report.mean_combined,
            "mean_a": report.mean_a,
            "mean_b": report.mean_b,
            "margin_a": report.margin_a,
            "margin_b": report.margin_b,
            "is_parrondo": report.is_parrondo,
        },
    )


def _cmd_search(args) -> None:
    candidates = enumerate_patterns(args.alphabet, args.max_period)
    manifest = make_manifest(
        "search", __version__,
        alphabet="".join(sorted(set(args.alphabet.upper()))),
        max_period=args.max_period, t=args.t,
        samples=args.samples, seed=args.seed, top=args.top,
    )
    table = compare_table(candidates, [args.t], args.samples, args.seed,
                          threads=args.threads)
    rows = table.rows if args.top is None else table.rows[: args.top]
    write_csv(
        args.out, manifest,
        ["sequence", "t", "mean_S", "mean_S_over_sqrt2"],
        ((r.sequence_label, r.t, r.mean_s, r.mean_s_over_sqrt2) for r in rows),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
