"""Experiment protocols: averaging sweeps, grids, fits, and sequence comparisons.

All sweeps run on a batched version of the walk: amplitudes are (samples,
positions) arrays and every sample advances in lockstep through the shared
coin sequence.  Per-sample Schmidt norms are bitwise independent of how the
batch is chunked (all reductions are per-row), so results never depend on
chunk size or worker count.  Randomness enters only through
``sample_initial_states``, which draws every angle up front from a single
seeded generator; everything after that is deterministic.

Fairness rule for comparisons: a shared (seed-determined) initial-state set
is evolved under every candidate sequence, never re-sampled per candidate.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .entanglement import MAX_SCHMIDT_NORM, coin_reduction, schmidt_norm_from
from .sequences import CoinSequence
from .walk import InitialState

__all__ = [
    "AverageTrajectory",
    "FitResult",
    "GridResult",
    "ComparisonRow",
    "ComparisonTable",
    "ParrondoReport",
    "sample_initial_states",
    "average_schmidt",
    "log_fit",
    "grid_schmidt",
    "parrondo_check",
    "phase_independence_certificate",
    "rank_sequences",
    "compare_table",
]

#: Samples per chunk in batched sweeps; bounds transient memory only.
DEFAULT_CHUNK_SIZE = 8192

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Result containers.
# ---------------------------------------------------------------------------


@dataclass
class AverageTrajectory:
    """Mean (and std) Schmidt norm per step over a fixed initial-state sample."""

    sequence_label: str
    samples_per_point: int
    seed: int
    steps: NDArray[np.int_]
    mean_s: NDArray[np.float64]
    std_s: NDArray[np.float64]

    def points(self) -> list[tuple[int, float, float]]:
        return [
            (int(t), float(m), float(s))
            for t, m, s in zip(self.steps, self.mean_s, self.std_s)
        ]


@dataclass
class FitResult:
    """Least-squares fit ``S ~ a*ln(t) + b`` with extrapolated predictions."""

    a: float
    b: float
    fit_range: tuple[int, int]
    extrapolation: list[tuple[int, float]]
    residual_rms: float

    def predict(self, t) -> float:
        return self.a * math.log(t) + self.b

    def extrapolation_ratios(self) -> list[tuple[int, float]]:
        """Predictions as S/sqrt(2) ratios, clipped into the physical range."""
        return [
            (t, float(np.clip(s, 1.0, MAX_SCHMIDT_NORM)) / MAX_SCHMIDT_NORM)
            for t, s in self.extrapolation
        ]


@dataclass
class GridResult:
    """Schmidt norm over a regular (theta, phi) grid at a fixed step."""

    sequence_label: str
    t: int
    theta_axis: NDArray[np.float64]
    phi_axis: NDArray[np.float64]
    values: NDArray[np.float64]  # shape (len(theta_axis), len(phi_axis))


@dataclass(frozen=True)
class ComparisonRow:
    sequence_label: str
    t: int
    mean_s: float

    @property
    def mean_s_over_sqrt2(self) -> float:
        return self.mean_s / MAX_SCHMIDT_NORM


@dataclass
class ComparisonTable:
    """Per-sequence mean Schmidt norms on a shared sample set."""

    rows: list[ComparisonRow]
    samples: int
    seed: int


@dataclass
class ParrondoReport:
    """Outcome of one two-coins-beat-both-parents check."""

    sequence_label: str
    single_a_label: str
    single_b_label: str
    t: int
    samples: int
    seed: int
    mean_combined: float
    mean_a: float
    mean_b: float

    @property
    def margin_a(self) -> float:
        return self.mean_combined - self.mean_a

    @property
    def margin_b(self) -> float:
        return self.mean_combined - self.mean_b

    @property
    def is_parrondo(self) -> bool:
        return self.margin_a > 0.0 and self.margin_b > 0.0


# ---------------------------------------------------------------------------
# Sampling.
# ---------------------------------------------------------------------------


def sample_initial_states(count: int, seed: int) -> list[InitialState]:
    """Draw ``count`` initial states, theta ~ U[0, pi] and phi ~ U[0, 2pi).

    All angles come from one generator seeded with ``seed`` (theta block
    first, then phi block), so the list is reproducible and independent of
    any downstream parallelism.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, math.pi, count)
    phis = rng.uniform(0.0, TWO_PI, count)
    return [InitialState(t, p) for t, p in zip(thetas, phis)]


def _angle_arrays(states: Sequence[InitialState]) -> tuple[NDArray, NDArray]:
    thetas = np.array([s.theta for s in states], dtype=np.float64)
    phis = np.array([s.phi for s in states], dtype=np.float64)
    return thetas, phis


# ---------------------------------------------------------------------------
# Batched trajectory engine.
# ---------------------------------------------------------------------------


def _trajectory_chunk(
    thetas: NDArray[np.float64],
    phis: NDArray[np.float64],
    sequence: CoinSequence,
    steps: int,
    record_steps: Sequence[int],
) -> NDArray[np.float64]:
    """Schmidt norm at each recorded step for a batch of initial states.

    Returns shape (len(record_steps), batch).  The step loop is an in-place,
    einsum-fused restatement of ``walk.mix_coin`` + ``walk.shift_flip``
    (bitwise agreement with the single-walker path is enforced by tests);
    every reduction is per-row, so results never depend on batch size.
    """
    batch = thetas.shape[0]
    size = 2 * steps + 1
    amps = np.zeros((2, batch, size), dtype=np.complex128)
    amps[0, :, steps] = np.cos(thetas / 2.0)
    amps[1, :, steps] = np.exp(1j * phis) * np.sin(thetas / 2.0)
    mixed = np.empty_like(amps)
    out = np.empty((len(record_steps), batch), dtype=np.float64)
    row = 0
    for t in range(1, steps + 1):
        np.einsum("ab,bnp->anp", sequence.coin_at(t), amps, out=mixed)
        amps[0, :, 0] = 0.0
        amps[0, :, 1:] = mixed[1, :, :-1]
        amps[1, :, -1] = 0.0
        amps[1, :, :-1] = mixed[0, :, 1:]
        if row < len(record_steps) and record_steps[row] == t:
            pop0, pop1, coherence = coin_reduction(amps[0], amps[1])
            out[row] = schmidt_norm_from(pop0, pop1, coherence)
            row += 1
    return out


def schmidt_trajectories(
    states: Sequence[InitialState],
    sequence: CoinSequence,
    steps: int,
    record_steps: Sequence[int] | None = None,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> NDArray[np.float64]:
    """Per-sample Schmidt norm at the recorded steps; shape (n_recorded, len(states)).

    ``record_steps`` defaults to every step 1..steps; otherwise it must be a
    strictly increasing subset of that range (row i belongs to
    ``record_steps[i]``).  ``threads`` bounds worker threads over sample
    chunks.  Each sample's value is computed by per-row reductions only, so
    the output is bitwise identical for every (threads, chunk_size) choice.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if record_steps is None:
        record_steps = range(1, steps + 1)
    else:
        record_steps = list(record_steps)
        if not record_steps or any(
            b <= a for a, b in zip(record_steps, record_steps[1:])
        ):
            raise ValueError("record_steps must be nonempty and strictly increasing")
        if record_steps[0] < 1 or record_steps[-1] > steps:
            raise ValueError(f"record_steps must lie within 1..{steps}")
    thetas, phis = _angle_arrays(states)
    n = thetas.shape[0]
    out = np.empty((len(record_steps), n), dtype=np.float64)
    spans = [(lo, min(lo + chunk_size, n)) for lo in range(0, n, chunk_size)]

    def run(span: tuple[int, int]) -> None:
        lo, hi = span
        out[:, lo:hi] = _trajectory_chunk(
            thetas[lo:hi], phis[lo:hi], sequence, steps, record_steps
        )

    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, spans))
    else:
        for span in spans:
            run(span)
    return out


# ---------------------------------------------------------------------------
# Protocols.
# ---------------------------------------------------------------------------


def average_schmidt(
    sequence: CoinSequence,
    steps: int,
    samples: int,
    seed: int,
    threads: int = 1,
) -> AverageTrajectory:
    """Mean Schmidt norm per step over ``samples`` random initial states.

    One evolution per sample records S at every step of 1..steps; nothing is
    re-sampled per step.  Standard deviation (population, ddof=0) is kept
    alongside the mean so tolerances stay auditable.
    """
    states = sample_initial_states(samples, seed)
    traj = schmidt_trajectories(states, sequence, steps, threads=threads)
    return AverageTrajectory(
        sequence_label=sequence.label,
        samples_per_point=samples,
        seed=seed,
        steps=np.arange(1, steps + 1),
        mean_s=traj.mean(axis=1),
        std_s=traj.std(axis=1),
    )


def log_fit(
    trajectory: AverageTrajectory,
    t_min: int = 10,
    extrapolate_to: int | Iterable[int] = 400,
) -> FitResult:
    """Least-squares fit of ``mean S ~ a*ln(t) + b`` over points with t >= t_min.

    Points are unweighted.  ``extrapolate_to`` is one step value or an
    iterable of them; the fitted curve is evaluated there.

    Raises
    ------
    ValueError
        If fewer than 5 trajectory points satisfy ``t >= t_min``.
    """
    t = np.asarray(trajectory.steps, dtype=np.float64)
    s = np.asarray(trajectory.mean_s, dtype=np.float64)
    keep = t >= t_min
    if int(keep.sum()) < 5:
        raise ValueError(
            f"insufficient points for log fit: need >= 5 with t >= {t_min}, "
            f"have {int(keep.sum())}"
        )
    t_fit = t[keep]
    s_fit = s[keep]
    a, b = np.polyfit(np.log(t_fit), s_fit, 1)
    residuals = s_fit - (a * np.log(t_fit) + b)
    targets = [extrapolate_to] if isinstance(extrapolate_to, int) else list(extrapolate_to)
    return FitResult(
        a=float(a),
        b=float(b),
        fit_range=(int(t_fit[0]), int(t_fit[-1])),
        extrapolation=[(int(tt), float(a * math.log(tt) + b)) for tt in targets],
        residual_rms=float(np.sqrt(np.mean(residuals**2))),
    )


def _grid_states(theta_steps: int, phi_steps: int) -> tuple[NDArray, NDArray, list[InitialState]]:
    """Regular grid: theta in [0, pi] inclusive, phi in [0, 2pi) half-open."""
    if theta_steps < 2 or phi_steps < 2:
        raise ValueError(
            f"grid axes need >= 2 samples, got theta_steps={theta_steps} phi_steps={phi_steps}"
        )
    theta_axis = np.linspace(0.0, math.pi, theta_steps)
    phi_axis = np.linspace(0.0, TWO_PI, phi_steps, endpoint=False)
    tt, pp = np.meshgrid(theta_axis, phi_axis, indexing="ij")
    states = [InitialState(t, p) for t, p in zip(tt.ravel(), pp.ravel())]
    return theta_axis, phi_axis, states


def grid_schmidt(
    sequence: CoinSequence,
    t: int,
    theta_steps: int,
    phi_steps: int,
    threads: int = 1,
) -> GridResult:
    """Schmidt norm at step ``t`` on a regular (theta, phi) grid; deterministic."""
    theta_axis, phi_axis, states = _grid_states(theta_steps, phi_steps)
    traj = schmidt_trajectories(states, sequence, t, record_steps=[t], threads=threads)
    return GridResult(
        sequence_label=sequence.label,
        t=t,
        theta_axis=theta_axis,
        phi_axis=phi_axis,
        values=traj[0].reshape(theta_steps, phi_steps),
    )


def phase_independence_certificate(
    sequence: CoinSequence,
    t_max: int,
    theta_samples: int = 37,
    phi_samples: int = 72,
    threads: int = 1,
) -> NDArray[np.float64]:
    """Per-step max deviation of S across phi, ``dev[t-1] = max |S(t,theta,phi) - S(t,theta,phi0)|``.

    A sequence counts as phase-independent up to ``t_max`` when every entry is
    below the working tolerance (1e-10 throughout this package).
    """
    _, _, states = _grid_states(theta_samples, phi_samples)
    traj = schmidt_trajectories(states, sequence, t_max, threads=threads)
    grids = traj.reshape(t_max, theta_samples, phi_samples)
    return np.max(np.abs(grids - grids[:, :, :1]), axis=(1, 2))


def _means_at_steps(
    states: Sequence[InitialState],
    sequence: CoinSequence,
    step_list: Sequence[int],
    threads: int,
) -> list[float]:
    recorded = sorted(set(step_list))
    traj = schmidt_trajectories(
        states, sequence, recorded[-1], record_steps=recorded, threads=threads
    )
    means = {t: float(traj[i].mean()) for i, t in enumerate(recorded)}
    return [means[t] for t in step_list]


def parrondo_check(
    seq_ab: CoinSequence,
    seq_a: CoinSequence,
    seq_b: CoinSequence,
    t: int,
    samples: int,
    seed: int,
    threads: int = 1,
) -> ParrondoReport:
    """Does the two-coin sequence beat both of its single-coin parents at step t?

    ``seq_a`` and ``seq_b`` must be single-coin sequences.  All three means
    are taken over the same seeded sample set.
    """
    for seq, role in ((seq_a, "a"), (seq_b, "b")):
        if not seq.is_single_coin():
            raise ValueError(f"baseline sequence {role!r} must be single-coin, got {seq.label!r}")
    states = sample_initial_states(samples, seed)
    mean_ab, = _means_at_steps(states, seq_ab, [t], threads)
    mean_a, = _means_at_steps(states, seq_a, [t], threads)
    mean_b, = _means_at_steps(states, seq_b, [t], threads)
    return ParrondoReport(
        sequence_label=seq_ab.label,
        single_a_label=seq_a.label,
        single_b_label=seq_b.label,
        t=t,
        samples=samples,
        seed=seed,
        mean_combined=mean_ab,
        mean_a=mean_a,
        mean_b=mean_b,
    )


def compare_table(
    candidates: Sequence[CoinSequence],
    step_list: Sequence[int],
    samples: int,
    seed: int,
    threads: int = 1,
) -> ComparisonTable:
    """Mean S for every candidate at every requested step, on one shared sample set.

    Rows are ordered by step, then descending mean, ties broken by label.
    """
    if not candidates:
        raise ValueError("need at least one candidate sequence")
    if not step_list:
        raise ValueError("need at least one step value")
    states = sample_initial_states(samples, seed)
    per_seq = {
        seq.label: _means_at_steps(states, seq, step_list, threads)
        for seq in candidates
    }
    rows = [
        ComparisonRow(label, int(t), means[i])
        for i, t in enumerate(step_list)
        for label, means in per_seq.items()
    ]
    rows.sort(key=lambda r: (r.t, -r.mean_s, r.sequence_label))
    return ComparisonTable(rows=rows, samples=samples, seed=seed)


def rank_sequences(
    candidates: Sequence[CoinSequence],
    t: int,
    samples: int,
    seed: int,
    threads: int = 1,
) -> ComparisonTable:
    """Candidates ranked by mean S at step ``t`` (shared sample set)."""
    return compare_table(candidates, [t], samples, seed, threads=threads)
