import math

import numpy as np
import pytest

from parrondoqw.experiments import (
    AverageTrajectory,
    average_schmidt,
    compare_table,
    grid_schmidt,
    log_fit,
    parrondo_check,
    phase_independence_certificate,
    rank_sequences,
    sample_initial_states,
    schmidt_trajectories,
)
from parrondoqw.sequences import parse

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# sample_initial_states
# ---------------------------------------------------------------------------


def test_sampling_is_deterministic():
    first = sample_initial_states(3, seed=42)
    second = sample_initial_states(3, seed=42)
    assert [(s.theta, s.phi) for s in first] == [(s.theta, s.phi) for s in second]


def test_sampling_respects_ranges():
    for state in sample_initial_states(500, seed=0):
        assert 0.0 <= state.theta <= math.pi
        assert 0.0 <= state.phi < 2 * math.pi


def test_sampling_mean_theta_matches_uniform_moments():
    states = sample_initial_states(10**5, seed=7)
    thetas = np.array([s.theta for s in states])
    three_sigma = 3.0 * (math.pi / math.sqrt(12.0)) / math.sqrt(len(thetas))
    assert abs(thetas.mean() - math.pi / 2) < three_sigma


def test_sampling_rejects_bad_count():
    with pytest.raises(ValueError):
        sample_initial_states(0, seed=1)


# ---------------------------------------------------------------------------
# schmidt_trajectories engine
# ---------------------------------------------------------------------------


def test_trajectories_bitwise_stable_under_chunking_and_threads():
    states = sample_initial_states(300, seed=5)
    sequence = parse("XHF")
    baseline = schmidt_trajectories(states, sequence, 12)
    for chunk, threads in ((7, 1), (64, 3), (299, 2)):
        other = schmidt_trajectories(
            states, sequence, 12, chunk_size=chunk, threads=threads
        )
        assert np.array_equal(baseline, other)


def test_trajectories_record_steps_subset():
    states = sample_initial_states(20, seed=5)
    full = schmidt_trajectories(states, parse("XXH"), 10)
    subset = schmidt_trajectories(states, parse("XXH"), 10, record_steps=[3, 10])
    np.testing.assert_array_equal(subset[0], full[2])
    np.testing.assert_array_equal(subset[1], full[9])


def test_trajectories_record_steps_validation():
    states = sample_initial_states(2, seed=1)
    for bad in ([], [0], [3, 2], [1, 11]):
        with pytest.raises(ValueError):
            schmidt_trajectories(states, parse("H"), 10, record_steps=bad)


# ---------------------------------------------------------------------------
# average_schmidt
# ---------------------------------------------------------------------------


def test_x_walk_average_approaches_analytic_mean():
    # S of a pure-X walk is cos(theta/2) + sin(theta/2) at every step, whose
    # uniform-theta average is 4/pi.
    trajectory = average_schmidt(parse("XXX"), steps=10, samples=10**4, seed=11)
    for t in (1, 5, 10):
        assert abs(trajectory.mean_s[t - 1] - 4.0 / math.pi) < 0.01


def test_xxh_average_is_maximal_at_step_3():
    trajectory = average_schmidt(parse("XXH"), steps=3, samples=64, seed=2)
    assert abs(trajectory.mean_s[2] - SQRT2) < 1e-10
    assert trajectory.std_s[2] < 1e-10


def test_average_reproducible_and_thread_invariant():
    a = average_schmidt(parse("MMF"), 15, 50, seed=3)
    b = average_schmidt(parse("MMF"), 15, 50, seed=3, threads=4)
    np.testing.assert_array_equal(a.mean_s, b.mean_s)
    np.testing.assert_array_equal(a.std_s, b.std_s)


def test_average_mean_within_physical_bounds():
    trajectory = average_schmidt(parse("HFX"), 25, 80, seed=9)
    assert np.all(trajectory.mean_s >= 1.0 - 1e-12)
    assert np.all(trajectory.mean_s <= SQRT2 + 1e-12)
    assert np.all(np.diff(trajectory.steps) > 0)


# ---------------------------------------------------------------------------
# log_fit
# ---------------------------------------------------------------------------


def _synthetic(a, b, steps=60):
    t = np.arange(1, steps + 1)
    return AverageTrajectory(
        sequence_label="SYN", samples_per_point=1, seed=0,
        steps=t, mean_s=a * np.log(t) + b, std_s=np.zeros(steps),
    )


def test_log_fit_recovers_exact_generator():
    fit = log_fit(_synthetic(0.1, 1.2), t_min=1, extrapolate_to=400)
    assert fit.a == pytest.approx(0.1, abs=1e-12)
    assert fit.b == pytest.approx(1.2, abs=1e-12)
    assert fit.residual_rms < 1e-12
    assert fit.extrapolation[0][1] == pytest.approx(0.1 * math.log(400) + 1.2, abs=1e-10)


def test_log_fit_flat_series_has_zero_slope():
    fit = log_fit(_synthetic(0.0, 1.3), t_min=5, extrapolate_to=100)
    assert fit.a == pytest.approx(0.0, abs=1e-12)


def test_log_fit_requires_five_points():
    with pytest.raises(ValueError, match="insufficient"):
        log_fit(_synthetic(0.1, 1.0, steps=10), t_min=7, extrapolate_to=50)


def test_log_fit_multiple_targets_and_clipping():
    fit = log_fit(_synthetic(0.2, 1.0), t_min=1, extrapolate_to=[100, 10**6])
    assert [t for t, _ in fit.extrapolation] == [100, 10**6]
    ratios = dict(fit.extrapolation_ratios())
    assert ratios[10**6] == pytest.approx(1.0)  # clipped at sqrt(2)/sqrt(2)


# ---------------------------------------------------------------------------
# grid_schmidt / phase independence
# ---------------------------------------------------------------------------


def test_grid_axes_and_shape():
    grid = grid_schmidt(parse("XXH"), t=4, theta_steps=5, phi_steps=8)
    assert grid.values.shape == (5, 8)
    assert grid.theta_axis[0] == 0.0 and grid.theta_axis[-1] == pytest.approx(math.pi)
    assert grid.phi_axis[0] == 0.0 and grid.phi_axis[-1] < 2 * math.pi


def test_grid_requires_two_samples_per_axis():
    with pytest.raises(ValueError):
        grid_schmidt(parse("XXH"), t=4, theta_steps=1, phi_steps=8)


def test_xxh_grid_rows_are_phi_constant():
    grid = grid_schmidt(parse("XXH"), t=10, theta_steps=9, phi_steps=12)
    spread = np.max(grid.values, axis=1) - np.min(grid.values, axis=1)
    assert np.max(spread) < 1e-10


def test_pole_rows_are_phi_constant_for_any_sequence():
    # phi is physically irrelevant when theta is 0 or pi
    grid = grid_schmidt(parse("HHH"), t=6, theta_steps=5, phi_steps=10)
    for row in (0, -1):
        assert np.max(grid.values[row]) - np.min(grid.values[row]) < 1e-12


def test_fourier_grid_is_phase_shifted_hadamard_grid():
    # S_FFF(theta, phi) = S_HHH(theta, phi + pi/2): the F coin acts as a
    # phase-shifted H.  On a 12-point phi axis, +pi/2 is a roll of 3 cells.
    grid_h = grid_schmidt(parse("HHH"), t=5, theta_steps=7, phi_steps=12)
    grid_f = grid_schmidt(parse("FFF"), t=5, theta_steps=7, phi_steps=12)
    np.testing.assert_allclose(
        grid_f.values, np.roll(grid_h.values, -3, axis=1), atol=1e-10
    )


def test_phase_independence_certificate_contrast():
    flat = phase_independence_certificate(parse("XXH"), 20, 9, 12)
    assert flat.shape == (20,)
    assert flat.max() < 1e-10
    bumpy = phase_independence_certificate(parse("HHH"), 5, 9, 12)
    assert bumpy[0] > 0.05


# ---------------------------------------------------------------------------
# parrondo_check / rank_sequences
# ---------------------------------------------------------------------------


def test_parrondo_xxh_beats_both_parents():
    report = parrondo_check(parse("XXH"), parse("X"), parse("H"), t=50,
                            samples=100, seed=1)
    assert report.is_parrondo
    assert report.margin_a > 0.01 and report.margin_b > 0.01


def test_parrondo_degenerate_sequences_tie():
    report = parrondo_check(parse("HH"), parse("H"), parse("H"), t=10,
                            samples=40, seed=4)
    assert not report.is_parrondo
    assert report.margin_a == 0.0 and report.margin_b == 0.0


def test_parrondo_rejects_multi_coin_baseline():
    with pytest.raises(ValueError, match="single-coin"):
        parrondo_check(parse("XXH"), parse("XH"), parse("H"), t=5, samples=10, seed=1)


def test_rank_sequences_orders_by_mean():
    table = rank_sequences([parse("XXH"), parse("HHH"), parse("XXX")], t=3,
                           samples=200, seed=8)
    assert table.rows[0].sequence_label == "XXH"
    assert table.rows[0].mean_s == pytest.approx(SQRT2, abs=1e-10)
    assert table.rows[0].mean_s >= table.rows[1].mean_s >= table.rows[2].mean_s


def test_rank_single_candidate():
    table = rank_sequences([parse("H")], t=4, samples=30, seed=2)
    assert len(table.rows) == 1
    assert table.rows[0].sequence_label == "H"


def test_xxh_family_members_rank_identically():
    table = rank_sequences([parse("XXH"), parse("XXF"), parse("XXM")], t=14,
                           samples=150, seed=6)
    means = [row.mean_s for row in table.rows]
    assert max(means) - min(means) < 1e-10
    # exact ties fall back to lexicographic labels
    if means[0] == means[1] == means[2]:
        assert [r.sequence_label for r in table.rows] == ["XXF", "XXH", "XXM"]


def test_compare_table_multi_step_ordering():
    table = compare_table([parse("XXH"), parse("XXX")], [3, 7], samples=60, seed=3)
    assert [(r.t, r.sequence_label) for r in table.rows][:2] == [(3, "XXH"), (3, "XXX")]
    assert all(table.rows[i].t <= table.rows[i + 1].t for i in range(len(table.rows) - 1))
    for row in table.rows:
        assert 1.0 / SQRT2 - 1e-12 <= row.mean_s_over_sqrt2 <= 1.0 + 1e-12


def test_compare_table_requires_candidates_and_steps():
    with pytest.raises(ValueError):
        compare_table([], [3], samples=10, seed=1)
    with pytest.raises(ValueError):
        compare_table([parse("H")], [], samples=10, seed=1)
