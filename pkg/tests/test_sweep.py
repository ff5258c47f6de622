"""Phase and width sweeps."""
import math

import numpy as np
import pytest

from ringwave import RingConfig, Square, SweepSpec, sweep_theta, sweep_width

W = 1.0


def spec_for_thetas(thetas, d=60, n=500, rule="global", prep=Square(half_width=5)):
    return SweepSpec(
        config=RingConfig(n_sites=n, half_bandwidth=W),
        prep=prep,
        receiver=d,
        phase_grid=tuple(thetas),
        peak_rule=rule,
    )


class TestSweepTheta:
    def test_linear_phase_wins(self):
        result = sweep_theta(spec_for_thetas([0.0, -math.pi / 4, -math.pi / 2]))
        f_by_theta = {row.parameter: row.f_star for row in result.rows}
        assert f_by_theta[-math.pi / 2] > f_by_theta[-math.pi / 4] > f_by_theta[0.0]
        assert result.best.parameter == pytest.approx(-math.pi / 2)

    def test_origin_receiver_is_perfect(self):
        result = sweep_theta(spec_for_thetas([0.0, -1.0, 2.0], d=0))
        for row in result.rows:
            assert row.f_star == pytest.approx(1.0, abs=1e-12)

    def test_dense_grid_peaks_at_quarter_turn(self):
        thetas = np.linspace(-math.pi, 0.0, 33)
        result = sweep_theta(spec_for_thetas(thetas))
        best = result.best.parameter
        step = thetas[1] - thetas[0]
        assert abs(best - (-math.pi / 2)) <= step + 1e-12

    def test_mirror_symmetry(self):
        forward = sweep_theta(spec_for_thetas([-1.1, -0.4], d=40))
        mirrored = sweep_theta(spec_for_thetas([1.1, 0.4], d=-40))
        for a, b in zip(forward.rows, mirrored.rows):
            assert a.f_star == pytest.approx(b.f_star, abs=1e-12)
            assert a.t_star == pytest.approx(b.t_star, abs=1e-9)

    def test_deterministic(self):
        spec = spec_for_thetas([0.0, -0.5, -1.0], d=35)
        first = sweep_theta(spec)
        second = sweep_theta(spec)
        assert first == second

    def test_rows_reproducible_by_standalone_calls(self):
        from ringwave import fidelity_series, first_peak, no_wrap_horizon, time_grid

        spec = spec_for_thetas([0.0, -math.pi / 2], d=45)
        result = sweep_theta(spec)
        for row in result.rows:
            cfg = RingConfig(n_sites=500, half_bandwidth=W, phase=row.parameter)
            horizon = no_wrap_horizon(cfg, spec.prep, 45)
            series = fidelity_series(cfg, spec.prep, 45, time_grid(horizon, 0.05))
            peak = first_peak(series, rule="global")
            assert peak.t_star == row.t_star
            assert peak.f_star == row.f_star

    def test_tie_breaks_toward_smaller_magnitude(self):
        # d=0 gives f*=1 at every theta: the smallest |theta| must win
        result = sweep_theta(spec_for_thetas([-1.5, 0.3, 1.0], d=0))
        assert result.best.parameter == pytest.approx(0.3)

    def test_needs_phase_grid(self):
        with pytest.raises(ValueError):
            sweep_theta(
                SweepSpec(
                    config=RingConfig(500),
                    prep=Square(half_width=5),
                    receiver=10,
                    width_grid=(1, 2),
                )
            )


class TestSweepWidth:
    def _spec(self, widths, theta, d=60, rule="first-local"):
        return SweepSpec(
            config=RingConfig(n_sites=500, half_bandwidth=W, phase=theta),
            prep=Square(half_width=5),
            receiver=d,
            width_grid=tuple(widths),
            peak_rule=rule,
        )

    def test_single_site_start_ignores_the_phase(self):
        at_rest = sweep_width(self._spec([0], theta=0.0, d=30))
        tilted = sweep_width(self._spec([0], theta=-math.pi / 2, d=30))
        assert abs(at_rest.rows[0].f_star - tilted.rows[0].f_star) <= 0.02

    def test_delocalization_helps_transport(self):
        result = sweep_width(self._spec(range(0, 11), theta=-math.pi / 2))
        f_by_width = {int(row.parameter): row.f_star for row in result.rows}
        assert f_by_width[5] > f_by_width[0]
        assert 0.75 <= f_by_width[5] <= 0.9

    def test_too_wide_rejected(self):
        with pytest.raises(ValueError):
            sweep_width(self._spec([70], theta=0.0))

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            self._spec([], theta=0.0)
