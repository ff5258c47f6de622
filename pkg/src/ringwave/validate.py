"""Self-check suites behind the `validate` CLI command.

Five independent suites, each a list of named checks with measured values:

* spectrum            -- dense-matrix eigenvalues against the closed-form
                         band, including a per-mode plane-wave residual that
                         is sensitive to a mirrored hopping phase.
* oracle              -- spectral propagator against the RK4 stepper.
* bessel              -- three-term recurrence and the sum rule
                         J_0^2 + 2 sum J_n^2 = 1.
* parseval_unitarity  -- transform round trips, Parseval, norm conservation
                         and composition of the evolution.
* peak_times          -- envelope peak-time formulas against direct numeric
                         maximization and against the lattice simulation.

`run_validation(inject_phase_flip=True)` rebuilds the dense matrices with the
hopping phase mirrored on purpose; a healthy install must then FAIL the
spectrum and oracle suites (mutation test for the convention checks).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import bessel_j_sequence, gaussian_fidelity, peak_time_theta0
from .observables import fidelity_series, first_peak, time_grid
from .realspace import build_hamiltonian, evolve_stepper
from .ring import (
    RingConfig,
    Square,
    WavePacket,
    evolve,
    from_momentum,
    prepare,
    to_momentum,
)

__all__ = ["CheckResult", "SuiteResult", "run_validation", "SUITE_NAMES"]

SUITE_NAMES = ("spectrum", "oracle", "bessel", "parseval_unitarity", "peak_times")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def _check(name: str, measured: float, bound: float) -> CheckResult:
    return CheckResult(name, bool(measured <= bound), f"{measured:.3e} (bound {bound:.0e})")


def golden_section_argmax(fn, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Argmax of a unimodal scalar function by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
        else:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
    return 0.5 * (a + b)


def _spectrum_suite(flip: bool) -> SuiteResult:
    checks = []
    cases = [(4, 0.0, 1.0), (8, -math.pi / 4, 1.0), (50, -math.pi / 2, 1.3), (50, 0.83, 1.0)]
    for n, theta, w in cases:
        config = RingConfig(n_sites=n, half_bandwidth=w, phase=theta)
        dense = build_hamiltonian(config, _flip_phase=flip)
        herm = float(np.max(np.abs(dense.matrix - dense.matrix.conj().T)))
        checks.append(_check(f"hermitian N={n}", herm, 1e-14))
        eig_dev = float(
            np.max(np.abs(np.linalg.eigvalsh(dense.matrix) - np.sort(config.band())))
        )
        checks.append(_check(f"sorted eigenvalues N={n} theta={theta:.3f}", eig_dev, 1e-10))
        # per-mode residual ||H v_q - eps_q v_q||: catches a mirrored phase
        modes = np.exp(1j * np.outer(np.arange(n), config.momenta())) / math.sqrt(n)
        residual = float(np.max(np.abs(dense.matrix @ modes - modes * config.band())))
        checks.append(_check(f"plane-wave energies N={n} theta={theta:.3f}", residual, 1e-10))
    return SuiteResult("spectrum", tuple(checks))


def _oracle_suite(flip: bool) -> SuiteResult:
    checks = []
    config0 = RingConfig(n_sites=64, half_bandwidth=1.0)
    packet = prepare(config0, Square(half_width=5))
    for theta in (0.0, -math.pi / 4, -math.pi / 2):
        config = RingConfig(n_sites=64, half_bandwidth=1.0, phase=theta)
        dense = build_hamiltonian(config, _flip_phase=flip)
        stepped = evolve_stepper(dense, packet, t=10.0, dt=1e-3)
        spectral = evolve(config, packet, 10.0)
        dev = float(np.max(np.abs(stepped.amplitudes - spectral.amplitudes)))
        checks.append(_check(f"spectral vs RK4 theta={theta:.3f}", dev, 1e-7))
        drift = abs(float(np.sum(np.abs(stepped.amplitudes) ** 2)) - 1.0)
        checks.append(_check(f"RK4 norm drift theta={theta:.3f}", drift, 1e-8))
    return SuiteResult("oracle", tuple(checks))


def _bessel_suite() -> SuiteResult:
    checks = []
    worst = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0):
        table = bessel_j_sequence(101, x)
        orders = np.arange(1, 101)
        residual = table[:-2] + table[2:] - (2.0 * orders / x) * table[1:-1]
        worst = max(worst, float(np.max(np.abs(residual))))
    checks.append(_check("three-term recurrence", worst, 1e-9))
    worst = 0.0
    for x in (0.5, 1.0, 5.0, 10.0, 25.0, 50.0):
        table = bessel_j_sequence(int(x) + 120, x)
        total = table[0] ** 2 + 2.0 * float(np.sum(table[1:] ** 2))
        worst = max(worst, abs(total - 1.0))
    checks.append(_check("sum rule J0^2 + 2 sum Jn^2 = 1", worst, 1e-9))
    return SuiteResult("bessel", tuple(checks))


def _parseval_suite() -> SuiteResult:
    checks = []
    rng = np.random.default_rng(7)
    worst_round, worst_parseval, worst_norm, worst_comp = 0.0, 0.0, 0.0, 0.0
    for n in (8, 33, 128, 500):
        raw = rng.normal(size=n) + 1j * rng.normal(size=n)
        packet = WavePacket(raw / np.linalg.norm(raw))
        spectrum = to_momentum(packet)
        worst_parseval = max(
            worst_parseval,
            abs(float(np.sum(np.abs(spectrum.amplitudes) ** 2)) / n - 1.0),
        )
        back = from_momentum(spectrum)
        worst_round = max(worst_round, float(np.max(np.abs(back.amplitudes - packet.amplitudes))))
        config = RingConfig(n_sites=n, half_bandwidth=1.0, phase=-0.9)
        moved = evolve(config, packet, 17.0)
        worst_norm = max(worst_norm, abs(float(np.sum(np.abs(moved.amplitudes) ** 2)) - 1.0))
        twice = evolve(config, evolve(config, packet, 6.5), 10.5)
        worst_comp = max(worst_comp, float(np.max(np.abs(twice.amplitudes - moved.amplitudes))))
    checks.append(_check("transform round trip", worst_round, 1e-12))
    checks.append(_check("Parseval", worst_parseval, 1e-12))
    checks.append(_check("evolution preserves norm", worst_norm, 1e-12))
    checks.append(_check("evolution composes", worst_comp, 1e-10))
    return SuiteResult("parseval_unitarity", tuple(checks))


def _peak_time_suite() -> SuiteResult:
    checks = []
    worst = 0.0
    for d in (20, 30):
        predicted = peak_time_theta0(11, d, 1.0)
        numeric = golden_section_argmax(
            lambda t: gaussian_fidelity(11, d, 1.0, 0.0, t), 1.0, 4.0 * predicted
        )
        worst = max(worst, abs(numeric - predicted) / predicted)
    checks.append(_check("envelope peak time matches formula (rel)", worst, 1e-6))
    config = RingConfig(n_sites=500, half_bandwidth=1.0, phase=-math.pi / 2)
    series = fidelity_series(config, Square(half_width=5), 60, time_grid(92.0, 0.05))
    peak = first_peak(series)
    checks.append(
        _check("ballistic arrival time d=60 (rel dev from d/2w)", abs(peak.t_star - 30.0) / 30.0, 0.05)
    )
    return SuiteResult("peak_times", tuple(checks))


def run_validation(inject_phase_flip: bool = False) -> dict[str, SuiteResult]:
    """Run every suite; with inject_phase_flip the convention checks must fail."""
    return {
        "spectrum": _spectrum_suite(inject_phase_flip),
        "oracle": _oracle_suite(inject_phase_flip),
        "bessel": _bessel_suite(),
        "parseval_unitarity": _parseval_suite(),
        "peak_times": _peak_time_suite(),
    }
