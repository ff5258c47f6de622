"""Dense real-space cross-check for the spectral propagator.

Builds the ring Hamiltonian as an explicit N x N matrix,

    H[j, j+1] = -w e^{-i theta},   H[j, j-1] = -w e^{+i theta}   (periodic),

and integrates i d(psi)/dt = H psi with a classical fourth-order Runge-Kutta
stepper.  No Fourier machinery appears anywhere in this module, so a
convention error in the spectral path cannot cancel out here: agreement
between the two propagators is a genuine two-route check.  The stepper never
renormalizes; norm drift is part of the error signal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ring import RingConfig, WavePacket

__all__ = ["DenseHamiltonian", "build_hamiltonian", "evolve_stepper", "MAX_DENSE_SITES"]

MAX_DENSE_SITES = 4096

MAX_STEPS = 10**7


@dataclass(frozen=True)
class DenseHamiltonian:
    """Hermitian N x N hopping matrix of the ring (zero diagonal)."""

    n_sites: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128, copy=True)
        if mat.shape != (self.n_sites, self.n_sites):
            raise ValueError("matrix shape does not match n_sites")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def hopping_strength(self) -> float:
        return float(np.max(np.abs(self.matrix)))


def build_hamiltonian(config: RingConfig, _flip_phase: bool = False) -> DenseHamiltonian:
    """Dense ring Hamiltonian whose plane waves e^{i q j} have energy -2 w cos(q - theta).

    `_flip_phase` is a validation hook that mirrors the hopping phase on
    purpose (the resulting matrix propagates the wrong way); it exists so the
    self-check suites can demonstrate that they catch exactly this mistake.
    """
    if config.n_sites > MAX_DENSE_SITES:
        raise ValueError(f"dense real-space check limited to N <= {MAX_DENSE_SITES}")
    n = config.n_sites
    w = config.half_bandwidth
    theta = -config.phase if _flip_phase else config.phase
    matrix = np.zeros((n, n), dtype=np.complex128)
    idx = np.arange(n)
    matrix[idx, (idx + 1) % n] += -w * np.exp(-1j * theta)
    matrix[idx, (idx - 1) % n] += -w * np.exp(1j * theta)
    return DenseHamiltonian(n_sites=n, matrix=matrix)


def evolve_stepper(
    hamiltonian: DenseHamiltonian, packet: WavePacket, t: float, dt: float
) -> WavePacket:
    """Propagate with explicit RK4 steps of size at most dt.

    The requested span is covered by uniform steps (t / ceil(|t|/dt)), so the
    final time is hit exactly.  dt must satisfy dt <= 0.01/w and |t|/dt <=
    1e7.  The returned packet is NOT renormalized: its norm drift measures
    the integration error and must stay below 1e-8 at the default step for
    spans up to 100/w.
    """
    if packet.n_sites != hamiltonian.n_sites:
        raise ValueError("packet size does not match the Hamiltonian")
    t = float(t)
    dt = float(dt)
    if not (math.isfinite(t) and math.isfinite(dt) and dt > 0.0):
        raise ValueError("t must be finite and dt positive")
    w = hamiltonian.hopping_strength
    if w > 0.0 and dt > 0.01 / w + 1e-15:
        raise ValueError(f"step {dt:g} too coarse for fourth-order accuracy (need dt <= {0.01 / w:g})")
    if abs(t) / dt > MAX_STEPS:
        raise ValueError(f"span needs more than {MAX_STEPS:g} steps")
    if t == 0.0:
        return packet
    steps = max(1, int(math.ceil(abs(t) / dt - 1e-12)))
    h = t / steps
    matrix = hamiltonian.matrix
    psi = packet.amplitudes.astype(np.complex128, copy=True)
    for _ in range(steps):
        k1 = -1j * (matrix @ psi)
        k2 = -1j * (matrix @ (psi + 0.5 * h * k1))
        k3 = -1j * (matrix @ (psi + 0.5 * h * k2))
        k4 = -1j * (matrix @ (psi + h * k3))
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return WavePacket(psi, norm_tol=1e-6)
