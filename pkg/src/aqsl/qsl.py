"""Speed-limit bounds for the decay and creation of affinity discord.

``tau_qc = max(1/L_op, 1/L_tr, 1/L_hs) * 2 dQ * (1 - (2 D0 -+ dQ)/2)``, where
each ``L`` is the time average over ``[0, tau]`` of ``||d sqrt(rho)/dt||`` plus
``||d sqrt(sigma)/dt||`` in the matching norm, and ``sigma = Pi_a(rho)`` is the
state after the optimal measurement at that time. The derivatives are taken
in the system space by finite differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np

from . import linalg
from .correlations import BlochMeasurement, affinity_discord_closed, measure_a
from .errors import DegenerateBound, ModeMismatch, StencilOutOfDomain
from .states import DensityMatrix, as_state

Trajectory = Callable[[float], DensityMatrix]

DEFAULT_STEPS = 200
# top-eigenvalue gap of T below which the optimal measurement is ambiguous
_TIE_GAP = 1e-9
_MODE_TOL = 1e-12
# rate averages below this are finite-difference roundoff, not motion
_RATE_FLOOR = 1e-10


class QslMode(str, Enum):
    DECAY = "decay"
    CREATION = "creation"


@dataclass(frozen=True)
class QslProfile:
    tau: float
    delta_q: float
    lambda_op: float
    lambda_tr: float
    lambda_hs: float
    tau_qc: float
    mode: QslMode
    d0: float
    dtau: float


def delta_q(rho0, rhot) -> float:
    """``|D(rho0) - D(rhot)|`` for the affinity discord."""
    return abs(affinity_discord_closed(rho0).value - affinity_discord_closed(rhot).value)


def default_h(tau: float, n_steps: int = DEFAULT_STEPS) -> float:
    return min(1e-4, tau / (10 * n_steps))


def optimal_measurement(traj: Trajectory, t: float, h: float,
                        domain: tuple[float, float] = (0.0, math.inf)) -> BlochMeasurement:
    """Optimal measurement of ``traj(t)``.

    Where the optimum is degenerate (e.g. a maximally entangled state) the
    direction is taken from the neighbouring time inside ``domain``, i.e. the
    one-sided limit along the trajectory.
    """
    closed = affinity_discord_closed(traj(t))
    if closed.gap < _TIE_GAP:
        lo, hi = domain
        s = t + h if t + h <= hi else t - h
        if lo <= s <= hi:
            neighbour = affinity_discord_closed(traj(s))
            if neighbour.gap >= _TIE_GAP:
                return BlochMeasurement.along(neighbour.optimal_bloch)
    return BlochMeasurement.along(closed.optimal_bloch)


class SqrtRate(NamedTuple):
    dsr: np.ndarray
    dss: np.ndarray
    bloch: np.ndarray


def _stencil(t: float, h: float, domain: tuple[float, float]):
    lo, hi = domain
    slack = 1e-12 * max(1.0, abs(t))
    if h <= 0:
        raise ValueError(f"step h must be positive, got {h!r}")
    if t < lo - slack or t > hi + slack:
        raise StencilOutOfDomain(f"t = {t!r} outside [{lo}, {hi}]")
    if t - h >= lo - slack and t + h <= hi + slack:
        return [(t + h, 1.0), (t - h, -1.0)]
    if t + 2 * h <= hi + slack:
        return [(t, -3.0), (t + h, 4.0), (t + 2 * h, -1.0)]
    if t - 2 * h >= lo - slack:
        return [(t, 3.0), (t - h, -4.0), (t - 2 * h, 1.0)]
    raise StencilOutOfDomain(f"no second-order stencil of width h = {h!r} fits [{lo}, {hi}]")


def sqrt_rate(traj: Trajectory, t: float, h: float,
              domain: tuple[float, float] = (0.0, math.inf),
              measurement: BlochMeasurement | None = None) -> SqrtRate:
    """Second-order finite differences of ``sqrt(rho_t)`` and ``sqrt(Pi(rho_t))``.

    Central differences inside ``domain``, one-sided ones at its edges. The
    measurement defining ``sigma_t`` is held fixed across the stencil.
    """
    stencil = _stencil(t, h, domain)
    m = measurement if measurement is not None else optimal_measurement(traj, t, h, domain)
    dsr = np.zeros((1, 1), dtype=np.complex128)
    dss = np.zeros((1, 1), dtype=np.complex128)
    for s, w in stencil:
        rho = as_state(traj(s))
        dsr = dsr + w * rho.sqrt()
        dss = dss + w * measure_a(rho, m).sqrt()
    dsr, dss = dsr / (2 * h), dss / (2 * h)
    return SqrtRate(0.5 * (dsr + linalg.dagger(dsr)), 0.5 * (dss + linalg.dagger(dss)), m.r)


class Lambdas(NamedTuple):
    lambda_op: float
    lambda_tr: float
    lambda_hs: float


def rate_norms(traj: Trajectory, tau: float, n_steps: int = DEFAULT_STEPS,
               h: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and per-node ``||dsr|| + ||dss||`` for op, tr, hs (shape (n+1, 3))."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    if n_steps < 2:
        raise ValueError(f"n_steps must be at least 2, got {n_steps}")
    h = default_h(tau, n_steps) if h is None else h
    nodes = np.linspace(0.0, tau, n_steps + 1)
    vals = np.empty((n_steps + 1, 3))
    for i, t in enumerate(nodes):
        r = sqrt_rate(traj, float(t), h, domain=(0.0, tau))
        vals[i] = [linalg.norm(r.dsr, k) + linalg.norm(r.dss, k) for k in ("op", "tr", "hs")]
    return nodes, vals


def lambda_averages(traj: Trajectory, tau: float, n_steps: int = DEFAULT_STEPS,
                    h: float | None = None) -> Lambdas:
    """Trapezoidal time averages of the square-root rates over ``[0, tau]``."""
    nodes, vals = rate_norms(traj, tau, n_steps, h)
    w = np.full(n_steps + 1, tau / n_steps)
    w[0] = w[-1] = 0.5 * tau / n_steps
    avg = (w @ vals) / tau
    return Lambdas(*(float(a) for a in avg))


def bound_prefactor(d0: float, dq: float, mode: QslMode) -> float:
    """``2 dQ (1 - (2 D0 -+ dQ)/2)``; minus sign for decay, plus for creation."""
    sign = -1.0 if QslMode(mode) is QslMode.DECAY else 1.0
    return 2.0 * dq * (1.0 - (2.0 * d0 + sign * dq) / 2.0)


def tau_qsl(rho0, traj: Trajectory, tau: float, mode: QslMode | str = QslMode.DECAY,
            n_steps: int = DEFAULT_STEPS, h: float | None = None) -> QslProfile:
    """Combined Margolus-Levitin / Mandelstam-Tamm bound for a trajectory on ``[0, tau]``."""
    mode = QslMode(mode)
    rho0 = as_state(rho0)
    start = as_state(traj(0.0))
    if np.linalg.norm(start.mat - rho0.mat) > 1e-10:
        raise ValueError("traj(0) does not match rho0")
    d0 = affinity_discord_closed(rho0).value
    dtau = affinity_discord_closed(traj(tau)).value
    if mode is QslMode.DECAY and dtau > d0 + _MODE_TOL:
        raise ModeMismatch(f"decay mode but discord grows from {d0:.6g} to {dtau:.6g}")
    if mode is QslMode.CREATION and dtau < d0 - _MODE_TOL:
        raise ModeMismatch(f"creation mode but discord falls from {d0:.6g} to {dtau:.6g}")
    dq = abs(d0 - dtau)
    lam = lambda_averages(traj, tau, n_steps, h)
    if dq <= 1e-15:
        tau_qc = 0.0
    elif max(lam) <= _RATE_FLOOR:
        raise DegenerateBound(f"all rate averages vanish while dQ = {dq:.3e}")
    else:
        inv = max(1.0 / v for v in lam if v > _RATE_FLOOR)
        tau_qc = inv * bound_prefactor(d0, dq, mode)
    return QslProfile(tau=float(tau), delta_q=dq, lambda_op=lam.lambda_op,
                      lambda_tr=lam.lambda_tr, lambda_hs=lam.lambda_hs,
                      tau_qc=float(tau_qc), mode=mode, d0=d0, dtau=dtau)


def reversed_trajectory(traj: Trajectory, tau: float) -> Trajectory:
    """``s -> traj(tau - s)``, used to evaluate the creation branch of the bound."""
    def rev(s: float) -> DensityMatrix:
        return traj(max(0.0, tau - s))
    return rev
