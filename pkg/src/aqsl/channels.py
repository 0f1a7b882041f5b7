"""Kraus channels and Ornstein-Uhlenbeck dephasing of two qubits."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NegativeTime
from .states import BellDiagonalParams, DensityMatrix, as_state

# below this value of gamma*t the bracket in f(t) is evaluated by its series;
# above it 1 + expm1(-x)/x loses under two digits to cancellation
SERIES_THRESHOLD = 0.1
# x^k/(k+1)! coefficients, alternating; truncation < 1e-16 relative for x < 0.1
_SERIES = tuple((-1) ** (k + 1) / math.factorial(k + 1) for k in range(1, 10))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=np.complex128) for k in self.ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        n = ops[0].shape[0]
        if any(k.shape != (n, n) for k in ops):
            raise DimensionMismatch("Kraus operators must be square and of equal size")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    def completeness_error(self) -> float:
        """``||sum_k K_k^dag K_k - I||_HS``."""
        s = sum(k.conj().T @ k for k in self.ops)
        return float(np.linalg.norm(s - np.eye(self.dim)))

    def __call__(self, rho) -> DensityMatrix:
        return apply(self, rho)


@dataclass(frozen=True)
class OuParams:
    """Coupling strength ``big_gamma`` and noise bandwidth ``gamma`` (inverse time)."""
    big_gamma: float
    gamma: float

    def __post_init__(self):
        for name in ("big_gamma", "gamma"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")


def _check_time(t: float):
    if not t >= 0:
        raise NegativeTime(f"time must be nonnegative, got {t!r}")


def ou_f(t: float, p: OuParams) -> float:
    """Decoherence exponent ``f(t) = (G t / 2) [1 + (exp(-g t) - 1)/(g t)]``."""
    _check_time(t)
    x = p.gamma * t
    if math.isinf(x):
        return math.inf
    if x < SERIES_THRESHOLD:
        # x/2 - x^2/6 + x^3/24 - ...
        bracket = 0.0
        for a in reversed(_SERIES):
            bracket = (bracket + a) * x
    else:
        bracket = 1.0 + math.expm1(-x) / x
    return 0.5 * p.big_gamma * t * bracket


def ou_coherence(t: float, p: OuParams) -> float:
    """Single-qubit coherence factor ``exp(-f(t))``."""
    return math.exp(-ou_f(t, p))


def dephasing_pair(pc: float) -> tuple[np.ndarray, np.ndarray]:
    """``E1 = diag(p, 1)``, ``E2 = diag(sqrt(1 - p^2), 0)`` for coherence factor ``p``."""
    return (np.diag([pc, 1.0]).astype(np.complex128),
            np.diag([math.sqrt(max(0.0, 1.0 - pc * pc)), 0.0]).astype(np.complex128))


def ou_kraus(t: float, p: OuParams,
             per_party: tuple[OuParams, OuParams] | None = None) -> KrausChannel:
    """Kraus set ``E_i^a (x) E_j^b`` of local OU dephasing on both qubits.

    Both qubits use ``p`` unless ``per_party`` gives separate parameters.
    """
    _check_time(t)
    pa, pb = per_party if per_party is not None else (p, p)
    ea = dephasing_pair(ou_coherence(t, pa))
    eb = dephasing_pair(ou_coherence(t, pb))
    return KrausChannel(tuple(np.kron(x, y) for x in ea for y in eb))


def apply(ch: KrausChannel, rho) -> DensityMatrix:
    rho = as_state(rho)
    if ch.dim != rho.mat.shape[0]:
        raise DimensionMismatch(f"channel acts on dimension {ch.dim}, state has {rho.mat.shape[0]}")
    out = sum(k @ rho.mat @ k.conj().T for k in ch.ops)
    return DensityMatrix(0.5 * (out + out.conj().T), rho.dims)


def evolve_bell_diagonal(p0: BellDiagonalParams | Sequence[float], t: float,
                         p: OuParams) -> BellDiagonalParams:
    """Closed-form OU evolution: ``c1, c2`` decay by ``exp(-2 f(t))``, ``c3`` is fixed."""
    if not isinstance(p0, BellDiagonalParams):
        p0 = BellDiagonalParams(*p0)
    decay = math.exp(-2.0 * ou_f(t, p))
    return BellDiagonalParams(p0.c1 * decay, p0.c2 * decay, p0.c3)


def ou_trajectory(rho0, p: OuParams, per_party: tuple[OuParams, OuParams] | None = None):
    """``t -> rho(t)`` under Kraus evolution from ``rho0``."""
    rho0 = as_state(rho0)

    def traj(t: float) -> DensityMatrix:
        return apply(ou_kraus(t, p, per_party), rho0)

    return traj
