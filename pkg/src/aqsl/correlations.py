"""Correlation quantifiers for states whose first party is a qubit.

The affinity discord minimizes ``1 - sqrt(A)`` over projective measurements
on party ``a``, where ``A = Tr[sqrt(rho) Pi_a(sqrt(rho))]`` is the overlap of
the root of the state with its measured root (``measurement_affinity``). With
the Bloch parameterization ``Pi_pm = (1 +- r.sigma)/2`` this equals
``(1 + r^T T r)/2``, so the optimum is fixed by the top eigenpair of the
3x3 matrix ``T``. The literal state affinity ``A(rho, Pi_a(rho))`` is also
available; it is a different (smaller-valued) functional.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotQubitPartyA, NotTwoQubit
from .states import PAULIS, SY, DensityMatrix, SchmidtDecomposition, as_state

DEFAULT_GRID = 2000
DEFAULT_REFINE = 40
_DEGENERACY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BlochMeasurement:
    """Two-outcome projective measurement ``Pi_pm = (I +- r.sigma)/2`` on a qubit."""
    r: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float).reshape(3)
        if abs(np.linalg.norm(r) - 1.0) > 1e-12:
            raise ValueError(f"Bloch vector must have unit norm, got |r| = {np.linalg.norm(r)!r}")
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @classmethod
    def along(cls, v) -> "BlochMeasurement":
        v = np.asarray(v, dtype=float)
        return cls(v / np.linalg.norm(v))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "BlochMeasurement":
        return cls(_spherical(theta, phi))

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        rs = sum(c * s for c, s in zip(self.r, PAULIS))
        eye = np.eye(2, dtype=np.complex128)
        return 0.5 * (eye + rs), 0.5 * (eye - rs)


def _spherical(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _require_qubit_a(rho: DensityMatrix):
    if rho.da != 2:
        raise NotQubitPartyA(f"measured party must be a qubit, got da = {rho.da}")


def _projectors_batch(rs: np.ndarray, db: int) -> np.ndarray:
    """Projectors ``(I +- r.sigma)/2 (x) I_db`` for each row of ``rs``; shape (N, 2, n, n)."""
    rsig = np.einsum("ni,ijk->njk", rs, np.asarray(PAULIS))
    eye = np.eye(2)
    p = np.stack([0.5 * (eye + rsig), 0.5 * (eye - rsig)], axis=1)
    return np.einsum("nkij,ab->nkiajb", p, np.eye(db)).reshape(len(rs), 2, 2 * db, 2 * db)


def _pinch(mat: np.ndarray, projs: np.ndarray) -> np.ndarray:
    """``sum_k P_k X P_k`` for each measurement; ``projs`` has shape (N, 2, n, n)."""
    return np.einsum("nkij,jl,nklm->nim", projs, mat, projs)


def affinity(rho, sigma) -> float:
    """``Tr sqrt(rho) sqrt(sigma)``."""
    rho, sigma = as_state(rho), as_state(sigma)
    if rho.dims != sigma.dims:
        raise DimensionMismatch(f"dims {rho.dims} and {sigma.dims} differ")
    return float(np.real(np.trace(rho.sqrt() @ sigma.sqrt())))


def measure_a(rho, m: BlochMeasurement) -> DensityMatrix:
    """Non-selective measurement of party ``a``."""
    rho = as_state(rho)
    _require_qubit_a(rho)
    projs = _projectors_batch(m.r[None, :], rho.db)
    out = _pinch(rho.mat, projs)[0]
    return DensityMatrix(0.5 * (out + out.conj().T), rho.dims)


def measure_operator_a(X: np.ndarray, m: BlochMeasurement, db: int) -> np.ndarray:
    """Apply the measurement map to an arbitrary operator (e.g. a square root)."""
    return _pinch(np.asarray(X, dtype=np.complex128), _projectors_batch(m.r[None, :], db))[0]


def measurement_affinity(rho, m: BlochMeasurement) -> float:
    """``Tr[sqrt(rho) Pi_a(sqrt(rho))]``, the overlap maximized by the affinity discord."""
    rho = as_state(rho)
    _require_qubit_a(rho)
    s = rho.sqrt()
    return float(np.real(np.trace(s @ measure_operator_a(s, m, rho.db))))


def state_affinity(rho, m: BlochMeasurement) -> float:
    """Literal ``A(rho, Pi_a(rho))``."""
    return affinity(rho, measure_a(rho, m))


def t_matrix(rho) -> np.ndarray:
    """Real symmetric ``T_ij = Tr[sqrt(rho)(s_i (x) 1) sqrt(rho)(s_j (x) 1)]``."""
    rho = as_state(rho)
    _require_qubit_a(rho)
    s = rho.sqrt()
    eye_b = np.eye(rho.db)
    b = [s @ np.kron(p, eye_b) for p in PAULIS]
    t = np.array([[np.real(np.sum(bi * bj.T)) for bj in b] for bi in b])
    return 0.5 * (t + t.T)


def _top_direction(w: np.ndarray, v: np.ndarray, tol: float = _DEGENERACY_TOL) -> np.ndarray:
    """Deterministic unit vector of the top eigenspace of a real symmetric 3x3.

    Within a degenerate eigenspace the vector with lexicographically largest
    absolute components is chosen; its first nonzero entry is made positive.
    """
    space = v[:, w >= w[0] - tol]
    proj = space @ space.T
    for e in np.eye(3):
        u = proj @ e
        if np.linalg.norm(u) > 1e-8:
            u = u / np.linalg.norm(u)
            break
    nz = np.flatnonzero(np.abs(u) > 1e-12)
    if nz.size and u[nz[0]] < 0:
        u = -u
    return u


class ClosedForm(NamedTuple):
    value: float
    t_spectrum: np.ndarray
    optimal_bloch: np.ndarray
    gap: float


def _discord_from_affinity(a: float) -> float:
    return 1.0 - float(np.sqrt(min(max(a, 0.0), 1.0)))


def affinity_discord_closed(rho) -> ClosedForm:
    """Affinity discord from the top eigenvalue of ``T``: ``1 - sqrt((1 + T_max)/2)``.

    ``gap`` is the distance between the two largest eigenvalues of ``T``; when
    it is tiny the optimal measurement is not unique.
    """
    t = t_matrix(rho)
    w, v = np.linalg.eigh(t)
    w, v = w[::-1], v[:, ::-1]
    value = _discord_from_affinity(0.5 * (1.0 + w[0]))
    return ClosedForm(value, w.copy(), _top_direction(w, v), float(w[0] - w[1]))


def affinity_discord(rho) -> float:
    return affinity_discord_closed(rho).value


def affinity_discord_pure(sd: SchmidtDecomposition) -> float:
    """``1 - sqrt(sum_k s_k^2)`` for Schmidt probabilities ``s_k``."""
    p = np.asarray(sd.probs, dtype=float)
    return _discord_from_affinity(float(np.sum(p * p)))


# -- measurement-sphere search (oracle side) --

def fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    rho = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def _tangent_frame(r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[int(np.argmin(np.abs(r)))]
    e1 = np.cross(r, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(r, e1)


def minimize_on_sphere(objective: Callable[[np.ndarray], np.ndarray],
                       n_grid: int = DEFAULT_GRID,
                       refine_iters: int = DEFAULT_REFINE) -> tuple[float, np.ndarray]:
    """Deterministic grid search plus halving coordinate descent on the unit sphere.

    ``objective`` maps an (N, 3) array of unit vectors to N values. The grid
    minimum is the first index attaining it, so the result does not depend on
    evaluation order. Refinement moves along the two tangent directions at the
    current point, each step size tried until it stops improving, then halved.
    """
    grid = fibonacci_sphere(n_grid)
    vals = objective(grid)
    k = int(np.argmin(vals))
    r, best = grid[k], float(vals[k])
    step = np.sqrt(4 * np.pi / n_grid)
    for _ in range(refine_iters):
        for axis in _tangent_frame(r):
            for _moves in range(16):
                cand = np.stack([r + step * axis, r - step * axis])
                cand /= np.linalg.norm(cand, axis=1, keepdims=True)
                cv = objective(cand)
                j = int(np.argmin(cv))
                if cv[j] < best:
                    r, best = cand[j], float(cv[j])
                else:
                    break
        step *= 0.5
    return best, r


class OracleResult(NamedTuple):
    value: float
    bloch: np.ndarray


def affinity_discord_oracle(rho, n_grid: int = DEFAULT_GRID,
                            refine_iters: int = DEFAULT_REFINE,
                            literal: bool = False) -> OracleResult:
    """Brute-force the affinity discord over Bloch measurements.

    Evaluates ``Tr[sqrt(rho) Pi(sqrt(rho))]`` directly from the projectors for
    every candidate (no ``T`` matrix). With ``literal=True`` the objective is
    the state affinity ``A(rho, Pi(rho))`` instead.
    """
    rho = as_state(rho)
    _require_qubit_a(rho)
    s = rho.sqrt()

    if literal:
        def objective(rs):
            sig = _pinch(rho.mat, _projectors_batch(rs, rho.db))
            sig = 0.5 * (sig + linalg.dagger(sig))
            w, v = np.linalg.eigh(sig)
            root = np.sqrt(np.clip(w, 0.0, None))
            ssig = np.einsum("nij,nj,nkj->nik", v, root, v.conj())
            return 1.0 - np.sqrt(np.clip(np.einsum("ij,nji->n", s, ssig).real, 0.0, 1.0))
    else:
        def objective(rs):
            m = np.einsum("ij,nkjl->nkil", s, _projectors_batch(rs, rho.db))
            a = np.einsum("nkij,nkji->n", m, m).real
            return 1.0 - np.sqrt(np.clip(a, 0.0, 1.0))

    best, r = minimize_on_sphere(objective, n_grid, refine_iters)
    return OracleResult(max(best, 0.0), r)


def hs_discord(rho, n_grid: int = DEFAULT_GRID, refine_iters: int = DEFAULT_REFINE) -> float:
    """Hilbert-Schmidt geometric discord ``min ||rho - Pi_a(rho)||^2``."""
    rho = as_state(rho)
    _require_qubit_a(rho)

    def objective(rs):
        diff = rho.mat[None] - _pinch(rho.mat, _projectors_batch(rs, rho.db))
        return np.sum(np.abs(diff) ** 2, axis=(1, 2))

    best, _ = minimize_on_sphere(objective, n_grid, refine_iters)
    return max(best, 0.0)


def concurrence(rho) -> float:
    """Wootters concurrence ``max(0, e1 - e2 - e3 - e4)``.

    The ``e_i`` are the eigenvalues of ``sqrt(sqrt(rho) rho~ sqrt(rho))``,
    computed as the singular values of ``sqrt(rho) sqrt(rho~)``.
    """
    rho = as_state(rho)
    if rho.dims != (2, 2):
        raise NotTwoQubit(f"concurrence needs a two-qubit state, got dims {rho.dims}")
    yy = np.kron(SY, SY)
    flipped = yy @ rho.mat.conj() @ yy
    eta = linalg.singular_values(rho.sqrt() @ linalg.matrix_sqrt_psd(flipped))
    return float(min(1.0, max(0.0, eta[0] - eta[1] - eta[2] - eta[3])))


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    affinity_discord: float
    oracle_discord: float
    hs_discord: float
    concurrence: float
    t_spectrum: np.ndarray
    optimal_bloch: np.ndarray


def correlation_report(rho, n_grid: int = DEFAULT_GRID,
                       refine_iters: int = DEFAULT_REFINE) -> CorrelationReport:
    rho = as_state(rho)
    closed = affinity_discord_closed(rho)
    oracle = affinity_discord_oracle(rho, n_grid, refine_iters)
    conc = concurrence(rho) if rho.dims == (2, 2) else float("nan")
    return CorrelationReport(
        affinity_discord=closed.value,
        oracle_discord=oracle.value,
        hs_discord=hs_discord(rho, n_grid, refine_iters),
        concurrence=conc,
        t_spectrum=closed.t_spectrum,
        optimal_bloch=closed.optimal_bloch,
    )
