"""Seeded property suites backing ``aqsl verify``.

Each suite draws its own generator from ``(seed, suite index)`` so suites can
be run or reordered independently without changing each other's samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels, correlations as corr, linalg, qsl, states

ClosedFn = Callable[[states.DensityMatrix], float]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    count: int
    worst: float
    tol: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<34} n={self.count:<5d} worst={self.worst:.3e} tol={self.tol:.1e}"


def _closed_default(rho) -> float:
    return corr.affinity_discord_closed(rho).value


class Verifier:
    def __init__(self, seed: int = 0, closed: ClosedFn | None = None):
        self.seed = int(seed)
        self.closed = closed or _closed_default

    def rng(self, idx: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, idx])

    # -- linalg --
    def eig_reconstruction(self):
        rng, worst = self.rng(0), 0.0
        for k in range(200):
            n = 2 + k % 7
            A = linalg.random_hermitian(rng, n)
            w, v = linalg.herm_eig(A)
            res = np.linalg.norm((v * w) @ v.conj().T - A) / max(1.0, np.linalg.norm(A))
            orth = np.linalg.norm(v.conj().T @ v - np.eye(n))
            worst = max(worst, res, orth)
        return 200, worst, 1e-10

    def sqrt_square(self):
        rng, worst = self.rng(1), 0.0
        for k in range(200):
            n = 2 + k % 7
            X = linalg.random_matrix(rng, n)
            A = X @ X.conj().T
            S = linalg.matrix_sqrt_psd(A, tol=1e-8)
            worst = max(worst, np.linalg.norm(S @ S - A) / max(1.0, np.linalg.norm(A)))
        return 200, worst, 1e-8

    def norm_ordering(self):
        rng, worst = self.rng(2), 0.0
        for k in range(1000):
            A = linalg.random_matrix(rng, 1 + k % 8, 1 + (k // 8) % 8)
            op, tr, hs = (linalg.norm(A, kind) for kind in ("op", "tr", "hs"))
            worst = max(worst, op - hs, hs - tr)
        return 1000, max(worst, 0.0), 1e-12

    def partial_trace(self):
        rng, worst = self.rng(3), 0.0
        for _ in range(100):
            da, db = rng.integers(1, 5, size=2)
            A = linalg.random_matrix(rng, da * db)
            B = linalg.random_matrix(rng, da * db)
            a, b = rng.standard_normal(2)
            for keep in ("a", "b"):
                lin = linalg.partial_trace(a * A + b * B, (da, db), keep) - (
                    a * linalg.partial_trace(A, (da, db), keep) + b * linalg.partial_trace(B, (da, db), keep))
                worst = max(worst, np.linalg.norm(lin),
                            abs(np.trace(linalg.partial_trace(A, (da, db), keep)) - np.trace(A)))
        return 100, worst, 1e-12

    # -- states --
    def bell_roundtrip(self):
        rng, worst = self.rng(4), 0.0
        for _ in range(100):
            p = states.random_bell_params(rng)
            back = states.BellDiagonalParams.from_state(states.bell_diagonal(p))
            worst = max(worst, float(np.max(np.abs(back.as_array() - p.as_array()))))
        return 100, worst, 1e-12

    def schmidt_product(self):
        rng, worst = self.rng(5), 0.0
        for _ in range(100):
            da, db = (int(d) for d in rng.integers(2, 5, size=2))
            v = np.kron(states.random_vector(rng, da), states.random_vector(rng, db))
            p = states.schmidt(v, (da, db)).probs
            expect = np.zeros_like(p)
            expect[0] = 1.0
            worst = max(worst, float(np.max(np.abs(p - expect))))
        return 100, worst, 1e-10

    # -- correlations --
    def product_zero(self):
        rng, worst = self.rng(6), 0.0
        for k in range(100):
            db = 2 + k % 3
            rho = states.product(states.random_mixed(rng, 1 + k % 2, (2, 1)),
                                 states.random_mixed(rng, 1 + k % 3, (db, 1)))
            worst = max(worst, abs(self.closed(rho)))
        return 100, worst, 1e-7

    def cq_zero(self):
        rng, worst = self.rng(7), 0.0
        for k in range(100):
            db = 2 + k % 2
            p0 = float(rng.uniform(0.05, 0.95))
            U = states.random_unitary(rng, 2)
            sig = [states.random_mixed(rng, 1 + (k + j) % db, (db, 1)) for j in range(2)]
            rho = states.classical_quantum([p0, 1 - p0], U, sig)
            worst = max(worst, abs(self.closed(rho)))
        return 100, worst, 1e-7

    def local_unitary(self):
        rng, worst = self.rng(8), 0.0
        for k in range(100):
            rho = states.random_mixed(rng, 1 + k % 4)
            moved = states.local_unitary(rho, states.random_unitary(rng, 2), states.random_unitary(rng, 2))
            worst = max(worst, abs(self.closed(moved) - self.closed(rho)))
        return 100, worst, 1e-8

    def local_ancilla(self):
        rng, worst, worst_hs = self.rng(9), 0.0, 0.0
        for k in range(50):
            rho = states.random_mixed(rng, 1 + k % 4)
            anc = states.random_mixed(rng, 1 + k % 2, (2, 1))
            big = states.append_ancilla(rho, anc)
            worst = max(worst, abs(self.closed(big) - self.closed(rho)))
            scaled = corr.hs_discord(rho) * anc.purity()
            worst_hs = max(worst_hs, abs(corr.hs_discord(big) - scaled))
        self.extra_hs = worst_hs
        return 50, worst, 1e-7

    def oracle_equivalence(self):
        rng, worst = self.rng(10), 0.0
        for k in range(200):
            rho = states.random_mixed(rng, 1 + k % 4)
            worst = max(worst, abs(self.closed(rho) - corr.affinity_discord_oracle(rho).value))
        return 200, worst, 1e-4

    def pure_formula(self):
        rng, worst = self.rng(11), 0.0
        for k in range(100):
            dims = (2, 2 + k % 3)
            psi = states.random_vector(rng, dims[0] * dims[1])
            d_pure = corr.affinity_discord_pure(states.schmidt(psi, dims))
            worst = max(worst, abs(d_pure - self.closed(states.pure_state(psi, dims))))
        return 100, worst, 1e-9

    def measurement_sanity(self):
        rng, worst = self.rng(12), 0.0
        for k in range(100):
            rho = states.random_mixed(rng, 1 + k % 4)
            m = corr.BlochMeasurement.along(rng.standard_normal(3))
            once = corr.measure_a(rho, m)
            twice = corr.measure_a(once, m)
            over = max(0.0, corr.state_affinity(rho, m) - 1.0, corr.measurement_affinity(rho, m) - 1.0)
            worst = max(worst, np.linalg.norm(twice.mat - once.mat), abs(np.trace(once.mat) - 1), over)
        return 100, worst, 1e-12

    # -- channels --
    def kraus_completeness(self):
        rng, worst = self.rng(13), 0.0
        for _ in range(50):
            p = channels.OuParams(*rng.uniform(0.1, 5.0, size=2))
            t = float(rng.uniform(0.0, 10.0))
            worst = max(worst, channels.ou_kraus(t, p).completeness_error())
        return 50, worst, 1e-12

    def kraus_closed_form(self):
        rng, worst = self.rng(14), 0.0
        pauli_pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
        for _ in range(100):
            c0 = states.random_bell_params(rng)
            p = channels.OuParams(*rng.uniform(0.1, 5.0, size=2))
            t = float(rng.uniform(0.0, 5.0))
            out = channels.apply(channels.ou_kraus(t, p), c0.to_state())
            expect = channels.evolve_bell_diagonal(c0, t, p).to_state()
            off = max(abs(np.trace(out.mat @ np.kron(states.PAULIS[i], states.PAULIS[j])))
                      for i, j in pauli_pairs)
            worst = max(worst, float(np.max(np.abs(out.mat - expect.mat))), off)
        return 100, worst, 1e-12

    # -- qsl --
    def qsl_bound_validity(self):
        p = channels.OuParams(1.0, 1.0)
        rho0 = states.bell_diagonal((1, 1, -1))
        traj = channels.ou_trajectory(rho0, p)
        worst = -math.inf
        taus = np.linspace(0.1, 5.0, 20)
        for tau in taus:
            prof = qsl.tau_qsl(rho0, traj, float(tau), "decay")
            worst = max(worst, prof.tau_qc / prof.tau - 1.0)
        return len(taus), max(worst, 0.0), 0.02

    def qsl_quadrature(self):
        p = channels.OuParams(1.0, 1.0)
        worst, count = 0.0, 0
        # smooth trajectories only: where the optimal measurement switches
        # axis the sigma rate jumps and the trapezoid rule drops to first order
        for c in ((1, 1, -1), (1, -1, 1)):
            traj = channels.ou_trajectory(states.bell_diagonal(c), p)
            for tau in (0.5, 2.0, 5.0):
                a = qsl.lambda_averages(traj, tau, 200)
                b = qsl.lambda_averages(traj, tau, 400)
                worst = max(worst, max(abs(x - y) / max(abs(y), 1e-300) for x, y in zip(a, b)))
                count += 1
        return count, worst, 1e-4

    def qsl_mode_consistency(self):
        p = channels.OuParams(1.0, 1.0)
        traj = channels.ou_trajectory(states.bell_diagonal((1, 1, -1)), p)
        rev = qsl.reversed_trajectory(traj, 1.0)
        try:
            qsl.tau_qsl(rev(0.0), rev, 1.0, "decay", n_steps=20)
        except qsl.ModeMismatch:
            return 1, 0.0, 0.0
        return 1, 1.0, 0.0

    SUITES = (
        ("linalg.eig_reconstruction", "eig_reconstruction"),
        ("linalg.sqrt_square", "sqrt_square"),
        ("linalg.norm_ordering", "norm_ordering"),
        ("linalg.partial_trace", "partial_trace"),
        ("states.bell_roundtrip", "bell_roundtrip"),
        ("states.schmidt_product", "schmidt_product"),
        ("correlations.product_zero", "product_zero"),
        ("correlations.classical_quantum_zero", "cq_zero"),
        ("correlations.local_unitary", "local_unitary"),
        ("correlations.local_ancilla", "local_ancilla"),
        ("correlations.oracle_equivalence", "oracle_equivalence"),
        ("correlations.pure_formula", "pure_formula"),
        ("correlations.measurement_sanity", "measurement_sanity"),
        ("channels.kraus_completeness", "kraus_completeness"),
        ("channels.kraus_closed_form", "kraus_closed_form"),
        ("qsl.bound_validity", "qsl_bound_validity"),
        ("qsl.quadrature_stability", "qsl_quadrature"),
        ("qsl.mode_consistency", "qsl_mode_consistency"),
    )

    def run(self, only: set[str] | None = None) -> list[SuiteResult]:
        results = []
        for name, attr in self.SUITES:
            if only is not None and name not in only:
                continue
            count, worst, tol = getattr(self, attr)()
            passed = bool(worst <= tol) if tol > 0 else worst == 0
            results.append(SuiteResult(name, passed, count, float(worst), tol))
            if attr == "local_ancilla":
                hs_ok = self.extra_hs <= 1e-5
                results.append(SuiteResult("correlations.hs_ancilla_scaling", hs_ok, count,
                                           float(self.extra_hs), 1e-5))
        return results


def run_suites(seed: int = 0, closed: ClosedFn | None = None,
               only: set[str] | None = None) -> tuple[bool, str]:
    """Run the property suites; return (all passed, text report)."""
    results = Verifier(seed, closed).run(only)
    ok = all(r.passed for r in results)
    lines = [f"aqsl verify  seed={seed}"] + [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} suites passed")
    return ok, "\n".join(lines) + "\n"
