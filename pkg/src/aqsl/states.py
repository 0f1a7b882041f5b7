"""Bipartite density matrices and the state families used throughout.

Party ``a`` (the measured qubit) is the first tensor factor everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import BadProbabilities, DimensionMismatch, NotAState, ZeroVector

STATE_TOL = 1e-10

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SX, SY, SZ)

_S2 = 1 / np.sqrt(2)
# Bell vectors in the computational basis |00>, |01>, |10>, |11>.
PHI_PLUS = np.array([_S2, 0, 0, _S2], dtype=np.complex128)
PHI_MINUS = np.array([_S2, 0, 0, -_S2], dtype=np.complex128)
PSI_PLUS = np.array([0, _S2, _S2, 0], dtype=np.complex128)
PSI_MINUS = np.array([0, _S2, -_S2, 0], dtype=np.complex128)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated state on ``C^da (x) C^db``.

    Construction fails with NotAState unless the matrix is Hermitian, has unit
    trace and no eigenvalue below ``-tol``.
    """
    mat: np.ndarray
    dims: tuple[int, int]
    tol: float = field(default=STATE_TOL, repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 2 or min(dims) < 1:
            raise DimensionMismatch(f"dims must be two positive ints, got {self.dims}")
        mat = np.asarray(self.mat, dtype=np.complex128)
        n = dims[0] * dims[1]
        if mat.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.linalg.norm(mat - mat.conj().T) > self.tol:
            raise NotAState("matrix is not Hermitian")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > self.tol:
            raise NotAState(f"trace {tr!r} differs from 1")
        lmin = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0]
        if lmin < -self.tol:
            raise NotAState(f"negative eigenvalue {lmin:.3e}")
        object.__setattr__(self, "mat", _frozen(mat))
        object.__setattr__(self, "dims", dims)

    @property
    def da(self) -> int:
        return self.dims[0]

    @property
    def db(self) -> int:
        return self.dims[1]

    def eigvals(self) -> np.ndarray:
        return linalg.herm_eig(self.mat).values

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def marginal(self, keep: str = "a") -> np.ndarray:
        return linalg.partial_trace(self.mat, self.dims, keep=keep)

    def sqrt(self) -> np.ndarray:
        return linalg.matrix_sqrt_psd(self.mat)


def as_state(rho, dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    """Wrap an array as a DensityMatrix; pass DensityMatrix through."""
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(np.asarray(rho), dims)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation coefficients ``c_j = <sigma_j (x) sigma_j>`` of a Bell-diagonal state."""
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        c = self.as_array()
        if not np.all(np.isfinite(c)) or np.any(np.abs(c) > 1 + 1e-12):
            raise NotAState(f"coefficients must lie in [-1, 1], got {tuple(c.tolist())}")
        lam = self.eigenvalues()
        if lam.min() < -1e-12:
            raise NotAState(f"coefficients {tuple(c.tolist())} give negative eigenvalue {lam.min():.3e}")

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def eigenvalues(self) -> np.ndarray:
        """Weights on (Phi+, Phi-, Psi+, Psi-)."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return 0.25 * np.array([
            1 + c1 - c2 + c3,
            1 - c1 + c2 + c3,
            1 + c1 + c2 - c3,
            1 - c1 - c2 - c3,
        ])

    def to_state(self) -> DensityMatrix:
        return bell_diagonal(self)

    @classmethod
    def from_state(cls, rho) -> "BellDiagonalParams":
        m = as_state(rho).mat
        c = [float(np.real(np.trace(m @ np.kron(s, s)))) for s in PAULIS]
        return cls(*c)


def bell_diagonal(p: BellDiagonalParams | Sequence[float]) -> DensityMatrix:
    """``(1/4)(I (x) I + sum_j c_j sigma_j (x) sigma_j)``."""
    if not isinstance(p, BellDiagonalParams):
        p = BellDiagonalParams(*p)
    m = np.eye(4, dtype=np.complex128)
    for c, s in zip(p.as_array(), PAULIS):
        m = m + c * np.kron(s, s)
    return DensityMatrix(0.25 * m, (2, 2))


def pure_state(amplitudes, dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if psi.size != dims[0] * dims[1]:
        raise DimensionMismatch(f"vector of length {psi.size} does not match dims {dims}")
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ZeroVector("cannot normalize the zero vector")
    psi = psi / nrm
    return DensityMatrix(np.outer(psi, psi.conj()), dims)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``|psi> = sum_k sqrt(probs[k]) |left_k> (x) |right_k>``.

    ``probs`` are probabilities (they sum to one); ``left``/``right`` hold the
    Schmidt vectors as columns.
    """
    probs: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def vector(self) -> np.ndarray:
        amps = np.sqrt(self.probs)
        return np.einsum("k,ik,jk->ij", amps, self.left, self.right).ravel()


def schmidt(psi, dims: tuple[int, int]) -> SchmidtDecomposition:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    da, db = dims
    if psi.size != da * db:
        raise DimensionMismatch(f"vector of length {psi.size} does not match dims {dims}")
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ZeroVector("cannot decompose the zero vector")
    u, s, vh = np.linalg.svd((psi / nrm).reshape(da, db))
    return SchmidtDecomposition(probs=s**2, left=u[:, : s.size], right=vh[: s.size, :].T)


def classical_quantum(p: Sequence[float], basis, sigmas) -> DensityMatrix:
    """``sum_k p_k |k><k| (x) sigma_k`` with ``|k>`` the columns of ``basis``."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
        raise BadProbabilities(f"not a probability vector: {p}")
    basis = np.asarray(basis, dtype=np.complex128)
    if basis.shape != (2, 2) or np.linalg.norm(basis.conj().T @ basis - I2) > 1e-10:
        raise DimensionMismatch("basis must be a 2x2 unitary (columns are the basis)")
    if len(sigmas) != p.size or p.size != 2:
        raise DimensionMismatch("need one conditional state per qubit basis vector")
    mats = [as_state(s, (1, np.asarray(getattr(s, "mat", s)).shape[0])).mat for s in sigmas]
    db = mats[0].shape[0]
    m = sum(pk * np.kron(np.outer(basis[:, k], basis[:, k].conj()), mats[k])
            for k, pk in enumerate(p))
    return DensityMatrix(m, (2, db))


def product(rho_a, rho_b) -> DensityMatrix:
    ma = np.asarray(getattr(rho_a, "mat", rho_a))
    mb = np.asarray(getattr(rho_b, "mat", rho_b))
    return DensityMatrix(np.kron(ma, mb), (ma.shape[0], mb.shape[0]))


def append_ancilla(rho: DensityMatrix, ancilla) -> DensityMatrix:
    """``rho_ab (x) rho_c`` regarded as a state of ``a : bc``."""
    mc = np.asarray(getattr(ancilla, "mat", ancilla))
    return DensityMatrix(np.kron(rho.mat, mc), (rho.da, rho.db * mc.shape[0]))


def local_unitary(rho: DensityMatrix, U, V) -> DensityMatrix:
    W = np.kron(U, V)
    return DensityMatrix(W @ rho.mat @ W.conj().T, rho.dims)


def maximally_mixed(dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    n = dims[0] * dims[1]
    return DensityMatrix(np.eye(n) / n, dims)


# -- random generators (numpy PCG64 streams) --

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_vector(seed, n: int) -> np.ndarray:
    rng = _rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_pure(seed, dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    return pure_state(random_vector(seed, dims[0] * dims[1]), dims)


def random_unitary(seed, dim: int) -> np.ndarray:
    rng = _rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_mixed(seed, rank: int = 4, dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    rng = _rng(seed)
    n = dims[0] * dims[1]
    w = rng.dirichlet(np.ones(rank))
    m = np.zeros((n, n), dtype=np.complex128)
    for wk in w:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        m += wk * np.outer(v, v.conj())
    # exact Hermitian symmetry; the sum is already PSD with unit trace
    return DensityMatrix(0.5 * (m + m.conj().T), dims)


def random_bell_params(seed) -> BellDiagonalParams:
    """Uniform point of the Bell-diagonal tetrahedron (Dirichlet weights)."""
    lam = _rng(seed).dirichlet(np.ones(4))
    # invert the eigenvalue map: c1 = l0 - l1 + l2 - l3, etc.
    c1 = lam[0] - lam[1] + lam[2] - lam[3]
    c2 = -lam[0] + lam[1] + lam[2] - lam[3]
    c3 = lam[0] + lam[1] - lam[2] - lam[3]
    return BellDiagonalParams(float(c1), float(c2), float(c3))
