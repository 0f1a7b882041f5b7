"""Small dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects (complex128). Party ``a`` is
always the left tensor factor.
"""
from __future__ import annotations

from typing import Literal, NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

# Default tolerance for the negative-eigenvalue check in square roots.
SQRT_CLIP = 1e-10
# Eigenvalues this small (relative to the spectral radius) are roundoff, not
# signal; their square roots (~1e-8) would otherwise pollute pure-state results.
ROUNDOFF_FLOOR = 1e-14

NormKind = Literal["op", "tr", "hs"]


class HermEigen(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    values: np.ndarray
    vectors: np.ndarray


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {A.shape}")
    return A


def _as_square(A) -> np.ndarray:
    A = _as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def dagger(A: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(A, -1, -2))


def herm_eig(A, tol: float = 1e-10) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    Raises NotHermitian when ``||A - A^dag||_HS > tol``.
    """
    A = _as_square(A)
    asym = np.linalg.norm(A - dagger(A))
    if asym > tol:
        raise NotHermitian(f"||A - A^dag||_HS = {asym:.3e} exceeds {tol:.1e}")
    try:
        w, v = np.linalg.eigh(0.5 * (A + dagger(A)))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermEigen(w[::-1].copy(), v[:, ::-1].copy())


def matrix_sqrt_psd(A, clip: float = SQRT_CLIP, tol: float = 1e-10) -> np.ndarray:
    """Principal square root ``V diag(sqrt(max(l, 0))) V^dag`` of a PSD matrix.

    Eigenvalues in ``[-clip, 0)`` are treated as roundoff and set to zero;
    anything more negative raises NotPSD.
    """
    w, v = herm_eig(A, tol=tol)
    if w[-1] < -clip:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{clip:.1e}")
    floor = ROUNDOFF_FLOOR * max(1.0, abs(w[0]))
    root = np.where(w > floor, np.sqrt(np.clip(w, 0.0, None)), 0.0)
    return (v * root) @ dagger(v)


def singular_values(A) -> np.ndarray:
    """Singular values, descending; ``min(rows, cols)`` of them."""
    A = _as_matrix(A)
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc


def norm(A, kind: NormKind = "hs") -> float:
    """Operator, trace (nuclear) or Hilbert-Schmidt norm."""
    s = singular_values(A)
    if kind == "op":
        return float(s[0])
    if kind == "tr":
        return float(np.sum(s))
    if kind == "hs":
        return float(np.sqrt(np.sum(s * s)))
    raise ValueError(f"unknown norm kind {kind!r}")


def kron(A, B) -> np.ndarray:
    return np.kron(_as_matrix(A), _as_matrix(B))


def partial_trace(A, dims: tuple[int, int], keep: Literal["a", "b"] = "a") -> np.ndarray:
    """Trace out one party of an operator on ``C^da (x) C^db``."""
    A = _as_square(A)
    da, db = (int(d) for d in dims)
    if da < 1 or db < 1 or A.shape[0] != da * db:
        raise DimensionMismatch(f"matrix side {A.shape[0]} does not match dims {dims}")
    t = A.reshape(da, db, da, db)
    if keep == "a":
        return np.einsum("ijkj->ik", t)
    if keep == "b":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    """Hermitian matrix with complex Gaussian entries (test helper)."""
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (X + dagger(X))


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
