"""Dense complex linear algebra for small Hermitian matrices.

Self-contained kernel: a cyclic Jacobi eigensolver for complex Hermitian
matrices (intended for dimensions up to ~16), spectral matrix functions,
and the matrix exponential ``exp(-i h t)`` built in the eigenbasis. numpy
is used as the array carrier only; no LAPACK eigensolver is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .exceptions import EigenConvergenceError, NotHermitianError
from .tolerances import Tolerances, resolve

__all__ = [
    "SpectralDecomposition",
    "hermitian_eigendecomposition",
    "is_hermitian",
    "is_unitary",
    "max_abs",
    "reconstruct",
    "spectral_function",
    "unitary_from_hamiltonian",
]


def max_abs(m: np.ndarray) -> float:
    """Largest entry magnitude, i.e. the max-norm used by the tolerances."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float) -> bool:
    return max_abs(m - m.conj().T) <= tol


def is_unitary(m: np.ndarray, tol: float) -> bool:
    eye = np.eye(m.shape[0])
    return max_abs(m @ m.conj().T - eye) <= tol


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigendecomposition(
    m: np.ndarray, tol: Tolerances | None = None
) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Raises ``NotHermitianError`` when the input is not Hermitian within
    tolerance and ``EigenConvergenceError`` if the sweep budget is exhausted.
    The result is deterministic for identical input; within a degenerate
    eigenspace the basis is whatever the rotation sequence produces, so
    consumers must not rely on a particular basis there.

    Results are memoized on the matrix bytes (sweeps re-decompose the same
    Hamiltonian hundreds of times); the returned arrays are read-only.
    """
    tol = resolve(tol)
    m = np.ascontiguousarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return _eigh_cached(
        m.tobytes(), m.shape[0],
        tol.hermitian, tol.jacobi_offdiag, tol.jacobi_max_sweeps,
    )


@lru_cache(maxsize=512)
def _eigh_cached(
    data: bytes, n: int, herm_tol: float, offdiag_tol: float, max_sweeps: int
) -> SpectralDecomposition:
    m = np.frombuffer(data, dtype=complex).reshape(n, n)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    dev = max_abs(m - m.conj().T)
    if dev > herm_tol:
        raise NotHermitianError(
            f"matrix deviates from Hermitian by {dev:.3e} (tolerance {herm_tol:.1e})"
        )

    a = (m + m.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        w = np.array([a[0, 0].real])
        w.flags.writeable = False
        v.flags.writeable = False
        return SpectralDecomposition(w, v)

    # threshold scales with the matrix norm so large inputs converge too
    target = offdiag_tol * max(1.0, float(np.linalg.norm(a)))
    # entries this small cannot push the off-diagonal norm above target
    skip = target / (2.0 * n)
    converged = False
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= target:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                absb = abs(beta)
                if absb <= skip:
                    continue
                phase = beta / absb
                # rotation angle for the 2x2 block [[app, |b|], [|b|, aqq]]
                theta = (a[q, q].real - a[p, p].real) / (2.0 * absb)
                t = -math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(1.0 + theta * theta)
                )
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # columns p,q of the rotation: [[c, -s*phase], [s*conj(phase), c]]
                col_p = c * a[:, p] + s * np.conj(phase) * a[:, q]
                col_q = -s * phase * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * a[p, :] + s * phase * a[q, :]
                row_q = -s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vcol_p = c * v[:, p] + s * np.conj(phase) * v[:, q]
                vcol_q = -s * phase * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = vcol_p, vcol_q
    else:
        converged = _offdiag_norm(a) <= target
    if not converged:
        raise EigenConvergenceError(
            f"Jacobi sweeps exhausted ({max_sweeps}) with off-diagonal "
            f"norm {_offdiag_norm(a):.3e} above target {target:.3e}"
        )

    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = np.ascontiguousarray(v[:, order])
    eigenvalues.flags.writeable = False
    vectors.flags.writeable = False
    return SpectralDecomposition(eigenvalues, vectors)


def reconstruct(dec: SpectralDecomposition) -> np.ndarray:
    """Rebuild the matrix sum(e_i v_i v_i†) from a decomposition."""
    return (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.conj().T


def spectral_function(
    m: np.ndarray, f: Callable[[float], float], tol: Tolerances | None = None
) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix in its eigenbasis."""
    dec = hermitian_eigendecomposition(m, tol)
    fw = np.array([float(f(float(e))) for e in dec.eigenvalues])
    return (dec.eigenvectors * fw) @ dec.eigenvectors.conj().T


def unitary_from_hamiltonian(
    h: np.ndarray, t: float, tol: Tolerances | None = None
) -> np.ndarray:
    """exp(-i h t) for Hermitian h, via the spectral decomposition."""
    dec = hermitian_eigendecomposition(h, tol)
    phases = np.exp(-1j * dec.eigenvalues * t)
    return (dec.eigenvectors * phases) @ dec.eigenvectors.conj().T
