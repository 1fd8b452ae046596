"""Input validation helpers shared by the public API, the estimator and the CLI."""
from __future__ import annotations

import numpy as np

from ._errors import BadDistribution, BlochOutOfBall, DimensionMismatch

BLOCH_TOL = 1e-9


def check_bloch_vector(r, tol: float = BLOCH_TOL) -> np.ndarray:
    """Return ``r`` as a float array of shape (3,), rejecting points outside the ball."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {r.shape}")
    if not np.all(np.isfinite(r)):
        raise ValueError("Bloch vector contains non-finite entries")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + tol:
        raise BlochOutOfBall(f"|r| = {norm:.12g} exceeds 1")
    return r


def check_bloch_array(X, tol: float = BLOCH_TOL) -> np.ndarray:
    """Coerce a batch of qubit states into an (n, 3) array of Bloch vectors.

    Accepts an (n, 3) array of Bloch vectors, an (n, 2, 2) stack of density
    matrices, or a sequence of objects exposing a ``bloch`` attribute.
    """
    if isinstance(X, (list, tuple)) and X and hasattr(X[0], "bloch"):
        X = np.array([x.bloch for x in X], dtype=float)
    arr = np.asarray(X)
    if arr.ndim == 3 and arr.shape[1:] == (2, 2):
        arr = np.stack([_bloch_of_matrix(m) for m in arr]) if len(arr) else np.zeros((0, 3))
    elif arr.ndim == 1 and arr.shape == (3,):
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected (n, 3) Bloch vectors or (n, 2, 2) matrices, got {np.shape(X)}")
    arr = np.asarray(arr, dtype=float)
    if arr.shape[0] == 0:
        raise ValueError("at least one state is required")
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms > 1.0 + tol):
        raise BlochOutOfBall(f"max |r| = {norms.max():.12g} exceeds 1")
    return arr


def _bloch_of_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    return np.array([2 * m[0, 1].real, -2 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


def check_square(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def check_unitary(u, atol: float) -> np.ndarray:
    u = check_square(u, "unitary")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > atol:
        raise ValueError(f"matrix is not unitary (max |U^dag U - I| = {err:.3g})")
    return u


def check_distribution(p, atol: float = 1e-12) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise BadDistribution("probabilities must be a non-empty 1-d sequence")
    if np.any(p < -atol):
        raise BadDistribution(f"negative probability {p.min():.3g}")
    if abs(p.sum() - 1.0) > atol:
        raise BadDistribution(f"probabilities sum to {p.sum():.15g}, not 1")
    return np.clip(p, 0.0, None)
