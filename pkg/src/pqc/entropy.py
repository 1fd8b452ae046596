"""Shannon and von Neumann entropies in bits."""
from __future__ import annotations

import numpy as np


def shannon_entropy(probs) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    h = float(-np.sum(p * np.log2(p)))
    return abs(h) if h == 0.0 else h


def von_neumann_entropy(rho) -> float:
    """Entropy of a density matrix (bits); tiny negative eigenvalues are dropped."""
    rho = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    mu = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return shannon_entropy(mu[mu > 1e-15])


def pauli_key_entropy(r: float) -> float:
    """Key entropy of the Pauli realisation with p0 = pz = (1+r)/4, px = py = (1-r)/4.

    Closed form ``2 - [(1+r) log2(1+r) + (1-r) log2(1-r)] / 2`` for ``0 <= r <= 1``;
    exact at both endpoints (2 at r = 0, 1 at r = 1).
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")

    def xlog(x: float) -> float:
        return 0.0 if x == 0.0 else x * float(np.log2(x))

    return 2.0 - 0.5 * (xlog(1.0 + r) + xlog(1.0 - r))
