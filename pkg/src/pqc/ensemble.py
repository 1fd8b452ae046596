"""Probability-weighted collections of unitaries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Iterator

import numpy as np

from ._errors import DimensionMismatch
from ._validation import check_distribution, check_unitary
from .entropy import shannon_entropy


@dataclass(frozen=True, eq=False)
class EnsembleND:
    """Ensemble ``{(p_i, U_i)}`` of ``d x d`` unitaries, ``d >= 2``.

    ``probabilities`` has shape ``(k,)`` and ``unitaries`` shape ``(k, d, d)``.
    """

    probabilities: np.ndarray
    unitaries: np.ndarray

    unitary_tol: ClassVar[float] = 1e-9

    def __post_init__(self):
        p = check_distribution(self.probabilities)
        us = np.asarray(self.unitaries, dtype=complex)
        if us.ndim != 3 or us.shape[0] != p.size or us.shape[1] != us.shape[2]:
            raise DimensionMismatch(
                f"expected {p.size} square unitaries, got array of shape {us.shape}"
            )
        if us.shape[1] < 2:
            raise DimensionMismatch("unitaries must act on dimension >= 2")
        for u in us:
            check_unitary(u, self.unitary_tol)
        p.setflags(write=False)
        us = us.copy()
        us.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "unitaries", us)

    @classmethod
    def from_entries(cls, entries):
        """Build from an iterable of ``(p, U)`` pairs."""
        entries = list(entries)
        if not entries:
            raise ValueError("an ensemble needs at least one entry")
        probs = [float(p) for p, _ in entries]
        units = [np.asarray(u, dtype=complex) for _, u in entries]
        return cls(np.array(probs), np.array(units))

    @property
    def dim(self) -> int:
        return int(self.unitaries.shape[1])

    @property
    def entries(self) -> list[tuple[float, np.ndarray]]:
        return [(float(p), u) for p, u in zip(self.probabilities, self.unitaries)]

    @property
    def key_entropy(self) -> float:
        """Shannon entropy of the key distribution in bits."""
        return shannon_entropy(self.probabilities)

    def __len__(self) -> int:
        return int(self.probabilities.size)

    def __iter__(self) -> Iterator[tuple[float, np.ndarray]]:
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(size={len(self)}, dim={self.dim}, H={self.key_entropy:.6g})"


@dataclass(frozen=True, eq=False, repr=False)
class UnitaryEnsemble(EnsembleND):
    """Single-qubit ensemble; unitaries are checked to 1e-10."""

    unitary_tol: ClassVar[float] = 1e-10

    def __post_init__(self):
        super().__post_init__()
        if self.dim != 2:
            raise DimensionMismatch(f"qubit ensemble needs 2x2 unitaries, got {self.dim}x{self.dim}")
