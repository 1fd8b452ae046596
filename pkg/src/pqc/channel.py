"""Unital qubit channels: ensemble, affine, Choi and diagonal normal forms.

A channel built from unitaries acts on Bloch vectors as ``r -> T r`` with ``T``
the probability-weighted average of the SO(3) rotations induced by each
unitary. Any such ``T`` factors as ``R_U diag(lambda) R_V`` with proper
rotations ``R_U, R_V``; the diagonal part is a Pauli channel whose
probabilities are linear in ``lambda``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation

from ._errors import BadDistribution, NotCP, NotUnital
from .bloch import IDENTITY, PAULIS, QubitState, as_state, state_from_bloch, state_from_matrix
from .ensemble import UnitaryEnsemble

CP_TOL = 1e-9
UNITAL_TOL = 1e-9
VANISH_TOL = 1e-9

_PSI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
P_PLUS = np.outer(_PSI_PLUS, _PSI_PLUS.conj())


def unitary_from_axis_angle(axis, angle: float) -> np.ndarray:
    """SU(2) element ``cos(phi/2) I - i sin(phi/2) n.sigma``; rotates Bloch vectors by ``phi`` about ``n``."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    ns = n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]
    return math.cos(angle / 2) * IDENTITY - 1j * math.sin(angle / 2) * ns


def unitary_from_rotation(R) -> np.ndarray:
    """An SU(2) preimage of a proper rotation matrix (sign is arbitrary)."""
    rotvec = Rotation.from_matrix(np.asarray(R, dtype=float)).as_rotvec()
    angle = float(np.linalg.norm(rotvec))
    if angle < 1e-15:
        return IDENTITY.copy()
    return unitary_from_axis_angle(rotvec / angle, angle)


def rotation_of_unitary(U) -> np.ndarray:
    """Bloch rotation ``R_ij = 1/2 Tr(sigma_i U sigma_j U^dag)`` induced by ``U``."""
    U = np.asarray(U, dtype=complex)
    Ud = U.conj().T
    return np.array([[0.5 * np.trace(si @ U @ sj @ Ud).real for sj in PAULIS] for si in PAULIS])


@dataclass(frozen=True, eq=False)
class AffineChannel:
    """Bloch-vector action ``r -> T r + t``."""

    T: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        T = np.array(self.T, dtype=float)
        t = np.array(self.t, dtype=float)
        if T.shape != (3, 3) or t.shape != (3,):
            raise ValueError(f"need T of shape (3, 3) and t of shape (3,), got {T.shape}, {t.shape}")
        T.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "t", t)

    @classmethod
    def diagonal(cls, lambdas) -> "AffineChannel":
        return cls(np.diag(np.asarray(lambdas, dtype=float)), np.zeros(3))

    @property
    def is_unital(self) -> bool:
        return bool(np.linalg.norm(self.t) < UNITAL_TOL)


@dataclass(frozen=True, eq=False)
class DiagonalForm:
    """``T = post_rotation @ diag(lambdas) @ pre_rotation`` with proper rotations."""

    lambdas: np.ndarray
    pre_rotation: np.ndarray
    post_rotation: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.post_rotation @ np.diag(self.lambdas) @ self.pre_rotation


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Normalised Choi state ``(E x 1) P_+`` (trace one)."""

    matrix: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class PqcClassification:
    """Result of :func:`classify_pqc`.

    ``vanishing_axes`` index into ``lambdas``; ``encrypted_directions`` are the
    matching input-frame Bloch directions (rows of the pre-rotation) along which
    plaintext differences are erased.
    """

    is_pqc: bool
    lambdas: tuple
    vanishing_axes: tuple
    encrypted_directions: tuple

    @property
    def label(self) -> str:
        return "pqc" if self.is_pqc else "not_pqc"


Channel = Union[UnitaryEnsemble, AffineChannel]


def _as_affine(c: Channel) -> AffineChannel:
    if isinstance(c, AffineChannel):
        return c
    return ensemble_to_affine(c)


def apply(channel: Channel, rho) -> QubitState:
    """Output state of ``channel`` on ``rho``."""
    rho = as_state(rho)
    if isinstance(channel, AffineChannel):
        return state_from_bloch(channel.T @ rho.bloch + channel.t)
    out = np.einsum("k,kij,jl,kml->im", channel.probabilities, channel.unitaries,
                    rho.matrix, channel.unitaries.conj())
    return state_from_matrix(0.5 * (out + out.conj().T))


def ensemble_to_affine(e: UnitaryEnsemble) -> AffineChannel:
    T = sum(p * rotation_of_unitary(u) for p, u in e)
    image_of_identity = sum(p * u @ u.conj().T for p, u in e)
    t = np.array([0.5 * np.trace(image_of_identity @ s).real for s in PAULIS])
    return AffineChannel(T, t)


def _require_unital(c: AffineChannel) -> None:
    if not c.is_unital:
        raise NotUnital(f"|t| = {np.linalg.norm(c.t):.3g}; only unital channels are supported")


def diagonalize(c: Channel) -> DiagonalForm:
    """Signed singular value decomposition of ``T``.

    Both flanking matrices are proper rotations; any reflection is pushed into
    the sign of the last ``lambda``. An already diagonal ``T`` is returned as is
    with identity rotations.
    """
    c = _as_affine(c)
    _require_unital(c)
    T = c.T
    if np.all(np.abs(T - np.diag(np.diag(T))) < 1e-15):
        return DiagonalForm(np.diag(T).copy(), np.eye(3), np.eye(3))
    U, s, Vt = np.linalg.svd(T)
    s = s.copy()
    if np.linalg.det(U) < 0:
        U[:, -1] *= -1
        s[-1] *= -1
    if np.linalg.det(Vt) < 0:
        Vt[-1, :] *= -1
        s[-1] *= -1
    return DiagonalForm(s, Vt, U)


def choi(c: Channel) -> ChoiMatrix:
    """Choi state ``sum_ij 1/2 E(|i><j|) x |i><j|``."""
    if isinstance(c, AffineChannel):
        blocks = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                X = np.zeros((2, 2), dtype=complex)
                X[i, j] = 1.0
                x0 = np.trace(X)
                x = np.array([np.trace(X @ s) for s in PAULIS])
                y = c.T @ x + x0 * c.t
                EX = 0.5 * (x0 * IDENTITY + sum(y[k] * PAULIS[k] for k in range(3)))
                blocks += 0.5 * np.kron(EX, X)
        return ChoiMatrix(blocks)
    m = np.zeros((4, 4), dtype=complex)
    for p, u in c:
        v = np.kron(u, IDENTITY) @ _PSI_PLUS
        m += p * np.outer(v, v.conj())
    return ChoiMatrix(m)


def is_cp(c: Channel, tol: float = CP_TOL) -> bool:
    """Complete positivity via the minimum Choi eigenvalue (``>= -tol``)."""
    c = _as_affine(c)
    _require_unital(c)
    return bool(choi(c).eigenvalues.min() >= -tol)


def tetrahedron_cp(lambdas, tol: float = 1e-10) -> bool:
    """Inequality test for a diagonal unital map.

    Positivity confines ``lambda`` to the cube ``|lambda_k| <= 1``; inside it,
    complete positivity is ``|l1 + l2| <= |1 + l3|`` and ``|l1 - l2| <= |1 - l3|``.
    """
    l1, l2, l3 = (float(x) for x in lambdas)
    in_cube = max(abs(l1), abs(l2), abs(l3)) <= 1 + tol
    return bool(
        in_cube
        and abs(l1 + l2) <= abs(1 + l3) + tol
        and abs(l1 - l2) <= abs(1 - l3) + tol
    )


def pauli_probabilities(lambdas) -> tuple[float, float, float, float]:
    """``(p0, px, py, pz)`` of the Pauli channel with diagonal ``lambdas``.

    Defined for any real triple; a negative entry means the map is not CP.
    """
    l1, l2, l3 = (float(x) for x in lambdas)
    px = 0.25 * (1 + l1 - l2 - l3)
    py = 0.25 * (1 - l1 + l2 - l3)
    pz = 0.25 * (1 - l1 - l2 + l3)
    return (1 - px - py - pz, px, py, pz)


def pauli_lambdas(probs) -> tuple[float, float, float]:
    """Diagonal of the Bloch matrix of ``p0 rho + sum_k pk sigma_k rho sigma_k``."""
    _, px, py, pz = (float(x) for x in probs)
    return (1 - 2 * (py + pz), 1 - 2 * (px + pz), 1 - 2 * (px + py))


def pauli_channel(probs, frame=None, post=None) -> UnitaryEnsemble:
    """Ensemble ``{(p_j, post @ F sigma_j F^dag)}`` with zero-probability terms dropped.

    ``frame`` is an SU(2) matrix ``F`` rotating the Pauli axes; ``post`` an extra
    unitary applied after the channel.
    """
    F = IDENTITY if frame is None else np.asarray(frame, dtype=complex)
    V = IDENTITY if post is None else np.asarray(post, dtype=complex)
    entries = []
    for p, s in zip(probs, (IDENTITY,) + PAULIS):
        if p > 0:
            entries.append((p, V @ F @ s @ F.conj().T))
    return UnitaryEnsemble.from_entries(entries)


def classify_pqc(c: Channel, tol: float = VANISH_TOL) -> PqcClassification:
    """Decide whether a unital CP map is a private quantum channel.

    A map hides something iff one of its diagonal values vanishes (``|lambda| < tol``).
    """
    c = _as_affine(c)
    _require_unital(c)
    if not is_cp(c):
        raise NotCP("map is not completely positive")
    form = diagonalize(c)
    vanish = tuple(int(k) for k in np.flatnonzero(np.abs(form.lambdas) < tol))
    dirs = tuple(tuple(float(x) for x in form.pre_rotation[k]) for k in vanish)
    return PqcClassification(
        is_pqc=bool(vanish),
        lambdas=tuple(float(x) for x in form.lambdas),
        vanishing_axes=vanish,
        encrypted_directions=dirs,
    )


def dual_decryption(e: UnitaryEnsemble) -> UnitaryEnsemble:
    """Keyless decryption map ``{(p_i, U_i^dag)}``."""
    return type(e)(e.probabilities, np.conj(np.transpose(e.unitaries, (0, 2, 1))))


def orthogonality_gram(e) -> np.ndarray:
    """Matrix ``G_jk = Tr(U_j^dag U_k)``."""
    us = e.unitaries
    return np.einsum("jab,kab->jk", us.conj(), us)


def convex_combine(channels: Sequence[tuple[float, UnitaryEnsemble]]) -> UnitaryEnsemble:
    """Mixture ``sum_k w_k E_k`` as one concatenated ensemble."""
    if not channels:
        raise BadDistribution("no channels to combine")
    w = np.array([float(wk) for wk, _ in channels])
    if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise BadDistribution(f"weights {w.tolist()} are not a distribution")
    entries = [(wk * p, u) for wk, (_, e) in zip(w, channels) for p, u in e if wk * p > 0]
    return UnitaryEnsemble.from_entries(entries)
