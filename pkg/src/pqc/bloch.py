"""Qubit states, Bloch-ball geometry and affine spans of plaintext sets.

Distances use D(rho, sigma) = Tr|rho - sigma| *without* the usual factor 1/2.
With this convention the Bloch ball has radius 1 and, for qubits, D equals the
Euclidean distance between Bloch vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._errors import BlochOutOfBall, DegenerateSpan
from ._validation import BLOCH_TOL, check_bloch_vector, check_square

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# relative singular-value cutoff for the affine dimension of a point set
RANK_TOL = 1e-9
_HERMITIAN_TOL = 1e-10

__all__ = [
    "QubitState",
    "AffineSpan",
    "CanonicalFrame",
    "state_from_bloch",
    "state_from_matrix",
    "as_state",
    "trace_distance",
    "affine_span",
    "most_mixed_on_line",
    "plane_distance",
    "canonical_frame",
    "rotation_between",
    "orthogonal_axis",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QubitState:
    """A qubit density operator together with its Bloch vector.

    Build instances through :func:`state_from_bloch` or :func:`state_from_matrix`
    so that ``matrix`` and ``bloch`` stay in sync.
    """

    matrix: np.ndarray
    bloch: np.ndarray

    @classmethod
    def from_bloch(cls, r) -> "QubitState":
        return state_from_bloch(r)

    @classmethod
    def from_matrix(cls, m) -> "QubitState":
        return state_from_matrix(m)

    @property
    def radius(self) -> float:
        """Distance from the total mixture, ``|r|``."""
        return float(np.linalg.norm(self.bloch))

    @property
    def eigenvalues(self) -> np.ndarray:
        r = min(self.radius, 1.0)
        return np.array([(1 - r) / 2, (1 + r) / 2])

    def __repr__(self) -> str:
        x, y, z = self.bloch
        return f"QubitState(bloch=[{x:.6g}, {y:.6g}, {z:.6g}])"


def state_from_bloch(r) -> QubitState:
    """Density operator 1/2 (I + r . sigma) for a Bloch vector ``r``.

    Raises:
        BlochOutOfBall: if ``|r| > 1 + 1e-9``.
    """
    r = check_bloch_vector(r, BLOCH_TOL)
    m = 0.5 * (IDENTITY + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z)
    return QubitState(_readonly(m), _readonly(r))


def state_from_matrix(m) -> QubitState:
    m = check_square(m, "density matrix")
    if m.shape != (2, 2):
        raise ValueError(f"qubit density matrix must be 2x2, got {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > _HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1) > _HERMITIAN_TOL:
        raise ValueError(f"density matrix has trace {np.trace(m).real:.15g}")
    r = np.array([np.trace(m @ s).real for s in PAULIS])
    return state_from_bloch(r)


def as_state(obj) -> QubitState:
    """Coerce a QubitState, a Bloch triple or a 2x2 matrix into a QubitState."""
    if isinstance(obj, QubitState):
        return obj
    arr = np.asarray(obj)
    if arr.shape == (3,):
        return state_from_bloch(arr.astype(float))
    if arr.shape == (2, 2):
        return state_from_matrix(arr)
    raise ValueError(f"cannot interpret object of shape {arr.shape} as a qubit state")


def trace_distance(rho, sigma) -> float:
    """Tr|rho - sigma|, the sum of absolute eigenvalues of the difference."""
    a = rho.matrix if isinstance(rho, QubitState) else np.asarray(rho, dtype=complex)
    b = sigma.matrix if isinstance(sigma, QubitState) else np.asarray(sigma, dtype=complex)
    diff = a - b
    diff = 0.5 * (diff + diff.conj().T)
    return float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def orthogonal_axis(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """First of e_x, e_y, e_z (in that order) that survives Gram-Schmidt against ``vectors``.

    ``vectors`` must be orthonormal (at most two of them). A candidate is accepted
    when its residual exceeds 1/2; at least one always does.
    """
    basis = [np.asarray(v, dtype=float) for v in vectors]
    for e in np.eye(3):
        res = e - sum((e @ v) * v for v in basis) if basis else e.copy()
        if np.linalg.norm(res) > 0.5:
            return _unit(res)
    raise DegenerateSpan("no axis orthogonal to the given vectors")  # pragma: no cover


def rotation_between(a, b) -> np.ndarray:
    """Proper rotation taking direction ``a`` onto direction ``b``.

    Rotates about the common normal ``a x b``. Equal directions give the
    identity; opposite directions give a half turn about
    :func:`orthogonal_axis` of ``a``.
    """
    a = _unit(np.asarray(a, dtype=float))
    b = _unit(np.asarray(b, dtype=float))
    c = float(np.clip(a @ b, -1.0, 1.0))
    axis = np.cross(a, b)
    s = float(np.linalg.norm(axis))
    if s < 1e-12:
        if c > 0:
            return np.eye(3)
        n = orthogonal_axis([a])
        return 2 * np.outer(n, n) - np.eye(3)
    n = axis / s
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + s * K + (1 - c) * (K @ K)


@dataclass(frozen=True, eq=False)
class AffineSpan:
    """Affine hull of a plaintext set in the Bloch picture.

    Attributes:
        dim: affine dimension (0 point, 1 line, 2 plane, 3 whole ball).
        basepoint: a point of the hull; always the Bloch vector of ``most_mixed``.
        directions: ``(dim, 3)`` orthonormal direction vectors.
        most_mixed: the point of the hull closest to 1/2 I.
        ball_radius: ``D(most_mixed, I/2)``, radius of the achievable ball.
        points: the ``(n, 3)`` plaintext Bloch vectors the span was built from.
    """

    dim: int
    basepoint: np.ndarray
    directions: np.ndarray
    most_mixed: QubitState
    ball_radius: float
    points: np.ndarray

    def residual(self, r) -> float:
        """Euclidean distance from ``r`` to the hull."""
        v = np.asarray(r, dtype=float) - self.basepoint
        if self.dim:
            v = v - self.directions.T @ (self.directions @ v)
        return float(np.linalg.norm(v))

    @property
    def axis(self) -> np.ndarray:
        """Unit vector from 1/2 I towards ``most_mixed``.

        When the hull passes through the centre the direction is undefined and
        :func:`orthogonal_axis` of the span directions is returned instead.
        """
        if self.ball_radius > 1e-12:
            return self.basepoint / self.ball_radius
        if self.dim == 3:
            raise DegenerateSpan("full-ball span has no distinguished axis")
        return orthogonal_axis(list(self.directions))

    def generators(self) -> np.ndarray:
        """``dim + 1`` affinely independent plaintext Bloch vectors, chosen greedily."""
        chosen = [self.points[0]]
        dirs: list[np.ndarray] = []
        for _ in range(self.dim):
            v = self.points - chosen[0]
            for d in dirs:
                v = v - np.outer(v @ d, d)
            k = int(np.argmax(np.linalg.norm(v, axis=1)))
            dirs.append(_unit(v[k]))
            chosen.append(self.points[k])
        return np.array(chosen)


def affine_span(plaintexts) -> AffineSpan:
    """Affine hull of the plaintexts and its point nearest the total mixture.

    The dimension is the number of singular values of the centred Bloch-vector
    matrix above ``1e-9 * max(s_max, 1)``.
    """
    states = [as_state(p) for p in plaintexts]
    if not states:
        raise ValueError("at least one plaintext is required")
    pts = np.array([s.bloch for s in states], dtype=float)
    centre = pts.mean(axis=0)
    sv_in = pts - centre
    _, sv, vt = np.linalg.svd(sv_in, full_matrices=False)
    cutoff = RANK_TOL * max(sv[0] if sv.size else 0.0, 1.0)
    dim = int(np.sum(sv > cutoff))
    dirs = vt[:dim]
    if dim == 3:
        nearest = np.zeros(3)
    else:
        nearest = centre - dirs.T @ (dirs @ centre) if dim else centre.copy()
    radius = float(np.linalg.norm(nearest))
    if radius > 1.0 + BLOCH_TOL:  # pragma: no cover - hull of states always meets the ball
        raise BlochOutOfBall("affine hull misses the Bloch ball")
    return AffineSpan(
        dim=dim,
        basepoint=_readonly(nearest),
        directions=_readonly(dirs.reshape(dim, 3)),
        most_mixed=state_from_bloch(nearest),
        ball_radius=radius,
        points=_readonly(pts),
    )


def most_mixed_on_line(rho1, rho2) -> tuple[float, QubitState]:
    """Minimise ``|r(lam)|`` over ``lam*rho1 + (1-lam)*rho2``.

    Returns ``(lam, state)`` with ``lam = (|r2|^2 - r1.r2) / |r1 - r2|^2``.
    """
    r1, r2 = as_state(rho1).bloch, as_state(rho2).bloch
    diff = r1 - r2
    nd = float(diff @ diff)
    if math.sqrt(nd) <= 1e-12:
        raise DegenerateSpan("the two states coincide")
    lam = float((r2 @ r2 - r1 @ r2) / nd)
    return lam, state_from_bloch(lam * r1 + (1 - lam) * r2)


def _plane_coefficients(r1, r2, r3) -> tuple[float, float, float, float]:
    m = np.array([r1, r2, r3], dtype=float)
    ones = np.ones(3)
    coeffs = []
    for col in range(3):
        mc = m.copy()
        mc[:, col] = ones
        coeffs.append(float(np.linalg.det(mc)))
    return coeffs[0], coeffs[1], coeffs[2], float(np.linalg.det(m))


def plane_distance(rho1, rho2, rho3) -> float:
    """Distance from 1/2 I to the plane through three Bloch points.

    Uses the determinant coefficients ``a, b, c, d`` of the plane
    ``a x + b y + c z = d`` and returns ``|d| / sqrt(a^2 + b^2 + c^2)``.
    """
    states = [as_state(r) for r in (rho1, rho2, rho3)]
    if affine_span(states).dim != 2:
        raise DegenerateSpan("the three points do not span a plane")
    a, b, c, d = _plane_coefficients(*(s.bloch for s in states))
    return abs(d) / math.sqrt(a * a + b * b + c * c)


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    """Rotation bringing a span into the standard xi-configuration.

    For a plane the rotated plane meets the coordinate axes at ``(alpha, 0, 0)``,
    ``(0, beta, 0)`` and ``(0, 0, 1)``. For a line the rotated line is parallel to
    the x axis inside the x-z plane, with the most mixed point on the +z axis;
    ``alpha`` is then fixed by ``radius = alpha / sqrt(1 + alpha^2)`` and ``beta``
    is ``None``. ``degenerate`` marks spans through the total mixture.
    """

    rotation: np.ndarray
    alpha: float
    beta: Optional[float]
    degenerate: bool = False


def canonical_frame(span: AffineSpan) -> CanonicalFrame:
    if span.dim == 1:
        d = span.directions[0]
        m = span.axis
        m = _unit(m - (m @ d) * d)
        e = np.cross(m, d)
        rot = np.array([d, e, m])
        p = span.ball_radius
        degenerate = p <= 1e-12
        alpha = 0.0 if degenerate else p / math.sqrt(1 - p * p)
        return CanonicalFrame(_readonly(rot), alpha, None, degenerate)
    if span.dim == 2:
        n = np.cross(*span.directions)
        p = span.ball_radius
        if p <= 1e-12:
            rot = rotation_between(n, [1.0, 0.0, 0.0])
            return CanonicalFrame(_readonly(rot), 0.0, 0.0, True)
        n = span.axis
        if abs(n[0]) > 1e-9 and abs(n[1]) > 1e-9:
            phi = math.atan2(n[1], n[0])
        else:
            phi = math.pi / 4
        rho = math.sqrt(max(1 - p * p, 0.0))
        u = np.array([rho * math.cos(phi), rho * math.sin(phi), p])
        rot = rotation_between(n, u)
        return CanonicalFrame(_readonly(rot), p / u[0], p / u[1], False)
    raise DegenerateSpan(f"canonical frame needs a line or a plane, span has dim {span.dim}")
