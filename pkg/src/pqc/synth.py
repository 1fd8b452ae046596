"""Synthesis of minimal-key private quantum channels for qubit plaintext sets.

Every construction below has the Bloch action ``x -> R (r_eff n.x) n`` for a
unit axis ``n`` perpendicular to the plaintext span, a contraction ``r_eff`` and a
final rotation ``R``. Points of the span all share the same projection on
``n``, so they collapse onto one output state.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from ._errors import DegenerateSpan, UnachievableTarget
from .bloch import (
    IDENTITY,
    AffineSpan,
    QubitState,
    affine_span,
    as_state,
    canonical_frame,
    rotation_between,
    state_from_bloch,
)
from .channel import pauli_channel, unitary_from_axis_angle, unitary_from_rotation
from .ensemble import EnsembleND, UnitaryEnsemble
from .entropy import pauli_key_entropy, shannon_entropy, von_neumann_entropy

ACHIEVABLE_TOL = 1e-9
SURFACE_TOL = 1e-9
_ZERO = 1e-12

__all__ = [
    "PqcReport",
    "EntropyExchange",
    "achievable_ball",
    "synthesize",
    "synth_single_state",
    "synth_two_state_surface",
    "synth_two_state_interior",
    "synth_three_state",
    "synth_full_ball",
    "min_key_entropy",
    "entropy_lower_bound",
    "entropy_exchange",
    "entropy_curve",
    "tensor_pqc",
]


@dataclass(frozen=True, eq=False)
class PqcReport:
    """Outcome of a synthesis call.

    ``r_param`` is ``D(target, I/2) / D(rho_bar, I/2)`` and is ``None`` when the
    achievable ball has radius zero. ``verdicts`` is empty until the report has
    been passed through :func:`pqc.verify.verify_report`.
    """

    span: AffineSpan
    target: QubitState
    ensemble: UnitaryEnsemble
    key_entropy: float
    min_entropy: float
    r_param: Optional[float]
    achievable: bool
    construction: str
    verdicts: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class EntropyExchange:
    omega: np.ndarray
    value: float


def achievable_ball(plaintexts) -> tuple[float, QubitState]:
    """Radius and centre-nearest state of the ball of achievable outputs."""
    span = affine_span(plaintexts)
    return span.ball_radius, span.most_mixed


def _resolve(plaintexts, target) -> tuple[AffineSpan, QubitState]:
    span = plaintexts if isinstance(plaintexts, AffineSpan) else affine_span(plaintexts)
    tgt = span.most_mixed if target is None else as_state(target)
    if tgt.radius > span.ball_radius + ACHIEVABLE_TOL:
        raise UnachievableTarget(tgt.radius, span.ball_radius)
    return span, tgt


def _r_param(span: AffineSpan, target: QubitState) -> Optional[float]:
    p = span.ball_radius
    if p <= _ZERO:
        return None
    s = target.radius
    if abs(s - p) <= SURFACE_TOL:
        return 1.0
    return min(s / p, 1.0)


def _aligning_unitary(axis: np.ndarray, target: np.ndarray) -> np.ndarray:
    """SU(2) element rotating ``axis`` onto the direction of ``target`` (identity at the centre)."""
    if np.linalg.norm(target) <= _ZERO:
        return IDENTITY.copy()
    return unitary_from_rotation(rotation_between(axis, target))


def _one_bit(axis: np.ndarray, post: np.ndarray) -> UnitaryEnsemble:
    half_turn = unitary_from_axis_angle(axis, math.pi)
    return UnitaryEnsemble.from_entries([(0.5, post), (0.5, post @ half_turn)])


def _report(span, target, ensemble, construction) -> PqcReport:
    return PqcReport(
        span=span,
        target=target,
        ensemble=ensemble,
        key_entropy=ensemble.key_entropy,
        min_entropy=min_key_entropy(span, target),
        r_param=_r_param(span, target),
        achievable=True,
        construction=construction,
    )


def _require_dim(span: AffineSpan, dim: int) -> None:
    if span.dim != dim:
        raise DegenerateSpan(f"construction needs a span of dimension {dim}, got {span.dim}")


def synth_two_state_surface(plaintexts, target_direction=None) -> PqcReport:
    """One-bit channel sending a line of plaintexts to the surface of its ball.

    The ensemble is ``{(1/2, V), (1/2, V U)}``: ``U`` is the half turn about the
    axis through 1/2 I and the most mixed point, ``V`` rotates that point to
    ``radius * target_direction``. ``target_direction`` defaults to the most
    mixed point's own direction.
    """
    span = affine_span(plaintexts)
    _require_dim(span, 1)
    m = span.axis
    if target_direction is None:
        direction = m
    else:
        direction = np.asarray(target_direction, dtype=float)
        if np.linalg.norm(direction) <= _ZERO:
            raise ValueError("target direction must be non-zero")
        direction = direction / np.linalg.norm(direction)
    target = state_from_bloch(span.ball_radius * direction)
    ens = _one_bit(m, _aligning_unitary(m, target.bloch))
    return _report(span, target, ens, "two_state_surface")


def synth_two_state_interior(plaintexts, target) -> PqcReport:
    """One-bit channel sending a line of plaintexts to any state inside its ball.

    Tilts the plane through the line until it is tangent to the sphere of
    radius ``D(target, I/2)``, then applies the half-turn construction about that
    plane's normal.
    """
    span = affine_span(plaintexts)
    _require_dim(span, 1)
    span, target = _resolve(span, target)
    p, s = span.ball_radius, target.radius
    if p <= _ZERO:
        return synth_two_state_surface(span.points)
    if abs(s - p) <= SURFACE_TOL:
        return synth_two_state_surface(span.points, target.bloch)
    d = span.directions[0]
    m = span.axis
    m = m - (m @ d) * d
    m = m / np.linalg.norm(m)
    e = np.cross(m, d)
    q = min(s / p, 1.0)
    n = q * m + math.sqrt(max(1.0 - q * q, 0.0)) * e
    ens = _one_bit(n, _aligning_unitary(n, target.bloch))
    return _report(span, target, ens, "two_state_interior")


def synth_three_state(plaintexts, target=None) -> PqcReport:
    """Channel sending a plane of plaintexts to ``target``.

    On the surface of the achievable ball a single bit suffices (half turn about
    the plane normal). Inside it, the Pauli channel with ``p0 = pz = (1+r)/4`` and
    ``px = py = (1-r)/4`` in the frame whose z axis is the plane normal, where
    ``r = D(target, I/2) / D(rho_bar, I/2)``.
    """
    span = affine_span(plaintexts)
    _require_dim(span, 2)
    span, target = _resolve(span, target)
    r = _r_param(span, target)
    if r is None:
        frame = unitary_from_rotation(canonical_frame(span).rotation.T)
        ens = pauli_channel((0.25, 0.25, 0.25, 0.25), frame=frame)
        return _report(span, target, ens, "three_state_pauli")
    n = span.axis
    post = _aligning_unitary(n, target.bloch)
    if r == 1.0:
        return _report(span, target, _one_bit(n, post), "three_state_surface")
    frame = unitary_from_rotation(rotation_between([0.0, 0.0, 1.0], n))
    probs = ((1 + r) / 4, (1 - r) / 4, (1 - r) / 4, (1 + r) / 4)
    ens = pauli_channel(probs, frame=frame, post=post)
    return _report(span, target, ens, "three_state_pauli")


def synth_single_state(plaintexts, target=None) -> PqcReport:
    """A lone plaintext: one unitary on the sphere of its radius, a weighted pair inside.

    Inside, the state is rotated to ``+|r| u`` or ``-|r| u`` (``u`` the target
    direction) with weights ``(1 +- |t|/|r|)/2``.
    """
    span = affine_span(plaintexts)
    _require_dim(span, 0)
    span, target = _resolve(span, target)
    r = span.points[0]
    p, s = span.ball_radius, target.radius
    if p <= _ZERO or abs(s - p) <= SURFACE_TOL:
        post = _aligning_unitary(r, target.bloch) if p > _ZERO else IDENTITY
        ens = UnitaryEnsemble.from_entries([(1.0, post)])
        return _report(span, target, ens, "single_state")
    u = target.bloch / s if s > _ZERO else r / p
    q = 0.5 * (1 + s / p)
    v_plus = unitary_from_rotation(rotation_between(r, u))
    v_minus = unitary_from_rotation(rotation_between(r, -u))
    ens = UnitaryEnsemble.from_entries([(q, v_plus), (1 - q, v_minus)])
    return _report(span, target, ens, "single_state")


def synth_full_ball(plaintexts, target=None) -> PqcReport:
    """Uniform Pauli ensemble (two key bits); the only output is 1/2 I."""
    span = affine_span(plaintexts)
    _require_dim(span, 3)
    span, target = _resolve(span, target)
    ens = pauli_channel((0.25, 0.25, 0.25, 0.25))
    return _report(span, target, ens, "full_ball")


def synthesize(plaintexts, target=None) -> PqcReport:
    """Minimal-key channel for ``plaintexts`` with output ``target`` (default: most mixed state).

    Raises:
        UnachievableTarget: if ``target`` lies outside the achievable ball.
    """
    span, tgt = _resolve(affine_span(plaintexts), target)
    if span.dim == 0:
        return synth_single_state(span.points, tgt)
    if span.dim == 1:
        if _r_param(span, tgt) in (None, 1.0):
            direction = tgt.bloch if tgt.radius > _ZERO else None
            return synth_two_state_surface(span.points, direction)
        return synth_two_state_interior(span.points, tgt)
    if span.dim == 2:
        return synth_three_state(span.points, tgt)
    return synth_full_ball(span.points, tgt)


def min_key_entropy(span: AffineSpan, target) -> float:
    """Necessary and sufficient key entropy (bits) to send ``span`` to ``target``.

    Zero-dimensional spans need no key on the sphere of the plaintext and
    ``h((1 + |t|/|r|)/2)`` inside it (the weighted pair of
    :func:`synth_single_state`).
    """
    span, target = _resolve(span, target)
    if span.dim == 0:
        p, s = span.ball_radius, target.radius
        if p <= _ZERO or abs(s - p) <= SURFACE_TOL:
            return 0.0
        q = 0.5 * (1 + s / p)
        return shannon_entropy([q, 1 - q])
    if span.dim == 1:
        return 1.0
    if span.dim == 2:
        r = _r_param(span, target)
        return pauli_key_entropy(0.0 if r is None else r)
    return 2.0


def entropy_lower_bound(target, span: Optional[AffineSpan] = None) -> float:
    """Von Neumann entropy of the output, a lower bound on key entropy whenever the span holds a pure state."""
    return von_neumann_entropy(as_state(target).matrix)


def entropy_exchange(e: EnsembleND, rho) -> EntropyExchange:
    """Environment state ``omega_jk = sqrt(p_j p_k) Tr(U_j rho U_k^dag)`` and its entropy."""
    rho = np.asarray(getattr(rho, "matrix", rho))
    if rho.shape == (3,):
        rho = state_from_bloch(rho).matrix
    rho = rho.astype(complex)
    p = np.sqrt(e.probabilities)
    us = e.unitaries
    overlaps = np.einsum("jab,bc,kac->jk", us, rho, us.conj())
    omega = np.outer(p, p) * overlaps
    omega = 0.5 * (omega + omega.conj().T)
    return EntropyExchange(omega, von_neumann_entropy(omega))


def entropy_curve(samples: int) -> list[tuple[float, float]]:
    """``(r, H(r))`` on a uniform grid over ``[0, 1]``."""
    if samples < 2:
        raise ValueError("need at least two samples")
    return [(float(r), pauli_key_entropy(float(r))) for r in np.linspace(0.0, 1.0, samples)]


def tensor_pqc(per_qubit: Sequence[EnsembleND]) -> EnsembleND:
    """Product ensemble ``{(prod_k p_k, U_1 x ... x U_n)}`` over all key combinations."""
    if not per_qubit:
        raise ValueError("need at least one ensemble")
    if len(per_qubit) == 1:
        return EnsembleND(per_qubit[0].probabilities, per_qubit[0].unitaries)
    probs, units = [], []
    for combo in itertools.product(*(e.entries for e in per_qubit)):
        prob = 1.0
        u = np.eye(1, dtype=complex)
        for pk, uk in combo:
            prob *= pk
            u = np.kron(u, uk)
        probs.append(prob)
        units.append(u)
    probs = np.array(probs)
    return EnsembleND(probs / probs.sum(), np.array(units))
