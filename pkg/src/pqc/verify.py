"""Brute-force checks of encryption channels.

Channel action here is always computed by explicit conjugation
``sum_i p_i U_i rho U_i^dag`` on matrices; nothing in this module goes through
the Bloch/affine representation of :mod:`pqc.channel`, so it can serve as an
independent oracle for it.
"""
from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._errors import DegenerateSpanWarning, DimensionMismatch, PreconditionFailed
from .bloch import AffineSpan, QubitState, affine_span, state_from_bloch
from .ensemble import EnsembleND, UnitaryEnsemble

PSD_TOL = 1e-9
DEFAULT_TOL = 1e-9
_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

__all__ = [
    "EnsembleND",
    "Verdict",
    "verify_constancy",
    "verify_parallel_transport",
    "verify_dual_constancy",
    "verify_report",
    "universal_not_witness",
    "sample_states_in_span",
]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one brute-force check; ``passed`` iff ``max_deviation <= tolerance``."""

    passed: bool
    max_deviation: float
    tolerance: float
    seed: Optional[int] = None
    witnesses: tuple = ()
    reference: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "reference": None if self.reference is None else list(self.reference),
            "witnesses": [{"input": w, "output": list(o)} for w, o in self.witnesses],
        }


def _verdict(devs, tol, seed, witnesses, reference) -> Verdict:
    worst = float(max(devs)) if devs else 0.0
    return Verdict(worst <= tol, worst, float(tol), seed, tuple(witnesses), reference)


def _act(e, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho, dtype=complex)
    for p, u in zip(e.probabilities, e.unitaries):
        out += p * (u @ rho @ u.conj().T)
    return out


def _trace_norm(a: np.ndarray) -> float:
    return float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (a + a.conj().T)))))


def _as_matrix(x, dim: int) -> np.ndarray:
    m = x.matrix if isinstance(x, QubitState) else np.asarray(x, dtype=complex)
    if m.shape == (3,) and dim == 2:
        m = state_from_bloch(np.asarray(x, dtype=float)).matrix
    if m.shape != (dim, dim):
        raise DimensionMismatch(f"state of shape {m.shape} does not match ensemble dimension {dim}")
    return m


def _describe(m: np.ndarray) -> tuple:
    """Bloch vector for a qubit, flattened real and imaginary parts otherwise."""
    if m.shape == (2, 2):
        return tuple(float(np.trace(m @ s).real) for s in _PAULIS)
    return tuple(float(x) for x in np.concatenate([m.real.ravel(), m.imag.ravel()]))


def _independent(mats: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Greedy affinely independent subset of the operators."""
    base = mats[0]
    chosen, dirs = [base], []
    for m in mats[1:]:
        v = np.concatenate([(m - base).real.ravel(), (m - base).imag.ravel()])
        for d in dirs:
            v = v - (v @ d) * d
        if np.linalg.norm(v) > 1e-9:
            dirs.append(v / np.linalg.norm(v))
            chosen.append(m)
    return chosen


def _act_many(e, rhos: np.ndarray) -> np.ndarray:
    us = e.unitaries
    return np.einsum("k,kab,nbc,kdc->nad", e.probabilities, us, rhos, us.conj())


def _trace_norms(a: np.ndarray) -> np.ndarray:
    herm = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    return np.sum(np.abs(np.linalg.eigvalsh(herm)), axis=-1)


def _sample_combinations(gens: Sequence[np.ndarray], rng, count: int, max_draws: int) -> np.ndarray:
    """Up to ``count`` PSD affine combinations of ``gens``, in draw order."""
    G = np.array(gens)
    k = len(G)
    found, n_found, drawn = [], 0, 0
    while n_found < count and drawn < max_draws:
        batch = max(4 * (count - n_found), 64)
        drawn += batch
        lam = rng.uniform(-1.0, 2.0, size=(batch, k - 1))
        lam = np.column_stack([lam, 1.0 - lam.sum(axis=1)])
        m = np.einsum("nk,kab->nab", lam, G)
        m = 0.5 * (m + np.conj(np.swapaxes(m, 1, 2)))
        w, v = np.linalg.eigh(m)
        keep = w.min(axis=1) >= -PSD_TOL
        m, w, v = m[keep], w[keep], v[keep]
        # floor tiny negative eigenvalues and renormalise
        low = w.min(axis=1) < 0
        if low.any():
            wl = np.clip(w[low], 0.0, None)
            wl = wl / wl.sum(axis=1, keepdims=True)
            m[low] = np.einsum("nab,nb,ncb->nac", v[low], wl, v[low].conj())
        found.append(m)
        n_found += len(m)
    if not found:
        return np.empty((0,) + G.shape[1:], dtype=complex)
    return np.concatenate(found)[:count]


def verify_constancy(e: EnsembleND, plaintexts, tol: float = DEFAULT_TOL,
                     span_samples: int = 100, seed: int = 0) -> Verdict:
    """Check that every plaintext and sampled span member has the same image.

    The reference output is the image of the first plaintext. Span members are
    random affine combinations (coefficients in ``[-1, 2]``) of an affinely
    independent subset of the plaintexts, rejected unless positive semidefinite.
    """
    mats = [_as_matrix(x, e.dim) for x in plaintexts]
    if not mats:
        raise ValueError("no plaintexts given")
    ref = _act(e, mats[0])
    devs, witnesses = [], []
    for i, m in enumerate(mats):
        out = _act(e, m)
        devs.append(_trace_norm(out - ref))
        witnesses.append((f"plaintext[{i}]", _describe(out)))
    gens = _independent(mats)
    if len(gens) > 1 and span_samples > 0:
        rng = np.random.default_rng(seed)
        samples = _sample_combinations(gens, rng, span_samples, max_draws=10_000 * span_samples)
        if len(samples):
            outs = _act_many(e, samples)
            sample_devs = _trace_norms(outs - ref)
            devs.extend(float(d) for d in sample_devs)
            worst = int(np.argmax(sample_devs))
            witnesses.append((f"worst of {len(samples)} span samples", _describe(outs[worst])))
    return _verdict(devs, tol, seed, witnesses, _describe(ref))


def verify_parallel_transport(e: UnitaryEnsemble, line, tol: float = DEFAULT_TOL,
                              segments: int = 10, points_per_segment: int = 5) -> Verdict:
    """Check that chords parallel to an encrypted line are encrypted too.

    Chords lie in the plane through the line and 1/2 I, centred at equispaced
    fractions of the way from the line's most mixed point to the centre. A chord
    endpoint ``x rho1 + y rho2 + z I/2`` must map to ``(x + y) rho0 + z I/2``.

    Raises:
        PreconditionFailed: if ``e`` does not send both line states to one output.
    """
    if e.dim != 2:
        raise DimensionMismatch("parallel transport is defined for qubit ensembles")
    m1, m2 = (_as_matrix(x, 2) for x in line)
    out1, out2 = _act(e, m1), _act(e, m2)
    if _trace_norm(out1 - out2) > tol:
        raise PreconditionFailed("ensemble does not encrypt the given line")
    r1, r2 = np.array(_describe(m1)), np.array(_describe(m2))
    t0 = np.array(_describe(out1))
    d = r2 - r1
    d = d / np.linalg.norm(d)
    centre = r1 - (r1 @ d) * d
    through_centre = np.linalg.norm(centre) <= 1e-12
    fractions = [0.0] if through_centre else np.linspace(0.0, 1.0, segments)
    basis = np.column_stack([r1, r2])

    devs, witnesses = [], []
    for f in fractions:
        c = (1.0 - f) * centre
        half = np.sqrt(max(1.0 - c @ c, 0.0))
        ends = (c - half * d, c + half * d)
        images = []
        for end in ends:
            # z multiplies I/2, whose Bloch vector is zero
            x, y = np.linalg.lstsq(basis, end, rcond=None)[0]
            predicted = (x + y) * t0
            out = np.array(_describe(_act(e, state_from_bloch(_clip(end)).matrix)))
            devs.append(float(np.linalg.norm(out - predicted)))
            images.append(out)
        for lam in np.linspace(0.0, 1.0, points_per_segment):
            pt = lam * ends[0] + (1 - lam) * ends[1]
            out = np.array(_describe(_act(e, state_from_bloch(_clip(pt)).matrix)))
            devs.append(float(np.linalg.norm(out - images[0])))
        witnesses.append((f"chord at fraction {f:.6g}", tuple(float(v) for v in images[0])))
    return _verdict(devs, tol, None, witnesses, tuple(float(v) for v in t0))


def _clip(r: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(r)
    return r / n if n > 1.0 else r


def verify_dual_constancy(e: EnsembleND, plaintext, tol: float = DEFAULT_TOL,
                          span=None) -> Verdict:
    """Apply the keyless decryption map to every ciphertext of one plaintext.

    Passes iff all outputs coincide; the first is reported as ``reference``
    (the measured rho^(1)). When ``span`` (a list of plaintexts) is given, the
    ensemble is first required to encrypt it.
    """
    rho = _as_matrix(plaintext, e.dim)
    if span is not None and not verify_constancy(e, span, tol, span_samples=0).passed:
        raise PreconditionFailed("ensemble does not encrypt the given plaintexts")
    duals = [u.conj().T for u in e.unitaries]
    outs = []
    for u in e.unitaries:
        c = u @ rho @ u.conj().T
        outs.append(sum(p * (ud @ c @ ud.conj().T) for p, ud in zip(e.probabilities, duals)))
    devs = [_trace_norm(o - outs[0]) for o in outs]
    witnesses = [(f"ciphertext[{i}]", _describe(o)) for i, o in enumerate(outs)]
    return _verdict(devs, tol, None, witnesses, _describe(outs[0]))


def universal_not_witness() -> Verdict:
    """Show that the map ``r -> -r`` is unphysical three independent ways.

    Checks a negative Choi eigenvalue, a negative Pauli probability, and a
    two-bit minimal key for the full ball (more than the one bit an ideal
    identity/NOT pair would use). ``max_deviation`` counts failed checks.
    """
    from .channel import AffineChannel, choi, is_cp, pauli_probabilities
    from .synth import min_key_entropy

    unot = AffineChannel(-np.eye(3), np.zeros(3))
    min_eig = float(choi(unot).eigenvalues.min())
    probs = pauli_probabilities((-1.0, -1.0, -1.0))
    tetra = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
    full = affine_span(list(tetra))
    bits = min_key_entropy(full, full.most_mixed)
    checks = [not is_cp(unot), min(probs) < 0, bits > 1.0]
    witnesses = [
        ("min_choi_eigenvalue", (min_eig,)),
        ("pauli_probabilities", tuple(float(p) for p in probs)),
        ("full_ball_min_entropy", (bits,)),
    ]
    return _verdict([float(checks.count(False))], 0.0, None, witnesses, None)


def sample_states_in_span(span: AffineSpan, count: int, seed: int = 0) -> list[QubitState]:
    """Deterministic random states of the span (affine coefficients in ``[-1, 2]``)."""
    if count < 1:
        raise ValueError("count must be positive")
    if span.dim == 0:
        if count > 1:
            warnings.warn("zero-dimensional span: returning copies of its only state",
                          DegenerateSpanWarning, stacklevel=2)
        return [span.most_mixed] * count
    gens = span.generators()
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(10_000 * count):
        lam = rng.uniform(-1.0, 2.0, size=span.dim)
        lam = np.append(1.0 - lam.sum(), lam)
        r = lam @ gens
        n = np.linalg.norm(r)
        # min eigenvalue (1 - |r|)/2 >= -PSD_TOL
        if n > 1.0 + 2 * PSD_TOL:
            continue
        out.append(state_from_bloch(r / n if n > 1.0 else r))
        if len(out) == count:
            return out
    raise RuntimeError("rejection sampling did not produce enough states")  # pragma: no cover


def verify_report(report, tol: float = DEFAULT_TOL, span_samples: int = 100, seed: int = 0):
    """Attach constancy (and, for lines, parallel-chord) verdicts to a synthesis report.

    Besides constancy against the plaintexts, the constant output is compared
    with the requested target.
    """
    e = report.ensemble
    plaintexts = [state_from_bloch(p) for p in report.span.points]
    verdicts = {"constancy": verify_constancy(e, plaintexts, tol, span_samples, seed)}
    out = _act(e, plaintexts[0].matrix)
    dev = _trace_norm(out - report.target.matrix)
    verdicts["target"] = _verdict([dev], tol, None, [("plaintext[0]", _describe(out))],
                                  _describe(report.target.matrix))
    if report.span.dim == 1:
        g = report.span.generators()
        verdicts["parallel_transport"] = verify_parallel_transport(
            e, [state_from_bloch(g[0]), state_from_bloch(g[1])], tol)
    return dataclasses.replace(report, verdicts=verdicts)
