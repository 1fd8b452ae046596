"""scikit-learn style wrapper around channel synthesis.

``fit`` learns a minimal-key encryption channel for the rows of ``X`` (Bloch
vectors or 2x2 density matrices); ``transform`` returns the keyless average
output for each row, which is the same for every member of the fitted span.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_random_state
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bloch_array, check_bloch_vector
from .channel import ensemble_to_affine, rotation_of_unitary
from .synth import synthesize
from .verify import verify_report


class PrivateChannelEncryptor(TransformerMixin, BaseEstimator):
    """Fit a private quantum channel to a set of plaintext qubit states.

    Args:
        target: ``"auto"`` (or None) for the most mixed state of the plaintext
            span, which needs the least key, or a Bloch vector of shape (3,).
        tol: Trace-distance tolerance for the verification run during ``fit``.
        span_samples: Random members of the span checked during ``fit``.
        random_state: Seed for the verification sampler.

    Attributes:
        report_: The verified ``PqcReport``.
        ensemble_: The fitted ``UnitaryEnsemble``.
        key_entropy_: Shannon entropy of the key in bits.
        min_entropy_: Lower bound on the key entropy for this span and output.
        ball_radius_: Radius of the ball of achievable outputs.
        output_: Bloch vector every plaintext is mapped to.
    """

    def __init__(self, target="auto", tol=1e-9, span_samples=100, random_state=0):
        self.target = target
        self.tol = tol
        self.span_samples = span_samples
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_bloch_array(X)
        target = None
        if not (self.target is None or (isinstance(self.target, str) and self.target == "auto")):
            target = check_bloch_vector(self.target)
        seed = self.random_state if isinstance(self.random_state, (int, np.integer)) else \
            int(check_random_state(self.random_state).randint(2**31 - 1))
        report = verify_report(synthesize(X, target), self.tol, self.span_samples, seed)
        self.report_ = report
        self.ensemble_ = report.ensemble
        self.key_entropy_ = report.key_entropy
        self.min_entropy_ = report.min_entropy
        self.ball_radius_ = report.span.ball_radius
        self.output_ = report.target.bloch.copy()
        self.n_features_in_ = 3
        self._T = ensemble_to_affine(report.ensemble).T
        self._rotations = np.array([rotation_of_unitary(u) for u in report.ensemble.unitaries])
        return self

    def transform(self, X):
        """Average (keyless) output Bloch vector for each row of ``X``."""
        check_is_fitted(self, "report_")
        X = check_bloch_array(X)
        return X @ self._T.T

    def encrypt(self, X, random_state=None):
        """Encrypt each row with an independently drawn key.

        Returns ``(ciphertexts, keys)``; ``keys`` index into ``ensemble_``.
        """
        check_is_fitted(self, "report_")
        X = check_bloch_array(X)
        rng = check_random_state(random_state)
        keys = rng.choice(len(self.ensemble_), size=len(X), p=self.ensemble_.probabilities)
        return np.einsum("nij,nj->ni", self._rotations[keys], X), keys

    def decrypt(self, C, keys):
        check_is_fitted(self, "report_")
        C = check_bloch_array(C)
        keys = np.asarray(keys, dtype=int)
        if keys.shape != (len(C),):
            raise ValueError("need exactly one key per ciphertext")
        return np.einsum("nji,nj->ni", self._rotations[keys], C)

    def score(self, X, y=None):
        """Negative largest distance of an output from ``output_`` (0 is perfect)."""
        out = self.transform(X)
        return -float(np.max(np.linalg.norm(out - self.output_, axis=1)))
