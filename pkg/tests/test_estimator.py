import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import random_unit
from pqc import BlochOutOfBall, PrivateChannelEncryptor, UnachievableTarget, state_from_bloch

XI = np.eye(3)


def test_params_round_trip():
    est = PrivateChannelEncryptor(target=[0, 0, 0], tol=1e-8)
    assert est.get_params()["tol"] == 1e-8
    assert clone(est).get_params()["target"] == [0, 0, 0]
    est.set_params(span_samples=10)
    assert est.span_samples == 10


def test_fit_transform_constant():
    est = PrivateChannelEncryptor().fit(XI)
    out = est.transform(XI)
    assert np.allclose(out, est.output_, atol=1e-12)
    assert est.key_entropy_ == pytest.approx(1)
    assert est.ball_radius_ == pytest.approx(1 / np.sqrt(3))
    assert est.report_.verdicts["constancy"].passed


def test_fit_transform_on_matrices():
    mats = [state_from_bloch(r).matrix for r in XI]
    out = PrivateChannelEncryptor(target=[0, 0, 0]).fit_transform(np.array(mats))
    assert np.allclose(out, 0, atol=1e-12)


def test_span_members_map_to_output(rng):
    pts = random_unit(rng, 2)
    est = PrivateChannelEncryptor().fit(pts)
    mid = 0.3 * pts[0] + 0.7 * pts[1]
    assert est.score(np.vstack([pts, mid])) > -1e-12


def test_encrypt_decrypt_round_trip(rng):
    est = PrivateChannelEncryptor(target=[0, 0, 0]).fit(XI)
    c, keys = est.encrypt(XI, random_state=0)
    assert np.allclose(est.decrypt(c, keys), XI, atol=1e-12)


def test_encrypted_average_matches_transform(rng):
    est = PrivateChannelEncryptor(target=[0.05, 0.05, 0.05]).fit(XI)
    x = np.repeat(XI[:1], 20000, axis=0)
    c, _ = est.encrypt(x, random_state=1)
    assert np.linalg.norm(c.mean(axis=0) - est.output_) < 0.03


def test_unachievable():
    with pytest.raises(UnachievableTarget):
        PrivateChannelEncryptor(target=[0, 0, 0.9]).fit(XI)


def test_input_validation():
    with pytest.raises(BlochOutOfBall):
        PrivateChannelEncryptor().fit([[0, 0, 2.0]])
    with pytest.raises(ValueError):
        PrivateChannelEncryptor().fit([[0, 0]])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PrivateChannelEncryptor().transform(XI)


def test_key_count_checked():
    est = PrivateChannelEncryptor().fit(XI)
    with pytest.raises(ValueError):
        est.decrypt(XI, [0])


def test_random_state_object(rng):
    est = PrivateChannelEncryptor(random_state=np.random.RandomState(3)).fit(XI)
    assert est.report_.verdicts["constancy"].seed is not None
