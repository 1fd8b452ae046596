import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_unit(rng, n=None):
    v = rng.normal(size=(3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_bloch(rng, n=None):
    """Uniform in the ball."""
    u = random_unit(rng, n)
    rad = rng.uniform(size=() if n is None else (n, 1)) ** (1 / 3)
    return u * rad


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    return q


def random_su2(rng):
    a = rng.normal(size=4)
    a /= np.linalg.norm(a)
    return np.array([[a[0] + 1j * a[3], a[2] + 1j * a[1]],
                     [-a[2] + 1j * a[1], a[0] - 1j * a[3]]])


def bloch_matrix(r):
    x, y, z = r
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def conjugate_sum(probs, unitaries, rho):
    """Reference channel action, written out term by term."""
    out = np.zeros_like(rho, dtype=complex)
    for p, u in zip(probs, unitaries):
        out += p * (u @ rho @ u.conj().T)
    return out


def tnorm(a):
    return float(np.abs(np.linalg.eigvalsh(0.5 * (a + a.conj().T))).sum())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance bookkeeping: criterion lines are collected here and echoed in the summary
ACCEPTANCE_LINES = []
SUITE_BUDGET_S = 60.0
_session = {}


def record(criterion, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_sessionstart(session):
    import time
    _session["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _session["start"]
    ok = elapsed < SUITE_BUDGET_S
    n_tests = sum(len(terminalreporter.stats.get(k, [])) for k in ("passed", "failed", "xfailed", "xpassed"))
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] criterion 10: {n_tests} tests ran in {elapsed:.2f} s "
        f"(budget {SUITE_BUDGET_S:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    import time
    if ACCEPTANCE_LINES and time.perf_counter() - _session.get("start", 0) >= SUITE_BUDGET_S:
        session.exitstatus = 1
