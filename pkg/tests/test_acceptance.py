"""End-to-end acceptance checks, each at its stated tolerance and time budget.

Every check prints one PASS/FAIL line; the lines are repeated in the pytest
summary. The whole-suite time budget is enforced by a session hook in conftest.
"""
import csv
import math
import time

import numpy as np
from click.testing import CliRunner

from conftest import random_unit, record
from pqc import (
    AffineChannel,
    EnsembleND,
    affine_span,
    choi,
    entropy_exchange,
    is_cp,
    min_key_entropy,
    pauli_probabilities,
    state_from_bloch,
    synthesize,
    tetrahedron_cp,
    trace_distance,
    universal_not_witness,
    verify_constancy,
    verify_parallel_transport,
    von_neumann_entropy,
)
from pqc.channel import orthogonality_gram
from pqc.cli import cli

TOL = 1e-9
I2 = np.eye(2, dtype=complex)


def h_oracle(r):
    probs = [(1 + r) / 4, (1 - r) / 4, (1 - r) / 4, (1 + r) / 4]
    return -sum(p * math.log2(p) for p in probs if p > 0)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def finish(criterion, ok, detail, timer, budget):
    in_time = timer.elapsed < budget
    record(criterion, ok and in_time, f"{detail}; {timer.elapsed:.2f} s (budget {budget:g} s)")
    assert ok, detail
    assert in_time, f"took {timer.elapsed:.2f} s, budget {budget} s"


def test_c01_entropy_curve():
    with Timer() as t:
        res = CliRunner().invoke(cli, ["curve", "--samples", "101"])
        rows = list(csv.reader(res.output.splitlines()))
    values = {float(r): h for r, h in rows[1:]}
    h_half = float(values[0.5])
    ok = (res.exit_code == 0 and rows[0] == ["r", "H_bits"] and abs(h_half - 1.81128) < 1e-4
          and rows[1] == ["0.0", "2.0"] and rows[-1] == ["1.0", "1.0"])
    finish(1, ok, f"H(0.5) = {h_half!r}, endpoints {rows[1]} {rows[-1]}", t, 1.0)


def test_c02_two_state_surface():
    rng = np.random.default_rng(2)
    worst_const = worst_radius = 0.0
    bits_ok = True
    with Timer() as t:
        for _ in range(200):
            pts = random_unit(rng, 2)
            rep = synthesize(pts)
            v = verify_constancy(rep.ensemble, pts, TOL, span_samples=100, seed=0)
            worst_const = max(worst_const, v.max_deviation)
            out = state_from_bloch(v.reference)
            cos_theta = float(pts[0] @ pts[1])
            expect = math.sqrt(0.5 * (1 + cos_theta))
            worst_radius = max(worst_radius, abs(trace_distance(out, state_from_bloch([0, 0, 0])) - expect))
            bits_ok &= len(rep.ensemble) == 2 and abs(rep.key_entropy - 1) < 1e-12
    ok = worst_const <= TOL and worst_radius <= TOL and bits_ok
    finish(2, ok, f"max constancy dev {worst_const:.2e}, max radius error {worst_radius:.2e}", t, 5.0)


def test_c03_three_state():
    rng = np.random.default_rng(3)
    worst_const = worst_h = 0.0
    pair_ok = True
    with Timer() as t:
        for _ in range(100):
            pts = random_unit(rng, 3)
            span = affine_span(pts)
            for r in (1.0, 0.75, 0.5, 0.25, 0.0):
                target = random_unit(rng) * span.ball_radius * r
                rep = synthesize(pts, target)
                v = verify_constancy(rep.ensemble, pts, TOL, span_samples=100, seed=0)
                worst_const = max(worst_const, v.max_deviation)
                worst_h = max(worst_h, abs(rep.key_entropy - h_oracle(r)))
                if r == 1.0:
                    pair_ok &= len(rep.ensemble) == 2 and np.allclose(rep.ensemble.probabilities, 0.5, atol=1e-15)
    ok = worst_const <= TOL and worst_h <= 1e-9 and pair_ok
    finish(3, ok, f"max constancy dev {worst_const:.2e}, max |H - H(r)| {worst_h:.2e}, r=1 pairs {pair_ok}", t, 10.0)


def test_c04_two_state_interior():
    rng = np.random.default_rng(4)
    worst = 0.0
    bits_ok = True
    with Timer() as t:
        for _ in range(100):
            pts = random_unit(rng, 2)
            p = affine_span(pts).ball_radius
            target = random_unit(rng) * p * rng.uniform(0.0, 0.99)
            rep = synthesize(pts, target)
            v = verify_constancy(rep.ensemble, pts, TOL, span_samples=100, seed=0)
            worst = max(worst, v.max_deviation, trace_distance(state_from_bloch(v.reference), rep.target))
            bits_ok &= len(rep.ensemble) == 2 and abs(rep.key_entropy - 1) < 1e-12
    finish(4, worst <= TOL and bits_ok, f"max deviation {worst:.2e}, all one-bit {bits_ok}", t, 5.0)


def test_c05_cp_oracle():
    rng = np.random.default_rng(5)
    disagreements = 0
    n_cp = 0
    with Timer() as t:
        for lam in rng.uniform(-1.5, 1.5, size=(1000, 3)):
            a = is_cp(AffineChannel.diagonal(lam), 1e-10)
            b = tetrahedron_cp(lam, 1e-10)
            disagreements += a != b
            n_cp += a
    finish(5, disagreements == 0, f"{disagreements} disagreements in 1000 maps ({n_cp} CP)", t, 5.0)


def test_c06_universal_not():
    with Timer() as t:
        unot = AffineChannel(-np.eye(3), np.zeros(3))
        min_eig = float(choi(unot).eigenvalues.min())
        p0 = pauli_probabilities((-1, -1, -1))[0]
        tet = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
        full = affine_span(tet)
        bits = min_key_entropy(full, [0, 0, 0])
        synth_bits = synthesize(tet).key_entropy
        witness = universal_not_witness()
    ok = (not is_cp(unot) and min_eig < -0.4 and abs(p0 + 0.5) < 1e-15
          and abs(bits - 2) < 1e-12 and abs(synth_bits - 2) < 1e-12 and witness.passed)
    finish(6, ok, f"min Choi eigenvalue {min_eig:.3f}, p0 {p0}, full-ball entropy {bits}", t, 1.0)


def _chain_corpus(rng):
    for _ in range(40):
        pts = random_unit(rng, 2)
        p = affine_span(pts).ball_radius
        yield pts, None
        yield pts, random_unit(rng) * p * rng.uniform()
    for _ in range(40):
        pts = random_unit(rng, 3)
        p = affine_span(pts).ball_radius
        yield pts, random_unit(rng) * p * rng.choice([1.0, 0.75, 0.5, 0.25, 0.0, rng.uniform()])
    for _ in range(20):
        yield random_unit(rng)[None, :], random_unit(rng) * rng.uniform()
        yield random_unit(rng, 4), None


def test_c07_entropy_chain():
    rng = np.random.default_rng(7)
    worst_lower = worst_upper = worst_orth = 0.0
    n_orth = n = 0
    with Timer() as t:
        for pts, target in _chain_corpus(rng):
            rep = synthesize(pts, target)
            s0 = von_neumann_entropy(rep.target.matrix)
            sex = entropy_exchange(rep.ensemble, I2 / 2).value
            worst_lower = max(worst_lower, s0 - sex)
            worst_upper = max(worst_upper, sex - rep.key_entropy)
            g = orthogonality_gram(rep.ensemble)
            if np.max(np.abs(g - np.diag(np.diag(g)))) < 1e-12:
                n_orth += 1
                worst_orth = max(worst_orth, abs(sex - rep.key_entropy))
            n += 1
    ok = worst_lower <= TOL and worst_upper <= TOL and worst_orth <= TOL and n_orth > 0
    finish(7, ok, f"{n} ensembles: max S0 - Sex {worst_lower:.2e}, max Sex - H {worst_upper:.2e}, "
                  f"orthogonal {n_orth} with max |Sex - H| {worst_orth:.2e}", t, 5.0)


def test_c08_parallel_lines():
    rng = np.random.default_rng(8)
    all_pass = True
    worst_centre = 0.0
    with Timer() as t:
        for i in range(50):
            pts = random_unit(rng, 2)
            p = affine_span(pts).ball_radius
            target = None if i % 2 == 0 else random_unit(rng) * p * rng.uniform(0, 0.99)
            rep = synthesize(pts, target)
            v = verify_parallel_transport(rep.ensemble, [state_from_bloch(x) for x in pts], TOL)
            all_pass &= v.passed
            d = (pts[1] - pts[0]) / np.linalg.norm(pts[1] - pts[0])
            for s in np.linspace(-1, 1, 11):
                out = sum(pk * (u @ state_from_bloch(s * d).matrix @ u.conj().T) for pk, u in rep.ensemble)
                worst_centre = max(worst_centre, trace_distance(out, I2 / 2))
    ok = all_pass and worst_centre <= TOL
    finish(8, ok, f"all parallel chords constant {all_pass}, through-centre chord dev {worst_centre:.2e}", t, 5.0)


def test_c09_two_qubit_fixture():
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    with Timer() as t:
        e = EnsembleND(np.array([0.5, 0.5]), np.array([np.eye(4), np.kron(I2, X)], dtype=complex))
        states = [np.eye(4) / 4, 0.5 * np.diag([1.0, 0, 0, 1.0])]
        devs = []
        for s in states:
            out = sum(p * (u @ s @ u.conj().T) for p, u in e)
            devs.append(float(np.abs(np.linalg.eigvalsh(out - np.eye(4) / 4)).sum()))
        v = verify_constancy(e, states, 1e-12, span_samples=100)
    ref = np.array(v.reference[:16]) + 1j * np.array(v.reference[16:])
    ok = max(devs) <= 1e-12 and v.passed and np.max(np.abs(ref.reshape(4, 4) - np.eye(4) / 4)) <= 1e-12
    finish(9, ok, f"max deviation from I/4 {max(devs):.2e}, verifier {v.passed}", t, 1.0)
