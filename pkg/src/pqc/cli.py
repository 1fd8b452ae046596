"""Command-line interface.

Usage:
    pqc synth --in job.json --out report.json
    pqc classify --in channel.json
    pqc curve --samples 101 --out curve.csv
    pqc verify --in check.json

Exit codes: 0 success, 1 parse or I/O error, 2 unachievable target,
3 verification failure, 4 non-unital channel.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

import click

from . import __version__
from ._errors import NotUnital, UnachievableTarget
from .bloch import affine_span, state_from_bloch
from .channel import (
    CP_TOL,
    choi,
    classify_pqc,
    diagonalize,
    is_cp,
    pauli_probabilities,
    tetrahedron_cp,
)
from .serialize import (
    SCHEMA,
    channel_from_json,
    dumps,
    ensemble_from_json,
    parse_state,
    report_to_json,
)
from .synth import entropy_curve, synthesize
from .verify import (
    DEFAULT_TOL,
    verify_constancy,
    verify_dual_constancy,
    verify_parallel_transport,
    verify_report,
)

EXIT_OK, EXIT_PARSE, EXIT_UNACHIEVABLE, EXIT_VERIFY, EXIT_NOT_UNITAL = 0, 1, 2, 3, 4
_CURVE_SAMPLES = 101


class _Fail(Exception):
    def __init__(self, code: int, payload: dict):
        self.code = code
        self.payload = payload


@dataclass
class JobSpec:
    plaintexts: list
    target: object = "auto"
    tol_cp: float = CP_TOL
    tol_verify: float = DEFAULT_TOL
    seed: int = 0
    report_path: Optional[str] = None
    curve_path: Optional[str] = None
    samples: int = 100
    raw_plaintexts: list = field(default_factory=list, repr=False)

    @classmethod
    def from_json(cls, obj: dict) -> "JobSpec":
        raw = obj.get("plaintexts") or []
        if not raw:
            raise ValueError("job needs a non-empty 'plaintexts' list")
        tols = obj.get("tolerances", {})
        outputs = obj.get("outputs", {})
        spec = cls(
            plaintexts=[parse_state(p) for p in raw],
            target=obj.get("target", "auto"),
            tol_cp=float(tols.get("cp", CP_TOL)),
            tol_verify=float(tols.get("verify", DEFAULT_TOL)),
            seed=int(obj.get("seed", 0)),
            report_path=outputs.get("report"),
            curve_path=outputs.get("curve"),
            raw_plaintexts=raw,
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        if self.tol_cp <= 0 or self.tol_verify <= 0:
            raise ValueError("tolerances must be positive")
        if self.samples < 0:
            raise ValueError("samples must be non-negative")


def _header(kind: str, **extra) -> dict:
    return {"schema": SCHEMA, "kind": kind, "version": __version__, **extra}


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Fail(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from exc


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(EXIT_PARSE, {"error": "io", "message": str(exc)}) from exc


def _run(fn) -> None:
    try:
        code = fn()
    except _Fail as f:
        click.echo(dumps({"schema": SCHEMA, **f.payload}), err=True, nl=False)
        sys.exit(f.code)
    sys.exit(code)


def _curve_csv(samples: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "H_bits"])
    for r, h in entropy_curve(samples):
        writer.writerow([repr(r), repr(h)])
    return buf.getvalue()


@click.group()
@click.version_option(__version__, prog_name="pqc")
def cli():
    """Construct and check single-qubit private quantum channels."""


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="JobSpec JSON file.")
@click.option("--out", "out_path", default=None, help="Report path (default: job outputs.report or stdout).")
@click.option("--target", default=None, help='"auto" or a JSON state, e.g. "[0, 0, 0.3]".')
@click.option("--tol-cp", type=float, default=None)
@click.option("--tol-verify", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--samples", type=int, default=None, help="Random span members to verify.")
def synth(in_path, out_path, target, tol_cp, tol_verify, seed, samples):
    """Synthesise a minimal-key channel for the job's plaintexts."""

    def body() -> int:
        obj = _read_json(in_path)
        try:
            job = JobSpec.from_json(obj)
            if target is not None:
                job.target = target if target == "auto" else json.loads(target)
            for name, val in (("tol_cp", tol_cp), ("tol_verify", tol_verify),
                              ("seed", seed), ("samples", samples)):
                if val is not None:
                    setattr(job, name, val)
            job.validate()
            tgt = None if job.target in (None, "auto") else parse_state(job.target)
        except (ValueError, TypeError, KeyError) as exc:
            raise _Fail(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from exc
        dest = out_path or job.report_path
        tolerances = {"cp": job.tol_cp, "verify": job.tol_verify}
        try:
            report = synthesize(job.plaintexts, tgt)
        except UnachievableTarget as exc:
            payload = _header("synth", error="unachievable_target", message=str(exc),
                              ball_radius=exc.radius, target_distance=exc.distance,
                              tolerances=tolerances, seed=job.seed)
            _emit(dumps(payload), dest)
            return EXIT_UNACHIEVABLE
        report = verify_report(report, job.tol_verify, job.samples, job.seed)
        cp = is_cp(report.ensemble, job.tol_cp)
        dual = verify_dual_constancy(report.ensemble, job.plaintexts[0], job.tol_verify)
        passed = cp and all(v.passed for v in report.verdicts.values())
        doc = _header("synth", tolerances=tolerances, seed=job.seed, samples=job.samples)
        doc.update(report_to_json(report))
        doc["cp"] = cp
        # measured only; does not gate the exit code
        doc["dual_decryption"] = dual.to_dict()
        doc["passed"] = passed
        _emit(dumps(doc), dest)
        if job.curve_path:
            _emit(_curve_csv(_CURVE_SAMPLES), job.curve_path)
        return EXIT_OK if passed else EXIT_VERIFY

    _run(body)


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="Channel JSON file.")
@click.option("--out", "out_path", default=None)
@click.option("--tol-cp", type=float, default=CP_TOL)
def classify(in_path, out_path, tol_cp):
    """Diagonal form, complete positivity and PQC verdict of a channel."""

    def body() -> int:
        obj = _read_json(in_path)
        try:
            _, affine = channel_from_json(obj)
        except (ValueError, TypeError, KeyError) as exc:
            raise _Fail(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from exc
        try:
            form = diagonalize(affine)
        except NotUnital as exc:
            payload = _header("classify", error="not_unital", message=str(exc),
                              t=affine.t.tolist())
            _emit(dumps(payload), out_path)
            return EXIT_NOT_UNITAL
        cp = is_cp(affine, tol_cp)
        doc = _header("classify", tolerances={"cp": tol_cp})
        doc["diagonal_form"] = {
            "lambdas": form.lambdas.tolist(),
            "pre_rotation": form.pre_rotation.tolist(),
            "post_rotation": form.post_rotation.tolist(),
        }
        doc["cp"] = cp
        doc["min_choi_eigenvalue"] = float(choi(affine).eigenvalues.min())
        doc["tetrahedron_cp"] = tetrahedron_cp(form.lambdas, tol_cp)
        doc["pauli_probabilities"] = list(pauli_probabilities(form.lambdas))
        if cp:
            c = classify_pqc(affine)
            doc["pqc"] = {
                "verdict": c.label,
                "vanishing_axes": list(c.vanishing_axes),
                "encrypted_directions": [list(d) for d in c.encrypted_directions],
            }
        else:
            doc["pqc"] = {"verdict": "not_cp", "vanishing_axes": [], "encrypted_directions": []}
        _emit(dumps(doc), out_path)
        return EXIT_OK

    _run(body)


@cli.command()
@click.option("--samples", type=int, default=_CURVE_SAMPLES, show_default=True)
@click.option("--out", "out_path", default=None, help="CSV path (default: stdout).")
def curve(samples, out_path):
    """Key entropy H(r) of the three-state Pauli construction as CSV."""

    def body() -> int:
        if samples < 2:
            raise _Fail(EXIT_PARSE, {"error": "parse", "message": "samples must be >= 2"})
        _emit(_curve_csv(samples), out_path)
        return EXIT_OK

    _run(body)


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(),
              help='JSON with "ensemble" and "plaintexts".')
@click.option("--out", "out_path", default=None)
@click.option("--tol-verify", type=float, default=DEFAULT_TOL)
@click.option("--seed", type=int, default=0)
@click.option("--samples", type=int, default=100)
def verify(in_path, out_path, tol_verify, seed, samples):
    """Brute-force check that an ensemble encrypts the given plaintexts."""

    def body() -> int:
        obj = _read_json(in_path)
        try:
            ens = ensemble_from_json(obj["ensemble"])
            plaintexts = [parse_state(p) for p in obj["plaintexts"]]
            if not plaintexts:
                raise ValueError("no plaintexts")
        except (ValueError, TypeError, KeyError) as exc:
            raise _Fail(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from exc
        verdicts = {"constancy": verify_constancy(ens, plaintexts, tol_verify, samples, seed)}
        span = affine_span(plaintexts)
        if span.dim == 1 and verdicts["constancy"].passed:
            g = span.generators()
            verdicts["parallel_transport"] = verify_parallel_transport(
                ens, [state_from_bloch(g[0]), state_from_bloch(g[1])], tol_verify)
        dual = verify_dual_constancy(ens, plaintexts[0], tol_verify)
        passed = all(v.passed for v in verdicts.values())
        doc = _header("verify", tolerances={"verify": tol_verify}, seed=seed, samples=samples)
        doc["verdicts"] = {k: v.to_dict() for k, v in verdicts.items()}
        doc["dual_decryption"] = dual.to_dict()
        doc["passed"] = passed
        _emit(dumps(doc), out_path)
        return EXIT_OK if passed else EXIT_VERIFY

    _run(body)


def main() -> None:  # pragma: no cover
    cli()


if __name__ == "__main__":  # pragma: no cover
    main()
