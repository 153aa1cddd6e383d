"""Command-line front end.

Subcommands build witnesses, classify them, compute the critical parameter,
compute PPT mixing thresholds, and scan parameter grids. All output is
deterministic for a fixed seed: floats are rounded to 12 significant digits
and JSON keys are sorted, so identical invocations produce identical bytes.

File formats
------------
Matrix JSON: ``{"dim": n, "entries": [[re, im], ...]}`` with the n*n entries
in row-major order. Text matrices are whitespace-separated ``re+imj`` tokens,
one row per line. Certificates are JSON objects with the defining parameters
(``d``, ``a``, ``type``, ``seed``, ``grid``) next to ``verdict`` and
``payload``; matrices inside payloads use the matrix JSON shape. Scan output
is CSV with one row per grid point.

Exit codes: 0 success, 2 usage error, 3 degenerate math or a failed
verification, 4 resource cap exceeded. QW_THREADS caps scan parallelism.
"""

import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import click
import numpy as np

from .certifier import Certificate, SeesawConfig, classify, verify_certificate
from .errors import AnalyticUnavailable, DegenerateParameters, QwitError
from .lp_engine import (c_gamma_min_analytic, critical_lp, r_critical,
                        simplex_solve)
from .state_families import ppt_threshold_analytic, ppt_threshold_numeric
from .tensor_core import min_eig
from .witnesses import ChoiParams, bell_diagonal_coeffs, choi_witness


@dataclass(frozen=True)
class RunConfig:
    """Plumbing knobs shared by the subcommands.

    grid=None means the per-dimension default of the probe search.
    """
    seed: int = 0
    psd_eps: float = 1e-9
    eq_eps: float = 1e-12
    restarts: int = 64
    iters: int = 200
    grid: int = None
    fmt: str = "json"

    def __post_init__(self):
        if self.psd_eps <= 0 or self.eq_eps <= 0:
            raise ValueError("tolerances must be positive")
        if self.restarts < 1 or self.iters < 1:
            raise ValueError("restarts and iters must be positive")
        if self.grid is not None and self.grid < 1:
            raise ValueError("grid must be positive")
        if self.fmt not in ("json", "csv", "text-matrix"):
            raise ValueError("unknown output format %r" % (self.fmt,))

    def seesaw(self):
        return SeesawConfig(restarts=self.restarts, max_iters=self.iters,
                            seed=self.seed)


def _round12(x):
    return float("%.12g" % float(x))


def _jsonify(obj):
    """Recursively convert payload values into JSON-safe structures."""
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
            return _matrix_json(obj)
        return {"vector": [[_round12(z.real), _round12(z.imag)]
                           for z in np.asarray(obj, dtype=complex).ravel()]}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round12(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round12(obj.real), _round12(obj.imag)]
    return obj


def _dump_json(obj):
    return json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":")) + "\n"


def _matrix_json(M):
    M = np.asarray(M, dtype=complex)
    return {"dim": int(M.shape[0]),
            "entries": [[_round12(z.real), _round12(z.imag)]
                        for z in M.ravel()]}


def _matrix_from_json(obj):
    n = int(obj["dim"])
    flat = np.array([complex(re, im) for re, im in obj["entries"]])
    return flat.reshape(n, n)


def _matrix_text(M):
    M = np.asarray(M, dtype=complex)
    lines = []
    for row in M:
        lines.append(" ".join("%.12g%+.12gj" % (z.real, z.imag) for z in row))
    return "\n".join(lines) + "\n"


def _parse_a(text, d):
    parts = [p for p in text.split(",") if p != ""]
    if len(parts) != d:
        raise click.UsageError(
            "expected %d comma-separated weights, got %d" % (d, len(parts)))
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise click.UsageError("could not parse weights: %s" % exc)


def _parse_mu(text, d):
    parts = [p for p in text.split(",") if p != ""]
    if len(parts) != d - 1:
        raise click.UsageError(
            "expected %d comma-separated weights, got %d" % (d - 1, len(parts)))
    try:
        mu = [float(p) for p in parts]
    except ValueError as exc:
        raise click.UsageError("could not parse weights: %s" % exc)
    total = sum(mu)
    if abs(total - 1.0) > 1e-9:
        raise click.UsageError("mu must sum to 1 within 1e-9 (got %.12g)" % total)
    return tuple(m / total for m in mu)


def _write_out(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _params_or_usage(d, a_text, kind, normalized=False):
    a = _parse_a(a_text, d)
    try:
        return ChoiParams(d=d, a=a, kind=kind, normalized=normalized)
    except QwitError as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """Bell-diagonal witness toolkit."""


@main.command()
@click.option("--d", "d", type=int, required=True, help="Local dimension.")
@click.option("--a", "a_text", required=True,
              help="Comma-separated weights, one per dimension.")
@click.option("--type", "kind", type=click.Choice(["first", "second"]),
              default="first", show_default=True)
@click.option("--unnormalized", is_flag=True,
              help="Emit the trace d(sum a - 1) form instead of trace 1.")
@click.option("--format", "fmt", type=click.Choice(["json", "text-matrix"]),
              default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Output path (stdout when omitted).")
def build(d, a_text, kind, unnormalized, fmt, out):
    """Construct a witness matrix with metadata."""
    params = _params_or_usage(d, a_text, kind, normalized=not unnormalized)
    W = choi_witness(params)
    if fmt == "text-matrix":
        _write_out(_matrix_text(W), out)
        return
    doc = {
        "matrix": _matrix_json(W),
        "meta": {
            "d": d,
            "a": list(params.a),
            "type": kind,
            "normalized": not unnormalized,
            "min_eig": min_eig(W),
            "bell_coeffs": bell_diagonal_coeffs(W, d).tolist(),
        },
    }
    _write_out(_dump_json(doc), out)


def _certificate_doc(d, a, kind, seed, grid, cert):
    return {
        "d": d,
        "a": list(a),
        "type": kind,
        "seed": seed,
        "grid": grid,
        "verdict": cert.verdict,
        "payload": cert.payload,
    }


def _payload_from_json(obj):
    out = {}
    for key, val in obj.items():
        if isinstance(val, dict) and "entries" in val and "dim" in val:
            out[key] = _matrix_from_json(val)
        elif isinstance(val, dict) and "vector" in val:
            out[key] = np.array([complex(re, im) for re, im in val["vector"]])
        elif key == "mu" and isinstance(val, list):
            out[key] = tuple(val)
        else:
            out[key] = val
    return out


@main.command("classify")
@click.option("--d", "d", type=int, default=None)
@click.option("--a", "a_text", default=None,
              help="Comma-separated weights, one per dimension.")
@click.option("--type", "kind", type=click.Choice(["first", "second"]),
              default="first", show_default=True)
@click.option("--grid", type=int, default=None,
              help="Probe grid divisions (defaults per dimension).")
@click.option("--restarts", type=int, default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--verify", "verify_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="Re-verify a previously emitted certificate file.")
def classify_cmd(d, a_text, kind, grid, restarts, seed, out, verify_path):
    """Run the classification pipeline, or re-verify a saved certificate."""
    if verify_path is not None:
        with open(verify_path) as fh:
            doc = json.load(fh)
        params = ChoiParams(d=int(doc["d"]), a=tuple(doc["a"]),
                            kind=doc.get("type", "first"))
        cert = Certificate(doc["verdict"], _payload_from_json(doc["payload"]))
        failures = verify_certificate(params, cert)
        if failures:
            for line in failures:
                click.echo("FAIL %s" % line, err=True)
            sys.exit(3)
        click.echo("certificate ok: %s" % cert.verdict)
        return
    if d is None or a_text is None:
        raise click.UsageError("--d and --a are required unless --verify is given")
    params = _params_or_usage(d, a_text, kind)
    try:
        run = RunConfig(seed=seed, restarts=restarts, grid=grid)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    cert = classify(params, cfg=run.seesaw(), grid=run.grid)
    _write_out(_dump_json(_certificate_doc(d, params.a, kind, seed, grid, cert)),
               out)


@main.command("rc")
@click.option("--d", "d", type=int, required=True)
@click.option("--a", "a_text", required=True)
@click.option("--type", "kind", type=click.Choice(["first", "second"]),
              default="first", show_default=True)
@click.option("--method", type=click.Choice(["analytic", "lp", "both"]),
              default="both", show_default=True)
def rc_cmd(d, a_text, kind, method):
    """Critical parameter report: C_gamma minimum and r_c."""
    params = _params_or_usage(d, a_text, kind)
    engine_method = {"analytic": "analytic", "lp": "simplex",
                     "both": "both"}[method]
    try:
        res = r_critical(params, method=engine_method)
        if method == "both":
            c_closed = c_gamma_min_analytic(params)
            c_lp, _ = simplex_solve(critical_lp(params))
            discrepancy = abs(c_closed - c_lp)
    except DegenerateParameters as exc:
        click.echo("degenerate: %s" % exc, err=True)
        sys.exit(3)
    click.echo("c_gamma_min %.12g" % res.c_gamma_min)
    click.echo("r_c %.12g" % res.r_c)
    if method == "both":
        click.echo("discrepancy %.12g" % discrepancy)


@main.command("ppt-threshold")
@click.option("--d", "d", type=int, required=True)
@click.option("--mu", "mu_text", required=True,
              help="d-1 comma-separated weights summing to 1.")
@click.option("--type", "kind", type=click.Choice(["first", "second"]),
              default="first", show_default=True)
@click.option("--method", type=click.Choice(["analytic", "numeric", "both"]),
              default="both", show_default=True)
def ppt_threshold_cmd(d, mu_text, kind, method):
    """Largest PPT-preserving mixing weight for the probe family."""
    mu = _parse_mu(mu_text, d)
    if kind == "second" and d != 3:
        raise click.UsageError("second-type states are only defined for d=3")
    if method in ("analytic", "both"):
        try:
            click.echo("analytic %.12g" % ppt_threshold_analytic(d, mu, kind))
        except AnalyticUnavailable:
            click.echo("analytic AnalyticUnavailable")
    if method in ("numeric", "both"):
        click.echo("numeric %.12g" % ppt_threshold_numeric(d, mu, kind).p)


def _parse_axis(spec):
    parts = spec.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise click.UsageError("bad axis spec %r: %s" % (spec, exc))
    if len(vals) == 1:
        return [vals[0]]
    if len(vals) != 3:
        raise click.UsageError("axis spec must be a value or lo:hi:step")
    lo, hi, step = vals
    if step <= 0 or hi < lo:
        raise click.UsageError("axis spec needs step > 0 and hi >= lo")
    count = int(round((hi - lo) / step)) + 1
    return [float(x) for x in np.linspace(lo, hi, count)]


def _scan_row(d, point, kind, run):
    params = ChoiParams(d=d, a=point, kind=kind)
    cert = classify(params, cfg=run.seesaw(), grid=run.grid)
    pl = cert.payload
    if cert.verdict == "NotWitness":
        margin = pl["value"]
        summary = "value=%.12g" % pl["value"]
    elif cert.verdict == "Decomposable":
        margin = min(min_eig(pl["p_tilde"]), min_eig(pl["q_tilde"]))
        summary = "lam=%.12g" % pl["lam"]
    elif cert.verdict == "NonDecomposable":
        margin = pl["trace"]
        summary = "p=%.12g mu=%s" % (
            pl["p"], "/".join("%.12g" % m for m in pl["mu"]))
    else:
        diag = pl["diagnostics"]
        margin = diag.get("best_gap", float("nan"))
        summary = "seesaw=%.12g" % diag.get("seesaw_value", float("nan"))
    return ["%.12g" % x for x in point] + [cert.verdict, "%.12g" % margin,
                                           summary]


@main.command("scan")
@click.option("--d", "d", type=int, required=True)
@click.option("--a0", "--a0-spec", "a0", default=None)
@click.option("--a1", default=None)
@click.option("--a2", default=None)
@click.option("--a3", default=None)
@click.option("--a4", default=None)
@click.option("--a5", default=None)
@click.option("--a6", default=None)
@click.option("--a7", default=None)
@click.option("--type", "kind", type=click.Choice(["first", "second"]),
              default="first", show_default=True)
@click.option("--grid", type=int, default=None,
              help="Probe grid divisions passed through to classification.")
@click.option("--restarts", type=int, default=16, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-points", type=int, default=4096, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def scan_cmd(d, a0, a1, a2, a3, a4, a5, a6, a7, kind, grid, restarts, seed,
             max_points, out):
    """Classify every point of a weight grid and emit CSV."""
    specs = [a0, a1, a2, a3, a4, a5, a6, a7][:d]
    if any(s is None for s in specs):
        raise click.UsageError("scan over d=%d needs --a0 .. --a%d" % (d, d - 1))
    if any(s is not None for s in [a0, a1, a2, a3, a4, a5, a6, a7][d:]):
        raise click.UsageError("axis option beyond --a%d for d=%d" % (d - 1, d))
    axes = [_parse_axis(s) for s in specs]
    total = 1
    for ax in axes:
        total *= len(ax)
    if total > max_points:
        click.echo("grid has %d points, cap is %d" % (total, max_points),
                   err=True)
        sys.exit(4)
    points = list(itertools.product(*axes))
    try:
        run = RunConfig(seed=seed, restarts=restarts, grid=grid)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    workers = int(os.environ.get("QW_THREADS", "0")) or None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda pt: _scan_row(d, pt, kind, run), points))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a%d" % i for i in range(d)] + ["verdict", "margin",
                                                     "payload"])
    writer.writerows(rows)
    _write_out(buf.getvalue(), out)


if __name__ == "__main__":
    main()
