"""Command-line front end.

    star eval    evaluate one star product from the catalog or a table file
    star verify  run verification suites and emit a machine-readable report
    star report  merge report files into one summary table
    star gram    Gram matrix of a deformed evaluation functional
    star gns     quotient representation data built from such a functional

Exit codes: 0 success (and all probes green for verify), 1 a probe failed
or rewriting hit the step limit, 2 usage, parse or config errors.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from typing import Dict, Optional, Tuple

import click
import numpy as np

from .catalog import CATALOG_IDS, CatalogError, build_catalog
from .params import ParameterCatalog, ParameterError
from .parsing import ParseError, format_poly, parse_poly
from .qcomb import PoleAtRootOfUnity
from .reduction import StepLimitExceeded, TableError, star_by_reduction
from .scalars import RingError, make_ring
from .states import StateFunctional, WickPoint, gns_build, gram_matrix, psd_check
from .tableio import TableFileError, table_from_dict
from .verify import (
    DEFAULT_RUNSPEC,
    SCHEMA,
    ConfigError,
    assemble_report,
    cases_to_csv_rows,
    report_to_json,
    run_suites,
)

CONFIG_ERRORS = (ParseError, ParameterError, CatalogError, ConfigError,
                 TableFileError, TableError, RingError, ValueError)


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_params(params: Tuple[str, ...]) -> Optional[Dict]:
    if not params:
        return None
    spec = {}
    for chunk in params:
        for piece in chunk.split(","):
            piece = piece.strip()
            if not piece:
                continue
            name, _, rule = piece.partition("=")
            if not rule:
                raise ParameterError(f"bad --param entry {piece!r}; expected NAME=RULE")
            spec[name.strip()] = rule.strip()
    return spec


def _parse_complex(text: str) -> complex:
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise ParameterError(f"bad complex literal {text!r}") from None


def _resolve_seed(seed: Optional[int], spec: Dict) -> int:
    """--seed beats STARPROD_SEED beats the spec's own seed beats 42."""
    if seed is not None:
        return seed
    env = os.environ.get("STARPROD_SEED")
    if env:
        return int(env)
    return int(spec.get("seed", 42))


def _instance_from_flags(catalog, phi, d, params, hbar, ring_name, truncation):
    if phi:
        with open(phi, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
        # an explicit --ring overrides the file's declared ring
        ring = make_ring(ring_name, truncation_order=truncation) if ring_name else None
        table = table_from_dict(spec, hbar=hbar, ring=ring)
        return None, table, table.ring
    ring = make_ring(ring_name or "complex", truncation_order=truncation)
    if not catalog:
        raise ConfigError("need --catalog or --phi")
    rules = None
    param_spec = _parse_params(params)
    if param_spec:
        options = {}
        plain = {}
        for name, rule in param_spec.items():
            if name == "N":
                options["N"] = int(rule)
            elif name in ("lambda", "lam"):
                options["lambda"] = rule
            elif name == "c":
                options["c"] = rule.split(";")
            else:
                plain[name] = rule
        rules = ParameterCatalog.from_spec(plain) if plain else None
    else:
        options = {}
    inst = build_catalog(catalog, ring, d, rules, hbar, options)
    return inst, inst.table, ring


@click.group()
@click.version_option(package_name="starprod", prog_name="star")
def main():
    """Star products: evaluation, verification, states."""


@main.command("eval")
@click.option("--catalog", type=click.Choice(CATALOG_IDS), default=None)
@click.option("--phi", type=click.Path(exists=True), default=None,
              help="JSON file with a relation table")
@click.option("--d", type=int, default=None, help="dimension")
@click.option("--param", "params", multiple=True, help="NAME=RULE[,NAME=RULE...]")
@click.option("--hbar", "hbar_text", default=None,
              help="a float or a comma-separated list of floats")
@click.option("--ring", "ring_name", default=None,
              type=click.Choice(["rational", "complex", "series", "rational_q"]),
              help="defaults to complex, or to the table file's declared ring")
@click.option("--truncation", type=int, default=8)
@click.option("--lhs", required=True, help="left factor, polynomial text")
@click.option("--rhs", required=True, help="right factor, polynomial text")
@click.option("--json", "as_json", is_flag=True, default=False)
@click.option("--exact", is_flag=True, default=False, help="full-precision output")
def cmd_eval(catalog, phi, d, params, hbar_text, ring_name, truncation, lhs, rhs,
             as_json, exact):
    """Evaluate LHS * RHS and print the canonical result."""
    try:
        hbars = ([float(h) for h in hbar_text.split(",")] if hbar_text is not None
                 else [None])
    except ValueError:
        _fail(f"bad --hbar value {hbar_text!r}", 2)
        return
    digits = None if exact else 5
    payloads = []
    for hbar in hbars:
        try:
            inst, table, ring = _instance_from_flags(catalog, phi, d, params, hbar,
                                                     ring_name, truncation)
            dim = inst.dim if inst else table.dim
            kind = inst.kind if inst else table.kind
            env = inst.params if inst else None
            f = parse_poly(lhs, dim, ring, kind, params=env)
            g = parse_poly(rhs, dim, ring, kind, params=env)
        except CONFIG_ERRORS as exc:
            _fail(str(exc), 2)
            return
        try:
            if table is not None:
                trace = star_by_reduction(f, g, table)
                result, count = trace.result, trace.reduction_count
            else:
                result, count = inst.star(f, g), None
        except (StepLimitExceeded, PoleAtRootOfUnity) as exc:
            _fail(str(exc), 1)
            return
        payloads.append({"schema": SCHEMA, "catalog": catalog or "phi",
                         "hbar": hbar, "result": format_poly(result, digits=digits),
                         "reduction_count": count})
    if as_json:
        out = payloads[0] if len(payloads) == 1 else payloads
        click.echo(json.dumps(out, sort_keys=True))
        return
    for payload in payloads:
        prefix = f"hbar={payload['hbar']}: " if len(payloads) > 1 else ""
        click.echo(prefix + payload["result"])
        if payload["reduction_count"] is not None:
            click.echo(f"# reductions: {payload['reduction_count']}", err=True)


@main.command("verify")
@click.option("--spec", "spec_path", type=click.Path(exists=True), default=None,
              help="run-spec JSON; defaults to the bundled suite")
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="write per-case rows to this CSV file")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="print the JSON report to stdout")
@click.option("--cases", "include_cases", is_flag=True, default=False,
              help="include per-case rows in the JSON report")
@click.option("--timings", "include_timings", is_flag=True, default=False,
              help="include wall-clock timings (breaks byte-for-byte determinism)")
def cmd_verify(spec_path, seed, jobs, out_path, csv_path, as_json,
               include_cases, include_timings):
    """Run verification suites; exit 0 only if every probe passes."""
    try:
        if spec_path:
            with open(spec_path, "r", encoding="utf-8") as fh:
                spec = json.load(fh)
        else:
            spec = DEFAULT_RUNSPEC
        actual_seed = _resolve_seed(seed, spec)
        results = run_suites(spec, seed=actual_seed, jobs=max(1, jobs))
    except CONFIG_ERRORS as exc:
        _fail(str(exc), 2)
        return
    report = assemble_report(results, actual_seed, include_cases, include_timings)
    text = report_to_json(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerows(cases_to_csv_rows(results))
    if as_json or not out_path:
        click.echo(text, nl=False)
    for row in report["suites"]:
        status = "pass" if row["pass"] else "FAIL"
        click.echo(f"{status}  {row['catalog']:28s} {row['probe']:22s} "
                   f"hbar={row['hbar']}", err=True)
    sys.exit(0 if report["pass"] else 1)


@main.command("report")
@click.argument("inputs", nargs=-1, type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True, default=False)
def cmd_report(inputs, out_path, as_json):
    """Merge verify reports into one summary; later files win duplicate keys."""
    merged: Dict[Tuple, Dict] = {}
    for path in inputs:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            _fail(f"{path}: {exc}", 2)
            return
        if data.get("schema") != SCHEMA:
            _fail(f"{path}: schema mismatch (want {SCHEMA})", 2)
            return
        for row in data.get("suites", []):
            key = (row.get("catalog"), row.get("probe"), repr(row.get("hbar")))
            if key in merged:
                click.echo(f"warning: duplicate key {key}; {path} wins", err=True)
            merged[key] = row
    rows = [merged[k] for k in sorted(merged)]
    if as_json:
        text = json.dumps({"schema": SCHEMA, "suites": rows}, sort_keys=True, indent=2)
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            click.echo(text)
        return
    header = ["catalog", "probe", "hbar", "pass", "worst_margin", "case_count"]
    lines = [header] + [[str(r.get(h)) for h in header] for r in rows]
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerows(lines)
    else:
        for line in lines:
            click.echo(",".join(line))


def _state_from_flags(hbar: float, z_text: str) -> StateFunctional:
    z = tuple(_parse_complex(part) for part in z_text.split(","))
    return StateFunctional(WickPoint(z), hbar)


def _matrix_payload(M: np.ndarray) -> Dict:
    return {"shape": list(M.shape),
            "entries": [[float(v.real), float(v.imag)] for v in M.reshape(-1)]}


@main.command("gram")
@click.option("--catalog", default="wick_log_canonical",
              type=click.Choice(["wick_log_canonical"]))
@click.option("--hbar", type=float, required=True)
@click.option("--z", "z_text", required=True, help="comma-separated complex entries")
@click.option("--degree", type=int, default=3)
@click.option("--out", "out_path", type=click.Path(), default=None)
def cmd_gram(catalog, hbar, z_text, degree, out_path):
    """Gram matrix of the deformed evaluation at z."""
    try:
        state = _state_from_flags(hbar, z_text)
        basis, M = gram_matrix(state, degree)
    except CONFIG_ERRORS as exc:
        _fail(str(exc), 2)
        return
    check = psd_check(M)
    payload = {
        "schema": SCHEMA,
        "catalog": catalog,
        "hbar": hbar,
        "z": [[v.real, v.imag] for v in state.point.z],
        "degree": degree,
        "basis": [list(K) for K in basis],
        "gram": _matrix_payload(M),
        "psd": {"pass": check.passed, "min_eigenvalue": check.min_eigenvalue},
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(0 if check.passed else 1)


@main.command("gns")
@click.option("--catalog", default="wick_log_canonical",
              type=click.Choice(["wick_log_canonical"]))
@click.option("--hbar", type=float, required=True)
@click.option("--z", "z_text", required=True)
@click.option("--degree", type=int, default=3)
@click.option("--report", "report_path", type=click.Path(), default=None)
def cmd_gns(catalog, hbar, z_text, degree, report_path):
    """Quotient representation data from the deformed evaluation at z."""
    try:
        state = _state_from_flags(hbar, z_text)
        data = gns_build(state, degree)
    except CONFIG_ERRORS as exc:
        _fail(str(exc), 2)
        return
    payload = {
        "schema": SCHEMA,
        "catalog": catalog,
        "hbar": hbar,
        "z": [[v.real, v.imag] for v in state.point.z],
        "degree": degree,
        "basis": [list(K) for K in data.basis],
        "eigenvalues": [float(v) for v in data.eigenvalues],
        "rank": data.rank,
        "rank_gap_warning": data.rank_gap_warning,
        "adjoint_residual": data.adjoint_residual,
        "gram": _matrix_payload(data.gram),
        "operators": {f"w{i}": _matrix_payload(op) for i, op in data.operators.items()},
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
