"""Command-line front end: JSON matrix reports and CSV grid scans.

Matrix interchange format (separate real/imaginary arrays, no complex
literals)::

    {"dim": 3, "re": [[...], ...], "im": [[...], ...]}

``im`` may be omitted for real matrices.  Reports go to standard output as
JSON; scans write CSV files.  Exit codes: 0 success, 1 domain or usage error,
2 I/O or parse failure.  All numeric output carries 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import ensemble, optimizer, polarization, regionmap
from .errors import PoldegError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

SCAN_COLUMNS = ("min_overlap", "p_hs", "p_pp", "p_u", "p_pu", "p_length", "p_purity")
DEGREE_MEASURES = ("hs", "length", "purity", "eigen", "sheppard")


class _UsageError(Exception):
    """Semantically invalid flag values (exit code 1)."""


class _ParseError(Exception):
    """Unreadable or malformed input document (exit code 2)."""


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round12(obj):
    """Recursively round floats to 12 significant digits for JSON emission."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise _ParseError(f"{path}: expected a JSON object")
    return doc


def _matrix_from_document(doc: dict) -> tuple[np.ndarray, dict]:
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise _ParseError("document needs an integer 'dim' field") from exc
    re = doc.get("re")
    im = doc.get("im")
    try:
        re_arr = np.asarray(re, dtype=float)
        im_arr = np.zeros((dim, dim)) if im is None else np.asarray(im, dtype=float)
    except (TypeError, ValueError) as exc:
        raise _ParseError("'re'/'im' must be rectangular numeric arrays") from exc
    if re_arr.shape != (dim, dim) or im_arr.shape != (dim, dim):
        raise _ParseError(
            f"'re'/'im' must be {dim}x{dim} arrays, got {re_arr.shape} and {im_arr.shape}"
        )
    echo = {"dim": dim, "re": re_arr.tolist(), "im": im_arr.tolist()}
    return re_arr + 1j * im_arr, echo


def _load_state(path: str, expect_dim=None) -> tuple[polarization.CoherenceMatrix, dict]:
    raw, echo = _matrix_from_document(_load_document(path))
    if expect_dim is not None and echo["dim"] != expect_dim:
        raise _UsageError(f"--dim {expect_dim} does not match the document (dim {echo['dim']})")
    return polarization.make_coherence(raw), echo


def _report_body(rho: polarization.CoherenceMatrix, measures=None) -> dict:
    report = polarization.build_degree_report(rho)
    body = {"dim": report.dim, "eigenvalues": list(report.eigenvalues),
            "stokes": polarization.to_stokes(rho).tolist(), "method": report.method}
    selected = set(DEGREE_MEASURES if measures is None else measures)
    degrees = {}
    if "hs" in selected:
        degrees["p_hs"] = report.p_hs
    if "length" in selected:
        degrees["p_length"] = report.p_length
    if "purity" in selected:
        degrees["p_purity"] = report.p_purity
    if "eigen" in selected:
        degrees["p_eigen"] = polarization.degree_eigen(rho)
    if "sheppard" in selected and report.dim == 3:
        degrees["p_pp"] = report.p_pp
        degrees["p_u"] = report.p_u
        degrees["p_pu"] = report.p_pu
    body["degrees"] = degrees
    return body


def _emit(payload: dict) -> None:
    print(json.dumps(_round12(payload), indent=2))


def _parse_measures(spec: str | None):
    if spec is None:
        return None
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in DEGREE_MEASURES:
            raise _UsageError(
                f"unknown measure {name!r}; choose from {', '.join(DEGREE_MEASURES)}"
            )
    return names


def cmd_degree(args) -> int:
    rho, echo = _load_state(args.input, args.dim)
    payload = {"input": echo}
    payload.update(_report_body(rho, _parse_measures(args.measure)))
    _emit(payload)
    return EXIT_OK


def cmd_stokes(args) -> int:
    rho, echo = _load_state(args.input, args.dim)
    n = polarization.to_stokes(rho)
    _emit({"input": echo, "dim": rho.dim, "stokes": n.tolist(),
           "norm": float(np.linalg.norm(n))})
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.samples < 1:
        raise _UsageError("--samples must be at least 1")
    if args.sweeps < 0:
        raise _UsageError("--sweeps must be non-negative")
    rho, echo = _load_state(args.input, args.dim)
    analytic = optimizer.degree_hs_analytic(rho)
    oracle = optimizer.degree_hs_oracle(rho, args.samples, args.seed, args.sweeps)
    payload = {"input": echo}
    payload.update(_report_body(rho))
    payload["analytic"] = {"min_overlap": analytic.min_overlap, "degree": analytic.degree}
    payload["oracle"] = {
        "samples": args.samples,
        "seed": args.seed,
        "sweeps": args.sweeps,
        "min_overlap": oracle.min_overlap,
        "degree": oracle.degree,
    }
    payload["gap_to_analytic"] = oracle.min_overlap - analytic.min_overlap
    _emit(payload)
    return EXIT_OK


def cmd_simulate(args) -> int:
    rho, echo = _load_state(args.input, args.dim)
    if args.shots < rho.dim:
        raise _UsageError(f"--shots must be at least the dimension ({rho.dim})")
    ens = ensemble.sample_ensemble(rho, args.shots, args.seed)
    rho_hat = ensemble.estimate_coherence(ens)
    payload = {"input": echo, "shots": args.shots, "seed": args.seed,
               "prescribed": _report_body(rho), "estimated": _report_body(rho_hat)}
    _emit(payload)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.resolution < 2:
        raise _UsageError("--resolution must be at least 2")
    grid = regionmap.evaluate_grid(regionmap.build_grid(args.resolution))
    header = "n3,n8,inside," + ",".join(SCAN_COLUMNS)
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for n3, n8, inside, vals in grid.cells():
                row = [_fmt(n3), _fmt(n8), "1" if inside else "0"]
                row += [_fmt(vals.get(c, float("nan"))) for c in SCAN_COLUMNS]
                fh.write(",".join(row) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poldeg",
        description="Degrees of polarization for 2D and 3D coherence matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p):
        p.add_argument("--input", required=True, help="path to a matrix JSON document")
        p.add_argument("--dim", type=int, choices=(2, 3),
                       help="require the document to have this dimension")

    p = sub.add_parser("degree", help="closed-form degree report for one matrix")
    add_input_flags(p)
    p.add_argument("--measure", help="comma list from: " + ",".join(DEGREE_MEASURES))
    p.set_defaults(fn=cmd_degree)

    p = sub.add_parser("stokes", help="Stokes components and vector norm")
    add_input_flags(p)
    p.set_defaults(fn=cmd_stokes)

    p = sub.add_parser("oracle", help="brute-force minimization vs the analytic value")
    add_input_flags(p)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sweeps", type=int, default=20)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("simulate", help="finite-shot estimation of a prescribed state")
    add_input_flags(p)
    p.add_argument("--shots", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("scan", help="rasterize the (n3, n8) triangle to CSV")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(fn=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PoldegError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
