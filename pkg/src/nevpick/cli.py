"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success or Inconclusive, 3 Infeasible, 1 input error,
2 numerical failure.  Machine output goes to stdout as deterministic JSON;
``--verbose`` adds a short human summary on stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from typing import List, Optional

import numpy as np

from . import serialization as ser
from .config import DEFAULT, Config
from .errors import AssertionReport, InputError, NevpickError, NumericalError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_INFEASIBLE = 3

SUBCOMMANDS = ("check2", "check3", "minpoly", "funcalc", "spectra", "homotopy", "symmap", "selftest")


def _common(suppress: bool) -> argparse.ArgumentParser:
    # defaults are suppressed so options given before or after the subcommand both stick
    d = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="FILE", default=d, help="JSON file with Config fields")
    p.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="human summary on stderr")
    for f in fields(Config):
        kind = int if f.type in ("int", int) else float
        p.add_argument("--" + f.name.replace("_", "-"), dest=f.name, type=kind, default=d, metavar="X")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(
        prog="nevpick",
        description="Spectral Nevanlinna-Pick necessary conditions and matrix functional calculus.",
        parents=[common],
    )
    parser.add_argument("--schema", action="store_true", help="print the JSON schemas and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("check2", parents=[common], help="two-point necessary condition")
    p.add_argument("--input", required=True, metavar="FILE", help="dataset JSON with two nodes")
    p = sub.add_parser("check3", parents=[common], help="three-point necessary condition")
    p.add_argument("--input", required=True, metavar="FILE", help="dataset JSON with three nodes")
    p = sub.add_parser("minpoly", parents=[common], help="predicted and brute-force minimal polynomials")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--function", metavar="FILE", help="HoloFunction JSON; omit for the minimal polynomial of A")
    p = sub.add_parser("funcalc", parents=[common], help="evaluate f(A)")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--function", required=True, metavar="FILE")
    p = sub.add_parser("spectra", parents=[common], help="clustered eigenvalues, indices, projections")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p.add_argument("--full", action="store_true", help="include spectral projections")
    p = sub.add_parser("homotopy", parents=[common], help="sample the isospectral path of A")
    p.add_argument("--matrix", required=True, metavar="FILE")
    p = sub.add_parser("symmap", parents=[common], help="apply Sigma^n phi to a SymPoint")
    p.add_argument("--point", required=True, metavar="FILE")
    p.add_argument("--function", required=True, metavar="FILE")
    p.add_argument("--disc", action="store_true", help="require the roots to lie in the unit disc")
    p = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    p.add_argument("--trials", type=int, default=40, help="trials per randomized check")
    return parser


def _config(ns: argparse.Namespace) -> Config:
    cfg = DEFAULT
    path = getattr(ns, "config", None)
    if path:
        try:
            cfg = Config.from_json_file(path)
        except FileNotFoundError as exc:
            raise InputError(f"config file not found: {path}", field="config") from exc
        except InputError as exc:
            exc.field = f"config:{exc.field}"
            raise
    overrides = {f.name: getattr(ns, f.name) for f in fields(Config) if getattr(ns, f.name, None) is not None}
    return Config.from_mapping(overrides, cfg) if overrides else cfg


def _load(path: str, what: str):
    return ser.load_json_file(path, what)


def _prefixed(exc: InputError, what: str) -> InputError:
    exc.field = f"{what}:{exc.field or '/'}"
    return exc


def _decode(decoder, path: str, what: str, *args):
    raw = _load(path, what)
    try:
        return decoder(raw, *args)
    except InputError as exc:
        raise _prefixed(exc, what)


def _cmd_check(ns, cfg, n_points: int):
    from .nptest import check_three_point, check_two_point

    data = _decode(lambda v: ser.dataset_from_json(v, cfg), ns.input, "input")
    if data.N != n_points:
        raise InputError(f"{ns.command} needs {n_points} nodes, got {data.N}", field="input:/nodes")
    verdict = check_two_point(data, cfg) if n_points == 2 else check_three_point(data, cfg)
    code = EXIT_INFEASIBLE if verdict.infeasible else EXIT_OK
    summary = f"{verdict.status}"
    if verdict.witness and "lhs" in verdict.witness:
        summary += f" (lhs {verdict.witness['lhs']:.12g}, rhs {verdict.witness['rhs']:.12g})"
    return verdict.to_json(), code, summary


def _poly_json(p) -> dict:
    return {"coeffs": p.to_json()["coeffs"], "degree": p.degree}


def _cmd_minpoly(ns, cfg):
    from .funcalc import apply, predict_minpoly
    from .spectra import minimal_polynomial, minimal_polynomial_oracle, spectral_data

    A = _decode(ser.matrix_from_json, ns.matrix, "matrix")
    sd = spectral_data(A, cfg)
    if ns.function is None:
        pred = minimal_polynomial(A, cfg, sd)
        orc = minimal_polynomial_oracle(A, cfg)
        out = {"predicted": _poly_json(pred), "oracle": _poly_json(orc)}
    else:
        f = _decode(ser.function_from_json, ns.function, "function")
        prediction = predict_minpoly(f, A, cfg, sd)
        M, mag = apply(f, A, cfg, sd, return_scale=True)
        orc = minimal_polynomial_oracle(M, cfg, scale=mag)
        pred = prediction.poly
        out = {
            "predicted": _poly_json(pred),
            "factors": [{"nu": ser.complex_to_json(nu), "exponent": k} for nu, k in prediction.factors],
            "oracle": _poly_json(orc),
            "constant_on_spectrum": prediction.constant_on_spectrum,
            "notes": prediction.notes,
        }
    out["degree_match"] = pred.degree == orc.degree
    return out, EXIT_OK, f"predicted degree {pred.degree}, oracle degree {orc.degree}"


def _cmd_funcalc(ns, cfg):
    from .funcalc import apply

    A = _decode(ser.matrix_from_json, ns.matrix, "matrix")
    f = _decode(ser.function_from_json, ns.function, "function")
    M = apply(f, A, cfg)
    return {"result": ser.matrix_to_json(M)}, EXIT_OK, f"f(A) computed, ||f(A)||_F = {np.linalg.norm(M):.6g}"


def _cmd_spectra(ns, cfg):
    from .polynomials import pi_n
    from .spectra import minimal_polynomial, spectral_data

    A = _decode(ser.matrix_from_json, ns.matrix, "matrix")
    sd = spectral_data(A, cfg)
    out = sd.to_json(full=ns.full)
    out["spectral_radius"] = max(abs(lam) for lam in sd.values)
    out["chi"] = [ser.complex_to_json(x) for x in pi_n([lam for lam, a, _ in sd.eigs for _ in range(a)])]
    out["minimal_polynomial"] = _poly_json(minimal_polynomial(A, cfg, sd))
    return out, EXIT_OK, f"{len(sd.eigs)} distinct eigenvalue(s), indices {list(sd.indices)}"


def _cmd_homotopy(ns, cfg):
    from .isospec import path_report

    A = _decode(ser.matrix_from_json, ns.matrix, "matrix")
    rep = path_report(A, cfg)
    code = EXIT_OK if rep.passed else EXIT_NUMERICAL
    return rep.to_json(), code, f"max deviation {rep.max_deviation:.3e} (tolerance {rep.tolerance:.3e})"


def _cmd_symmap(ns, cfg):
    from .symprod import InducedMap, sigma_n_phi

    X = _decode(ser.sym_point_from_json, ns.point, "point")
    f = _decode(ser.function_from_json, ns.function, "function")
    Y = sigma_n_phi(InducedMap(f, X.size, disc_domain=ns.disc), X, cfg)
    return {"result": ser.sym_point_to_json(Y)}, EXIT_OK, f"mapped a point of Sigma^{X.size}"


def _cmd_selftest(ns, cfg):
    from .selftest import run_selftest

    results = run_selftest(cfg, trials=ns.trials)
    ok = all(r["passed"] for r in results)
    return {"passed": ok, "checks": results}, EXIT_OK if ok else EXIT_NUMERICAL, "\n".join(
        f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}" for r in results
    )


def schema() -> dict:
    out = dict(ser.SCHEMAS)
    out["Config"] = {f.name: {"type": "int" if f.type in ("int", int) else "float", "default": getattr(DEFAULT, f.name)} for f in fields(Config)}
    out["exit_codes"] = {"0": "success / inconclusive", "1": "input error", "2": "numerical failure", "3": "infeasible"}
    return out


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; --help exits 0, misuse exits 2 -> input error
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    verbose = getattr(ns, "verbose", False)
    if ns.schema:
        stdout.write(ser.dumps(schema()) + "\n")
        return EXIT_OK
    if ns.command is None:
        parser.print_usage(stderr)
        stdout.write(ser.dumps({"error": {"type": "InputError", "message": "no command given", "field": "command"}}) + "\n")
        return EXIT_INPUT
    handlers = {
        "check2": lambda ns, cfg: _cmd_check(ns, cfg, 2),
        "check3": lambda ns, cfg: _cmd_check(ns, cfg, 3),
        "minpoly": _cmd_minpoly,
        "funcalc": _cmd_funcalc,
        "spectra": _cmd_spectra,
        "homotopy": _cmd_homotopy,
        "symmap": _cmd_symmap,
        "selftest": _cmd_selftest,
    }
    try:
        cfg = _config(ns)
        out, code, summary = handlers[ns.command](ns, cfg)
    except InputError as exc:
        return _fail(stdout, stderr, verbose, exc, EXIT_INPUT)
    except (NumericalError, AssertionReport) as exc:
        return _fail(stdout, stderr, verbose, exc, EXIT_NUMERICAL)
    except NevpickError as exc:
        return _fail(stdout, stderr, verbose, exc, EXIT_NUMERICAL)
    stdout.write(ser.dumps(out) + "\n")
    if verbose:
        stderr.write(f"{ns.command}: {summary}\n")
    return code


def _fail(stdout, stderr, verbose, exc, code) -> int:
    err = {"type": type(exc).__name__, "message": str(exc)}
    field = getattr(exc, "field", None)
    if field is not None:
        err["field"] = field
    stdout.write(ser.dumps({"error": err}) + "\n")
    if verbose:
        stderr.write(f"error ({type(exc).__name__}): {exc}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
