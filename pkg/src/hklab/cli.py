"""Command-line entry point: ``hklab <verb> [flags]``.

JSON goes to ``--out`` (or standard output), human-readable diagnostics to
standard error.  Exit codes: 0 success, 2 usage error, 3 numerical failure,
4 input validation failure.  ``HKLAB_TOL`` overrides the residual tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import serialize
from .errors import HKLabError, InputError, NumericalFailure, ShapeMismatch
from .involution import FAMILIES, RealFormSpec, alpha_gl_details, beta_gl, theta_form
from .ks import ks_table_gl, poset_to_dot, table_text
from .linalg import Tolerances, as_matrix, charpoly_drift, jordan_type, matrix_from_json, matrix_to_json
from .mv import EncodedPoint, balance, decode, encode
from .quiver import QuiverRep
from .springer import HECKE_FAMILIES, hecke_parameters, semismall_check_gl
from .tracer import trace, verify_ks_endpoint
from .verify import SuiteConfig, run_suite

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_INPUT = 0, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _tolerances() -> Tolerances:
    tol = Tolerances()
    raw = os.environ.get("HKLAB_TOL")
    if raw is None or raw.strip() == "":
        return tol
    try:
        val = float(raw)
    except ValueError:
        raise InputError(f"HKLAB_TOL={raw!r} is not a number") from None
    if not (np.isfinite(val) and val > 0):
        raise InputError(f"HKLAB_TOL must be positive, got {raw!r}")
    return tol.with_residual(val)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _read_matrix(path: str) -> np.ndarray:
    """Matrix object ``{rows, cols, data}`` or a nested list of reals."""
    obj = _read_json(path)
    if isinstance(obj, dict) and "matrix" in obj and "rows" not in obj:
        obj = obj["matrix"]
    if isinstance(obj, list):
        try:
            A = np.array(obj, dtype=float)
        except (TypeError, ValueError):
            raise ShapeMismatch("nested-list matrices must hold real numbers") from None
        return as_matrix(A)
    return matrix_from_json(obj)


def _read_rep(path: str) -> QuiverRep:
    obj = _read_json(path)
    if isinstance(obj, dict) and "rep" in obj:
        obj = obj["rep"]
    return QuiverRep.from_json(obj)


def _write(obj, path: str | None, text: bool = False) -> None:
    out = obj if text else serialize.dumps(obj) + "\n"
    if path is None or path == "-":
        sys.stdout.write(out)
    else:
        with open(path, "w") as fh:
            fh.write(out)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _balance_table(report) -> str:
    rows = [f"balance: {report.iterations} iterations, "
            f"|mu_R| {report.initial_residual:.3e} -> {report.final_residual:.3e}",
            "  step        eps   |mu_R|"]
    hist = report.step_history
    shown = list(enumerate(hist, 1))
    if len(shown) > 12:
        shown = shown[:6] + [None] + shown[-5:]
    for item in shown:
        if item is None:
            rows.append("   ...")
            continue
        i, (eps, r) = item
        rows.append(f"  {i:4d}  {eps:9.3e}  {r:.3e}")
    return "\n".join(rows)


# ------------------------------------------------------------------ verbs

def _cmd_encode(args, tol):
    M = _read_matrix(args.inp)
    pt = encode(M, tol, order=args.order, balanced=not args.no_balance, max_iter=args.max_iter)
    _log(f"encode: n={M.shape[0]} level residual {pt.level_residual:.3e}")
    if not args.no_balance:
        _log(_balance_table(pt.balance))
    _write(pt, args.out)


def _cmd_decode(args, tol):
    rep = _read_rep(args.inp)
    _write(matrix_to_json(decode(rep)), args.out)


def _cmd_balance(args, tol):
    obj = _read_json(args.inp)
    rep = QuiverRep.from_json(obj["rep"] if isinstance(obj, dict) and "rep" in obj else obj)
    out, report = balance(rep, tol, args.max_iter)
    _log(_balance_table(report))
    if isinstance(obj, dict) and "zeta" in obj:
        pt = EncodedPoint.from_json(obj)
        _write(EncodedPoint(out, pt.zeta, report, pt.kappa, pt.order, pt.level_residual,
                            pt.framed_dims), args.out)
    else:
        _write({"rep": out, "balance": report}, args.out)


def _cmd_involve(args, tol):
    M = _read_matrix(args.inp)
    if args.form == "gl":
        form = None
        src = M
    else:
        form = RealFormSpec(args.form, M.shape[0], args.p)
        src = beta_gl(theta_form(form, M, tol))
    out, pt, _ = alpha_gl_details(src, args.a, tol)
    report = {
        "form": "gl" if form is None else form.to_json(),
        "a": args.a,
        "level_residual": pt.level_residual,
        "balance": pt.balance,
        "zeta": pt.zeta,
        "jordan_input": jordan_type(M, tol),
        "jordan_output": jordan_type(out, tol),
        "charpoly_drift": charpoly_drift(out, src),
    }
    _log(f"involve: a={args.a} drift {report['charpoly_drift']:.3e}, "
         f"|mu_R| {pt.balance.final_residual:.3e}")
    _write(matrix_to_json(out), args.out)
    if args.report:
        _write(report, args.report)


def _cmd_trace(args, tol):
    M = _read_matrix(args.inp)
    path = trace(M, args.steps, tol)
    check = verify_ks_endpoint(path, tol)
    d = path.diagnostics
    _log(f"trace: {len(path.samples)} samples, {d.get('halvings', 0)} halvings, "
         f"symmetry residual {check['symmetry_residual']:.3e}, "
         f"drift {check['spectral_drift']:.3e}, jordan constant {check['jordan_constant']}")
    obj = path.to_json()
    obj["diagnostics"] = dict(obj["diagnostics"], endpoint_check=check)
    _write(obj, args.out)


def _cmd_ks(args, tol):
    table = ks_table_gl(args.n)
    if args.format == "table":
        _write(table_text(table), args.out, text=True)
    elif args.format == "dot":
        _write(poset_to_dot(table.real_poset), args.out, text=True)
    else:
        _write(table, args.out)


def _cmd_hecke(args, tol):
    pres = hecke_parameters(args.form, args.n, args.p)
    if args.format == "text":
        lines = [f"{args.form} n={args.n}: {pres.kind}"]
        lines += [f"  {r}" for r in pres.relations()]
        _write("\n".join(lines) + "\n", args.out, text=True)
    else:
        _write(pres, args.out)


def _cmd_semismall(args, tol):
    rows = semismall_check_gl(args.n)
    if args.format == "json":
        _write(rows, args.out)
        return
    head = f"{'partition':<14}{'orbit_dim':>10}{'fiber_dim':>10}{'bound':>8}  holds"
    body = [f"{str(tuple(r['partition'])):<14}{r['orbit_dim']:>10}{r['fiber_dim']:>10}"
            f"{r['bound']:>8g}  {r['holds']}" for r in rows]
    _write("\n".join([head] + body) + "\n", args.out, text=True)


def _cmd_verify(args, tol):
    cfg = SuiteConfig(n_max=args.nmax, seed=args.seed, samples_per_case=args.samples,
                      tolerances=tol)
    rep = run_suite(cfg)
    for cid, res in sorted(rep.claims.items()):
        _log(f"{'PASS' if res.passed else 'FAIL'}  {cid}  max residual {res.max_residual:.3e}")
    _write(rep, args.out)
    return EXIT_OK if rep.all_passed else EXIT_NUMERIC


# ------------------------------------------------------------------ parser

def _unit_interval(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid float {text!r}") from None
    if not 0.0 <= a <= 1.0:
        raise argparse.ArgumentTypeError("a must lie in [0, 1]")
    return a


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hklab", allow_abbrev=False,
                description="Interpolating involutions on matrices with real spectrum.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_, func):
        s = sub.add_parser(name, help=help_, allow_abbrev=False)
        s.set_defaults(func=func)
        return s

    s = verb("encode", "matrix -> balanced quiver representation", _cmd_encode)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.add_argument("--order", choices=("decreasing", "increasing"), default="decreasing")
    s.add_argument("--no-balance", action="store_true")
    s.add_argument("--max-iter", type=_positive, default=2000)

    s = verb("decode", "quiver representation -> matrix", _cmd_decode)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")

    s = verb("balance", "move a representation to mu_R = 0", _cmd_balance)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.add_argument("--max-iter", type=_positive, default=2000)

    s = verb("involve", "apply alpha_a", _cmd_involve)
    s.add_argument("--form", default="gl", choices=("gl",) + FAMILIES)
    s.add_argument("--p", type=int)
    s.add_argument("--a", type=_unit_interval, required=True)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.add_argument("--report")

    s = verb("trace", "follow the fixed point from a real to a symmetric matrix", _cmd_trace)
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--steps", type=_positive, default=16)
    s.add_argument("--out")

    s = verb("ks", "paired nilpotent orbit posets for gl_n", _cmd_ks)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--format", choices=("table", "dot", "json"), default="table")
    s.add_argument("--out")

    s = verb("hecke", "Hecke algebra parameters of a real form", _cmd_hecke)
    s.add_argument("--form", choices=HECKE_FAMILIES, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--out")

    s = verb("semismall", "fiber dimension table for the real Springer map", _cmd_semismall)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.add_argument("--out")

    s = verb("verify", "run the property suites", _cmd_verify)
    s.add_argument("--nmax", type=_positive, default=4)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--samples", type=_positive, default=2)
    s.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _log(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        tol = _tolerances()
        code = args.func(args, tol)
    except NumericalFailure as exc:
        _log(f"error: {type(exc).__name__}: {exc}")
        report = getattr(exc, "report", None)
        if report is not None:
            try:
                _log(serialize.dumps(report))
            except TypeError:
                _log(repr(report))
        return EXIT_NUMERIC
    except (InputError, ValueError) as exc:
        _log(f"error: {type(exc).__name__}: {exc}")
        return EXIT_INPUT
    except HKLabError as exc:
        _log(f"error: {type(exc).__name__}: {exc}")
        return EXIT_NUMERIC
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
