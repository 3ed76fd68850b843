"""Command line entry point: ``dunkl-dihedral {coeffs,kernel,bessel,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 convergence failure.  Points are given as ``a,b``; use ``--x=-1,2`` for a
leading minus sign.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import b2integral, coeffs
from .errors import (
    ChartError,
    ConstantMismatchError,
    ConvergenceError,
    DegenerateMultiplicityError,
    RegularityError,
    SingularPointError,
    ValidationError,
)
from .group import Multiplicity
from .kernel import ConvergenceWarning, dunkl_kernel, generalized_bessel
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_CONVERGENCE = 0, 1, 2, 3
CSV_COLUMNS = ("quantity", "kind", "index", "orbit", "m", "value")


@dataclass
class RunConfig:
    command: str
    s: int
    k1: str
    k2: str | None
    x: tuple
    y: tuple
    tol: float
    max_degree: int
    nodes: int
    fmt: str
    suite: str
    m_max: int
    n_max: int
    method: str
    seed: int

    def multiplicity(self) -> Multiplicity:
        return Multiplicity.of(self.s, self.k1, self.k2)


def parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a point 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coordinate in {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int, default=4, help="dihedral order parameter (I2(s))")
    common.add_argument("--k1", default="1", help="multiplicity on the even-index roots")
    common.add_argument("--k2", default=None, help="multiplicity on the odd-index roots (defaults to k1)")
    common.add_argument("--x", type=parse_point, default=(1.0, 0.0))
    common.add_argument("--y", type=parse_point, default=(1.0, 0.0))
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--max-degree", type=int, default=40)
    common.add_argument("--nodes", type=int, default=64, help="Gauss-Jacobi nodes per measure")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="dunkl-dihedral", description="Dunkl kernels for dihedral root systems")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("coeffs", parents=[common], help="factorization and resolvent coefficient tables")
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=4)
    for name, helptext in (("kernel", "evaluate E_k(x, y)"), ("bessel", "evaluate the generalized Bessel function")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--method", choices=("series", "bessel-integral"), default="series")
    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.tol <= 0:
        raise ValidationError("--tol must be positive")
    if args.nodes < 1 or args.max_degree < 0:
        raise ValidationError("--nodes must be positive and --max-degree nonnegative")
    seed = int(os.environ.get("DUNKL_SEED", "42"))
    return RunConfig(
        command=args.command,
        s=args.s,
        k1=args.k1,
        k2=args.k2,
        x=args.x,
        y=args.y,
        tol=args.tol,
        max_degree=args.max_degree,
        nodes=args.nodes,
        fmt=args.fmt,
        suite=getattr(args, "suite", "all"),
        m_max=getattr(args, "m_max", 5),
        n_max=getattr(args, "n_max", 4),
        method=getattr(args, "method", "series"),
        seed=seed,
    )


# --- serialization ----------------------------------------------------------------


def to_json_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, complex):
        if value.imag == 0:
            return value.real
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {key: to_json_value(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    return str(value)


def to_csv_value(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, complex):
        return repr(value.real) if value.imag == 0 else f"{value.real!r}{value.imag:+}j"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([to_csv_value(row.get(c, "")) for c in columns])
    return buf.getvalue()


def write_json(payload) -> str:
    return json.dumps(to_json_value(payload), indent=2) + "\n"


# --- commands ---------------------------------------------------------------------


def coefficient_rows(k: Multiplicity, m_max: int, n_max: int) -> list[dict]:
    """``c_m(g)`` rows for ``m <= m_max`` then ``C_n(g)`` rows for ``1 <= n <= n_max``."""
    rows = []
    sys_ = k.system
    for g, orbit, m, value in coeffs.CoeffTable.build(k, m_max).rows():
        rows.append({"quantity": "c", "kind": g.kind, "index": g.index, "orbit": orbit, "m": m, "value": value})
    for n in range(1, n_max + 1):
        for g in sys_.elements:
            value = coeffs.C_n(n, g, k)
            rows.append({"quantity": "C", "kind": g.kind, "index": g.index, "orbit": sys_.element_orbit(g), "m": n, "value": value})
    return rows


def cmd_coeffs(cfg: RunConfig) -> tuple[str, int]:
    k = cfg.multiplicity()
    if cfg.m_max < 0 or cfg.n_max < 0:
        raise ValidationError("--m-max and --n-max must be nonnegative")
    rows = coefficient_rows(k, cfg.m_max, cfg.n_max)
    if cfg.fmt == "csv":
        return write_csv(rows, CSV_COLUMNS), EXIT_OK
    payload = {"s": k.s, "k1": k.k1, "k2": k.k2, "m_max": cfg.m_max, "n_max": cfg.n_max, "rows": rows}
    return write_json(payload), EXIT_OK


def _evaluate(cfg: RunConfig, averaged: bool) -> dict:
    k = cfg.multiplicity()
    if cfg.method == "bessel-integral":
        if averaged:
            value = complex(b2integral.bessel_quadrature(cfg.x, cfg.y, k, cfg.nodes))
        elif not any(cfg.y):
            value = 1 + 0j
        else:
            value = b2integral.kernel_integral_b2(cfg.x, cfg.y, k, cfg.nodes)
        return {"value_re": value.real, "value_im": value.imag, "N_used": None, "tail_estimate": None, "converged": True, "method": cfg.method, "nodes": cfg.nodes}
    func = generalized_bessel if averaged else dunkl_kernel
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        result = func(cfg.x, cfg.y, k, tol=cfg.tol, max_degree=cfg.max_degree)
    return {**result.as_dict(), "method": cfg.method}


def _value_command(cfg: RunConfig, averaged: bool) -> tuple[str, int]:
    report = _evaluate(cfg, averaged)
    code = EXIT_OK if report["converged"] else EXIT_CONVERGENCE
    if cfg.fmt == "csv":
        columns = ("value_re", "value_im", "N_used", "tail_estimate", "converged")
        return write_csv([report], columns), code
    return write_json(report), code


def cmd_kernel(cfg: RunConfig) -> tuple[str, int]:
    return _value_command(cfg, averaged=False)


def cmd_bessel(cfg: RunConfig) -> tuple[str, int]:
    return _value_command(cfg, averaged=True)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    k = cfg.multiplicity()
    results = run_suite(cfg.suite, k, seed=cfg.seed, nodes=cfg.nodes)
    passed = all(r.ok for r in results)
    code = EXIT_OK if passed else EXIT_VERIFY
    if cfg.fmt == "csv":
        rows = [r.as_dict() for r in results]
        return write_csv(rows, ("suite", "check", "status", "worst_residual", "tolerance")), code
    payload = {
        "suite": cfg.suite,
        "params": {"s": k.s, "k1": k.k1, "k2": k.k2, "seed": cfg.seed, "nodes": cfg.nodes},
        "passed": passed,
        "checks": [r.as_dict() for r in results],
    }
    return write_json(payload), code


COMMANDS = {"coeffs": cmd_coeffs, "kernel": cmd_kernel, "bessel": cmd_bessel, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = make_config(args)
        text, code = COMMANDS[cfg.command](cfg)
    except (ValidationError, ChartError, SingularPointError, DegenerateMultiplicityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, RegularityError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ConstantMismatchError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
