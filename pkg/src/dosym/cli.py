"""Command-line entry point: ``dosym {dos,bcs,bec,verify,bench}``.

Exit codes: 0 ok, 1 usage or parse error, 2 numerical non-convergence,
3 verification failure. Options may also come from ``--config FILE``
holding ``key = value`` lines; flags given on the command line win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import bcs, bec
from .numerics import BracketError, ConvergenceError
from .operators import Operator, thermal_state
from .spin_models import (
    ManySpinSpec,
    build_hamiltonian,
    dos_ground_closed,
    dos_h_closed,
    dos_thermal_closed,
    ground_state,
)
from .symmetry import GroupSpec, dos_hamiltonian, dos_state
from .verify import SUITES, random_hermitian, run_suites

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3
MAX_SEED = 2**64 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x) -> str:
    """Round-trip float formatting (17 significant digits)."""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        values["lambda_" if key == "lambda" else key] = value
    return values


def _seed(text: str) -> int:
    seed = int(text)
    if not 0 <= seed <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return seed


def _csv_floats(values) -> list[float]:
    if values is None:
        return []
    if isinstance(values, str):
        values = [values]
    out = []
    for v in values:
        out.extend(float(x) for x in str(v).replace(",", " ").split())
    return out


def _beta_grid(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        count = int(count)
        if count < 1:
            raise ValueError
        return np.linspace(float(start), float(stop), count)
    except ValueError:
        raise argparse.ArgumentTypeError("beta grid must be start:stop:count with count >= 1") from None


def build_parser() -> _Parser:
    parser = _Parser(prog="dosym", description="Degree of symmetry under products of SO(2).")
    parser.add_argument("--config", help="key = value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dos", help="degree of symmetry of the spin model or a matrix")
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--lambda", dest="lambda_", type=float)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--beta", type=float, help="inverse temperature; omitted means ground state")
    p.add_argument("--matrix", help="Hamiltonian as .npy or whitespace text (complex allowed)")
    p.add_argument("--method", default="pinching,closed",
                   help="comma list of pinching, quadrature, monte_carlo, closed")
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("bcs", help="gap and degree-of-symmetry curves vs T/Tc")
    p.add_argument("--g0ktc", nargs="+", help="one or more g(0) k_B T_c values")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--g0v", type=float, default=0.2)
    p.add_argument("--t-max", type=float, default=1.2)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("bec", help="order parameter and degree of symmetry vs beta")
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--lambda", dest="lambda_", type=float)
    p.add_argument("--beta-grid", type=_beta_grid, default="0:5:50")
    p.add_argument("--a0", type=float, help="order parameter for the large-N form")
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run the oracle and identity suites")
    p.add_argument("--suite", action="append", help=f"one of: {', '.join(SUITES)}")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--modes", type=int, default=2)
    p.add_argument("--out")

    p = sub.add_parser("bench", help="time the three averaging routes")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=_seed, default=0)
    return parser


def _config_defaults(sub: argparse.ArgumentParser, config: dict[str, str]) -> dict:
    actions = {a.dest: a for a in sub._actions if a.dest != "help"}
    unknown = sorted(set(config) - set(actions))
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(unknown)}")
    defaults = {}
    for key, value in config.items():
        action = actions[key]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise UsageError(f"config key {key} expects a boolean")
            defaults[key] = value.lower() in ("true", "1", "yes")
        elif isinstance(action, argparse._AppendAction) or action.nargs == "+":
            defaults[key] = [value]
        else:
            defaults[key] = value  # argparse applies the option's type to string defaults
    return defaults


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError(parser.format_usage().strip())
    if args.config:
        try:
            config = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        sub = parser._subparsers._group_actions[0].choices[args.command]
        sub.set_defaults(**_config_defaults(sub, config))
        args = parser.parse_args(argv)
    return args


# --- output -------------------------------------------------------------------


def _emit(rows: list[dict], fieldnames: list[str], fmt_name: str, out: str | None) -> None:
    if fmt_name == "json":
        text = json.dumps([{k: r[k] for k in fieldnames} for r in rows], indent=2, default=float) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fieldnames)
        for r in rows:
            w.writerow([fmt(r[k]) for k in fieldnames])
        text = buf.getvalue()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.rstrip("_").replace("_", "-") for n in missing)
        raise UsageError(f"dosym {args.command}: missing required option(s): {flags}")


def _load_matrix(path: str) -> Operator:
    try:
        m = np.load(path) if path.endswith(".npy") else np.loadtxt(path, dtype=complex)
        return Operator(np.atleast_2d(m), hermitian=True)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix {path}: {exc}") from exc


# --- commands -------------------------------------------------------------------


def cmd_dos(args) -> int:
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    allowed = {"pinching", "quadrature", "monte_carlo", "closed"}
    if not methods or set(methods) - allowed:
        raise UsageError(f"--method must be a comma list drawn from {sorted(allowed)}")
    if "monte_carlo" in methods and args.seed is None:
        raise UsageError("monte_carlo needs --seed")
    if args.beta is not None and args.beta < 0:
        raise UsageError("--beta must be non-negative")

    rows = []

    def add(target, method, value, err=0.0, detail=""):
        rows.append({"target": target, "method": method, "value": value,
                     "error_estimate": err, "detail": detail})

    def matrix_rows(target, fn, operand, group):
        for i, m in enumerate(x for x in methods if x != "closed"):
            r = fn(operand, group, m, nodes=args.nodes, samples=args.samples, seed=args.seed, stream=i)
            detail = ";".join(f"{k}={v}" for k, v in sorted(r.detail.items()))
            add(target, r.method, r.value, r.error_estimate, detail)

    if args.matrix:
        if "closed" in methods:
            raise UsageError("closed-form values need a spin-model spec, not --matrix")
        h = _load_matrix(args.matrix)
        matrix_rows("hamiltonian", dos_hamiltonian, h, GroupSpec.for_dim(h.dim))
    else:
        _require(args, "n", "eps", "lambda_")
        try:
            spec = ManySpinSpec(args.n, args.eps, args.lambda_, args.mu)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        state_target = "ground" if args.beta is None else "thermal"
        if "closed" in methods:
            add("hamiltonian", "closed_form", dos_h_closed(spec))
            if args.beta is None:
                add(state_target, "closed_form", dos_ground_closed(spec))
            else:
                add(state_target, "closed_form", dos_thermal_closed(spec, args.beta))
        if any(m != "closed" for m in methods):
            h = build_hamiltonian(spec)
            group = GroupSpec(spec.n)
            matrix_rows("hamiltonian", dos_hamiltonian, h, group)
            rho = ground_state(spec) if args.beta is None else thermal_state(h, args.beta)
            matrix_rows(state_target, dos_state, rho, group)
    rows.sort(key=lambda r: (r["target"], r["method"]))
    _emit(rows, ["target", "method", "value", "error_estimate", "detail"], args.format, args.out)
    return EXIT_OK


def cmd_bcs(args) -> int:
    values = _csv_floats(args.g0ktc)
    if not values:
        raise UsageError("dosym bcs: missing required option(s): --g0ktc")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if any(v <= 0 for v in values):
        raise UsageError("--g0ktc values must be positive")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for g in sorted(values):
        rows = bcs.figure1_data(g, args.points, g0v=args.g0v, t_max=args.t_max)
        path = out_dir / f"bcs_g0ktc_{g:g}.{args.format}"
        _emit(rows, ["t_over_tc", "delta_over_delta0", "dos"], args.format, str(path))
        print(path)
    return EXIT_OK


def cmd_bec(args) -> int:
    if args.asymptotic:
        _require(args, "a0")
        rows = [{"a0": args.a0, "dos_large_n": bec.dos_ground_bec_large_n(args.a0)}]
        fields = ["a0", "dos_large_n"]
        if args.n is not None:
            rows[0]["n"] = args.n
            rows[0]["dos_finite_n"] = bec.dos_ground_from_order(args.n, args.a0)
            fields = ["n", "a0", "dos_finite_n", "dos_large_n"]
        _emit(rows, fields, args.format, args.out)
        return EXIT_OK
    _require(args, "n", "eps", "lambda_")
    try:
        spec = bec.BecSpec(args.n, args.eps, args.lambda_)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    grid = args.beta_grid
    if np.any(grid < 0):
        raise UsageError("beta grid must be non-negative")
    rows = [
        {
            "beta": float(b),
            "order_parameter": float(bec.order_parameter_finite_t(spec, b)),
            "dos_eq35": bec.dos_thermal_bec(spec, b),
            "dos_eq36": bec.dos_thermal_bec_order(spec, b),
        }
        for b in grid
    ]
    _emit(rows, ["beta", "order_parameter", "dos_eq35", "dos_eq36"], args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = []
    for s in args.suite or []:
        names.extend(x.strip() for x in s.split(",") if x.strip())
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    if not 1 <= args.modes <= 3:
        raise UsageError("--modes must lie in 1..3")
    results = run_suites(names, seed=args.seed, modes=args.modes)
    lines = [f"# dosym verify seed={args.seed} modes={args.modes}",
             "# BCS pseudospin convention: two levels per mode for H; four Fock states per mode for rho_T"]
    lines += [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append("ALL PASS" if ok else "FAILED")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    h = random_hermitian(rng, 2**args.n)
    group = GroupSpec(args.n)
    for method in ("pinching", "quadrature", "monte_carlo"):
        t0 = time.perf_counter()
        r = dos_hamiltonian(h, group, method, nodes=args.nodes, samples=args.samples, seed=args.seed)
        dt = time.perf_counter() - t0
        print(f"{method:12s} value={fmt(r.value)} err={fmt(r.error_estimate)} seconds={dt:.4f}")
    return EXIT_OK


COMMANDS = {"dos": cmd_dos, "bcs": cmd_bcs, "bec": cmd_bec, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, BracketError) as exc:
        print(f"dosym: numerical failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
