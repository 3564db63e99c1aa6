"""
Command-line front end.

    spiked-bounds bound --alpha 1.9 --mu 10 --dim 2
    spiked-bounds table --which table1 --format csv
    spiked-bounds solve --alpha 2 --mu 10 --dim 3 --output psi.csv
    spiked-bounds plot-data --which fig2 --outdir fig2/
    spiked-bounds perturb --mu 10 --alpha 1.9 --dim 2

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .bounds import BoundError, power_bound_energy, sho_bound_energy
from .core import BoundDirection, ParameterError, QuantumNumbers, SpikedOscParams
from .perturb import perturbation_estimate
from .solver import (
    GridConfig,
    SolverError,
    export_wavefunction,
    reduce_to_radial,
    solve_eigenvalue,
)

GRID_ENV = "SPIKED_BOUNDS_GRID"

PRESETS = {
    "table1": dict(alpha=1.9, lam=1.0, mu=10.0, beta=2.0, n=0, l=0, dims=list(range(2, 11))),
    "table2": dict(alpha=2.1, lam=1.0, mu=10.0, beta=2.0, n=2, l=1, dims=list(range(2, 11))),
}
PRESETS["fig1"] = PRESETS["table1"]
PRESETS["fig2"] = PRESETS["table2"]


class UsageError(Exception):
    pass


def parse_dims(text: str) -> list[int]:
    """``"2..10"``, ``"2,3,5"`` or ``"4"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            dims = list(range(int(lo), int(hi) + 1))
        else:
            dims = [int(d) for d in text.split(",") if d.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}") from None
    if not dims:
        raise argparse.ArgumentTypeError(f"empty dimension range {text!r}")
    return dims


def _grid_type(text: str) -> GridConfig:
    try:
        return GridConfig.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def resolve_grid(args) -> GridConfig:
    if args.grid is not None:
        return args.grid
    env = os.environ.get(GRID_ENV)
    if env:
        try:
            return GridConfig.parse(env)
        except ParameterError as exc:
            raise UsageError(f"{GRID_ENV}: {exc}") from None
    return GridConfig()


def _params(args, preset=None):
    values = dict(PRESETS[preset]) if preset else {}
    for key in ("alpha", "lam", "mu", "beta", "n", "l"):
        given = getattr(args, key, None)
        if given is not None:
            values[key] = given
    values.setdefault("lam", 1.0)
    values.setdefault("beta", 2.0)
    values.setdefault("n", 0)
    values.setdefault("l", 0)
    missing = [k for k in ("alpha", "mu") if k not in values]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m for m in missing))
    p = SpikedOscParams(lam=values["lam"], mu=values["mu"], alpha=values["alpha"], beta=values["beta"])
    dims = getattr(args, "dims", None) or values.get("dims") or [getattr(args, "dim", None) or 3]
    return p, values["n"], values["l"], dims


def compute_bound(p: SpikedOscParams, q: QuantumNumbers):
    if p.beta == 2:
        return sho_bound_energy(p, q)
    return power_bound_energy(p, q)


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        _atomic_write(Path(args.output), text)
    else:
        sys.stdout.write(text)


def _map(fn, items):
    with ThreadPoolExecutor(max_workers=os.cpu_count() or 1) as pool:
        return list(pool.map(fn, items))


def _warn_direction(direction: BoundDirection) -> None:
    if direction is BoundDirection.NO_GUARANTEE:
        print(
            "warning: g and f have opposite convexity; the value is an approximation, not a bound",
            file=sys.stderr,
        )


# --------------------------------------------------------------------------
# subcommands


def cmd_bound(args) -> None:
    p, n, l, dims = _params(args)
    results = [(dim, compute_bound(p, QuantumNumbers(n, l, dim))) for dim in dims]
    _warn_direction(results[0][1].direction)
    fields = ["N", "energy", "direction", "t_hat", "s_hat", "residual"]
    rows = [
        {"N": dim, "energy": r.energy, "direction": r.direction.value,
         "t_hat": r.t_hat, "s_hat": r.s_hat, "residual": r.residual}
        for dim, r in results
    ]
    if args.format == "human":
        lines = []
        for dim, r in results:
            line = f"N={dim} n={n} l={l}: E = {r.energy:.5f} ({r.direction.words}), t_hat = {r.t_hat:.8g}"
            if p.beta != 2:
                line += f", s_hat = {r.s_hat:.8g}"
            line += f", residual = {r.residual:.2e}"
            lines.append(line)
        _emit(args, "\n".join(lines) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([row["N"], f"{row['energy']:.6f}", row["direction"],
                        f"{row['t_hat']:.17g}", f"{row['s_hat']:.17g}", f"{row['residual']:.3e}"])
        _emit(args, buf.getvalue())
    else:
        _emit(args, "".join(json.dumps(row) + "\n" for row in rows))


def table_rows(p: SpikedOscParams, n: int, l: int, dims, grid: GridConfig):
    """``(N, bound result, solver energy)`` for each dimension, in input order."""

    def one(dim):
        q = QuantumNumbers(n, l, dim)
        bound = compute_bound(p, q)
        sol = solve_eigenvalue(reduce_to_radial(p, q, bound.energy), grid)
        return dim, bound, sol.energy

    return _map(one, dims)


def table_header(direction: BoundDirection) -> list[str]:
    # columns ascend, as a lower bound sits below the eigenvalue and an upper above
    if direction is BoundDirection.LOWER:
        return ["N", "E_lower", "E_solver"]
    name = {BoundDirection.UPPER: "E_upper", BoundDirection.EXACT: "E_exact"}.get(direction, "E_approx")
    return ["N", "E_solver", name]


def render_table(rows, fmt: str) -> str:
    direction = rows[0][1].direction
    header = table_header(direction)
    lower_first = direction is BoundDirection.LOWER
    body = []
    for dim, bound, e_solver in rows:
        pair = (bound.energy, e_solver) if lower_first else (e_solver, bound.energy)
        body.append((dim, *pair))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for dim, a, b in body:
            w.writerow([dim, f"{a:.6f}", f"{b:.6f}"])
        return buf.getvalue()
    if fmt == "jsonl":
        return "".join(json.dumps(dict(zip(header, row))) + "\n" for row in body)
    out = [f"{header[0]:>3}  {header[1]:>12}  {header[2]:>12}   ({direction.words})"]
    out += [f"{dim:>3}  {a:>12.5f}  {b:>12.5f}" for dim, a, b in body]
    return "\n".join(out) + "\n"


def cmd_table(args) -> None:
    p, n, l, dims = _params(args, args.which)
    rows = table_rows(p, n, l, dims, resolve_grid(args))
    _warn_direction(rows[0][1].direction)
    _emit(args, render_table(rows, args.format))


def cmd_solve(args) -> None:
    p, n, l, _ = _params(args)
    q = QuantumNumbers(n, l, args.dim)
    sol = solve_eigenvalue(reduce_to_radial(p, q), resolve_grid(args))
    summary = f"N={q.dim} n={n} l={l}: E = {sol.energy:.8f}, nodes = {sol.nodes}, match defect = {sol.match_defect:.2e}\n"
    if args.output:
        buf = io.StringIO()
        export_wavefunction(sol, buf, "jsonl" if args.format == "jsonl" else "csv")
        _atomic_write(Path(args.output), buf.getvalue())
    sys.stdout.write(summary)


def cmd_plot_data(args) -> None:
    p, n, l, dims = _params(args, args.which)
    grid = resolve_grid(args)
    outdir = Path(args.outdir)
    fmt = "jsonl" if args.format == "jsonl" else "csv"

    def one(dim):
        q = QuantumNumbers(n, l, dim)
        bound = compute_bound(p, q)
        return bound, solve_eigenvalue(reduce_to_radial(p, q, bound.energy), grid)

    results = _map(one, dims)
    summary = io.StringIO()
    w = csv.writer(summary, lineterminator="\n")
    w.writerow(["N", "n", "l", "E_solver", "E_bound", "direction", "nodes", "file"])
    for dim, (bound, sol) in zip(dims, results):
        name = f"wavefunction_N{dim}.{fmt}"
        buf = io.StringIO()
        export_wavefunction(sol, buf, fmt)
        _atomic_write(outdir / name, buf.getvalue())
        w.writerow([dim, n, l, f"{sol.energy:.6f}", f"{bound.energy:.6f}", bound.direction.value, sol.nodes, name])
    _atomic_write(outdir / "eigenvalues.csv", summary.getvalue())
    sys.stdout.write(summary.getvalue())


def cmd_perturb(args) -> None:
    q = QuantumNumbers(args.n or 0, args.l or 0, args.dim)
    est = perturbation_estimate(args.mu, args.alpha, q, resolve_grid(args))
    if args.format == "human":
        text = (
            f"N={q.dim} n={q.n} l={q.l} mu={args.mu:g}\n"
            f"E(2)      = {est.e_at_2:.6f}\n"
            f"E'(2)     = {est.de_dalpha:.6f}\n"
            f"E({est.alpha:g}) ~ {est.estimate:.6f}  (first order; not a bound)\n"
        )
    else:
        row = {"N": q.dim, "n": q.n, "l": q.l, "mu": args.mu, "alpha": est.alpha,
               "e_at_2": est.e_at_2, "de_dalpha": est.de_dalpha, "estimate": est.estimate}
        if args.format == "jsonl":
            text = json.dumps(row) + "\n"
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(list(row))
            w.writerow([f"{v:.6f}" if isinstance(v, float) else v for v in row.values()])
            text = buf.getvalue()
    _emit(args, text)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiked-bounds",
        description="Eigenvalue bounds and numerical eigenvalues for x**2 + mu/x**alpha in N dimensions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def physics(sp, dims=False, beta=True):
        sp.add_argument("--lambda", dest="lam", type=float, help="coefficient of x**2 (default 1)")
        sp.add_argument("--mu", type=float, help="spike coupling")
        sp.add_argument("--alpha", type=float, help="spike exponent")
        if beta:
            sp.add_argument("--beta", type=float, help="confining exponent (default 2)")
        sp.add_argument("--n", type=int, help="radial quantum number (default 0)")
        sp.add_argument("--l", type=int, help="angular momentum (default 0)")
        if dims:
            group = sp.add_mutually_exclusive_group()
            group.add_argument("--dim", type=int, help="spatial dimension N")
            group.add_argument("--dims", type=parse_dims, help="dimension range, e.g. 2..10")
        else:
            sp.add_argument("--dim", type=int, default=3, help="spatial dimension N (default 3)")

    def output(sp, formats=("human", "csv", "jsonl"), default="human"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--output", "-o", help="write to this file instead of standard output")

    def grid(sp):
        sp.add_argument("--grid", type=_grid_type, help=f"xmin:xmax:points (overrides ${GRID_ENV})")

    sp = sub.add_parser("bound", help="bound-formula value for one state")
    physics(sp, dims=True)
    output(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("table", help="bound and numerical eigenvalue over a range of N")
    sp.add_argument("--which", choices=["table1", "table2"])
    physics(sp, dims=True)
    output(sp)
    grid(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("solve", help="numerical eigenvalue and wavefunction")
    physics(sp)
    output(sp, formats=("csv", "jsonl"), default="csv")
    grid(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("plot-data", help="wavefunction files behind the figures")
    sp.add_argument("--which", choices=["fig1", "fig2"])
    physics(sp, dims=True)
    sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sp.add_argument("--outdir", default=".", help="output directory (default: current)")
    grid(sp)
    sp.set_defaults(func=cmd_plot_data)

    sp = sub.add_parser("perturb", help="first-order estimate of E(alpha) about alpha=2 (lambda=1)")
    sp.add_argument("--mu", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--dim", type=int, default=3)
    output(sp)
    grid(sp)
    sp.set_defaults(func=cmd_perturb)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dims", None) is None and getattr(args, "dim", None) is not None:
        args.dims = [args.dim]
    try:
        args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (BoundError, SolverError, ArithmeticError) as exc:
        print(f"{parser.prog}: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
