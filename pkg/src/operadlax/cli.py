"""Command-line entry point.

Three subcommands:

* ``axioms``   - seeded random property suites for the composition axioms
  (composition relations, unit laws, graded antisymmetry, Jacobi);
* ``simulate`` - sample a trajectory: oscillator state, auxiliary
  functions, the eight structure constants, and a Lax-equation residual
  per row, written as CSV or JSON;
* ``verify``   - run the end-to-end verification pipeline from a JSON
  config file and print the report as JSON.

Exit codes: 0 all checks passed, 1 a check failed or the numerics blew
up, 2 bad input or usage.  Output is deterministic for a fixed seed and
config; floats are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .multilinear import Operation, frobenius_norm
from .operad import (
    bracket,
    composition_relation_residual,
    jacobi_residual,
    unit_residual,
)
from .operadic_lax import (
    COMPONENT_NAMES,
    SolutionParams,
    _aux_arrays,
    _closed_mu_at,
    _explicit_rhs,
    _mu_components,
    verify_lax_representation,
)
from .oscillator import (
    IntegrationError,
    OscState,
    aux_algebraic,
    rk4_path,
)

__all__ = ["main", "RunConfig", "CSV_HEADER"]

CSV_HEADER = (
    "t,q,p,H,Aplus,Aminus,Dplus,Dminus,"
    + ",".join(COMPONENT_NAMES)
    + ",lax_residual"
)

CONFIG_KEYS = ("omega", "q0", "p0", "c", "t_end", "steps", "tol", "seed", "out", "format")


@dataclass
class RunConfig:
    omega: float = 1.0
    q0: float = 0.0
    p0: float = 2.0
    c: list | None = None  # drawn uniformly from [-1, 1]^8 with `seed` if absent
    t_end: float = 2.0 * math.pi
    steps: int = 10000
    tol: float = 1e-7
    seed: int = 0
    out: str = "-"
    format: str = "csv"

    def resolved_c(self) -> list[float]:
        if self.c is not None:
            return [float(x) for x in self.c]
        rng = np.random.default_rng(self.seed)
        return [float(x) for x in rng.uniform(-1.0, 1.0, 8)]

    def validate(self) -> str | None:
        if not (math.isfinite(self.omega) and self.omega > 0):
            return f"omega must be positive, got {self.omega}"
        if self.steps < 2:
            return f"steps must be >= 2, got {self.steps}"
        if not (math.isfinite(self.tol) and self.tol > 0):
            return f"tol must be positive, got {self.tol}"
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            return f"t_end must be positive, got {self.t_end}"
        if self.format not in ("csv", "json"):
            return f"format must be csv or json, got {self.format!r}"
        if self.c is not None and len(self.c) != 8:
            return f"c must have 8 entries, got {len(self.c)}"
        return None


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


_KEY_TYPES = {
    "omega": float, "q0": float, "p0": float, "t_end": float, "tol": float,
    "steps": int, "seed": int, "out": str, "format": str,
}


def _load_config(path: str) -> RunConfig | str:
    """Parse a flat JSON config; returns an error string on failure."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        return f"cannot read config {path}: {exc}"
    except json.JSONDecodeError as exc:
        return f"config parse failure at line {exc.lineno} column {exc.colno}: {exc.msg}"
    if not isinstance(raw, dict):
        return "config must be a JSON object"
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        return f"unknown config keys: {', '.join(unknown)}"
    cfg = RunConfig()
    for key, value in raw.items():
        if key == "c":
            if value is not None and not (
                isinstance(value, list)
                and all(
                    isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in value
                )
            ):
                return "config key c must be an array of reals or null"
        elif not isinstance(value, _KEY_TYPES[key]) or isinstance(value, bool):
            if _KEY_TYPES[key] is float and isinstance(value, int) and not isinstance(value, bool):
                value = float(value)
            else:
                return (
                    f"config key {key} must be {_KEY_TYPES[key].__name__}, "
                    f"got {type(value).__name__}"
                )
        setattr(cfg, key, value)
    return cfg


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> None:
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)


def _parse_c(text: str) -> list[float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 8:
        raise argparse.ArgumentTypeError(f"expected 8 comma-separated reals, got {len(parts)}")
    return parts


# ---------------------------------------------------------------- axioms --


def _random_operation(rng, dim_max: int, deg_max: int) -> Operation:
    d = int(rng.integers(1, dim_max + 1))
    n = int(rng.integers(1, deg_max + 1))
    return Operation(d, n, rng.standard_normal((d,) * (n + 1)))


def _random_triple(rng, dim_max: int, deg_max: int):
    d = int(rng.integers(1, dim_max + 1))
    degs = rng.integers(1, deg_max + 1, size=3)
    return [Operation(d, int(n), rng.standard_normal((d,) * (int(n) + 1))) for n in degs]


def cmd_axioms(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    suites = {
        "composition_relations": 0.0,
        "unit": 0.0,
        "antisymmetry": 0.0,
        "jacobi": 0.0,
    }
    for _ in range(args.trials):
        h, f, g = _random_triple(rng, args.dim_max, args.deg_max)
        scale = 1.0 + frobenius_norm(h) * frobenius_norm(f) * frobenius_norm(g)
        for i in range(h.degree):
            for j in range(h.reduced_degree + f.reduced_degree + 1):
                r = composition_relation_residual(h, f, g, i, j) / scale
                suites["composition_relations"] = max(suites["composition_relations"], r)
        suites["jacobi"] = max(suites["jacobi"], jacobi_residual(f, g, h) / scale)

        u = _random_operation(rng, args.dim_max, args.deg_max)
        suites["unit"] = max(suites["unit"], unit_residual(u) / (1.0 + frobenius_norm(u)))

        a, b = _random_triple(rng, args.dim_max, args.deg_max)[:2]
        s = -1.0 if (a.reduced_degree * b.reduced_degree) % 2 else 1.0
        anti = np.linalg.norm(bracket(a, b).coeffs + s * bracket(b, a).coeffs)
        suites["antisymmetry"] = max(
            suites["antisymmetry"],
            float(anti) / (1.0 + frobenius_norm(a) * frobenius_norm(b)),
        )
    ok = True
    for name, worst in suites.items():
        passed = worst <= args.tol
        ok = ok and passed
        print(f"{name}: max_residual={_fmt(worst)} tol={_fmt(args.tol)} "
              f"{'PASS' if passed else 'FAIL'}")
    return 0 if ok else 1


# -------------------------------------------------------------- simulate --


def _grid_lax_residual(mu: np.ndarray, dt: float, omega: float) -> np.ndarray:
    """Per-sample || d(mu)/dt - [M, mu] || with on-grid differences.

    Second-order central differences inside, second-order one-sided at the
    endpoints, so the column scales as dt^2 for smooth trajectories.
    """
    dmu = np.empty_like(mu)
    dmu[1:-1] = (mu[2:] - mu[:-2]) / (2.0 * dt)
    dmu[0] = (-3.0 * mu[0] + 4.0 * mu[1] - mu[2]) / (2.0 * dt)
    dmu[-1] = (3.0 * mu[-1] - 4.0 * mu[-2] + mu[-3]) / (2.0 * dt)
    return np.linalg.norm(dmu - _explicit_rhs(mu, omega), axis=1)


def _simulate_samples(cfg: RunConfig, integrator: str):
    """Column arrays for the sample table, in header order."""
    omega = cfg.omega
    cvals = np.asarray(cfg.resolved_c())
    s0 = OscState(cfg.q0, cfg.p0, omega)
    a0 = aux_algebraic(s0)
    ts = np.linspace(0.0, cfg.t_end, cfg.steps + 1)
    dt = cfg.t_end / cfg.steps

    if integrator == "exact":
        wt = omega * ts
        q = cfg.q0 * np.cos(wt) + (cfg.p0 / omega) * np.sin(wt)
        p = cfg.p0 * np.cos(wt) - omega * cfg.q0 * np.sin(wt)
        ap, am, dp, dm = _aux_arrays(a0, omega, ts)
        mu = _closed_mu_at(a0, omega, ts, cvals)
    else:
        w2 = omega * omega
        _, qp = rk4_path(lambda y: np.array([y[1], -w2 * y[0]]), [cfg.q0, cfg.p0],
                         cfg.t_end, cfg.steps)
        q, p = qp[:, 0], qp[:, 1]
        half = 0.5 * omega
        _, aux = rk4_path(
            lambda y: np.array([-half * y[1], half * y[0],
                                -3.0 * half * y[3], 3.0 * half * y[2]]),
            [a0.a_plus, a0.a_minus, a0.d_plus, a0.d_minus],
            cfg.t_end, cfg.steps,
        )
        ap, am, dp, dm = aux[:, 0], aux[:, 1], aux[:, 2], aux[:, 3]
        mu0 = _mu_components(a0.a_plus, a0.a_minus, a0.d_plus, a0.d_minus, cvals)
        _, mu = rk4_path(lambda y: _explicit_rhs(y, omega), mu0, cfg.t_end, cfg.steps)

    # overflow in derived columns is caught by the caller's finite-value scan
    with np.errstate(over="ignore", invalid="ignore"):
        energy = 0.5 * (p * p + omega * omega * q * q)
        resid = _grid_lax_residual(mu, dt, omega)
    return [ts, q, p, energy, ap, am, dp, dm] + [mu[:, k] for k in range(8)] + [resid]


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.config:
        cfg = _load_config(args.config)
        if isinstance(cfg, str):
            print(f"error: {cfg}", file=sys.stderr)
            return 2
    else:
        cfg = RunConfig()
    _apply_overrides(cfg, args)
    problem = cfg.validate()
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return 2

    try:
        columns = _simulate_samples(cfg, args.integrator)
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    table = np.column_stack(columns)
    bad = np.flatnonzero(~np.isfinite(table).all(axis=1))
    if bad.size:
        print(f"error: non-finite value in sample {int(bad[0])}", file=sys.stderr)
        return 1

    names = CSV_HEADER.split(",")
    if cfg.format == "csv":
        lines = [CSV_HEADER]
        lines += [",".join(_fmt(x) for x in row) for row in table]
        text = "\n".join(lines) + "\n"
    else:
        samples = [
            {name: float(x) for name, x in zip(names, row)} for row in table
        ]
        text = json.dumps(samples, indent=2) + "\n"

    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    return 0


# ---------------------------------------------------------------- verify --


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config_path)
    if isinstance(cfg, str):
        print(f"error: {cfg}", file=sys.stderr)
        return 2
    _apply_overrides(cfg, args)
    problem = cfg.validate()
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return 2

    params = SolutionParams(cfg.resolved_c())
    s0 = OscState(cfg.q0, cfg.p0, cfg.omega)
    try:
        report = verify_lax_representation(
            params, s0, cfg.t_end, cfg.steps, cfg.tol, seed=cfg.seed
        )
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.all_passed() else 1


# ------------------------------------------------------------------ main --


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operadlax",
        description="Operad axiom suites and isospectral structure-constant flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ax = sub.add_parser("axioms", help="run seeded random axiom property suites")
    ax.add_argument("--trials", type=int, default=100)
    ax.add_argument("--dim-max", dest="dim_max", type=int, default=3)
    ax.add_argument("--deg-max", dest="deg_max", type=int, default=3)
    ax.add_argument("--tol", type=float, default=1e-12)
    ax.add_argument("--seed", type=int, default=0)
    ax.set_defaults(func=cmd_axioms)

    sim = sub.add_parser("simulate", help="sample a trajectory to CSV or JSON")
    sim.add_argument("--config", help="JSON config file; flags override its values")
    sim.add_argument("--omega", type=float)
    sim.add_argument("--q0", type=float)
    sim.add_argument("--p0", type=float)
    sim.add_argument("--c", type=_parse_c, help="8 comma-separated reals")
    sim.add_argument("--t-end", dest="t_end", type=float)
    sim.add_argument("--steps", type=int)
    sim.add_argument("--tol", type=float)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--out", help="output path, '-' for stdout")
    sim.add_argument("--format", choices=["csv", "json"])
    sim.add_argument("--integrator", choices=["exact", "rk4"], default="exact")
    sim.set_defaults(func=cmd_simulate)

    ver = sub.add_parser("verify", help="run the verification pipeline from a config")
    ver.add_argument("config_path")
    ver.add_argument("--omega", type=float)
    ver.add_argument("--q0", type=float)
    ver.add_argument("--p0", type=float)
    ver.add_argument("--c", type=_parse_c, help="8 comma-separated reals")
    ver.add_argument("--t-end", dest="t_end", type=float)
    ver.add_argument("--steps", type=int)
    ver.add_argument("--tol", type=float)
    ver.add_argument("--seed", type=int)
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "axioms":
        if not (args.trials >= 1):
            parser.error(f"--trials must be >= 1, got {args.trials}")
        if not (1 <= args.dim_max <= 3):
            parser.error(f"--dim-max must be in [1, 3], got {args.dim_max}")
        if not (1 <= args.deg_max <= 3):
            parser.error(f"--deg-max must be in [1, 3], got {args.deg_max}")
        if not (args.tol > 0):
            parser.error(f"--tol must be positive, got {args.tol}")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
