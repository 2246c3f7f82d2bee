"""Command-line front end.

Subcommands: rate, sweep, optimal-n, validate-drift, fig2, fig3.  Every
file-writing report emits a CSV, a JSON manifest that pins the full resolved
parameter set (replaying it reproduces the CSV byte for byte), and a PNG
rendering next to the CSV unless --no-plot.

Exit codes: 0 success, 2 invalid input, 3 nonpositive rate, 4 output I/O
failure, 5 drift-validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .drift import (
    DriftModel,
    RNG_ALGORITHM,
    direct_sum_phasor,
    mean_phasor,
    random_walk_distribution,
    sample_random_walk_phasor,
    smeared_c,
)
from .entropy import Q_VALIDITY_MAX
from .epsilons import LogEpsilon
from .errors import KeyRateError, NoPositiveRate
from .optimize import (
    BOUNDS,
    Observation,
    OptResult,
    PROTOCOLS,
    PZ_MAX,
    PZ_MIN,
    SearchConfig,
    optimal_block_size,
    optimize_rate,
    sweep_n,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONPOSITIVE = 3
EXIT_IO = 4
EXIT_VALIDATION = 5

ROW_COLUMNS = [
    "N", "protocol", "bound", "drift_model", "theta_step", "r_raw", "r",
    "p_z", "w_pa", "w_bar", "w_pe", "w_def", "m", "k", "q_obs", "c_obs",
    "q_prime", "c_prime", "log2_inv_eps_col", "status",
]

FIG2_COLUMNS = ["N", "r_collective", "r_postselection", "r_definetti"]
FIG3_COLUMNS = ["N", "r_constant_drift", "r_fixed", "r_random_walk"]


class CliError(Exception):
    """Invalid input; the message names the offending flag."""


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _parse_float(flags: dict, key: str, lo=None, hi=None, lo_open=False) -> float:
    raw = flags[key]
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise CliError(f"--{key.replace('_', '-')} expects a number, got {raw!r}")
    if not math.isfinite(value):
        raise CliError(f"--{key.replace('_', '-')} must be finite")
    if lo is not None and (value < lo or (lo_open and value == lo)):
        raise CliError(f"--{key.replace('_', '-')} must be >= {lo}, got {raw}")
    if hi is not None and value > hi:
        raise CliError(f"--{key.replace('_', '-')} must be <= {hi}, got {raw}")
    return value


def _parse_int(flags: dict, key: str, lo: int = 1) -> int:
    raw = flags[key]
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise CliError(f"--{key.replace('_', '-')} expects an integer, got {raw!r}")
    if not math.isfinite(value) or abs(value - round(value)) > 1e-6 * max(1.0, abs(value)):
        raise CliError(f"--{key.replace('_', '-')} expects an integer, got {raw!r}")
    value = int(round(value))
    if value < lo:
        raise CliError(f"--{key.replace('_', '-')} must be >= {lo}, got {raw}")
    return value


def _load_config(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(
                        f"--config {path}:{lineno} is not 'key = value'"
                    )
                key, _, value = line.partition("=")
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise CliError(f"--config {path} unreadable: {exc}")
    return values


def _resolve_flags(args: argparse.Namespace, defaults: dict) -> dict:
    """Merge CLI flags over config-file values over defaults."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    resolved = {}
    for key, default in defaults.items():
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
        elif key in config:
            resolved[key] = config[key]
        else:
            resolved[key] = default
    for key in config:
        if key not in defaults:
            raise CliError(f"--config key {key!r} is not a recognized setting")
    return resolved


_COMMON_DEFAULTS = {
    "protocol": None,
    "bound": None,
    "q": None,
    "c0": None,
    "drift": "fixed",
    "theta_step": None,
    "eps_coh": "1e-5",
    "eps_ec": "1e-10",
    "pz": None,
    "seed": "0",
    "out": None,
    "no_plot": False,
    "grid_points": "5",
    "refinement_rounds": "4",
    "multistart": "1",
    "tolerance": "0.01",
}


def _build_inputs(flags: dict, need_bound: bool = True) -> dict:
    protocol = flags["protocol"]
    if protocol not in PROTOCOLS:
        raise CliError(f"--protocol must be one of {'|'.join(PROTOCOLS)}, got {protocol!r}")
    bound = flags["bound"]
    if need_bound and bound not in BOUNDS:
        raise CliError(f"--bound must be one of {'|'.join(BOUNDS)}, got {bound!r}")
    if flags["q"] is None:
        raise CliError("--q is required")
    q_max = Q_VALIDITY_MAX if protocol == "rfi" else 0.5
    q = _parse_float(flags, "q", lo=0.0, hi=q_max)
    c0 = None
    if protocol == "rfi":
        if flags["c0"] is None:
            raise CliError("--c0 is required for the rfi protocol")
        c0 = _parse_float(flags, "c0", lo=0.0, hi=2.0)

    kind = flags["drift"]
    if kind == "fixed":
        if flags["theta_step"] is not None:
            raise CliError("--theta-step requires --drift constant or walk")
        drift = DriftModel.fixed()
    elif kind in ("constant", "walk"):
        if protocol == "bb84":
            raise CliError("--drift models apply to the rfi protocol only")
        if flags["theta_step"] is None:
            raise CliError(f"--theta-step is required for --drift {kind}")
        theta = _parse_float(flags, "theta_step")
        if abs(theta) >= math.pi:
            raise CliError(f"--theta-step must satisfy |theta| < pi, got {theta}")
        drift = (
            DriftModel.constant_velocity(theta)
            if kind == "constant"
            else DriftModel.random_walk(theta)
        )
    else:
        raise CliError(f"--drift must be fixed|constant|walk, got {kind!r}")

    eps_coh = _parse_float(flags, "eps_coh", lo=0.0, hi=1.0, lo_open=True)
    eps_ec = _parse_float(flags, "eps_ec", lo=0.0, hi=1.0, lo_open=True)
    p_z = None
    if flags["pz"] is not None:
        p_z = _parse_float(flags, "pz", lo=PZ_MIN, hi=PZ_MAX)
    cfg = SearchConfig(
        grid_points_per_dim=_parse_int(flags, "grid_points", lo=3),
        refinement_rounds=_parse_int(flags, "refinement_rounds"),
        multistart_count=_parse_int(flags, "multistart"),
        seed=_parse_int(flags, "seed", lo=0),
        tolerance=_parse_float(flags, "tolerance", lo=0.0, lo_open=True),
    )
    return {
        "protocol": protocol,
        "bound": bound,
        "observation": Observation(q, c0),
        "drift": drift,
        "eps_coh": LogEpsilon.from_probability(eps_coh),
        "eps_ec": LogEpsilon.from_probability(eps_ec),
        "p_z": p_z,
        "cfg": cfg,
    }


def _result_row(
    n_signals: int,
    inputs: dict,
    result: OptResult | None,
    status: str,
) -> list[str]:
    drift = inputs["drift"]
    obs = inputs["observation"]
    c_obs = (
        smeared_c(obs.c0, drift, n_signals) if obs.c0 is not None else None
    )
    values = {
        "N": n_signals,
        "protocol": inputs["protocol"],
        "bound": inputs["bound"],
        "drift_model": drift.kind.value,
        "theta_step": drift.theta_step,
        "q_obs": obs.q,
        "c_obs": c_obs,
        "status": status,
    }
    if result is not None and result.breakdown is not None:
        bd = result.breakdown
        values.update(
            r_raw=bd.r_raw,
            r=bd.r,
            p_z=result.params.get("p_z"),
            w_pa=result.params.get("w_pa"),
            w_bar=result.params.get("w_bar"),
            w_pe=result.params.get("w_pe"),
            w_def=result.params.get("w_def"),
            m=result.params.get("m"),
            k=result.params.get("k"),
            q_prime=bd.q_prime,
            c_prime=bd.c_prime,
            log2_inv_eps_col=bd.log2_inv_eps_col,
        )
    return [_fmt(values.get(col)) for col in ROW_COLUMNS]


def _write_csv(path: str | None, header: list[str], rows: list[list[str]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path is None:
        sys.stdout.write(buffer.getvalue())
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(buffer.getvalue())
    except OSError as exc:
        raise _IoFailure(f"cannot write {path}: {exc}")


class _IoFailure(Exception):
    pass


def _write_manifest(
    out_path: str,
    command: str,
    flags: dict,
    status: dict,
    outputs: list[str],
    notes: dict | None = None,
) -> str:
    manifest = {
        "tool": "finitekey",
        "version": __version__,
        "command": command,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "seed": int(flags.get("seed", 0)),
        "parameters": {k: v for k, v in sorted(flags.items()) if k != "out"},
        "status": status,
        "outputs": outputs,
    }
    if notes:
        manifest["notes"] = notes
    path = out_path + ".manifest.json"
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(manifest, handle, indent=2, sort_keys=False)
            handle.write("\n")
    except OSError as exc:
        raise _IoFailure(f"cannot write {path}: {exc}")
    return path


def _maybe_render(flags: dict, render) -> list[str]:
    """Render a PNG next to the CSV unless --no-plot; returns written paths."""
    if flags.get("no_plot") or flags.get("out") is None:
        return []
    png = _png_path(flags["out"])
    try:
        render(png)
    except OSError as exc:
        raise _IoFailure(f"cannot write {png}: {exc}")
    return [png]


def _render_comparison(grid: list[int], columns: dict, title: str):
    def render(png: str) -> None:
        from . import plots

        plots.render_bound_comparison(grid, columns, png, title)

    return render


def _render_single(grid: list[int], rates: list[float], title: str):
    def render(png: str) -> None:
        from . import plots

        plots.render_sweep(grid, rates, png, title)

    return render


def _png_path(csv_path: str) -> str:
    stem = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    return stem + ".png"


def _n_grid(flags: dict) -> list[int]:
    n_min = _parse_int(flags, "n_min")
    n_max = _parse_int(flags, "n_max")
    points = _parse_int(flags, "points", lo=1)
    if n_min >= n_max:
        raise CliError(f"--n-min must be below --n-max, got {n_min} >= {n_max}")
    grid = np.geomspace(n_min, n_max, points)
    return sorted({int(round(v)) for v in grid})


def cmd_rate(args: argparse.Namespace) -> int:
    defaults = dict(_COMMON_DEFAULTS, n=None)
    flags = _resolve_flags(args, defaults)
    if flags["n"] is None:
        raise CliError("--N is required")
    n_signals = _parse_int(flags, "n")
    inputs = _build_inputs(flags)
    result = optimize_rate(
        inputs["protocol"], inputs["bound"], n_signals, inputs["observation"],
        inputs["drift"], inputs["eps_coh"], inputs["eps_ec"], inputs["cfg"],
        inputs["p_z"],
    )
    if result.params.get("no_feasible_point"):
        status = "no_feasible_point"
    elif result.breakdown.r_raw <= 0.0:
        status = "nonpositive"
    else:
        status = "ok"
    row = _result_row(n_signals, inputs, result, status)
    _write_csv(flags["out"], ROW_COLUMNS, [row])
    if flags["out"]:
        _write_manifest(flags["out"], "rate", flags, {"status": status}, [flags["out"]])
    return EXIT_OK if status == "ok" else EXIT_NONPOSITIVE


def cmd_sweep(args: argparse.Namespace) -> int:
    defaults = dict(_COMMON_DEFAULTS, n_min="1e4", n_max="1e14", points="41")
    flags = _resolve_flags(args, defaults)
    grid = _n_grid(flags)
    inputs = _build_inputs(flags)
    rows_out = []
    rates = []
    sweep = sweep_n(
        grid, inputs["protocol"], inputs["bound"], inputs["observation"],
        inputs["drift"], inputs["eps_coh"], inputs["eps_ec"], inputs["cfg"],
        inputs["p_z"],
    )
    for row in sweep:
        rows_out.append(_result_row(row.n_signals, inputs, row.result, row.status))
        rates.append(row.result.r_star if row.result else 0.0)
    _write_csv(flags["out"], ROW_COLUMNS, rows_out)
    outputs = [flags["out"]] if flags["out"] else []
    outputs += _maybe_render(
        flags,
        _render_single(grid, rates, f"{inputs['protocol']} / {inputs['bound']} sweep"),
    )
    if flags["out"]:
        status = {"rows": len(grid), "positive_rows": sum(1 for r in rates if r > 0)}
        _write_manifest(flags["out"], "sweep", flags, status, outputs)
    return EXIT_OK


def cmd_optimal_n(args: argparse.Namespace) -> int:
    defaults = dict(_COMMON_DEFAULTS, n_min="1e4", n_max="1e15")
    flags = _resolve_flags(args, defaults)
    n_min = _parse_int(flags, "n_min")
    n_max = _parse_int(flags, "n_max")
    inputs = _build_inputs(flags)
    try:
        result = optimal_block_size(
            n_min, n_max, inputs["protocol"], inputs["bound"],
            inputs["observation"], inputs["drift"], inputs["eps_coh"],
            inputs["eps_ec"], inputs["cfg"], inputs["p_z"],
        )
    except NoPositiveRate:
        sys.stderr.write("error: no positive rate anywhere in the bracket\n")
        return EXIT_NONPOSITIVE
    status = "boundary_n_max" if result.params.get("boundary") else "ok"
    row = _result_row(result.n_star, inputs, result, status)
    _write_csv(flags["out"], ROW_COLUMNS, [row])
    if flags["out"]:
        _write_manifest(
            flags["out"], "optimal-n", flags,
            {"status": status, "n_star": result.n_star}, [flags["out"]],
        )
    return EXIT_OK


def _fig_sweep(inputs: dict, grid: list[int], bound: str, drift: DriftModel) -> list[float]:
    rows = sweep_n(
        grid, inputs["protocol"], bound, inputs["observation"], drift,
        inputs["eps_coh"], inputs["eps_ec"], inputs["cfg"], inputs["p_z"],
    )
    return [row.result.r_star if row.result else 0.0 for row in rows]


def cmd_fig2(args: argparse.Namespace) -> int:
    defaults = dict(
        _COMMON_DEFAULTS, n_min="1e4", n_max="1e14", points="41",
        protocol="bb84", q="0.05",
    )
    flags = _resolve_flags(args, defaults)
    if flags["out"] is None:
        raise CliError("--out is required for fig2")
    grid = _n_grid(flags)
    inputs = _build_inputs(flags, need_bound=False)
    columns = {}
    for bound in ("collective", "postselection", "definetti"):
        inputs_b = dict(inputs, bound=bound)
        columns[f"r_{bound}"] = _fig_sweep(inputs_b, grid, bound, inputs["drift"])
    rows = [
        [_fmt(n)] + [_fmt(columns[c][i]) for c in FIG2_COLUMNS[1:]]
        for i, n in enumerate(grid)
    ]
    _write_csv(flags["out"], FIG2_COLUMNS, rows)
    outputs = [flags["out"]]
    outputs += _maybe_render(
        flags,
        _render_comparison(
            grid,
            {
                "collective": columns["r_collective"],
                "post-selection": columns["r_postselection"],
                "de Finetti": columns["r_definetti"],
            },
            "BB84 finite-block key fraction, three bounds",
        ),
    )
    _write_manifest(
        flags["out"], "fig2", flags,
        {"rows": len(grid)}, outputs,
        notes={
            "reconstruction": "inputs are package defaults, not published values; "
            "only the ordering of the three bounds is meaningful"
        },
    )
    return EXIT_OK


def cmd_fig3(args: argparse.Namespace) -> int:
    defaults = dict(
        _COMMON_DEFAULTS, n_min="1e4", n_max="1e15", points="45",
        protocol="rfi", bound="postselection", q="0.05", c0="1.72",
        theta_constant=str(math.pi / 180 * 1e-10),
        theta_walk=str(math.pi / 180 * 1e-5),
    )
    flags = _resolve_flags(args, defaults)
    if flags["out"] is None:
        raise CliError("--out is required for fig3")
    grid = _n_grid(flags)
    inputs = _build_inputs(flags)
    theta_c = _parse_float(flags, "theta_constant")
    theta_w = _parse_float(flags, "theta_walk")
    scenarios = {
        "r_constant_drift": DriftModel.constant_velocity(theta_c),
        "r_fixed": DriftModel.fixed(),
        "r_random_walk": DriftModel.random_walk(theta_w),
    }
    columns = {
        name: _fig_sweep(inputs, grid, inputs["bound"], drift)
        for name, drift in scenarios.items()
    }
    rows = [
        [_fmt(n)] + [_fmt(columns[c][i]) for c in FIG3_COLUMNS[1:]]
        for i, n in enumerate(grid)
    ]
    _write_csv(flags["out"], FIG3_COLUMNS, rows)
    outputs = [flags["out"]]
    outputs += _maybe_render(
        flags,
        _render_comparison(
            grid,
            {
                "constant drift": columns["r_constant_drift"],
                "fixed frames": columns["r_fixed"],
                "random walk": columns["r_random_walk"],
            },
            "Frame drift and the optimal block size",
        ),
    )
    _write_manifest(flags["out"], "fig3", flags, {"rows": len(grid)}, outputs)
    return EXIT_OK


def _drift_checks(trials: int, seed: int) -> list[tuple[str, bool, str]]:
    checks = []

    worst = 0.0
    for n in range(1, 61):
        for theta in (0.1, 0.5, 1.0, 2.0):
            total = complex(0.0, 0.0)
            for dist in range(-n, n + 1):
                p = random_walk_distribution(n, dist)
                if p:
                    total += complex(math.cos(theta * dist), math.sin(theta * dist)) * p
            worst = max(worst, abs(total - math.cos(theta) ** n))
    checks.append((
        "walk_distribution_phasor_identity", worst < 1e-10,
        f"max |sum e^(i theta d) P_N(d) - cos(theta)^N| = {worst:.3e}",
    ))

    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 1], dtype=np.uint64)))
    worst = 0.0
    for i in range(50):
        theta = 10.0 ** rng.uniform(-9, 0) if i % 2 else 10.0 ** rng.uniform(-9, -6)
        n = int(rng.integers(1, 10**5))
        closed = mean_phasor(DriftModel.constant_velocity(theta), n)
        direct = direct_sum_phasor(theta, n)
        worst = max(worst, abs(closed.c_bar - direct.c_bar), abs(closed.s_bar - direct.s_bar))
    checks.append((
        "constant_drift_closed_form_vs_direct_sum", worst < 1e-10,
        f"max componentwise deviation = {worst:.3e}",
    ))

    worst_sigma = 0.0
    for i in range(20):
        theta = float(rng.uniform(0.02, 1.2))
        n = int(rng.integers(2, 501))
        mc = sample_random_walk_phasor(theta, n, trials, seed + i)
        sig_c = abs(mc.c_bar - mc.analytic_c_step_avg) / mc.se_c if mc.se_c else 0.0
        sig_s = abs(mc.s_bar) / mc.se_s if mc.se_s else 0.0
        worst_sigma = max(worst_sigma, sig_c, sig_s)
    checks.append((
        "monte_carlo_vs_step_average_expectation", worst_sigma < 5.0,
        f"max |deviation|/SE = {worst_sigma:.2f} over 20 (theta, N) pairs "
        f"({RNG_ALGORITHM}, {trials} trials)",
    ))
    return checks


def cmd_validate_drift(args: argparse.Namespace) -> int:
    defaults = {"trials": "1e5", "seed": "0", "out": None, "no_plot": False}
    flags = _resolve_flags(args, defaults)
    trials = _parse_int(flags, "trials")
    seed = _parse_int(flags, "seed", lo=0)
    checks = _drift_checks(trials, seed)
    all_ok = all(ok for _, ok, _ in checks)
    for name, ok, detail in checks:
        sys.stdout.write(f"{'ok' if ok else 'FAIL'}  {name}: {detail}\n")
    if flags["out"]:
        rows = [[name, "pass" if ok else "fail", detail] for name, ok, detail in checks]
        _write_csv(flags["out"], ["check", "result", "detail"], rows)
        _write_manifest(
            flags["out"], "validate-drift", flags,
            {"all_passed": all_ok, "rng_algorithm": RNG_ALGORITHM},
            [flags["out"]],
        )
    return EXIT_OK if all_ok else EXIT_VALIDATION


def _add_common(sub: argparse.ArgumentParser, n_flags: tuple[str, ...]) -> None:
    sub.add_argument("--protocol", choices=PROTOCOLS)
    sub.add_argument("--bound", choices=BOUNDS)
    if "n" in n_flags:
        sub.add_argument("--N", dest="n", metavar="N")
    if "range" in n_flags:
        sub.add_argument("--n-min", dest="n_min")
        sub.add_argument("--n-max", dest="n_max")
    if "points" in n_flags:
        sub.add_argument("--points")
    sub.add_argument("--q")
    sub.add_argument("--c0")
    sub.add_argument("--drift", choices=["fixed", "constant", "walk"])
    sub.add_argument("--theta-step", dest="theta_step")
    sub.add_argument("--eps-coh", dest="eps_coh")
    sub.add_argument("--eps-ec", dest="eps_ec")
    sub.add_argument("--pz")
    sub.add_argument("--seed")
    sub.add_argument("--out")
    sub.add_argument("--config")
    sub.add_argument("--no-plot", dest="no_plot", action="store_const", const=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitekey",
        description="Finite-block secret-key fractions for BB84 and the "
        "reference-frame-independent protocol under collective, "
        "post-selection, and de Finetti bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("rate", help="optimized rate at a single block size")
    _add_common(sub, ("n",))
    sub.set_defaults(handler=cmd_rate)

    sub = subs.add_parser("sweep", help="optimized rate over a log grid of N")
    _add_common(sub, ("range", "points"))
    sub.set_defaults(handler=cmd_sweep)

    sub = subs.add_parser("optimal-n", help="block size maximizing the rate")
    _add_common(sub, ("range",))
    sub.set_defaults(handler=cmd_optimal_n)

    sub = subs.add_parser(
        "validate-drift", help="check drift closed forms against brute force"
    )
    sub.add_argument("--trials")
    sub.add_argument("--seed")
    sub.add_argument("--out")
    sub.add_argument("--config")
    sub.set_defaults(handler=cmd_validate_drift)

    sub = subs.add_parser("fig2", help="three-bound BB84 comparison table")
    _add_common(sub, ("range", "points"))
    sub.set_defaults(handler=cmd_fig2)

    sub = subs.add_parser("fig3", help="drift-scenario comparison table")
    _add_common(sub, ("range", "points"))
    sub.add_argument("--theta-constant", dest="theta_constant")
    sub.add_argument("--theta-walk", dest="theta_walk")
    sub.set_defaults(handler=cmd_fig3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except KeyRateError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except _IoFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
