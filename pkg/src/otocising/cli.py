"""Command-line front end.

    otocising quench --model tfic --n 4 --g 1.5 --steps 12 --tau 0.5
    otocising scan --model annni --n 9 --delta 0.5 --g-min 0.1 --g-max 2.4 --g-step 0.1
    otocising sizes --model tfic --n 4,8,12 --g 1.5 --steps 13 --method trotter
    otocising equilibrium --model tfic --n 3 --g 0.5 --ancilla
    otocising plot --input scan.csv --svg scan.svg

A ``--config`` file is a flat JSON object whose keys are the long flag names
(``"g-min"``, ``"trotter-m"``, ...); flags given on the command line win.
Exit codes: 0 success, 2 usage error, 3 capacity error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import io as rio
from .correlators import AveragingMode
from .errors import CapacityError, DomainError, OutputError
from .evolution import EvolutionMethod
from .experiments import (
    GroundStateOf,
    QuenchSpec,
    estimate_critical_point,
    run_equilibrium,
    run_quench,
    scan_field,
    size_sweep,
)
from .hamiltonian import IsingParams

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_IO = 0, 2, 3, 4

COMMANDS = ("quench", "scan", "sizes", "equilibrium", "plot")

_MODEL_DEFAULTS = {
    "tfic": {"delta": 0.0, "steps": 12, "tau": 0.5},
    "annni": {"delta": 0.5, "steps": 15, "tau": 0.2},
}

# flag name -> (argparse dest, converter for config-file values)
_KEYS = {
    "model": "model",
    "n": "n",
    "delta": "delta",
    "g": "g",
    "g-min": "g_min",
    "g-max": "g_max",
    "g-step": "g_step",
    "steps": "steps",
    "tau": "tau",
    "method": "method",
    "trotter-m": "trotter_m",
    "avg": "avg",
    "window": "window",
    "ancilla": "ancilla",
    "out": "out",
    "format": "format",
    "svg": "svg",
    "threads": "threads",
    "input": "input",
}


class UsageError(DomainError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str
    n_values: tuple[int, ...]
    delta: float
    g: float | None
    g_min: float | None
    g_max: float | None
    g_step: float | None
    steps: int
    tau: float
    method: str
    trotter_m: int | None
    average_mode: str
    window: tuple[float | None, float | None] | None
    ancilla: bool
    out: str | None
    fmt: str
    svg: str | None
    threads: int
    input: str | None = None

    @property
    def n_sites(self) -> int:
        return self.n_values[0]

    def evolution_method(self) -> EvolutionMethod:
        if self.method == "exact":
            return EvolutionMethod.exact()
        return EvolutionMethod.trotter(self.trotter_m)

    def quench_spec(self, n_sites: int | None = None, field: float | None = None) -> QuenchSpec:
        params = IsingParams(n_sites or self.n_sites, self.g if field is None else field, self.delta)
        return QuenchSpec(params, self.steps, self.tau, self.evolution_method())

    def g_grid(self) -> np.ndarray:
        count = int(np.floor((self.g_max - self.g_min) / self.g_step + 1e-9)) + 1
        return np.round(self.g_min + self.g_step * np.arange(count), 12)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["n_values"] = list(self.n_values)
        d["window"] = list(self.window) if self.window is not None else None
        return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "")
        if message:
            sys.stderr.write(message)
        raise SystemExit(status)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in str(text).split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one chain length")
    return values


def _window(text: str) -> tuple[float | None, float | None]:
    lo, sep, hi = str(text).partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"window must look like t_lo:t_hi, got {text!r}")
    try:
        return (float(lo) if lo.strip() else None, float(hi) if hi.strip() else None)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window bounds must be numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="otocising", description="OTOC quench dynamics of periodic Ising chains.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--model", choices=("tfic", "annni"), type=str.lower)
    parser.add_argument("--n", type=_int_list, help="chain length (comma-separated list for 'sizes')")
    parser.add_argument("--delta", type=float)
    parser.add_argument("--g", type=float, help="post-quench transverse field")
    parser.add_argument("--g-min", type=float)
    parser.add_argument("--g-max", type=float)
    parser.add_argument("--g-step", type=float)
    parser.add_argument("--steps", type=int, help="number of samples M on t = k*tau")
    parser.add_argument("--tau", type=float)
    parser.add_argument("--method", choices=("exact", "trotter"), type=str.lower)
    parser.add_argument("--trotter-m", type=int, help="Trotter segments per step (default: tau/m <= 0.05)")
    parser.add_argument("--avg", choices=("trapezoid", "pointmean"), type=str.lower)
    parser.add_argument("--window", type=_window, help="t_lo:t_hi, either side may be empty")
    parser.add_argument("--ancilla", action="store_const", const=True)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("csv", "json"), type=str.lower)
    parser.add_argument("--svg")
    parser.add_argument("--config")
    parser.add_argument("--threads", type=int, help="worker threads; 0 is the single-worker reference mode")
    parser.add_argument("--input", help="result file to plot ('plot' only)")
    return parser


def _apply_config(args: argparse.Namespace, config_text: str, parser: argparse.ArgumentParser) -> None:
    try:
        data = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a flat JSON object")
    unknown = sorted(set(data) - set(_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key, value in data.items():
        dest = _KEYS[key]
        if getattr(args, dest) is not None:
            continue
        if isinstance(value, (dict, list)) and key not in ("n", "window"):
            raise UsageError(f"config key {key!r} must be a scalar")
        if key == "ancilla":
            setattr(args, dest, bool(value))
            continue
        if isinstance(value, list):
            value = ",".join(str(v) for v in value) if key == "n" else ":".join("" if v is None else str(v) for v in value)
        # route through argparse so config values get the same conversion and checks as flags
        sub = parser.parse_args(["quench", f"--{key}", str(value)])
        setattr(args, dest, getattr(sub, dest))


def parse_config(argv: list[str], config_text: str | None = None) -> RunConfig:
    """Resolve command-line flags and an optional config file into a :class:`RunConfig`.

    Raises :class:`UsageError` for any invalid or inconsistent input.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if config_text is None and args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config_text = fh.read()
        except OSError as exc:
            raise OutputError(f"cannot read config {args.config}: {exc.strerror or exc}") from exc
    if config_text is not None:
        _apply_config(args, config_text, parser)

    cmd = args.command
    model = args.model or "tfic"
    defaults = _MODEL_DEFAULTS[model]
    delta = defaults["delta"] if args.delta is None else args.delta
    if model == "tfic" and delta != 0:
        raise UsageError("--model tfic conflicts with a nonzero --delta; use --model annni")
    if model == "annni" and delta == 0:
        raise UsageError("--model annni needs a nonzero --delta")

    n_values = args.n or (4,)
    if cmd != "sizes" and len(n_values) != 1:
        raise UsageError(f"'{cmd}' takes a single --n")
    if any(n < 1 for n in n_values):
        raise UsageError("--n must be positive")

    if cmd in ("quench", "sizes", "equilibrium") and args.g is None:
        raise UsageError(f"'{cmd}' requires --g")
    if cmd == "scan":
        missing = [f for f in ("g_min", "g_max", "g_step") if getattr(args, f) is None]
        if missing:
            raise UsageError("'scan' requires " + ", ".join("--" + m.replace("_", "-") for m in missing))
        if args.g_step <= 0 or args.g_max < args.g_min:
            raise UsageError("scan range needs --g-step > 0 and --g-max >= --g-min")
    if cmd == "plot" and (args.input is None or args.svg is None):
        raise UsageError("'plot' requires --input and --svg")

    steps = defaults["steps"] if args.steps is None else args.steps
    tau = defaults["tau"] if args.tau is None else args.tau
    if steps < 1 or not tau > 0:
        raise UsageError("--steps must be >= 1 and --tau > 0")
    if args.trotter_m is not None and args.trotter_m < 1:
        raise UsageError("--trotter-m must be >= 1")
    threads = 0 if args.threads is None else args.threads
    if threads < 0:
        raise UsageError("--threads must be >= 0")

    window = args.window
    if window is None and cmd == "sizes":
        window = (2.0, None)
    fmt = args.format or ("json" if args.out and args.out.lower().endswith(".json") else "csv")

    return RunConfig(
        command=cmd,
        model=model,
        n_values=tuple(n_values),
        delta=float(delta),
        g=args.g,
        g_min=args.g_min,
        g_max=args.g_max,
        g_step=args.g_step,
        steps=steps,
        tau=tau,
        method=args.method or "exact",
        trotter_m=args.trotter_m,
        average_mode=args.avg or AveragingMode.POINT_MEAN.value,
        window=window,
        ancilla=bool(args.ancilla),
        out=args.out,
        fmt=fmt,
        svg=args.svg,
        threads=threads,
        input=args.input,
    )


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        rio._write_text(path, text)


def execute(cfg: RunConfig) -> None:
    if cfg.command in ("quench", "equilibrium"):
        spec = cfg.quench_spec()
        if cfg.command == "quench":
            series = run_quench(spec)
        else:
            series = run_equilibrium(spec.replace(initial=GroundStateOf(cfg.g)), use_ancilla=cfg.ancilla)
            if series.ancilla_discrepancy is not None:
                print(f"ancilla discrepancy: {series.ancilla_discrepancy:.3e}", file=sys.stderr)
        _emit(rio.series_to_text(series, cfg.fmt), cfg.out)
        if cfg.svg:
            rio.render_svg(series, cfg.svg, title=f"{cfg.model.upper()} N={cfg.n_sites} g={cfg.g}")
    elif cfg.command == "scan":
        curve = scan_field(cfg.quench_spec(field=0.0), cfg.g_grid(), cfg.average_mode, cfg.window, cfg.threads)
        cp = estimate_critical_point(curve)
        print(f"critical point estimate: g = {cp.g:.4f} (crossed={cp.crossed})", file=sys.stderr)
        _emit(rio.scan_to_text(curve, cfg.fmt), cfg.out)
        if cfg.svg:
            rio.render_svg(curve, cfg.svg, title=f"{cfg.model.upper()} N={cfg.n_sites}")
    elif cfg.command == "sizes":
        result = size_sweep(cfg.quench_spec(), cfg.n_values, cfg.window, workers=cfg.threads)
        _emit(rio.sizes_to_text(result, cfg.fmt), cfg.out)
        if cfg.svg:
            x = result.series[0].t
            channels = {f"N={n}": s.f_real for n, s in zip(result.n_values, result.series) if s.t.size == x.size}
            rio.render_svg((x, channels), cfg.svg, x_label="t", y_label="F_R")
    else:
        text = rio._read_text(cfg.input)
        fmt = "json" if cfg.input.lower().endswith(".json") else "csv"
        is_scan = ('"points"' in text) if fmt == "json" else text.startswith(",".join(rio.SCAN_HEADER))
        table = rio.read_scan(cfg.input, fmt) if is_scan else rio.read_series(cfg.input, fmt)
        rio.render_svg(table, cfg.svg)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        print(json.dumps(cfg.to_dict(), sort_keys=True), file=sys.stderr)
        execute(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(build_parser().format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OutputError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
