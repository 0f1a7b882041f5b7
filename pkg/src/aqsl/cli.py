"""``aqsl`` command line: OU dynamics, speed-limit sweeps and property checks.

Configuration comes from an optional flat ``key = value`` file; command-line
flags override it. Exit codes: 0 success, 1 invalid config, 2 verification
failure, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import channels, correlations as corr, qsl, svg, verify
from .errors import AqslError, InvalidConfig, NotAState
from .states import BellDiagonalParams, bell_diagonal

log = logging.getLogger("aqsl")

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

DYNAMICS_COLUMNS = ("t", "f_t", "c1_t", "c2_t", "c3_t", "concurrence", "affinity_discord", "hs_discord")
QSL_COLUMNS = ("delta_q", "lambda_op", "lambda_tr", "lambda_hs", "tau_qc", "mode")


@dataclass(frozen=True)
class ExperimentConfig:
    command: str = "dynamics"
    c1: float = 1.0
    c2: float = 1.0
    c3: float = -1.0
    big_gamma: float = 1.0
    gamma: float = 1.0
    t_max: float = 5.0
    steps: int = 51
    sweep: str = "time"
    coupling_lo: float = 0.2
    coupling_hi: float = 5.0
    coupling_n: int = 25
    mode: str = "decay"
    seed: int = 0
    quad_steps: int = qsl.DEFAULT_STEPS
    n_grid: int = corr.DEFAULT_GRID
    out: str = ""
    svg: bool = False

    @property
    def initial_c(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def validate(self) -> "ExperimentConfig":
        if self.command not in ("dynamics", "qsl", "verify"):
            raise InvalidConfig(f"unknown command {self.command!r}")
        if self.steps < 2:
            raise InvalidConfig("steps must be >= 2")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise InvalidConfig("t_max must be positive")
        if not self.coupling_lo < self.coupling_hi or self.coupling_n < 2:
            raise InvalidConfig("coupling range needs lo < hi and n >= 2")
        if self.coupling_lo <= 0:
            raise InvalidConfig("coupling range must be positive")
        if self.sweep not in ("time", "coupling"):
            raise InvalidConfig(f"sweep must be time or coupling, got {self.sweep!r}")
        if self.mode not in ("decay", "creation", "both"):
            raise InvalidConfig(f"mode must be decay, creation or both, got {self.mode!r}")
        if self.quad_steps < 2 or self.n_grid < 10:
            raise InvalidConfig("quad_steps must be >= 2 and n_grid >= 10")
        try:
            BellDiagonalParams(*self.initial_c)
            channels.OuParams(self.big_gamma, self.gamma)
        except (NotAState, ValueError) as exc:
            raise InvalidConfig(str(exc)) from exc
        return self


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}
_ALIASES = {"out_path": "out", "emit_svg": "svg", "gamma_big": "big_gamma"}


def _coerce(key: str, raw) -> object:
    kind = _FIELD_TYPES[key]
    try:
        if kind == "bool":
            if isinstance(raw, bool):
                return raw
            low = str(raw).strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off", ""):
                return False
            raise ValueError(raw)
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        return str(raw).strip()
    except ValueError as exc:
        raise InvalidConfig(f"bad value for {key}: {raw!r}") from exc


def _normalize_key(key: str) -> str:
    key = key.strip().lower().replace("-", "_")
    key = _ALIASES.get(key, key)
    if key not in _FIELD_TYPES:
        raise InvalidConfig(f"unknown config key {key!r}")
    return key


def parse_config_text(text: str) -> dict[str, object]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = _normalize_key(key)
        out[key] = _coerce(key, value.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aqsl", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=("dynamics", "qsl", "verify"))
    ap.add_argument("--config", help="flat key=value file; flags override it")
    for name in ("c1", "c2", "c3", "big-gamma", "gamma", "t-max",
                 "coupling-lo", "coupling-hi"):
        ap.add_argument(f"--{name}", type=float)
    for name in ("steps", "coupling-n", "seed", "quad-steps", "n-grid"):
        ap.add_argument(f"--{name}", type=int)
    ap.add_argument("--sweep", choices=("time", "coupling"))
    ap.add_argument("--mode", choices=("decay", "creation", "both"))
    ap.add_argument("--out", help="output path (CSV, or text report for verify)")
    ap.add_argument("--svg", action="store_true", default=None, help="also write an SVG chart")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(argv: Sequence[str] | None = None) -> tuple[ExperimentConfig, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    values: dict[str, object] = {}
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidConfig(f"cannot read config {args.config}: {exc}") from exc
        values.update(parse_config_text(text))
    for key in _FIELD_TYPES:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    values["command"] = args.command
    return ExperimentConfig(**values).validate(), args


# -- experiments --

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return f"{float(v):.17g}"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def dynamics_rows(cfg: ExperimentConfig) -> list[tuple]:
    p = channels.OuParams(cfg.big_gamma, cfg.gamma)
    c0 = BellDiagonalParams(*cfg.initial_c)
    rho0 = bell_diagonal(c0)
    rows = []
    for t in np.linspace(0.0, cfg.t_max, cfg.steps):
        t = float(t)
        rho = channels.apply(channels.ou_kraus(t, p), rho0)
        ct = channels.evolve_bell_diagonal(c0, t, p)
        rows.append((t, channels.ou_f(t, p), ct.c1, ct.c2, ct.c3,
                     corr.concurrence(rho), corr.affinity_discord(rho),
                     corr.hs_discord(rho, cfg.n_grid)))
    return rows


def run_dynamics(cfg: ExperimentConfig) -> str:
    """CSV text of the OU dynamics of concurrence and both discords."""
    return _csv_text(DYNAMICS_COLUMNS, dynamics_rows(cfg))


def _modes(cfg: ExperimentConfig) -> tuple[str, ...]:
    return ("decay", "creation") if cfg.mode == "both" else (cfg.mode,)


def _qsl_point(cfg: ExperimentConfig, big_gamma: float, tau: float, mode: str) -> qsl.QslProfile:
    p = channels.OuParams(big_gamma, cfg.gamma)
    rho0 = bell_diagonal(cfg.initial_c)
    traj = channels.ou_trajectory(rho0, p)
    if mode == "creation":
        # the channel only destroys correlation; read the same path backwards
        traj = qsl.reversed_trajectory(traj, tau)
    return qsl.tau_qsl(traj(0.0), traj, tau, mode, n_steps=cfg.quad_steps)


def qsl_rows(cfg: ExperimentConfig) -> tuple[tuple[str, ...], list[tuple]]:
    rows = []
    if cfg.sweep == "time":
        header = ("tau",) + QSL_COLUMNS
        taus = [cfg.t_max * k / (cfg.steps - 1) for k in range(1, cfg.steps)]
        for mode in _modes(cfg):
            for tau in taus:
                pr = _qsl_point(cfg, cfg.big_gamma, tau, mode)
                rows.append((tau, pr.delta_q, pr.lambda_op, pr.lambda_tr, pr.lambda_hs, pr.tau_qc, mode))
    else:
        header = ("Gamma", "tau") + QSL_COLUMNS
        for mode in _modes(cfg):
            for g in np.linspace(cfg.coupling_lo, cfg.coupling_hi, cfg.coupling_n):
                pr = _qsl_point(cfg, float(g), cfg.t_max, mode)
                rows.append((float(g), cfg.t_max, pr.delta_q, pr.lambda_op, pr.lambda_tr,
                             pr.lambda_hs, pr.tau_qc, mode))
    return header, rows


def run_qsl(cfg: ExperimentConfig) -> str:
    """CSV text of the speed-limit sweep over driving time or coupling strength."""
    header, rows = qsl_rows(cfg)
    return _csv_text(header, rows)


def run_verify(cfg: ExperimentConfig, closed: verify.ClosedFn | None = None) -> tuple[int, str]:
    """Run every property suite; exit code 0 if all pass, 2 otherwise."""
    ok, report = verify.run_suites(cfg.seed, closed)
    return (EXIT_OK if ok else EXIT_VERIFY), report


def _chart(cfg: ExperimentConfig, text: str) -> str:
    rows = list(csv.DictReader(io.StringIO(text)))
    if cfg.command == "dynamics":
        xs = [float(r["t"]) for r in rows]
        series = {k: (xs, [float(r[k]) for r in rows])
                  for k in ("concurrence", "affinity_discord", "hs_discord")}
        return svg.line_chart(series, f"OU dephasing, c = {cfg.initial_c}, gamma = {cfg.gamma:g}",
                              "t", "correlation")
    xkey = "tau" if cfg.sweep == "time" else "Gamma"
    series = {}
    for mode in _modes(cfg):
        sel = [r for r in rows if r["mode"] == mode]
        series[f"tau_qc ({mode})"] = ([float(r[xkey]) for r in sel], [float(r["tau_qc"]) for r in sel])
    if cfg.sweep == "time":
        xs = [float(r["tau"]) for r in rows if r["mode"] == _modes(cfg)[0]]
        series["tau"] = (xs, xs)
    return svg.line_chart(series, f"QSL time, gamma = {cfg.gamma:g}", xkey, "tau_qc")


def _write(path: str, text: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg, args = config_from_args(argv)
    except InvalidConfig as exc:
        print(f"aqsl: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if cfg.command == "verify":
            code, text = run_verify(cfg)
        else:
            code = EXIT_OK
            text = run_dynamics(cfg) if cfg.command == "dynamics" else run_qsl(cfg)
    except AqslError as exc:
        print(f"aqsl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if cfg.out:
            _write(cfg.out, text)
            log.info("wrote %s", cfg.out)
            if cfg.svg and cfg.command != "verify":
                _write(str(Path(cfg.out).with_suffix(".svg")), _chart(cfg, text))
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"aqsl: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
