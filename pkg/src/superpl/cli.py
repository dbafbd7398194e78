"""Command-line driver: run verification suites and export structure constants."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, InvalidShape
from .report import SuiteResult, Timer, VerificationReport
from .scalar import format_scalar
from .supermatrix import BlockShape

DEFAULTS = {"m": 2, "n": 1, "degree": 3, "suite": ["all"], "seed": 0, "format": "json", "out": None}


@dataclass
class RunConfig:
    m: int = 2
    n: int = 1
    degree: int = 3
    suites: list = field(default_factory=lambda: ["all"])
    seed: int = 0
    format: str = "json"
    out: str | None = None

    def validate(self) -> None:
        from .poisson import SUITE_NAMES
        if self.m < 1 or self.n < 1:
            raise ConfigError("m and n must be positive")
        if self.m == self.n:
            raise ConfigError("m must differ from n")
        if not 2 <= self.degree <= 5:
            raise ConfigError("degree must lie in 2..5")
        for s in self.suites:
            if s != "all" and s not in SUITE_NAMES:
                raise ConfigError(f"unknown suite {s!r}")
        if self.format not in ("json", "markdown"):
            raise ConfigError(f"unknown format {self.format!r}")

    @property
    def shape(self) -> BlockShape:
        try:
            return BlockShape(self.m, self.n)
        except InvalidShape as exc:
            raise ConfigError(str(exc)) from exc

    def selected(self) -> list:
        from .poisson import SUITE_NAMES
        if "all" in self.suites:
            return list(SUITE_NAMES)
        seen = []
        for s in self.suites:
            if s not in seen:
                seen.append(s)
        return seen

    def echo(self) -> dict:
        return {"m": self.m, "n": self.n, "degree": self.degree, "suites": self.selected(), "seed": self.seed}


def read_config_file(path: str) -> dict:
    """Plain key = value lines; '#' starts a comment; suites are comma separated."""
    out: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in ("m", "n", "degree", "seed"):
            try:
                out[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from exc
        elif key in ("suite", "suites"):
            out["suite"] = [s.strip() for s in value.split(",") if s.strip()]
        elif key in ("format", "out"):
            out[key] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superpl", description=__doc__)
    p.add_argument("--m", type=int, help="size of the even block")
    p.add_argument("--n", type=int, help="size of the odd block")
    p.add_argument("--degree", type=int, help="truncation degree D (2..5)")
    p.add_argument("--suite", action="append", help="suite name or 'all' (repeatable)")
    p.add_argument("--seed", type=int, help="seed for sampled suites")
    p.add_argument("--format", choices=("json", "markdown"), help="report format")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--export-constants", metavar="DIR", help="write JSON-lines datasets into DIR")
    p.add_argument("--config", help="key = value file supplying defaults")
    p.add_argument("--timings", action="store_true", help="include wall times in JSON reports")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = dict(DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in ("m", "n", "degree", "suite", "seed", "format", "out"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    cfg = RunConfig(values["m"], values["n"], values["degree"], list(values["suite"]),
                    values["seed"], values["format"], values["out"])
    cfg.validate()
    return cfg


def run(config: RunConfig) -> VerificationReport:
    """Run the selected suites in catalogue order."""
    from .poisson import conventions, suite_catalogue
    config.validate()
    shape = config.shape
    catalogue = suite_catalogue()
    suites = []
    for name in config.selected():
        holder = SuiteResult(name)
        with Timer(holder):
            res = catalogue[name](shape, config.degree, config.seed)
        res.name = name
        res.wall_time = holder.wall_time
        suites.append(res)
    return VerificationReport(config.echo(), suites, conventions(shape))


def _jsonable(record: dict) -> dict:
    return {k: format_scalar(v) if k == "value" else v for k, v in record.items()}


def export_constants(config: RunConfig, directory: str) -> list[Path]:
    """basis.jsonl, constants.jsonl (double) and dual_constants.jsonl (g*, b*)."""
    from .duality import export_dual_constants
    from .liealg import build_double_basis, structure_constants
    shape = config.shape
    basis = build_double_basis(shape)
    d = len(basis)
    target = Path(directory)
    try:
        target.mkdir(parents=True, exist_ok=True)
        paths = [target / "basis.jsonl", target / "constants.jsonl", target / "dual_constants.jsonl"]
        with paths[0].open("w") as fh:
            for k, x in enumerate(basis.combined()):
                rec = {"basis": "T" if k < d else "t", "index": k + 1, "label": basis.combined_labels()[k],
                       "parity": x.bit, "matrix": x.to_json()}
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        with paths[1].open("w") as fh:
            for rec in structure_constants(shape):
                fh.write(json.dumps(_jsonable(dict(rec, source="d")), sort_keys=True) + "\n")
        with paths[2].open("w") as fh:
            for rec in export_dual_constants(shape):
                fh.write(json.dumps(_jsonable(rec), sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write datasets to {directory}: {exc}") from exc
    return paths


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if args.export_constants:
            export_constants(config, args.export_constants)
        report = run(config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    text = report.to_json(args.timings) if config.format == "json" else report.to_markdown()
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
