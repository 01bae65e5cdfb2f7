"""Command line entry point: ``vofl run --config cfg.json [overrides]``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Set VOFL_THREADS to cap the BLAS thread pool.
"""
from __future__ import annotations

import os

if "VOFL_THREADS" in os.environ:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[_var] = os.environ["VOFL_THREADS"]

import argparse
import csv
import io
import json
import math
import platform
import sys
import tempfile
import warnings
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .errors import ConfigError, VoflError
from .experiments import COLUMNS, EXPERIMENTS, RunConfig, ResultTable, run

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def table_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in table.rows:
        w.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()


def snapshot_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    ncoord = len(table.snapshots[0]) - 3
    w.writerow(["alpha_spec", "time"] + [f"x{i + 1}" for i in range(ncoord)] + ["value"])
    for r in table.snapshots:
        w.writerow([r[0]] + [repr(v) for v in r[1:]])
    return buf.getvalue()


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    return str(o)


def write_outputs(table: ResultTable, out: str | os.PathLike) -> dict:
    """CSV table, JSON sidecar and (for evolutions) a snapshot CSV, each atomic."""
    out = Path(out)
    csv_path = out if out.suffix == ".csv" else out.with_suffix(".csv")
    meta = {"format_version": table.format_version, "library_version": __version__,
            "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version(), **table.meta}
    paths = {"csv": csv_path, "json": csv_path.with_suffix(".json")}
    _atomic_write(paths["csv"], table_csv(table))
    if table.snapshots:
        paths["snapshots"] = csv_path.with_name(csv_path.stem + "_snapshots.csv")
        _atomic_write(paths["snapshots"], snapshot_csv(table))
    _atomic_write(paths["json"], json.dumps(meta, indent=2, sort_keys=True,
                                            default=_json_default) + "\n")
    return paths


def _parse_list(text: str, conv):
    return [conv(v.strip()) for v in text.split(",") if v.strip()]


def _alpha_item(v: str):
    try:
        return float(v)
    except ValueError:
        return v


def load_config(args) -> RunConfig:
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config: top level must be an object")
    else:
        data = {}
    if args.experiment:
        data["experiment"] = args.experiment
    if args.alpha is not None:
        data["alphas"] = _parse_list(args.alpha, _alpha_item)
    if args.nbar is not None:
        try:
            data["nbar"] = _parse_list(args.nbar, int)
        except ValueError:
            raise ConfigError("--nbar: comma separated integers expected") from None
    if args.epsilon is not None:
        data["epsilon"] = args.epsilon
    if args.kernel is not None:
        data["kernel"] = args.kernel
    if args.out is not None:
        data["out"] = args.out
    try:
        return RunConfig.from_dict(data).resolved()
    except TypeError as exc:
        raise ConfigError(f"config: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vofl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one experiment")
    r.add_argument("--config", help="JSON run configuration")
    r.add_argument("--experiment", choices=EXPERIMENTS, help="experiment (overrides config)")
    r.add_argument("--alpha", help="comma separated exponent fields, e.g. alpha1,0.4,2")
    r.add_argument("--nbar", help="comma separated node counts")
    r.add_argument("--epsilon", type=float, help="shape parameter")
    r.add_argument("--kernel", help="gaussian, gimq or bessel")
    r.add_argument("--out", help="output CSV path (JSON sidecar written alongside)")
    r.add_argument("--quiet", action="store_true", help="do not print the table")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            table = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (VoflError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure in {cfg.experiment}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.out:
        write_outputs(table, cfg.out)
    if not args.quiet:
        sys.stdout.write(table_csv(table))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
