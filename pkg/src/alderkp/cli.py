"""Command-line front end: ``count``, ``sweep``, ``verify`` and ``asymptotic``.

Exit codes: 0 success/pass, 1 check failed, 2 invalid arguments or hypothesis
violation, 3 engine disagreement, 4 I/O failure.

Series used by sweeps are cached on disk, one file per key, so interrupted
sweeps resume cheaply.  The default directory is taken from the
``ALDERKP_CACHE_DIR`` environment variable (falling back to
``~/.cache/alderkp``); ``--no-cache`` bypasses it.
"""

from __future__ import annotations

import argparse
import hashlib
import inspect
import json
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .asymptotics import AsymptoticHypothesisError, NoCrossover, crossover_nd, meinardus_params
from .delta import CHECKS, DeltaKind, EngineDisagreement, HypothesisViolation, sweep, verify_named
from .maps import READINGS
from .partitions import VARIANTS, GapSpec, count_gap, count_partset, residue_spec
from .qseries import ParameterError, TruncatedSeries, gf_gap, gf_Q

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENGINE, EXIT_IO = 0, 1, 2, 3, 4
CACHE_ENV = "ALDERKP_CACHE_DIR"
CACHE_FORMAT = "alderkp-series-cache"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "alderkp"


class SeriesCache:
    """Disk-backed series source; one JSON file per key, written atomically.

    Each file holds a header line (format, tool version, key, engine,
    creation time) followed by the serialized series.  Entries whose header
    does not match the requested key and current version, or that fail to
    parse, are deleted and recomputed.
    """

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:32]
        return self.directory / f"{key['kind']}-{digest}.json"

    def load(self, key: dict) -> TruncatedSeries | None:
        path = self._path(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        try:
            header_line, body = text.split("\n", 1)
            header = json.loads(header_line)
            if header.get("format") != CACHE_FORMAT or header.get("version") != __version__:
                raise ValueError("stale entry")
            if header.get("key") != key:
                raise ValueError("key mismatch")
            series = TruncatedSeries.from_json(body)
            if series.degree_bound != key["N"]:
                raise ValueError("degree mismatch")
            return series
        except (ValueError, KeyError, TypeError):
            path.unlink(missing_ok=True)
            return None

    def store(self, key: dict, series: TruncatedSeries) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        header = {
            "format": CACHE_FORMAT,
            "version": __version__,
            "key": key,
            "engine": "series",
            "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        }
        payload = json.dumps(header, sort_keys=True) + "\n" + series.to_json() + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def _get(self, key: dict, build) -> TruncatedSeries:
        hit = self.load(key)
        if hit is not None:
            return hit
        series = build()
        self.store(key, series)
        return series

    def gap(self, d: int, a: int, N: int) -> TruncatedSeries:
        key = {"kind": "gap", "d": d, "a": a, "N": N}
        return self._get(key, lambda: gf_gap(d, a, N))

    def residue(self, variant: str, d: int, b: int, N: int) -> TruncatedSeries:
        spec = residue_spec(variant, d, b)
        key = {
            "kind": "residue",
            "variant": variant,
            "d": d,
            "b": b,
            "excluded": sorted(spec.excluded),
            "N": N,
        }
        return self._get(key, lambda: gf_Q(variant, d, b, N))


class UsageError(Exception):
    pass


# -- subcommands -------------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise UsageError("n must be >= 0")
    if args.kind == "gap":
        if args.d < 1:
            raise UsageError(f"gap d must be >= 1 (got --d {args.d})")
        if args.a < 1:
            raise UsageError(f"minimum part a must be >= 1 (got --a {args.a})")
        print(count_gap(GapSpec(args.d, args.a), args.n))
    else:
        if args.b is None:
            raise UsageError("--b is required for --kind residue")
        try:
            spec = residue_spec(args.variant, args.d, args.b)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        print(count_partset(spec, args.n))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.d_from > args.d_to:
        raise UsageError(f"empty d range [{args.d_from}, {args.d_to}]")
    if args.n_min > args.n_max or args.n_max < 0:
        raise UsageError(f"empty n range [{args.n_min}, {args.n_max}]")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        kind = DeltaKind(args.variant, args.a, args.b)
        for d in range(args.d_from, args.d_to + 1):
            kind.check(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    source = None if args.no_cache else SeriesCache(args.cache_dir or default_cache_dir())
    try:
        report = sweep(
            kind,
            range(args.d_from, args.d_to + 1),
            range(args.n_min, args.n_max + 1),
            cross_check=args.cross_check,
            seed=args.seed,
            jobs=args.jobs,
            source=source,
        )
    except EngineDisagreement as exc:
        print(f"engine disagreement: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    print(report.summary_line())
    if args.out:
        text = report.to_csv() if args.format == "csv" else report.to_json()
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


# CLI flag -> keyword accepted by the check functions
VERIFY_FLAGS = ("n_max", "d", "a", "b", "k", "l", "s", "t", "m", "d_min", "d_max", "count", "max_weight", "reading", "N")


def cmd_verify(args: argparse.Namespace) -> int:
    fn = CHECKS[args.check]
    accepted = set(inspect.signature(fn).parameters)
    params = {}
    for name in VERIFY_FLAGS:
        value = getattr(args, name)
        if value is None:
            continue
        if name not in accepted:
            raise UsageError(f"check {args.check!r} does not take --{name.replace('_', '-')}")
        params[name] = value
    try:
        report = verify_named(args.check, **params)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(("pass" if report.passed else "FAIL") + f": {report.summary()}")
    if not report.passed:
        for w in report.to_dict()["witnesses"][:5]:
            print(f"  witness: {json.dumps(w, sort_keys=True)}")
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            print(f"cannot write {args.report}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_asymptotic(args: argparse.Namespace) -> int:
    if args.d < 1 or args.a < 1:
        raise UsageError("need --d >= 1 and --a >= 1")
    if args.precision < 15:
        raise UsageError("--precision must be >= 15")
    params = meinardus_params(args.d, args.a, precision=args.precision)
    record = params.to_dict()
    if args.find_crossover:
        try:
            record.update(crossover_nd(args.d, args.a).to_dict())
        except AsymptoticHypothesisError as exc:
            raise UsageError(str(exc)) from exc
        except NoCrossover as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alderkp", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact q_d^(a)(n) or Q_d^(b,...)(n)")
    p.add_argument("--kind", choices=("gap", "residue"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int)
    p.add_argument("--variant", choices=VARIANTS, default="plain")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="exact Delta grid over a d and n range")
    p.add_argument("--variant", choices=VARIANTS, default="plain")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--d-from", type=int, required=True)
    p.add_argument("--d-to", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cross-check", type=float, default=0.01, help="fraction of cells re-derived by DP")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a named check on a finite grid")
    p.add_argument("--check", choices=sorted(CHECKS), required=True)
    for name in VERIFY_FLAGS:
        if name == "reading":
            p.add_argument("--reading", choices=READINGS)
        else:
            p.add_argument("--" + name.replace("_", "-"), dest=name, type=int)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotic", help="Meinardus parameters and crossover search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--precision", type=int, default=50)
    p.add_argument("--find-crossover", action="store_true")
    p.set_defaults(func=cmd_asymptotic)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
