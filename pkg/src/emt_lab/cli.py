"""Command-line interface.

  emt-lab run <config.json> [...] [--out DIR] [--seed N] [--jobs N]
  emt-lab verify            run every bundled scenario and its checks
  emt-lab schema <module>   print the parameter schema for a module

Exit codes: 0 success, 1 embedded check failure, 2 configuration error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from . import __version__
from .config import MODULES, ScenarioConfig, load_config, module_schema, validate_config
from .errors import ConfigError, EmtLabError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emt-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"emt-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one or more scenario configs")
    run_p.add_argument("configs", nargs="+", metavar="config.json")
    run_p.add_argument("--out", default=".", help="output directory (default: .)")
    run_p.add_argument("--seed", type=int, default=None, help="override the config seed")
    run_p.add_argument("--jobs", type=int, default=1, help="parallel scenario runs")

    sub.add_parser("verify", help="run all bundled scenarios and their checks")

    schema_p = sub.add_parser("schema", help="print a module's parameter schema")
    schema_p.add_argument("module", help=f"one of: {', '.join(MODULES)}")
    return parser


def _report_line(report) -> str:
    checks = (
        ", ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in report.checks.items())
        or "no embedded checks"
    )
    return (
        f"{report.name}: wrote {', '.join(report.artifact_paths)} "
        f"in {report.wall_time:.3f}s [{checks}] digest={report.config_digest[:12]}"
    )


def _run_one(cfg: ScenarioConfig, out_dir: str):
    from .runner import run_scenario

    return run_scenario(cfg, out_dir=out_dir)


def _cmd_run(args) -> int:
    configs = []
    try:
        for path in args.configs:
            cfg = load_config(path)
            if args.seed is not None:
                cfg = dataclasses.replace(cfg, seed=args.seed)
            configs.append(cfg)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        if args.jobs > 1 and len(configs) > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(lambda c: _run_one(c, args.out), configs))
        else:
            reports = [_run_one(cfg, args.out) for cfg in configs]
    except EmtLabError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    for report in reports:
        print(_report_line(report))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def bundled_scenarios():
    """(name, validated config) for every bundled scenario, sorted by name."""
    root = resources.files("emt_lab") / "scenarios"
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.append((entry.name, validate_config(json.loads(entry.read_text()))))
    return out


def _cmd_verify() -> int:
    import tempfile

    failures = 0
    with tempfile.TemporaryDirectory(prefix="emt-lab-verify-") as tmp:
        for fname, cfg in bundled_scenarios():
            try:
                report = _run_one(cfg, tmp)
            except EmtLabError as exc:
                print(f"{fname}: runtime error: {exc}", file=sys.stderr)
                return EXIT_RUNTIME_ERROR
            status = "ok" if report.passed else "CHECK FAILED"
            print(f"{fname}: {status} [{_report_line(report)}]")
            failures += 0 if report.passed else 1
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def _cmd_schema(module: str) -> int:
    try:
        schema = module_schema(module)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    print(json.dumps(schema, indent=2, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "verify":
        return _cmd_verify()
    return _cmd_schema(args.module)


if __name__ == "__main__":
    sys.exit(main())
