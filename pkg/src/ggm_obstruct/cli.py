"""Command line interface.

    ggm-obstruct check FILE [--json] [--ls1-only | --ls2-only]
                 [--dump-systems DIR] [--self-test N] [--seed S]
    ggm-obstruct check --batch DIR [--jobs J] ...
    ggm-obstruct example

Exit status: 0 inconclusive, 10 obstructed, 2 invalid input, 1 internal error
(including a failed self-test).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import GGMError, InvalidManifold
from .fileio import load_manifold, parse_manifold, serialize_manifold
from .report import RunOptions, load_example, run

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_OBSTRUCTED = 10


def _check_one(path: str, options: RunOptions):
    """Returns ``(exit_code, payload)``; payload is a report or an error dict."""
    try:
        if path == "-":
            spec = parse_manifold(sys.stdin.read())
        else:
            spec = load_manifold(path)
        report = run(spec, options)
    except InvalidManifold as exc:
        return EXIT_INVALID, {"error": exc.code, "message": str(exc)}
    except OSError as exc:
        return EXIT_INVALID, {"error": "io_error", "message": str(exc)}
    except GGMError as exc:
        return EXIT_INTERNAL, {"error": exc.code, "message": str(exc)}
    if report.self_test is not None and not report.self_test["passed"]:
        return EXIT_INTERNAL, report
    return (EXIT_OBSTRUCTED if report.obstructed else EXIT_OK), report


def _render(payload, as_json: bool) -> str:
    if isinstance(payload, dict):
        if as_json:
            return json.dumps(payload, indent=2)
        return f"error [{payload['error']}]: {payload['message']}"
    return payload.to_json() if as_json else payload.to_text()


def _batch_worker(args):
    path, options = args
    code, payload = _check_one(path, options)
    if not isinstance(payload, dict):
        payload = payload.to_dict()
    return path, code, payload


def _combine(codes) -> int:
    for c in (EXIT_INTERNAL, EXIT_INVALID, EXIT_OBSTRUCTED):
        if c in codes:
            return c
    return EXIT_OK


def cmd_check(args) -> int:
    systems = "ls1" if args.ls1_only else "ls2" if args.ls2_only else "both"
    if args.batch:
        paths = sorted(
            os.path.join(args.batch, f) for f in os.listdir(args.batch) if f.endswith(".json")
        )
        jobs = []
        for p in paths:
            dump = None
            if args.dump_systems:
                dump = os.path.join(args.dump_systems, os.path.splitext(os.path.basename(p))[0])
            jobs.append((p, RunOptions(systems, dump, args.self_test, args.seed)))
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_batch_worker, jobs))
        else:
            results = [_batch_worker(j) for j in jobs]
        if args.json:
            print(json.dumps([{"file": p, "exit_code": c, "result": r} for p, c, r in results], indent=2))
        else:
            for p, c, r in results:
                print(f"== {p} (exit {c})")
                if "error" in r:
                    print(f"error [{r['error']}]: {r['message']}")
                else:
                    print(f"verdict {r['verdict']}; c = {_corank(r, 'ls1')}, c' = {_corank(r, 'ls2')}")
        return _combine({c for _, c, _ in results})

    if args.file is None:
        print("error: a FILE or --batch DIR is required", file=sys.stderr)
        return EXIT_INVALID
    options = RunOptions(systems, args.dump_systems, args.self_test, args.seed)
    code, payload = _check_one(args.file, options)
    out = _render(payload, args.json)
    print(out, file=sys.stderr if isinstance(payload, dict) and not args.json else sys.stdout)
    return code


def _corank(r, key):
    return r[key]["corank"] if r.get(key) else "n/a"


def cmd_example(args) -> int:
    print(serialize_manifold(load_example()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ggm-obstruct",
        description="Corank obstructions to nonpositive curvature for generalized graph manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="compute c and c' for a manifold file")
    check.add_argument("file", nargs="?", help="manifold JSON file, or - for stdin")
    check.add_argument("--json", action="store_true", help="emit the report as JSON")
    only = check.add_mutually_exclusive_group()
    only.add_argument("--ls1-only", action="store_true", help="only the first system (c)")
    only.add_argument("--ls2-only", action="store_true", help="only the second system (c')")
    check.add_argument("--dump-systems", metavar="DIR", help="write coefficient matrices as JSON")
    check.add_argument("--self-test", type=int, default=0, metavar="N",
                       help="check corank invariance under N random basis changes")
    check.add_argument("--seed", type=int, default=0, help="seed for --self-test")
    check.add_argument("--batch", metavar="DIR", help="check every *.json file in DIR")
    check.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    check.set_defaults(func=cmd_check)

    example = sub.add_parser("example", help="print the bundled four-dimensional example")
    example.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # keep the documented exit status for crashes
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
