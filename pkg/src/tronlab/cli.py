"""Command-line entry point.

Exit codes: 0 success, 1 a property violation or conjecture counterexample
was found (so CI can tell findings from crashes), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificates import certify, format_certificate
from .decomposition import decompose, format_decomposition
from .engine import Player, outcome, replay_transcript
from .graphs import (
    Instance,
    TronParseError,
    load_instance,
    parse_instance,
    save_instance,
)
from .lab import (
    GeneratorConfig,
    SearchConfig,
    TheoremViolation,
    conjecture_scan,
    extremal_search,
    fuzz_theorem,
    run_theorem_corpus,
    theorem_corpus,
)
from .policies import avoid_bob, longest_path_bob, optimal_policy, simulate
from .solver import game_value

USAGE_ERROR = 2
VIOLATION = 1


def _load(path: str, normalize: bool) -> Instance:
    try:
        return load_instance(path, normalize=normalize)
    except FileNotFoundError:
        raise SystemExit(_usage_fail(f"no such file: {path}"))
    except TronParseError as exc:
        raise SystemExit(_usage_fail(f"{path}: {exc}"))


def _usage_fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def cmd_solve(args) -> int:
    inst = _load(args.file, args.normalize)
    report = game_value(inst, backend=args.backend)
    print(f"delta = {report.delta}")
    print("optimal starts:", "{" + ", ".join(map(str, sorted(report.optimal_starts))) + "}")
    print("start  value      reply")
    for rec in report.per_start:
        reply = "-" if rec.bob_reply is None else rec.bob_reply
        print(f"{rec.start:>5}  {str(rec.value):>9}  {reply}")
    best = min(report.per_start, key=lambda r: (r.value, r.start))
    from .engine import move_code, initial_state, apply_move

    s = initial_state(inst)
    codes = []
    for m in best.principal_variation:
        codes.append(move_code(s.turn, m))
        s = apply_move(s, m)
    print("principal variation:", " ".join(codes))
    return 0


def cmd_analyze(args) -> int:
    inst = _load(args.file, args.normalize)
    if not inst.graph.is_tree or inst.n < 2:
        return _usage_fail("analyze needs a tree with at least two vertices")
    print(format_decomposition(decompose(inst)))
    return 0


def cmd_certify(args) -> int:
    inst = _load(args.file, args.normalize)
    if not inst.graph.is_tree or inst.n < 2:
        return _usage_fail("certify needs a tree with at least two vertices")
    report = certify(inst)
    print(format_certificate(report))
    if report.violations or report.failed_combinations:
        return VIOLATION
    return 0


def _parse_policy(spec: str, inst: Instance, side: Player):
    if spec == "optimal":
        return optimal_policy(side)
    if spec == "longestpath":
        return longest_path_bob(inst)
    if spec.startswith("avoidbob:"):
        params = dict(part.split("=", 1) for part in spec.split(":", 1)[1].split(","))
        u = int(params["u"])
        v = int(params.get("v", params["u"]))
        return avoid_bob(inst, u, v)
    raise ValueError(f"unknown policy {spec!r} (use optimal, longestpath, avoidbob:u=3,v=7)")


def cmd_simulate(args) -> int:
    inst = _load(args.file, args.normalize)
    try:
        alice = _parse_policy(args.alice, inst, Player.ALICE)
        bob = _parse_policy(args.bob, inst, Player.BOB)
    except (ValueError, KeyError) as exc:
        return _usage_fail(str(exc))
    t = simulate(inst, alice, bob)
    print(t.text(), end="")
    print(f"# value {t.final.value} alice {t.final.alice_weight} bob {t.final.bob_weight}")
    return 0


def cmd_fuzz(args) -> int:
    try:
        if args.family == "corpus":
            summary = run_theorem_corpus(args.count)
        else:
            cfg = GeneratorConfig(args.family, args.n_max, args.weights, args.seed)
            summary = fuzz_theorem(cfg, args.count)
    except TheoremViolation as exc:
        print(f"VIOLATION: {exc}", file=sys.stderr)
        print(exc.instance_text, file=sys.stderr)
        return VIOLATION
    print(f"instances: {summary.instances}")
    print(f"max delta: {summary.max_delta}")
    print(f"violations: {summary.violations}")
    for name in sorted(summary.firings):
        print(f"fired {name}: {summary.firings[name]}")
    return 0


def cmd_search(args) -> int:
    cfg = SearchConfig(budget=args.budget, seed=args.seed)
    try:
        result = extremal_search(cfg)
    except TheoremViolation as exc:
        print(f"VIOLATION: {exc}", file=sys.stderr)
        print(exc.instance_text, file=sys.stderr)
        return VIOLATION
    print(f"best delta: {result.best_delta}")
    print(f"evaluations: {result.evaluations} truncated: {result.truncated}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "best.tron"
        path.write_text(result.best_instance)
        (out / "search.json").write_text(result.to_json() + "\n")
        print(f"wrote {path}")
    else:
        print(result.best_instance, end="")
    return 0


def cmd_scan(args) -> int:
    summary = conjecture_scan(
        args.target, n_max=args.n_max, samples=args.count, seed=args.seed
    )
    print(f"target: {summary.target} (ceiling {summary.threshold})")
    print(f"evaluated: {summary.evaluated}")
    print(f"max delta: {summary.max_delta}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "scan.json").write_text(summary.to_json() + "\n")
        for i, text in enumerate(summary.findings):
            (out / f"finding_{i}.tron").write_text(text)
    if summary.findings:
        print(f"FINDINGS: {len(summary.findings)} instances above the ceiling")
        for text in summary.findings:
            print(text, end="")
        return VIOLATION
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(log_dir=args.log_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_replay(args) -> int:
    inst = _load(args.file, args.normalize)
    try:
        text = Path(args.transcript).read_text()
    except FileNotFoundError:
        return _usage_fail(f"no such file: {args.transcript}")
    from .engine import IllegalMoveError

    try:
        final = replay_transcript(inst, text)
    except IllegalMoveError as exc:
        return _usage_fail(str(exc))
    print(f"phase: {final.phase.value}")
    print(f"alice: {list(final.alice_path)}")
    print(f"bob:   {list(final.bob_path)}")
    if final.finished:
        out = outcome(final)
        print(f"value: {out.value} (alice {out.alice_weight}, bob {out.bob_weight})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tronlab",
        description="Exact analysis workbench for weighted Tron on trees.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_instance_arg(p):
        p.add_argument("file", help=".tron v1 instance file")
        p.add_argument(
            "--normalize",
            action="store_true",
            help="rescale weights to sum to 1 instead of rejecting",
        )

    p = sub.add_parser("solve", help="exact value, per-start table, optimal line")
    add_instance_arg(p)
    p.add_argument("--backend", choices=["general", "treepath"], default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="crossing edge and side decomposition")
    add_instance_arg(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="evaluate every strategy certificate")
    add_instance_arg(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("simulate", help="pit two policies against each other")
    add_instance_arg(p)
    p.add_argument("--alice", default="optimal")
    p.add_argument("--bob", default="optimal")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fuzz", help="solve+decompose+certify generated trees")
    p.add_argument("--family", default="corpus",
                   choices=["corpus", "random", "path", "star", "spider",
                            "caterpillar", "twin_spider"])
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.add_argument("--weights", default="random")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("search", help="hunt for high-value tree instances")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="directory for best.tron + search.json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan", help="conjecture scans over uniform trees or cycles")
    p.add_argument("target", choices=["unweighted_trees", "cycles"])
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("serve", help="run the interactive play server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-dir", default=None, dest="log_dir",
                   help="append each session's moves to <dir>/<id>.log")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay", help="re-run a transcript against an instance")
    add_instance_arg(p)
    p.add_argument("transcript", help="file with one move code per line")
    p.set_defaults(func=cmd_replay)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
