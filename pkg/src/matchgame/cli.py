"""Command-line front end.

Subcommands: solve (nucleolus), leastcore, decompose, oracle.  Every run
emits a RunReport: the command, a digest of the input, the result, the
runtime, and the list of verification checks that passed.  All rationals
are printed as "p/q" strings and all node keys use the public labels, so
output is exact and byte-reproducible.

Exit codes: 0 ok, 1 input/parse error, 2 internal invariant failure,
3 cross-check mismatch, 4 decomposition requested on a non-empty core.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import matching
from ._rational import rat_str
from .game import GameFormatError, GameInstance, load_game
from .leastcore import Decomposition, build_decomposition, solve_leastcore
from .maschler import NucleolusResult, nucleolus, run_compact, run_nonempty_core
from .oracle import brute_nucleolus, theta_vector

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INTERNAL = 2
EXIT_MISMATCH = 3
EXIT_NO_DECOMPOSITION = 4

ORACLE_CHECK_LIMIT = 8


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _alloc_dict(game: GameInstance, allocation) -> dict:
    return {game.labels[v]: rat_str(allocation[v]) for v in game.nodes}


def _edge_pair(game, e):
    return [game.labels[e[0]], game.labels[e[1]]]


def _nucleolus_dict(game, res: NucleolusResult) -> dict:
    return {
        "allocation": _alloc_dict(game, res.allocation),
        "epsilons": [rat_str(e) for e in res.epsilons],
        "rounds": res.rounds,
        "method": res.method,
    }


def _decomposition_dict(game, dec: Decomposition) -> dict:
    return {
        "x_star": _alloc_dict(game, dec.x_star),
        "epsilon1": rat_str(dec.epsilon),
        "laminar": [sorted(game.labels[v] for v in s) for s in dec.laminar],
        "blossoms": [sorted(game.labels[v] for v in s) for s in dec.blossoms],
        "representatives": [game.labels[v] for v in dec.representatives],
        "e_plus": [_edge_pair(game, e) for e in dec.e_plus],
        "e_star": [_edge_pair(game, e) for e in dec.e_star],
        "m_star": [_edge_pair(game, e) for e in sorted(dec.m_star)],
    }


def _load(args) -> tuple:
    with open(args.game, "rb") as fh:
        raw = fh.read()
    fmt = args.input_format
    if fmt == "auto":
        fmt = "json" if raw.lstrip()[:1] == b"{" else "edgelist"
    return load_game(raw, fmt), hashlib.sha256(raw).hexdigest()


def _emit(args, command, digest, result, checks, started) -> None:
    report = {
        "command": command,
        "input_digest": digest,
        "result": result,
        "timing_ms": int((time.monotonic() - started) * 1000),
        "checks_passed": checks,
    }
    if args.format == "json":
        print(canonical_json(report))
    else:
        _print_text(result, checks)


def _print_text(result, checks, indent=""):
    if isinstance(result, dict):
        for key, value in result.items():
            if isinstance(value, (dict, list)):
                print(f"{indent}{key}:")
                _print_text(value, None, indent + "  ")
            else:
                print(f"{indent}{key}: {value}")
    elif isinstance(result, list):
        for value in result:
            print(f"{indent}- {value}")
    if checks:
        print(f"{indent}checks passed: {', '.join(checks)}")


def cmd_solve(args) -> int:
    started = time.monotonic()
    game, digest = _load(args)
    if args.method == "compact":
        lc = solve_leastcore(game)
        res = run_compact(game, lc) if lc.epsilon < 0 else run_nonempty_core(game, lc)
    elif args.method == "bruteforce":
        res = brute_nucleolus(game)
    else:
        res = nucleolus(game)
    checks = []
    if args.check:
        if game.n > ORACLE_CHECK_LIMIT:
            print(f"--check needs at most {ORACLE_CHECK_LIMIT} nodes", file=sys.stderr)
            return EXIT_PARSE
        ref = brute_nucleolus(game)
        if ref.allocation != res.allocation or ref.epsilons != res.epsilons:
            print("cross-check mismatch against the exhaustive method", file=sys.stderr)
            return EXIT_MISMATCH
        checks.append("oracle-match")
    _emit(args, "solve", digest, _nucleolus_dict(game, res), checks, started)
    return EXIT_OK


def cmd_leastcore(args) -> int:
    started = time.monotonic()
    game, digest = _load(args)
    lc = solve_leastcore(game)
    result = {
        "epsilon1": rat_str(lc.epsilon),
        "allocation": _alloc_dict(game, lc.allocation),
        "core_empty": lc.epsilon < 0,
    }
    _emit(args, "leastcore", digest, result, [], started)
    return EXIT_OK


def cmd_decompose(args) -> int:
    started = time.monotonic()
    game, digest = _load(args)
    lc = solve_leastcore(game)
    if lc.epsilon >= 0:
        print("the core is non-empty; no decomposition exists", file=sys.stderr)
        return EXIT_NO_DECOMPOSITION
    dec = build_decomposition(game, lc)
    _emit(args, "decompose", digest, _decomposition_dict(game, dec), [], started)
    return EXIT_OK


def cmd_oracle(args) -> int:
    started = time.monotonic()
    game, digest = _load(args)
    res = brute_nucleolus(game)
    theta = theta_vector(game, res.allocation)
    result = _nucleolus_dict(game, res)
    result["theta_head"] = [rat_str(e) for e in theta.sorted_excesses[:20]]
    _emit(args, "oracle", digest, result, [], started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchgame", description="Exact nucleolus solver for weighted matching games."
    )
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument(
        "--input-format", choices=["auto", "json", "edgelist"], default="auto"
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--max-enum", type=int, help="override the matching enumeration bound")
    parser.add_argument("--dump-lp", action="store_true", help="log every solved program")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the nucleolus")
    p.add_argument("game")
    p.add_argument("--method", choices=["compact", "bruteforce", "auto"], default="auto")
    p.add_argument("--check", action="store_true", help="cross-verify with the exhaustive method")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("leastcore", help="compute the leastcore value and a witness")
    p.add_argument("game")
    p.set_defaults(func=cmd_leastcore)

    p = sub.add_parser("decompose", help="dump the leastcore structure (empty core only)")
    p.add_argument("game")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", help="exhaustive nucleolus plus theta-vector head")
    p.add_argument("game")
    p.set_defaults(func=cmd_oracle)
    return parser


def _install_dump_hook():
    from . import lp

    counter = {"n": 0}

    def hook(problem):
        counter["n"] += 1
        print(
            f"[lp {counter['n']}] {len(problem.variables)} vars, "
            f"{len(problem.constraints)} constraints",
            file=sys.stderr,
        )

    lp.dump_hook = hook


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_enum is not None:
        matching.ENUMERATION_EDGE_LIMIT = args.max_enum
    if args.dump_lp:
        _install_dump_hook()
    try:
        return args.func(args)
    except (OSError, GameFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AssertionError, RuntimeError, ValueError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
