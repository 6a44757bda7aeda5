"""Command-line entry point: verification harness, simulations, statistics,
method comparison, feasible-set enumeration, a terminal advisor REPL, and
the HTTP service."""

from __future__ import annotations

import argparse
import os
import sys

from . import textio
from .feasibility import enumerate_feasible, unimprovable_fraction
from .methods import (
    copeland_method,
    induced_method,
    is_consistent,
    is_faithful,
    kemeny_method,
    method_efficient,
)
from .relations import chain_ranking
from .service import ADVISORS, AdvisorEngine, SessionStore
from .simulate import dominance_sweep
from .strategies import greedy_error_free, insertion_sort
from .verify import CHECKS, run_check

DEFAULT_PORT = 8000
DEFAULT_STORE = "pairvote_sessions.jsonl"


def _store_path(args) -> str:
    return args.store or os.environ.get("PAIRVOTE_STORE", DEFAULT_STORE)


def cmd_verify(args) -> int:
    result = run_check(args.check, args.n)
    sys.stdout.write(result.dump())
    return 0 if result.ok else 1


def cmd_simulate(args) -> int:
    result = dominance_sweep(args.n, args.voters, args.cases, args.seed)
    print(result.report())
    if result.counterexample:
        ce = result.counterexample
        print(f"case={ce['case']} pref={textio.dump_ranking(ce['pref'])}")
        print(f"sincere={textio.dump_ranking(ce['sincere_outcome'])}")
        print(f"deviant={textio.dump_ranking(ce['deviant_outcome'])}")
    return 0 if result.failures == 0 else 1


def cmd_stats(args) -> int:
    print(unimprovable_fraction(args.n, args.trials, args.seed).report())
    return 0


def cmd_compare_methods(args) -> int:
    n = args.n
    tiebreak = chain_ranking(n)
    pref = chain_ranking(n)
    methods = [
        induced_method(insertion_sort(), n),
        induced_method(greedy_error_free(), n),
        copeland_method(n, tiebreak),
        kemeny_method(n, tiebreak),
    ]
    os.makedirs(args.out, exist_ok=True)
    print(f"{'method':<24} {'faithful':<9} {'consistent':<11} efficient")
    for method in methods:
        faithful = is_faithful(method)
        consistent = is_consistent(method)
        efficient = method_efficient(method, pref)
        print(
            f"{method.name:<24} {str(faithful.ok).lower():<9} "
            f"{str(consistent.ok).lower():<11} {str(efficient.ok).lower()}"
        )
        if not consistent.ok:
            w1, w2 = consistent.counterexample["wills"]
            path = os.path.join(args.out, f"{method.name}_consistency.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(textio.dump_relation(w1))
                fh.write(textio.dump_relation(w2))
            print(f"  consistency certificate -> {path}")
        if not efficient.ok:
            ce = efficient.counterexample
            path = os.path.join(args.out, f"{method.name}_efficiency.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(textio.dump_relation(ce["will"]))
                fh.write(textio.dump_ranking(ce["output"]) + "\n")
            print(f"  efficiency certificate -> {path}")
    return 0


def cmd_enumerate(args) -> int:
    with open(args.will, encoding="utf-8") as fh:
        will = textio.parse_tournament(fh.read())
    for ranking in enumerate_feasible(will).rankings:
        print(textio.dump_ranking(ranking))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    port = args.port or int(os.environ.get("PAIRVOTE_PORT", DEFAULT_PORT))
    app = create_app(_store_path(args), args.static)
    uvicorn.run(app, host=args.host, port=port)
    return 0


def cmd_advise(args) -> int:
    engine = AdvisorEngine(SessionStore(_store_path(args)))
    pref = [int(tok) for tok in args.pref.split()] if args.pref else list(range(1, args.n + 1))
    session = engine.create_session(args.n, pref, args.advisor)
    print(f"session {session.id} (advisor: {session.advisor})")
    print("commands: '<winner> <loser>' records a vote, 'whatif X Y', 'undo', 'quit'")
    while True:
        state = engine.get(session.id).to_dict()
        if state["status"] == "complete":
            print("final ranking: " + " ".join(str(x) for x in state["ranking"]))
            return 0
        rec = engine.recommend(session.id)
        ranked = ", ".join(f"{e['above']}>{e['below']}({e['source'][0]})" for e in state["edges"])
        print("\nranked: " + (ranked or "-"))
        for cls in rec["classifications"]:
            wit = cls["miss_witnesses"] + cls["risk_witnesses"]
            extra = f" witnesses={wit}" if wit else ""
            print(f"  {{{cls['pair'][0]},{cls['pair'][1]}}}: {cls['status']}{extra}")
        print(f"advisor recommends {{{rec['pair'][0]},{rec['pair'][1]}}}")
        try:
            line = input("> ").strip()
        except EOFError:
            return 0
        if not line:
            continue
        if line in ("quit", "q"):
            return 0
        try:
            if line == "undo":
                engine.undo(session.id)
            elif line.startswith("whatif"):
                _, a, b = line.split()
                report = engine.what_if(session.id, int(a), int(b))
                for branch in report["branches"]:
                    print(
                        f"  if {branch['winner']} beats {branch['loser']}: "
                        f"imposes {branch['imposed'] or 'nothing'}"
                    )
            else:
                w, l = (int(tok) for tok in line.split())
                _, implied = engine.record_outcome(session.id, w, l)
                if implied:
                    print(f"  imposed by transitivity: {implied}")
        except Exception as exc:  # surface protocol errors, keep the session
            print(f"  error: {exc}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pairvote")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="exhaustively verify a named result")
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("simulate", help="randomized dominance sweep")
    p.add_argument("what", choices=["dominance"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--voters", type=int, default=3)
    p.add_argument("--cases", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("stats", help="unimprovable-fraction estimate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("compare-methods", help="faithful/consistent/efficient per method")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--out", default="method_certificates")
    p.set_defaults(fn=cmd_compare_methods)

    p = sub.add_parser("enumerate", help="feasible rankings of a tournament file")
    p.add_argument("--will", required=True)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("serve", help="run the advisor HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--store", default=None)
    p.add_argument("--static", default=None)
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("advise", help="terminal advisor REPL")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pref", default=None, help="space-separated chair preference")
    p.add_argument("--advisor", default="greedy", choices=sorted(ADVISORS))
    p.add_argument("--store", default=None)
    p.set_defaults(fn=cmd_advise)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
