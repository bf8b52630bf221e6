"""Command-line front end.

Exit codes: 0 computed or verified, 1 property refuted, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .choosability import choice_number, default_workers, find_bad_assignment
from .colorability import check_coloring, decide_colorable
from .core import Instance, ShapeError, demand_from_json, format_shape, parse_shape

log = logging.getLogger("listcolor")


class UsageError(Exception):
    pass


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _shape(text: str):
    try:
        return parse_shape(text)
    except ShapeError as exc:
        raise UsageError(str(exc)) from exc


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _workers(args) -> int:
    if args.threads is None:
        return default_workers()
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    return args.threads


def _coloring_json(col) -> list:
    return [[i, j, c] for (i, j), c in sorted(col.items())]


# ---------------------------------------------------------------- commands

def cmd_choice(args) -> int:
    shape = _shape(args.shape)
    t = choice_number(shape, workers=_workers(args))
    _emit(args, {"shape": list(shape), "choice_number": t}, str(t))
    return 0


def cmd_choosable(args) -> int:
    shape = _shape(args.shape)
    if args.demand is not None:
        try:
            demand = demand_from_json(Path(args.demand).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.demand}: {exc}") from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad demand file: {exc}") from exc
    else:
        if args.size < 1:
            raise UsageError("--size must be positive")
        demand = args.size
    try:
        cert = find_bad_assignment(shape, demand, args.pot_bound, workers=_workers(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = {"shape": list(shape), "choosable": cert is None}
    if cert is None:
        _emit(args, obj, "true")
        return 0
    obj["certificate"] = cert.to_json_obj()
    text = "false"
    if args.cert:
        Path(args.cert).write_text(json.dumps(cert.to_json_obj(), sort_keys=True) + "\n")
        obj["certificate_path"] = args.cert
        text += f"\ncertificate: {args.cert}"
    else:
        text += "\n" + json.dumps(cert.to_json_obj()["instance"], sort_keys=True)
    _emit(args, obj, text)
    return 1


def cmd_color(args) -> int:
    from .constructive import FalsificationCertificate, PreconditionViolated, color_K3k, solve_K4k

    try:
        inst = Instance.from_json_obj(_read_json(args.instance))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad instance: {exc}") from exc
    route = args.method
    if args.method == "search":
        col = decide_colorable(inst)
    else:
        sizes = set(inst.shape)
        try:
            if sizes == {4}:
                out = solve_K4k(inst)
                col, route = out.coloring, f"constructive/{out.route}"
            elif sizes == {3}:
                col = color_K3k(inst)
            else:
                raise UsageError("constructive coloring needs all parts of size 3 or all of size 4")
        except PreconditionViolated as exc:
            raise UsageError(f"precondition violated: {exc}") from exc
        except FalsificationCertificate as exc:
            print(exc.to_json())
            return 1
    if col is None:
        _emit(args, {"colorable": False, "method": route}, "not colorable")
        return 1
    ok = check_coloring(inst, col)
    obj = {"colorable": True, "method": route, "valid": ok.ok, "coloring": _coloring_json(col)}
    text = "\n".join(f"{i} {j} {c}" for (i, j), c in sorted(col.items()))
    _emit(args, obj, text)
    return 0 if ok else 1


def cmd_paint(args) -> int:
    from .paintability import Solver, uniform_position
    from .paintability.strategy import export_strategy, replay_strategy, strategy_to_json

    shape = _shape(args.shape)
    if args.size < 1:
        raise UsageError("--size must be positive")
    solver = Solver()
    memo = Path(args.memo) if args.memo else None
    if memo is not None and memo.exists():
        try:
            with memo.open("rb") as fh:
                solver.load(fh)
        except ValueError as exc:
            raise UsageError(f"bad memo file: {exc}") from exc
    pos = uniform_position(shape, args.size)
    winner = solver.solve_position(pos)
    obj = {"shape": list(shape), "size": args.size, "winner": winner}
    if args.strategy:
        tree = export_strategy(pos, solver)
        replay_strategy(tree)
        Path(args.strategy).write_text(strategy_to_json(tree) + "\n")
        obj["strategy_path"] = args.strategy
    if memo is not None:
        with memo.open("wb") as fh:
            solver.dump(fh)
    _emit(args, obj, winner)
    return 0


def cmd_paint_number(args) -> int:
    from .paintability import Solver

    shape = _shape(args.shape)
    t = Solver().paint_number(shape, len(shape))
    _emit(args, {"shape": list(shape), "paint_number": t}, str(t))
    return 0


def cmd_gen(args) -> int:
    from .lowerbound import example1, example2

    try:
        spec = example1(args.s, args.k) if args.family == "example1" else example2(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    Path(args.output).write_text(spec.instance.to_json() + "\n")
    obj = {"family": spec.family, "s": spec.s, "k": spec.k, "output": args.output,
           "claimed_size": spec.claimed_size, "shape": format_shape(spec.instance.shape)}
    _emit(args, obj, f"wrote {args.output}")
    return 0


def cmd_verify(args) -> int:
    if args.what == "figure2":
        from .paintability.figure2 import verify_figure2

        rep = verify_figure2()
        bad = [e for e in rep.entries if not e["ok"]]
        text = f"{len(rep.entries) - len(bad)}/{len(rep.entries)} checks passed"
        for e in bad:
            text += f"\nFAIL {e['kind']} {e['name']}"
        _emit(args, rep.to_json_obj(), text)
        return 0 if rep.ok else 1
    from .constructive import claim_one_holds, run_harness

    if args.s not in (3, 4):
        raise UsageError("--s must be 3 or 4")
    if args.kmax < 2 or args.samples < 1:
        raise UsageError("need --kmax >= 2 and --samples >= 1")
    reports = [run_harness(args.s, k, args.samples, seed=args.seed) for k in range(2, args.kmax + 1)]
    claim = claim_one_holds()
    ok = claim and all(r.ok for r in reports)
    obj = {"s": args.s, "claim_one": claim, "ok": ok, "runs": [r.to_json_obj() for r in reports]}
    lines = [f"k={r.k}: {r.valid}/{r.samples} valid, {len(r.certificates)} certificates, "
             f"{len(r.failed_checks)} failed plan checks" for r in reports]
    _emit(args, obj, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: all CPUs)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="listcolor", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("choice", parents=[common], help="choice number of a shape")
    s.add_argument("--shape", required=True, help="e.g. 4*3 or 2,2,3")
    s.set_defaults(func=cmd_choice)

    s = sub.add_parser("choosable", parents=[common], help="decide f-choosability")
    s.add_argument("--shape", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--size", type=int)
    g.add_argument("--demand", help="JSON file {\"parts\": [[f, ...], ...]}")
    s.add_argument("--pot-bound", type=int, default=None)
    s.add_argument("--cert", help="write a bad-assignment certificate here")
    s.set_defaults(func=cmd_choosable)

    s = sub.add_parser("color", parents=[common], help="color an instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--method", choices=["constructive", "search"], default="search")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("paint", parents=[common], help="solve the paint game")
    s.add_argument("--shape", required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--strategy", help="write the winner's strategy tree here")
    s.add_argument("--memo", help="load and save the position memo here")
    s.set_defaults(func=cmd_paint)

    s = sub.add_parser("paint-number", parents=[common], help="on-line choice number")
    s.add_argument("--shape", required=True)
    s.set_defaults(func=cmd_paint_number)

    s = sub.add_parser("gen", parents=[common], help="lower-bound instances")
    s.add_argument("family", choices=["example1", "example2"])
    s.add_argument("--s", type=int, default=2)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", parents=[common], help="machine checks")
    s.add_argument("what", choices=["figure2", "theorem"])
    s.add_argument("--s", type=int, default=4)
    s.add_argument("--kmax", type=int, default=3)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
