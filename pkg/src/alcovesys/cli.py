"""Command-line front end: ``alcovesys <group> <command> [flags]``.

Output is JSON-lines on stdout with sorted keys; rationals are "num/den"
strings.  Exit codes: 0 success, 1 verification failures, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path as FsPath

from . import linalg
from .arrangement import (Alcove, ConeSpec, build_arrangement, cone_order,
                          dominant_cone, half_loop_in)
from .errors import AlcoveSysError, OnWall
from .localsystem import LocalSystem
from .report import dumps, jsonable
from .rootdata import parse_type, weyl_group
from .suites import Config, run_suites


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(s: str) -> tuple[int, ...]:
    s = s.strip().strip("{}[]()")
    return tuple(int(x) for x in s.split(",") if x.strip())


def _rational(s: str) -> Fraction:
    return linalg.parse_rational(s)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="root system label, e.g. A2 (or A with --rank)")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--J", type=_int_list, default=(), help="Levi subset, e.g. 1 or 1,2")
    p.add_argument("--p", type=int, default=5, help="level (must exceed the Coxeter number)")
    p.add_argument("--window", type=_rational, default=None, help="window radius (default 2p)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--bound", type=int, default=20000, help="braid-move search bound")
    p.add_argument("--radius", type=int, default=2, help="Hecke shadow test-ball radius")
    p.add_argument("--loops", type=int, default=20)
    p.add_argument("--v-spec", type=_rational, default=None,
                   help="evaluate the Hecke shadow at a rational v (screening only, non-certifying)")
    p.add_argument("--out", default=None, help="also write the full JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alcovesys",
                     description="Alcove arrangements, affine braid words and the local system of categories.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    rd = groups.add_parser("rootdata").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _common(rd.add_parser("show", help="Cartan matrix, roots, coroots, |W|"))

    al = groups.add_parser("alcoves").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    loc = al.add_parser("locate", help="alcove of a p-regular point (V coordinates)")
    _common(loc)
    loc.add_argument("--point", required=True)
    nb = al.add_parser("neighbors", help="walls and adjacent alcoves")
    _common(nb)
    nb.add_argument("--k", required=True)
    _common(al.add_parser("enumerate", help="alcoves meeting the window"))

    od = groups.add_parser("order").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    ot = od.add_parser("test", help="cone order and half-loop test for two alcoves")
    _common(ot)
    ot.add_argument("--A", required=True)
    ot.add_argument("--B", required=True)
    ot.add_argument("--cone", default="dominant",
                    help="'dominant', a parabolic name such as B#1 or P{2}, or generators '1,0;0,1'")

    pa = groups.add_parser("path").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, help_ in (("compile", "braid word of a path"),
                        ("functor", "functor expression of a path and its normal form"),
                        ("monodromy", "braid word of a loop and its purity")):
        sp = pa.add_parser(name, help=help_)
        _common(sp)
        sp.add_argument("--path", required=True, help="path JSON, or @file")
        if name == "functor":
            sp.add_argument("--allow-kernel", action="store_true",
                            help="use the braid-kernel form for crossings with no valid parabolic")

    ve = groups.add_parser("verify").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("salvetti", "hecke", "bernstein", "localsystem", "all"):
        _common(ve.add_parser(name))
    return parser


def _config(args) -> Config:
    rd = parse_type(args.type, args.rank)
    cfg = Config(rd.series, rd.rank, tuple(sorted(args.J)), args.p, args.window, args.seed,
                 args.bound, args.radius, args.loops, 8, args.v_spec)
    if args.jobs < 1:
        raise ValueError("--jobs must be positive")
    # the level is irrelevant for showing root data
    return cfg if args.group == "rootdata" else cfg.validate()


def _arrangement(cfg: Config):
    return build_arrangement(cfg.root_datum, cfg.J, cfg.p)


def _cone(ls: LocalSystem, spec: str) -> ConeSpec:
    if spec == "dominant":
        return dominant_cone(ls.arr)
    if any(spec == P.name for P in ls.parabolics):
        return ls.by_name(spec).cone
    gens = [linalg.parse_vector(g) for g in spec.split(";") if g.strip()]
    if not gens or any(len(g) != ls.arr.dim for g in gens):
        raise ValueError(f"bad cone specification {spec!r}")
    return ConeSpec(tuple(gens))


def _load_path(ls: LocalSystem, text: str):
    if text.startswith("@"):
        text = FsPath(text[1:]).read_text()
    return ls.path_from_json(json.loads(text))


class _Writer:
    def __init__(self, stream):
        self.stream = stream

    def emit(self, obj) -> None:
        self.stream.write((obj if isinstance(obj, str) else dumps(obj)) + "\n")


def _run(args, out: _Writer) -> int:
    cfg = _config(args)
    rd = cfg.root_datum
    if args.group == "rootdata":
        data = rd.to_json()
        data["num_positive_roots"] = len(rd.positive_roots)
        data["weyl_group_order"] = len(weyl_group(rd))
        out.emit(data)
        return 0

    arr = _arrangement(cfg)
    if args.group == "alcoves":
        if args.cmd == "locate":
            point = linalg.parse_vector(args.point)
            if len(point) != arr.dim:
                raise ValueError(f"point must have {arr.dim} coordinates")
            alc = arr.locate(point)
            out.emit({"point": [linalg.fmt_rational(x) for x in point], "alcove": alc.to_json()})
        elif args.cmd == "neighbors":
            alc = Alcove(_int_list(args.k))
            arr.geometry(alc)
            for i, (wall, nb) in enumerate(arr.walls_and_neighbors(alc)):
                rec = {"wall": i, "hyperplane": wall.to_json(), "neighbor": nb.to_json()}
                if arr.is_full:
                    rec["type"] = f"s{arr.wall_type(alc, i)}"
                out.emit(rec)
        else:
            for alc in arr.alcoves_in_window(cfg.effective_window()):
                geom = arr.geometry(alc)
                out.emit({"alcove": alc.to_json(),
                          "vertices": [[linalg.fmt_rational(x) for x in v] for v in geom.vertices]})
        return 0

    ls = LocalSystem(arr, cfg.bound, cfg.radius)
    if args.group == "order":
        a, b = Alcove(_int_list(args.A)), Alcove(_int_list(args.B))
        arr.geometry(a)
        arr.geometry(b)
        cone = _cone(ls, args.cone)
        rec = {"A": a.to_json(), "B": b.to_json(), "cone": cone.to_json(),
               "order": cone_order(arr, a, b, cone)}
        if b in {nb for _, nb in arr.walls_and_neighbors(a)}:
            rec["half_loop"] = half_loop_in(arr, a, b, cone)
        out.emit(rec)
        return 0

    if args.group == "path":
        path = _load_path(ls, args.path)
        if args.cmd == "compile":
            word = ls.braid_word_of_path(path)
            out.emit({"path": path.to_json(), "word": word.to_json(), "text": str(word)})
        elif args.cmd == "functor":
            expr = ls.functor_of_path(path, allow_kernel=args.allow_kernel)
            nf = ls.simplify(expr)
            out.emit({"path": path.to_json(), "expression": str(expr), "normal_form": str(nf)})
        else:
            word, pure = ls.monodromy(path)
            out.emit({"path": path.to_json(), "word": word.to_json(), "text": str(word),
                      "pure": pure, "projection": ls.braid.project(word).to_json()})
        return 0

    names = ["localsystem", "hecke", "bernstein"] if args.cmd == "all" else [args.cmd]
    report = run_suites(names, cfg, args.jobs)
    for line in report.jsonl():
        out.emit(line)
    if args.out:
        FsPath(args.out).write_text(json.dumps(jsonable(report.to_json()), sort_keys=True, indent=1) + "\n")
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"alcovesys: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:      # --help
        return int(exc.code or 0)
    out = _Writer(sys.stdout)
    try:
        return _run(args, out)
    except OnWall as exc:
        err = {"error": "OnWall", "walls": [w.to_json() for w in exc.walls]}
    except AlcoveSysError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    print(dumps(err), file=sys.stderr)
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
