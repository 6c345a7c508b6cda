"""Command line interface.

    utk check <files...>              type check files in order
    utk normalize <files...> --def X  print the normal form of a definition
    utk corpus [--dir PATH]           check the shipped corpus + theorem map
    utk model-selftest [--max-dim N] [--fixtures PATH]

`--json` on any subcommand emits a machine readable report.  Exit codes:
0 pass, 1 check failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
import threading
import time
from pathlib import Path

from . import corpuscheck as C
from . import elab as E
from . import kernel as K
from . import parser as P
from . import syntax as S
from .report import Report

USAGE_ERROR = 2
CHECK_ERROR = 1


def _check_files(paths, opaque=frozenset()):
    report = Report()
    scope = K.GlobalScope()
    core = []
    decls = []
    for path in paths:
        decls.extend(P.parse_program(Path(path).read_text()))
    for sd in decls:
        t0 = time.time()
        try:
            constants = scope.entries.keys()
            type_t = E.elab_term(sd.type, [], constants)
            body_t = None if sd.body is None else E.elab_term(sd.body, [], constants)
            decl = S.Declaration(sd.name, type_t, body_t, opaque=sd.name in opaque)
            entry = K.check_declaration(scope, decl)
            scope.add(sd.name, entry)
            core.append(decl)
            report.add_ok(sd.name, time.time() - t0)
        except (K.KernelError, E.ElabError, S.MalformedTermError) as exc:
            message = str(exc.cause) if isinstance(exc, K.DeclarationError) else str(exc)
            report.add_error(sd.name, message, time.time() - t0)
            break
    return core, scope, report


def cmd_check(args) -> int:
    try:
        _, _, report = _check_files(args.files)
    except (OSError, P.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(report.to_json() if args.json else report.summary())
    return 0 if report.ok else CHECK_ERROR


def cmd_normalize(args) -> int:
    try:
        core, scope, report = _check_files(args.files)
    except (OSError, P.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if not report.ok:
        print(report.summary(), file=sys.stderr)
        return CHECK_ERROR
    target = next((d for d in core if d.name == args.definition), None)
    if target is None or target.body is None:
        print(f"error: no definition named {args.definition}", file=sys.stderr)
        return USAGE_ERROR
    nf = K.normalize(scope, [], S.Annot(target.body, target.type))
    print(S.pretty_print(nf, []))
    return 0


def cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else None
    try:
        core, scope, report = C.check_corpus(directory)
    except (OSError, P.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if report.ok:
        tmap = C.load_theorem_map(directory)
        for entry in C.verify_corpus(scope, tmap).entries:
            report.entries.append(entry)
    print(report.to_json() if args.json else report.summary())
    return 0 if report.ok else CHECK_ERROR


def cmd_model_selftest(args) -> int:
    from .model import selftest
    try:
        report = selftest.run(max_dim=args.max_dim, fixtures_path=args.fixtures)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(report.to_json() if args.json else report.summary())
    return 0 if report.ok else CHECK_ERROR


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="utk", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="type check files")
    chk.add_argument("files", nargs="+")
    chk.add_argument("--json", action="store_true")
    chk.set_defaults(fn=cmd_check)

    nrm = sub.add_parser("normalize", help="normalize a definition")
    nrm.add_argument("files", nargs="+")
    nrm.add_argument("--def", dest="definition", required=True)
    nrm.add_argument("--json", action="store_true")
    nrm.set_defaults(fn=cmd_normalize)

    cor = sub.add_parser("corpus", help="check the shipped corpus")
    cor.add_argument("--dir", default=None)
    cor.add_argument("--json", action="store_true")
    cor.set_defaults(fn=cmd_corpus)

    mst = sub.add_parser("model-selftest", help="run the cubical model checks")
    mst.add_argument("--max-dim", type=int, default=2)
    mst.add_argument("--fixtures", default=None)
    mst.add_argument("--json", action="store_true")
    mst.set_defaults(fn=cmd_model_selftest)
    return top


def run_cli(argv) -> int:
    try:
        args = build_arg_parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    result = {}

    def work():
        try:
            result["code"] = args.fn(args)
        except Exception as exc:  # pragma: no cover - last resort
            print(f"error: {exc}", file=sys.stderr)
            result["code"] = USAGE_ERROR

    # proof checking recurses deeply; give the worker a large stack
    sys.setrecursionlimit(400000)
    threading.stack_size(512 * 1024 * 1024)
    worker = threading.Thread(target=work)
    worker.start()
    worker.join()
    return result.get("code", USAGE_ERROR)


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
