"""Command-line entry point.

Subcommands: parse, run, classify, verify, generate, and catalog
(validate/query/export).  Machine-readable results go to stdout as JSON
(parse prints canonical source instead); diagnostics go to stderr.

Exit codes are stable: 0 success, 1 usage error, 2 parse/validation error,
3 classification error, 4 equivalence failure, 5 I/O error.
"""

import argparse
import dataclasses
import json
import sys
from importlib.metadata import PackageNotFoundError, version as _dist_version
from pathlib import Path

from . import lang
from .analysis import AnnotationError, TaskAnnotation
from .catalog import (CatalogError, Query, export_site, load,
                      query as catalog_query, seed_catalog_path,
                      validate_catalog)
from .classifier import ClassificationError, Provenance, classify
from .interp import equivalent, safe_run
from .transform import TransformError, generate

try:
    __version__ = _dist_version("decomplab")
except PackageNotFoundError:
    __version__ = "0+unknown"

USAGE_ERROR = 1
PARSE_ERROR = 2
CLASSIFY_ERROR = 3
EQUIVALENCE_FAILURE = 4
IO_ERROR = 5

# ValueError covers malformed JSON inputs and main-signature mismatches
_EXIT_MAP = (
    (lang.LangError, PARSE_ERROR),
    (AnnotationError, CLASSIFY_ERROR),
    (ClassificationError, CLASSIFY_ERROR),
    (TransformError, PARSE_ERROR),
    (CatalogError, PARSE_ERROR),
    (ValueError, PARSE_ERROR),
    (OSError, IO_ERROR),
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; our contract reserves 2 for parse
    errors, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit(payload):
    print(json.dumps(payload, indent=2))


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def _load_program(path):
    return lang.parse(_read(path))


def _plain(value):
    if value is None:
        return None
    if value.kind == "list":
        return [_plain(x) for x in value.v]
    return value.v


# ---------------------------------------------------------------------------
# commands

def cmd_parse(args):
    sys.stdout.write(lang.pretty_print(_load_program(args.file)))
    return 0


def cmd_run(args):
    program = _load_program(args.file)
    raw_args = json.loads(args.input)
    if not isinstance(raw_args, list):
        raise ValueError("--input must be a JSON array of arguments")
    trace = safe_run(program, raw_args)
    _emit({"lines": trace.lines, "result": _plain(trace.result),
           "error": trace.error})
    return 0


def cmd_classify(args):
    program = _load_program(args.file)
    ann = TaskAnnotation.from_json(json.loads(_read(args.annotation)))
    prov = None
    if args.provenance:
        prov = Provenance.from_json(json.loads(_read(args.provenance)))
    cls = classify(program, ann, prov)
    _emit({"label": cls.label.to_json(), "evidence": cls.evidence})
    return 0


def cmd_verify(args):
    prog_a = _load_program(args.file_a)
    prog_b = _load_program(args.file_b)
    suite = json.loads(_read(args.inputs))
    if not isinstance(suite, list) \
            or not all(isinstance(t, list) for t in suite):
        raise ValueError("inputs file must hold a JSON array of argument arrays")
    divergences = equivalent(prog_a, prog_b, suite)
    _emit({"equivalent": not divergences,
           "divergences": [dataclasses.asdict(d) for d in divergences]})
    return 0 if not divergences else EQUIVALENCE_FAILURE


def cmd_generate(args):
    ref_path = Path(args.reference)
    program = _load_program(ref_path)
    scales = None
    if args.scales:
        scales = [int(x) for x in args.scales.split(",")]
    res = generate(program, scales=scales, hoist=args.hoist,
                   reorder_seed=args.reorder_seed)
    base = ref_path.parent / ref_path.stem
    outputs = {
        f"{base}.unstructured.mp": lang.pretty_print(res.unstructured),
        f"{base}.annotation.json":
            json.dumps(res.annotation.to_json(), indent=2) + "\n",
        f"{base}.provenance.json":
            json.dumps(res.provenance.to_json(), indent=2) + "\n",
    }
    for name, text in outputs.items():
        Path(name).write_text(text, encoding="utf-8")
        print(f"wrote {name}", file=sys.stderr)
    _emit(res.classification.label.to_json())
    return 0


def _open_catalog(args):
    return load(args.catalog if args.catalog else seed_catalog_path())


def cmd_catalog_validate(args):
    report = validate_catalog(_open_catalog(args))
    _emit({"valid": not report, "problems": report})
    return 0 if not report else PARSE_ERROR


def cmd_catalog_query(args):
    cat = _open_catalog(args)
    q = Query(repetition=args.repetition, composition=args.composition,
              data=args.data, tags=args.tags)
    _emit([rec.id for rec in catalog_query(cat, q)])
    return 0


def cmd_catalog_export(args):
    cat = _open_catalog(args)
    written = export_site(cat, args.dir)
    print(f"wrote {len(written)} files under {args.dir}", file=sys.stderr)
    _emit(written)
    return 0


# ---------------------------------------------------------------------------
# argument grammar

def _level_set(text):
    if text == "any":
        return frozenset()
    try:
        levels = frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated levels or 'any', got {text!r}")
    if not levels or not levels <= {0, 1, 2, 3}:
        raise argparse.ArgumentTypeError("levels must lie in 0..3")
    return levels


def _tag_list(text):
    return tuple(t for t in text.split(",") if t)


def build_parser():
    parser = _Parser(prog="decomplab",
                     description="build, run, and label code-structuring "
                                 "exercises")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(metavar="command", required=True)

    p = sub.add_parser("parse", help="print a program's canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("run", help="run a program on one input tuple")
    p.add_argument("file")
    p.add_argument("--input", default="[]",
                   help="JSON array of arguments for main (default [])")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("classify",
                       help="derive the complexity label of an annotated program")
    p.add_argument("file")
    p.add_argument("annotation", help="task annotation JSON")
    p.add_argument("--provenance", help="generation provenance JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify",
                       help="check two programs for trace equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("inputs", help="JSON array of argument arrays")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate",
                       help="derive an unstructured exercise from a reference")
    p.add_argument("reference")
    p.add_argument("--scales",
                   help="comma-separated scale per call of the scaled task")
    p.add_argument("--hoist", action="store_true",
                   help="hoist computations shared between tasks")
    p.add_argument("--reorder-seed", type=int, default=None,
                   help="shuffle statements with this seed")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("catalog", help="inspect or export an exercise catalog")
    csub = p.add_subparsers(metavar="subcommand", required=True)

    c = csub.add_parser("validate", help="re-check every record invariant")
    c.add_argument("--catalog", help="catalog JSON (default: the shipped seeds)")
    c.set_defaults(func=cmd_catalog_validate)

    c = csub.add_parser("query", help="list records matching a level filter")
    c.add_argument("--repetition", type=_level_set, default=frozenset(),
                   metavar="LEVELS", help="comma-separated levels or 'any'")
    c.add_argument("--composition", type=_level_set, default=frozenset(),
                   metavar="LEVELS")
    c.add_argument("--data", type=_level_set, default=frozenset(),
                   metavar="LEVELS")
    c.add_argument("--tags", type=_tag_list, default=(),
                   metavar="TAGS", help="comma-separated, all must match")
    c.add_argument("--catalog", help="catalog JSON (default: the shipped seeds)")
    c.set_defaults(func=cmd_catalog_query)

    c = csub.add_parser("export", help="write the static explorer tree")
    c.add_argument("dir")
    c.add_argument("--catalog", help="catalog JSON (default: the shipped seeds)")
    c.set_defaults(func=cmd_catalog_export)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    try:
        return args.func(args)
    except Exception as err:
        for kind, code in _EXIT_MAP:
            if isinstance(err, kind):
                print(f"decomplab: {err}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
