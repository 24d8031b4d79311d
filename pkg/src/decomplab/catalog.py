"""The exercise repository: validated records, JSON persistence,
complexity-triple queries, and the static tree the explorer browses.

A record stores both sides of one exercise (the unstructured program and its
decomposed reference), the task annotation, the derived complexity label with
its evidence, and the input suite that pins the two sides together.  Nothing
in a record is trusted: validate() re-derives the label and re-runs the
equivalence oracle, so a stale or hand-edited record is reported rather than
served.
"""

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import lang
from .analysis import AnnotationError, TaskAnnotation, validate_annotation
from .classifier import ClassificationError, Label, Provenance, classify
from .interp import equivalent

SCHEMA_VERSION = 1

_SLUG = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")

# normative field order for serialized records
RECORD_FIELDS = ("id", "title", "description", "unstructured", "decomposed",
                 "annotation", "label", "evidence", "input_suite",
                 "provenance", "tags")


class CatalogError(Exception):
    pass


class SchemaVersionMismatch(CatalogError):
    def __init__(self, found):
        super().__init__(
            f"catalog has schema version {found!r}, expected {SCHEMA_VERSION}")
        self.found = found


class MalformedCatalog(CatalogError):
    """Structurally invalid catalog JSON; pointer locates the bad field."""

    def __init__(self, msg, pointer):
        super().__init__(f"{msg} (at {pointer or '/'})")
        self.pointer = pointer or "/"


def _fail(msg, pointer):
    raise MalformedCatalog(msg, pointer)


@dataclass
class ExerciseRecord:
    id: str
    title: str
    description: str
    unstructured: str        # MiniProc source, canonical text
    decomposed: str
    annotation: TaskAnnotation
    label: Label
    evidence: dict
    input_suite: list        # argument lists for main, one per run
    provenance: Provenance = None
    tags: list = field(default_factory=list)

    def to_json(self):
        out = {
            "id": self.id,
            "title": self.title,
            "description": self.description,
            "unstructured": self.unstructured,
            "decomposed": self.decomposed,
            "annotation": self.annotation.to_json(),
            "label": self.label.to_json(),
            "evidence": self.evidence,
            "input_suite": [list(args) for args in self.input_suite],
        }
        if self.provenance is not None:
            out["provenance"] = self.provenance.to_json()
        out["tags"] = list(self.tags)
        return out

    @classmethod
    def from_json(cls, data, pointer=""):
        if not isinstance(data, dict):
            _fail("record must be an object", pointer)
        for key in sorted(set(data) - set(RECORD_FIELDS)):
            _fail(f"unknown record field {key!r}", f"{pointer}/{key}")
        for key in RECORD_FIELDS:
            if key != "provenance" and key not in data:
                _fail(f"missing record field {key!r}", f"{pointer}/{key}")
        for key in ("id", "title", "description", "unstructured", "decomposed"):
            if not isinstance(data[key], str):
                _fail(f"{key} must be a string", f"{pointer}/{key}")
        try:
            ann = TaskAnnotation.from_json(data["annotation"])
        except (AnnotationError, TypeError, ValueError) as e:
            _fail(f"bad annotation: {e}", f"{pointer}/annotation")
        lab = data["label"]
        if (not isinstance(lab, dict)
                or set(lab) != {"repetition", "composition", "data"}
                or not all(type(v) is int for v in lab.values())):
            _fail("label must give integer repetition/composition/data",
                  f"{pointer}/label")
        if not isinstance(data["evidence"], dict):
            _fail("evidence must be an object", f"{pointer}/evidence")
        suite = data["input_suite"]
        if not isinstance(suite, list) \
                or not all(isinstance(args, list) for args in suite):
            _fail("input_suite must be an array of argument arrays",
                  f"{pointer}/input_suite")
        tags = data["tags"]
        if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
            _fail("tags must be an array of strings", f"{pointer}/tags")
        prov = None
        if data.get("provenance") is not None:
            try:
                prov = Provenance.from_json(data["provenance"])
            except (ValueError, TypeError, AttributeError):
                _fail("malformed provenance", f"{pointer}/provenance")
        return cls(data["id"], data["title"], data["description"],
                   data["unstructured"], data["decomposed"], ann,
                   Label.from_json(lab), data["evidence"],
                   [list(args) for args in suite], prov, list(tags))


@dataclass
class Catalog:
    records: list
    schema_version: int = SCHEMA_VERSION

    def record(self, rec_id):
        for rec in self.records:
            if rec.id == rec_id:
                return rec
        raise KeyError(rec_id)

    def to_json(self):
        return {"schema_version": self.schema_version,
                "records": [rec.to_json() for rec in self.records]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            _fail("catalog must be an object", "")
        if "schema_version" not in data:
            _fail("missing field 'schema_version'", "/schema_version")
        version = data["schema_version"]
        if type(version) is not int:
            _fail("schema_version must be an integer", "/schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatch(version)
        for key in sorted(set(data) - {"schema_version", "records"}):
            _fail(f"unknown catalog field {key!r}", f"/{key}")
        if "records" not in data:
            _fail("missing field 'records'", "/records")
        if not isinstance(data["records"], list):
            _fail("records must be an array", "/records")
        records = [ExerciseRecord.from_json(r, f"/records/{i}")
                   for i, r in enumerate(data["records"])]
        return cls(records, version)


# ---------------------------------------------------------------------------
# validation

def validate(rec):
    """Re-check every record invariant; a record passes iff the report is
    empty.  Failures are report lines, never exceptions, so a contributed
    record can be rejected with all of its problems listed at once."""
    report = []
    if not _SLUG.match(rec.id):
        report.append(f"id: {rec.id!r} is not a lowercase hyphenated slug")
    if not rec.input_suite:
        report.append("input_suite: must not be empty")
    sides = {}
    for side in ("unstructured", "decomposed"):
        try:
            sides[side] = lang.parse(getattr(rec, side))
        except lang.LangError as e:
            report.append(f"{side}: does not parse: {e}")
    prog = sides.get("unstructured")
    if prog is not None:
        try:
            validate_annotation(prog, rec.annotation)
            derived = classify(prog, rec.annotation, rec.provenance).label
            if derived != rec.label:
                report.append(
                    f"label: stored {rec.label.astuple()} but the classifier "
                    f"derives {derived.astuple()}")
        except (AnnotationError, ClassificationError) as e:
            report.append(f"annotation: {e}")
    if len(sides) == 2 and rec.input_suite:
        for d in equivalent(sides["unstructured"], sides["decomposed"],
                            rec.input_suite):
            report.append(
                f"equivalence: input {d.input_index} diverges ({d.where} "
                f"{d.index}): unstructured {d.expected!r}, decomposed "
                f"{d.actual!r}")
    return report


def validate_catalog(cat):
    """Validate every record plus catalog-wide id uniqueness."""
    report = []
    first_seen = {}
    for i, rec in enumerate(cat.records):
        if rec.id in first_seen:
            report.append(f"{rec.id}: duplicate id "
                          f"(records {first_seen[rec.id]} and {i})")
        else:
            first_seen[rec.id] = i
        report.extend(f"{rec.id}: {line}" for line in validate(rec))
    return report


# ---------------------------------------------------------------------------
# queries

@dataclass(frozen=True)
class Query:
    """Per-dimension level subsets plus a conjunctive tag filter.

    An empty subset means "any level"; an all-empty query matches the whole
    catalog.
    """
    repetition: frozenset = frozenset()
    composition: frozenset = frozenset()
    data: frozenset = frozenset()
    tags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "repetition", frozenset(self.repetition))
        object.__setattr__(self, "composition", frozenset(self.composition))
        object.__setattr__(self, "data", frozenset(self.data))
        object.__setattr__(self, "tags", tuple(self.tags))


def query(cat, q):
    """Matching records in catalog order."""
    out = []
    for rec in cat.records:
        if q.repetition and rec.label.repetition not in q.repetition:
            continue
        if q.composition and rec.label.composition not in q.composition:
            continue
        if q.data and rec.label.data not in q.data:
            continue
        if any(tag not in rec.tags for tag in q.tags):
            continue
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# persistence

def dumps(cat):
    return json.dumps(cat.to_json(), indent=2) + "\n"


def save(cat, path):
    Path(path).write_text(dumps(cat), encoding="utf-8")


def load(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MalformedCatalog(f"not valid JSON: {e}", "") from None
    return Catalog.from_json(data)


# ---------------------------------------------------------------------------
# static-site export

# word classes for the explorer's highlighter; it lexes identifiers, numbers,
# strings and comments itself and looks bare words up here
TOKEN_CATEGORIES = {
    "keyword": ["func", "if", "else", "while", "for", "in", "range",
                "return", "print"],
    "type": ["int", "float", "bool", "string", "list", "void"],
    "literal": ["true", "false"],
    "operator": ["and", "or", "not"],
    "builtin": ["len"],
}


def export_site(cat, out_dir):
    """Write the tree the explorer serves, returning the written paths.

    Layout: catalog.json and tokens.json at the root, plus a pretty-printed
    source per record side under exercises/.  Re-exporting an unchanged
    catalog is byte-identical.
    """
    root = Path(out_dir)
    (root / "exercises").mkdir(parents=True, exist_ok=True)
    (root / "catalog.json").write_text(dumps(cat), encoding="utf-8")
    (root / "tokens.json").write_text(
        json.dumps(TOKEN_CATEGORIES, indent=2) + "\n", encoding="utf-8")
    written = ["catalog.json", "tokens.json"]
    for rec in cat.records:
        for side in ("unstructured", "decomposed"):
            text = lang.pretty_print(lang.parse(getattr(rec, side)))
            rel = f"exercises/{rec.id}.{side}.mp"
            (root / rel).write_text(text, encoding="utf-8")
            written.append(rel)
    return written


# ---------------------------------------------------------------------------
# the committed seed catalog

def build_seed_catalog():
    """Rebuild the eight-record catalog from the committed seed sources."""
    from . import seeds
    records = []
    for spec in seeds.SEEDS:
        prog, ann, prov = seeds.build(spec)
        cls = classify(prog, ann, prov)
        records.append(ExerciseRecord(
            id=spec.name,
            title=spec.title,
            description=spec.description,
            unstructured=lang.pretty_print(prog),
            decomposed=spec.decomposed,
            annotation=ann,
            label=cls.label,
            evidence=cls.evidence,
            input_suite=[list(args) for args in spec.suite],
            provenance=prov,
            tags=list(spec.tags),
        ))
    return Catalog(records)


def seed_catalog_path():
    """Location of the catalog shipped with the package."""
    return Path(__file__).resolve().parent / "data" / "catalog.json"
