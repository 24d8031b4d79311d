"""The command-line interface, driven in-process through main()."""

import json

import pytest

from decomplab import lang
from decomplab.catalog import build_seed_catalog
from decomplab.cli import main
from decomplab.seeds import seed


@pytest.fixture(scope="module")
def seed_catalog():
    return build_seed_catalog()


def _write(dirpath, name, text):
    path = dirpath / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _record_files(rec, dirpath):
    src = _write(dirpath, f"{rec.id}.mp", rec.unstructured)
    ann = _write(dirpath, f"{rec.id}.annotation.json",
                 json.dumps(rec.annotation.to_json()))
    return src, ann


# ---------------------------------------------------------------------------
# parse / run

def test_parse_prints_canonical_source(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    src = _write(tmp_path, "rubiks.mp", rec.unstructured)
    assert main(["parse", src]) == 0
    assert capsys.readouterr().out == rec.unstructured


def test_parse_error_exits_2_with_position(tmp_path, capsys):
    src = _write(tmp_path, "bad.mp", "func main( {\n")
    assert main(["parse", src]) == 2
    assert "1:" in capsys.readouterr().err


def test_parse_missing_file_exits_5(tmp_path, capsys):
    assert main(["parse", str(tmp_path / "absent.mp")]) == 5


def test_run_prints_trace_json(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    src = _write(tmp_path, "rubiks.mp", rec.unstructured)
    assert main(["run", src, "--input", "[10, 10, 10, 3]"]) == 0
    trace = json.loads(capsys.readouterr().out)
    assert trace == {"lines": ["27"], "result": 27, "error": None}


def test_run_reports_runtime_error_in_trace(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    src = _write(tmp_path, "rubiks.mp", rec.unstructured)
    assert main(["run", src, "--input", "[10, 10, 10, 0]"]) == 0
    trace = json.loads(capsys.readouterr().out)
    assert trace["error"] == "DivisionByZero"


def test_run_arity_mismatch_exits_2(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    src = _write(tmp_path, "rubiks.mp", rec.unstructured)
    assert main(["run", src, "--input", "[1, 2]"]) == 2


# ---------------------------------------------------------------------------
# classify

def test_classify_rubiks_reports_data_2(tmp_path, capsys, seed_catalog):
    src, ann = _record_files(seed_catalog.record("rubiks"), tmp_path)
    assert main(["classify", src, ann]) == 0
    out = capsys.readouterr().out
    assert '"data": 2' in out
    assert json.loads(out)["label"] == {"repetition": 0, "composition": 1,
                                        "data": 2}


def test_classify_garden_reports_data_3(tmp_path, capsys, seed_catalog):
    src, ann = _record_files(seed_catalog.record("garden"), tmp_path)
    assert main(["classify", src, ann]) == 0
    assert '"data": 3' in capsys.readouterr().out


def test_classify_incomplete_annotation_exits_3(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    src = _write(tmp_path, "rubiks.mp", rec.unstructured)
    partial = rec.annotation.to_json()
    del partial["task_of"]["0"]
    ann = _write(tmp_path, "partial.json", json.dumps(partial))
    assert main(["classify", src, ann]) == 3


# ---------------------------------------------------------------------------
# verify

def test_verify_seed_pair_is_equivalent(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("min-count-concat")
    a = _write(tmp_path, "a.mp", rec.unstructured)
    b = _write(tmp_path, "b.mp", rec.decomposed)
    inputs = _write(tmp_path, "inputs.json", json.dumps(rec.input_suite))
    assert main(["verify", a, b, inputs]) == 0
    assert json.loads(capsys.readouterr().out)["equivalent"] is True


def test_verify_mutant_exits_4(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    mutant = rec.unstructured.replace("total = fw * fh * fd",
                                      "total = fw + fh * fd")
    assert mutant != rec.unstructured
    a = _write(tmp_path, "a.mp", rec.unstructured)
    b = _write(tmp_path, "b.mp", mutant)
    inputs = _write(tmp_path, "inputs.json", json.dumps(rec.input_suite))
    assert main(["verify", a, b, inputs]) == 4
    report = json.loads(capsys.readouterr().out)
    assert report["equivalent"] is False
    assert report["divergences"]


def test_verify_arity_mismatched_inputs_exit_2(tmp_path, capsys, seed_catalog):
    rec = seed_catalog.record("rubiks")
    a = _write(tmp_path, "a.mp", rec.unstructured)
    b = _write(tmp_path, "b.mp", rec.decomposed)
    inputs = _write(tmp_path, "inputs.json", "[[1, 2]]")
    assert main(["verify", a, b, inputs]) == 2


# ---------------------------------------------------------------------------
# generate

def test_generate_writes_three_files(tmp_path, capsys):
    spec = seed("old-macdonald")
    ref = _write(tmp_path, "macdonald.mp", spec.decomposed)
    assert main(["generate", ref]) == 0
    label = json.loads(capsys.readouterr().out)
    assert label["repetition"] == 2
    out = lang.parse((tmp_path / "macdonald.unstructured.mp").read_text())
    ann = json.loads((tmp_path / "macdonald.annotation.json").read_text())
    prov = json.loads((tmp_path / "macdonald.provenance.json").read_text())
    assert {"task_of", "instance_of", "task_names"} == set(ann)
    assert prov["origin"] == {"1": "verse", "2": "farewell"}
    assert out.main is not None


def test_generate_reordered_rubiks_reports_data_2(tmp_path, capsys):
    spec = seed("rubiks")
    ref = _write(tmp_path, "rubiks.mp", spec.decomposed)
    assert main(["generate", ref, "--reorder-seed", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["data"] == 2


def test_generate_scaled_fish(tmp_path, capsys):
    spec = seed("fish")
    ref = _write(tmp_path, "fish.mp", spec.decomposed)
    assert main(["generate", ref, "--scales", "1,2,3"]) == 0
    assert json.loads(capsys.readouterr().out)["repetition"] == 3


def test_generate_rejects_non_call_normal_reference(tmp_path, capsys):
    src = ("func f(n: int) -> int {\n    return n + 1\n}\n\n"
           "func g(n: int) -> int {\n    return n * 2\n}\n\n"
           "func main() -> int {\n    x = f(g(2))\n    return x\n}\n")
    ref = _write(tmp_path, "nested.mp", src)
    assert main(["generate", ref]) == 2


# ---------------------------------------------------------------------------
# catalog

def test_catalog_validate_shipped_seeds(capsys):
    assert main(["catalog", "validate"]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True


def test_catalog_validate_rejects_tampered_label(tmp_path, capsys, seed_catalog):
    data = seed_catalog.to_json()
    rubiks = next(r for r in data["records"] if r["id"] == "rubiks")
    rubiks["label"]["data"] = 1
    path = _write(tmp_path, "cat.json", json.dumps(data))
    assert main(["catalog", "validate", "--catalog", path]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["valid"] is False
    assert any("label" in p for p in report["problems"])


def test_catalog_query_data_3(capsys):
    assert main(["catalog", "query", "--data", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == ["garden"]


def test_catalog_query_all_any(capsys):
    assert main(["catalog", "query", "--repetition", "any"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 8


def test_catalog_query_combined_filters(capsys):
    assert main(["catalog", "query", "--repetition", "2,3",
                 "--data", "1"]) == 0
    assert json.loads(capsys.readouterr().out) == ["fish", "old-macdonald"]


def test_catalog_query_tags(capsys):
    assert main(["catalog", "query", "--tags", "lists,aggregation"]) == 0
    assert json.loads(capsys.readouterr().out) == [
        "min-count-concat", "min-count-inclusion", "min-count-interleaved"]


def test_catalog_query_bad_level_is_usage_error(capsys):
    assert main(["catalog", "query", "--data", "9"]) == 1


def test_catalog_export_round_trips(tmp_path, capsys):
    assert main(["catalog", "export", str(tmp_path / "site")]) == 0
    written = json.loads(capsys.readouterr().out)
    assert "catalog.json" in written
    assert (tmp_path / "site" / "exercises" / "garden.decomposed.mp").exists()


# ---------------------------------------------------------------------------
# plumbing

def test_version_exits_0(capsys):
    assert main(["--version"]) == 0
    assert "decomplab" in capsys.readouterr().out


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "catalog" in capsys.readouterr().out


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 1


def test_missing_arguments_are_usage_errors(capsys):
    assert main(["classify"]) == 1
    assert main(["catalog"]) == 1
