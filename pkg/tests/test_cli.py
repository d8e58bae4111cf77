"""Tests for the command-line interface and command pipeline."""

import json

import pytest
from click.testing import CliRunner

from nomiddle.cli import main
from nomiddle.models import Command, Verb
from nomiddle.pipeline import run
from tests.conftest import COMPANION_TRI, TRIMAT_Z4


@pytest.fixture
def invoke():
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(main, [str(a) for a in args])

    return _invoke


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_classify_json(invoke):
    data = _json(invoke("classify", "zmod(4)", "--format", "json"))

    assert data["schema"] == "injdom-report/1"
    assert data["verb"] == "classify"
    assert data["middle_class"] == "no-middle-class"
    assert data["evidence_kind"] == "theorem-certified"
    assert data["seed"] == 0
    assert "timings" not in data


def test_seed_and_timings_are_reported(invoke):
    data = _json(invoke("classify", "zmod(8)", "--format", "json", "--seed", 7, "--timings"))

    assert data["seed"] == 7
    assert {"build", "axioms", "classify"} <= set(data["timings"])


def test_text_output(invoke):
    result = invoke("classify", "zmod(8)")

    assert result.exit_code == 0
    assert "ring: zmod(8) (8 elements)" in result.stdout
    assert "middle class: has-middle-class" in result.stdout
    assert "evidence: witness-refuted" in result.stdout
    assert "agreement: yes" in result.stdout


@pytest.mark.parametrize(
    "args,code",
    [
        (("classify", "zmod("), 2),
        (("classify", "tri(gf(2),2;scalars)"), 2),
        (("classify", "zmod(0)"), 4),
        (("classify", "gf(4,2)"), 4),
        (("classify", "mat(zmod(4),3)"), 3),
        (("classify", "zmod(12)", "--max-ring-size", 8), 3),
        (("classify", "gf(2,1000000000)"), 3),
        (("classify", "tri(gf(2,2);2;gen[[0,4],[1,1]])"), 4),
    ],
)
def test_exit_codes(invoke, args, code):
    assert invoke(*args).exit_code == code


def test_unknown_verb_is_a_usage_error(invoke):
    result = invoke("decide", "zmod(4)")
    assert result.exit_code == 2
    assert "Invalid value" in result.output


def test_spec_from_file(invoke, tmp_path):
    path = tmp_path / "ring.txt"
    path.write_text("zmod(8)\n", encoding="utf-8")

    data = _json(invoke("classify", f"@{path}", "--format", "json"))
    assert data["recipe"] == "zmod(8)"


def test_missing_spec_file(invoke, tmp_path):
    assert invoke("classify", f"@{tmp_path / 'absent.txt'}").exit_code == 1


def test_spec_file_with_invalid_utf8(invoke, tmp_path):
    path = tmp_path / "ring.txt"
    path.write_bytes(b"zmod(\xff4)")

    result = invoke("classify", f"@{path}")
    assert result.exit_code == 2
    assert "column 6" in result.output


def test_bimodule_file_with_invalid_utf8(invoke, tmp_path):
    path = tmp_path / "bimodule.json"
    path.write_bytes(b'{"hom": [0, 1, \xff]}')
    assert invoke("simples", TRIMAT_Z4, "--bimodule", path).exit_code == 4


@pytest.mark.parametrize(
    "content,code",
    [
        ('{"hom": [0, 1, 0, 1]}', 0),
        ('{"hom": [0, 1, 1, 0]}', 4),
        ('{"hom": "identity"}', 4),
        ("not json", 4),
    ],
)
def test_bimodule_side_file(invoke, tmp_path, content, code):
    path = tmp_path / "bimodule.json"
    path.write_text(content, encoding="utf-8")
    assert invoke("simples", TRIMAT_Z4, "--bimodule", path).exit_code == code


def test_simples_verb(invoke):
    data = _json(invoke("simples", TRIMAT_Z4, "--format", "json"))

    assert len(data["simples"]) == 2
    assert sorted(s["classification"] for s in data["simples"]) == ["Injective", "Poor"]


def test_oracle_verb(invoke):
    data = _json(invoke("oracle", "zmod(8)", "--format", "json"))

    assert data["regular_profile"]["classification"] == "Injective"
    assert len(data["local_length_two"]) == 1
    assert data["simple_middle_class"] == "no-simple-middle-class"


def test_witness_verb(invoke):
    found = _json(invoke("witness", "zmod(8)", "--format", "json"))
    assert found["middle_class"] == "has-middle-class"
    assert found["witness_search"]["witness"]["module"]["size"] == 4

    none = _json(invoke("witness", "zmod(4)", "--format", "json"))
    assert none["middle_class"] is None
    assert none["evidence_kind"] == "bounded-consistency-only"
    assert none["witness_search"]["exhausted"] is True


def test_cross_check_on_tri_ring(invoke):
    data = _json(invoke("cross-check", COMPANION_TRI, "--format", "json"))
    ids = {v["id"] for v in data["verdicts"]}

    assert data["verb"] == "cross-check"
    assert data["agreement"] is True
    assert data["middle_class"] == "no-middle-class"
    assert {"row-span", "row-span-self", "triangularity", "conjugate-iso", "paired-iso", "unique-local"} <= ids


def test_report_is_identical_across_thread_counts():
    reports = [
        run(Command(verb=Verb.REPORT, spec="zmod(8)", threads=threads)).model_dump(mode="json", by_alias=True)
        for threads in (1, 3)
    ]
    assert reports[0] == reports[1]
    assert reports[0]["simple_middle_class"] == "no-simple-middle-class"
    assert reports[0]["middle_class"] == "has-middle-class"
