"""Tests for data models."""

import pytest
from pydantic import ValidationError

from nomiddle.models import (
    Bounds,
    ClassificationReport,
    Command,
    CriterionVerdict,
    OutputFormat,
    StructuralPredicates,
    Verb,
    Verdict,
)


def test_bounds_defaults():
    """Test Bounds default values."""
    bounds = Bounds()

    assert bounds.max_ring_size == 512
    assert bounds.max_module_size == 512
    assert bounds.max_hom_candidates == 1_000_000
    assert bounds.max_gl_candidates == 6561


def test_bounds_must_be_positive():
    with pytest.raises(ValidationError):
        Bounds(max_ring_size=0)


def test_bounds_are_frozen():
    bounds = Bounds()
    with pytest.raises(ValidationError):
        bounds.max_ring_size = 3


def test_undecided_verdict_needs_reason():
    with pytest.raises(ValidationError):
        CriterionVerdict(id="row-span", anchor="a", verdict=Verdict.UNDECIDED)

    verdict = CriterionVerdict(id="row-span", anchor="a", verdict=Verdict.UNDECIDED, reason="GL enumeration exceeds bound 6561")
    assert verdict.reason.startswith("GL enumeration")


def test_predicates_aliases():
    """Test StructuralPredicates accepts and dumps paper-style keys."""
    preds = StructuralPredicates(commutative=True, local=True, semisimple=False, gv=False, soc_eq_j_eq_z=True)
    dumped = preds.model_dump(by_alias=True)

    assert dumped["GV"] is False
    assert dumped["Soc=J=Z"] is True
    assert dumped["J^2=0"] is None
    assert StructuralPredicates.model_validate(dumped).soc_eq_j_eq_z is True


def test_report_schema_and_seed():
    report = ClassificationReport(verb=Verb.CLASSIFY, recipe="zmod(4)", ring_size=4, seed=11, bounds=Bounds())
    data = report.model_dump(mode="json", by_alias=True)

    assert data["schema"] == "injdom-report/1"
    assert data["seed"] == 11
    assert data["verb"] == "classify"
    assert data["timings"] is None


def test_command_defaults():
    """Test Command creation and default values."""
    command = Command(verb=Verb.REPORT, spec="zmod(8)")

    assert command.format is OutputFormat.TEXT
    assert command.threads == 1
    assert command.bimodule is None
    assert command.timings is False


def test_command_rejects_unknown_verb():
    with pytest.raises(ValidationError):
        Command(verb="decide", spec="zmod(8)")
