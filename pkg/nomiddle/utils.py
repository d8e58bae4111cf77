"""Utility functions for report emission and input files."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from .config import MAX_SPEC_BYTES
from .errors import SpecSemanticError, SpecSyntaxError
from .models import ClassificationReport, OutputFormat

log = structlog.get_logger()


def report_dict(report: ClassificationReport, timings: bool = False) -> Dict[str, Any]:
    """JSON-ready dict; timings dropped unless requested."""
    exclude = None if timings else {"timings"}
    return report.model_dump(mode="json", by_alias=True, exclude=exclude)


def emit_report(report: ClassificationReport, format: OutputFormat = OutputFormat.TEXT, timings: bool = False) -> str:
    """Render a report as sorted JSON or as a stable text summary."""
    if format is OutputFormat.JSON:
        return json.dumps(report_dict(report, timings), sort_keys=True, indent=2)
    return _text_summary(report, timings)


def _text_summary(report: ClassificationReport, timings: bool) -> str:
    lines: List[str] = [
        f"ring: {report.recipe} ({report.ring_size} elements)",
        f"verb: {report.verb.value}",
        f"seed: {report.seed}",
    ]
    if report.summary:
        lines.append(f"summary: {report.summary}")
    if report.middle_class is not None:
        lines.append(f"middle class: {report.middle_class.value}")
    if report.simple_middle_class is not None:
        lines.append(f"simple middle class: {report.simple_middle_class.value}")
    if report.evidence_kind is not None:
        lines.append(f"evidence: {report.evidence_kind.value}")
    if report.simple_destitute is not None:
        lines.append(f"simple-destitute: {str(report.simple_destitute).lower()}")
    if report.decomposition is not None:
        d = report.decomposition
        lines.append(f"decomposition: factors {d.factor_sizes}, semisimple part {d.semisimple_part}, rest {d.rest}")
    if report.predicates is not None:
        flags = report.predicates.model_dump(by_alias=True, exclude={"notes"})
        shown = ", ".join(f"{k}={_flag(v)}" for k, v in flags.items())
        lines.append(f"predicates: {shown}")
    for v in report.verdicts:
        tail = f" -> {v.predicts}" if v.predicts else ""
        why = f" ({v.reason})" if v.reason else ""
        lines.append(f"  [{v.verdict.value}] {v.id}: {v.anchor}{tail}{why}")
    for s in report.simples:
        kind = "projective" if s.projective else "non-projective"
        lines.append(f"  simple {s.label}: size {s.size}, {kind}, {s.classification.value}")
    for m in report.local_length_two:
        lines.append(f"  local length two {m.label}: size {m.size}")
    if report.regular_profile is not None:
        lines.append(f"R_R: {report.regular_profile.classification.value}")
    if report.witness_search is not None:
        w = report.witness_search
        if w.witness is not None:
            lines.append(f"witness: {w.witness.module.label}, size {w.witness.module.size} (examined {w.examined})")
        else:
            state = "exhausted" if w.exhausted else "bounded"
            lines.append(f"witness: none ({state}, examined {w.examined})")
    if report.agreement is not None:
        lines.append(f"agreement: {'yes' if report.agreement else 'no'}")
    for hit in report.bound_hits:
        lines.append(f"bound hit: {hit}")
    if timings and report.timings:
        for stage, ms in sorted(report.timings.items()):
            lines.append(f"timing {stage}: {ms:.1f} ms")
    return "\n".join(lines)


def _flag(value: Optional[bool]) -> str:
    return "?" if value is None else str(value).lower()


def load_spec_text(value: str) -> str:
    """Spec text, or the contents of a file when given as ``@path``."""
    if not value.startswith("@"):
        return value
    path = Path(value[1:])
    if not path.exists():
        raise FileNotFoundError(f"Spec file not found: {path}")
    data = path.read_bytes()
    if len(data) > MAX_SPEC_BYTES:
        raise SpecSyntaxError(f"input exceeds {MAX_SPEC_BYTES} bytes", 0, "")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SpecSyntaxError(f"{path}: invalid UTF-8 byte", exc.start, data.decode("utf-8", errors="replace")) from exc
    log.info("Loaded spec from file", file=str(path), size=len(data))
    return text.strip()


def load_bimodule(file_path: Path) -> List[int]:
    """The ring map A -> B from a ``{"hom": [...]}`` side file."""
    if not file_path.exists():
        raise FileNotFoundError(f"Bimodule file not found: {file_path}")
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecSemanticError(f"{file_path}: not valid JSON ({exc.msg})") from exc
    except UnicodeDecodeError as exc:
        raise SpecSemanticError(f"{file_path}: not valid UTF-8 at byte {exc.start}") from exc
    hom = data.get("hom") if isinstance(data, dict) else None
    if not isinstance(hom, list) or not all(isinstance(x, int) for x in hom):
        raise SpecSemanticError(f"{file_path}: expected {{\"hom\": [integers]}}")
    log.info("Loaded bimodule map", file=str(file_path), size=len(hom))
    return hom
