"""Data models for commands, verdicts and classification reports."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from .config import (
    MAX_GL_CANDIDATES,
    MAX_HOM_CANDIDATES,
    MAX_MODULE_SIZE,
    MAX_RING_SIZE,
    MAX_SUBMODULES,
    REPORT_SCHEMA,
    SEED,
    THREADS,
    WITNESS_MODULE_BOUND,
)


class Bounds(BaseModel):
    """Enumeration caps carried through every computation."""

    model_config = ConfigDict(frozen=True)

    max_ring_size: PositiveInt = MAX_RING_SIZE
    max_module_size: PositiveInt = MAX_MODULE_SIZE
    max_hom_candidates: PositiveInt = MAX_HOM_CANDIDATES
    max_submodules: PositiveInt = MAX_SUBMODULES
    max_gl_candidates: PositiveInt = MAX_GL_CANDIDATES
    witness_module_bound: PositiveInt = WITNESS_MODULE_BOUND


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INAPPLICABLE = "inapplicable"
    UNDECIDED = "undecided"


class MiddleClassVerdict(str, Enum):
    NO = "no-middle-class"
    HAS = "has-middle-class"
    UNDECIDED = "undecided"


class SimpleMiddleClassVerdict(str, Enum):
    NO = "no-simple-middle-class"
    HAS = "has-simple-middle-class"


class EvidenceKind(str, Enum):
    THEOREM_CERTIFIED = "theorem-certified"
    WITNESS_REFUTED = "witness-refuted"
    BOUNDED_CONSISTENCY_ONLY = "bounded-consistency-only"
    CITED_THEOREM_ONLY = "cited-theorem-only"
    ORACLE_COMPLETE = "oracle-complete"


class ModuleClass(str, Enum):
    INJECTIVE = "Injective"
    POOR = "Poor"
    MIDDLE = "Middle"


class Verb(str, Enum):
    CLASSIFY = "classify"
    SIMPLE_MC = "simple-mc"
    ORACLE = "oracle"
    WITNESS = "witness"
    CROSS_CHECK = "cross-check"
    SIMPLES = "simples"
    REPORT = "report"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CriterionVerdict(BaseModel):
    """Outcome of one decision procedure.

    ``verdict`` is HOLDS when the favourable condition of the criterion is met;
    ``predicts`` records what that means for the middle class.
    """

    id: str
    anchor: str
    verdict: Verdict
    predicts: Optional[str] = None
    certificate: Dict[str, Any] = Field(default_factory=dict)
    reason: Optional[str] = None

    @model_validator(mode="after")
    def _undecided_has_reason(self) -> "CriterionVerdict":
        if self.verdict is Verdict.UNDECIDED and not self.reason:
            raise ValueError("an undecided verdict must name the exhausted resource")
        return self


class StructuralPredicates(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    commutative: bool
    local: bool
    semisimple: bool
    serial: Optional[bool] = None
    gv: Optional[bool] = Field(default=None, alias="GV")
    si: Optional[bool] = Field(default=None, alias="SI")
    qf: Optional[bool] = Field(default=None, alias="QF")
    homogeneous_socle: Optional[bool] = None
    soc_eq_j_eq_z: Optional[bool] = Field(default=None, alias="Soc=J=Z")
    j_squared_zero: Optional[bool] = Field(default=None, alias="J^2=0")
    radical_ideal_flag: Optional[bool] = None
    double_annihilator: Optional[bool] = None
    notes: List[str] = Field(default_factory=list)


class ModuleSummary(BaseModel):
    label: str
    ring: str
    size: int
    composition_length: int
    socle_size: int
    radical_size: int
    singular_size: int
    is_local: bool
    is_semisimple: bool
    generators: List[int] = Field(default_factory=list)
    action: Optional[List[List[int]]] = None


class ExtensionFailureModel(BaseModel):
    """A map K -> M with no extension to N; re-checkable from the listed graph."""

    test_module: str
    submodule: List[int]
    graph: List[List[int]]
    extensions_examined: int


class InjectivityProfileModel(BaseModel):
    module: ModuleSummary
    relative: Dict[str, bool] = Field(default_factory=dict)
    injective: bool
    poor: bool
    classification: ModuleClass
    semisimple_ring: bool = False
    failure: Optional[ExtensionFailureModel] = None


class MiddleWitnessModel(BaseModel):
    module: ModuleSummary
    profile: InjectivityProfileModel
    nonsemisimple_member: ModuleSummary
    failure: ExtensionFailureModel


class WitnessSearchModel(BaseModel):
    found: bool
    witness: Optional[MiddleWitnessModel] = None
    examined: int
    exhausted: bool
    bound: int
    hit_bound: Optional[str] = None


class SimpleClassModel(BaseModel):
    label: str
    size: int
    projective: bool
    injective: bool
    classification: ModuleClass


class DecompositionModel(BaseModel):
    factor_sizes: List[int]
    semisimple_part: Optional[int] = None
    rest: Optional[int] = None
    isomorphism_verified: bool


class ClassificationReport(BaseModel):
    """Everything one command computed about one ring."""

    model_config = ConfigDict(populate_by_name=True)

    schema_: str = Field(default=REPORT_SCHEMA, alias="schema")
    verb: Verb
    recipe: str
    ring_size: int
    seed: int
    bounds: Bounds
    summary: str = ""
    predicates: Optional[StructuralPredicates] = None
    verdicts: List[CriterionVerdict] = Field(default_factory=list)
    middle_class: Optional[MiddleClassVerdict] = None
    evidence_kind: Optional[EvidenceKind] = None
    simple_middle_class: Optional[SimpleMiddleClassVerdict] = None
    simple_destitute: Optional[bool] = None
    simples: List[SimpleClassModel] = Field(default_factory=list)
    local_length_two: List[ModuleSummary] = Field(default_factory=list)
    regular_profile: Optional[InjectivityProfileModel] = None
    decomposition: Optional[DecompositionModel] = None
    witness_search: Optional[WitnessSearchModel] = None
    agreement: Optional[bool] = None
    bound_hits: List[str] = Field(default_factory=list)
    timings: Optional[Dict[str, float]] = None


class Command(BaseModel):
    """A parsed CLI invocation."""

    verb: Verb
    spec: str
    bounds: Bounds = Field(default_factory=Bounds)
    format: OutputFormat = OutputFormat.TEXT
    seed: int = SEED
    threads: PositiveInt = THREADS
    bimodule: Optional[Path] = None
    timings: bool = False
