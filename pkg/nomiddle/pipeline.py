"""Command dispatch: parse, build, and run the requested verb."""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from . import criteria
from .errors import ConsistencyError, RingConstructionError
from .injdom import (
    classify_module,
    has_no_simple_middle_class,
    is_injective,
    middle_witness_search,
)
from .models import (
    Bounds,
    ClassificationReport,
    Command,
    CriterionVerdict,
    EvidenceKind,
    MiddleClassVerdict,
    SimpleClassModel,
    SimpleMiddleClassVerdict,
    Verb,
)
from .modkit import local_length_two_modules, module_summary, realize_regular, simples_up_to_iso
from .ringkit import FiniteRing, build_ring, decompose_ring, verify_ring_axioms
from .ringspec import parse_spec
from .utils import load_bimodule, load_spec_text

log = structlog.get_logger()

Section = Callable[[], ClassificationReport]

# Rings up to this size get the paired-module tri checks during cross-check.
TRI_CROSS_CHECK_SIZE = 256


class Pipeline:
    """Runs one command against one ring."""

    def __init__(self, bounds: Optional[Bounds] = None, seed: int = 0, threads: int = 1):
        self.bounds = bounds or Bounds()
        self.seed = seed
        self.threads = threads
        self.timings: Dict[str, float] = {}

    def _timed(self, stage: str, fn: Callable):
        t0 = time.perf_counter()
        result = fn()
        elapsed = 1000 * (time.perf_counter() - t0)
        self.timings[stage] = elapsed
        log.info("Stage completed", stage=stage, elapsed_ms=elapsed)
        return result

    def build(self, command: Command) -> FiniteRing:
        spec = parse_spec(load_spec_text(command.spec))
        hom = load_bimodule(command.bimodule) if command.bimodule else None
        R = self._timed("build", lambda: build_ring(spec, self.bounds.max_ring_size, hom))
        check = self._timed("axioms", lambda: verify_ring_axioms(R, seed=self.seed))
        if not check:
            raise RingConstructionError(f"{R.recipe} violates {check.law} at {check.counterexample}")
        return R

    def run(self, command: Command) -> ClassificationReport:
        log.info("Running command", verb=command.verb.value, spec=command.spec, threads=self.threads)
        R = self.build(command)
        handlers = {
            Verb.CLASSIFY: self.classify,
            Verb.SIMPLE_MC: self.simple_mc,
            Verb.ORACLE: self.oracle,
            Verb.WITNESS: self.witness,
            Verb.CROSS_CHECK: self.cross_check,
            Verb.SIMPLES: self.simples,
            Verb.REPORT: self.report,
        }
        report = handlers[command.verb](R)
        if command.timings:
            report = report.model_copy(update={"timings": dict(sorted(self.timings.items()))})
        return report

    def _base(self, R: FiniteRing, verb: Verb, **fields) -> ClassificationReport:
        return ClassificationReport(verb=verb, recipe=R.recipe, ring_size=R.size, seed=self.seed, bounds=self.bounds, **fields)

    def _sections(self, sections: Sequence[Tuple[str, Section]]) -> List[ClassificationReport]:
        """Run sections, in parallel when threads > 1; results keep the listed order."""
        if self.threads <= 1 or len(sections) == 1:
            return [self._timed(name, fn) for name, fn in sections]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            futures = [pool.submit(self._timed, name, fn) for name, fn in sections]
            return [f.result() for f in futures]

    @staticmethod
    def _prewarm(R: FiniteRing) -> None:
        """Fill shared ring caches before sections run concurrently."""
        decompose_ring(R)
        realize_regular(R)
        simples_up_to_iso(R)
        local_length_two_modules(R)

    # Verbs

    def classify(self, R: FiniteRing) -> ClassificationReport:
        return self._timed("classify", lambda: criteria.classify_ring_no_middle_class(R, self.bounds, self.seed))

    def simple_mc(self, R: FiniteRing) -> ClassificationReport:
        return self._timed("simple-mc", lambda: criteria.classify_simple_middle_class(R, self.bounds, self.seed))

    def simples(self, R: FiniteRing) -> ClassificationReport:
        hom_bound = self.bounds.max_hom_candidates
        models = [
            SimpleClassModel(
                label=s.module.label,
                size=s.module.size,
                projective=s.projective,
                injective=is_injective(s.module, hom_bound).injective,
                classification=classify_module(s.module, hom_bound).classification,
            )
            for s in self._timed("simples", lambda: simples_up_to_iso(R))
        ]
        return self._base(R, Verb.SIMPLES, simples=models, summary=f"{len(models)} simple module classes")

    def oracle(self, R: FiniteRing) -> ClassificationReport:
        hom_bound = self.bounds.max_hom_candidates
        regular = self._timed("regular", lambda: classify_module(realize_regular(R), hom_bound))
        locals_ = local_length_two_modules(R)
        simple = self._timed("simple-oracle", lambda: has_no_simple_middle_class(R, hom_bound))
        simples = [
            SimpleClassModel(
                label=s.module.label,
                size=s.module.size,
                projective=s.projective,
                injective=p.injective,
                classification=p.classification,
            )
            for s, p in simple.profiles
        ]
        verdict = SimpleMiddleClassVerdict.NO if simple.holds else SimpleMiddleClassVerdict.HAS
        summary = (
            f"R_R is {regular.classification.value}; {len(simples)} simple classes; "
            f"{len(locals_)} local length-two classes"
        )
        return self._base(
            R,
            Verb.ORACLE,
            summary=summary,
            regular_profile=regular.to_model(),
            simples=simples,
            local_length_two=[module_summary(N) for N in locals_],
            simple_middle_class=verdict,
            evidence_kind=EvidenceKind.ORACLE_COMPLETE,
        )

    def witness(self, R: FiniteRing) -> ClassificationReport:
        result = self._timed(
            "witness",
            lambda: middle_witness_search(R, self.bounds.max_module_size, self.bounds.max_hom_candidates),
        )
        hits = [result.hit_bound] if result.hit_bound else []
        if result.witness is not None:
            w = result.witness.module
            return self._base(
                R,
                Verb.WITNESS,
                summary=f"has middle class (Middle witness {w.label} of size {w.size})",
                middle_class=MiddleClassVerdict.HAS,
                evidence_kind=EvidenceKind.WITNESS_REFUTED,
                witness_search=result.to_model(),
                bound_hits=hits,
            )
        return self._base(
            R,
            Verb.WITNESS,
            summary=f"no Middle module among {result.examined} candidates",
            evidence_kind=EvidenceKind.BOUNDED_CONSISTENCY_ONLY,
            witness_search=result.to_model(),
            bound_hits=hits,
        )

    def _tri_checks(self, R: FiniteRing) -> List[CriterionVerdict]:
        """Paired-module checks on tri rings, each compared with the oracle."""
        layout = R.layout
        if layout is None or layout.dprime.is_division is False or R.size > TRI_CROSS_CHECK_SIZE:
            return []
        out: List[CriterionVerdict] = [criteria.row_span_criterion(layout.field, layout.n, layout.dprime, criteria.SELF_ONLY)]
        if layout.n == 2:
            out.append(criteria.triangularity_criterion(layout.dprime))
        out.append(criteria.conjugate_iso_criterion(R, self.bounds.max_gl_candidates))
        for j in range(2, layout.n + 1):
            out.append(criteria.paired_iso_criterion(R, 1, j, hom_bound=self.bounds.max_hom_candidates))
        out.append(criteria.unique_local_criterion(R))
        return out

    def _agreement(self, verdicts: Sequence[CriterionVerdict], middle: Optional[MiddleClassVerdict]) -> bool:
        if middle is None or middle is MiddleClassVerdict.UNDECIDED:
            return True
        decided = {MiddleClassVerdict.NO.value, MiddleClassVerdict.HAS.value}
        for v in verdicts:
            if v.predicts in decided and v.predicts != middle.value:
                raise ConsistencyError(f"{v.id} predicts {v.predicts}, classifier says {middle.value}")
        return True

    def cross_check(self, R: FiniteRing) -> ClassificationReport:
        if self.threads > 1:
            self._prewarm(R)
        hom_bound = self.bounds.max_hom_candidates
        classified, checks = self._sections(
            [
                ("classify", lambda: criteria.classify_ring_no_middle_class(R, self.bounds, self.seed)),
                (
                    "validators",
                    lambda: self._base(
                        R,
                        Verb.CROSS_CHECK,
                        verdicts=criteria.theorem_shape_validators(R, hom_bound) + self._tri_checks(R),
                    ),
                ),
            ]
        )
        verdicts = classified.verdicts + checks.verdicts
        agreement = (classified.agreement is not False) and self._agreement(verdicts, classified.middle_class)
        log.info("Cross-check finished", recipe=R.recipe, agreement=agreement, checks=len(verdicts))
        return classified.model_copy(update={"verb": Verb.CROSS_CHECK, "verdicts": verdicts, "agreement": agreement})

    def report(self, R: FiniteRing) -> ClassificationReport:
        if self.threads > 1:
            self._prewarm(R)
        hom_bound = self.bounds.max_hom_candidates
        classified, simple, oracle, checks = self._sections(
            [
                ("classify", lambda: criteria.classify_ring_no_middle_class(R, self.bounds, self.seed)),
                ("simple-mc", lambda: criteria.classify_simple_middle_class(R, self.bounds, self.seed)),
                ("oracle", lambda: self.oracle(R)),
                ("validators", lambda: self._base(R, Verb.REPORT, verdicts=criteria.theorem_shape_validators(R, hom_bound))),
            ]
        )
        verdicts = classified.verdicts + simple.verdicts + checks.verdicts
        return classified.model_copy(
            update={
                "verb": Verb.REPORT,
                "summary": f"{classified.summary}; {simple.summary}",
                "verdicts": verdicts,
                "simple_middle_class": simple.simple_middle_class,
                "simple_destitute": simple.simple_destitute,
                "simples": simple.simples,
                "local_length_two": oracle.local_length_two,
                "regular_profile": oracle.regular_profile,
                "agreement": (classified.agreement is not False) and self._agreement(verdicts, classified.middle_class),
            }
        )


def run(command: Command) -> ClassificationReport:
    """Execute a parsed command."""
    return Pipeline(command.bounds, command.seed, command.threads).run(command)
