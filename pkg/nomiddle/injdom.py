"""Injectivity oracle: relative and Baer injectivity, poorness, middle-class witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import structlog

from .config import MAX_HOM_CANDIDATES, MAX_SUBMODULES, WITNESS_MODULE_BOUND
from .errors import BoundExceeded
from .models import (
    ExtensionFailureModel,
    InjectivityProfileModel,
    MiddleWitnessModel,
    ModuleClass,
    WitnessSearchModel,
)
from .modkit import (
    RightModule,
    SimpleClass,
    cyclic_isomorphic,
    cyclic_module,
    enumerate_submodules,
    hom_enumerate,
    is_isomorphic,
    is_semisimple,
    local_length_two_modules,
    module_summary,
    realize_regular,
    simples_up_to_iso,
    submodule_module,
)
from .ringkit import FiniteRing, is_semisimple_ring, right_ideals

log = structlog.get_logger()


@dataclass(frozen=True)
class ExtensionFailure:
    """A map from K <= N into M that no map N -> M restricts to."""

    test_module: RightModule = field(repr=False)
    submodule: frozenset
    graph: Tuple[int, ...]
    examined: int

    def recheck(self, M: RightModule, hom_bound: int = MAX_HOM_CANDIDATES) -> bool:
        """True if the recorded map is a homomorphism with no extension."""
        sub = submodule_module(self.test_module, self.submodule)
        if not any(f.table == self.graph for f in hom_enumerate(sub, M, hom_bound)):
            return False
        return all(f.restrict(self.submodule) != self.graph for f in hom_enumerate(self.test_module, M, hom_bound))

    def to_model(self) -> ExtensionFailureModel:
        members = sorted(self.submodule)
        return ExtensionFailureModel(
            test_module=self.test_module.label,
            submodule=members,
            graph=[[k, v] for k, v in zip(members, self.graph)],
            extensions_examined=self.examined,
        )


@dataclass(frozen=True)
class RelativeInjectivity:
    injective: bool
    failure: Optional[ExtensionFailure]
    examined: int


def relatively_injective(
    M: RightModule,
    N: RightModule,
    hom_bound: int = MAX_HOM_CANDIDATES,
    lattice_bound: int = MAX_SUBMODULES,
) -> RelativeInjectivity:
    """Whether every map from a submodule of N into M extends to N."""
    # N is stored with the result so its id cannot be reused while cached
    key = ("relative", id(N))
    if key in M.cache:
        return M.cache[key][1]
    if is_semisimple(N):
        result = RelativeInjectivity(True, None, 0)
    else:
        homs = hom_enumerate(N, M, hom_bound)
        result = RelativeInjectivity(True, None, len(homs))
        for K in enumerate_submodules(N, lattice_bound):
            if len(K) == 1 or len(K) == N.size:
                continue
            restricted = {f.restrict(K) for f in homs}
            maps = hom_enumerate(submodule_module(N, K), M, hom_bound)
            if len(maps) != len(restricted):
                g = next(f for f in maps if f.table not in restricted)
                result = RelativeInjectivity(False, ExtensionFailure(N, K, g.table, len(homs)), len(homs))
                break
    M.cache[key] = (N, result)
    return result


def is_injective(M: RightModule, hom_bound: int = MAX_HOM_CANDIDATES) -> RelativeInjectivity:
    """Baer's test: injectivity relative to R_R."""
    return relatively_injective(M, realize_regular(M.ring), hom_bound)


@dataclass(frozen=True)
class PoorTest:
    poor: bool
    relative: Dict[str, bool]
    member: Optional[RightModule]


def is_poor(M: RightModule, hom_bound: int = MAX_HOM_CANDIDATES) -> PoorTest:
    """Not injective relative to any local module of length two."""
    relative: Dict[str, bool] = {}
    member = None
    for N in local_length_two_modules(M.ring):
        ok = relatively_injective(M, N, hom_bound).injective
        relative[N.label] = ok
        if ok and member is None:
            member = N
    return PoorTest(member is None, relative, member)


def is_poor_definitional(M: RightModule, bound: int = WITNESS_MODULE_BOUND, hom_bound: int = MAX_HOM_CANDIDATES) -> bool:
    """Poorness tested against every nonsemisimple cyclic module R/K up to ``bound``."""
    R = M.ring
    for K in right_ideals(R):
        if len(K) == R.size or R.size // len(K) > bound:
            continue
        N = cyclic_module(R, K)
        if not is_semisimple(N) and relatively_injective(M, N, hom_bound).injective:
            return False
    return True


@dataclass(frozen=True)
class InjectivityProfile:
    module: RightModule = field(repr=False)
    relative: Dict[str, bool]
    injective: bool
    poor: bool
    classification: ModuleClass
    semisimple_ring: bool = False
    failure: Optional[ExtensionFailure] = None
    member: Optional[RightModule] = field(default=None, repr=False)

    def to_model(self) -> InjectivityProfileModel:
        return InjectivityProfileModel(
            module=module_summary(self.module),
            relative=dict(sorted(self.relative.items())),
            injective=self.injective,
            poor=self.poor,
            classification=self.classification,
            semisimple_ring=self.semisimple_ring,
            failure=None if self.failure is None else self.failure.to_model(),
        )


def classify_module(M: RightModule, hom_bound: int = MAX_HOM_CANDIDATES) -> InjectivityProfile:
    """Injective, Poor or Middle."""
    if "profile" in M.cache:
        return M.cache["profile"]
    if is_semisimple_ring(M.ring):
        profile = InjectivityProfile(M, {}, True, True, ModuleClass.INJECTIVE, semisimple_ring=True)
    else:
        poor = is_poor(M, hom_bound)
        relative = dict(poor.relative)
        if poor.poor:
            profile = InjectivityProfile(M, relative, False, True, ModuleClass.POOR)
        else:
            baer = is_injective(M, hom_bound)
            relative["R_R"] = baer.injective
            cls = ModuleClass.INJECTIVE if baer.injective else ModuleClass.MIDDLE
            profile = InjectivityProfile(M, relative, baer.injective, False, cls, False, baer.failure, poor.member)
    log.debug("Module classified", module=M.label, size=M.size, classification=profile.classification.value)
    M.cache["profile"] = profile
    return profile


@dataclass(frozen=True)
class MiddleWitness:
    module: RightModule = field(repr=False)
    profile: InjectivityProfile
    member: RightModule = field(repr=False)
    failure: ExtensionFailure

    def recheck(self) -> bool:
        return not is_semisimple(self.member) and relatively_injective(self.module, self.member).injective and self.failure.recheck(self.module)

    def to_model(self) -> MiddleWitnessModel:
        return MiddleWitnessModel(
            module=module_summary(self.module, with_action=True),
            profile=self.profile.to_model(),
            nonsemisimple_member=module_summary(self.member),
            failure=self.failure.to_model(),
        )


@dataclass(frozen=True)
class WitnessSearch:
    witness: Optional[MiddleWitness]
    examined: int
    exhausted: bool
    bound: int
    hit_bound: Optional[str] = None

    def to_model(self) -> WitnessSearchModel:
        return WitnessSearchModel(
            found=self.witness is not None,
            witness=None if self.witness is None else self.witness.to_model(),
            examined=self.examined,
            exhausted=self.exhausted,
            bound=self.bound,
            hit_bound=self.hit_bound,
        )


def _as_witness(profile: InjectivityProfile) -> Optional[MiddleWitness]:
    if profile.classification is not ModuleClass.MIDDLE:
        return None
    assert profile.member is not None and profile.failure is not None
    return MiddleWitness(profile.module, profile, profile.member, profile.failure)


def middle_witness_search(
    R: FiniteRing,
    bound: int = WITNESS_MODULE_BOUND,
    hom_bound: int = MAX_HOM_CANDIDATES,
    include_submodules: bool = True,
) -> WitnessSearch:
    """First Middle module among cyclic R/K by size, then their non-cyclic submodules."""
    if is_semisimple_ring(R):
        return WitnessSearch(None, 0, True, bound)
    ideals = right_ideals(R)
    order = sorted(
        (i for i, K in enumerate(ideals) if len(K) < R.size and R.size // len(K) <= bound),
        key=lambda i: (R.size // len(ideals[i]), tuple(sorted(ideals[i]))),
    )
    seen: List[RightModule] = []
    examined = 0
    hit: Optional[str] = None
    for i in order:
        K = ideals[i]
        if any(cyclic_isomorphic(K, C) for C in seen):
            continue
        C = cyclic_module(R, K, label=f"R/K{i}")
        seen.append(C)
        examined += 1
        try:
            witness = _as_witness(classify_module(C, hom_bound))
        except BoundExceeded as exc:
            hit = str(exc)
            log.warning("Witness candidate skipped", module=C.label, reason=hit)
            continue
        if witness is not None:
            log.info("Middle witness found", recipe=R.recipe, module=C.label, size=C.size, examined=examined)
            return WitnessSearch(witness, examined, False, bound, hit)
    if include_submodules:
        extra: List[RightModule] = []
        for C in seen:
            for j, S in enumerate(enumerate_submodules(C)):
                if len(S) in (1, C.size):
                    continue
                sub = submodule_module(C, S, label=f"{C.label}[{j}]")
                if sub.is_cyclic or any(T.size == sub.size and is_isomorphic(sub, T, hom_bound) for T in extra):
                    continue
                extra.append(sub)
                examined += 1
                try:
                    witness = _as_witness(classify_module(sub, hom_bound))
                except BoundExceeded as exc:
                    hit = str(exc)
                    continue
                if witness is not None:
                    log.info("Middle witness found", recipe=R.recipe, module=sub.label, size=sub.size, examined=examined)
                    return WitnessSearch(witness, examined, False, bound, hit)
    log.info("Witness search exhausted", recipe=R.recipe, examined=examined, hit_bound=hit)
    return WitnessSearch(None, examined, hit is None, bound, hit)


@dataclass(frozen=True)
class SimpleMiddleClass:
    holds: bool
    profiles: Tuple[Tuple[SimpleClass, InjectivityProfile], ...]

    @property
    def witness(self) -> Optional[Tuple[SimpleClass, InjectivityProfile]]:
        return next((p for p in self.profiles if p[1].classification is ModuleClass.MIDDLE), None)


def has_no_simple_middle_class(R: FiniteRing, hom_bound: int = MAX_HOM_CANDIDATES) -> SimpleMiddleClass:
    """Every simple module is Injective or Poor."""
    profiles = tuple((s, classify_module(s.module, hom_bound)) for s in simples_up_to_iso(R))
    holds = all(p.classification is not ModuleClass.MIDDLE for _, p in profiles)
    log.info("Simple middle class decided", recipe=R.recipe, holds=holds, simples=len(profiles))
    return SimpleMiddleClass(holds, profiles)
