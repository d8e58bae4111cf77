"""Finite right modules over a FiniteRing."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from .config import MAX_HOM_CANDIDATES, MAX_SUBMODULES, SAMPLED_AXIOM_TRIPLES, SEED
from .errors import BoundExceeded, ConsistencyError, ModuleConstructionError
from .exactalg import Mat, full_matrix_elements
from .lattice import canonical_key, closed_span, enumerate_lattice, join, maximal_members
from .models import ModuleSummary
from .ringkit import AxiomCheck, FiniteRing, jacobson_radical, primitive_idempotents, right_ideals

log = structlog.get_logger()

# module sizes up to which radical and singular submodule are recomputed definitionally
CROSS_CHECK_MODULE_SIZE = 64


class RightModule:
    """Carrier ``0..size-1`` with addition table and right action ``act[m][r]``."""

    def __init__(
        self,
        ring: FiniteRing,
        add: Sequence[Sequence[int]],
        act: Sequence[Sequence[int]],
        zero: int,
        label: str,
    ):
        self.ring = ring
        self.add = tuple(tuple(row) for row in add)
        self.act = tuple(tuple(row) for row in act)
        self.size = len(self.add)
        self.zero = zero
        self.label = label
        self.cache: Dict[str, Any] = {}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"RightModule({self.label}, size={self.size})"

    @cached_property
    def neg(self) -> Tuple[int, ...]:
        return tuple(row.index(self.zero) for row in self.add)

    @cached_property
    def right_maps(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(zip(*self.act))

    @cached_property
    def cyclics(self) -> Tuple[frozenset, ...]:
        """mR for every m."""
        return tuple(frozenset(row) for row in self.act)

    @cached_property
    def annihilators(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(r for r, v in enumerate(row) if v == self.zero) for row in self.act)

    @cached_property
    def annihilator(self) -> frozenset:
        out = frozenset(range(self.ring.size))
        for a in self.annihilators:
            out &= a
        return out

    def span(self, gens: Sequence[int]) -> frozenset:
        return closed_span(self.add, self.zero, gens, self.right_maps)

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set: largest enlargement first, smallest index on ties."""
        span = frozenset({self.zero})
        gens: List[int] = []
        while len(span) < self.size:
            best, best_span = -1, span
            for m in range(self.size):
                if m in span:
                    continue
                grown = join(self.add, span, self.cyclics[m])
                if len(grown) > len(best_span):
                    best, best_span = m, grown
            gens.append(best)
            span = best_span
        return tuple(gens)

    @property
    def is_cyclic(self) -> bool:
        return len(self.generators) <= 1

    @property
    def carrier(self) -> frozenset:
        return frozenset(range(self.size))

    def to_dict(self) -> Dict[str, Any]:
        return {"ring": self.ring.recipe, "size": self.size, "action": [list(r) for r in self.act]}


@dataclass(frozen=True)
class ModuleMap:
    """A module homomorphism recorded as its value table."""

    domain: RightModule = field(compare=False, repr=False)
    codomain: RightModule = field(compare=False, repr=False)
    table: Tuple[int, ...]

    def __call__(self, m: int) -> int:
        return self.table[m]

    def verify(self) -> bool:
        t = np.array(self.table)
        D, C = self.domain, self.codomain
        additive = (t[np.array(D.add)] == np.array(C.add)[t[:, None], t[None, :]]).all()
        equivariant = (t[np.array(D.act)] == np.array(C.act)[t]).all()
        return bool(additive and equivariant)

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.codomain.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    @property
    def is_zero(self) -> bool:
        return all(v == self.codomain.zero for v in self.table)

    def kernel(self) -> frozenset:
        return frozenset(m for m, v in enumerate(self.table) if v == self.codomain.zero)

    def image(self) -> frozenset:
        return frozenset(self.table)

    def restrict(self, members: Sequence[int]) -> Tuple[int, ...]:
        """Values on ``members`` in ascending order."""
        return tuple(self.table[m] for m in sorted(members))


@dataclass(frozen=True)
class SubmoduleHandle:
    parent: RightModule = field(compare=False, repr=False)
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def as_module(self) -> RightModule:
        return submodule_module(self.parent, self.members)

    def quotient(self) -> RightModule:
        return quotient(self.parent, self.members)


def verify_module_axioms(M: RightModule, seed: int = SEED, samples: int = SAMPLED_AXIOM_TRIPLES) -> AxiomCheck:
    """Module laws, exhaustively when |M|*|R|^2 and |M|^3 are small, else on seeded samples."""
    n, N = M.size, M.ring.size
    A, X = np.array(M.add), np.array(M.act)
    RA, RM = M.ring.add_array, M.ring.mul_array
    limit = 2_000_000
    rng = np.random.default_rng(seed)
    if max(n * N * N, n * n * N, n**3) <= limit:
        mode = "full"
        m, r, s = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(N), np.arange(N), indexing="ij"))
        a, b, c = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    else:
        mode = "sampled"
        m, a, b, c = (rng.integers(0, n, size=samples) for _ in range(4))
        r, s = (rng.integers(0, N, size=samples) for _ in range(2))
    laws = [
        ("additive associativity", A[A[a, b], c] == A[a, A[b, c]], (a, b, c)),
        ("additive commutativity", A[a, b] == A[b, a], (a, b, c)),
        ("additive identity", A[M.zero, a] == a, (a, b, c)),
        ("action associativity", X[m, RM[r, s]] == X[X[m, r], s], (m, r, s)),
        ("distributivity over ring addition", X[m, RA[r, s]] == A[X[m, r], X[m, s]], (m, r, s)),
        ("unital action", X[m, M.ring.one] == m, (m, r, s)),
    ]
    if mode == "full":
        pa, pb = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(n), indexing="ij"))
        mask = (X[A[pa, pb]] == A[X[pa], X[pb]]).all(axis=1)
        laws.append(("distributivity over module addition", mask, (pa, pb, np.zeros_like(pa))))
    else:
        laws.append(("distributivity over module addition", X[A[a, b], r] == A[X[a, r], X[b, r]], (a, b, r)))
    for law, mask, triple in laws:
        bad = np.flatnonzero(~mask)
        if bad.size:
            i = bad[0]
            return AxiomCheck(False, mode, int(mask.size), law, tuple(int(t[i]) for t in triple))
    return AxiomCheck(True, mode, int(len(m)))


# Constructions


def realize_regular(R: FiniteRing) -> RightModule:
    if "regular" not in R.cache:
        R.cache["regular"] = RightModule(R, R.add, R.mul, R.zero, f"{R.recipe}_R")
    return R.cache["regular"]


def realize_paired(R: FiniteRing, i: int, W: Optional[Sequence[Mat]] = None, label: Optional[str] = None) -> RightModule:
    """Pairs (a, A), a in D, A in W, with (a, A)(d, x, B) = (ad + A^(i) x, AB).

    ``W`` defaults to all of M_n(D); ``i`` is 1-based.
    """
    layout = R.layout
    if layout is None:
        raise ModuleConstructionError(f"{R.recipe} is not a tri ring")
    F, n = layout.field, layout.n
    if not 1 <= i <= n:
        raise ModuleConstructionError(f"row index {i} outside 1..{n}")
    mats = full_matrix_elements(n, F) if W is None else tuple(W)
    midx = {A: k for k, A in enumerate(mats)}
    if len(midx) != len(mats):
        raise ModuleConstructionError("W lists a matrix twice")
    try:
        wmul = [[midx[A @ B] for B in layout.matrices] for A in mats]
        wadd = [[midx[A + B] for B in mats] for A in mats]
    except KeyError as exc:
        raise ModuleConstructionError("W is not closed under addition and the D' action") from exc
    rowdot = []
    for A in mats:
        row = A.rows[i - 1]
        line = []
        for x in layout.vectors:
            acc = 0
            for a, b in zip(row, x):
                acc = F.add(acc, F.mul(a, b))
            line.append(acc)
        rowdot.append(line)
    w = len(mats)
    carrier = [(a, k) for a in F.elements() for k in range(w)]
    add = [[F.add(a, a1) * w + wadd[k][k1] for (a1, k1) in carrier] for (a, k) in carrier]
    decoded = [layout.decode(r) for r in range(R.size)]
    act = [
        [F.add(F.mul(a, d), rowdot[k][x]) * w + wmul[k][b] for (d, x, b) in decoded]
        for (a, k) in carrier
    ]
    zero_k = next(k for k, A in enumerate(mats) if A.is_zero)
    name = label or (f"(D,M{n}(D))_{i}" if W is None else f"(D,D')_{i}")
    return RightModule(R, add, act, zero_k, name)


def coset_projection(M: RightModule, K: frozenset) -> Tuple[List[int], Dict[int, int]]:
    """Least representative of each coset, and the index of each representative."""
    rep = [min(M.add[m][k] for k in K) for m in range(M.size)]
    reps = sorted(set(rep))
    return rep, {r: i for i, r in enumerate(reps)}


def quotient(M: RightModule, K: frozenset, label: Optional[str] = None) -> RightModule:
    rep, index = coset_projection(M, K)
    reps = sorted(index)
    add = [[index[rep[M.add[a][b]]] for b in reps] for a in reps]
    act = [[index[rep[v]] for v in M.act[a]] for a in reps]
    return RightModule(M.ring, add, act, index[rep[M.zero]], label or f"{M.label}/[{len(K)}]")


def submodule_module(M: RightModule, K: frozenset, label: Optional[str] = None) -> RightModule:
    """K as a module in its own right, elements in ascending parent order."""
    elems = sorted(K)
    index = {m: i for i, m in enumerate(elems)}
    try:
        add = [[index[M.add[a][b]] for b in elems] for a in elems]
        act = [[index[v] for v in M.act[a]] for a in elems]
    except KeyError as exc:
        raise ModuleConstructionError("subset is not a submodule") from exc
    return RightModule(M.ring, add, act, index[M.zero], label or f"[{len(K)}]<{M.label}")


def direct_sum(M1: RightModule, M2: RightModule) -> RightModule:
    if M1.ring is not M2.ring:
        raise ModuleConstructionError("direct summands over different rings")
    n2 = M2.size
    pairs = [(a, b) for a in range(M1.size) for b in range(n2)]
    add = [[M1.add[a][c] * n2 + M2.add[b][d] for (c, d) in pairs] for (a, b) in pairs]
    act = [[M1.act[a][r] * n2 + M2.act[b][r] for r in range(M1.ring.size)] for (a, b) in pairs]
    return RightModule(M1.ring, add, act, M1.zero * n2 + M2.zero, f"{M1.label}+{M2.label}")


def cyclic_module(R: FiniteRing, K: frozenset, label: Optional[str] = None) -> RightModule:
    """R/K for a right ideal K."""
    return quotient(realize_regular(R), K, label or f"R/[{len(K)}]")


# Lattice


def enumerate_submodules(M: RightModule, bound: int = MAX_SUBMODULES) -> List[frozenset]:
    """Every submodule, as sums of cyclic submodules, canonically ordered."""
    if "lattice" not in M.cache:
        M.cache["lattice"] = enumerate_lattice(M.add, set(M.cyclics), M.zero, bound)
    return M.cache["lattice"]


def submodule_handles(M: RightModule, bound: int = MAX_SUBMODULES) -> List[SubmoduleHandle]:
    return [SubmoduleHandle(M, K) for K in enumerate_submodules(M, bound)]


def is_simple(M: RightModule) -> bool:
    return M.size > 1 and all(len(M.cyclics[m]) == M.size for m in range(M.size) if m != M.zero)


def minimal_submodules(M: RightModule) -> List[frozenset]:
    """Simple submodules; each is cyclic."""
    out = set()
    for m in range(M.size):
        if m == M.zero:
            continue
        C = M.cyclics[m]
        if all(len(M.cyclics[x]) == len(C) for x in C if x != M.zero):
            out.add(C)
    return sorted(out, key=canonical_key)


def socle(M: RightModule) -> frozenset:
    if "socle" not in M.cache:
        gens = [min(C - {M.zero}) for C in minimal_submodules(M)]
        M.cache["socle"] = M.span(gens)
    return M.cache["socle"]


def radical(M: RightModule, cross_check: Optional[bool] = None) -> frozenset:
    """M J(R), compared with the intersection of maximal submodules on small modules."""
    if "radical" in M.cache:
        return M.cache["radical"]
    J = jacobson_radical(M.ring)
    rad = closed_span(M.add, M.zero, {M.act[m][j] for m in range(M.size) for j in J})
    if cross_check is None:
        cross_check = M.size <= CROSS_CHECK_MODULE_SIZE
    if cross_check:
        meet = M.carrier
        for L in maximal_members(enumerate_submodules(M), M.carrier):
            meet &= L
        if meet != rad:
            raise ConsistencyError(f"radical of {M.label}: M.J has {len(rad)} elements, maximal meet {len(meet)}")
    M.cache["radical"] = rad
    return rad


def regular_socle(R: FiniteRing) -> frozenset:
    return socle(realize_regular(R))


def singular_submodule(M: RightModule) -> frozenset:
    """Elements killed by Soc(R_R)."""
    if "singular" not in M.cache:
        soc = regular_socle(M.ring)
        M.cache["singular"] = frozenset(
            m for m in range(M.size) if all(M.act[m][s] == M.zero for s in soc)
        )
    return M.cache["singular"]


def singular_submodule_definitional(M: RightModule) -> frozenset:
    """Elements whose annihilator meets every nonzero right ideal."""
    R = M.ring
    nonzero_cyclic = {frozenset(R.mul[x]) for x in range(R.size) if x != R.zero}
    zero = frozenset({R.zero})
    return frozenset(
        m
        for m in range(M.size)
        if all((M.annihilators[m] & C) != zero for C in nonzero_cyclic)
    )


def composition_series(M: RightModule) -> List[frozenset]:
    """0 = M_0 < M_1 < ... < M_l = M, each step a cover."""
    chain = [frozenset({M.zero})]
    current = chain[0]
    while len(current) < M.size:
        best: Optional[frozenset] = None
        for m in range(M.size):
            if m in current:
                continue
            grown = join(M.add, current, M.cyclics[m])
            if best is None or len(grown) < len(best):
                best = grown
        assert best is not None
        chain.append(best)
        current = best
    return chain


def composition_length(M: RightModule) -> int:
    if "length" not in M.cache:
        M.cache["length"] = len(composition_series(M)) - 1
    return M.cache["length"]


def is_semisimple(M: RightModule) -> bool:
    return len(socle(M)) == M.size


def is_local(M: RightModule) -> bool:
    """Unique maximal submodule, i.e. M/Rad(M) simple."""
    if M.size == 1:
        return False
    return is_simple(quotient(M, radical(M)))


@dataclass(frozen=True)
class StructureProfile:
    socle: frozenset
    radical: frozenset
    singular: frozenset
    composition_length: int
    is_semisimple: bool
    is_local: bool


def structure_profile(M: RightModule) -> StructureProfile:
    soc = socle(M)
    return StructureProfile(
        socle=soc,
        radical=radical(M),
        singular=singular_submodule(M),
        composition_length=composition_length(M),
        is_semisimple=len(soc) == M.size,
        is_local=is_local(M),
    )


def module_summary(M: RightModule, with_action: bool = False) -> ModuleSummary:
    p = structure_profile(M)
    return ModuleSummary(
        label=M.label,
        ring=M.ring.recipe,
        size=M.size,
        composition_length=p.composition_length,
        socle_size=len(p.socle),
        radical_size=len(p.radical),
        singular_size=len(p.singular),
        is_local=p.is_local,
        is_semisimple=p.is_semisimple,
        generators=list(M.generators),
        action=[list(r) for r in M.act] if with_action else None,
    )


# Iso classes


def cyclic_isomorphic(K: frozenset, N: RightModule) -> bool:
    """R/K is isomorphic to N iff N has a generator with annihilator K."""
    return any(N.annihilators[v] == K and len(N.cyclics[v]) == N.size for v in range(N.size))


@dataclass(frozen=True)
class SimpleClass:
    module: RightModule
    idempotent: int
    kernel: frozenset
    projective: bool


def simples_up_to_iso(R: FiniteRing) -> List[SimpleClass]:
    """One simple module per class, as R/K with K = {r : er in eJ}, e primitive."""
    if "simples" in R.cache:
        return R.cache["simples"]
    J = jacobson_radical(R)
    tops = []
    for e in primitive_idempotents(R):
        eJ = frozenset(R.mul[e][j] for j in J)
        K = frozenset(r for r in range(R.size) if R.mul[e][r] in eJ)
        tops.append((e, K, eJ == frozenset({R.zero})))
    classes: List[SimpleClass] = []
    for e, K, _ in tops:
        if any(cyclic_isomorphic(K, c.module) for c in classes):
            continue
        S = cyclic_module(R, K, label=f"S{len(classes) + 1}")
        projective = any(
            split and cyclic_isomorphic(K2, S) for _, K2, split in tops
        )
        classes.append(SimpleClass(S, e, K, projective))
    log.info("Simple modules classified", recipe=R.recipe, classes=len(classes))
    R.cache["simples"] = classes
    return classes


def local_length_two_ideals(R: FiniteRing) -> List[frozenset]:
    """Right ideals K with R/K local of composition length two."""
    ideals = right_ideals(R)
    whole = frozenset(range(R.size))
    maximals = maximal_members(ideals, whole)
    out = []
    for K in ideals:
        above = [L for L in maximals if K <= L]
        if len(above) != 1 or K == above[0]:
            continue
        L = above[0]
        if any(K < I < L for I in ideals):
            continue
        out.append(K)
    return sorted(out, key=lambda K: (R.size // len(K), tuple(sorted(K))))


def local_length_two_modules(R: FiniteRing) -> List[RightModule]:
    """Local modules of length two, one per iso class."""
    if "local_length_two" in R.cache:
        return R.cache["local_length_two"]
    found: List[RightModule] = []
    for K in local_length_two_ideals(R):
        if any(cyclic_isomorphic(K, N) for N in found):
            continue
        found.append(cyclic_module(R, K, label=f"L{len(found) + 1}"))
    log.info("Local length-two modules classified", recipe=R.recipe, classes=len(found))
    R.cache["local_length_two"] = found
    return found


# Homs


def hom_enumerate(K: RightModule, M: RightModule, bound: int = MAX_HOM_CANDIDATES) -> List[ModuleMap]:
    """All module maps K -> M, by choosing generator images and propagating."""
    if K.ring is not M.ring:
        raise ModuleConstructionError("hom between modules over different rings")
    N = K.ring.size
    gens = K.generators
    candidates = [
        [v for v in range(M.size) if K.annihilators[g] <= M.annihilators[v]] for g in gens
    ]
    total = 1
    for c in candidates:
        total *= len(c)
    if total > bound:
        raise BoundExceeded("hom search", bound, total)
    results: List[ModuleMap] = []

    def extend(level: int, graph: Dict[int, int]) -> None:
        if level == len(gens):
            results.append(ModuleMap(K, M, tuple(graph[k] for k in range(K.size))))
            return
        g = gens[level]
        for v in candidates[level]:
            cyc = {K.act[g][r]: M.act[v][r] for r in range(N)}
            grown = dict(graph)
            consistent = True
            for s, fs in graph.items():
                for c, fc in cyc.items():
                    k, val = K.add[s][c], M.add[fs][fc]
                    old = grown.setdefault(k, val)
                    if old != val:
                        consistent = False
                        break
                if not consistent:
                    break
            if consistent:
                extend(level + 1, grown)

    extend(0, {K.zero: M.zero})
    results.sort(key=lambda f: f.table)
    return results


def is_isomorphic(M: RightModule, N: RightModule, bound: int = MAX_HOM_CANDIDATES) -> bool:
    if M.ring is not N.ring:
        raise ModuleConstructionError("comparing modules over different rings")
    if M.size != N.size:
        return False
    if (
        composition_length(M) != composition_length(N)
        or len(socle(M)) != len(socle(N))
        or len(radical(M)) != len(radical(N))
        or len(singular_submodule(M)) != len(singular_submodule(N))
        or M.annihilator != N.annihilator
    ):
        return False
    if M.size == 1:
        return True
    if M.is_cyclic:
        return cyclic_isomorphic(M.annihilators[M.generators[0]], N)
    return any(f.is_bijective for f in hom_enumerate(M, N, bound))
