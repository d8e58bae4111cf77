"""Decision procedures for the middle class, with re-checkable certificates.

Each criterion returns a :class:`CriterionVerdict`; ``holds`` always means the
favourable condition is met and ``predicts`` states the middle-class consequence
of the outcome. Wherever a criterion and the injectivity oracle both reach a
conclusion they are compared, and a disagreement raises ``ConsistencyError``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
import structlog
from sympy import isprime

from . import ringspec as rs
from .config import FULL_AXIOM_CHECK_SIZE, MAX_GL_CANDIDATES, MAX_HOM_CANDIDATES, SEED
from .errors import BoundExceeded, ConsistencyError, ModuleConstructionError
from .exactalg import (
    FieldDom,
    FiniteField,
    Mat,
    MatrixAlgebra,
    Poly,
    companion,
    field_embedding,
    full_matrix_elements,
    gl_enumerate,
    gl_order,
    identity,
    mat_inverse,
    min_poly,
    poly_irreducible,
    row_span_dim,
    subalgebra_closure,
)
from .injdom import (
    WitnessSearch,
    classify_module,
    has_no_simple_middle_class,
    is_injective,
    middle_witness_search,
)
from .models import (
    Bounds,
    ClassificationReport,
    CriterionVerdict,
    DecompositionModel,
    EvidenceKind,
    MiddleClassVerdict,
    SimpleClassModel,
    SimpleMiddleClassVerdict,
    StructuralPredicates,
    Verb,
    Verdict,
)
from .modkit import (
    ModuleMap,
    composition_length,
    cyclic_isomorphic,
    enumerate_submodules,
    hom_enumerate,
    is_isomorphic,
    local_length_two_modules,
    minimal_submodules,
    realize_paired,
    realize_regular,
    regular_socle,
    simples_up_to_iso,
    singular_submodule,
    submodule_module,
)
from .ringkit import (
    FiniteRing,
    RingDecomposition,
    TriLayout,
    build_ring,
    decompose_ring,
    ideals_within_radical,
    is_commutative,
    is_local_ring,
    is_semisimple_ring,
    jacobson_radical,
    opposite_ring,
    primitive_idempotents,
    product_set,
    right_ideals,
)

log = structlog.get_logger()

ALL_CONJUGATES = "all-conjugates"
SELF_ONLY = "self-only"

ANCHORS: Dict[str, str] = {
    "row-span": "rows of every conjugate of D' span D^n",
    "row-span-self": "rows of D' itself span D^n",
    "triangularity": "D' in M_2(D) triangular iff middle class",
    "paired-homs": "maps between paired modules are (d0, A0) multiplications",
    "paired-iso": "paired modules isomorphic iff D' has a row c*e_i",
    "unique-local": "lines through first rows of D' cover D^n",
    "conjugate-iso": "some conjugate makes all paired modules isomorphic",
    "prime-degree": "subfields of M_p(F) above the scalars have spanning rows",
    "commutative": "commutative: S x (zero or local with minimal maximal ideal)",
    "product-factor": "S x T with S semisimple has a middle class iff T does",
    "morita": "no middle class is Morita invariant",
    "serial-j2": "serial with J^2=0 and homogeneous socle",
    "local-radical-ideals": "local with no ideal strictly inside the radical",
    "radical-ideal": "an ideal strictly inside the radical gives a middle class",
    "simple-dichotomy": "Artinian: S x (SI with homogeneous socle, or one noninjective simple and singular socle)",
    "simple-destitute": "simple-destitute iff semisimple or a unique simple",
    "commutative-simple": "commutative: no simple middle class iff S x (zero or local)",
    "gv-projective-poor": "non-V: GV without simple middle class iff a simple projective poor module",
    "gv-or-projective-injective": "no simple middle class: GV or simple projectives injective",
    "gv-socle": "nonsingular GV non-V: socle of T nonzero, poor and homogeneous",
    "singular-socle": "singular socle: indecomposable, one noninjective simple, homogeneous socle",
    "artinian-socle": "Artinian: socle of T poor homogeneous, socle projective or singular",
    "serial-simple": "serial with J^2=0 and homogeneous socle has no simple middle class",
}

_T = TypeVar("_T")


def _verdict(ident: str, verdict: Verdict, **kwargs) -> CriterionVerdict:
    return CriterionVerdict(id=ident, anchor=ANCHORS[ident], verdict=verdict, **kwargs)


def _violation(ident: str, message: str) -> ConsistencyError:
    log.error("Theorem check violated", criterion=ident, detail=message)
    return ConsistencyError(f"{ident}: {message}")


def _layout(R: FiniteRing) -> TriLayout:
    if R.layout is None:
        raise ModuleConstructionError(f"{R.recipe} is not a tri ring")
    return R.layout


def _members(algebra: MatrixAlgebra) -> Sequence[Mat]:
    return algebra.elements if algebra.elements is not None else algebra.basis


# Row span


def row_times(v: Sequence[int], A: Mat) -> Tuple[int, ...]:
    """Row vector times matrix."""
    return (Mat(A.field, (tuple(v),)) @ A).row(0)


def conjugate_row_span(u: Mat, dprime: MatrixAlgebra, i: int) -> int:
    """Dimension of the span of the i-th rows (0-based) of u D' u^-1."""
    u_inv = mat_inverse(u)
    if u_inv is None:
        raise ValueError("conjugating matrix is singular")
    rows = ((u @ A @ u_inv).row(i) for A in _members(dprime))
    return row_span_dim(rows, dprime.n, dprime.field)


def complete_to_basis(v: Sequence[int], field: FieldDom, n: int) -> Mat:
    """An invertible matrix whose first row is the nonzero vector ``v``."""
    rows = [tuple(v)]
    for k in range(n):
        e = tuple(field.one if c == k else field.zero for c in range(n))
        if row_span_dim(rows + [e], n, field) > len(rows):
            rows.append(e)
    return Mat(field, tuple(rows))


def _projective_points(field: FieldDom, n: int):
    """Nonzero vectors whose first nonzero entry is one."""
    for v in itertools.product(field.elements(), repeat=n):
        lead = next((x for x in v if not field.is_zero(x)), None)
        if lead is not None and lead == field.one:
            yield v


def row_orbit_failure(
    field: FieldDom, n: int, mats: Sequence[Mat], bound: int = MAX_GL_CANDIDATES
) -> Tuple[Optional[Tuple[int, ...]], int, int]:
    """First nonzero v whose images vA (A in ``mats``) fail to span, its span, and how many v were checked.

    A row of u A u^-1 is (u_i A) u^-1 and every nonzero v is a row of some
    invertible u, so no failure here means every conjugate has spanning rows.
    """
    q = len(field.elements())
    if q**n > bound:
        raise BoundExceeded("row orbit", bound, q**n)
    checked = 0
    for v in _projective_points(field, n):
        checked += 1
        dim = row_span_dim((row_times(v, A) for A in mats), n, field)
        if dim < n:
            return v, dim, checked
    return None, n, checked


def row_span_criterion(
    field: FieldDom,
    n: int,
    dprime: MatrixAlgebra,
    mode: str = ALL_CONJUGATES,
    bound: int = MAX_GL_CANDIDATES,
) -> CriterionVerdict:
    """Whether the i-th rows of D' (or of every conjugate) span D^n for every i."""
    if mode not in (ALL_CONJUGATES, SELF_ONLY):
        raise ValueError(f"unknown mode {mode!r}")
    ident = "row-span" if mode == ALL_CONJUGATES else "row-span-self"
    if dprime.is_division is False:
        return _verdict(ident, Verdict.INAPPLICABLE, reason="D' is not a division ring")
    has = MiddleClassVerdict.HAS.value
    if mode == SELF_ONLY:
        conjugators: List[Mat] = [identity(n, field)]
        method = "self"
    elif not field.finite:
        return _verdict(ident, Verdict.UNDECIDED, reason=f"conjugates over {field.descriptor} are not enumerable")
    else:
        try:
            conjugators = list(gl_enumerate(n, field, bound))
            method = "gl-enumeration"
        except BoundExceeded as exc:
            log.info("Conjugate enumeration skipped", n=n, field=field.descriptor, reason=str(exc))
            return _row_span_by_orbit(field, n, dprime, bound, str(exc))
    for u in conjugators:
        for i in range(n):
            dim = conjugate_row_span(u, dprime, i)
            if dim < n:
                log.info("Row span deficient", mode=mode, row=i + 1, span_dim=dim)
                return _verdict(
                    ident,
                    Verdict.FAILS,
                    predicts=has,
                    certificate={"method": method, "conjugator": u.to_list(), "row": i + 1, "span_dim": dim},
                )
    if mode == SELF_ONLY:
        predicts = MiddleClassVerdict.NO.value if n <= 2 and dprime.contains_scalars else None
    else:
        predicts = MiddleClassVerdict.NO.value
    return _verdict(ident, Verdict.HOLDS, predicts=predicts, certificate={"method": method, "conjugates": len(conjugators)})


def _row_span_by_orbit(field: FieldDom, n: int, dprime: MatrixAlgebra, bound: int, note: str) -> CriterionVerdict:
    try:
        v, dim, checked = row_orbit_failure(field, n, _members(dprime), bound)
    except BoundExceeded as exc:
        return _verdict("row-span", Verdict.UNDECIDED, reason=f"{note}; {exc}")
    if v is None:
        return _verdict(
            "row-span",
            Verdict.HOLDS,
            predicts=MiddleClassVerdict.NO.value,
            certificate={"method": "row-orbit", "vectors": checked, "conjugates": gl_order(n, len(field.elements()))},
        )
    u = complete_to_basis(v, field, n)
    return _verdict(
        "row-span",
        Verdict.FAILS,
        predicts=MiddleClassVerdict.HAS.value,
        certificate={"method": "row-orbit", "conjugator": u.to_list(), "row": 1, "span_dim": dim},
    )


def triangularity_criterion(dprime: MatrixAlgebra) -> CriterionVerdict:
    """For n = 2: middle class iff D' is all lower or all upper triangular.

    Checked against the self-only row span, which is the same condition.
    """
    if dprime.n != 2:
        return _verdict("triangularity", Verdict.INAPPLICABLE, reason="stated for D' inside M_2(D)")
    if dprime.is_division is False:
        return _verdict("triangularity", Verdict.INAPPLICABLE, reason="D' is not a division ring")
    mats = _members(dprime)
    not_lower = next((A for A in mats if not A.is_lower_triangular), None)
    not_upper = next((A for A in mats if not A.is_upper_triangular), None)
    triangular = not_lower is None or not_upper is None
    span = row_span_criterion(dprime.field, 2, dprime, SELF_ONLY)
    if (span.verdict is Verdict.HOLDS) == triangular:
        raise _violation("triangularity", f"triangular={triangular} but self-only row span {span.verdict.value}")
    if triangular:
        return _verdict(
            "triangularity",
            Verdict.FAILS,
            predicts=MiddleClassVerdict.HAS.value,
            certificate={"all_lower": not_lower is None, "all_upper": not_upper is None},
        )
    assert not_lower is not None and not_upper is not None
    return _verdict(
        "triangularity",
        Verdict.HOLDS,
        predicts=MiddleClassVerdict.NO.value if dprime.contains_scalars else None,
        certificate={"not_lower": not_lower.to_list(), "not_upper": not_upper.to_list()},
    )


# Paired modules (D, D')_i


def paired_hom_formula(
    R: FiniteRing,
    i: int,
    j: int,
    cross_check: bool = True,
    hom_bound: int = MAX_HOM_CANDIDATES,
) -> List[ModuleMap]:
    """All maps (D,D')_i -> (D,M_n(D))_j as (d, A) -> (d0 d, A0 A) with row j of A0 equal to d0 e_i."""
    layout = _layout(R)
    F, n = layout.field, layout.n
    source = realize_paired(R, i, layout.matrices)
    target = realize_paired(R, j)
    full = full_matrix_elements(n, F)
    fidx = {A: k for k, A in enumerate(full)}
    width = len(full)
    vectors = list(itertools.product(F.elements(), repeat=n))
    maps = []
    for d0 in F.elements():
        fixed = tuple(d0 if k == i - 1 else F.zero for k in range(n))
        for free in itertools.product(vectors, repeat=n - 1):
            rows = list(free)
            rows.insert(j - 1, fixed)
            A0 = Mat(F, tuple(rows))
            table = tuple(
                F.mul(d0, a) * width + fidx[A0 @ A] for a in F.elements() for A in layout.matrices
            )
            maps.append(ModuleMap(source, target, table))
    maps.sort(key=lambda f: f.table)
    if cross_check:
        brute = {f.table for f in hom_enumerate(source, target, hom_bound)}
        formula = {f.table for f in maps}
        if brute != formula or len(formula) != len(maps):
            raise _violation(
                "paired-homs",
                f"formula gives {len(formula)} maps (D,D')_{i} -> (D,M_n(D))_{j}, enumeration {len(brute)}",
            )
    log.info("Paired homomorphisms listed", recipe=R.recipe, i=i, j=j, maps=len(maps))
    return maps


def _unit_row(row: Sequence[int], k: int) -> bool:
    """row = c e_k with c nonzero (0-based k)."""
    return row[k] != 0 and all(x == 0 for c, x in enumerate(row) if c != k)


def paired_iso_criterion(
    R: FiniteRing,
    i: int,
    j: int,
    cross_check: bool = True,
    hom_bound: int = MAX_HOM_CANDIDATES,
) -> CriterionVerdict:
    """(D,D')_i and (D,D')_j are isomorphic iff some A in D' has row j equal to c e_i."""
    layout = _layout(R)
    witness = next((A for A in layout.matrices if _unit_row(A.row(j - 1), i - 1)), None)
    holds = witness is not None
    if cross_check:
        Mi = realize_paired(R, i, layout.matrices)
        Mj = realize_paired(R, j, layout.matrices)
        if is_isomorphic(Mi, Mj, hom_bound) != holds:
            raise _violation("paired-iso", f"row test says {holds} for (D,D')_{i} and (D,D')_{j}")
    if witness is None:
        return _verdict("paired-iso", Verdict.FAILS, certificate={"i": i, "j": j, "matrices_checked": len(layout.matrices)})
    return _verdict("paired-iso", Verdict.HOLDS, certificate={"i": i, "j": j, "matrix": witness.to_list()})


def unique_local_criterion(R: FiniteRing, cross_check: bool = True) -> CriterionVerdict:
    """Unique local module of length two iff the lines D x through first rows x of D' cover D^n."""
    layout = _layout(R)
    F, n = layout.field, layout.n
    first_rows = {A.row(0) for A in layout.matrices}
    covered = {tuple(F.mul(d, c) for c in x) for x in first_rows for d in F.elements()}
    total = len(F.elements()) ** n
    holds = len(covered) == total
    if cross_check:
        classes = len(local_length_two_modules(R))
        if (classes == 1) != holds:
            raise _violation("unique-local", f"line cover {holds} but {classes} local length-two classes")
    if holds:
        return _verdict("unique-local", Verdict.HOLDS, certificate={"first_rows": len(first_rows), "covered": len(covered)})
    uncovered = next(v for v in itertools.product(F.elements(), repeat=n) if v not in covered)
    return _verdict(
        "unique-local",
        Verdict.FAILS,
        certificate={"first_rows": len(first_rows), "covered": len(covered), "uncovered": list(uncovered)},
    )


def conjugate_iso_criterion(
    R: FiniteRing, bound: int = MAX_GL_CANDIDATES, cross_check: bool = True
) -> CriterionVerdict:
    """Some conjugate D'' of D' makes every (D,D'')_i isomorphic; for n = 2, D' itself."""
    layout = _layout(R)
    F, n, dprime = layout.field, layout.n, layout.dprime
    if dprime.is_division is False:
        return _verdict("conjugate-iso", Verdict.INAPPLICABLE, reason="D' is not a division ring")
    if n == 1:
        return _verdict("conjugate-iso", Verdict.HOLDS, predicts=MiddleClassVerdict.NO.value, certificate={"n": 1})

    def all_isomorphic(mats: Sequence[Mat]) -> bool:
        return all(any(_unit_row(A.row(j), 0) for A in mats) for j in range(1, n))

    if n == 2:
        holds = all_isomorphic(layout.matrices)
        if cross_check and dprime.contains_scalars:
            span = row_span_criterion(F, n, dprime, ALL_CONJUGATES, bound)
            if span.verdict in (Verdict.HOLDS, Verdict.FAILS) and (span.verdict is Verdict.HOLDS) != holds:
                raise _violation("conjugate-iso", f"(D,D')_1 iso (D,D')_2 is {holds}, row span {span.verdict.value}")
        predicts = None
        if dprime.contains_scalars:
            predicts = (MiddleClassVerdict.NO if holds else MiddleClassVerdict.HAS).value
        return _verdict(
            "conjugate-iso", Verdict.HOLDS if holds else Verdict.FAILS, predicts=predicts, certificate={"conjugator": identity(2, F).to_list()}
        )
    try:
        examined = 0
        for u in gl_enumerate(n, F, bound):
            examined += 1
            u_inv = mat_inverse(u)
            assert u_inv is not None
            if all_isomorphic([u @ A @ u_inv for A in layout.matrices]):
                return _verdict("conjugate-iso", Verdict.HOLDS, certificate={"conjugator": u.to_list(), "examined": examined})
    except BoundExceeded as exc:
        return _verdict("conjugate-iso", Verdict.UNDECIDED, reason=str(exc))
    return _verdict(
        "conjugate-iso", Verdict.FAILS, predicts=MiddleClassVerdict.HAS.value, certificate={"examined": examined}
    )


# Subfields of matrix rings


def companion_subfield(F: FiniteField, P: Poly) -> MatrixAlgebra:
    """The F-span of the powers of companion(P), a field of order |F|^deg P."""
    if not poly_irreducible(P):
        raise ValueError(f"{P} is reducible over {F.descriptor}")
    m = P.degree
    K = subalgebra_closure([companion(P)], F, n=m)
    if not K.is_division or K.size != F.order**m or K.is_scalar_only:
        raise ConsistencyError(f"companion span of {P} has {K.size} elements, division={K.is_division}")
    return K


def _lift(M: Mat, large: FiniteField, embed: Sequence[int]) -> Mat:
    return Mat(large, tuple(tuple(embed[x] for x in row) for row in M.rows))


def prime_degree_span_check(
    small: FiniteField,
    large: FiniteField,
    K: MatrixAlgebra,
    bound: int = MAX_GL_CANDIDATES,
) -> CriterionVerdict:
    """Rows of every GL_p(F)-conjugate of K span F1^p, where F <= F1 and K lies in M_p(F).

    The certificate also reports whether the same holds for conjugates taken in
    GL_p(F1), the quantifier used for the ring (F1, F1^p, K) as a whole.
    """
    p = K.n
    if K.field != small:
        raise ValueError("K must be a matrix set over the smaller field")
    if not isprime(p):
        return _verdict("prime-degree", Verdict.INAPPLICABLE, reason=f"matrix size {p} is not prime")
    if not K.is_division or K.is_scalar_only or not K.contains_scalars:
        return _verdict(
            "prime-degree", Verdict.INAPPLICABLE, reason="K must be a division ring properly containing the scalars"
        )
    mats = _members(K)
    A = next(M for M in mats if not M.is_scalar)
    m = min_poly(A)
    if m.degree != p:
        raise _violation("prime-degree", f"minimal polynomial {m} of a non-scalar element has degree {m.degree}")
    embed = field_embedding(small, large)
    lifted = [_lift(M, large, embed) for M in mats]
    try:
        conjugators = list(gl_enumerate(p, small, bound))
    except BoundExceeded as exc:
        return _verdict("prime-degree", Verdict.UNDECIDED, reason=str(exc))
    for u in conjugators:
        lu = _lift(u, large, embed)
        lu_inv = mat_inverse(lu)
        assert lu_inv is not None
        for i in range(p):
            dim = row_span_dim(((lu @ B @ lu_inv).row(i) for B in lifted), p, large)
            if dim < p:
                raise _violation("prime-degree", f"conjugate by {u.to_list()} has row {i + 1} spanning {dim} < {p}")
    certificate = {
        "min_poly": m.to_list(),
        "min_poly_degree": m.degree,
        "conjugates": len(conjugators),
        "field": small.descriptor,
        "extension": large.descriptor,
    }
    try:
        v, dim, _ = row_orbit_failure(large, p, lifted, bound)
        certificate["ambient_conjugates_hold"] = v is None
        if v is not None:
            certificate["ambient_failure"] = {"conjugator": complete_to_basis(v, large, p).to_list(), "row": 1, "span_dim": dim}
    except BoundExceeded as exc:
        certificate["ambient_conjugates_hold"] = None
        certificate["ambient_note"] = str(exc)
    return _verdict("prime-degree", Verdict.HOLDS, certificate=certificate)


# Structural predicates


def _is_chain(members: Sequence[frozenset]) -> bool:
    return all(a <= b for a, b in zip(members, members[1:]))


def _opposite(R: FiniteRing) -> FiniteRing:
    if "opposite" not in R.cache:
        R.cache["opposite"] = opposite_ring(R)
    return R.cache["opposite"]


def is_serial(R: FiniteRing) -> bool:
    """Every eR and every Re (e primitive) has a chain of submodules."""
    for S in (R, _opposite(R)):
        RR = realize_regular(S)
        for e in primitive_idempotents(S):
            eR = submodule_module(RR, frozenset(S.mul[e]))
            if not _is_chain(enumerate_submodules(eR)):
                return False
    return True


def homogeneous_socle(R: FiniteRing) -> bool:
    """Minimal right ideals pairwise isomorphic."""
    RR = realize_regular(R)
    mins = minimal_submodules(RR)
    first = submodule_module(RR, mins[0])
    return all(cyclic_isomorphic(RR.annihilators[min(C - {R.zero})], first) for C in mins)


def j_squared_zero(R: FiniteRing) -> bool:
    J = jacobson_radical(R)
    return product_set(R, J, J) == frozenset({R.zero})


def socle_is_singular(R: FiniteRing) -> bool:
    return regular_socle(R) <= singular_submodule(realize_regular(R))


def socle_is_projective(R: FiniteRing) -> bool:
    """Every minimal right ideal is a projective simple."""
    RR = realize_regular(R)
    projective = [s.module for s in simples_up_to_iso(R) if s.projective]
    return all(
        any(cyclic_isomorphic(RR.annihilators[min(C - {R.zero})], P) for P in projective)
        for C in minimal_submodules(RR)
    )


def double_annihilator(R: FiniteRing) -> bool:
    """r.ann(l.ann(I)) = I for every right ideal I."""
    Z = R.mul_array == R.zero
    for I in right_ideals(R):
        left = Z[:, sorted(I)].all(axis=1)
        right = Z[left, :].all(axis=0)
        if frozenset(np.flatnonzero(right).tolist()) != I:
            return False
    return True


def is_gv(R: FiniteRing, hom_bound: int = MAX_HOM_CANDIDATES) -> bool:
    """Every simple module injective or projective."""
    return all(s.projective or is_injective(s.module, hom_bound).injective for s in simples_up_to_iso(R))


def _attempt(name: str, fn: Callable[[], _T], notes: List[str]) -> Optional[_T]:
    try:
        return fn()
    except BoundExceeded as exc:
        notes.append(f"{name}: {exc}")
        log.warning("Predicate skipped", predicate=name, reason=str(exc))
        return None


def structural_predicates(R: FiniteRing, hom_bound: int = MAX_HOM_CANDIDATES) -> StructuralPredicates:
    notes: List[str] = []
    J = jacobson_radical(R)
    gv = _attempt("GV", lambda: is_gv(R, hom_bound), notes)
    if gv is not None:
        notes.append("SI equals GV for finite rings, which are semilocal")

    def soc_j_z() -> bool:
        soc = regular_socle(R)
        return soc == J and soc == singular_submodule(realize_regular(R))

    double = None
    if R.size <= FULL_AXIOM_CHECK_SIZE:
        double = _attempt("double annihilator", lambda: double_annihilator(R), notes)
    flag = _attempt("radical ideals", lambda: ideals_within_radical(R), notes)
    return StructuralPredicates(
        commutative=is_commutative(R),
        local=is_local_ring(R),
        semisimple=len(J) == 1,
        serial=_attempt("serial", lambda: is_serial(R), notes),
        gv=gv,
        si=gv,
        qf=_attempt("QF", lambda: is_injective(realize_regular(R), hom_bound).injective, notes),
        homogeneous_socle=_attempt("homogeneous socle", lambda: homogeneous_socle(R), notes),
        soc_eq_j_eq_z=_attempt("Soc=J=Z", soc_j_z, notes),
        j_squared_zero=j_squared_zero(R),
        radical_ideal_flag=None if flag is None else flag.flag,
        double_annihilator=double,
        notes=notes,
    )


# Middle class


@dataclass
class _Decision:
    verdict: MiddleClassVerdict
    evidence: Optional[EvidenceKind]
    summary: str
    verdicts: List[CriterionVerdict] = field(default_factory=list)
    bound_hits: List[str] = field(default_factory=list)


def _decide(R: FiniteRing, bounds: Bounds) -> _Decision:
    """Criteria only; the oracle comparison happens in the caller."""
    certified = EvidenceKind.THEOREM_CERTIFIED
    verdicts: List[CriterionVerdict] = []
    hits: List[str] = []
    dec = decompose_ring(R)
    T = dec.rest
    if T is None:
        return _Decision(MiddleClassVerdict.NO, certified, "no middle class (semisimple ring)")

    if is_commutative(R):
        local = is_local_ring(T)
        length = composition_length(realize_regular(T)) if local else None
        holds = local and length == 2
        verdict = MiddleClassVerdict.NO if holds else MiddleClassVerdict.HAS
        verdicts.append(
            _verdict(
                "commutative",
                Verdict.HOLDS if holds else Verdict.FAILS,
                predicts=verdict.value,
                certificate={"rest_size": T.size, "local": local, "composition_length": length},
            )
        )
        prefix = "no middle class" if holds else "has middle class"
        detail = f"commutative local, composition length {length}" if local else "commutative, non-semisimple part not local"
        return _Decision(verdict, certified, f"{prefix} ({detail})", verdicts)

    if R.layout is not None:
        layout = R.layout
        span = row_span_criterion(layout.field, layout.n, layout.dprime, ALL_CONJUGATES, bounds.max_gl_candidates)
        verdicts.append(span)
        if span.verdict is Verdict.HOLDS:
            return _Decision(MiddleClassVerdict.NO, certified, "no middle class (rows of every conjugate of D' span D^n)", verdicts)
        if span.verdict is Verdict.FAILS:
            return _Decision(MiddleClassVerdict.HAS, certified, "has middle class (a conjugate of D' has a deficient row span)", verdicts)
        if span.verdict is Verdict.UNDECIDED and span.reason:
            hits.append(span.reason)

    if isinstance(R.spec, rs.Prod):
        factors = [build_ring(f, bounds.max_ring_size) for f in R.spec.factors]
        rest = [f for f in factors if not is_semisimple_ring(f)]
        if len(rest) == 1:
            inner = _decide(rest[0], bounds)
            decided = inner.verdict is not MiddleClassVerdict.UNDECIDED
            verdicts.append(
                _verdict(
                    "product-factor",
                    Verdict.HOLDS if decided else Verdict.UNDECIDED,
                    predicts=inner.verdict.value,
                    certificate={"factor": rest[0].recipe, "factor_size": rest[0].size},
                    reason=None if decided else "non-semisimple factor undecided",
                )
            )
            verdicts.extend(inner.verdicts)
            hits.extend(inner.bound_hits)
            if decided:
                summary = f"{inner.summary} via the non-semisimple factor {rest[0].recipe}"
                return _Decision(inner.verdict, inner.evidence, summary, verdicts, hits)

    if isinstance(R.spec, rs.MatRing) and R.spec.k > 1:
        base = build_ring(R.spec.base, bounds.max_ring_size)
        inner = _decide(base, bounds)
        verdicts.append(
            _verdict(
                "morita",
                Verdict.HOLDS if inner.verdict is not MiddleClassVerdict.UNDECIDED else Verdict.UNDECIDED,
                predicts=inner.verdict.value,
                certificate={"base": base.recipe, "base_size": base.size},
                reason=None if inner.verdict is not MiddleClassVerdict.UNDECIDED else "base ring undecided",
            )
        )
        verdicts.extend(inner.verdicts)
        hits.extend(inner.bound_hits)
        if inner.verdict is not MiddleClassVerdict.UNDECIDED:
            summary = f"{inner.summary} via Morita equivalence with {base.recipe}"
            return _Decision(inner.verdict, inner.evidence, summary, verdicts, hits)

    serial = _attempt("serial", lambda: is_serial(T), hits)
    j2 = j_squared_zero(T)
    homog = _attempt("homogeneous socle", lambda: homogeneous_socle(T), hits)
    if serial is not None and homog is not None:
        holds = serial and j2 and homog
        verdicts.append(
            _verdict(
                "serial-j2",
                Verdict.HOLDS if holds else Verdict.FAILS,
                predicts=MiddleClassVerdict.NO.value if holds else None,
                certificate={"serial": serial, "j_squared_zero": j2, "homogeneous_socle": homog},
            )
        )
        if holds:
            return _Decision(MiddleClassVerdict.NO, certified, "no middle class (serial, J^2=0, homogeneous socle)", verdicts, hits)

    local = is_local_ring(T)
    flag = _attempt("radical ideals", lambda: ideals_within_radical(T), hits)
    if flag is not None and local and not flag.flag:
        verdicts.append(
            _verdict(
                "local-radical-ideals",
                Verdict.HOLDS,
                predicts=MiddleClassVerdict.NO.value,
                certificate={"rest_size": T.size, "radical_ideals": len(flag.ideals)},
            )
        )
        return _Decision(MiddleClassVerdict.NO, certified, "no middle class (local, no ideal strictly inside the radical)", verdicts, hits)
    if flag is not None and flag.flag:
        assert flag.witness is not None
        verdicts.append(
            _verdict(
                "radical-ideal",
                Verdict.FAILS,
                predicts=MiddleClassVerdict.HAS.value,
                certificate={"rest_size": T.size, "ideal": sorted(flag.witness)},
            )
        )
        return _Decision(
            MiddleClassVerdict.HAS, EvidenceKind.CITED_THEOREM_ONLY, "has middle class (ideal strictly inside the radical)", verdicts, hits
        )
    return _Decision(MiddleClassVerdict.UNDECIDED, None, "undecided (no criterion applies)", verdicts, hits)


def _decomposition_model(dec: RingDecomposition) -> DecompositionModel:
    return DecompositionModel(
        factor_sizes=[f.size for f in dec.factors],
        semisimple_part=None if dec.semisimple is None else dec.semisimple.size,
        rest=None if dec.rest is None else dec.rest.size,
        isomorphism_verified=dec.isomorphism_verified,
    )


def classify_ring_no_middle_class(
    R: FiniteRing,
    bounds: Optional[Bounds] = None,
    seed: int = SEED,
    with_predicates: bool = True,
    search: bool = True,
) -> ClassificationReport:
    """Middle-class verdict by the criteria, compared with a bounded witness search."""
    bounds = bounds or Bounds()
    decision = _decide(R, bounds)
    verdict, evidence, summary = decision.verdict, decision.evidence, decision.summary
    hits = list(decision.bound_hits)
    predicates = structural_predicates(R, bounds.max_hom_candidates) if with_predicates else None

    result: Optional[WitnessSearch] = None
    if search and R.size <= bounds.witness_module_bound:
        try:
            result = middle_witness_search(R, bounds.max_module_size, bounds.max_hom_candidates)
        except BoundExceeded as exc:
            hits.append(f"witness search: {exc}")
    agreement = None
    if result is not None:
        if result.hit_bound:
            hits.append(f"witness search: {result.hit_bound}")
        found = result.witness is not None
        if found and verdict is MiddleClassVerdict.NO:
            raise ConsistencyError(f"{R.recipe}: criteria give no middle class but {result.witness.module.label} is Middle")
        if found:
            evidence = EvidenceKind.WITNESS_REFUTED
            if verdict is MiddleClassVerdict.UNDECIDED:
                verdict = MiddleClassVerdict.HAS
                summary = f"has middle class (Middle witness of size {result.witness.module.size})"
        elif verdict is MiddleClassVerdict.UNDECIDED:
            evidence = EvidenceKind.BOUNDED_CONSISTENCY_ONLY
            summary = "undecided (no criterion applies; no witness within bounds)"
        agreement = True
    elif verdict is MiddleClassVerdict.UNDECIDED:
        evidence = EvidenceKind.BOUNDED_CONSISTENCY_ONLY
    log.info("Middle class classified", recipe=R.recipe, verdict=verdict.value, evidence=None if evidence is None else evidence.value)
    return ClassificationReport(
        verb=Verb.CLASSIFY,
        recipe=R.recipe,
        ring_size=R.size,
        seed=seed,
        bounds=bounds,
        summary=summary,
        predicates=predicates,
        verdicts=decision.verdicts,
        middle_class=verdict,
        evidence_kind=evidence,
        decomposition=_decomposition_model(decompose_ring(R)),
        witness_search=None if result is None else result.to_model(),
        agreement=agreement,
        bound_hits=hits,
    )


# Simple middle class


def _simple_dichotomy(R: FiniteRing, hom_bound: int) -> CriterionVerdict:
    """R = S x T with T zero, SI with homogeneous socle, or with one noninjective simple and singular socle."""
    T = decompose_ring(R).rest
    if T is None:
        return _verdict("simple-dichotomy", Verdict.HOLDS, predicts=SimpleMiddleClassVerdict.NO.value, certificate={"rest_size": None})
    classes = simples_up_to_iso(T)
    injective = [classify_module(s.module, hom_bound).injective for s in classes]
    gv = all(s.projective or inj for s, inj in zip(classes, injective))
    homog = homogeneous_socle(T)
    singular = socle_is_singular(T)
    noninjective = injective.count(False)
    case = 1 if gv and homog else 2 if noninjective == 1 and singular else None
    return _verdict(
        "simple-dichotomy",
        Verdict.HOLDS if case else Verdict.FAILS,
        predicts=(SimpleMiddleClassVerdict.NO if case else SimpleMiddleClassVerdict.HAS).value,
        certificate={
            "rest_size": T.size,
            "si": gv,
            "homogeneous_socle": homog,
            "singular_socle": singular,
            "noninjective_simples": noninjective,
            "case": case,
        },
    )


def classify_simple_middle_class(
    R: FiniteRing, bounds: Optional[Bounds] = None, seed: int = SEED
) -> ClassificationReport:
    """Complete oracle decision, checked against the Artinian dichotomy."""
    bounds = bounds or Bounds()
    hom_bound = bounds.max_hom_candidates
    oracle = has_no_simple_middle_class(R, hom_bound)
    verdict = SimpleMiddleClassVerdict.NO if oracle.holds else SimpleMiddleClassVerdict.HAS
    simples = [
        SimpleClassModel(
            label=s.module.label,
            size=s.module.size,
            projective=s.projective,
            injective=p.injective,
            classification=p.classification,
        )
        for s, p in oracle.profiles
    ]
    verdicts = [_simple_dichotomy(R, hom_bound)]
    if (verdicts[0].verdict is Verdict.HOLDS) != oracle.holds:
        raise _violation("simple-dichotomy", f"dichotomy {verdicts[0].verdict.value} but oracle says {verdict.value}")
    verdicts.append(_destitute_check(R, oracle))
    if is_commutative(R):
        verdicts.append(_commutative_simple_check(R, oracle.holds))
    destitute = all(p.poor for _, p in oracle.profiles)

    if oracle.holds:
        case = verdicts[0].certificate.get("case")
        if decompose_ring(R).rest is None:
            summary = "no simple middle class (semisimple ring)"
        elif case == 1:
            summary = "no simple middle class (SI with homogeneous socle)"
        else:
            summary = "no simple middle class (one noninjective simple, singular socle)"
    else:
        witness = oracle.witness
        assert witness is not None
        summary = f"has simple middle class ({witness[0].module.label} is Middle)"
    log.info("Simple middle class classified", recipe=R.recipe, verdict=verdict.value, destitute=destitute)
    return ClassificationReport(
        verb=Verb.SIMPLE_MC,
        recipe=R.recipe,
        ring_size=R.size,
        seed=seed,
        bounds=bounds,
        summary=summary,
        verdicts=verdicts,
        evidence_kind=EvidenceKind.ORACLE_COMPLETE,
        simple_middle_class=verdict,
        simple_destitute=destitute,
        simples=simples,
    )


def _destitute_check(R: FiniteRing, oracle) -> CriterionVerdict:
    destitute = all(p.poor for _, p in oracle.profiles)
    expected = is_semisimple_ring(R) or len(oracle.profiles) == 1
    if destitute != expected:
        raise _violation("simple-destitute", f"all simples poor is {destitute} with {len(oracle.profiles)} simple classes")
    return _verdict(
        "simple-destitute",
        Verdict.HOLDS if destitute else Verdict.FAILS,
        predicts=SimpleMiddleClassVerdict.NO.value if destitute else None,
        certificate={"simple_classes": len(oracle.profiles), "semisimple": is_semisimple_ring(R)},
    )


def _commutative_simple_check(R: FiniteRing, holds: bool) -> CriterionVerdict:
    T = decompose_ring(R).rest
    local = T is None or is_local_ring(T)
    if local != holds:
        raise _violation("commutative-simple", f"non-semisimple part local is {local}, oracle {holds}")
    return _verdict(
        "commutative-simple",
        Verdict.HOLDS if local else Verdict.FAILS,
        predicts=(SimpleMiddleClassVerdict.NO if local else SimpleMiddleClassVerdict.HAS).value,
        certificate={"rest_size": None if T is None else T.size, "rest_local": local},
    )


def theorem_shape_validators(R: FiniteRing, hom_bound: int = MAX_HOM_CANDIDATES) -> List[CriterionVerdict]:
    """Necessary conditions on rings with no simple middle class, checked against the oracle."""
    oracle = has_no_simple_middle_class(R, hom_bound)
    profiles = oracle.profiles
    semisimple = is_semisimple_ring(R)
    dec = decompose_ring(R)
    gv = all(s.projective or p.injective for s, p in profiles)
    out: List[CriterionVerdict] = []

    if semisimple:
        out.append(_verdict("gv-projective-poor", Verdict.INAPPLICABLE, reason="semisimple rings are V-rings"))
    else:
        lhs = gv and oracle.holds
        rhs = any(s.projective and p.poor for s, p in profiles)
        if lhs != rhs:
            raise _violation("gv-projective-poor", f"GV without simple middle class is {lhs}, simple projective poor is {rhs}")
        out.append(_verdict("gv-projective-poor", Verdict.HOLDS, certificate={"gv": gv, "no_simple_middle_class": oracle.holds}))

    if oracle.holds:
        ok = gv or all(p.injective for s, p in profiles if s.projective)
        if not ok:
            raise _violation("gv-or-projective-injective", "a simple projective module is not injective and R is not GV")
        out.append(_verdict("gv-or-projective-injective", Verdict.HOLDS, certificate={"gv": gv}))
    else:
        out.append(_verdict("gv-or-projective-injective", Verdict.INAPPLICABLE, reason="R has a simple middle class"))

    nonsingular = len(singular_submodule(realize_regular(R))) == 1
    if gv and not semisimple and nonsingular:
        assert dec.rest is not None
        T = dec.rest
        soc = regular_socle(T)
        poor = classify_module(submodule_module(realize_regular(T), soc, label="Soc(T_T)"), hom_bound).poor
        homog = homogeneous_socle(T)
        shape = len(soc) > 1 and poor and homog
        if shape != oracle.holds:
            raise _violation("gv-socle", f"socle of T nonzero poor homogeneous is {shape}, oracle {oracle.holds}")
        out.append(_verdict("gv-socle", Verdict.HOLDS, certificate={"socle_size": len(soc), "poor": poor, "homogeneous": homog}))
    else:
        out.append(_verdict("gv-socle", Verdict.INAPPLICABLE, reason="needs a nonsingular GV ring that is not semisimple"))

    if oracle.holds and socle_is_singular(R):
        noninjective = sum(1 for _, p in profiles if not p.injective)
        homog = homogeneous_socle(R)
        if len(dec.factors) != 1 or noninjective != 1 or not homog:
            raise _violation(
                "singular-socle",
                f"factors={len(dec.factors)}, noninjective simples={noninjective}, homogeneous={homog}",
            )
        out.append(_verdict("singular-socle", Verdict.HOLDS, certificate={"noninjective_simples": 1, "homogeneous": True}))
    else:
        out.append(_verdict("singular-socle", Verdict.INAPPLICABLE, reason="needs a singular socle and no simple middle class"))

    if oracle.holds and not semisimple:
        assert dec.rest is not None
        T = dec.rest
        soc = regular_socle(T)
        poor = classify_module(submodule_module(realize_regular(T), soc, label="Soc(T_T)"), hom_bound).poor
        homog = homogeneous_socle(T)
        projective = socle_is_projective(R)
        singular = socle_is_singular(R)
        if not (poor and homog and (projective or singular)):
            raise _violation(
                "artinian-socle", f"poor={poor}, homogeneous={homog}, projective={projective}, singular={singular}"
            )
        out.append(
            _verdict(
                "artinian-socle",
                Verdict.HOLDS,
                certificate={"poor": poor, "homogeneous": homog, "projective": projective, "singular": singular},
            )
        )
    else:
        out.append(_verdict("artinian-socle", Verdict.INAPPLICABLE, reason="needs a non-semisimple ring with no simple middle class"))

    try:
        premise = is_serial(R) and j_squared_zero(R) and homogeneous_socle(R)
    except BoundExceeded as exc:
        out.append(_verdict("serial-simple", Verdict.UNDECIDED, reason=str(exc)))
    else:
        if premise and not oracle.holds:
            raise _violation("serial-simple", "serial ring with J^2=0 and homogeneous socle has a simple middle class")
        out.append(
            _verdict("serial-simple", Verdict.HOLDS if premise else Verdict.INAPPLICABLE, reason=None if premise else "not serial with J^2=0 and homogeneous socle")
        )

    out.append(_destitute_check(R, oracle))
    if is_commutative(R):
        out.append(_commutative_simple_check(R, oracle.holds))
    log.info("Theorem shapes validated", recipe=R.recipe, checks=len(out))
    return out
