"""Finite rings built from recipes, and ring-level structure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from . import ringspec as rs
from .config import (
    FULL_AXIOM_CHECK_SIZE,
    MAX_RING_SIZE,
    MAX_SUBMODULES,
    RADICAL_CROSS_CHECK_SIZE,
    SAMPLED_AXIOM_TRIPLES,
    SEED,
)
from .errors import (
    BoundExceeded,
    ConsistencyError,
    RingConstructionError,
    SpecSemanticError,
)
from .exactalg import (
    FiniteField,
    Mat,
    MatrixAlgebra,
    Poly,
    check_power,
    companion,
    field_make,
    scalar_algebra,
    subalgebra_closure,
)
from .lattice import closed_span, enumerate_lattice, maximal_members

log = structlog.get_logger()

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class TriLayout:
    """Carrier layout of tri(D; n; D'): index = (d * |D^n| + x) * |D'| + A."""

    field: FiniteField
    n: int
    dprime: MatrixAlgebra
    vectors: Tuple[Tuple[int, ...], ...]

    @property
    def matrices(self) -> Tuple[Mat, ...]:
        assert self.dprime.elements is not None
        return self.dprime.elements

    @cached_property
    def vector_index(self) -> Dict[Tuple[int, ...], int]:
        return {v: i for i, v in enumerate(self.vectors)}

    @cached_property
    def matrix_index(self) -> Dict[Mat, int]:
        return {m: i for i, m in enumerate(self.matrices)}

    def encode(self, d: int, x: int, a: int) -> int:
        return (d * len(self.vectors) + x) * len(self.matrices) + a

    def decode(self, r: int) -> Tuple[int, int, int]:
        rest, a = divmod(r, len(self.matrices))
        d, x = divmod(rest, len(self.vectors))
        return d, x, a

    def simple_corner(self) -> frozenset:
        """(D, 0, 0)."""
        return frozenset(self.encode(d, 0, 0) for d in self.field.elements())

    def lower_block(self) -> frozenset:
        """(0, D^n, D')."""
        return frozenset(
            self.encode(0, x, a) for x in range(len(self.vectors)) for a in range(len(self.matrices))
        )

    def column_block(self) -> frozenset:
        """(0, D^n, 0)."""
        return frozenset(self.encode(0, x, 0) for x in range(len(self.vectors)))


class FiniteRing:
    """An enumerated finite unital ring with elements ``0..size-1``."""

    def __init__(
        self,
        add: Sequence[Sequence[int]],
        mul: Sequence[Sequence[int]],
        zero: int,
        one: int,
        recipe: str,
        spec: Optional[rs.RingSpec] = None,
        layout: Optional[TriLayout] = None,
    ):
        self.add: Table = tuple(tuple(row) for row in add)
        self.mul: Table = tuple(tuple(row) for row in mul)
        self.size = len(self.add)
        self.zero = zero
        self.one = one
        self.recipe = recipe
        self.spec = spec
        self.layout = layout
        self.cache: Dict[str, Any] = {}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"FiniteRing({self.recipe}, size={self.size})"

    @cached_property
    def neg(self) -> Tuple[int, ...]:
        return tuple(row.index(self.zero) for row in self.add)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    @cached_property
    def add_array(self) -> np.ndarray:
        return np.array(self.add, dtype=np.int64)

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64)

    @cached_property
    def left_maps(self) -> Table:
        """x -> r x for each r."""
        return self.mul

    @cached_property
    def right_maps(self) -> Table:
        """x -> x r for each r."""
        return tuple(zip(*self.mul))

    @cached_property
    def units(self) -> frozenset:
        E = self.mul_array == self.one
        return frozenset(np.flatnonzero((E & E.T).any(axis=1)).tolist())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "add": [list(r) for r in self.add],
            "mul": [list(r) for r in self.mul],
            "zero": self.zero,
            "one": self.one,
            "recipe": self.recipe,
        }


# Construction


def _check_size(what: str, size: int, bound: int) -> None:
    if size > bound:
        raise BoundExceeded(f"ring size of {what}", bound, size)


def _zmod(spec: rs.ZMod) -> FiniteRing:
    n = spec.n
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return FiniteRing(add, mul, 0, 1 % n, str(spec), spec)


def _gf(spec: rs.GF) -> FiniteRing:
    F = field_make(spec.p, spec.k)
    q = F.order
    add = [[F.add(a, b) for b in range(q)] for a in range(q)]
    mul = [[F.mul(a, b) for b in range(q)] for a in range(q)]
    return FiniteRing(add, mul, 0, 1, str(spec), spec)


def product_ring(rings: Sequence[FiniteRing], recipe: str, spec: Optional[rs.RingSpec] = None) -> FiniteRing:
    """Direct product; the first factor is the most significant digit."""
    sizes = [r.size for r in rings]
    strides = [1] * len(rings)
    for i in range(len(rings) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    tuples = list(itertools.product(*[range(s) for s in sizes]))

    def encode(parts: Iterable[int]) -> int:
        return sum(p * s for p, s in zip(parts, strides))

    add = [
        [encode(r.add[a][b] for r, a, b in zip(rings, s, t)) for t in tuples] for s in tuples
    ]
    mul = [
        [encode(r.mul[a][b] for r, a, b in zip(rings, s, t)) for t in tuples] for s in tuples
    ]
    zero = encode(r.zero for r in rings)
    one = encode(r.one for r in rings)
    return FiniteRing(add, mul, zero, one, recipe, spec)


def _mat(spec: rs.MatRing, base: FiniteRing) -> FiniteRing:
    k = spec.k
    elems = list(itertools.product(range(base.size), repeat=k * k))
    index = {e: i for i, e in enumerate(elems)}

    def product(a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
        out = []
        for i in range(k):
            for j in range(k):
                acc = base.zero
                for t in range(k):
                    acc = base.add[acc][base.mul[a[i * k + t]][b[t * k + j]]]
                out.append(acc)
        return index[tuple(out)]

    add = [[index[tuple(base.add[x][y] for x, y in zip(a, b))] for b in elems] for a in elems]
    mul = [[product(a, b) for b in elems] for a in elems]
    zero = index[tuple(base.zero for _ in range(k * k))]
    one = index[tuple(base.one if i == j else base.zero for i in range(k) for j in range(k))]
    return FiniteRing(add, mul, zero, one, str(spec), spec)


def dprime_algebra(spec: rs.Tri) -> MatrixAlgebra:
    """The matrix set D' named by a tri recipe."""
    F = field_make(spec.field.p, spec.field.k)
    src = spec.dsrc
    if isinstance(src, rs.Gen):
        gens = [Mat.from_lists(F, m) for m in src.mats]
        return subalgebra_closure(gens, F, n=spec.n, over_prime=True)
    if isinstance(src, rs.Companion):
        P = Poly(F, src.coeffs)
        if not P.is_monic or P.degree != spec.n:
            raise SpecSemanticError(f"companion polynomial {list(src.coeffs)} is not monic of degree {spec.n}")
        return subalgebra_closure([companion(P)], F, n=spec.n, over_prime=True)
    # scalars, and full with n = 1, are the scalar matrices
    return scalar_algebra(spec.n, F)


def _tri(spec: rs.Tri, bound: int) -> FiniteRing:
    F = field_make(spec.field.p, spec.field.k)
    n = spec.n
    # D and D^n alone already give q^(n+1) elements
    check_power(f"ring size of {spec}", F.order, n + 1, bound)
    algebra = dprime_algebra(spec)
    q = F.order
    vectors = tuple(itertools.product(range(q), repeat=n))
    layout = TriLayout(F, n, algebra, vectors)
    mats = layout.matrices
    _check_size(str(spec), q * len(vectors) * len(mats), bound)
    vidx, midx = layout.vector_index, layout.matrix_index

    vadd = [[vidx[tuple(F.add(a, b) for a, b in zip(x, y))] for y in vectors] for x in vectors]
    vscale = [[vidx[tuple(F.mul(a, d) for a in x)] for d in range(q)] for x in vectors]
    madd = [[midx[A + B] for B in mats] for A in mats]
    try:
        mmul = [[midx[A @ B] for B in mats] for A in mats]
    except KeyError as exc:
        raise RingConstructionError(f"D' of {spec} is not closed under products") from exc
    mact = [[vidx[A.apply(x)] for x in vectors] for A in mats]

    carrier = [(d, x, a) for d in range(q) for x in range(len(vectors)) for a in range(len(mats))]
    enc = layout.encode
    add = [
        [enc(F.add(d, d1), vadd[x][x1], madd[a][a1]) for (d1, x1, a1) in carrier]
        for (d, x, a) in carrier
    ]
    mul = [
        [enc(F.mul(d, d1), vadd[vscale[x][d1]][mact[a][x1]], mmul[a][a1]) for (d1, x1, a1) in carrier]
        for (d, x, a) in carrier
    ]
    identity_index = next(i for i, A in enumerate(mats) if A.is_scalar and A.rows[0][0] == 1)
    return FiniteRing(add, mul, enc(0, 0, 0), enc(1, 0, identity_index), str(spec), spec, layout)


def ring_hom_is_valid(A: FiniteRing, B: FiniteRing, phi: Sequence[int]) -> bool:
    if len(phi) != A.size or phi[A.one] != B.one:
        return False
    return all(
        phi[A.add[x][y]] == B.add[phi[x]][phi[y]] and phi[A.mul[x][y]] == B.mul[phi[x]][phi[y]]
        for x in range(A.size)
        for y in range(A.size)
    )


def canonical_hom(A: FiniteRing, B: FiniteRing, override: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """The unital ring map A -> B that makes B an (B, A)-bimodule."""
    if override is not None:
        phi = tuple(int(v) for v in override)
        if any(not 0 <= v < B.size for v in phi) or not ring_hom_is_valid(A, B, phi):
            raise SpecSemanticError("bimodule side file does not give a unital ring homomorphism")
        return phi
    if A.recipe == B.recipe:
        return tuple(range(A.size))
    multiples = [A.zero]
    while len(multiples) < A.size:
        nxt = A.add[multiples[-1]][A.one]
        if nxt == A.zero:
            break
        multiples.append(nxt)
    if len(multiples) == A.size:
        phi_list = [B.zero] * A.size
        image = B.zero
        for a in multiples:
            phi_list[a] = image
            image = B.add[image][B.one]
        if image == B.zero and ring_hom_is_valid(A, B, phi_list):
            return tuple(phi_list)
    raise SpecSemanticError(f"no canonical action of {A.recipe} on {B.recipe}; pass a bimodule side file")


def _trimat(spec: rs.TriMat, bound: int, hom: Optional[Sequence[int]]) -> FiniteRing:
    A = build_ring(spec.a, bound)
    B = build_ring(spec.b, bound)
    _check_size(str(spec), A.size * B.size * B.size, bound)
    phi = canonical_hom(A, B, hom)
    nb = B.size

    def enc(a: int, m: int, b: int) -> int:
        return (a * nb + m) * nb + b

    carrier = [(a, m, b) for a in range(A.size) for m in range(nb) for b in range(nb)]
    add = [[enc(A.add[a][a1], B.add[m][m1], B.add[b][b1]) for (a1, m1, b1) in carrier] for (a, m, b) in carrier]
    mul = [
        [
            enc(A.mul[a][a1], B.add[B.mul[m][phi[a1]]][B.mul[b][m1]], B.mul[b][b1])
            for (a1, m1, b1) in carrier
        ]
        for (a, m, b) in carrier
    ]
    return FiniteRing(add, mul, enc(A.zero, B.zero, B.zero), enc(A.one, B.zero, B.one), str(spec), spec)


def _idealize(spec: rs.Idealize, bound: int) -> FiniteRing:
    F = field_make(spec.field.p, spec.field.k)
    q = F.order
    check_power(f"ring size of {spec}", q, spec.dim + 1, bound)
    vectors = list(itertools.product(range(q), repeat=spec.dim))
    vidx = {v: i for i, v in enumerate(vectors)}
    carrier = [(a, v) for a in range(q) for v in vectors]

    def enc(a: int, v: Tuple[int, ...]) -> int:
        return a * len(vectors) + vidx[v]

    add = [
        [enc(F.add(a, b), tuple(F.add(x, y) for x, y in zip(v, w))) for (b, w) in carrier]
        for (a, v) in carrier
    ]
    mul = [
        [
            enc(F.mul(a, b), tuple(F.add(F.mul(a, y), F.mul(x, b)) for x, y in zip(v, w)))
            for (b, w) in carrier
        ]
        for (a, v) in carrier
    ]
    zero_v = tuple(0 for _ in range(spec.dim))
    return FiniteRing(add, mul, enc(0, zero_v), enc(1, zero_v), str(spec), spec)


def build_ring(
    spec: rs.RingSpec,
    bound: int = MAX_RING_SIZE,
    bimodule_hom: Optional[Sequence[int]] = None,
) -> FiniteRing:
    """Realise a recipe as tables."""
    if isinstance(spec, rs.ZMod):
        _check_size(str(spec), spec.n, bound)
        ring = _zmod(spec)
    elif isinstance(spec, rs.GF):
        check_power(f"ring size of {spec}", spec.p, spec.k, bound)
        ring = _gf(spec)
    elif isinstance(spec, rs.Prod):
        factors = [build_ring(f, bound) for f in spec.factors]
        size = 1
        for f in factors:
            size *= f.size
        _check_size(str(spec), size, bound)
        ring = product_ring(factors, str(spec), spec)
    elif isinstance(spec, rs.MatRing):
        base = build_ring(spec.base, bound)
        check_power(f"ring size of {spec}", base.size, spec.k * spec.k, bound)
        ring = _mat(spec, base)
    elif isinstance(spec, rs.Tri):
        ring = _tri(spec, bound)
    elif isinstance(spec, rs.TriMat):
        ring = _trimat(spec, bound, bimodule_hom)
    elif isinstance(spec, rs.Idealize):
        ring = _idealize(spec, bound)
    else:
        raise RingConstructionError(f"unknown recipe {spec!r}")
    log.info("Ring built", recipe=ring.recipe, size=ring.size)
    return ring


# Verification


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    mode: str
    checked: int
    law: Optional[str] = None
    counterexample: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_ring_axioms(
    R: FiniteRing,
    mode: Optional[str] = None,
    seed: int = SEED,
    triples: int = SAMPLED_AXIOM_TRIPLES,
) -> AxiomCheck:
    """Check the ring laws on all triples (``full``) or on seeded random ones (``sampled``)."""
    N = R.size
    if mode is None:
        mode = "full" if N <= FULL_AXIOM_CHECK_SIZE else "sampled"
    if mode == "full":
        if N > FULL_AXIOM_CHECK_SIZE:
            raise BoundExceeded("full axiom check", FULL_AXIOM_CHECK_SIZE, N)
        x, y, z = (g.ravel() for g in np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij"))
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        x, y, z = (rng.integers(0, N, size=triples) for _ in range(3))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    A, M = R.add_array, R.mul_array
    laws = [
        ("additive associativity", A[A[x, y], z] == A[x, A[y, z]]),
        ("additive commutativity", A[x, y] == A[y, x]),
        ("additive identity", A[R.zero, x] == x),
        ("multiplicative associativity", M[M[x, y], z] == M[x, M[y, z]]),
        ("left distributivity", M[x, A[y, z]] == A[M[x, y], M[x, z]]),
        ("right distributivity", M[A[x, y], z] == A[M[x, z], M[y, z]]),
        ("multiplicative identity", (M[R.one, x] == x) & (M[x, R.one] == x)),
    ]
    for law, mask in laws:
        bad = np.flatnonzero(~mask)
        if bad.size:
            i = bad[0]
            example = (int(x[i]), int(y[i]), int(z[i]))
            log.warning("Ring axiom violated", recipe=R.recipe, law=law, triple=example)
            return AxiomCheck(False, mode, len(x), law, example)
    no_inverse = np.flatnonzero(~(A == R.zero).any(axis=1))
    if no_inverse.size:
        return AxiomCheck(False, mode, len(x), "additive inverses", (int(no_inverse[0]),))
    return AxiomCheck(True, mode, len(x))


# Ideals and radical


def right_ideals(R: FiniteRing, bound: int = MAX_SUBMODULES) -> List[frozenset]:
    """All right ideals, canonically ordered."""
    if "right_ideals" not in R.cache:
        atoms = {frozenset(R.mul[x]) for x in range(R.size)}
        R.cache["right_ideals"] = enumerate_lattice(R.add, atoms, R.zero, bound)
    return R.cache["right_ideals"]


def two_sided_ideal(R: FiniteRing, gens: Iterable[int]) -> frozenset:
    return closed_span(R.add, R.zero, gens, R.left_maps + R.right_maps)


def product_set(R: FiniteRing, a: Iterable[int], b: Iterable[int]) -> frozenset:
    """Additive span of all products xy."""
    b = list(b)
    return closed_span(R.add, R.zero, {R.mul[x][y] for x in a for y in b})


def nilpotency_index(R: FiniteRing, ideal: frozenset) -> int:
    """Least k with ideal^k = 0."""
    power, k = ideal, 1
    while power != frozenset({R.zero}):
        nxt = product_set(R, power, ideal)
        if nxt == power:
            raise ConsistencyError(f"ideal of size {len(ideal)} in {R.recipe} is not nilpotent")
        power, k = nxt, k + 1
    return k


def jacobson_radical(R: FiniteRing, cross_check: Optional[bool] = None) -> frozenset:
    """Elements x with 1 - xr a unit for every r, verified nilpotent."""
    if "radical" in R.cache:
        return R.cache["radical"]
    unit_mask = np.zeros(R.size, dtype=bool)
    unit_mask[sorted(R.units)] = True
    neg = np.array(R.neg)
    one_minus = R.add_array[R.one, neg]
    quasi_regular = unit_mask[one_minus[R.mul_array]].all(axis=1)
    radical = frozenset(np.flatnonzero(quasi_regular).tolist())
    index = nilpotency_index(R, radical)
    if cross_check is None:
        cross_check = R.size <= RADICAL_CROSS_CHECK_SIZE
    if cross_check:
        ideals = right_ideals(R)
        whole = frozenset(range(R.size))
        meet = whole
        for m in maximal_members(ideals, whole):
            meet &= m
        if meet != radical:
            raise ConsistencyError(
                f"radical of {R.recipe}: quasi-regular set has {len(radical)} elements, "
                f"intersection of maximal right ideals has {len(meet)}"
            )
    log.info("Radical computed", recipe=R.recipe, size=len(radical), nilpotency=index, cross_checked=cross_check)
    R.cache["radical"] = radical
    return radical


def is_semisimple_ring(R: FiniteRing) -> bool:
    return jacobson_radical(R) == frozenset({R.zero})


def is_commutative(R: FiniteRing) -> bool:
    M = R.mul_array
    return bool((M == M.T).all())


def is_local_ring(R: FiniteRing) -> bool:
    """Non-units closed under addition."""
    mask = np.ones(R.size, dtype=bool)
    mask[sorted(R.units)] = False
    idx = np.flatnonzero(mask)
    return bool(mask[R.add_array[np.ix_(idx, idx)]].all())


def center(R: FiniteRing) -> frozenset:
    M = R.mul_array
    return frozenset(np.flatnonzero((M == M.T).all(axis=1)).tolist())


def idempotents(R: FiniteRing) -> List[int]:
    return [x for x in range(R.size) if R.mul[x][x] == x]


def corner(R: FiniteRing, e: int) -> frozenset:
    """eRe."""
    return frozenset(R.mul[R.mul[e][r]][e] for r in range(R.size))


def corner_ring(R: FiniteRing, e: int, recipe: str) -> FiniteRing:
    """eRe with identity e."""
    elems = sorted(corner(R, e))
    index = {x: i for i, x in enumerate(elems)}
    add = [[index[R.add[a][b]] for b in elems] for a in elems]
    mul = [[index[R.mul[a][b]] for b in elems] for a in elems]
    return FiniteRing(add, mul, index[R.zero], index[e], recipe)


def primitive_idempotents(R: FiniteRing) -> Tuple[int, ...]:
    """A complete set of primitive orthogonal idempotents, by splitting corners."""
    if "primitive_idempotents" in R.cache:
        return R.cache["primitive_idempotents"]
    work, done = [R.one], []
    while work:
        e = work.pop(0)
        split = next(
            (f for f in sorted(corner(R, e)) if f not in (R.zero, e) and R.mul[f][f] == f),
            None,
        )
        if split is None:
            done.append(e)
        else:
            work[:0] = [split, R.sub(e, split)]
    result = tuple(sorted(done))
    R.cache["primitive_idempotents"] = result
    return result


def quotient_ring(R: FiniteRing, ideal: frozenset) -> FiniteRing:
    """R/I with cosets ordered by least representative."""
    rep = [min(R.add[x][i] for i in ideal) for x in range(R.size)]
    reps = sorted(set(rep))
    index = {r: i for i, r in enumerate(reps)}
    add = [[index[rep[R.add[a][b]]] for b in reps] for a in reps]
    mul = [[index[rep[R.mul[a][b]]] for b in reps] for a in reps]
    return FiniteRing(add, mul, index[rep[R.zero]], index[rep[R.one]], f"{R.recipe}/I{len(ideal)}")


def opposite_ring(R: FiniteRing) -> FiniteRing:
    return FiniteRing(R.add, tuple(zip(*R.mul)), R.zero, R.one, f"op({R.recipe})")


@dataclass(frozen=True)
class RingDecomposition:
    factors: Tuple[FiniteRing, ...]
    idempotents: Tuple[int, ...]
    semisimple: Optional[FiniteRing]
    rest: Optional[FiniteRing]
    isomorphism_verified: bool


def _combine(rings: List[FiniteRing]) -> Optional[FiniteRing]:
    if not rings:
        return None
    if len(rings) == 1:
        return rings[0]
    return product_ring(rings, "prod(" + ",".join(r.recipe for r in rings) + ")")


def decompose_ring(R: FiniteRing) -> RingDecomposition:
    """Indecomposable factors from primitive central idempotents, split as S x T."""
    if "decomposition" in R.cache:
        return R.cache["decomposition"]
    central = sorted(x for x in center(R) if x != R.zero and R.mul[x][x] == x)
    primitive = tuple(
        e for e in central if not any(f != e and R.mul[e][f] == f for f in central)
    )
    if len(primitive) == 1:
        factors: Tuple[FiniteRing, ...] = (R,)
        verified = True
    else:
        factors = tuple(corner_ring(R, e, f"{R.recipe}[e={e}]") for e in primitive)
        verified = _verify_split(R, primitive, factors)
        if not verified:
            raise ConsistencyError(f"factors of {R.recipe} do not multiply back to the ring")
    semisimple = [f for f in factors if is_semisimple_ring(f)]
    rest = [f for f in factors if not is_semisimple_ring(f)]
    result = RingDecomposition(factors, primitive, _combine(semisimple), _combine(rest), verified)
    log.info(
        "Ring decomposed",
        recipe=R.recipe,
        factors=[f.size for f in factors],
        semisimple=None if result.semisimple is None else result.semisimple.size,
        rest=None if result.rest is None else result.rest.size,
    )
    R.cache["decomposition"] = result
    return result


def _verify_split(R: FiniteRing, idems: Sequence[int], factors: Sequence[FiniteRing]) -> bool:
    """r -> (e_i r) is a ring isomorphism onto the product of the factors."""
    comps = []
    for e, f in zip(idems, factors):
        elems = sorted(corner(R, e))
        index = {x: i for i, x in enumerate(elems)}
        comps.append(np.array([index[R.mul[e][r]] for r in range(R.size)]))
    images = set(zip(*(c.tolist() for c in comps)))
    expected = 1
    for f in factors:
        expected *= f.size
    if len(images) != R.size or R.size != expected:
        return False
    for comp, f in zip(comps, factors):
        FA, FM = f.add_array, f.mul_array
        if not (comp[R.add_array] == FA[comp[:, None], comp[None, :]]).all():
            return False
        if not (comp[R.mul_array] == FM[comp[:, None], comp[None, :]]).all():
            return False
    return True


@dataclass(frozen=True)
class RadicalIdeals:
    ideals: Tuple[frozenset, ...]
    flag: bool
    witness: Optional[frozenset]


def ideals_within_radical(R: FiniteRing, bound: int = MAX_SUBMODULES) -> RadicalIdeals:
    """Two-sided ideals inside J(R); flag when 0 != I strictly inside J(R)."""
    J = jacobson_radical(R)
    atoms = {two_sided_ideal(R, [x]) for x in sorted(J) if x != R.zero}
    ideals = enumerate_lattice(R.add, atoms, R.zero, bound)
    proper = [I for I in ideals if 1 < len(I) < len(J)]
    witness = proper[0] if proper else None
    return RadicalIdeals(tuple(ideals), bool(proper), witness)
