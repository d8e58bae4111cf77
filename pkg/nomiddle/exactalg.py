"""Exact scalar, polynomial and matrix arithmetic over GF(p^k) and the rationals."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

import structlog
from sympy import Poly as SymPoly
from sympy import Rational, isprime, symbols

from .config import MAX_FIELD_SIZE, MAX_GL_CANDIDATES
from .errors import BoundExceeded, NoMiddleError

log = structlog.get_logger()

# Powers with more bits than this are reported without their exact value.
EXACT_POWER_BITS = 256


def exceeds_power(base: int, exponent: int, bound: int) -> bool:
    """Whether base**exponent > bound, without forming the power when it is huge."""
    if exponent <= 0 or base <= 1:
        return base ** max(exponent, 0) > bound
    if bound < 1 or exponent * math.log2(base) > math.log2(bound) + 1:
        return True
    return base**exponent > bound


def check_power(what: str, base: int, exponent: int, bound: int) -> int:
    """base**exponent, or BoundExceeded when that exceeds bound."""
    if exceeds_power(base, exponent, bound):
        exact = base <= 1 or exponent * math.log2(base) <= EXACT_POWER_BITS
        raise BoundExceeded(what, bound, base**exponent if exact else None)
    return base**exponent


class FieldDom:
    """Common interface of the scalar domains.

    Finite fields encode elements as integers ``0..q-1`` (base-p digits of the
    residue polynomial, low degree first); the rationals use sympy ``Rational``.
    """

    finite: bool = False
    zero: Any = 0
    one: Any = 1

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def canonical(self, value: Any) -> Any:
        raise NotImplementedError

    def elements(self) -> Sequence[Any]:
        raise NoMiddleError(f"{self!r} is not enumerable")

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))


class FiniteField(FieldDom):
    """GF(p^k) with full lookup tables."""

    finite = True

    def __init__(self, p: int, k: int, modulus: Optional[Tuple[int, ...]]):
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = modulus
        q = self.order

        self._digits = tuple(self._to_digits(x) for x in range(q))
        self._add = tuple(
            tuple(
                self._from_digits([(u + v) % p for u, v in zip(self._digits[a], self._digits[b])])
                for b in range(q)
            )
            for a in range(q)
        )
        self._neg = tuple(self._from_digits([(-u) % p for u in self._digits[a]]) for a in range(q))

        exp, logs = self._exp_log_tables()
        self._mul = tuple(
            tuple(
                0 if a == 0 or b == 0 else exp[(logs[a] + logs[b]) % (q - 1)]
                for b in range(q)
            )
            for a in range(q)
        )
        self._inv = tuple(
            0 if a == 0 else exp[(-logs[a]) % (q - 1)] for a in range(q)
        )
        for a in range(1, q):
            if self._mul[a][self._inv[a]] != 1:
                raise NoMiddleError(f"element {a} of GF({p}^{k}) has no inverse")

    def _to_digits(self, x: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def _from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _slow_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(da):
            if u:
                for j, v in enumerate(db):
                    prod[i + j] = (prod[i + j] + u * v) % p
        assert self.modulus is not None
        # reduce by the monic modulus from the top down
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for j in range(k + 1):
                    prod[deg - k + j] = (prod[deg - k + j] - c * self.modulus[j]) % p
        return self._from_digits(prod[:k])

    def _exp_log_tables(self) -> Tuple[List[int], List[int]]:
        q = self.order
        if q == 2:
            return [1], [0, 0]
        for g in range(2 if self.k > 1 else 1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                logs = [0] * q
                for i, v in enumerate(exp):
                    logs[v] = i
                return exp, logs
        raise NoMiddleError(f"GF({self.p}^{self.k}) has no primitive element; modulus reducible")

    # field interface

    @property
    def zero(self) -> int:  # type: ignore[override]
        return 0

    @property
    def one(self) -> int:  # type: ignore[override]
        return 1

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a]

    def canonical(self, value: Any) -> int:
        value = int(value)
        if self.k == 1:
            return value % self.p
        if not 0 <= value < self.order:
            raise NoMiddleError(f"{value} is not an element encoding of {self!r}")
        return value

    def elements(self) -> Sequence[int]:
        return range(self.order)

    def digits(self, x: int) -> Tuple[int, ...]:
        return self._digits[x]

    def from_digits(self, digits: Sequence[int]) -> int:
        return self._from_digits([d % self.p for d in digits])

    @property
    def descriptor(self) -> str:
        return f"gf({self.p},{self.k})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


class RationalField(FieldDom):
    """The rationals with sympy ``Rational`` elements."""

    finite = False

    @property
    def zero(self) -> Rational:  # type: ignore[override]
        return Rational(0)

    @property
    def one(self) -> Rational:  # type: ignore[override]
        return Rational(1)

    def add(self, a: Rational, b: Rational) -> Rational:
        return a + b

    def neg(self, a: Rational) -> Rational:
        return -a

    def mul(self, a: Rational, b: Rational) -> Rational:
        return a * b

    def inv(self, a: Rational) -> Rational:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def canonical(self, value: Any) -> Rational:
        return Rational(value)

    @property
    def descriptor(self) -> str:
        return "q"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rationals")

    def __repr__(self) -> str:
        return "QQ"


RATIONALS = RationalField()


# Polynomials


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients low degree first; no trailing zeros."""

    field: FieldDom
    coeffs: Tuple[Any, ...]

    def __post_init__(self) -> None:
        cs = [self.field.canonical(c) for c in self.coeffs]
        while cs and self.field.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, tuple(F.add(self[i], other[i]) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, tuple(F.sub(self[i], other[i]) for i in range(n)))

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F, ())
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, tuple(out))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [F.zero] * max(len(rem) - other.degree, 1)
        lead_inv = F.inv(other.coeffs[-1])
        for shift in range(len(rem) - len(other.coeffs), -1, -1):
            c = F.mul(rem[shift + other.degree], lead_inv)
            quot[shift] = c
            if not F.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b))
        return Poly(F, tuple(quot)), Poly(F, tuple(rem))

    def __call__(self, x: Any) -> Any:
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def at_matrix(self, A: "Mat") -> "Mat":
        n = A.nrows
        acc = zero_matrix(n, n, self.field)
        for c in reversed(self.coeffs):
            acc = (acc @ A) + identity(n, self.field).scale(c)
        return acc

    def to_list(self) -> List[Any]:
        return [_jsonable(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if self.field.is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == self.field.one:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms)


# Matrices


@dataclass(frozen=True)
class Mat:
    """Dense matrix over a FieldDom with canonical entries."""

    field: FieldDom
    rows: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(self.field.canonical(x) for x in row) for row in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_lists(cls, field: FieldDom, lists: Iterable[Iterable[Any]]) -> "Mat":
        return cls(field, tuple(tuple(r) for r in lists))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> Tuple[Any, ...]:
        return self.rows[i]

    def flat(self) -> Tuple[Any, ...]:
        return tuple(x for r in self.rows for x in r)

    def __add__(self, other: "Mat") -> "Mat":
        F = self.field
        return Mat(F, tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        F = self.field
        return Mat(F, tuple(tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Mat":
        F = self.field
        return Mat(F, tuple(tuple(F.neg(a) for a in r) for r in self.rows))

    def __matmul__(self, other: "Mat") -> "Mat":
        F = self.field
        if self.ncols != other.nrows:
            raise ValueError("matrix shapes do not compose")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            line = []
            for c in cols:
                acc = F.zero
                for a, b in zip(r, c):
                    if not F.is_zero(a) and not F.is_zero(b):
                        acc = F.add(acc, F.mul(a, b))
                line.append(acc)
            out.append(tuple(line))
        return Mat(F, tuple(out))

    def scale(self, c: Any) -> "Mat":
        F = self.field
        return Mat(F, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows))

    def apply(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        """Matrix times column vector."""
        F = self.field
        out = []
        for r in self.rows:
            acc = F.zero
            for a, b in zip(r, vector):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.flat())

    @property
    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(
            x == (d if i == j else self.field.zero)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    @property
    def is_lower_triangular(self) -> bool:
        return all(self.field.is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if j > i)

    @property
    def is_upper_triangular(self) -> bool:
        return all(self.field.is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if j < i)

    def to_list(self) -> List[List[Any]]:
        return [[_jsonable(x) for x in r] for r in self.rows]

    def sort_key(self) -> Tuple[Any, ...]:
        return self.flat()


def _jsonable(x: Any) -> Any:
    return x if isinstance(x, int) else str(x)


def identity(n: int, field: FieldDom) -> Mat:
    return Mat(field, tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))


def zero_matrix(n: int, m: int, field: FieldDom) -> Mat:
    return Mat(field, tuple(tuple(field.zero for _ in range(m)) for _ in range(n)))


def unit_matrix(n: int, i: int, j: int, field: FieldDom, value: Any = None) -> Mat:
    """The matrix unit e_ij (0-based), optionally scaled."""
    v = field.one if value is None else value
    return Mat(field, tuple(tuple(v if (a, b) == (i, j) else field.zero for b in range(n)) for a in range(n)))


class _Echelon:
    """Incremental row echelon basis with optional combination tags."""

    def __init__(self, field: FieldDom, width: int, tag_width: int = 0):
        self.field = field
        self.width = width
        self.tag_width = tag_width
        self.rows: List[List[Any]] = []
        self.tags: List[List[Any]] = []
        self.pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[Any], tag: Optional[Sequence[Any]] = None) -> Tuple[List[Any], List[Any]]:
        F = self.field
        v = list(vec)
        t = list(tag) if tag is not None else [F.zero] * self.tag_width
        for row, rtag, piv in zip(self.rows, self.tags, self.pivots):
            c = v[piv]
            if not F.is_zero(c):
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
                t = [F.sub(a, F.mul(c, b)) for a, b in zip(t, rtag)]
        return v, t

    def insert(self, vec: Sequence[Any], tag: Optional[Sequence[Any]] = None) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        F = self.field
        v, t = self.reduce(vec, tag)
        piv = next((i for i, x in enumerate(v) if not F.is_zero(x)), None)
        if piv is None:
            return False
        inv = F.inv(v[piv])
        self.rows.append([F.mul(inv, x) for x in v])
        self.tags.append([F.mul(inv, x) for x in t])
        self.pivots.append(piv)
        return True

    def contains(self, vec: Sequence[Any]) -> bool:
        v, _ = self.reduce(vec)
        return all(self.field.is_zero(x) for x in v)


def row_span_dim(rows: Iterable[Sequence[Any]], n: int, field: FieldDom) -> int:
    """Dimension of the left F-span of ``rows`` inside F^n."""
    rows = [tuple(r) for r in rows]
    if any(len(r) != n for r in rows):
        raise ValueError(f"ragged input: every row must have length {n}")
    basis = _Echelon(field, n)
    for r in rows:
        basis.insert([field.canonical(x) for x in r])
        if basis.dim == n:
            break
    return basis.dim


def mat_inverse(A: Mat) -> Optional[Mat]:
    """Gauss-Jordan inverse; None when singular."""
    if not A.is_square:
        raise ValueError("inverse of a non-square matrix")
    F, n = A.field, A.nrows
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not F.is_zero(aug[r][col])), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        aug[col] = [F.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and not F.is_zero(aug[r][col]):
                c = aug[r][col]
                aug[r] = [F.sub(a, F.mul(c, b)) for a, b in zip(aug[r], aug[col])]
    return Mat(F, tuple(tuple(r[n:]) for r in aug))


def conjugate(u: Mat, A: Mat, u_inv: Optional[Mat] = None) -> Mat:
    """u A u^-1."""
    if u_inv is None:
        u_inv = mat_inverse(u)
        if u_inv is None:
            raise ValueError("conjugating matrix is singular")
    return u @ A @ u_inv


def min_poly(A: Mat) -> Poly:
    """Monic polynomial of least degree annihilating A."""
    if not A.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    F, n = A.field, A.nrows
    width = n * n
    basis = _Echelon(F, width, tag_width=width + 1)
    power = identity(n, F)
    for d in range(width + 1):
        tag = [F.one if i == d else F.zero for i in range(width + 1)]
        reduced, combo = basis.reduce(power.flat(), tag)
        if all(F.is_zero(x) for x in reduced):
            return Poly(F, tuple(combo[: d + 1]))
        basis.insert(reduced, combo)
        power = power @ A
    raise AssertionError("Cayley-Hamilton bound exceeded")  # unreachable


def monic_polys(field: FieldDom, degree: int) -> Iterator[Poly]:
    """All monic polynomials of ``degree`` in lexicographic order of lower coefficients."""
    elems = list(field.elements())
    for lower in itertools.product(elems, repeat=degree):
        yield Poly(field, tuple(reversed(lower)) + (field.one,))


def find_factor(P: Poly) -> Optional[Poly]:
    """A monic proper factor of P of degree <= deg(P)/2, by exhaustive search."""
    if not P.field.finite:
        raise NoMiddleError("exhaustive factor search needs a finite coefficient field")
    if not P.is_monic or P.degree < 1:
        raise ValueError(f"{P} is not monic of degree >= 1")
    for d in range(1, P.degree // 2 + 1):
        for f in monic_polys(P.field, d):
            _, rem = P.divmod(f)
            if not rem.coeffs:
                return f
    return None


def poly_irreducible(P: Poly) -> bool:
    return find_factor(P) is None


def is_irreducible_over_rationals(P: Poly) -> bool:
    x = symbols("x")
    return bool(SymPoly(list(reversed(P.coeffs)), x, domain="QQ").is_irreducible)


def companion(P: Poly) -> Mat:
    """Companion matrix: ones on the superdiagonal, last row the negated coefficients."""
    if not P.is_monic or P.degree < 1:
        raise ValueError(f"{P} is not monic of degree >= 1")
    F, n = P.field, P.degree
    rows = []
    for i in range(n - 1):
        rows.append(tuple(F.one if j == i + 1 else F.zero for j in range(n)))
    rows.append(tuple(F.neg(P.coeffs[j]) for j in range(n)))
    return Mat(F, tuple(rows))


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1, bound: int = MAX_FIELD_SIZE) -> FiniteField:
    """GF(p^k) defined by the lexicographically least irreducible monic polynomial."""
    if not isprime(p):
        raise NoMiddleError(f"characteristic {p} is not prime")
    if k < 1:
        raise NoMiddleError(f"degree {k} must be at least 1")
    check_power("field size", p, k, bound)
    if k == 1:
        field = FiniteField(p, 1, None)
    else:
        base = field_make(p, 1, bound)
        modulus = next(P for P in monic_polys(base, k) if poly_irreducible(P))
        field = FiniteField(p, k, tuple(modulus.coeffs))
    log.debug("Field constructed", field=repr(field), modulus=field.modulus)
    return field


def rationals() -> RationalField:
    return RATIONALS


def field_embedding(small: FiniteField, large: FiniteField) -> Tuple[int, ...]:
    """Images of the elements of ``small`` under an embedding into ``large``."""
    if small.p != large.p or large.k % small.k:
        raise NoMiddleError(f"{small!r} does not embed in {large!r}")
    if small.k == 1:
        return tuple(range(small.p))
    assert small.modulus is not None
    modulus = Poly(large, small.modulus)
    root = next(b for b in large.elements() if large.is_zero(modulus(b)))
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(large.mul(powers[-1], root))
    images = []
    for x in small.elements():
        acc = 0
        for d, pw in zip(small.digits(x), powers):
            acc = large.add(acc, large.mul(d, pw))
        images.append(acc)
    return tuple(images)


def gl_enumerate(n: int, field: FieldDom, bound: int = MAX_GL_CANDIDATES) -> Iterator[Mat]:
    """Every invertible n x n matrix exactly once, rows chosen outside the span so far."""
    if not field.finite:
        raise NoMiddleError("GL enumeration needs a finite field")
    q = len(field.elements())
    check_power("GL enumeration", q, n * n, bound)
    elems = list(field.elements())
    vectors = list(itertools.product(elems, repeat=n))

    def extend(prefix: List[Tuple[Any, ...]], span: frozenset) -> Iterator[Mat]:
        if len(prefix) == n:
            yield Mat(field, tuple(prefix))
            return
        for v in vectors:
            if v in span:
                continue
            grown = frozenset(
                tuple(field.add(s_i, field.mul(c, v_i)) for s_i, v_i in zip(s, v))
                for s in span
                for c in elems
            )
            yield from extend(prefix + [v], grown)

    yield from extend([], frozenset({tuple(field.zero for _ in range(n))}))


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


@dataclass(frozen=True)
class MatrixAlgebra:
    """A subalgebra of M_n(F) given by a basis over its scalar field."""

    field: FieldDom
    n: int
    basis: Tuple[Mat, ...]
    over_prime: bool
    elements: Optional[Tuple[Mat, ...]]
    is_division: Optional[bool]

    @property
    def size(self) -> Optional[int]:
        return None if self.elements is None else len(self.elements)

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements or ())

    def __contains__(self, A: Mat) -> bool:
        if self.elements is not None:
            return A in self.members
        return _span_contains(self.field, self.basis, A, self.over_prime)

    @property
    def contains_scalars(self) -> bool:
        F = self.field
        if not F.finite:
            return True
        return all(identity(self.n, F).scale(c) in self for c in F.elements())

    @property
    def is_scalar_only(self) -> bool:
        return all(b.is_scalar for b in self.basis)


def _coords(A: Mat, over_prime: bool) -> Tuple[Any, ...]:
    F = A.field
    if over_prime and isinstance(F, FiniteField) and F.k > 1:
        return tuple(d for x in A.flat() for d in F.digits(x))
    return A.flat()


def _scalar_field(F: FieldDom, over_prime: bool) -> FieldDom:
    if over_prime and isinstance(F, FiniteField):
        return field_make(F.p, 1)
    return F


def _span_contains(F: FieldDom, basis: Sequence[Mat], A: Mat, over_prime: bool) -> bool:
    K = _scalar_field(F, over_prime)
    coords = _coords(A, over_prime)
    ech = _Echelon(K, len(coords))
    for b in basis:
        ech.insert(_coords(b, over_prime))
    return ech.contains(coords)


def subalgebra_closure(
    gens: Iterable[Mat],
    field: FieldDom,
    n: Optional[int] = None,
    over_prime: bool = False,
    bound: int = MAX_FIELD_SIZE,
) -> MatrixAlgebra:
    """Smallest subalgebra containing 0, I and ``gens``.

    With ``over_prime`` the closure is taken over the prime subfield only, i.e.
    the subring generated by the generators.
    """
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("matrix size needed when there are no generators")
        n = gens[0].nrows
    if any(g.nrows != n or g.ncols != n or g.field != field for g in gens):
        raise ValueError("generators must be square of equal size over the same field")
    K = _scalar_field(field, over_prime)
    width = len(_coords(identity(n, field), over_prime))
    ech = _Echelon(K, width)
    basis: List[Mat] = []

    def absorb(A: Mat) -> None:
        if ech.insert(_coords(A, over_prime)):
            basis.append(A)
            if K.finite:
                check_power("subalgebra closure", len(K.elements()), len(basis), bound)

    absorb(identity(n, field))
    for g in gens:
        absorb(g)
    i = 0
    while i < len(basis):
        b = basis[i]
        for c in basis[: i + 1]:
            absorb(b @ c)
            absorb(c @ b)
        i += 1

    if not K.finite:
        division: Optional[bool] = None
        if len(basis) == 1:
            division = True
        elif len(gens) == 1:
            division = is_irreducible_over_rationals(min_poly(gens[0]))
        return MatrixAlgebra(field, n, tuple(basis), over_prime, None, division)

    scalars = list(K.elements())
    elements = set()
    zero = zero_matrix(n, n, field)
    for combo in itertools.product(scalars, repeat=len(basis)):
        acc = zero
        for c, b in zip(combo, basis):
            if c:
                acc = acc + b.scale(c)
        elements.add(acc)
    ordered = tuple(sorted(elements, key=Mat.sort_key))
    members = set(ordered)
    division = True
    for A in ordered:
        if A.is_zero:
            continue
        inv = mat_inverse(A)
        if inv is None or inv not in members:
            division = False
            break
    log.debug("Subalgebra closed", n=n, dim=len(basis), size=len(ordered), division=division)
    return MatrixAlgebra(field, n, tuple(basis), over_prime, ordered, division)


def scalar_algebra(n: int, field: FieldDom) -> MatrixAlgebra:
    return subalgebra_closure([], field, n=n)


def full_matrix_elements(n: int, field: FieldDom, bound: int = MAX_GL_CANDIDATES) -> Tuple[Mat, ...]:
    """All of M_n(F), lexicographically."""
    q = len(field.elements())
    check_power("matrix ring enumeration", q, n * n, bound)
    elems = list(field.elements())
    return tuple(
        Mat(field, tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n)))
        for flat in itertools.product(elems, repeat=n * n)
    )
