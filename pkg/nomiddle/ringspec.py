"""Ring-spec DSL: syntax tree, recursive-descent parser and printer.

Grammar::

    ring   := "zmod(" nat ")" | "gf(" nat ["," nat] ")" | "prod(" ring {"," ring} ")"
            | "mat(" ring "," nat ")" | "tri(" field ";" nat ";" dsrc ")"
            | "trimat(" ring "," ring ")" | "idealize(" field "," nat ")"
    dsrc   := "gen" mats | "companion" poly | "scalars" | "full"
    mats   := matrix | "[" matrix {"," matrix} "]"

Whitespace between tokens is ignored.
"""

from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple, Union

from sympy import isprime

from .config import MAX_SPEC_BYTES
from .errors import SpecSemanticError, SpecSyntaxError
from .exactalg import exceeds_power

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ZMod:
    n: int

    def __str__(self) -> str:
        return f"zmod({self.n})"


@dataclass(frozen=True)
class GF:
    p: int
    k: int = 1

    def __str__(self) -> str:
        return f"gf({self.p})" if self.k == 1 else f"gf({self.p},{self.k})"


@dataclass(frozen=True)
class Prod:
    factors: Tuple["RingSpec", ...]

    def __str__(self) -> str:
        return "prod(" + ",".join(str(f) for f in self.factors) + ")"


@dataclass(frozen=True)
class MatRing:
    base: "RingSpec"
    k: int

    def __str__(self) -> str:
        return f"mat({self.base},{self.k})"


@dataclass(frozen=True)
class Gen:
    mats: Tuple[Matrix, ...]

    def __str__(self) -> str:
        body = ",".join(_matrix_text(m) for m in self.mats)
        return f"gen{body}" if len(self.mats) == 1 else f"gen[{body}]"


@dataclass(frozen=True)
class Companion:
    coeffs: Tuple[int, ...]

    def __str__(self) -> str:
        return "companion[" + ",".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class Scalars:
    def __str__(self) -> str:
        return "scalars"


@dataclass(frozen=True)
class Full:
    def __str__(self) -> str:
        return "full"


DSource = Union[Gen, Companion, Scalars, Full]


@dataclass(frozen=True)
class Tri:
    field: GF
    n: int
    dsrc: DSource

    def __str__(self) -> str:
        return f"tri({self.field};{self.n};{self.dsrc})"


@dataclass(frozen=True)
class TriMat:
    a: "RingSpec"
    b: "RingSpec"

    def __str__(self) -> str:
        return f"trimat({self.a},{self.b})"


@dataclass(frozen=True)
class Idealize:
    field: GF
    dim: int

    def __str__(self) -> str:
        return f"idealize({self.field},{self.dim})"


RingSpec = Union[ZMod, GF, Prod, MatRing, Tri, TriMat, Idealize]


def _matrix_text(m: Matrix) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m) + "]"


def print_spec(spec: RingSpec) -> str:
    return str(spec)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> SpecSyntaxError:
        return SpecSyntaxError(message, self.pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str) -> None:
        if not self.at(token):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a constructor name")
        return self.text[start : self.pos]

    def integer(self, signed: bool = True) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if digits == self.pos:
            self.pos = start
            raise self.error("expected an integer" if signed else "expected a natural number")
        return int(self.text[start : self.pos])

    def nat(self) -> int:
        return self.integer(signed=False)

    def ring(self) -> RingSpec:
        start = self.pos
        name = self.word()
        if name == "zmod":
            self.expect("(")
            n = self.nat()
            self.expect(")")
            return ZMod(n)
        if name == "gf":
            return self._gf_tail()
        if name == "prod":
            self.expect("(")
            factors = [self.ring()]
            while self.at(","):
                self.expect(",")
                factors.append(self.ring())
            self.expect(")")
            return Prod(tuple(factors))
        if name == "mat":
            self.expect("(")
            base = self.ring()
            self.expect(",")
            k = self.nat()
            self.expect(")")
            return MatRing(base, k)
        if name == "tri":
            self.expect("(")
            field = self.field()
            self.expect(";")
            n = self.nat()
            self.expect(";")
            dsrc = self.dsrc()
            self.expect(")")
            return Tri(field, n, dsrc)
        if name == "trimat":
            self.expect("(")
            a = self.ring()
            self.expect(",")
            b = self.ring()
            self.expect(")")
            return TriMat(a, b)
        if name == "idealize":
            self.expect("(")
            field = self.field()
            self.expect(",")
            dim = self.nat()
            self.expect(")")
            return Idealize(field, dim)
        self.pos = start
        raise self.error(f"unknown constructor {name!r}")

    def _gf_tail(self) -> GF:
        self.expect("(")
        p = self.nat()
        k = 1
        if self.at(","):
            self.expect(",")
            k = self.nat()
        self.expect(")")
        return GF(p, k)

    def field(self) -> GF:
        start = self.pos
        if self.word() != "gf":
            self.pos = start
            raise self.error("expected a field gf(p[,k])")
        return self._gf_tail()

    def dsrc(self) -> DSource:
        start = self.pos
        name = self.word()
        if name == "scalars":
            return Scalars()
        if name == "full":
            return Full()
        if name == "companion":
            value, depth = self.nested()
            if depth != 1:
                raise SpecSyntaxError("companion expects a flat coefficient list", start, self.text)
            return Companion(tuple(value))
        if name == "gen":
            value, depth = self.nested()
            if depth == 2:
                mats = [value]
            elif depth == 3:
                mats = value
            else:
                raise SpecSyntaxError("gen expects a matrix or a list of matrices", start, self.text)
            return Gen(tuple(tuple(tuple(row) for row in m) for m in mats))
        self.pos = start
        raise self.error(f"unknown D' source {name!r}")

    def nested(self) -> Tuple[Any, int]:
        """A bracketed list of integers or of lists, with its nesting depth."""
        self.expect("[")
        if self.at("["):
            items: List[Any] = []
            depth = None
            while True:
                value, d = self.nested()
                if depth is not None and d != depth:
                    raise self.error("mixed nesting depth")
                depth = d
                items.append(value)
                if not self.at(","):
                    break
                self.expect(",")
            self.expect("]")
            return items, depth + 1
        values = [self.integer()]
        while self.at(","):
            self.expect(",")
            values.append(self.integer())
        self.expect("]")
        return values, 1


def _check_entries(field: GF, entries: Sequence[int], what: str) -> None:
    # prime-field entries are reduced mod p; extension fields take encodings 0..p^k-1
    if field.k == 1:
        return
    for e in entries:
        if e < 0 or not exceeds_power(field.p, field.k, e):
            raise SpecSemanticError(f"{what} has entry {e} outside gf({field.p},{field.k})")


def _validate(spec: RingSpec) -> None:
    if isinstance(spec, ZMod):
        if spec.n < 2:
            raise SpecSemanticError(f"zmod({spec.n}) is not a nonzero ring")
    elif isinstance(spec, GF):
        if not isprime(spec.p):
            raise SpecSemanticError(f"gf({spec.p},...) has non-prime characteristic {spec.p}")
        if spec.k < 1:
            raise SpecSemanticError(f"gf degree {spec.k} must be at least 1")
    elif isinstance(spec, Prod):
        for f in spec.factors:
            _validate(f)
    elif isinstance(spec, MatRing):
        _validate(spec.base)
        if spec.k < 1:
            raise SpecSemanticError(f"mat size {spec.k} must be at least 1")
    elif isinstance(spec, Tri):
        _validate(spec.field)
        if spec.n < 1:
            raise SpecSemanticError(f"tri size {spec.n} must be at least 1")
        src = spec.dsrc
        if isinstance(src, Full) and spec.n != 1:
            raise SpecSemanticError("the full source needs n = 1")
        if isinstance(src, Gen):
            for m in src.mats:
                if len(m) != spec.n or any(len(row) != spec.n for row in m):
                    raise SpecSemanticError(f"generator {_matrix_text(m)} is not {spec.n}x{spec.n}")
                _check_entries(spec.field, [e for row in m for e in row], f"generator {_matrix_text(m)}")
        if isinstance(src, Companion):
            if len(src.coeffs) - 1 != spec.n:
                raise SpecSemanticError(f"companion polynomial must have degree {spec.n}")
            _check_entries(spec.field, src.coeffs, f"companion polynomial {list(src.coeffs)}")
    elif isinstance(spec, TriMat):
        _validate(spec.a)
        _validate(spec.b)
    elif isinstance(spec, Idealize):
        _validate(spec.field)
        if spec.dim < 1:
            raise SpecSemanticError(f"idealize dimension {spec.dim} must be at least 1")


def parse_spec(text: str) -> RingSpec:
    """Parse and validate a ring spec."""
    if len(text.encode("utf-8")) > MAX_SPEC_BYTES:
        raise SpecSyntaxError(f"input exceeds {MAX_SPEC_BYTES} bytes", 0, "")
    parser = _Parser(text)
    spec = parser.ring()
    parser.skip()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    _validate(spec)
    return spec
