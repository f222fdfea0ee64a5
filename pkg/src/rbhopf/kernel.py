"""Exact scalars, dense matrices and tensor-leg bookkeeping.

Two ground fields are supported: the rationals (``QQ``) and prime fields
``GF(p)``.  Field elements are plain Python values -- ``Fraction`` for QQ and
``int`` in ``[0, p)`` for GF(p) -- and the owning :class:`Field` does the
normalisation.  A :class:`Matrix` always knows its field; mixing fields raises.

Every linear map in the package is a Matrix acting on column vectors, so a map
``V -> W`` has shape ``(dim W, dim V)``.  Tensor products of spaces use the
row-major composite index of :class:`TensorIndex`, under which ``A (x) B`` is
exactly ``kron(A, B)``.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from functools import reduce as _fold
from itertools import product
from typing import Iterable, Sequence

from .errors import FieldMismatchError, ShapeError

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "QQ",
    "GF",
    "parse_field",
    "Matrix",
    "TensorIndex",
    "kron",
    "kron_all",
    "hstack",
    "vstack",
    "leg_permutation",
    "solve_kernel",
    "column_space",
    "span_contains",
    "solve",
    "inverse",
    "left_inverse",
    "random_matrix",
]


class Field:
    name: str
    characteristic: int

    zero: object
    one: object

    def coerce(self, x): ...

    def reduce(self, x):
        """Bring the result of integer/rational arithmetic back to canonical form."""
        ...

    def inv(self, x): ...

    def format(self, x) -> str: ...

    def parse(self, text: str): ...

    def random_element(self, rng: random.Random): ...

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} {x!r} into Q exactly")

    def reduce(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(x)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    _rat = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")

    def parse(self, text: str):
        m = self._rat.match(str(text))
        if not m:
            raise ValueError(f"not a rational literal: {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value = Fraction(num, den)
        if m.group(2) is not None and (value.numerator, value.denominator) != (num, den):
            raise ValueError(f"rational literal {text!r} is not in lowest terms")
        return value

    def random_element(self, rng: random.Random):
        return Fraction(rng.randint(-3, 3))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p) or p > 2**31:
            raise ValueError(f"GF(p) needs a prime p <= 2^31, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{x} is undefined in {self.name}")
            return x.numerator * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} {x!r} into {self.name}")

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(x % self.p)

    def parse(self, text: str):
        text = str(text).strip()
        if not re.fullmatch(r"\d+", text) or int(text) >= self.p:
            raise ValueError(f"{text!r} is not a canonical residue of {self.name}")
        return int(text)

    def random_element(self, rng: random.Random):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()
_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def to_scalar(field: Field, x):
    """User-facing scalar conversion: ints, Fractions and signed rational literals
    ("-1", "1/2") land in any field; over GF(p) they are reduced mod p."""
    if isinstance(x, str):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?", x)
        if not m:
            raise ValueError(f"not a scalar literal: {x!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator in {x!r}")
        x = Fraction(int(m.group(1)), den)
    return field.coerce(x)


def parse_field(text: str) -> Field:
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if not m:
        raise ValueError(f"unknown field {text!r}; expected 'Q' or 'GF(p)'")
    return GF(int(m.group(1)))


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, data: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        coerced = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if rows is None:
            rows = len(coerced)
        if cols is None:
            cols = len(coerced[0]) if coerced else 0
        if not coerced and cols == 0:
            coerced = ((),) * rows
        if len(coerced) != rows or any(len(r) != cols for r in coerced):
            raise ShapeError(f"ragged or mis-sized data for a {rows}x{cols} matrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = coerced
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, data: tuple, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field, m.rows, m.cols, m._data, m._hash = field, rows, cols, data, None
        return m

    # constructors

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Matrix":
        return cls(field, [[v] for v in values], rows=len(values), cols=1)

    @classmethod
    def row(cls, field: Field, values: Sequence) -> "Matrix":
        return cls(field, [list(values)], rows=1, cols=len(values))

    @classmethod
    def basis_vector(cls, field: Field, n: int, i: int) -> "Matrix":
        return cls._raw(field, tuple((field.one if k == i else field.zero,) for k in range(n)), n, 1)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        data = tuple(tuple(field.coerce(columns[j][i]) for j in range(cols)) for i in range(rows))
        return cls._raw(field, data, rows, cols)

    @classmethod
    def from_function(cls, field: Field, rows: int, cols: int, f) -> "Matrix":
        return cls(field, [[f(i, j) for j in range(cols)] for i in range(rows)], rows=rows, cols=cols)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row_values(self, i: int) -> tuple:
        return self._data[i]

    def col_values(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def col(self, j: int) -> "Matrix":
        return Matrix._raw(self.field, tuple((r[j],) for r in self._data), self.rows, 1)

    def columns(self) -> list["Matrix"]:
        return [self.col(j) for j in range(self.cols)]

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(r[j] for j in idx) for r in self._data),
                           self.rows, len(idx))

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols)),
                           self.cols, self.rows)

    # arithmetic

    def _check_field(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        data = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        red = self.field.reduce
        data = tuple(tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        s = self.field.coerce(s)
        red = self.field.reduce
        data = tuple(tuple(red(s * a) for a in r) for r in self._data)
        return Matrix._raw(self.field, data, self.rows, self.cols)

    def __rmul__(self, s) -> "Matrix":
        return self.scale(s)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} @ {other.shape}")
        red = self.field.reduce
        n = other.cols
        odata = other._data
        # skip zero entries on both sides; structure-constant matrices are very sparse
        orows = [tuple((j, x) for j, x in enumerate(r) if x) for r in odata]
        out = []
        zero = self.field.zero
        for r in self._data:
            acc: dict[int, object] = {}
            for k, a in enumerate(r):
                if a:
                    for j, b in orows[k]:
                        acc[j] = acc.get(j, 0) + a * b
            row = [zero] * n
            for j, v in acc.items():
                row[j] = red(v)
            out.append(tuple(row))
        return Matrix._raw(self.field, tuple(out), self.rows, n)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ShapeError("power needs a square matrix and k >= 0")
        result = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        fmt = self.field.format
        body = ", ".join("[" + ", ".join(fmt(x) for x in r) + "]" for r in self._data)
        return f"Matrix({self.field}, {self.rows}x{self.cols}, [{body}])"

    def kron(self, other: "Matrix") -> "Matrix":
        return kron(self, other)

    # elimination

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and the pivot columns."""
        f = self.field
        red = f.reduce
        a = [list(r) for r in self._data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pr = next((i for i in range(r, self.rows) if a[i][c]), None)
            if pr is None:
                continue
            a[r], a[pr] = a[pr], a[r]
            inv = f.inv(a[r][c])
            a[r] = [red(x * inv) for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    fac = a[i][c]
                    a[i] = [red(x - fac * y) for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return Matrix._raw(f, tuple(tuple(row) for row in a), self.rows, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row/column indices compose as ``i * b.rows + k``."""
    a._check_field(b)
    red = a.field.reduce
    data = []
    for ra in a._data:
        for rb in b._data:
            data.append(tuple(red(x * y) if x and y else a.field.zero for x in ra for y in rb))
    return Matrix._raw(a.field, tuple(data), a.rows * b.rows, a.cols * b.cols)


def kron_all(*ms: Matrix) -> Matrix:
    return _fold(kron, ms)


def hstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("hstack of nothing")
    f, rows = ms[0].field, ms[0].rows
    for m in ms:
        ms[0]._check_field(m)
        if m.rows != rows:
            raise ShapeError("hstack row mismatch")
    data = tuple(sum((m._data[i] for m in ms), ()) for i in range(rows))
    return Matrix._raw(f, data, rows, sum(m.cols for m in ms))


def vstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("vstack of nothing")
    cols = ms[0].cols
    for m in ms:
        ms[0]._check_field(m)
        if m.cols != cols:
            raise ShapeError("vstack column mismatch")
    return Matrix._raw(ms[0].field, sum((m._data for m in ms), ()), sum(m.rows for m in ms), cols)


class TensorIndex:
    """Row-major composite indexing of ``V_1 (x) ... (x) V_r``."""

    def __init__(self, dims: Sequence[int]):
        if any(d < 0 for d in dims):
            raise ShapeError("negative dimension")
        self.dims = tuple(dims)
        strides = []
        s = 1
        for d in reversed(self.dims):
            strides.append(s)
            s *= d
        self.strides = tuple(reversed(strides))
        self.size = s

    def compose(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.dims) or any(not 0 <= i < d for i, d in zip(idx, self.dims)):
            raise IndexError(f"{tuple(idx)} out of range for {self.dims}")
        return sum(i * s for i, s in zip(idx, self.strides))

    def decompose(self, n: int) -> tuple[int, ...]:
        if not 0 <= n < self.size:
            raise IndexError(f"{n} out of range for {self.dims}")
        out = []
        for s in self.strides:
            q, n = divmod(n, s)
            out.append(q)
        return tuple(out)

    def __iter__(self):
        return iter(product(*(range(d) for d in self.dims)))

    def labels(self, names: Sequence[Sequence[str]], sep: str = "⊗") -> list[str]:
        return [sep.join(names[t][i] for t, i in enumerate(idx)) for idx in self]


def _leg_sources(dims: Sequence[int], perm: Sequence[int]) -> list[int]:
    """For each output composite index, the input composite index it reads from."""
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{perm} is not a permutation of {len(dims)} legs")
    src = TensorIndex(dims)
    dst = TensorIndex([dims[p] for p in perm])
    source_of = [0] * src.size
    for n, idx in enumerate(src):
        source_of[dst.compose([idx[p] for p in perm])] = n
    return source_of


def leg_permutation(field: Field, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Map ``v_0 (x) ... (x) v_{r-1}  ->  v_{perm[0]} (x) ... (x) v_{perm[r-1]}``."""
    source_of = _leg_sources(dims, perm)
    n = len(source_of)
    z, o = field.zero, field.one
    data = tuple(tuple(o if j == source_of[i] else z for j in range(n)) for i in range(n))
    return Matrix._raw(field, data, n, n)


def permute_legs(m: Matrix, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """``leg_permutation(dims, perm) @ m`` computed by reordering rows."""
    source_of = _leg_sources(dims, perm)
    if len(source_of) != m.rows:
        raise ShapeError(f"legs {tuple(dims)} do not match {m.rows} rows")
    return Matrix._raw(m.field, tuple(m._data[i] for i in source_of), m.rows, m.cols)


def solve_kernel(a: Matrix) -> list[Matrix]:
    """Basis of the null space of ``a`` as column vectors."""
    r, pivots = a.rref()
    f = a.field
    free = [c for c in range(a.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [f.zero] * a.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.reduce(-r[i, fc])
        basis.append(Matrix._raw(f, tuple((x,) for x in v), a.cols, 1))
    return basis


def column_space(a: Matrix) -> Matrix:
    """A basis of the column span of ``a`` (chosen pivot columns of ``a``)."""
    _, pivots = a.rref()
    return a.select_columns(pivots)


def span_contains(basis: Matrix, vectors: Matrix) -> bool:
    """True iff every column of ``vectors`` lies in the column span of ``basis``."""
    if vectors.cols == 0:
        return True
    if basis.cols == 0:
        return vectors.is_zero()
    return hstack(basis, vectors).rank() == basis.rank()


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``a @ x == b``, or None when the system is inconsistent."""
    aug, pivots = hstack(a, b).rref()
    if any(p >= a.cols for p in pivots):
        return None
    f = a.field
    x = [[f.zero] * b.cols for _ in range(a.cols)]
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = aug[i, a.cols + j]
    return Matrix._raw(f, tuple(tuple(r) for r in x), a.cols, b.cols)


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ShapeError("inverse of a non-square matrix")
    x = solve(a, Matrix.identity(a.field, a.rows))
    if x is None or a.rank() != a.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def left_inverse(b: Matrix) -> Matrix:
    """``L`` with ``L @ b == I`` for ``b`` of full column rank."""
    if b.rank() != b.cols:
        raise ShapeError("left inverse needs full column rank")
    f = b.field
    n = b.rows
    # complete b to a basis with standard vectors, then read off the first block of the inverse
    cols = b
    for i in range(n):
        if cols.cols == n:
            break
        e = Matrix.basis_vector(f, n, i)
        if not span_contains(cols, e):
            cols = hstack(cols, e)
    inv = inverse(cols)
    return Matrix._raw(f, inv._data[: b.cols], b.cols, n)


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix._raw(field, tuple(tuple(field.random_element(rng) for _ in range(cols)) for _ in range(rows)),
                       rows, cols)
