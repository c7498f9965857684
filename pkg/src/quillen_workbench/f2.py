"""Dense linear algebra over the two-element field.

Rows are packed into Python integers: bit ``j`` of a row holds column ``j``.
Integers give word-level XOR for free and grow to any width, which is what
the limit systems need (thousands of columns).

Matrices act on column vectors: an ``r x c`` matrix maps ``F2^c`` to
``F2^r``.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative vector length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in a vector of length {self.length}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> F2Vector:
        bits = 0
        for j, e in enumerate(entries):
            if e & 1:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def zero(cls, length: int) -> F2Vector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, index: int) -> F2Vector:
        return cls(length, 1 << index)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: F2Vector) -> F2Vector:
        _check_len(self.length, other.length)
        return F2Vector(self.length, self.bits ^ other.bits)

    __sub__ = __add__

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> list[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.to_list())


def _check_len(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} != {b}")


@dataclass(frozen=True)
class F2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row does not fit in {self.ncols} columns")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> F2Matrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            _check_len(len(row), ncols)
            rows.append(F2Vector.from_list(row).bits)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[F2Vector | int], nrows: int) -> F2Matrix:
        """Matrix whose ``j``-th column is ``columns[j]``."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            bits = col.bits if isinstance(col, F2Vector) else col
            if bits >> nrows:
                raise ValueError("column longer than nrows")
            i = 0
            while bits:
                if bits & 1:
                    rows[i] |= 1 << j
                bits >>= 1
                i += 1
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str], ncols: int) -> F2Matrix:
        return cls.from_lists([[int(c) for c in r] for r in rows], ncols)

    # -- accessors ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.ncols, self.rows[i])

    def column_bits(self, j: int) -> int:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return bits

    def column(self, j: int) -> F2Vector:
        return F2Vector(self.nrows, self.column_bits(j))

    def columns(self) -> list[F2Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_bitstrings(self) -> list[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    # -- algebra ------------------------------------------------------

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_columns(list(self.rows), self.ncols)

    def apply(self, v: F2Vector | int) -> F2Vector:
        bits = v.bits if isinstance(v, F2Vector) else v
        if isinstance(v, F2Vector):
            _check_len(v.length, self.ncols)
        out = 0
        for i, r in enumerate(self.rows):
            if _parity(r & bits):
                out |= 1 << i
        return F2Vector(self.nrows, out)

    def apply_bits(self, bits: int) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            if _parity(r & bits):
                out |= 1 << i
        return out

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        _check_len(self.ncols, other.nrows)
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= orows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} != {other.shape}")
        return F2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __sub__ = __add__

    def hstack(self, other: F2Matrix) -> F2Matrix:
        _check_len(self.nrows, other.nrows)
        s = self.ncols
        return F2Matrix(
            self.nrows, self.ncols + other.ncols, tuple(a | (b << s) for a, b in zip(self.rows, other.rows))
        )

    def vstack(self, other: F2Matrix) -> F2Matrix:
        _check_len(self.ncols, other.ncols)
        return F2Matrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def kron(self, other: F2Matrix) -> F2Matrix:
        """Kronecker product; index ``(i, k)`` maps to ``i * other.ncols + k``."""
        rows = []
        w = other.ncols
        for a in self.rows:
            for b in other.rows:
                acc = 0
                j = 0
                x = a
                while x:
                    if x & 1:
                        acc |= b << (j * w)
                    x >>= 1
                    j += 1
                rows.append(acc)
        return F2Matrix(self.nrows * other.nrows, self.ncols * other.ncols, tuple(rows))

    def select_rows(self, idx: Iterable[int]) -> F2Matrix:
        rows = tuple(self.rows[i] for i in idx)
        return F2Matrix(len(rows), self.ncols, rows)


def block_diag(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    s = a.ncols
    rows = a.rows + tuple(r << s for r in b.rows)
    return F2Matrix(a.nrows + b.nrows, a.ncols + b.ncols, rows)


# -- elimination ------------------------------------------------------


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduce rows to a pivot table keyed by lowest set bit.

    Lowest-index pivots keep kernel bases reproducible.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = (r & -r).bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                break
            r ^= p
    return pivots


def rank(m: F2Matrix) -> int:
    return len(_echelon(m.rows))


def _rref(m: F2Matrix) -> dict[int, int]:
    pivots = _echelon(m.rows)
    # back-substitute so each pivot column is cleared in every other pivot row
    for col in sorted(pivots):
        prow = pivots[col]
        bit = 1 << col
        for other in pivots:
            if other != col and pivots[other] & bit:
                pivots[other] ^= prow
    return pivots


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Null-space basis, one vector per free column in increasing order."""
    pivots = _rref(m)
    n = m.ncols
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                v |= 1 << col
        basis.append(F2Vector(n, v))
    return basis


def kernel_matrix(m: F2Matrix) -> F2Matrix:
    """Kernel basis as the columns of an ``ncols x k`` matrix."""
    return F2Matrix.from_columns(kernel_basis(m), m.ncols)


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """Some ``x`` with ``m x = b``, or ``None`` when inconsistent."""
    if b.length != m.nrows:
        raise ValueError(f"right-hand side has length {b.length}, expected {m.nrows}")
    aug = m.hstack(F2Matrix.from_columns([b], m.nrows))
    pivots = _rref(aug)
    if m.ncols in pivots:
        return None
    x = 0
    for col, prow in pivots.items():
        if (prow >> m.ncols) & 1:
            x |= 1 << col
    return F2Vector(m.ncols, x)


class ColumnSpace:
    """Coordinates of vectors with respect to independent columns of ``basis``.

    Elimination happens once; :meth:`coordinates` is then cheap, which matters
    when inducing many operations on the same subspace.
    """

    def __init__(self, basis: F2Matrix):
        self.basis = basis
        self.dim = basis.ncols
        self.ambient = basis.nrows
        # rows = basis columns tagged with an identity block to track combinations
        tagged = []
        for j in range(self.dim):
            tagged.append(basis.column_bits(j) | (1 << (self.ambient + j)))
        self._pivots = _echelon(tagged)
        low = _mask(self.ambient)
        if any(not (r & low) for r in self._pivots.values()):
            raise ValueError("basis columns are linearly dependent")

    def coordinates_bits(self, v: int) -> int | None:
        r = v
        combo = 0
        while r:
            lowbit = (r & -r).bit_length() - 1
            if lowbit >= self.ambient:
                break
            p = self._pivots.get(lowbit)
            if p is None:
                return None
            r ^= p & _mask(self.ambient)
            combo ^= p >> self.ambient
        return combo

    def coordinates(self, v: F2Vector) -> F2Vector | None:
        _check_len(v.length, self.ambient)
        c = self.coordinates_bits(v.bits)
        return None if c is None else F2Vector(self.dim, c)

    def contains(self, v: F2Vector) -> bool:
        return self.coordinates(v) is not None

    def induce(self, op: F2Matrix, source: F2Matrix) -> F2Matrix:
        """Matrix of ``op`` restricted to ``source``'s column span, landing in this span.

        Raises ``ValueError`` if some image leaves the subspace.
        """
        cols = []
        for j in range(source.ncols):
            image = op.apply_bits(source.column_bits(j))
            c = self.coordinates_bits(image)
            if c is None:
                raise ValueError(f"image of column {j} is not in the target subspace")
            cols.append(c)
        return F2Matrix.from_columns(cols, self.dim)


class RowReducer:
    """Incremental rank of a stream of packed rows."""

    def __init__(self) -> None:
        self._pivots: dict[int, int] = {}

    def add(self, row: int) -> bool:
        r = row
        pivots = self._pivots
        while r:
            low = (r & -r).bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                return True
            r ^= p
        return False

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def matrix(self, ncols: int) -> F2Matrix:
        rows = tuple(self._pivots[k] for k in sorted(self._pivots))
        return F2Matrix(len(rows), ncols, rows)
