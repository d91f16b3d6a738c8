"""Dense exact linear algebra over the rationals.

All matrices are backed by FLINT ``fmpq_mat`` values.  Nothing in this module
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = [
    "QMatrix",
    "Subspace",
    "QuotientSpace",
    "to_fmpq",
    "to_fraction",
    "rref_rank",
    "rank",
    "kernel_basis",
    "solve_linear",
    "row_space",
    "hstack",
    "vstack",
    "block_diag",
    "solve_matrix",
    "CoordinateBasis",
]


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return flint.fmpq(int(num), int(den) if den else 1)
    if isinstance(x, (int, flint.fmpz)):
        return flint.fmpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def to_fraction(x) -> Fraction:
    x = to_fmpq(x)
    return Fraction(int(x.p), int(x.q))


class QMatrix:
    """Immutable rows x cols matrix of exact rationals.

    ``entries`` are row-major.  Vectors elsewhere in the package are plain
    lists of ``fmpq``.
    """

    __slots__ = ("_m",)

    def __init__(self, rows: int, cols: int, entries: Iterable | None = None):
        if entries is None:
            self._m = flint.fmpq_mat(rows, cols)
        else:
            ents = [to_fmpq(e) for e in entries]
            if len(ents) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(ents)}")
            self._m = flint.fmpq_mat(rows, cols, ents)

    @classmethod
    def _wrap(cls, m: flint.fmpq_mat) -> "QMatrix":
        obj = cls.__new__(cls)
        obj._m = m
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        columns = list(columns)
        ncols = len(columns)
        ents = [flint.fmpq(0)] * (rows * ncols)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, e in enumerate(col):
                if e != 0:
                    ents[i * ncols + j] = to_fmpq(e)
        return cls._wrap(flint.fmpq_mat(rows, ncols, ents)) if rows and ncols else cls.zeros(rows, ncols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls._wrap(flint.fmpq_mat(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        m = flint.fmpq_mat(n, n)
        for i in range(n):
            m[i, i] = 1
        return cls._wrap(m)

    @classmethod
    def column(cls, vec: Sequence) -> "QMatrix":
        return cls(len(vec), 1, vec)

    @classmethod
    def row(cls, vec: Sequence) -> "QMatrix":
        return cls(1, len(vec), vec)

    @property
    def rows(self) -> int:
        return self._m.nrows()

    @property
    def cols(self) -> int:
        return self._m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return (self._m.nrows(), self._m.ncols())

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(to_fraction(e) for e in self._m.entries())

    @property
    def fmpq(self) -> flint.fmpq_mat:
        return self._m

    def flat(self) -> list:
        return list(self._m.entries())

    def tolist(self) -> list[list]:
        return self._m.tolist()

    def __getitem__(self, ij):
        return self._m[ij]

    def row_vector(self, i: int) -> list:
        c = self.cols
        return [self._m[i, j] for j in range(c)]

    def column_vector(self, j: int) -> list:
        return [self._m[i, j] for i in range(self.rows)]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0:
            return QMatrix.zeros(self.rows, other.cols)
        return QMatrix._wrap(self._m * other._m)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector, as a list."""
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [flint.fmpq(0)] * self.rows
        v = flint.fmpq_mat(self.cols, 1, [to_fmpq(x) for x in vec])
        return (self._m * v).entries()

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix._wrap(self._m + other._m)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix._wrap(self._m - other._m)

    def __neg__(self) -> "QMatrix":
        return QMatrix._wrap(-self._m)

    def scale(self, c) -> "QMatrix":
        return QMatrix._wrap(self._m * to_fmpq(c))

    def __mul__(self, c) -> "QMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._m == other._m

    def __hash__(self):
        return hash((self.shape, tuple(str(e) for e in self._m.entries())))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols}, {[[str(e) for e in r] for r in self._m.tolist()]})"

    @property
    def T(self) -> "QMatrix":
        return QMatrix._wrap(self._m.transpose())

    def is_zero(self) -> bool:
        return all(e == 0 for e in self._m.entries())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        rows, cols = list(rows), list(cols)
        m = self._m
        return QMatrix(len(rows), len(cols), [m[i, j] for i in rows for j in cols])

    def inverse(self) -> "QMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        if self.rows == 0:
            return self
        return QMatrix._wrap(self._m.inv())

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def charpoly(self) -> flint.fmpq_poly:
        if self.rows == 0:
            return flint.fmpq_poly([1])
        return self._m.charpoly()

    def power(self, k: int) -> "QMatrix":
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def hstack(mats: Sequence[QMatrix], rows: int | None = None) -> QMatrix:
    mats = list(mats)
    if not mats:
        return QMatrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("row mismatch in hstack")
    out = flint.fmpq_mat(r, sum(m.cols for m in mats))
    c0 = 0
    for m in mats:
        mm = m._m
        for i in range(r):
            for j in range(m.cols):
                e = mm[i, j]
                if e != 0:
                    out[i, c0 + j] = e
        c0 += m.cols
    return QMatrix._wrap(out)


def vstack(mats: Sequence[QMatrix], cols: int | None = None) -> QMatrix:
    mats = list(mats)
    if not mats:
        return QMatrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("column mismatch in vstack")
    ents = []
    for m in mats:
        ents.extend(m._m.entries())
    return QMatrix._wrap(flint.fmpq_mat(sum(m.rows for m in mats), c, ents))


def block_diag(mats: Sequence[QMatrix]) -> QMatrix:
    mats = list(mats)
    out = flint.fmpq_mat(sum(m.rows for m in mats), sum(m.cols for m in mats))
    r0 = c0 = 0
    for m in mats:
        mm = m._m
        for i in range(m.rows):
            for j in range(m.cols):
                e = mm[i, j]
                if e != 0:
                    out[r0 + i, c0 + j] = e
        r0 += m.rows
        c0 += m.cols
    return QMatrix._wrap(out)


def _pivots(r: flint.fmpq_mat, rank_: int) -> list[int]:
    piv = []
    ncols = r.ncols()
    j = 0
    for i in range(rank_):
        while r[i, j] == 0:
            j += 1
        piv.append(j)
        j += 1
        if j > ncols:
            break
    return piv


def rref_rank(m: QMatrix) -> tuple[QMatrix, int]:
    """Reduced row echelon form and rank."""
    if m.rows == 0 or m.cols == 0:
        return QMatrix.zeros(m.rows, m.cols), 0
    r, k = m._m.rref()
    return QMatrix._wrap(r), int(k)


def rank(m: QMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return int(m._m.rank())


class Subspace:
    """Subspace of Q^n given by an RREF basis (rows).

    Because the basis is reduced, the coordinates of a member vector are
    its entries at the pivot columns.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: QMatrix, pivots: list[int]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def spanned_by(cls, rows: QMatrix) -> "Subspace":
        n = rows.cols
        if rows.rows == 0 or n == 0:
            return cls(n, QMatrix.zeros(0, n), [])
        r, k = rows._m.rref()
        k = int(k)
        piv = _pivots(r, k)
        basis = QMatrix(k, n, r.entries()[: k * n])
        return cls(n, basis, piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, QMatrix.zeros(0, n), [])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[list]:
        return [self.basis.row_vector(i) for i in range(self.dim)]

    def coords(self, vec: Sequence) -> list:
        """Coordinates of a vector known to lie in the subspace."""
        return [to_fmpq(vec[p]) for p in self.pivots]

    def combine(self, coords: Sequence) -> list:
        if not self.pivots:
            return [flint.fmpq(0)] * self.ambient_dim
        c = flint.fmpq_mat(1, len(coords), [to_fmpq(x) for x in coords])
        return (c * self.basis._m).entries()

    def contains(self, vec: Sequence) -> bool:
        vec = [to_fmpq(x) for x in vec]
        return all(e == 0 for e in _reduce(vec, self))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _reduce(vec: list, sub: Subspace) -> list:
    """vec minus its projection along the RREF rows (kills pivot entries)."""
    if not sub.pivots:
        return list(vec)
    c = flint.fmpq_mat(1, len(sub.pivots), [vec[p] for p in sub.pivots])
    proj = (c * sub.basis._m).entries()
    return [a - b for a, b in zip(vec, proj)]


class QuotientSpace:
    """Q^n / S with the complement spanned by unit vectors at the non-pivot columns of S."""

    __slots__ = ("sub", "free")

    def __init__(self, sub: Subspace):
        self.sub = sub
        piv = set(sub.pivots)
        self.free = [j for j in range(sub.ambient_dim) if j not in piv]

    @property
    def ambient_dim(self) -> int:
        return self.sub.ambient_dim

    @property
    def dim(self) -> int:
        return len(self.free)

    def coords(self, vec: Sequence) -> list:
        r = _reduce([to_fmpq(x) for x in vec], self.sub)
        return [r[j] for j in self.free]

    def representative(self, coords: Sequence) -> list:
        v = [flint.fmpq(0)] * self.sub.ambient_dim
        for j, c in zip(self.free, coords):
            v[j] = to_fmpq(c)
        return v


def row_space(m: QMatrix) -> Subspace:
    return Subspace.spanned_by(m)


def kernel_basis(m: QMatrix) -> Subspace:
    """Basis of {x : m x = 0}, returned in reduced form."""
    n = m.cols
    if n == 0:
        return Subspace.zero(0)
    if m.rows == 0:
        return Subspace(n, QMatrix.identity(n), list(range(n)))
    r, k = m._m.rref()
    k = int(k)
    piv = _pivots(r, k)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    vecs = []
    for f in free:
        v = [flint.fmpq(0)] * n
        v[f] = flint.fmpq(1)
        for i, p in enumerate(piv):
            v[p] = -r[i, f]
        vecs.append(v)
    if not vecs:
        return Subspace.zero(n)
    return Subspace.spanned_by(QMatrix(len(vecs), n, [e for v in vecs for e in v]))


def solve_linear(m: QMatrix, b: Sequence) -> list | None:
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    n = m.cols
    b = [to_fmpq(x) for x in b]
    if m.rows == 0:
        return [flint.fmpq(0)] * n
    aug = flint.fmpq_mat(m.rows, n + 1)
    mm = m._m
    for i in range(m.rows):
        for j in range(n):
            e = mm[i, j]
            if e != 0:
                aug[i, j] = e
        aug[i, n] = b[i]
    r, k = aug.rref()
    k = int(k)
    piv = _pivots(r, k)
    if piv and piv[-1] == n:
        return None
    x = [flint.fmpq(0)] * n
    for i, p in enumerate(piv):
        x[p] = r[i, n]
    return x


def solve_matrix(m: QMatrix, rhs: QMatrix) -> QMatrix | None:
    """Some X with m X = rhs (column by column), or None."""
    cols = []
    for j in range(rhs.cols):
        x = solve_linear(m, rhs.column_vector(j))
        if x is None:
            return None
        cols.append(x)
    return QMatrix(m.cols, rhs.cols, [cols[j][i] for i in range(m.cols) for j in range(rhs.cols)])


class CoordinateBasis:
    """A fixed (not necessarily reduced) basis with fast coordinate lookup.

    Coordinates are read off a set of pivot columns where the basis is
    invertible, so ``coords`` is a single small product.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_inv")

    def __init__(self, basis: QMatrix):
        self.ambient_dim = basis.cols
        k = basis.rows
        if k == 0:
            self.basis, self.pivots, self._inv = basis, [], QMatrix.zeros(0, 0)
            return
        sub = Subspace.spanned_by(basis)
        if sub.dim != k:
            raise ValueError("basis rows are linearly dependent")
        self.basis = basis
        self.pivots = sub.pivots
        self._inv = basis.submatrix(range(k), sub.pivots).inverse()

    @property
    def dim(self) -> int:
        return self.basis.rows

    def coords(self, vec: Sequence) -> list:
        if not self.pivots:
            return []
        row = QMatrix.row([vec[p] for p in self.pivots])
        return (row @ self._inv).flat()

    def combine(self, coords: Sequence) -> list:
        if not self.pivots:
            return [flint.fmpq(0)] * self.ambient_dim
        return (QMatrix.row(coords) @ self.basis).flat()
