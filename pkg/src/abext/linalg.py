"""Exact integer linear algebra.

Everything here works over Python integers, so there is no overflow no
matter how large intermediate coefficients become.  Lattices are always
spanned by matrix *columns*.

The main entry points are :func:`hnf` (column Hermite form), :func:`snf`
(Smith form with both transforms), :func:`solve_integer`,
:func:`kernel_basis` and :func:`lattice_member`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Raised when matrix/vector shapes do not fit together."""


class IntMatrix:
    """Immutable dense integer matrix.

    Zero-dimensional shapes are legal: ``IntMatrix([], cols=3)`` is a 0x3
    matrix and ``IntMatrix.zeros(2, 0)`` a 2x0 one.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Iterable[int]] = (), cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionError(f"ragged matrix: expected {cols} columns, got {len(row)}")
        self.rows = len(data)
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _make(cls, data: Iterable[Iterable[int]], cols: int) -> "IntMatrix":
        # internal fast path: entries are already ints and rows have length cols
        m = object.__new__(cls)
        m._data = tuple(tuple(r) for r in data)
        m.rows = len(m._data)
        m.cols = cols
        m._hash = None
        return m

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._make([(0,) * cols] * rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._make([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        for c in columns:
            if len(c) != rows:
                raise DimensionError(f"column of length {len(c)}, expected {rows}")
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def column_vector(cls, v: Sequence[int]) -> "IntMatrix":
        return cls([[x] for x in v], cols=1)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            out[i][i] = d
        return cls(out, cols=cols)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix._make([[r[j] for j in idx] for r in self._data], len(idx))

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix._make([self._data[i] for i in idx], self.cols)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix._make([r[c0:c1] for r in self._data[r0:r1]], c1 - c0)

    # -- arithmetic ---------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._make([self.col(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return IntMatrix._make(
            [[sum(a * b for a, b in zip(r, c) if a) for c in ocols] for r in self._data], other.cols
        )

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for matrix {self.shape}")
        return [sum(a * b for a, b in zip(r, v)) for r in self._data]

    def _check_same(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix._make(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix._make(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._make([[-a for a in r] for r in self._data], self.cols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix._make([[k * a for a in r] for r in self._data], self.cols)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        return hstack(self, *others)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        return vstack(self, *others)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix.zeros({self.rows}, {self.cols})"
        return f"IntMatrix({self.tolist()!r})"


def hstack(*mats: IntMatrix) -> IntMatrix:
    if not mats:
        raise DimensionError("hstack of nothing")
    rows = mats[0].rows
    for m in mats:
        if m.rows != rows:
            raise DimensionError("hstack: row counts differ")
    return IntMatrix._make(
        [sum((m.row(i) for m in mats), ()) for i in range(rows)], sum(m.cols for m in mats)
    )


def vstack(*mats: IntMatrix) -> IntMatrix:
    if not mats:
        raise DimensionError("vstack of nothing")
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise DimensionError("vstack: column counts differ")
    return IntMatrix._make([r for m in mats for r in m], cols)


def block_diag(*mats: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m):
            out[r0 + i][c0 : c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return IntMatrix._make(out, cols)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product; with row-major vectorisation vec(L X R) = kron(L, R.T) vec(X)."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[0] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a[i, j]
            if not x:
                continue
            for k in range(b.rows):
                brow = b.row(k)
                orow = out[i * b.rows + k]
                base = j * b.cols
                for l, y in enumerate(brow):
                    if y:
                        orow[base + l] = x * y
    return IntMatrix._make(out, cols)


def vec(m: IntMatrix) -> list[int]:
    """Row-major flattening."""
    return [x for r in m for x in r]


def unvec(v: Sequence[int], rows: int, cols: int) -> IntMatrix:
    if len(v) != rows * cols:
        raise DimensionError(f"cannot reshape length {len(v)} to {rows}x{cols}")
    return IntMatrix._make([v[i * cols : (i + 1) * cols] for i in range(rows)], cols)


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = m.rows
    if n != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and abs(det(m)) == 1


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix (Gauss-Jordan over the rationals)."""
    n = m.rows
    if n != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    out = [[x for x in r[n:]] for r in a]
    if any(x.denominator != 1 for r in out for x in r):
        raise ValueError("matrix is not unimodular")
    return IntMatrix._make([[int(x) for x in r] for r in out], n)


# ---------------------------------------------------------------------------
# Hermite normal form


@dataclass(frozen=True)
class HNFResult:
    H: IntMatrix
    U: IntMatrix
    rank: int


def _col_axpy(A: list[list[int]], dst: int, src: int, q: int) -> None:
    # column dst -= q * column src
    for r in A:
        if r[src]:
            r[dst] -= q * r[src]


def _col_swap(A: list[list[int]], a: int, b: int) -> None:
    for r in A:
        r[a], r[b] = r[b], r[a]


def _col_neg(A: list[list[int]], a: int) -> None:
    for r in A:
        r[a] = -r[a]


def hnf(M: IntMatrix) -> HNFResult:
    """Column Hermite normal form ``M @ U == H``.

    ``H`` is lower echelon: the pivot of column ``k`` sits in row ``r_k``
    with ``r_0 < r_1 < ...``, pivots are positive, the entries of a pivot
    row in earlier columns lie in ``[0, pivot)``, and zero columns come last.
    The form depends only on the column lattice of ``M``.
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = IntMatrix.identity(n).tolist()
    k = 0
    for i in range(m):
        if k == n:
            break
        row = A[i]
        while True:
            best = -1
            for j in range(k, n):
                if row[j] and (best < 0 or abs(row[j]) < abs(row[best])):
                    best = j
            if best < 0:
                break
            if best != k:
                _col_swap(A, k, best)
                _col_swap(U, k, best)
            p = row[k]
            clean = True
            for j in range(k + 1, n):
                if row[j]:
                    q = row[j] // p
                    _col_axpy(A, j, k, q)
                    _col_axpy(U, j, k, q)
                    if row[j]:
                        clean = False
            if clean:
                break
        if best < 0 and row[k] == 0:
            continue
        if row[k] < 0:
            _col_neg(A, k)
            _col_neg(U, k)
        p = row[k]
        for j in range(k):
            q = row[j] // p
            if q:
                _col_axpy(A, j, k, q)
                _col_axpy(U, j, k, q)
        k += 1
    return HNFResult(IntMatrix._make(A, n), IntMatrix._make(U, n), k)


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """Canonical basis (nonzero HNF columns) of the column lattice of ``M``."""
    res = hnf(M)
    return res.H.select_columns(range(res.rank))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def snf(M: IntMatrix) -> SNFResult:
    """Smith normal form ``U @ M @ V == D`` with ``U``, ``V`` unimodular.

    Pivots are chosen with minimal absolute value, ties broken row-major,
    so the transforms are reproducible.  ``U_inv`` is the inverse of ``U``,
    maintained alongside it.
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = IntMatrix.identity(m).tolist()
    Ui = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def row_swap(a: int, b: int) -> None:
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        _col_swap(Ui, a, b)

    def row_axpy(dst: int, src: int, q: int) -> None:
        # row dst -= q * row src
        ra, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                ra[j] -= q * rs[j]
        ua, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ua[j] -= q * us[j]
        # inverse: column src += q * column dst
        _col_axpy(Ui, src, dst, -q)

    def col_swap(a: int, b: int) -> None:
        _col_swap(A, a, b)
        _col_swap(V, a, b)

    def col_axpy(dst: int, src: int, q: int) -> None:
        _col_axpy(A, dst, src, q)
        _col_axpy(V, dst, src, q)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            r = A[i]
            for j in range(t, n):
                if r[j] and (best is None or abs(r[j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, A[i][t] // p)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, A[t][j] // p)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                bi, bj, bv = t, t, abs(p)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < bv:
                        bi, bj, bv = i, t, abs(A[i][t])
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < bv:
                        bi, bj, bv = t, j, abs(A[t][j])
                if bi != t:
                    row_swap(t, bi)
                if bj != t:
                    col_swap(t, bj)
                continue
            bad = None
            for i in range(t + 1, m):
                r = A[i]
                for j in range(t + 1, n):
                    if r[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            _col_neg(Ui, t)
    return SNFResult(
        IntMatrix._make(A, n), IntMatrix._make(U, m), IntMatrix._make(V, n), IntMatrix._make(Ui, m)
    )


# ---------------------------------------------------------------------------
# Solving and lattices


def _hnf_solve(res: HNFResult, b: Sequence[int]) -> list[int] | None:
    H, U = res.H, res.U
    y: list[int] = []
    k = 0
    r = res.rank
    for i in range(H.rows):
        row = H.row(i)
        acc = sum(row[j] * y[j] for j in range(k))
        if k < r and row[k]:
            q, rem = divmod(b[i] - acc, row[k])
            if rem:
                return None
            y.append(q)
            k += 1
        elif acc != b[i]:
            return None
    y.extend([0] * (H.cols - k))
    return U.apply(y)


def solve_integer(M: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """An integer ``x`` with ``M x == b``, or ``None`` if ``b`` is not in the column lattice."""
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for a matrix with {M.rows} rows")
    return _hnf_solve(hnf(M), b)


def lattice_member(M: IntMatrix, v: Sequence[int]) -> bool:
    return solve_integer(M, v) is not None


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel ``{x : M x = 0}``."""
    res = hnf(M)
    return res.U.select_columns(range(res.rank, M.cols))


def lattice_contains(big: IntMatrix, small: IntMatrix) -> bool:
    """True iff every column of ``small`` lies in the column lattice of ``big``."""
    if big.rows != small.rows:
        raise DimensionError("lattices live in different ambient spaces")
    res = hnf(big)
    return all(_hnf_solve(res, c) is not None for c in small.columns())
