"""Dense exact linear algebra over a :class:`~mdsforge.gf.Field`.

Matrices hold encoded field values in an ``int64`` numpy array; elimination
runs on plain Python lists because the matrices here are tiny (a few dozen
rows at most) and list arithmetic beats numpy dispatch at that size.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicatePointError,
    FieldMismatchError,
    NotSquareError,
    ParseError,
    SingularMatrixError,
)
from .gf import Fe, Field


def rref_values(field: Field, rows: list[list[int]], ncols: int | None = None):
    """Reduced row-echelon form of ``rows`` (modified in place).

    Pivots are taken as the first nonzero entry scanning columns left to
    right and rows top to bottom.  Only the first ``ncols`` columns are
    eligible as pivots, which lets callers reduce augmented matrices.

    Returns ``(rows, pivot_columns)``.
    """
    m = len(rows)
    width = len(rows[0]) if rows else 0
    if ncols is None:
        ncols = width
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][col])
        if inv != 1:
            rows[r] = field.scale(inv, rows[r])
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i][col]:
                rows[i] = field.axpy(rows[i], rows[i][col], prow)
        pivots.append(col)
        r += 1
    return rows, pivots


def det_values(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """Determinant by forward elimination; ``rows`` is not modified."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return field.sub(field.mul(rows[0][0], rows[1][1]), field.mul(rows[0][1], rows[1][0]))
    a = [list(r) for r in rows]
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        pv = a[col][col]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        prow = a[col]
        for i in range(col + 1, n):
            if a[i][col]:
                a[i] = field.axpy(a[i], field.mul(a[i][col], inv), prow)
    return det


class Mat:
    """Immutable dense matrix over a finite field.

    Entries may be given as :class:`Fe`, Python ints (prime-subfield
    constants) or element text.  Use :meth:`from_values` to wrap already
    encoded integers.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        vals = [[field(x).value for x in row] for row in rows]
        self.field = field
        self.data = _as_array(vals, ncols)

    @classmethod
    def from_values(cls, field: Field, values, ncols: int | None = None) -> "Mat":
        out = cls.__new__(cls)
        out.field = field
        out.data = _as_array(values, ncols)
        return out

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls.from_values(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls.from_values(field, np.zeros((rows, cols), dtype=np.int64))

    # -- shape and access ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def ncols(self) -> int:
        return self.data.shape[1]

    def values(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, idx: tuple[int, int]) -> Fe:
        i, j = idx
        return Fe(self.field, int(self.data[i, j]))

    def row(self, i: int) -> list[Fe]:
        return [Fe(self.field, int(v)) for v in self.data[i]]

    def col(self, j: int) -> list[Fe]:
        return [Fe(self.field, int(v)) for v in self.data[:, j]]

    def tolist(self) -> list[list[Fe]]:
        return [[Fe(self.field, v) for v in r] for r in self.values()]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat.from_values(self.field, self.data[np.ix_(list(rows), list(cols))],
                               len(cols))

    def columns(self, cols: Sequence[int]) -> "Mat":
        return Mat.from_values(self.field, self.data[:, list(cols)], len(cols))

    @property
    def T(self) -> "Mat":
        return Mat.from_values(self.field, self.data.T.copy())

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.shape == other.shape and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.tolist())
        return f"Mat[{self.nrows}x{self.ncols} over F_{self.field.q}]({body})"

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "Mat"):
        if other.field != self.field:
            raise FieldMismatchError("matrices over different fields")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} + {other.shape}")
        return Mat.from_values(self.field, self.field.vadd(self.data, other.data))

    def __neg__(self) -> "Mat":
        F = self.field
        return Mat.from_values(F, [[F.neg(v) for v in r] for r in self.values()], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"{self.shape} @ {other.shape}")
        F = self.field
        if F.is_prime_field:
            return Mat.from_values(F, (self.data @ other.data) % F.p, other.ncols)
        cols = other.data.T.tolist()
        out = [[F.dot(r, c) for c in cols] for r in self.values()]
        return Mat.from_values(F, out, other.ncols)

    def scale(self, s) -> "Mat":
        F = self.field
        sv = F(s).value
        return Mat.from_values(F, [F.scale(sv, r) for r in self.values()], self.ncols)

    def scale_columns(self, factors: Sequence) -> "Mat":
        F = self.field
        fs = [F(f).value for f in factors]
        return Mat.from_values(
            F, [[F.mul(x, f) for x, f in zip(r, fs)] for r in self.values()], self.ncols)

    def scale_rows(self, factors: Sequence) -> "Mat":
        F = self.field
        fs = [F(f).value for f in factors]
        return Mat.from_values(F, [F.scale(f, r) for f, r in zip(fs, self.values())], self.ncols)

    @staticmethod
    def hstack(*mats: "Mat") -> "Mat":
        for m in mats[1:]:
            mats[0]._check(m)
        return Mat.from_values(mats[0].field, np.hstack([m.data for m in mats]))

    @staticmethod
    def vstack(*mats: "Mat") -> "Mat":
        for m in mats[1:]:
            mats[0]._check(m)
        return Mat.from_values(mats[0].field, np.vstack([m.data for m in mats]))

    # -- elimination -------------------------------------------------------------

    def rref(self) -> tuple["Mat", list[int]]:
        rows, piv = rref_values(self.field, self.values(), self.ncols)
        return Mat.from_values(self.field, rows, self.ncols), piv

    def rank(self) -> int:
        if self.nrows == 0:
            return 0
        return len(rref_values(self.field, self.values())[1])

    def det(self) -> Fe:
        if self.nrows != self.ncols:
            raise NotSquareError(f"determinant of a {self.nrows}x{self.ncols} matrix")
        return Fe(self.field, det_values(self.field, self.values()))

    def inverse(self) -> "Mat":
        n = self.nrows
        if n != self.ncols:
            raise NotSquareError(f"inverse of a {self.nrows}x{self.ncols} matrix")
        eye = np.eye(n, dtype=np.int64)
        aug = np.hstack([self.data, eye]).tolist()
        rows, piv = rref_values(self.field, aug, n)
        if len(piv) < n:
            raise SingularMatrixError("matrix is not invertible")
        return Mat.from_values(self.field, [r[n:] for r in rows], n)

    def solve(self, rhs: "Mat") -> "Mat":
        """The unique X with ``self @ X == rhs`` for square invertible ``self``."""
        self._check(rhs)
        n = self.nrows
        if n != self.ncols:
            raise NotSquareError("solve needs a square system")
        if rhs.nrows != n:
            raise DimensionMismatchError(f"{self.shape} vs rhs {rhs.shape}")
        aug = np.hstack([self.data, rhs.data]).tolist()
        rows, piv = rref_values(self.field, aug, n)
        if len(piv) < n:
            raise SingularMatrixError("system matrix is singular")
        return Mat.from_values(self.field, [r[n:] for r in rows], rhs.ncols)

    def nullspace(self) -> "Mat":
        """Basis (as rows) of {x : self @ x = 0}, read off the rref."""
        F, n = self.field, self.ncols
        rows, piv = rref_values(F, self.values(), n) if self.nrows else ([], [])
        free = [j for j in range(n) if j not in set(piv)]
        basis = []
        for f in free:
            vec = [0] * n
            vec[f] = 1
            for r, pc in enumerate(piv):
                vec[pc] = F.neg(rows[r][f])
            basis.append(vec)
        return Mat.from_values(F, basis, n)

    # -- text / json -------------------------------------------------------------

    def to_text(self) -> str:
        fmt = self.field.format_value
        return "\n".join(" ".join(fmt(v) for v in r) for r in self.values())

    @classmethod
    def from_text(cls, field: Field, text: str) -> "Mat":
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        return cls(field, rows)

    def to_json(self) -> dict:
        fmt = self.field.format_value
        return {"field": self.field.spec, "rows": [[fmt(v) for v in r] for r in self.values()]}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "Mat":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            F = field or Field.parse(obj["field"])
            return cls(F, [[F.parse_element(x) for x in r] for r in obj["rows"]])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad matrix json: {exc}") from exc


def _as_array(values, ncols: int | None) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64)
    if arr.size == 0:
        rows = arr.shape[0] if arr.ndim >= 1 else 0
        return np.zeros((rows, ncols or (arr.shape[1] if arr.ndim == 2 else 0)), dtype=np.int64)
    if arr.ndim != 2:
        raise DimensionMismatchError("matrix rows must all have the same length")
    return arr


def vandermonde(points: Sequence[Fe], k: int) -> Mat:
    """k x n matrix with entry (i, j) = points[j]**i."""
    if not points:
        raise ValueError("need at least one point")
    F = points[0].field
    vals = [F(a).value for a in points]
    if len(set(vals)) != len(vals):
        raise DuplicatePointError("Vandermonde points must be distinct")
    rows = [[1] * len(vals)]
    for _ in range(1, k):
        rows.append([F.mul(x, a) for x, a in zip(rows[-1], vals)])
    return Mat.from_values(F, rows[:k], len(vals))


def minors_all_nonzero(a: Mat):
    """Scan every square submatrix of ``a`` for a vanishing determinant.

    Sizes are visited in increasing order and, within a size, row subsets and
    then column subsets lexicographically; the first zero minor is returned
    as ``(False, (rows, cols))`` with 0-based index tuples.  ``(True, None)``
    means every minor is nonzero.
    """
    F = a.field
    vals = a.values()
    r, c = a.shape
    for i in range(1, min(r, c) + 1):
        for rows in combinations(range(r), i):
            sub_rows = [vals[x] for x in rows]
            for cols in combinations(range(c), i):
                block = [[row[y] for y in cols] for row in sub_rows]
                if det_values(F, block) == 0:
                    return False, (rows, cols)
    return True, None
