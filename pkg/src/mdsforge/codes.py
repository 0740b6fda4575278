"""Linear codes over finite fields: duals, systematic forms, distances,
MDS checks, Schur products and puncturing."""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    LengthMismatchError,
    NotInformationSetError,
    ParseError,
    SingularMatrixError,
    TooLargeToEnumerateError,
)
from .gf import Fe, Field
from .matfield import Mat, minors_all_nonzero, rref_values

ENUMERATION_LIMIT = 10**6


class LinearCode:
    """Row space of a full-rank k x n generator matrix.

    Equality is equality of row spaces.  A code with ``k == 0`` (the zero
    code, e.g. the dual of the full space) is allowed and flagged by
    :attr:`degenerate`.
    """

    __slots__ = ("gen",)

    def __init__(self, gen: Mat):
        if gen.nrows and gen.rank() != gen.nrows:
            raise ValueError(f"generator has rank {gen.rank()} < {gen.nrows} rows")
        self.gen = gen

    @classmethod
    def from_span(cls, mat: Mat) -> "LinearCode":
        """Code spanned by the rows of ``mat`` (which may be dependent)."""
        if mat.nrows == 0:
            return cls(mat)
        rows, piv = rref_values(mat.field, mat.values())
        return cls(Mat.from_values(mat.field, rows[:len(piv)], mat.ncols))

    @property
    def field(self) -> Field:
        return self.gen.field

    @property
    def n(self) -> int:
        return self.gen.ncols

    @property
    def k(self) -> int:
        return self.gen.nrows

    @property
    def degenerate(self) -> bool:
        return self.k == 0

    def rref(self) -> Mat:
        return self.gen.rref()[0]

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field == other.field and self.n == other.n and self.k == other.k
                and (self.k == 0 or self.rref() == other.rref()))

    def __hash__(self):
        return hash((self.field, self.n, self.k, self.rref() if self.k else None))

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}] over F_{self.field.q}"

    def contains(self, word: Sequence) -> bool:
        vec = Mat(self.field, [word])
        return Mat.vstack(self.gen, vec).rank() == self.k

    def to_json(self) -> dict:
        return {"field": self.field.spec, "n": self.n, "k": self.k,
                "generator": self.gen.to_json()}

    @classmethod
    def from_json(cls, obj) -> "LinearCode":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            field = Field.parse(obj["field"])
            gen = Mat.from_json(obj["generator"], field)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad code json: {exc}") from exc
        if gen.ncols != obj.get("n", gen.ncols) or gen.nrows != obj.get("k", gen.nrows):
            raise ParseError("declared n/k disagree with the generator shape")
        return cls(gen)


def dual(c: LinearCode) -> LinearCode:
    """The orthogonal complement under the standard bilinear form."""
    if c.k == 0:
        return LinearCode(Mat.identity(c.field, c.n))
    return LinearCode(c.gen.nullspace())


def systematic_form(c: LinearCode, info: Sequence[int] | None = None):
    """Return ``(perm, A)`` with ``(I_k | A)`` generating ``c`` after permuting
    its columns by ``perm`` (``info`` first, then the rest in order).

    Without ``info`` the lexicographically first information set is used,
    which is the set of rref pivot columns (so the first k columns whenever
    they are independent).
    """
    k, n = c.k, c.n
    if info is None:
        rows, piv = rref_values(c.field, c.gen.values())
        rest = [j for j in range(n) if j not in set(piv)]
        a = Mat.from_values(c.field, [[r[j] for j in rest] for r in rows[:k]], len(rest))
        return list(piv) + rest, a
    info = list(info)
    if len(info) != k or len(set(info)) != k:
        raise NotInformationSetError(f"{info} is not a {k}-subset")
    rest = [j for j in range(n) if j not in set(info)]
    try:
        a = c.gen.columns(info).solve(c.gen.columns(rest))
    except SingularMatrixError as exc:
        raise NotInformationSetError(f"columns {info} are linearly dependent") from exc
    return info + rest, a


def min_distance(c: LinearCode, limit: int = ENUMERATION_LIMIT) -> int:
    """Minimum Hamming weight by exhaustive enumeration (vectorised).

    Only codewords whose first nonzero message coordinate is 1 are visited;
    scalar multiples have the same weight.
    """
    F, k, n = c.field, c.k, c.n
    if k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    if F.q**k > limit:
        raise TooLargeToEnumerateError(
            f"q^k = {F.q}^{k} exceeds {limit}; use is_mds instead")
    G = c.gen.data
    best = n
    for j in range(k):
        m = k - 1 - j
        words = np.repeat(G[j][None, :], F.q**m, axis=0)
        if m:
            msgs = np.stack(np.unravel_index(np.arange(F.q**m), (F.q,) * m), axis=1)
            for i in range(m):
                words = F.vadd(words, F.vmul(msgs[:, i:i + 1], G[j + 1 + i][None, :]))
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def is_mds(c: LinearCode):
    """MDS test through the minors of a systematic block.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness names
    the information set used, the vanishing minor in original column
    indices, and a k-subset of columns that is *not* an information set.
    """
    if c.k in (0, c.n):
        return True, None
    perm, a = systematic_form(c)
    ok, bad = minors_all_nonzero(a)
    if ok:
        return True, None
    k = c.k
    rows, cols = bad
    info = perm[:k]
    minor_rows = [info[i] for i in rows]
    minor_cols = [perm[k + j] for j in cols]
    dependent = sorted((set(info) - set(minor_rows)) | set(minor_cols))
    return False, {"info": info, "minor_rows": minor_rows, "minor_cols": minor_cols,
                   "dependent_set": dependent}


def _products(a: Mat, b: Mat, symmetric: bool) -> tuple[np.ndarray, list[tuple[int, int]]]:
    F = a.field
    pairs = [(i, j) for i in range(a.nrows)
             for j in range(i if symmetric else 0, b.nrows)]
    if not pairs:
        return np.zeros((0, a.ncols), dtype=np.int64), pairs
    left = a.data[[i for i, _ in pairs]]
    right = b.data[[j for _, j in pairs]]
    return F.vmul(left, right), pairs


def _check_pair(c: LinearCode, d: LinearCode):
    if c.field != d.field:
        raise LengthMismatchError("codes over different fields")
    if c.n != d.n:
        raise LengthMismatchError(f"lengths {c.n} and {d.n} differ")


def schur_product(c: LinearCode, d: LinearCode) -> LinearCode:
    """C*D, spanned by the coordinatewise products of generator rows."""
    _check_pair(c, d)
    prods, _ = _products(c.gen, d.gen, symmetric=c is d)
    return LinearCode.from_span(Mat.from_values(c.field, prods, c.n))


def schur_square(c: LinearCode) -> LinearCode:
    return schur_product(c, c)


def square_dim(c: LinearCode) -> int:
    """dim(C^2): rank of the k(k+1)/2 products g_i * g_j with i <= j."""
    prods, _ = _products(c.gen, c.gen, symmetric=True)
    return Mat.from_values(c.field, prods, c.n).rank()


def independent_square_products(c: LinearCode) -> list[tuple[int, int]]:
    """Index pairs (i, j), i <= j, whose products g_i * g_j form a basis of C^2.

    The pairs are the greedy (first-available) choice, so the list is
    reproducible and its length equals :func:`square_dim`.
    """
    prods, pairs = _products(c.gen, c.gen, symmetric=True)
    if not pairs:
        return []
    cols = Mat.from_values(c.field, prods, c.n).T
    _, piv = rref_values(c.field, cols.values())
    return [pairs[p] for p in piv]


def products_rank(c: LinearCode, pairs: Sequence[Sequence[int]]) -> int:
    """Rank of the chosen products g_i * g_j (replays a Schur witness)."""
    if not pairs:
        return 0
    F = c.field
    rows = F.vmul(c.gen.data[[p[0] for p in pairs]], c.gen.data[[p[1] for p in pairs]])
    return Mat.from_values(F, rows, c.n).rank()


def puncture(c: LinearCode, i: int) -> LinearCode:
    """Delete coordinate ``i``; the dimension drops by one if a basis collapses."""
    if c.n < 2:
        raise DimensionMismatchError("cannot puncture a code of length 1")
    keep = [j for j in range(c.n) if j != i]
    return LinearCode.from_span(c.gen.columns(keep))


def systematic_generator(c: LinearCode, info: Sequence[int] | None = None) -> Mat:
    """``(I_k | A)`` in the permuted coordinate order of :func:`systematic_form`."""
    _, a = systematic_form(c, info)
    return Mat.hstack(Mat.identity(c.field, c.k), a)


def weight(word: Sequence[Fe]) -> int:
    return sum(1 for x in word if x)
