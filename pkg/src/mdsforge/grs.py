"""Generalized Reed-Solomon codes, Cauchy matrices and the GRS recognizer.

A systematic block in *normal form* is the extended Cauchy matrix

    row 1:        d_j
    row 2:        d_j / y_j
    row i >= 3:   c_{i-2} d_j / (x_{i-2} + y_j)

which is exactly a :class:`CauchyParams` with the extended row first
(``c_inf = 1``) followed by a Cauchy row with ``c = 1, x = 0``.  Seen this way
the usual side conditions (y_j nonzero, x_i nonzero and distinct) are just the
ordinary Cauchy conditions on the combined parameter lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .codes import (
    LinearCode,
    dual,
    independent_square_products,
    is_mds,
    min_distance,
    square_dim,
    systematic_form,
)
from .errors import (
    ConsistencyError,
    InvariantViolation,
    MdsForgeError,
    ParseError,
    TooLargeToEnumerateError,
    TooSmallError,
)
from .gf import Fe, Field
from .matfield import Mat


class _Infinity:
    """The point at infinity; f(inf) is the coefficient of x^(k-1)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _point_text(a) -> str:
    return "inf" if a is INF else a.to_text()


def _parse_point(field: Field, tok):
    if isinstance(tok, str) and tok.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    return field.parse_element(tok) if isinstance(tok, str) else field(tok)


@dataclass(frozen=True)
class GrsParams:
    """Evaluation points (Fe or :data:`INF`), column multipliers and dimension."""

    alpha: tuple
    v: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "v", tuple(self.v))
        n = len(self.alpha)
        if len(self.v) != n:
            raise InvariantViolation(f"{n} points but {len(self.v)} multipliers")
        if not 1 <= self.k < n:
            raise InvariantViolation(f"need 1 <= k < n, got k={self.k}, n={n}")
        if any(not x for x in self.v):
            raise InvariantViolation("column multipliers must be nonzero")
        finite = [a for a in self.alpha if a is not INF]
        if len(set(finite)) != len(finite) or n - len(finite) > 1:
            raise InvariantViolation("evaluation points must be distinct (at most one inf)")

    @property
    def field(self) -> Field:
        return self.v[0].field

    @property
    def n(self) -> int:
        return len(self.alpha)

    @classmethod
    def rs(cls, alpha: Sequence, k: int) -> "GrsParams":
        """Reed-Solomon case, all multipliers one."""
        fe = next(a for a in alpha if a is not INF)
        return cls(tuple(alpha), (fe.field.one,) * len(alpha), k)

    def to_json(self) -> dict:
        return {"field": self.field.spec, "alpha": [_point_text(a) for a in self.alpha],
                "v": [x.to_text() for x in self.v], "k": self.k}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "GrsParams":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            F = field or Field.parse(obj["field"])
            alpha = tuple(_parse_point(F, t) for t in obj["alpha"])
            v = tuple(F.parse_element(t) if isinstance(t, str) else F(t)
                      for t in obj.get("v", [1] * len(alpha)))
            return cls(alpha, v, int(obj["k"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad GRS params: {exc}") from exc


def grs_generator(p: GrsParams) -> LinearCode:
    """Rows v_j * alpha_j^i (i < k); the inf column is (0, ..., 0, v_j)^T."""
    F, k = p.field, p.k
    cols = []
    for a, v in zip(p.alpha, p.v):
        if a is INF:
            col = [0] * (k - 1) + [v.value]
        else:
            col, x = [], v.value
            for _ in range(k):
                col.append(x)
                x = F.mul(x, a.value)
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    return LinearCode(Mat.from_values(F, rows, p.n))


# -- Cauchy matrices ------------------------------------------------------------

@dataclass(frozen=True)
class CauchyParams:
    """(Extended) Cauchy matrix parameters.

    The Cauchy rows are ``c[i] * d[j] / (x[i] + y[j])``.  When
    ``extended_row`` is set, a row ``c_inf * d`` is inserted at that 0-based
    position, so the matrix has ``len(c) + 1`` rows.
    """

    c: tuple
    d: tuple
    x: tuple
    y: tuple
    extended_row: int | None = None
    c_inf: Fe | None = None

    def __post_init__(self):
        for name in ("c", "d", "x", "y"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.c) != len(self.x):
            raise InvariantViolation("c and x must have equal length")
        if not self.d or len(self.d) != len(self.y):
            raise InvariantViolation("d and y must have equal, positive length")
        if self.extended_row is not None:
            if self.c_inf is None or not self.c_inf:
                raise InvariantViolation("extended row needs a nonzero c_inf")
            if not 0 <= self.extended_row <= len(self.c):
                raise InvariantViolation(f"extended_row {self.extended_row} out of range")
        elif not self.c:
            raise InvariantViolation("a Cauchy matrix needs at least one row")
        if any(not c for c in self.c) or any(not d for d in self.d):
            raise InvariantViolation("multipliers c_i, d_j must be nonzero")
        if len(set(self.x)) != len(self.x):
            raise InvariantViolation("x_i must be distinct")
        if len(set(self.y)) != len(self.y):
            raise InvariantViolation("y_j must be distinct")
        for i, xi in enumerate(self.x):
            for j, yj in enumerate(self.y):
                if not xi + yj:
                    raise InvariantViolation(f"x_{i} + y_{j} = 0")

    @classmethod
    def normal_form(cls, d: Sequence[Fe], y: Sequence[Fe],
                    c: Sequence[Fe] = (), x: Sequence[Fe] = ()) -> "CauchyParams":
        """Normal form block: rows d, d/y, then c_i d_j / (x_i + y_j)."""
        F = d[0].field
        return cls((F.one, *c), tuple(d), (F.zero, *x), tuple(y),
                   extended_row=0, c_inf=F.one)

    @property
    def field(self) -> Field:
        return self.d[0].field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.c) + (self.extended_row is not None), len(self.d)

    @property
    def is_normal_form(self) -> bool:
        return (self.extended_row == 0 and self.c_inf == 1 and len(self.c) >= 1
                and self.c[0] == 1 and self.x[0] == 0)

    def normal_form_view(self) -> dict:
        """The (c, d, x, y) of the normal form, without the implicit row-2 entries."""
        if not self.is_normal_form:
            raise InvariantViolation("not a normal-form parameter set")
        return {"c": self.c[1:], "d": self.d, "x": self.x[1:], "y": self.y}

    def to_json(self) -> dict:
        out = {"field": self.field.spec,
               "c": [e.to_text() for e in self.c], "d": [e.to_text() for e in self.d],
               "x": [e.to_text() for e in self.x], "y": [e.to_text() for e in self.y],
               "extended_row": self.extended_row,
               "c_inf": None if self.c_inf is None else self.c_inf.to_text()}
        return out

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "CauchyParams":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            F = field or Field.parse(obj["field"])
            el = lambda t: F.parse_element(t) if isinstance(t, str) else F(t)  # noqa: E731
            vals = {k: tuple(el(t) for t in obj[k]) for k in ("c", "d", "x", "y")}
            ext = obj.get("extended_row")
            c_inf = obj.get("c_inf")
            return cls(**vals, extended_row=ext, c_inf=None if c_inf is None else el(c_inf))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad Cauchy params: {exc}") from exc


def cauchy_build(p: CauchyParams) -> Mat:
    F = p.field
    d = [e.value for e in p.d]
    y = [e.value for e in p.y]
    rows = []
    for c, x in zip(p.c, p.x):
        rows.append([F.div(F.mul(c.value, dj), F.add(x.value, yj)) for dj, yj in zip(d, y)])
    if p.extended_row is not None:
        rows.insert(p.extended_row, F.scale(p.c_inf.value, d))
    return Mat.from_values(F, rows, len(d))


def cauchy_det_formula(p: CauchyParams) -> Fe:
    """Closed-form determinant of a square (extended) Cauchy matrix.

    Plain:     prod c * prod d * prod_{i<j}(x_j-x_i)(y_j-y_i) / prod (x_i+y_j)
    Extended:  the same over the m-1 Cauchy rows, times c_inf and the sign
               (-1)^(m-h) for the extended row at 1-based position h.
    """
    F = p.field
    m_rows, m = p.shape
    if m_rows != m:
        raise InvariantViolation(f"{m_rows}x{m} block is not square")
    num = F.one
    for e in (*p.c, *p.d):
        num = num * e
    for xs in (p.x, p.y):
        for i, j in combinations(range(len(xs)), 2):
            num = num * (xs[j] - xs[i])
    den = F.one
    for xi in p.x:
        for yj in p.y:
            den = den * (xi + yj)
    out = num / den
    if p.extended_row is not None:
        out = out * p.c_inf
        if (m - 1 - p.extended_row) % 2:
            out = -out
    return out


class FitFailure(MdsForgeError):
    """No normal-form parameters reproduce the block.

    ``reason`` names the first violated constraint; ``row`` and ``cols`` are
    0-based positions in the block that exhibit it.
    """

    def __init__(self, reason: str, row: int | None = None, cols: Sequence[int] = (),
                 detail: str = ""):
        self.reason, self.row, self.cols, self.detail = reason, row, tuple(cols), detail
        where = f" at row {row}" if row is not None else ""
        super().__init__(f"{reason}{where} cols {list(self.cols)}" + (f": {detail}" if detail else ""))

    def to_witness(self) -> dict:
        return {"reason": self.reason, "row": self.row, "cols": list(self.cols),
                "detail": self.detail}


def _solve_row_pair(F: Field, d, y, arow, j1, j2):
    """(c, x) from the 2x2 system d_j c - a_j x = a_j y_j, or None if singular."""
    a1, a2 = arow[j1], arow[j2]
    det = F.sub(F.mul(a1, d[j2]), F.mul(d[j1], a2))      # det [[d1,-a1],[d2,-a2]]
    if det == 0:
        return None
    r1, r2 = F.mul(a1, y[j1]), F.mul(a2, y[j2])
    # Cramer's rule
    c = F.div(F.sub(F.mul(a1, r2), F.mul(r1, a2)), det)
    x = F.div(F.sub(F.mul(d[j1], r2), F.mul(r1, d[j2])), det)
    return c, x


def _row_equation_holds(F: Field, d, y, arow, j, c, x) -> bool:
    return F.mul(arow[j], F.add(x, y[j])) == F.mul(c, d[j])


def _fit_row(F: Field, d, y, arow, i) -> list[tuple[int, int]]:
    """All admissible (c, x) for Cauchy row ``i`` (c != 0, x != 0, x + y_j != 0)."""
    r = len(d)
    sol = None
    for j1, j2 in combinations(range(r), 2):
        sol = _solve_row_pair(F, d, y, arow, j1, j2)
        if sol is not None:
            break
    if sol is not None:
        c, x = sol
        for j in range(r):
            if not _row_equation_holds(F, d, y, arow, j, c, x):
                raise FitFailure("row-inconsistent", i, (j1, j2, j))
        if c == 0:
            raise FitFailure("c-zero", i, (j1, j2))
        if x == 0:
            raise FitFailure("x-zero", i, (j1, j2))
        for j in range(r):
            if F.add(x, y[j]) == 0:
                raise FitFailure("pole", i, (j1, j2, j))
        return [(c, x)]
    # rank <= 1: parametrise by x = t using column 0, c = a_0 (y_0 + t) / d_0
    for j in range(1, r):
        lhs = F.mul(F.div(d[j], d[0]), F.mul(arow[0], y[0]))
        if lhs != F.mul(arow[j], y[j]):
            raise FitFailure("row-inconsistent", i, (0, j))
    cands = []
    for t in range(1, F.q):
        c = F.div(F.mul(arow[0], F.add(y[0], t)), d[0])
        if c and all(F.add(t, yj) for yj in y):
            cands.append((c, t))
    if not cands:
        raise FitFailure("row-degenerate", i, (), "no admissible point on the solution line")
    return cands


def cauchy_fit(a: Mat) -> CauchyParams:
    """Recover normal-form parameters reproducing ``a`` exactly.

    Raises :class:`FitFailure` naming the first violated constraint, or
    :class:`TooSmallError` for blocks with fewer than 3 rows or 2 columns.
    """
    F = a.field
    k, r = a.shape
    if k < 3 or r < 2:
        raise TooSmallError(f"{k}x{r} block; normal-form fitting needs >= 3x2")
    A = a.values()
    for i in (0, 1):
        for j in range(r):
            if A[i][j] == 0:
                raise FitFailure("zero-entry", i, (j,))
    d = A[0]
    y = [F.div(A[0][j], A[1][j]) for j in range(r)]
    seen: dict[int, int] = {}
    for j, yj in enumerate(y):
        if yj in seen:
            raise FitFailure("y-collision", 1, (seen[yj], j))
        seen[yj] = j
    options = [_fit_row(F, d, y, A[i], i) for i in range(2, k)]
    chosen = _distinct_choice(options)
    if chosen is None:
        fixed = [(i + 2, o[0][1]) for i, o in enumerate(options) if len(o) == 1]
        first: dict[int, int] = {}
        for row, x in fixed:
            if x in first:
                raise FitFailure("x-collision", first[x], (), f"rows {first[x]} and {row}")
            first[x] = row
        raise FitFailure("x-collision", None, (), "no jointly distinct choice of x")
    E = lambda v: Fe(F, v)  # noqa: E731
    params = CauchyParams.normal_form(
        [E(v) for v in d], [E(v) for v in y],
        [E(c) for c, _ in chosen], [E(x) for _, x in chosen])
    if cauchy_build(params) != a:
        raise ConsistencyError("fitted parameters do not reproduce the block")
    return params


def _distinct_choice(options: list[list[tuple[int, int]]]):
    picked: list[tuple[int, int]] = []
    used: set[int] = set()

    def go(i):
        if i == len(options):
            return True
        for c, x in options[i]:
            if x not in used:
                used.add(x)
                picked.append((c, x))
                if go(i + 1):
                    return True
                used.discard(x)
                picked.pop()
        return False

    return picked if go(0) else None


def replay_fit_failure(a: Mat, witness: dict) -> bool:
    """Re-check a :class:`FitFailure` witness with only the cells it names."""
    F = a.field
    A = a.values()
    reason, row, cols = witness["reason"], witness.get("row"), list(witness.get("cols", ()))
    if reason == "zero-entry":
        return A[row][cols[0]] == 0
    d = A[0]
    if any(v == 0 for v in A[1]) or any(v == 0 for v in d):
        return False
    y = [F.div(A[0][j], A[1][j]) for j in range(a.ncols)]
    if reason == "y-collision":
        return y[cols[0]] == y[cols[1]]
    if reason == "row-inconsistent" and len(cols) == 3:
        sol = _solve_row_pair(F, d, y, A[row], cols[0], cols[1])
        return sol is not None and not _row_equation_holds(F, d, y, A[row], cols[2], *sol)
    try:
        cauchy_fit(a)
    except FitFailure as exc:
        return exc.reason == reason
    return False


# -- the GRS decision procedure --------------------------------------------------

@dataclass
class GrsVerdict:
    """Outcome of :func:`grs_decide`.

    ``is_grs`` is None only when no method applied.  ``audits`` holds the
    results of the secondary methods that were run as cross-checks.
    """

    is_grs: bool | None
    method: str
    witness: dict
    audits: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": {True: "GRS", False: "NonGRS", None: "Inconclusive"}[self.is_grs],
                "method": self.method, "witness": self.witness, "audits": self.audits}


def _schur_witness(code: LinearCode) -> dict:
    pairs = independent_square_products(code)
    return {"dim": len(pairs), "expected_if_grs": min(code.n, 2 * code.k - 1),
            "pairs": [list(p) for p in pairs]}


def _fit_audit(c: LinearCode) -> dict:
    perm, a = systematic_form(c)
    try:
        params = cauchy_fit(a)
    except FitFailure as exc:
        return {"is_grs": False, "perm": perm, "failure": exc.to_witness()}
    return {"is_grs": True, "perm": perm, "params": _params_witness(params)}


def _params_witness(p: CauchyParams) -> dict:
    view = p.normal_form_view()
    return {key: [e.to_text() for e in vals] for key, vals in view.items()}


def grs_decide(c: LinearCode, *, audit: bool = True) -> GrsVerdict:
    """Decide whether an MDS code is GRS, with a replayable witness.

    Dispatch: non-MDS codes are NonGRS; dimension or codimension <= 2 is GRS;
    otherwise the Schur square of the code (k <= (n-1)/2) or of its dual
    (n-k <= (n-1)/2) decides, and the remaining k = n/2 case falls back to
    fitting a normal-form Cauchy block.  With ``audit`` the Cauchy fit is run
    alongside the Schur test and any disagreement raises ConsistencyError.
    """
    n, k = c.n, c.k
    mds, bad = is_mds(c)
    if not mds:
        witness = {"minor": bad}
        try:
            witness["distance"] = min_distance(c)
        except TooLargeToEnumerateError:
            pass
        return GrsVerdict(False, "non-mds", witness)
    if k <= 2 or n - k <= 2:
        return GrsVerdict(True, "shortcut", {"n": n, "k": k})

    audits: dict = {}
    if 2 * k <= n - 1:
        w = _schur_witness(c)
        verdict = GrsVerdict(w["dim"] == 2 * k - 1, "schur", w, audits)
    elif 2 * (n - k) <= n - 1:
        dc = dual(c)
        w = _schur_witness(dc)
        w["dual_generator"] = dc.gen.to_json()["rows"]
        verdict = GrsVerdict(w["dim"] == 2 * (n - k) - 1, "dual-schur", w, audits)
    else:
        fit = _fit_audit(c)
        verdict = GrsVerdict(fit.pop("is_grs"), "cauchy-fit", fit, audits)
        if audit:
            # one-directional: a GRS code has dim C^2 = min(n, 2k-1)
            dim = square_dim(c)
            audits["schur"] = {"dim": dim, "expected_if_grs": min(n, 2 * k - 1)}
            if dim != min(n, 2 * k - 1) and verdict.is_grs:
                raise ConsistencyError("Cauchy fit says GRS but the Schur square is too big")
        return verdict
    if audit:
        fit = _fit_audit(c)
        audits["cauchy-fit"] = fit
        if fit["is_grs"] != verdict.is_grs:
            raise ConsistencyError(
                f"{verdict.method} says is_grs={verdict.is_grs}, Cauchy fit disagrees")
    return verdict
