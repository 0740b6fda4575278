"""Generalized twisted Reed-Solomon (GTRS) codes.

A GTRS code evaluates the twisted polynomials

    f(x) = sum_{i<k} f_i x^i + sum_j eta_j f_{h_j} x^(k-1+t_j)

at distinct finite locators, scaled by nonzero column multipliers.  This
module builds their standard generator matrices, tests information sets and
the MDS property through a small s x s matrix, gives the closed-form
systematic block for a single hook value, and produces explicit Schur-square
witnesses for the two single-twist families (t, h) = (1, k-1) and (1, 0).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Sequence

from .codes import LinearCode, dual, is_mds, square_dim, systematic_form
from .errors import (
    ConsistencyError,
    FamilyMismatchError,
    FirstKNotInformationSetError,
    InvariantViolation,
    OutOfStatedRangeError,
    ParseError,
    TooManySubsetsError,
    ZeroLocatorError,
)
from .gf import Fe, Field, eval_values, interpolate_values
from .matfield import Mat, det_values, rref_values, vandermonde

log = logging.getLogger(__name__)

FAMILY_LAST_HOOK = "h=k-1"
FAMILY_ZERO_HOOK = "h=0"


@dataclass(frozen=True)
class Twist:
    t: int
    h: int
    eta: Fe


@dataclass(frozen=True)
class GtrsParams:
    """Locators, multipliers, dimension and twists (t_j, h_j, eta_j).

    An empty twist list is allowed and gives the plain GRS code.
    """

    alpha: tuple
    v: tuple
    k: int
    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "twists", tuple(
            tw if isinstance(tw, Twist) else Twist(*tw) for tw in self.twists))
        n, k = len(self.alpha), self.k
        if len(self.v) != n:
            raise InvariantViolation(f"{n} locators but {len(self.v)} multipliers")
        if not 1 <= k < n:
            raise InvariantViolation(f"need 1 <= k < n, got k={k}, n={n}")
        if len(set(self.alpha)) != n:
            raise InvariantViolation("locators must be distinct")
        if any(not x for x in self.v):
            raise InvariantViolation("multipliers must be nonzero")
        for tw in self.twists:
            if not 1 <= tw.t <= n - k:
                raise InvariantViolation(f"twist t={tw.t} outside 1..{n - k}")
            if not 0 <= tw.h <= k - 1:
                raise InvariantViolation(f"hook h={tw.h} outside 0..{k - 1}")
            if not tw.eta:
                raise InvariantViolation("twist coefficients must be nonzero")

    @classmethod
    def single(cls, alpha, k, t, h, eta, v=None) -> "GtrsParams":
        F = alpha[0].field
        v = v if v is not None else (F.one,) * len(alpha)
        return cls(tuple(alpha), tuple(v), k, (Twist(t, h, F(eta)),))

    @property
    def field(self) -> Field:
        return self.alpha[0].field

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def ell(self) -> int:
        return len(self.twists)

    def hook_groups(self) -> list[tuple[int, list[int]]]:
        """Distinct hooks h'_1 < ... < h'_s with the twist indices using each."""
        groups: dict[int, list[int]] = {}
        for j, tw in enumerate(self.twists):
            groups.setdefault(tw.h, []).append(j)
        return sorted(groups.items())

    def with_coordinates(self, keep: Sequence[int]) -> "GtrsParams":
        return GtrsParams(tuple(self.alpha[i] for i in keep), tuple(self.v[i] for i in keep),
                          self.k, self.twists)

    def to_json(self) -> dict:
        return {"field": self.field.spec,
                "alpha": [a.to_text() for a in self.alpha],
                "v": [x.to_text() for x in self.v], "k": self.k,
                "twists": [{"t": tw.t, "h": tw.h, "eta": tw.eta.to_text()} for tw in self.twists]}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "GtrsParams":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            F = field or Field.parse(obj["field"])
            el = lambda t: F.parse_element(t) if isinstance(t, str) else F(t)  # noqa: E731
            alpha = tuple(el(a) for a in obj["alpha"])
            v = tuple(el(x) for x in obj.get("v", [1] * len(alpha)))
            twists = tuple(Twist(int(tw["t"]), int(tw["h"]), el(tw["eta"]))
                           for tw in obj.get("twists", []))
            return cls(alpha, v, int(obj["k"]), twists)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad GTRS params: {exc}") from exc


def _power_rows(F: Field, alpha: Sequence[int], top: int) -> list[list[int]]:
    rows = [[1] * len(alpha)]
    for _ in range(top):
        rows.append([F.mul(x, a) for x, a in zip(rows[-1], alpha)])
    return rows


def _unscaled_rows(p: GtrsParams) -> list[list[int]]:
    F, k = p.field, p.k
    al = [a.value for a in p.alpha]
    top = max([k - 1] + [k - 1 + tw.t for tw in p.twists])
    pw = _power_rows(F, al, top)
    rows = [list(pw[l]) for l in range(k)]
    for tw in p.twists:
        rows[tw.h] = [F.add(x, F.mul(tw.eta.value, y))
                      for x, y in zip(rows[tw.h], pw[k - 1 + tw.t])]
    return rows


def gtrs_generator(p: GtrsParams) -> LinearCode:
    """Standard generator: row l evaluates x^l + sum_{h_j = l} eta_j x^(k-1+t_j), times D_v."""
    F = p.field
    vv = [x.value for x in p.v]
    rows = [[F.mul(x, s) for x, s in zip(r, vv)] for r in _unscaled_rows(p)]
    return LinearCode(Mat.from_values(F, rows, p.n))


class LambdaTable:
    """u_i = prod_{j != i} (alpha_i - alpha_j)^-1 and lambda_m = sum u_i alpha_i^m.

    Construction checks lambda_0 = ... = lambda_{n-2} = 0 and lambda_{n-1} = 1.
    """

    def __init__(self, alpha: Sequence[Fe]):
        self.alpha = tuple(alpha)
        if len(set(self.alpha)) != len(self.alpha):
            raise InvariantViolation("locators must be distinct")
        F = self.field = self.alpha[0].field
        vals = [a.value for a in self.alpha]
        self.u = []
        for i, ai in enumerate(vals):
            prod = 1
            for j, aj in enumerate(vals):
                if j != i:
                    prod = F.mul(prod, F.sub(ai, aj))
            self.u.append(Fe(F, F.inv(prod)))
        self._cache: dict[int, Fe] = {}
        n = len(vals)
        for m in range(n - 1):
            if self.lam(m):
                raise ConsistencyError(f"lambda_{m} != 0")
        if self.lam(n - 1) != 1:
            raise ConsistencyError(f"lambda_{n - 1} != 1")

    def lam(self, m: int) -> Fe:
        if m not in self._cache:
            F = self.field
            if m < 0 and any(not a for a in self.alpha):
                raise ZeroLocatorError(f"lambda_{m} needs all locators nonzero")
            acc = 0
            for u, a in zip(self.u, self.alpha):
                acc = F.add(acc, F.mul(u.value, F.pow(a.value, m)))
            self._cache[m] = Fe(F, acc)
        return self._cache[m]

    __call__ = lam


def lambda_table(alpha: Sequence[Fe]) -> LambdaTable:
    return LambdaTable(alpha)


@dataclass(frozen=True)
class InterpolantSet:
    """Per twist j, the coefficients of the degree < k polynomial agreeing
    with x^(k-1+t_j) on the locators indexed by ``b``."""

    b: tuple
    coeffs: tuple  # tuple (per twist) of tuple[Fe] of length k

    def poly_values(self, j: int) -> list[int]:
        return [c.value for c in self.coeffs[j]]


def interpolant_set(p: GtrsParams, b: Sequence[int]) -> InterpolantSet:
    b = tuple(b)
    if len(b) != p.k:
        raise InvariantViolation(f"|b| = {len(b)} != k = {p.k}")
    F = p.field
    xs = [p.alpha[i].value for i in b]
    out = []
    for tw in p.twists:
        e = p.k - 1 + tw.t
        ys = [F.pow(x, e) for x in xs]
        co = interpolate_values(F, xs, ys)
        for x, y in zip(xs, ys):
            if eval_values(F, co, x) != y:
                raise ConsistencyError("interpolant misses a node")
        out.append(tuple(Fe(F, c) for c in co))
    return InterpolantSet(b, tuple(out))


def _reduced_matrix(p: GtrsParams, interp: InterpolantSet) -> list[list[int]]:
    F = p.field
    groups = p.hook_groups()
    hooks = [h for h, _ in groups]
    mat = []
    for i, (_, members) in enumerate(groups):
        row = []
        for m, hm in enumerate(hooks):
            acc = 1 if i == m else 0
            for j in members:
                acc = F.add(acc, F.mul(p.twists[j].eta.value, interp.coeffs[j][hm].value))
            row.append(acc)
        mat.append(row)
    return mat


def information_set_test(p: GtrsParams, b: Sequence[int], check: bool = True):
    """Whether coordinates ``b`` form an information set, via the s x s matrix
    [delta_im + sum_{j in group i} eta_j f^b_{h'_m, j}].

    Returns ``(verdict, matrix)``.  With ``check`` the verdict is compared with
    the determinant of the k columns ``b`` of the standard generator.
    """
    interp = interpolant_set(p, b)
    mat = _reduced_matrix(p, interp)
    F = p.field
    verdict = det_values(F, mat) != 0
    if check:
        cols = [[r[i] for i in b] for r in gtrs_generator(p).gen.values()]
        if (det_values(F, cols) != 0) != verdict:
            raise ConsistencyError(f"information-set criterion disagrees with det on {b}")
    return verdict, Mat.from_values(F, mat, len(mat))


def gtrs_mds_test(p: GtrsParams, limit: int = 10**6, check: bool = True):
    """MDS iff every k-subset passes :func:`information_set_test`.

    Returns ``(True, None)`` or ``(False, first_failing_subset)``; with
    ``check`` the result is compared against :func:`codes.is_mds`.
    """
    if comb(p.n, p.k) > limit:
        raise TooManySubsetsError(f"C({p.n},{p.k}) > {limit}")
    result: tuple[bool, tuple | None] = (True, None)
    for b in combinations(range(p.n), p.k):
        ok, _ = information_set_test(p, b, check=check)
        if not ok:
            result = (False, b)
            break
    if check and is_mds(gtrs_generator(p))[0] != result[0]:
        raise ConsistencyError("subset sweep and minor test disagree on MDS")
    return result


@dataclass(frozen=True)
class GtrsSystematic:
    """Pieces of the closed-form systematic block ``cauchy + r d``."""

    cauchy: Mat     # k x (n-k), systematic block of the untwisted GRS code
    r: Mat          # k x 1
    d: Mat          # 1 x (n-k)
    block: Mat      # cauchy + r @ d

    @property
    def generator(self) -> Mat:
        return Mat.hstack(Mat.identity(self.block.field, self.block.nrows), self.block)


def gtrs_systematic(p: GtrsParams, check: bool = True) -> GtrsSystematic:
    """Systematic block on the first k coordinates for a single hook value h.

    cauchy = D_v[:k]^-1 V_k^-1 V_{n-k} D_v[k:],  r = column h of D_v[:k]^-1 V_k^-1,
    d_m = v_{k+m} (sum eta_i alpha_{k+m}^(k-1+t_i) - sum eta_i f_i(alpha_{k+m}))
          / (1 + sum eta_i f_{h,i}).
    """
    F, k, n = p.field, p.k, p.n
    hooks = {tw.h for tw in p.twists}
    if len(hooks) > 1:
        raise InvariantViolation(f"closed form needs one hook value, got {sorted(hooks)}")
    h = hooks.pop() if hooks else 0
    interp = interpolant_set(p, range(k))
    denom = 1
    for j, tw in enumerate(p.twists):
        denom = F.add(denom, F.mul(tw.eta.value, interp.coeffs[j][h].value))
    if denom == 0:
        raise FirstKNotInformationSetError(
            "1 + sum eta_i f_{h,i} = 0: the first k coordinates are not an information set")
    vk_inv = vandermonde(list(p.alpha[:k]), k).inverse()
    left = vk_inv.scale_rows([x.inverse() for x in p.v[:k]])
    cauchy = (left @ vandermonde(list(p.alpha[k:]), k)).scale_columns(p.v[k:])
    r = left.columns([h])
    dvals = []
    inv_denom = F.inv(denom)
    for m in range(k, n):
        a = p.alpha[m].value
        acc = 0
        for j, tw in enumerate(p.twists):
            twisted = F.pow(a, k - 1 + tw.t)
            interp_at = eval_values(F, interp.poly_values(j), a)
            acc = F.add(acc, F.mul(tw.eta.value, F.sub(twisted, interp_at)))
        dvals.append(F.mul(F.mul(inv_denom, acc), p.v[m].value))
    d = Mat.from_values(F, [dvals], n - k)
    out = GtrsSystematic(cauchy, r, d, cauchy + r @ d)
    if check:
        _, ref = systematic_form(gtrs_generator(p), list(range(k)))
        if ref != out.block:
            raise ConsistencyError("closed-form systematic block disagrees with elimination")
    return out


def _family_of(p: GtrsParams) -> str:
    if p.ell != 1 or p.twists[0].t != 1:
        raise FamilyMismatchError("known duals need a single twist with t = 1")
    h = p.twists[0].h
    if h == p.k - 1:
        return FAMILY_LAST_HOOK
    if h == 0:
        return FAMILY_ZERO_HOOK
    raise FamilyMismatchError(f"hook {h} is neither 0 nor k-1")


def _check_family(p: GtrsParams, family: str | None) -> str:
    actual = _family_of(p)
    if family is not None and family != actual:
        # k = 1 makes both hooks coincide
        if not (p.k == 1 and family in (FAMILY_LAST_HOOK, FAMILY_ZERO_HOOK)):
            raise FamilyMismatchError(f"parameters belong to family {actual}, not {family}")
        return family
    return actual


def _known_dual_rows(p: GtrsParams, family: str, lt: LambdaTable):
    """Unscaled rows of the known dual generator and its column scaling."""
    F, n, k = p.field, p.n, p.k
    kappa = n - k
    al = [a.value for a in p.alpha]
    eta = p.twists[0].eta
    pw = _power_rows(F, al, kappa)
    if family == FAMILY_LAST_HOOK:
        coef = (1 + eta * lt.lam(n)) / eta
        rows = [list(pw[i]) for i in range(kappa - 1)]
        rows.append(F.axpy(pw[kappa], coef.value, pw[kappa - 1]))
        scale = [u / v for u, v in zip(lt.u, p.v)]
        return rows, scale, coef
    if any(not a for a in p.alpha):
        raise ZeroLocatorError("the h = 0 family's known dual needs nonzero locators")
    coef = -eta / lt.lam(-1)
    rows = [list(pw[i]) for i in range(1, kappa)]
    rows.append([F.add(x, coef.value) for x in pw[kappa]])
    scale = [u / (v * a) for u, v, a in zip(lt.u, p.v, p.alpha)]
    return rows, scale, coef


def gtrs_dual_known(p: GtrsParams, family: str | None = None) -> LinearCode:
    """Dual code of a (t, h) = (1, k-1) or (1, 0) single-twist GTRS code from
    its closed-form generator.

    h = k-1: rows 1, a, ..., a^(n-k-2), a^(n-k) - ((1 + eta lam_n)/eta) a^(n-k-1), times D_{u/v}.
    h = 0:   rows a, ..., a^(n-k-1), a^(n-k) + eta'' 1, times D_{u/(v a)},
             with eta'' = -eta / lam_{-1}.
    """
    family = _check_family(p, family)
    lt = LambdaTable(p.alpha)
    rows, scale, _ = _known_dual_rows(p, family, lt)
    F = p.field
    H = Mat.from_values(F, rows, p.n).scale_columns(scale)
    G = gtrs_generator(p).gen
    if (G @ H.T) != Mat.zeros(F, p.k, p.n - p.k):
        raise ConsistencyError("known dual generator does not annihilate the code")
    return LinearCode(H)


@dataclass
class DualSquareWitness:
    """Explicit vectors in the square of the dual code.

    ``rank`` is the rank of the exhibited vectors; ``measured_dim`` is
    dim((C^perp)^2) computed directly.  ``nongrs`` holds when the exhibited
    rank exceeds 2(n-k)-1 for the (possibly punctured) code.
    """

    family: str
    n: int
    k: int
    rank: int
    measured_dim: int
    nongrs: bool
    coef: Fe
    vectors: list = dc_field(default_factory=list)   # (label, recipe, values)
    punctured_at: int | None = None

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "k": self.k, "rank": self.rank,
                "measured_dim": self.measured_dim, "nongrs": self.nongrs,
                "coef": self.coef.to_text(), "punctured_at": self.punctured_at,
                "vectors": [{"label": lab, "recipe": rec} for lab, rec, _ in self.vectors]}


def _stated_range(p: GtrsParams, family: str) -> None:
    n, k = p.n, p.k
    if family == FAMILY_LAST_HOOK:
        ok = 2 * k > n and k <= n - 3
        stated = "n/2 < k <= n-3"
    elif all(p.alpha):
        ok = 2 * k >= n and k <= n - 3
        stated = "n/2 <= k <= n-3"
    else:
        ok = 2 * k >= n and k <= n - 4
        stated = "n/2 <= k <= n-4 (a locator is zero)"
    if not ok or k < 3:
        raise OutOfStatedRangeError(f"k={k}, n={n} outside {stated}; use grs_decide")


def dual_square_witness(p: GtrsParams, family: str | None = None) -> DualSquareWitness:
    """Build the proof's explicit vectors inside (C^perp)^2 and certify their rank.

    For the h = 0 family with a zero locator the code is punctured at that
    coordinate first (an extension of a non-GRS code is non-GRS).
    """
    family = _check_family(p, family)
    _stated_range(p, family)
    if family == FAMILY_ZERO_HOOK and not all(p.alpha):
        z = next(i for i, a in enumerate(p.alpha) if not a)
        inner = dual_square_witness(p.with_coordinates([i for i in range(p.n) if i != z]),
                                    family)
        inner.punctured_at = z
        return inner

    F, n, k = p.field, p.n, p.k
    kappa = n - k
    lt = LambdaTable(p.alpha)
    rows, _, coef = _known_dual_rows(p, family, lt)
    al = [a.value for a in p.alpha]
    mono = _power_rows(F, al, 2 * kappa)
    cv = coef.value

    def prod(a, b):          # 1-based row indices, as in the proofs
        return [F.mul(x, y) for x, y in zip(rows[a - 1], rows[b - 1])]

    def comb2(u, s, w):      # u + s*w
        return [F.add(x, F.mul(s, y)) for x, y in zip(u, w)]

    vectors = []
    if family == FAMILY_LAST_HOOK:
        # h_i = a^(i-1) for i <= kappa-1, h_kappa = a^kappa - coef a^(kappa-1)
        for e in range(2 * kappa - 3):
            a = min(e + 1, kappa - 1)
            vectors.append((f"a^{e}", f"h{a}*h{e + 2 - a}", prod(a, e + 2 - a), mono[e]))
        vectors.append((f"a^{2 * kappa - 3}", f"h{kappa - 2}*h{kappa} + coef*a^{2 * kappa - 4}",
                        comb2(prod(kappa - 2, kappa), cv, mono[2 * kappa - 4]),
                        mono[2 * kappa - 3]))
        vectors.append((f"a^{2 * kappa - 2}", f"h{kappa - 1}*h{kappa} + coef*a^{2 * kappa - 3}",
                        comb2(prod(kappa - 1, kappa), cv, mono[2 * kappa - 3]),
                        mono[2 * kappa - 2]))
        vectors.append((f"a^{2 * kappa} - 2coef*a^{2 * kappa - 1}",
                        f"h{kappa}*h{kappa} - coef^2*a^{2 * kappa - 2}",
                        comb2(prod(kappa, kappa), F.neg(F.mul(cv, cv)), mono[2 * kappa - 2]),
                        comb2(mono[2 * kappa], F.neg(F.add(cv, cv)), mono[2 * kappa - 1])))
    else:
        # g_i = a^i for i <= kappa-1, g_kappa = a^kappa + coef
        for e in range(2, 2 * kappa - 1):
            a = min(e - 1, kappa - 1)
            vectors.append((f"a^{e}", f"g{a}*g{e - a}", prod(a, e - a), mono[e]))
        vectors.append((f"a^{2 * kappa - 1}", f"g{kappa - 1}*g{kappa} - coef*a^{kappa - 1}",
                        comb2(prod(kappa - 1, kappa), F.neg(cv), mono[kappa - 1]),
                        mono[2 * kappa - 1]))
        vectors.append(("a^1", f"(g1*g{kappa} - a^{kappa + 1}) / coef",
                        F.scale(F.inv(cv), comb2(prod(1, kappa), F.neg(1), mono[kappa + 1])),
                        mono[1]))
        vectors.append((f"a^{2 * kappa} + coef^2", f"g{kappa}*g{kappa} - 2coef*a^{kappa}",
                        comb2(prod(kappa, kappa), F.neg(F.add(cv, cv)), mono[kappa]),
                        [F.add(x, F.mul(cv, cv)) for x in mono[2 * kappa]]))

    for label, recipe, got, expected in vectors:
        if got != expected:
            raise ConsistencyError(f"proof vector {label} = {recipe} does not check out")
    stack = [list(v) for _, _, v, _ in vectors]
    rank = len(rref_values(F, stack)[1])
    measured = square_dim(dual(gtrs_generator(p)))
    if measured < rank:
        raise ConsistencyError("witness rank exceeds the measured square dimension")
    log.debug("dual square: witness rank %d, measured %d, 2k = %d", rank, measured, 2 * k)
    return DualSquareWitness(
        family, n, k, rank, measured, rank > 2 * kappa - 1 and 2 * kappa - 1 < n, coef,
        [(lab, rec, v) for lab, rec, v, _ in vectors])
