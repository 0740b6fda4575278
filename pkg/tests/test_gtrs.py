import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdsforge.codes import dual, is_mds, systematic_form
from mdsforge.errors import (
    FamilyMismatchError,
    FirstKNotInformationSetError,
    InvariantViolation,
    OutOfStatedRangeError,
    TooManySubsetsError,
    ZeroLocatorError,
)
from mdsforge.gf import Fe
from mdsforge.grs import grs_decide
from mdsforge.gtrs import (
    FAMILY_LAST_HOOK,
    FAMILY_ZERO_HOOK,
    GtrsParams,
    LambdaTable,
    Twist,
    dual_square_witness,
    gtrs_dual_known,
    gtrs_generator,
    gtrs_mds_test,
    gtrs_systematic,
    information_set_test,
    interpolant_set,
)
from mdsforge.matfield import Mat
from mdsforge.reproduce import subgroup_instance
from mdsforge.sampling import distinct_elements, random_gtrs
from oracles import inv_mod, leibniz_det, rank_mod
from strategies import F7, F13, F16, F49

ALPHA10 = [F13(i) for i in range(1, 11)]


def pts(*vals, F=F13):
    return [F(v) for v in vals]


def test_generator_rows_unrolled():
    alpha = pts(1, 2, 3, 4, 5, 6)
    g = gtrs_generator(GtrsParams.single(alpha, 3, 1, 2, 7)).gen
    assert g.row(2) == [a ** 2 + 7 * a ** 3 for a in alpha]
    p = GtrsParams(tuple(alpha), (F13.one,) * 6, 3, (Twist(1, 0, F13(2)), Twist(2, 0, F13(5))))
    g = gtrs_generator(p).gen
    assert g.row(0) == [1 + 2 * a ** 3 + 5 * a ** 4 for a in alpha]
    assert g.row(1) == alpha and g.row(2) == [a ** 2 for a in alpha]


def test_generator_without_twists_is_vandermonde():
    alpha = pts(2, 3, 5, 7)
    g = gtrs_generator(GtrsParams(tuple(alpha), (F13.one,) * 4, 2)).gen
    assert g.values() == [[1, 1, 1, 1], [2, 3, 5, 7]]


def test_generator_rank_on_seeded_draws():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(3, 10)
        k = rng.randint(1, n - 1)
        p = random_gtrs(F13, rng, n, k, rng.randint(0, 3))
        assert rank_mod(gtrs_generator(p).gen.values(), 13) == k


def test_param_invariants():
    alpha = tuple(pts(1, 2, 3, 4, 5))
    one = (F13.one,) * 5
    for tw in (Twist(0, 0, F13(1)), Twist(4, 0, F13(1)), Twist(1, 2, F13(1)), Twist(1, 0, F13(0))):
        with pytest.raises(InvariantViolation):
            GtrsParams(alpha, one, 2, (tw,))
    with pytest.raises(InvariantViolation):
        GtrsParams(alpha[:4] + (alpha[0],), one, 2)


def test_json_round_trip():
    p = random_gtrs(F49, random.Random(4), 7, 3, 2)
    assert GtrsParams.from_json(p.to_json()) == p


def test_lambda_on_subgroup():
    lt = LambdaTable(pts(1, 3, 9))
    assert lt.lam(0) == 0 and lt.lam(1) == 0 and lt.lam(2) == 1
    # u = (9, 1, 3) and sum u_i / alpha_i = 9 + 1*9 + 3*3 = 27 = 1
    u = [9, 1, 3]
    assert [x.value for x in lt.u] == u
    assert lt.lam(-1).value == sum(ui * inv_mod(a, 13) for ui, a in zip(u, [1, 3, 9])) % 13 == 1


def test_lambda_minus_one_needs_nonzero_locators():
    lt = LambdaTable(pts(0, 1, F=F7))
    with pytest.raises(ZeroLocatorError):
        lt.lam(-1)


@given(st.sampled_from([F7, F13, F16, F49]), st.integers(0, 10**6))
def test_lambda_identities(F, seed):
    rng = random.Random(seed)
    alpha = distinct_elements(F, rng, rng.randint(1, min(F.q, 9)))
    lt = LambdaTable(alpha)
    n = len(alpha)
    assert all(lt.lam(m) == 0 for m in range(n - 1)) and lt.lam(n - 1) == 1


def test_two_point_interpolant():
    a1, a2 = F13(4), F13(7)
    p = GtrsParams.single([a1, a2, F13(1)], 2, 1, 0, 1)
    co = interpolant_set(p, (0, 1)).coeffs[0]
    assert list(co) == [-(a1 * a2), a1 + a2]


def test_one_dimensional_interpolant_is_constant():
    p = GtrsParams.single(pts(3, 5, 6, 8), 1, 2, 0, 1)
    assert interpolant_set(p, (2,)).coeffs[0] == (F13(6) ** 2,)


def test_single_twist_scalar_criterion():
    p = GtrsParams.single(pts(1, 2, 3, 4, 5, 6), 3, 1, 1, 4)
    for b in combinations(range(6), 3):
        verdict, m = information_set_test(p, b)
        f = interpolant_set(p, b).coeffs[0]
        assert m.values() == [[(1 + 4 * f[1]).value]]
        assert verdict == bool(1 + 4 * f[1])


@given(st.integers(0, 10**6))
def test_information_sets_match_determinants(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    k = rng.randint(1, min(4, n - 1))
    p = random_gtrs(F13, rng, n, k, rng.randint(0, 3))
    G = gtrs_generator(p).gen.values()
    for b in combinations(range(n), k):
        direct = leibniz_det([[row[i] for i in b] for row in G], 13) != 0
        assert information_set_test(p, b, check=False)[0] == direct


def test_plain_grs_passes_every_subset():
    p = GtrsParams(tuple(pts(1, 2, 3, 4, 5, 6)), (F13.one,) * 6, 3)
    assert gtrs_mds_test(p) == (True, None)


def test_mds_sweep_reports_first_failing_subset():
    rng = random.Random(9)
    while True:
        p = random_gtrs(F13, rng, 7, 3, 1)
        ok, bad = gtrs_mds_test(p)
        if not ok:
            break
    G = gtrs_generator(p).gen.values()
    assert leibniz_det([[row[i] for i in bad] for row in G], 13) == 0
    earlier = [b for b in combinations(range(7), 3) if b < bad]
    assert all(leibniz_det([[row[i] for i in b] for row in G], 13) for b in earlier)


def test_subset_limit():
    p = GtrsParams.single(pts(*range(1, 11)), 5, 1, 0, 1)
    with pytest.raises(TooManySubsetsError):
        gtrs_mds_test(p, limit=100)


def test_subgroup_instance_closed_form():
    p = subgroup_instance(13, 3)
    assert [a.value for a in p.alpha] == [1, 3, 9, 4, 12, 10]
    assert p.twists[0].eta == 2
    s = gtrs_systematic(p)
    # 1/3 = 9 and 2/(1+2) * (a^3 - 1) = 2 * 9 * 11 = 3 for every coset point
    assert s.r.values() == [[9], [9], [9]]
    assert s.d.values() == [[3, 3, 3]]
    assert gtrs_mds_test(p)[0] is True and is_mds(gtrs_generator(p))[0]


@given(st.integers(0, 10**6))
def test_closed_form_matches_elimination(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 10)
    k = rng.randint(1, n - 1)
    p = random_gtrs(F13, rng, n, k, rng.randint(1, 3), same_hook=True)
    try:
        s = gtrs_systematic(p, check=False)
    except FirstKNotInformationSetError:
        return
    assert s.block == systematic_form(gtrs_generator(p), list(range(k)))[1]
    assert s.generator.rank() == k


def test_closed_form_obstruction():
    alpha = pts(1, 2, 3, 4, 5, 6)
    f = interpolant_set(GtrsParams.single(alpha, 3, 1, 0, 1), (0, 1, 2)).coeffs[0]
    eta = -(f[0].inverse())
    with pytest.raises(FirstKNotInformationSetError):
        gtrs_systematic(GtrsParams.single(alpha, 3, 1, 0, eta))


def test_closed_form_needs_one_hook():
    p = GtrsParams(tuple(pts(1, 2, 3, 4, 5)), (F13.one,) * 5, 3,
                   (Twist(1, 0, F13(1)), Twist(1, 2, F13(1))))
    with pytest.raises(InvariantViolation):
        gtrs_systematic(p)


def test_last_hook_dual():
    p = GtrsParams.single(pts(*range(8)), 5, 1, 4, 1)
    h = gtrs_dual_known(p)
    assert gtrs_generator(p).gen @ h.gen.T == Mat.zeros(F13, 5, 3)
    assert h == dual(gtrs_generator(p))


def test_zero_hook_dual():
    p = GtrsParams.single(ALPHA10[:8], 5, 1, 0, 3)
    assert gtrs_dual_known(p) == dual(gtrs_generator(p))


def test_zero_hook_dual_constant():
    # search the dual for the unique c with (alpha^3 + c) * u / alpha inside it
    alpha, eta = ALPHA10[:8], F13(3)
    p = GtrsParams.single(alpha, 5, 1, 0, eta)
    d = dual(gtrs_generator(p))
    lt = LambdaTable(alpha)
    hits = [c for c in range(13)
            if d.contains([(a ** 3 + c) * u / a for a, u in zip(alpha, lt.u)])]
    lam_m1 = sum(u.value * inv_mod(a.value, 13) for u, a in zip(lt.u, alpha)) % 13
    assert hits == [(-eta.value * inv_mod(lam_m1, 13)) % 13]
    # the reciprocal form -1/(eta lambda_{-1}) is a different constant here
    assert (-inv_mod(eta.value * lam_m1 % 13, 13)) % 13 not in hits


def test_known_dual_errors():
    with pytest.raises(FamilyMismatchError):
        gtrs_dual_known(GtrsParams.single(pts(*range(8)), 5, 1, 2, 1))
    with pytest.raises(FamilyMismatchError):
        gtrs_dual_known(GtrsParams.single(pts(*range(8)), 5, 2, 4, 1))
    with pytest.raises(ZeroLocatorError):
        gtrs_dual_known(GtrsParams.single(pts(*range(8)), 5, 1, 0, 1))


def test_witness_last_hook():
    w = dual_square_witness(GtrsParams.single(pts(*range(10)), 6, 1, 5, 1))
    assert w.family == FAMILY_LAST_HOOK
    assert w.rank >= 8 and w.measured_dim >= w.rank and w.nongrs
    assert [lab for lab, _, _ in w.vectors][-3:] == ["a^5", "a^6", "a^8 - 2coef*a^7"]


def test_witness_zero_hook():
    w = dual_square_witness(GtrsParams.single(ALPHA10, 6, 1, 0, 1))
    assert w.family == FAMILY_ZERO_HOOK and w.rank >= 8 and w.nongrs
    assert w.punctured_at is None


def test_witness_zero_hook_with_zero_locator_punctures():
    alpha = pts(5, 0, 1, 2, 3, 4, 6, 7, 8, 9)
    w = dual_square_witness(GtrsParams.single(alpha, 6, 1, 0, 2))
    assert w.punctured_at == 1 and w.n == 9 and w.nongrs


def test_witness_ranges():
    with pytest.raises(OutOfStatedRangeError):
        dual_square_witness(GtrsParams.single(pts(*range(10)), 5, 1, 4, 1))
    with pytest.raises(OutOfStatedRangeError):
        dual_square_witness(GtrsParams.single(pts(*range(10)), 8, 1, 7, 1))
    with pytest.raises(OutOfStatedRangeError):
        dual_square_witness(GtrsParams.single(pts(*range(10)), 7, 1, 0, 1))
    assert dual_square_witness(GtrsParams.single(ALPHA10, 7, 1, 0, 1)).nongrs


@given(st.integers(0, 10**6), st.sampled_from([FAMILY_LAST_HOOK, FAMILY_ZERO_HOOK]))
def test_families_are_non_grs(seed, family):
    rng = random.Random(seed)
    n = rng.randint(7, 12)
    lo = n // 2 + 1 if family == FAMILY_LAST_HOOK else (n + 1) // 2
    k = rng.randint(max(3, lo), n - 3)
    alpha = distinct_elements(F13, rng, n, nonzero=family == FAMILY_ZERO_HOOK)
    p = GtrsParams.single(alpha, k, 1, k - 1 if family == FAMILY_LAST_HOOK else 0,
                          Fe(F13, rng.randint(1, 12)))
    w = dual_square_witness(p)
    assert w.rank >= 2 * (n - k) and w.nongrs
    assert grs_decide(gtrs_generator(p)).is_grs is False

