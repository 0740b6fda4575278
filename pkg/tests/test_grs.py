import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdsforge.codes import LinearCode, is_mds, min_distance, systematic_form
from mdsforge.errors import InvariantViolation, TooSmallError
from mdsforge.grs import (
    INF,
    CauchyParams,
    FitFailure,
    GrsParams,
    cauchy_build,
    cauchy_det_formula,
    cauchy_fit,
    grs_decide,
    grs_generator,
    replay_fit_failure,
)
from mdsforge.matfield import Mat, minors_all_nonzero
from mdsforge.sampling import random_cauchy, random_extended_cauchy, random_grs, random_normal_form
from oracles import GF2, leibniz_det
from strategies import F7, F13, F16, F49

EXAMPLE_A = [[2, 6, 5, 6, 2], [6, 5, 4, 3, 2], [2, 3, 4, 5, 6]]


def example_blocks():
    a = Mat(F49, EXAMPLE_A)
    rows = a.values()
    rows[0][0] = F49.add(rows[0][0], F49.theta.value)
    return a, Mat.from_values(F49, rows, 5)


def test_params_invariants():
    with pytest.raises(InvariantViolation):
        GrsParams.rs((INF, INF, F7(1)), 2)
    with pytest.raises(InvariantViolation):
        GrsParams.rs((F7(1), F7(1), F7(2)), 2)
    with pytest.raises(InvariantViolation):
        GrsParams((F7(1), F7(2)), (F7(1), F7(0)), 1)
    with pytest.raises(InvariantViolation):
        GrsParams.rs((F7(1), F7(2)), 2)


def test_generator_rows_and_infinity_column():
    g = grs_generator(GrsParams.rs((F13(2), INF, F13(5)), 1)).gen
    assert g.values() == [[1, 1, 1]]
    g = grs_generator(GrsParams((F13(2), INF), (F13(3), F13(4)), 1)).gen
    assert g.values() == [[3, 4]]
    g = grs_generator(GrsParams.rs((F13(2), INF, F13(5)), 2)).gen
    assert g.col(1) == [F13(0), F13(1)]


def test_example_systematic_block():
    c = grs_generator(GrsParams.rs((INF, *(F49(i) for i in range(7))), 3))
    assert systematic_form(c, [0, 1, 2])[1] == Mat(F49, EXAMPLE_A)


def test_grs_is_mds_by_enumeration():
    c = grs_generator(GrsParams.rs(tuple(F13(i) for i in range(1, 9)), 3))
    assert min_distance(c) == 6


def test_json_round_trips():
    p = GrsParams((INF, F49.theta, F49(3)), (F49(1), F49(2), F49.theta), 2)
    assert GrsParams.from_json(p.to_json()) == p
    q = random_normal_form(F13, random.Random(1), 4, 3)
    assert CauchyParams.from_json(q.to_json()) == q


def test_two_row_normal_form():
    d = [F13(2), F13(3)]
    y = [F13(4), F13(5)]
    m = cauchy_build(CauchyParams.normal_form(d, y))
    assert m.row(0) == d and m.row(1) == [d[0] / y[0], d[1] / y[1]]


def test_normal_form_rejects_zero_x():
    with pytest.raises(InvariantViolation):
        CauchyParams.normal_form([F13(1)] * 2, [F13(1), F13(2)], [F13(3)], [F13(0)])


def test_one_by_one_formula():
    p = CauchyParams((F13(3),), (F13(5),), (F13(2),), (F13(7),))
    assert cauchy_det_formula(p) == F13(3) * 5 / (F13(2) + 7)


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_plain_formula_matches_leibniz(m, seed):
    p = random_cauchy(F13, random.Random(seed), m, m)
    assert cauchy_det_formula(p).value == leibniz_det(cauchy_build(p).values(), 13)


@given(st.integers(1, 6), st.data())
def test_extended_formula_matches_leibniz(m, data):
    h = data.draw(st.integers(0, m - 1))
    p = random_extended_cauchy(F13, random.Random(data.draw(st.integers(0, 10**6))), m, h)
    assert cauchy_det_formula(p).value == leibniz_det(cauchy_build(p).values(), 13)


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_extended_formula_over_f49(m, seed):
    ext = GF2(7, 5)
    p = random_extended_cauchy(F49, random.Random(seed), m, seed % m)
    rows = [[tuple(F49.coeffs_of(v)) for v in r] for r in cauchy_build(p).values()]
    assert tuple(cauchy_det_formula(p).coeffs) == ext.det(rows)


@given(st.integers(3, 6), st.integers(2, 6), st.integers(0, 10**6))
def test_fit_round_trip_and_mds(k, r, seed):
    p = random_normal_form(F13, random.Random(seed), k, r)
    a = cauchy_build(p)
    assert minors_all_nonzero(a)[0]
    assert cauchy_build(cauchy_fit(a)) == a


def test_fit_example_blocks():
    a, d = example_blocks()
    params = cauchy_fit(a)
    assert cauchy_build(params) == a
    assert [e.value for e in params.normal_form_view()["x"]] == [1]
    with pytest.raises(FitFailure) as exc:
        cauchy_fit(d)
    assert replay_fit_failure(d, exc.value.to_witness())


def test_fit_needs_three_rows():
    with pytest.raises(TooSmallError):
        cauchy_fit(Mat(F13, [[1, 2], [3, 4]]))


def test_fit_failure_on_zero_entry():
    with pytest.raises(FitFailure) as exc:
        cauchy_fit(Mat(F13, [[1, 0, 2], [1, 2, 3], [4, 5, 6]]))
    assert exc.value.reason == "zero-entry" and exc.value.cols == (1,)


def test_decide_examples():
    c = grs_generator(GrsParams.rs(tuple(F13(i) for i in range(8)), 3))
    v = grs_decide(c)
    assert v.is_grs and v.method == "schur" and v.witness["dim"] == 5
    _, d = example_blocks()
    v = grs_decide(LinearCode(Mat.hstack(Mat.identity(F49, 3), d)))
    assert v.is_grs is False and v.method == "schur" and v.witness["dim"] == 6
    assert v.audits["cauchy-fit"]["is_grs"] is False


def test_codimension_two_shortcut():
    rng = random.Random(5)
    c = grs_generator(random_grs(F13, rng, 7, 5))
    assert grs_decide(c).method == "shortcut" and grs_decide(c).is_grs


def test_non_mds_is_non_grs_with_distance():
    c = LinearCode(Mat(F7, [[1, 0, 1, 1], [0, 1, 1, 1]]))
    v = grs_decide(c)
    assert v.is_grs is False and v.method == "non-mds" and v.witness["distance"] == 2


@given(st.sampled_from([F13, F16, F49]), st.integers(0, 10**6), st.booleans())
def test_decide_accepts_every_grs_code(F, seed, with_inf):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    k = rng.randint(1, n - 1)
    c = grs_generator(random_grs(F, rng, n, k, with_inf))
    assert is_mds(c)[0]
    assert grs_decide(c).is_grs


def test_half_rate_uses_cauchy_fit():
    rng = random.Random(11)
    for n in (6, 8, 10):
        c = grs_generator(random_grs(F13, rng, n, n // 2, with_inf=True))
        v = grs_decide(c)
        assert v.method == "cauchy-fit" and v.is_grs
        assert v.audits["schur"]["dim"] == v.audits["schur"]["expected_if_grs"]
