import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdsforge.codes import LinearCode
from mdsforge.errors import BetaInBaseFieldError, InvariantViolation, RangeViolationError
from mdsforge.forge import (
    Certificate,
    ForgeParams,
    certify,
    certify_forge,
    forge_blocks,
    forge_build,
    minor_decomposition,
    verify_certificate,
)
from mdsforge.gf import Field
from mdsforge.grs import CauchyParams, FitFailure, cauchy_build, cauchy_fit
from mdsforge.matfield import Mat
from mdsforge.sampling import random_normal_form
from oracles import GF2
from strategies import F7, F13, F49

F7_ELTS = lambda *vals: [F7(v) for v in vals]  # noqa: E731


def example_params(**kw) -> ForgeParams:
    # normal form reproducing [[2,6,5,6,2],[6,5,4,3,2],[2,3,4,5,6]]
    cauchy = CauchyParams.normal_form(F7_ELTS(2, 6, 5, 6, 2), F7_ELTS(5, 4, 3, 2, 1),
                                      F7_ELTS(6), F7_ELTS(1))
    return ForgeParams(cauchy, 2, (2, 0, 1), **kw)


def test_example_normal_form():
    assert cauchy_build(example_params().cauchy).values() == \
        [[2, 6, 5, 6, 2], [6, 5, 4, 3, 2], [2, 3, 4, 5, 6]]


def test_example_forge():
    p = example_params()
    assert p.ext == F49 and p.beta == F49.theta
    _, d = forge_blocks(p)
    assert d[0, 0] == F49.parse_element("2,1")
    cert = certify_forge(p)
    assert cert.is_mds and cert.is_grs is False
    assert cert.mds["distance"] == 6
    assert cert.extra["forge"]["block_fit"]["fits"] is False
    assert verify_certificate(cert.to_json())


def test_beta_must_leave_the_base_field():
    with pytest.raises(BetaInBaseFieldError):
        example_params(beta=F49.zero)
    with pytest.raises(BetaInBaseFieldError):
        example_params(beta=F49(3))
    assert example_params(beta=F49.parse_element("1,3")).beta.coeffs == [1, 3]


def test_range_and_base_checks():
    cauchy = CauchyParams.normal_form(F7_ELTS(1, 2), F7_ELTS(1, 2), F7_ELTS(1), F7_ELTS(3))
    with pytest.raises(RangeViolationError):
        ForgeParams(cauchy, 2)
    wide = CauchyParams.normal_form(F7_ELTS(1, 2, 3), F7_ELTS(1, 2, 3))
    with pytest.raises(RangeViolationError):
        ForgeParams(wide, 2)
    over49 = CauchyParams.normal_form([F49(1)] * 3, [F49(1), F49(2), F49(3)], [F49(1)], [F49.theta])
    with pytest.raises(InvariantViolation):
        ForgeParams(over49, 2)


def test_decomposition_against_reference():
    p = example_params()
    a, d = forge_blocks(p)
    ext = GF2(7, 5)
    pair = lambda v: tuple(F49.coeffs_of(v))  # noqa: E731
    A = [[pair(v) for v in r] for r in a.values()]
    D = [[pair(v) for v in r] for r in d.values()]
    for size in (1, 2, 3):
        for rows in combinations(range(3), size):
            for cols in combinations(range(5), size):
                lhs = ext.det([[D[i][j] for j in cols] for i in rows])
                assert lhs != (0, 0)
                if rows[0] == 0 and cols[0] == 0:
                    comp = ext.det([[A[i][j] for j in cols[1:]] for i in rows[1:]]) \
                        if size > 1 else (1, 0)
                    base = ext.det([[A[i][j] for j in cols] for i in rows])
                    assert lhs == ext.add(base, ext.mul((0, 1), comp))
    assert minor_decomposition(a, d, p.beta) == sum(
        len(list(combinations(range(2), s - 1))) * len(list(combinations(range(4), s - 1)))
        for s in (1, 2, 3))


def test_unperturbed_cauchy_code_is_grs():
    p = random_normal_form(F13, random.Random(8), 4, 4)
    a = cauchy_build(p)
    cert = certify(LinearCode(Mat.hstack(Mat.identity(F13, 4), a)))
    assert cert.is_mds and cert.is_grs is True
    assert verify_certificate(cert.to_json())


def test_repeated_column_is_not_mds():
    c = LinearCode(Mat(F13, [[1, 0, 1, 3], [0, 1, 0, 5]]))
    cert = certify(c)
    assert not cert.is_mds and cert.is_grs is False
    assert len(cert.mds["witness"]["minor_rows"]) in (1, 2)
    assert verify_certificate(cert.to_json())


def test_tampered_certificates_do_not_replay():
    cert = certify_forge(example_params()).to_json()
    bad = json.loads(json.dumps(cert))
    bad["grs"]["witness"]["dim"] = 7
    assert not verify_certificate(bad)
    bad = json.loads(json.dumps(cert))
    bad["grs"]["verdict"] = "GRS"
    assert not verify_certificate(bad)
    bad = json.loads(json.dumps(cert))
    bad["replay"]["code"]["generator"]["rows"][0][3] = "0,0"
    assert not verify_certificate(bad)


def test_params_and_certificate_json():
    p = example_params()
    assert ForgeParams.from_json(json.dumps(p.to_json())) == p
    cert = certify_forge(p)
    again = Certificate.from_json(cert.dumps())
    assert again.to_json() == json.loads(cert.dumps())
    assert set(cert.to_json()) >= {"mds", "grs", "replay"}
    assert {"verdict", "method", "witness"} <= set(cert.grs)


def test_cubic_extension():
    F5 = Field(5)
    p = random_normal_form(F5, random.Random(1), 3, 3)
    cert = certify_forge(ForgeParams(p, 3))
    assert cert.is_mds and cert.is_grs is False


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_forged_codes_are_mds_and_not_grs(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 10)
    k = rng.randint(3, n - 3)
    p = ForgeParams(random_normal_form(F13, rng, k, n - k), 2)
    code = forge_build(p)
    cert = certify(code)
    assert cert.is_mds and cert.is_grs is False
    a, d = forge_blocks(p)
    assert minor_decomposition(a, d, p.beta) > 0
    with pytest.raises(FitFailure):
        cauchy_fit(d)
