"""Acceptance suite: one test per criterion, each printing a single
PASS/FAIL line with its elapsed time (run with ``pytest -s`` to see them)."""

import pytest

from mdsforge.reproduce import (
    closed_form,
    forge_example,
    forge_sweep,
    formulas,
    info_sets,
    lambda_identities,
    last_hook_family,
    square_dimension,
    systematic_example,
    zero_hook_family,
)

CRITERIA = [
    (1, "systematic block of RS_3 over F_49 matches the expected A, 15/15", systematic_example, {}, 1),
    (2, "forged D is MDS and not GRS, by fit failure and Schur/dual agreement", forge_example, {}, 1),
    (3, "Cauchy and extended Cauchy determinant formulas, 200 + 200 draws", formulas,
     {"trials": 200}, 5),
    (4, "dim C^2 = 2k-1 for 50 GRS codes", square_dimension, {"trials": 50}, 10),
    (5, "hook k-1 family certified non-GRS, q=13 n=10", last_hook_family, {"trials": 5}, 10),
    (6, "hook 0 family certified non-GRS, q=13 n=10", zero_hook_family, {"trials": 5}, 10),
    (7, "information-set criterion on every subset, 200 draws", info_sets, {"trials": 200}, 60),
    (8, "closed-form systematic block, 100 draws plus the subgroup instance", closed_form,
     {"trials": 100}, 10),
    (9, "lambda identities, 50 locator sets", lambda_identities, {"trials": 50}, 2),
    (10, "forge sweep, 100 draws over F_13 with d = 2", forge_sweep, {"trials": 100}, 60),
]


@pytest.mark.parametrize("num,title,scenario,kwargs,limit", CRITERIA,
                         ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(num, title, scenario, kwargs, limit):
    rep = scenario(**kwargs)
    in_time = rep.seconds < limit
    ok = rep.ok and in_time
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {title} "
          f"({rep.seconds:.2f} s, limit {limit} s)")
    if not ok:
        print(rep.render())
    assert rep.ok, "; ".join(rep.failures)
    assert in_time, f"took {rep.seconds:.2f} s, limit {limit} s"
