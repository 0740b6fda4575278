"""Seeded random parameter draws for property suites and demos."""

from __future__ import annotations

import random

from .gf import Fe, Field
from .grs import INF, CauchyParams, GrsParams
from .gtrs import GtrsParams, Twist


def distinct_elements(F: Field, rng: random.Random, m: int, exclude=(), nonzero=False) -> list[Fe]:
    banned = {e.value for e in exclude}
    pool = [v for v in range(1 if nonzero else 0, F.q) if v not in banned]
    if m > len(pool):
        raise ValueError(f"cannot draw {m} distinct elements from {len(pool)}")
    return [Fe(F, v) for v in rng.sample(pool, m)]


def nonzero_elements(F: Field, rng: random.Random, m: int) -> list[Fe]:
    return [F.random_element(rng, nonzero=True) for _ in range(m)]


def random_grs(F: Field, rng: random.Random, n: int, k: int, with_inf: bool = False) -> GrsParams:
    finite = distinct_elements(F, rng, n - 1 if with_inf else n)
    alpha = (INF, *finite) if with_inf else tuple(finite)
    return GrsParams(alpha, tuple(nonzero_elements(F, rng, n)), k)


def random_gtrs(F: Field, rng: random.Random, n: int, k: int, ell: int,
                same_hook: bool = False, nonzero_alpha: bool = False) -> GtrsParams:
    alpha = distinct_elements(F, rng, n, nonzero=nonzero_alpha)
    hook = rng.randrange(k)
    twists = tuple(Twist(rng.randint(1, n - k), hook if same_hook else rng.randrange(k),
                         F.random_element(rng, nonzero=True)) for _ in range(ell))
    return GtrsParams(tuple(alpha), tuple(nonzero_elements(F, rng, n)), k, twists)


def random_cauchy(F: Field, rng: random.Random, rows: int, cols: int) -> CauchyParams:
    x = distinct_elements(F, rng, rows)
    y = distinct_elements(F, rng, cols, exclude=[-e for e in x])
    return CauchyParams(tuple(nonzero_elements(F, rng, rows)), tuple(nonzero_elements(F, rng, cols)),
                        tuple(x), tuple(y))


def random_extended_cauchy(F: Field, rng: random.Random, m: int, extended_row: int) -> CauchyParams:
    """Square m x m block: m - 1 Cauchy rows plus a row c_inf * d at ``extended_row``."""
    x = distinct_elements(F, rng, m - 1)
    y = distinct_elements(F, rng, m, exclude=[-e for e in x])
    return CauchyParams(tuple(nonzero_elements(F, rng, m - 1)), tuple(nonzero_elements(F, rng, m)),
                        tuple(x), tuple(y), extended_row=extended_row,
                        c_inf=F.random_element(rng, nonzero=True))


def random_normal_form(F: Field, rng: random.Random, k: int, r: int) -> CauchyParams:
    """k x r normal-form block: rows d, d/y, then k - 2 rows c_i d_j / (x_i + y_j)."""
    y = distinct_elements(F, rng, r, nonzero=True)
    x = distinct_elements(F, rng, k - 2, exclude=[-e for e in y], nonzero=True)
    return CauchyParams.normal_form(nonzero_elements(F, rng, r), y,
                                    nonzero_elements(F, rng, k - 2), x)
