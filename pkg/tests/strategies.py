"""Hypothesis strategies for field elements and parameter sets."""

from hypothesis import strategies as st

from mdsforge.gf import Fe, Field

F7 = Field(7)
F13 = Field(13)
F16 = Field(2, 4)
F49 = Field(7, 2, [2, 0, 1])
F27 = Field(3, 3)
FIELDS = [F7, F13, F16, F27, F49]

fields = st.sampled_from(FIELDS)


def elements(F: Field, nonzero: bool = False):
    return st.integers(1 if nonzero else 0, F.q - 1).map(lambda v: Fe(F, v))


@st.composite
def field_and_elements(draw, count: int, nonzero: bool = False):
    F = draw(fields)
    return F, [draw(elements(F, nonzero)) for _ in range(count)]


@st.composite
def distinct_points(draw, F: Field, min_size: int, max_size: int, nonzero: bool = False):
    vals = draw(st.lists(st.integers(1 if nonzero else 0, F.q - 1), min_size=min_size,
                         max_size=max_size, unique=True))
    return [Fe(F, v) for v in vals]


@st.composite
def matrices(draw, F: Field, max_rows: int = 5, max_cols: int = 5, square: bool = False):
    r = draw(st.integers(1, max_rows))
    c = r if square else draw(st.integers(1, max_cols))
    return [[draw(st.integers(0, F.q - 1)) for _ in range(c)] for _ in range(r)]
