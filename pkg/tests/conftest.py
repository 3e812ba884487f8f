import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from starprod.scalars import GaussRational, RationalQ, SeriesRing

# exact-arithmetic examples can be slow; flakiness from per-example
# deadlines is worse than the lost signal
settings.register_profile("starprod", deadline=None)
settings.load_profile("starprod")


@pytest.fixture
def rng():
    return random.Random(20240815)


def fractions(max_num=30, max_den=12):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def gauss_rationals():
    return st.builds(GaussRational, fractions(), fractions())


def trunc_series(order=4):
    ring = SeriesRing(order=order, exact=True)
    return st.builds(lambda coeffs: ring.from_coefficients(coeffs),
                     st.lists(gauss_rationals(), min_size=1, max_size=order + 1))


def rational_qs():
    num = st.lists(gauss_rationals(), min_size=0, max_size=3)
    den = st.lists(gauss_rationals(), min_size=1, max_size=3).filter(
        lambda cs: any(not c.is_zero() for c in cs))
    return st.builds(RationalQ, num, den)


def bounded_complex():
    part = st.floats(min_value=-100.0, max_value=100.0,
                     allow_nan=False, allow_infinity=False)
    return st.builds(complex, part, part)
