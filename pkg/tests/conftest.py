from fractions import Fraction

from hypothesis import settings, strategies as st

from qcrystal.ratfield import RatFunc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def ratfuncs(draw, nonzero=False, in_A0=False):
    """Random elements of Q(t) with small coefficients."""
    num = draw(st.lists(small_ints, min_size=1, max_size=4))
    den = draw(st.lists(small_ints, min_size=1, max_size=3).filter(any))
    shift = draw(st.integers(min_value=-2, max_value=2))
    if in_A0:
        den = [1] + den[1:]
        shift = abs(shift)
    f = RatFunc.from_coeffs(num, den) * RatFunc.t_pow(shift)
    if nonzero and f.is_zero():
        f = RatFunc.const(draw(st.sampled_from([1, -1, 2, Fraction(1, 3)])))
    return f
