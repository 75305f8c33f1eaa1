from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tlie import catalog
from tlie.core import TensorPoly
from tlie.scalar import LaurentScalar

settings.register_profile(
    "tlie", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("tlie")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, variables=("q",), max_terms=3, max_exp=3):
    """Random element of Q[v^{±1}] as a LaurentScalar."""
    out = LaurentScalar.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {v: draw(st.integers(-max_exp, max_exp)) for v in variables}
        out = out + LaurentScalar.monomial(draw(small_fractions), exps)
    return out


@st.composite
def tensors(draw, spec, max_len=3, max_terms=3, coeffs=None):
    """Random tensor of words of length <= max_len over the basis of ``spec``."""
    coeffs = coeffs or laurent(tuple(spec.variables) or ("q",), max_terms=2, max_exp=2)
    out = TensorPoly()
    for _ in range(draw(st.integers(1, max_terms))):
        n = draw(st.integers(0, max_len))
        w = tuple(draw(st.sampled_from(spec.ids)) for _ in range(n))
        c = draw(coeffs) if spec.variables else draw(small_fractions)
        out = out + TensorPoly.word(*w, coeff=c)
    return out


def sl3():
    return catalog.load("sl_plus_q:3")


def as_fraction(x) -> Fraction:
    return Fraction(x)
