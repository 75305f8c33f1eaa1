from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laurent, sl3, tensors
from tlie import catalog
from tlie.core import (
    TensorPoly,
    apply_bracket,
    apply_pseudobracket,
    apply_S,
    apply_T,
    build_spec,
    pair_S,
    restrict,
    specialize_spec,
)
from tlie.errors import (
    BadDiagonal,
    BadGrade,
    BadTableDegree,
    DisorderedEntry,
    DuplicateId,
    IllegalDiagonalBracket,
    NonUnitSymCoefficient,
    NotClosed,
    UnknownIdInTable,
    WordTooShort,
)
from tlie.scalar import LaurentScalar

q = LaurentScalar.var("q")
SPEC = sl3()
MAPS = (apply_S, apply_T, apply_bracket, apply_pseudobracket)


def test_tensor_arithmetic():
    """Words concatenate under *, scalars scale, zero terms drop out."""
    a = TensorPoly.word("e12", "e23")
    b = TensorPoly.word("e13", coeff=q)
    assert (a * b).coeff(("e12", "e23", "e13")) == q
    assert (a - a).is_zero()
    assert (2 * a).coeff(("e12", "e23")) == 2
    assert TensorPoly.scalar(3) * a == a.scale(3)
    assert len(a + b) == 2


def test_derived_entries_from_antisymmetry():
    """Entries for x > y follow from the stored x < y entries."""
    qv = SPEC.q("e12", "e23")
    assert SPEC.q("e23", "e12") == qv.invert_unit()
    assert SPEC.br("e23", "e12") == SPEC.br("e12", "e23").scale(-SPEC.q("e23", "e12"))
    assert SPEC.ps("e24", "e13") == SPEC.ps("e13", "e24").scale(-SPEC.q("e24", "e13"))


def test_pair_S_and_positions():
    """S swaps the chosen slots with the q coefficient; short words are rejected."""
    t = TensorPoly.word("e12", "e23", "e13")
    assert apply_S(SPEC, t, 1) == TensorPoly.word("e12", "e13", "e23", coeff=SPEC.q("e23", "e13"))
    assert pair_S(SPEC, "e12", "e23") == TensorPoly.word("e23", "e12", coeff=SPEC.q("e12", "e23"))
    with pytest.raises(WordTooShort):
        apply_S(SPEC, TensorPoly.word("e12", "e23"), 1)


def test_bracket_contracts_slots():
    """[e12, e23] = e13 in the upper triangular algebra."""
    assert apply_bracket(SPEC, TensorPoly.word("e12", "e23")) == TensorPoly.word("e13")
    assert apply_T(SPEC, TensorPoly.word("e13", "e24")) == (
        TensorPoly.word("e24", "e13", coeff=SPEC.q("e13", "e24")) + SPEC.ps("e13", "e24")
    )


@settings(max_examples=150)
@given(st.data())
def test_structure_maps_are_linear(data):
    """Every apply_* map is linear over the scalar ring."""
    a = data.draw(tensors(SPEC, max_len=3))
    b = data.draw(tensors(SPEC, max_len=3))
    a = TensorPoly({w + ("e12", "e12")[: max(0, 2 - len(w))]: c for w, c in a.items()})
    b = TensorPoly({w + ("e23", "e23")[: max(0, 2 - len(w))]: c for w, c in b.items()})
    c = data.draw(laurent())
    for f in MAPS:
        assert f(SPEC, a + b.scale(c)) == f(SPEC, a) + f(SPEC, b).scale(c)


def test_build_spec_rejects_bad_input():
    """Each malformed table raises its own error."""
    basis = [("x", 1), ("y", 1), ("z", 2)]
    with pytest.raises(DuplicateId):
        build_spec("bad", [("x", 1), ("x", 1)])
    with pytest.raises(BadGrade):
        build_spec("bad", [("x", 0)])
    with pytest.raises(UnknownIdInTable):
        build_spec("bad", basis, bracket={("x", "w"): {"z": 1}})
    with pytest.raises(DisorderedEntry):
        build_spec("bad", basis, sym={("y", "x"): q})
    with pytest.raises(NonUnitSymCoefficient):
        build_spec("bad", basis, sym={("x", "y"): q + 1})
    with pytest.raises(BadDiagonal):
        build_spec("bad", basis, sym={("x", "x"): q})
    with pytest.raises(IllegalDiagonalBracket):
        build_spec("bad", basis, bracket={("x", "x"): {"z": 1}})
    with pytest.raises(BadTableDegree):
        build_spec("bad", basis, pseudo={("x", "y"): {"z": 1}})


def test_restrict_closed_and_open_subsets():
    """A sub-triangle restricts cleanly; dropping a bracket value fails with a witness."""
    sub = restrict(SPEC, ["e12", "e13", "e23"])
    assert sub.br("e12", "e23") == TensorPoly.word("e13")
    with pytest.raises(NotClosed) as err:
        restrict(SPEC, ["e12", "e23"])
    assert err.value.witness == ("e12", "e23")


def test_specialize_spec_q1_is_classical():
    """At q = 1 every sym entry is 1 and every pseudobracket vanishes."""
    s1 = specialize_spec(catalog.load("sl_plus_q:3"), {"q": 1})
    assert all(v == 1 for v in s1.sym.values())
    assert not s1.pseudo
    assert s1.variables == ()


def test_scalars_from_fractions():
    """Rational structure constants are kept exactly."""
    spec = build_spec("frac", [("x", 1), ("y", 1), ("z", 2)], bracket={("x", "y"): {"z": Fraction(1, 2)}})
    assert spec.br("x", "y").coeff(("z",)) == Fraction(1, 2)
