from __future__ import annotations

import itertools

import numpy as np
import pytest

from tlie import catalog
from tlie.core import TensorPoly, specialize_spec
from tlie.errors import BadEps, JacobiFail, NotACommutationFactor, SpecError
from tlie.scalar import LaurentScalar

q = LaurentScalar.var("q")
p = LaurentScalar.var("p")


def elementary(i: int, j: int, size: int) -> np.ndarray:
    m = np.zeros((size, size), dtype=int)
    m[i - 1, j - 1] = 1
    return m


def sl_cells(n: int):
    return [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def matrix_to_element(m: np.ndarray, n: int) -> TensorPoly:
    out = TensorPoly()
    for (i, j) in sl_cells(n):
        if m[i - 1, j - 1]:
            out = out + TensorPoly.word(f"e{i}{j}", coeff=int(m[i - 1, j - 1]))
    return out


@pytest.mark.parametrize("n, size", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 15)])
def test_sl_basis_sizes_and_grades(n, size):
    """n(n+1)/2 generators with grade i(j-i)."""
    spec = catalog.load(f"sl_plus_q:{n}")
    assert len(spec.ids) == size
    for i, j in sl_cells(n):
        assert spec.grade[f"e{i}{j}"] == i * (j - i)


def test_sl_order_matches_reading_order():
    """e_ab < e_ij iff (a+b, b) < (i+j, j)."""
    spec = catalog.load("sl_plus_q:3")
    assert spec.ids == ("e12", "e13", "e23", "e14", "e24", "e34")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_brackets_are_matrix_commutators(n):
    """[x, y] for x < y equals the matrix commutator of elementary matrices."""
    spec = catalog.load(f"sl_plus_q:{n}")
    size = n + 1
    for (a, b), (u, v) in itertools.product(sl_cells(n), repeat=2):
        x, y = f"e{a}{b}", f"e{u}{v}"
        if not spec.lt(x, y):
            continue
        ex, ey = elementary(a, b, size), elementary(u, v, size)
        assert spec.br(x, y) == matrix_to_element(ex @ ey - ey @ ex, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_q_exponents_from_cartan_action(n):
    """q_{x,y} = q^c with [h_x, y] = c y, h_x = [x, x^t]."""
    spec = catalog.load(f"sl_plus_q:{n}")
    size = n + 1
    for (a, b), (u, v) in itertools.product(sl_cells(n), repeat=2):
        x, y = f"e{a}{b}", f"e{u}{v}"
        if not spec.lt(x, y):
            continue
        ex, ey = elementary(a, b, size), elementary(u, v, size)
        h = ex @ ex.T - ex.T @ ex
        comm = h @ ey - ey @ h
        c = int(comm[u - 1, v - 1])
        assert spec.q(x, y) == q ** c


def test_sl_pseudobracket_case_table():
    """<e_ij, e_uv> = (q - q^-1) e_iv⊗e_uj if i<u<j<v, (q^-1 - q) e_uj⊗e_iv if u<i<v<j."""
    spec = catalog.load("sl_plus_q:4")
    qq = q - q ** -1
    for (i, j), (u, v) in itertools.product(sl_cells(4), repeat=2):
        x, y = f"e{i}{j}", f"e{u}{v}"
        if not spec.lt(x, y):
            continue
        if i < u < j < v:
            expected = TensorPoly.word(f"e{i}{v}", f"e{u}{j}", coeff=qq)
        elif u < i < v < j:
            expected = TensorPoly.word(f"e{u}{j}", f"e{i}{v}", coeff=-qq)
        else:
            expected = TensorPoly()
        assert spec.ps(x, y) == expected


def test_sl4_single_pseudobracket():
    """In sl_4^+ the only nonzero pseudobracket is <e13, e24> = (q - q^-1) e14⊗e23."""
    spec = catalog.load("sl_plus_q:3")
    assert dict(spec.pseudo) == {("e13", "e24"): TensorPoly.word("e14", "e23", coeff=q - q ** -1)}


def test_sl_minus_is_transpose():
    """Lower triangular ids, same grades, brackets of transposed matrices."""
    plus, minus = catalog.load("sl_plus_q:3"), catalog.load("sl_minus_q:3")
    assert minus.ids == tuple(f"e{x[2]}{x[1]}" for x in plus.ids)
    assert minus.br("e21", "e32") == TensorPoly.word("e31", coeff=-1)
    assert [b.grade for b in minus.basis] == [b.grade for b in plus.basis]


def test_tilde_has_zero_pseudobracket():
    """The tilde algebra keeps sym and bracket but T = S."""
    tilde, plus = catalog.load("tilde_sl4"), catalog.load("sl_plus_q:3")
    assert not tilde.pseudo
    assert tilde.sym == plus.sym and tilde.bracket == plus.bracket


def lpq_S_oracle(i, l, u, v, eps):
    """S(Z_i^l ⊗ Z_u^v) coefficient for Z_i^l > Z_u^v, read off the case table."""
    if i == u and l > v:
        return eps[v, l] * p
    if l == v and i > u:
        return eps[u, i] * q
    if i > u and v > l:
        return eps[i, u] * eps[v, l] * p ** -1 * q
    return LaurentScalar.const(eps[v, l] * eps[u, i])


@pytest.mark.parametrize("key, e12", [("Lpq:3x3", 1), ("Lpq:3x3:eps12=-1", -1)])
def test_lpq_tables(key, e12):
    """Every disordered pair reproduces the S and pseudobracket case tables."""
    spec = catalog.load(key)
    eps = {(a, b): 1 for a in range(1, 4) for b in range(1, 4)}
    eps[1, 2] = eps[2, 1] = e12
    cells = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    for (i, l), (u, v) in itertools.product(cells, repeat=2):
        if not (i > u or (i == u and l > v)):
            continue
        x, y = f"Z{i}_{l}", f"Z{u}_{v}"
        assert spec.q(x, y) == lpq_S_oracle(i, l, u, v, eps)
        expected = TensorPoly()
        if i > u and l > v:
            expected = TensorPoly.word(f"Z{i}_{v}", f"Z{u}_{l}", coeff=eps[v, l] * (p - q ** -1))
        assert spec.ps(x, y) == expected
        assert spec.br(x, y) == TensorPoly()


def test_lpq_grades_and_shape():
    """η(Z_sub^sup) = sub·3^(sup-1); rectangular arrays have n·m generators."""
    spec = catalog.load("Lpq:2x3")
    assert len(spec.ids) == 6
    assert spec.grade["Z2_3"] == 2 * 9
    assert spec.grade["Z1_2"] == 3


def test_lpq_rejects_bad_eps():
    """Epsilons must be ±1, symmetric, and in range."""
    with pytest.raises(BadEps):
        catalog.make_Lpq(2, 2, {"eps12": 2})
    with pytest.raises(BadEps):
        catalog.make_Lpq(2, 2, {"eps13": -1})
    with pytest.raises(BadEps):
        catalog.make_Lpq(2, 2, {(1, 2): 1, (2, 1): -1})


def test_classical_rejects_non_jacobi():
    """[x,y]=y, [y,z]=x, [x,z]=0 violates Jacobi on (x, y, z)."""
    with pytest.raises(JacobiFail) as err:
        catalog.make_classical("bad", ["x", "y", "z"], {("x", "y"): {"y": 1}, ("y", "z"): {"x": 1}})
    assert err.value.witness == ("x", "y", "z")


def test_color_rejects_non_commutation_factor():
    """A map with eps(a,b)·eps(b,a) = -1 is refused with the offending pair."""
    with pytest.raises(NotACommutationFactor) as err:
        catalog.make_color("bad", (2,), lambda a, b: -1 if a[0] and not b[0] else 1,
                           [("x", (1,)), ("y", (0,))], {})
    assert err.value.witness is not None


def test_color_rejects_inhomogeneous_bracket():
    """A bracket component must live in the sum of the degrees."""
    with pytest.raises(SpecError):
        catalog.make_color("bad", (2,), lambda a, b: 1, [("x", (1,)), ("y", (0,))], {("x", "y"): {"y": 1}})


def test_super_demo_diagonal_sign():
    """The odd generator has q_{x,x} = -1 and [x, x] = y."""
    spec = catalog.load("super_demo")
    assert spec.q("x", "x") == -1
    assert spec.br("x", "x") == TensorPoly.word("y")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_q1_specialization_is_classical(n):
    """At q = 1 the structure constants are those of the classical upper triangular algebra."""
    special = specialize_spec(catalog.load(f"sl_plus_q:{n}"), {"q": 1})
    classical = catalog.load(f"classical_sl_plus:{n}")
    assert special.ids == classical.ids
    assert special.tables()[2:] == classical.tables()[2:]


def test_unknown_keys():
    """Unknown families and malformed parameters are SpecErrors."""
    for key in ("nope:3", "sl_plus_q:x", "Lpq:2y2", "sl_plus_q:0"):
        with pytest.raises(SpecError):
            catalog.load(key)


def test_examples_build():
    """Every example key builds and has a nonempty basis."""
    for spec in catalog.iter_examples():
        assert spec.ids
