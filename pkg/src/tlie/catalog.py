"""Built-in algebras: classical, color/super, (sl_{n+1}^±)_q, the tilde algebra, L_{p,q,ε}.

Keys use ``family:params`` syntax, e.g. ``sl_plus_q:4``, ``Lpq:3x3`` or
``Lpq:2x3:eps12=-1``.  :func:`load` resolves a key to a validated spec.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .core import BasisElement, TensorPoly, TLieSpec, build_spec
from .errors import BadEps, JacobiFail, NotACommutationFactor, SpecError
from .scalar import ONE, LaurentScalar, as_scalar

Q = LaurentScalar.var("q")
P = LaurentScalar.var("p")


# ---------------------------------------------------------------------------
# (sl_{n+1}^+)_q
# ---------------------------------------------------------------------------

def _e(i: int, j: int, n: int) -> str:
    return f"e{i}{j}" if n + 1 < 10 else f"e{i}_{j}"


def sl_order_key(i: int, j: int) -> tuple[int, int]:
    """e_ab < e_ij iff a+b < i+j, or a+b = i+j and b < j."""
    return (i + j, j)


def sl_exponent(a: int, b: int, u: int, v: int) -> int:
    """c_{ab,uv} with S(e_ab⊗e_uv) = q^c e_uv⊗e_ab for e_ab < e_uv."""
    d = lambda s, t: 1 if s == t else 0  # noqa: E731
    return -d(v, a) + d(v, b) + d(u, a) - d(u, b)


def gl_bracket(i: int, j: int, k: int, l: int) -> dict[tuple[int, int], int]:
    """[e_ij, e_kl] = δ_jk e_il - δ_li e_kj in gl_n, as {(row, col): coeff}."""
    out: dict[tuple[int, int], int] = {}
    if j == k:
        out[i, l] = out.get((i, l), 0) + 1
    if l == i:
        out[k, j] = out.get((k, j), 0) - 1
    return {key: c for key, c in out.items() if c}


def sl_pseudo_indices(i: int, j: int, u: int, v: int):
    """<e_ij, e_uv> as (sign, (row, col), (row, col)) or None.

    sign +1 stands for (q - q^{-1}), -1 for (q^{-1} - q).
    """
    if i < u < j < v:
        return (1, (i, v), (u, j))
    if u < i < v < j:
        return (-1, (u, j), (i, v))
    return None


def _sl_pairs(n: int) -> list[tuple[int, int]]:
    pairs = [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]
    return sorted(pairs, key=lambda ij: sl_order_key(*ij))


def make_sl_plus_q(n: int) -> TLieSpec:
    """(sl_{n+1}^+)_q: strictly upper triangular part of sl_{n+1}, q-deformed."""
    if n < 1:
        raise SpecError("sl_plus_q needs n >= 1")
    pairs = _sl_pairs(n)
    name = lambda i, j: _e(i, j, n)  # noqa: E731
    basis = [BasisElement(name(i, j), i * (j - i), f"e_{{{i}{j}}}") for i, j in pairs]
    sym, bracket, pseudo = {}, {}, {}
    qq = Q - Q.invert_unit()
    for s, (a, b) in enumerate(pairs):
        for (u, v) in pairs[s + 1:]:
            x, y = name(a, b), name(u, v)
            c = sl_exponent(a, b, u, v)
            if c:
                sym[x, y] = Q ** c
            br = gl_bracket(a, b, u, v)
            if br:
                bracket[x, y] = {name(*rc): coeff for rc, coeff in br.items()}
            ps = sl_pseudo_indices(a, b, u, v)
            if ps:
                sign, w1, w2 = ps
                pseudo[x, y] = TensorPoly.word(name(*w1), name(*w2), coeff=qq if sign > 0 else -qq)
    return build_spec(f"sl_plus_q:{n}", basis, sym, bracket, pseudo, variables=("q",))


def make_sl_minus_q(n: int) -> TLieSpec:
    """(sl_{n+1}^-)_q: the transpose of the plus algebra.

    e_ji is ordered and graded as e_ij; pseudobrackets are transposed letter by
    letter and brackets are the classical lower-triangular ones.
    """
    if n < 1:
        raise SpecError("sl_minus_q needs n >= 1")
    pairs = _sl_pairs(n)
    name = lambda i, j: _e(j, i, n)  # noqa: E731  (transposed id)
    basis = [BasisElement(name(i, j), i * (j - i), f"e_{{{j}{i}}}") for i, j in pairs]
    sym, bracket, pseudo = {}, {}, {}
    qq = Q - Q.invert_unit()
    for s, (a, b) in enumerate(pairs):
        for (u, v) in pairs[s + 1:]:
            x, y = name(a, b), name(u, v)
            c = sl_exponent(a, b, u, v)
            if c:
                sym[x, y] = Q ** c
            br = gl_bracket(b, a, v, u)
            if br:
                bracket[x, y] = {_e(r, col, n): coeff for (r, col), coeff in br.items()}
            ps = sl_pseudo_indices(a, b, u, v)
            if ps:
                sign, w1, w2 = ps
                pseudo[x, y] = TensorPoly.word(name(*w1), name(*w2), coeff=qq if sign > 0 else -qq)
    return build_spec(f"sl_minus_q:{n}", basis, sym, bracket, pseudo, variables=("q",))


def make_tilde_sl4() -> TLieSpec:
    """(sl_4^+)_q with the pseudobracket erased (T = S); same bracket and grading."""
    base = make_sl_plus_q(3)
    return build_spec(
        "tilde_sl4", base.basis, base.sym, base.bracket, {}, variables=("q",),
        notes={"origin": "sl_plus_q:3 with zero pseudobracket"},
    )


# ---------------------------------------------------------------------------
# L_{p,q,ε}(n, m)
# ---------------------------------------------------------------------------

def _z(i: int, j: int) -> str:
    return f"Z{i}_{j}"


def lpq_grade(sub: int, sup: int) -> int:
    return sub * 3 ** (sup - 1)


def _eps_function(size: int, eps: Mapping | None) -> tuple[Callable[[int, int], int], dict[str, int]]:
    table: dict[tuple[int, int], int] = {}
    for key, val in (eps or {}).items():
        if isinstance(key, str):
            m = re.fullmatch(r"(?:eps|e)?(\d)(\d)|(?:eps|e)?(\d+)_(\d+)", key)
            if not m:
                raise BadEps(f"cannot read epsilon key {key!r}")
            i, j = (int(m.group(1)), int(m.group(2))) if m.group(1) else (int(m.group(3)), int(m.group(4)))
        else:
            i, j = key
        if not (1 <= i <= size and 1 <= j <= size):
            raise BadEps(f"epsilon index ({i},{j}) outside 1..{size}")
        if val not in (1, -1):
            raise BadEps(f"epsilon_{i}{j} = {val!r}, must be ±1")
        if i == j:
            if val != 1:
                raise BadEps(f"epsilon_{i}{i} must be 1")
            continue
        a, b = min(i, j), max(i, j)
        if table.get((a, b), val) != val:
            raise BadEps(f"epsilon_{a}{b} given inconsistent values (must be symmetric)")
        table[a, b] = val

    def e(i: int, j: int) -> int:
        if i == j:
            return 1
        return table.get((min(i, j), max(i, j)), 1)

    signs = {f"eps{a}{b}" if size < 10 else f"eps{a}_{b}": e(a, b)
             for a in range(1, size + 1) for b in range(a + 1, size + 1)}
    return e, signs


def lpq_S(i: int, l: int, u: int, v: int, eps) -> LaurentScalar:
    """Coefficient of S(Z_i^l ⊗ Z_u^v) for Z_i^l > Z_u^v."""
    if i == u and l > v:
        return P * eps(v, l)
    if l == v and i > u:
        return Q * eps(u, i)
    if i > u and v > l:
        return P.invert_unit() * Q * (eps(i, u) * eps(v, l))
    if i > u and l > v:
        return as_scalar(eps(v, l) * eps(u, i))
    raise ValueError(f"Z_{i}^{l} is not greater than Z_{u}^{v}")


def lpq_pseudo(i: int, l: int, u: int, v: int, eps) -> TensorPoly:
    """<Z_i^l, Z_u^v> for Z_i^l > Z_u^v."""
    if i > u and l > v:
        return TensorPoly.word(_z(i, v), _z(u, l), coeff=(P - Q.invert_unit()) * eps(v, l))
    return TensorPoly()


def make_Lpq(n: int, m: int | None = None, eps: Mapping | None = None) -> TLieSpec:
    """L_{p,q,ε}(n, m): basis Z_i^j, 1 <= i <= n (subscript), 1 <= j <= m (superscript)."""
    m = n if m is None else m
    if n < 1 or m < 1:
        raise SpecError("Lpq needs positive dimensions")
    e, signs = _eps_function(max(n, m), eps)
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]  # ascending order
    basis = [BasisElement(_z(i, j), lpq_grade(i, j), f"Z_{i}^{j}") for i, j in cells]
    sym, pseudo = {}, {}
    for s, (u, v) in enumerate(cells):
        for (i, l) in cells[s + 1:]:
            # the case tables are stated for the disordered pair Z_i^l > Z_u^v
            c = lpq_S(i, l, u, v, e)
            q_small_big = c.invert_unit()
            if q_small_big != ONE:
                sym[_z(u, v), _z(i, l)] = q_small_big
            ps = lpq_pseudo(i, l, u, v, e)
            if ps:
                pseudo[_z(u, v), _z(i, l)] = ps.scale(-q_small_big)
    tag = "" if all(x == 1 for x in signs.values()) else ":" + ",".join(f"{k}={v}" for k, v in signs.items() if v != 1)
    return build_spec(f"Lpq:{n}x{m}{tag}", basis, sym, {}, pseudo, variables=("p", "q"), signs=signs)


# ---------------------------------------------------------------------------
# classical and color algebras
# ---------------------------------------------------------------------------

def _linear(table: Mapping, x: str, y: str) -> dict[str, Fraction]:
    return {z: Fraction(c) for z, c in table.get((x, y), {}).items() if c}


def make_classical(name: str, ids: Sequence[str], constants: Mapping[tuple[str, str], Mapping[str, object]]) -> TLieSpec:
    """Classical Lie algebra: η ≡ 1, S the plain swap, zero pseudobracket.

    ``constants`` may list [x, y] for any pairs; listed pairs must be
    antisymmetric and the full table must satisfy the Jacobi identity.
    """
    ids = list(ids)
    index = {x: k for k, x in enumerate(ids)}
    full: dict[tuple[str, str], dict[str, Fraction]] = {}
    for (x, y), val in constants.items():
        for z in (x, y, *val):
            if z not in index:
                raise SpecError(f"unknown basis id {z!r} in structure constants")
        full[x, y] = {z: Fraction(c) for z, c in val.items() if c}
    for (x, y), val in list(full.items()):
        neg = {z: -c for z, c in val.items()}
        if x == y and val:
            raise JacobiFail(f"[{x},{x}] must vanish in a classical Lie algebra", witness=(x, x))
        other = full.get((y, x))
        if other is None:
            full[y, x] = neg
        elif other != neg:
            raise JacobiFail(f"[{y},{x}] != -[{x},{y}]", witness=(x, y))

    def br(a: str, b: str) -> dict[str, Fraction]:
        return full.get((a, b), {})

    def br_vec(a: str, vec: Mapping[str, Fraction], left: bool) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for z, c in vec.items():
            for w, d in (br(a, z) if left else br(z, a)).items():
                out[w] = out.get(w, 0) + c * d
        return {w: c for w, c in out.items() if c}

    for x, y, z in itertools.combinations(ids, 3):
        total: dict[str, Fraction] = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for w, d in br_vec(a, br(b, c), left=True).items():
                total[w] = total.get(w, 0) + d
        if any(total.values()):
            raise JacobiFail(f"Jacobi identity fails on ({x}, {y}, {z})", witness=(x, y, z))

    bracket = {}
    for (x, y), val in full.items():
        if index[x] < index[y] and val:
            bracket[x, y] = val
    return build_spec(name, [(x, 1) for x in ids], {}, bracket, {})


GroupElem = tuple


def _group_elements(orders: Sequence[int]) -> list[GroupElem]:
    return list(itertools.product(*[range(k) for k in orders]))


def _gadd(a: GroupElem, b: GroupElem, orders: Sequence[int]) -> GroupElem:
    return tuple((x + y) % k for x, y, k in zip(a, b, orders))


def check_commutation_factor(orders: Sequence[int], eps: Callable[[GroupElem, GroupElem], object]) -> None:
    """Raise NotACommutationFactor unless eps is skew and bi-multiplicative on Γ."""
    elems = _group_elements(orders)
    val = lambda a, b: as_scalar(eps(a, b))  # noqa: E731
    for a in elems:
        for b in elems:
            if val(a, b) * val(b, a) != ONE:
                raise NotACommutationFactor(
                    f"eps({a},{b}) * eps({b},{a}) = {val(a, b) * val(b, a)} != 1", witness=(a, b)
                )
            for c in elems:
                if val(_gadd(a, b, orders), c) != val(a, c) * val(b, c):
                    raise NotACommutationFactor(f"eps is not multiplicative in the first slot at {(a, b, c)}",
                                                witness=(a, b, c))
                if val(a, _gadd(b, c, orders)) != val(a, b) * val(a, c):
                    raise NotACommutationFactor(f"eps is not multiplicative in the second slot at {(a, b, c)}",
                                                witness=(a, b, c))


def make_color(
    name: str,
    orders: Sequence[int],
    eps: Callable[[GroupElem, GroupElem], object] | Mapping,
    basis: Sequence[tuple[str, GroupElem]],
    constants: Mapping[tuple[str, str], Mapping[str, object]],
    notes: Mapping[str, str] | None = None,
) -> TLieSpec:
    """Lie color algebra over the abelian group Z_{k1} x ... x Z_{kr}.

    ``basis`` lists (id, degree) in the chosen total order; ``constants`` gives
    [x, y] for x <= y.  S(x⊗y) = eps(deg x, deg y) y⊗x, η ≡ 1, <,> = 0.
    """
    orders = tuple(orders)
    if isinstance(eps, Mapping):
        table = dict(eps)
        eps_fn = lambda a, b: table[tuple(a), tuple(b)]  # noqa: E731
    else:
        eps_fn = eps
    check_commutation_factor(orders, eps_fn)
    degree = {x: tuple(d) for x, d in basis}
    sym = {}
    ids = [x for x, _ in basis]
    for s, x in enumerate(ids):
        for y in ids[s:]:
            c = as_scalar(eps_fn(degree[x], degree[y]))
            if c != ONE:
                sym[x, y] = c
    for (x, y), val in constants.items():
        target = _gadd(degree[x], degree[y], orders)
        for z in val:
            if degree[z] != target:
                raise SpecError(f"[{x},{y}] has a component {z} outside degree {target}")
    return build_spec(name, [(x, 1) for x in ids], sym, dict(constants), {}, notes=notes)


def make_super(name: str, basis: Sequence[tuple[str, int]], constants: Mapping, notes: Mapping | None = None) -> TLieSpec:
    """Lie superalgebra as a Z_2 color algebra with S(x⊗y) = (-1)^{|x||y|} y⊗x."""
    return make_color(name, (2,), lambda a, b: (-1) ** (a[0] * b[0]),
                      [(x, (d,)) for x, d in basis], constants, notes)


def make_super_demo() -> TLieSpec:
    """Smallest superalgebra with a nonzero odd square: odd x, even y, [x,x] = y."""
    return make_super(
        "super_demo", [("x", 1), ("y", 0)], {("x", "x"): {"y": 1}},
        notes={"origin": "demo algebra exercising q_{x,x} = -1"},
    )


def make_color_demo() -> TLieSpec:
    """Z_2 x Z_2 color algebra with x, y, z = [x, y] and eps(a,b) = (-1)^{a1 b2 + a2 b1}."""
    return make_color(
        "color_demo", (2, 2), lambda a, b: (-1) ** (a[0] * b[1] + a[1] * b[0]),
        [("x", (1, 0)), ("y", (0, 1)), ("z", (1, 1))], {("x", "y"): {"z": 1}},
        notes={"origin": "demo algebra with a genuinely colored commutation factor"},
    )


def make_classical_sl_plus(n: int) -> TLieSpec:
    """Classical strictly upper triangular sl_{n+1}^+, ordered like the quantum one."""
    pairs = _sl_pairs(n)
    ids = [_e(i, j, n) for i, j in pairs]
    constants = {}
    for (a, b) in pairs:
        for (u, v) in pairs:
            br = gl_bracket(a, b, u, v)
            if br:
                constants[_e(a, b, n), _e(u, v, n)] = {_e(*rc, n): c for rc, c in br.items()}
    spec = make_classical(f"classical_sl_plus:{n}", ids, constants)
    return spec


def make_classical_sl_minus(n: int) -> TLieSpec:
    pairs = _sl_pairs(n)
    ids = [_e(j, i, n) for i, j in pairs]
    constants = {}
    for (a, b) in pairs:
        for (u, v) in pairs:
            br = gl_bracket(b, a, v, u)
            if br:
                constants[_e(b, a, n), _e(v, u, n)] = {_e(*rc, n): c for rc, c in br.items()}
    return make_classical(f"classical_sl_minus:{n}", ids, constants)


def make_abelian(n: int) -> TLieSpec:
    return make_classical(f"abelian:{n}", [f"a{k}" for k in range(1, n + 1)], {})


# ---------------------------------------------------------------------------
# key resolution
# ---------------------------------------------------------------------------

CATALOG_KEYS = (
    "sl_plus_q:N", "sl_minus_q:N", "tilde_sl4", "Lpq:NxM[:eps12=-1,...]",
    "classical_sl_plus:N", "classical_sl_minus:N", "abelian:N", "super_demo", "color_demo",
)

EXAMPLE_KEYS = (
    "sl_plus_q:2", "sl_plus_q:3", "sl_plus_q:4", "sl_minus_q:3", "tilde_sl4",
    "Lpq:2x2", "Lpq:3x3", "classical_sl_plus:2", "abelian:3", "super_demo", "color_demo",
)


def is_catalog_key(key: str) -> bool:
    family = key.split(":", 1)[0]
    return family in {"sl_plus_q", "sl_minus_q", "tilde_sl4", "Lpq", "classical_sl_plus",
                      "classical_sl_minus", "abelian", "super_demo", "color_demo"}


def load(key: str) -> TLieSpec:
    """Build the catalog algebra named by ``key``."""
    family, _, rest = key.partition(":")
    try:
        if family == "sl_plus_q":
            return make_sl_plus_q(int(rest))
        if family == "sl_minus_q":
            return make_sl_minus_q(int(rest))
        if family == "classical_sl_plus":
            return make_classical_sl_plus(int(rest))
        if family == "classical_sl_minus":
            return make_classical_sl_minus(int(rest))
        if family == "abelian":
            return make_abelian(int(rest))
        if family == "tilde_sl4" and not rest:
            return make_tilde_sl4()
        if family == "super_demo" and not rest:
            return make_super_demo()
        if family == "color_demo" and not rest:
            return make_color_demo()
        if family == "Lpq":
            dims, _, eps_text = rest.partition(":")
            n_text, _, m_text = dims.partition("x")
            eps = {}
            if eps_text:
                for item in eps_text.split(","):
                    k, _, v = item.partition("=")
                    eps[k.strip()] = int(v)
            return make_Lpq(int(n_text), int(m_text or n_text), eps)
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"bad catalog key {key!r}: {exc}") from None
    raise SpecError(f"unknown catalog key {key!r}; known families: {', '.join(CATALOG_KEYS)}")


def iter_examples() -> Iterable[TLieSpec]:
    for key in EXAMPLE_KEYS:
        yield load(key)
