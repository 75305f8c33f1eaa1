"""Basic T-Lie algebras: the immutable algebra description and its structure maps.

A basic T-Lie algebra is stored through three tables indexed by pairs of basis
ids ``x <= y``:

* ``sym[x, y]``     the unit scalar q_{x,y} with S(x⊗y) = q_{x,y} y⊗x,
* ``bracket[x, y]`` the element [x, y] of L (tensor degree 1),
* ``pseudo[x, y]``  the element <x, y> of L⊗L (tensor degree 2).

Values on disordered pairs are never stored.  They are derived from the
antisymmetry identities, so those identities hold by construction::

    q_{y,x} = q_{x,y}^{-1}      <y, x> = -q_{y,x} <x, y>      [y, x] = -q_{y,x} [x, y]

T = S + <,> and all four maps act linearly on :class:`TensorPoly` at a chosen
pair of adjacent slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .errors import (
    BadDiagonal,
    BadGrade,
    BadTableDegree,
    DisorderedEntry,
    DuplicateId,
    IllegalDiagonalBracket,
    NonUnitSymCoefficient,
    NotAUnit,
    NotClosed,
    UnknownIdInTable,
    WordTooShort,
)
from .scalar import ONE, ZERO, LaurentScalar, as_scalar

Word = tuple  # tuple[str, ...]


class TensorPoly:
    """A finite sum of scalar-weighted words: an element of the tensor algebra.

    Products of two tensors concatenate words, so ``a * b`` is a⊗b; a scalar
    factor on either side rescales.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean: dict[Word, LaurentScalar] = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c)
                if c:
                    w = tuple(w)
                    prev = clean.get(w)
                    if prev is not None:
                        c = prev + c
                        if not c:
                            del clean[w]
                            continue
                    clean[w] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "TensorPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, *ids: str, coeff=1) -> "TensorPoly":
        return cls({tuple(ids): coeff})

    @classmethod
    def scalar(cls, c) -> "TensorPoly":
        return cls({(): c})

    @property
    def terms(self) -> dict[Word, LaurentScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, word: Iterable[str]) -> LaurentScalar:
        return self._terms.get(tuple(word), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def homogeneous_part(self, degree: int) -> "TensorPoly":
        return TensorPoly._raw({w: c for w, c in self._terms.items() if len(w) == degree})

    def __add__(self, other):
        if not isinstance(other, TensorPoly):
            other = _coerce_tensor(other)
            if other is NotImplemented:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        _accumulate(out, other._terms, ONE)
        return TensorPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return TensorPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorPoly):
            other = _coerce_tensor(other)
            if other is NotImplemented:
                return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms, -ONE)
        return TensorPoly._raw(out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TensorPoly":
        c = as_scalar(c)
        if not c:
            return ZERO_T
        if c == ONE:
            return self
        out = {}
        for w, x in self._terms.items():
            y = x * c
            if y:
                out[w] = y
        return TensorPoly._raw(out)

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            out: dict[Word, LaurentScalar] = {}
            for wa, ca in self._terms.items():
                for wb, cb in other._terms.items():
                    _add_term(out, wa + wb, ca * cb)
            return TensorPoly._raw(out)
        c = as_scalar(other, strict=False)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        if isinstance(other, TensorPoly):
            return other.__mul__(self)
        c = as_scalar(other, strict=False)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def map_scalars(self, fn: Callable[[LaurentScalar], object]) -> "TensorPoly":
        return TensorPoly({w: fn(c) for w, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return self._terms == other._terms
        if isinstance(other, (int, LaurentScalar)):
            return self == _coerce_tensor(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_items(self, key: Callable[[Word], object] | None = None) -> list[tuple[Word, LaurentScalar]]:
        if key is None:
            key = lambda w: (len(w), w)  # noqa: E731
        return sorted(self._terms.items(), key=lambda item: key(item[0]))

    def to_str(self, key: Callable[[Word], object] | None = None) -> str:
        """Serialize as ``coefficient * id1.id2 + ...`` in a deterministic order."""
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_items(key):
            body = ".".join(w) if w else ""
            if not body:
                text = f"({c})" if c.needs_parens() else str(c)
            elif c == ONE:
                text = body
            else:
                coeff = f"({c})" if c.needs_parens() else str(c)
                text = f"{coeff} * {body}"
            parts.append(text)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"TensorPoly({self.to_str()!r})"


def _add_term(out: dict, w: Word, c: LaurentScalar) -> None:
    prev = out.get(w)
    if prev is None:
        if c:
            out[w] = c
        return
    s = prev + c
    if s:
        out[w] = s
    else:
        del out[w]


def _accumulate(out: dict, terms: Mapping[Word, LaurentScalar], factor: LaurentScalar) -> None:
    for w, c in terms.items():
        _add_term(out, w, c if factor == ONE else c * factor)


def _coerce_tensor(x):
    c = as_scalar(x, strict=False)
    if c is NotImplemented:
        return NotImplemented
    return TensorPoly._raw({(): c} if c else {})


ZERO_T = TensorPoly._raw({})


def tensor_sum(items: Iterable[TensorPoly]) -> TensorPoly:
    out: dict[Word, LaurentScalar] = {}
    for t in items:
        _accumulate(out, t._terms, ONE)
    return TensorPoly._raw(out)


# ---------------------------------------------------------------------------
# algebra description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisElement:
    id: str
    grade: int
    display: str = ""

    def label(self) -> str:
        return self.display or self.id


@dataclass(frozen=True, eq=False)
class TLieSpec:
    """Immutable description of a basic T-Lie algebra.

    Only ordered pairs (x < y) and diagonal pairs appear in the tables; use
    :meth:`q`, :meth:`br` and :meth:`ps` for values on arbitrary pairs.
    """

    name: str
    variables: tuple[str, ...]
    basis: tuple[BasisElement, ...]
    sym: Mapping[tuple[str, str], LaurentScalar]
    bracket: Mapping[tuple[str, str], TensorPoly]
    pseudo: Mapping[tuple[str, str], TensorPoly]
    signs: Mapping[str, int] = field(default_factory=dict)
    notes: Mapping[str, str] = field(default_factory=dict)
    validated: bool = True

    def __post_init__(self):
        index = {b.id: i for i, b in enumerate(self.basis)}
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "grade", {b.id: b.grade for b in self.basis})
        object.__setattr__(self, "ids", tuple(b.id for b in self.basis))
        object.__setattr__(self, "_cache", {})
        q_all: dict[tuple[str, str], LaurentScalar | None] = {}
        br_all: dict[tuple[str, str], TensorPoly] = {}
        ps_all: dict[tuple[str, str], TensorPoly] = {}
        for x in self.ids:
            for y in self.ids:
                if index[x] <= index[y]:
                    q_all[x, y] = self.sym.get((x, y), ONE)
                    br_all[x, y] = self.bracket.get((x, y), ZERO_T)
                    ps_all[x, y] = self.pseudo.get((x, y), ZERO_T)
        for x in self.ids:
            for y in self.ids:
                if index[x] > index[y]:
                    try:
                        qxy = q_all[y, x].invert_unit()
                    except NotAUnit:
                        qxy = None
                    q_all[x, y] = qxy
                    if qxy is None:
                        br_all[x, y] = ZERO_T
                        ps_all[x, y] = ZERO_T
                    else:
                        br_all[x, y] = br_all[y, x].scale(-qxy)
                        ps_all[x, y] = ps_all[y, x].scale(-qxy)
        object.__setattr__(self, "_q", q_all)
        object.__setattr__(self, "_br", br_all)
        object.__setattr__(self, "_ps", ps_all)

    # pair values with antisymmetry-derived entries

    def q(self, x: str, y: str) -> LaurentScalar:
        v = self._q[x, y]
        if v is None:
            raise NotAUnit(f"q_{{{y},{x}}} = {self._q[y, x]} is not invertible")
        return v

    def br(self, x: str, y: str) -> TensorPoly:
        return self._br[x, y]

    def ps(self, x: str, y: str) -> TensorPoly:
        return self._ps[x, y]

    def lt(self, x: str, y: str) -> bool:
        return self.index[x] < self.index[y]

    def eta(self, word: Iterable[str]) -> int:
        g = self.grade
        return sum(g[x] for x in word)

    def word_key(self, word: Word):
        """Deterministic ordering of words: by length, then by basis order."""
        idx = self.index
        return (len(word), tuple(idx[x] for x in word))

    def format(self, t: TensorPoly) -> str:
        return t.to_str(self.word_key)

    def cache(self, name: str, factory: Callable[[], object]):
        """Per-spec memo table; the first stored value wins."""
        c = self._cache
        if name not in c:
            c.setdefault(name, factory())
        return c[name]

    def __eq__(self, other):
        if not isinstance(other, TLieSpec):
            return NotImplemented
        return self.tables() == other.tables()

    def __hash__(self):
        return hash((self.name, self.ids))

    def tables(self) -> tuple:
        """Everything that determines the algebra, for equality comparisons."""
        return (
            tuple(self.variables),
            tuple((b.id, b.grade) for b in self.basis),
            {k: v for k, v in self.sym.items() if v != ONE},
            {k: v for k, v in self.bracket.items() if v},
            {k: v for k, v in self.pseudo.items() if v},
        )

    def __repr__(self) -> str:
        return f"TLieSpec({self.name!r}, {len(self.basis)} basis elements)"


def _as_element(value, degree: int, where: str, known: Mapping[str, int]) -> TensorPoly:
    if isinstance(value, TensorPoly):
        t = value
    elif isinstance(value, Mapping):
        terms = {}
        for k, c in value.items():
            w = (k,) if isinstance(k, str) else tuple(k)
            terms[w] = c
        t = TensorPoly(terms)
    else:
        raise BadTableDegree(f"{where}: cannot interpret {value!r} as a tensor")
    for w in t.words():
        if len(w) != degree:
            raise BadTableDegree(f"{where}: word {'.'.join(w) or '1'} has tensor degree {len(w)}, expected {degree}")
        for x in w:
            if x not in known:
                raise UnknownIdInTable(f"{where}: unknown basis id {x!r}")
    return t


def build_spec(
    name: str,
    basis: Iterable,
    sym: Mapping | None = None,
    bracket: Mapping | None = None,
    pseudo: Mapping | None = None,
    variables: Iterable[str] = (),
    signs: Mapping[str, int] | None = None,
    notes: Mapping[str, str] | None = None,
    strict: bool = True,
) -> TLieSpec:
    """Validate raw tables and return a :class:`TLieSpec`.

    ``basis`` is an ordered iterable of :class:`BasisElement` or ``(id, grade)``
    / ``(id, grade, display)`` tuples; its order is the total order on the basis.
    Table keys are ``(x, y)`` with x <= y.  Missing ``sym`` entries default to 1.

    With ``strict=False`` the scalar invariants (unit coefficients, diagonal
    signs, diagonal brackets) are not enforced; such specs exist only so the
    axiom checks can be exercised on malformed input.
    """
    elems: list[BasisElement] = []
    seen: set[str] = set()
    for b in basis:
        if not isinstance(b, BasisElement):
            b = BasisElement(*b)
        if b.id in seen:
            raise DuplicateId(f"basis id {b.id!r} appears twice")
        if not isinstance(b.grade, int) or isinstance(b.grade, bool) or b.grade < 1:
            raise BadGrade(f"grade of {b.id!r} must be a positive integer, got {b.grade!r}")
        seen.add(b.id)
        elems.append(b)
    index = {b.id: i for i, b in enumerate(elems)}

    def check_key(key, table):
        if len(key) != 2:
            raise UnknownIdInTable(f"{table}: malformed key {key!r}")
        x, y = key
        for z in (x, y):
            if z not in index:
                raise UnknownIdInTable(f"{table}: unknown basis id {z!r}")
        if index[x] > index[y]:
            raise DisorderedEntry(f"{table}: entry ({x}, {y}) has {x} > {y}; only x <= y is stored")
        return x, y

    sym_t: dict[tuple[str, str], LaurentScalar] = {}
    for key, val in (sym or {}).items():
        x, y = check_key(key, "sym")
        c = as_scalar(val)
        if strict:
            if not c.is_unit():
                raise NonUnitSymCoefficient(f"sym({x}, {y}) = {c} is not a unit monomial")
            if x == y and c * c != ONE:
                raise BadDiagonal(f"sym({x}, {x}) = {c} does not square to 1")
        sym_t[x, y] = c

    br_t: dict[tuple[str, str], TensorPoly] = {}
    for key, val in (bracket or {}).items():
        x, y = check_key(key, "bracket")
        t = _as_element(val, 1, f"bracket({x}, {y})", index)
        if t:
            br_t[x, y] = t

    ps_t: dict[tuple[str, str], TensorPoly] = {}
    for key, val in (pseudo or {}).items():
        x, y = check_key(key, "pseudo")
        t = _as_element(val, 2, f"pseudo({x}, {y})", index)
        if t:
            ps_t[x, y] = t

    if strict:
        for b in elems:
            x = b.id
            if sym_t.get((x, x), ONE) == ONE and ((x, x) in br_t or (x, x) in ps_t):
                raise IllegalDiagonalBracket(
                    f"q_{{{x},{x}}} = 1 forces [{x},{x}] = 0 and <{x},{x}> = 0"
                )

    variables = tuple(variables)
    used = set()
    for c in sym_t.values():
        used |= c.variables()
    for t in list(br_t.values()) + list(ps_t.values()):
        for c in t._terms.values():
            used |= c.variables()
    variables = variables + tuple(sorted(used - set(variables)))

    return TLieSpec(
        name=name,
        variables=variables,
        basis=tuple(elems),
        sym=sym_t,
        bracket=br_t,
        pseudo=ps_t,
        signs=dict(signs or {}),
        notes=dict(notes or {}),
        validated=strict,
    )


# ---------------------------------------------------------------------------
# structure maps on tensors
# ---------------------------------------------------------------------------

def _apply_pair(t: TensorPoly, position: int, fn: Callable[[str, str], TensorPoly]) -> TensorPoly:
    if position < 0:
        raise WordTooShort(f"negative position {position}")
    out: dict[Word, LaurentScalar] = {}
    for w, c in t.items():
        if len(w) < position + 2:
            raise WordTooShort(f"word {'.'.join(w) or '1'} has no slots ({position}, {position + 1})")
        pre, post = w[:position], w[position + 2:]
        for frag, d in fn(w[position], w[position + 1]).items():
            _add_term(out, pre + frag + post, c * d)
    return TensorPoly._raw(out)


def pair_S(spec: TLieSpec, x: str, y: str) -> TensorPoly:
    return TensorPoly._raw({(y, x): spec.q(x, y)})


def pair_T(spec: TLieSpec, x: str, y: str) -> TensorPoly:
    return pair_S(spec, x, y) + spec.ps(x, y)


def apply_S(spec: TLieSpec, t: TensorPoly, position: int = 0) -> TensorPoly:
    """Presymmetry on slots (position, position+1): x⊗y -> q_{x,y} y⊗x."""
    return _apply_pair(t, position, lambda x, y: pair_S(spec, x, y))


def apply_pseudobracket(spec: TLieSpec, t: TensorPoly, position: int = 0) -> TensorPoly:
    return _apply_pair(t, position, spec.ps)


def apply_bracket(spec: TLieSpec, t: TensorPoly, position: int = 0) -> TensorPoly:
    """Contract slots (position, position+1) with the bracket."""
    return _apply_pair(t, position, spec.br)


def apply_T(spec: TLieSpec, t: TensorPoly, position: int = 0) -> TensorPoly:
    return _apply_pair(t, position, lambda x, y: pair_T(spec, x, y))


def restrict(spec: TLieSpec, subset: Iterable[str], name: str | None = None) -> TLieSpec:
    """Sub-algebra on ``subset`` with inherited order, grades and tables."""
    keep = set(subset)
    for x in keep:
        if x not in spec.index:
            raise UnknownIdInTable(f"unknown basis id {x!r}")
    ordered = [b for b in spec.basis if b.id in keep]
    for a in ordered:
        for b in ordered:
            for table, value in (("bracket", spec.br(a.id, b.id)), ("pseudo", spec.ps(a.id, b.id))):
                for w in value.words():
                    escaped = [z for z in w if z not in keep]
                    if escaped:
                        raise NotClosed(
                            f"{table}({a.id}, {b.id}) involves {escaped[0]} outside the subset",
                            witness=(a.id, b.id),
                        )
    ids = [b.id for b in ordered]
    return build_spec(
        name or f"{spec.name}|{','.join(ids)}",
        ordered,
        sym={k: v for k, v in spec.sym.items() if k[0] in keep and k[1] in keep},
        bracket={k: v for k, v in spec.bracket.items() if k[0] in keep and k[1] in keep},
        pseudo={k: v for k, v in spec.pseudo.items() if k[0] in keep and k[1] in keep},
        variables=spec.variables,
        signs=spec.signs,
        notes=spec.notes,
        strict=spec.validated,
    )


def specialize_spec(spec: TLieSpec, assignment: Mapping[str, object], name: str | None = None) -> TLieSpec:
    """Substitute rational values for variables in every table."""
    sub = lambda c: c.substitute(assignment)  # noqa: E731
    return build_spec(
        name or f"{spec.name}@" + ",".join(f"{k}={v}" for k, v in sorted(assignment.items())),
        spec.basis,
        sym={k: sub(v) for k, v in spec.sym.items()},
        bracket={k: v.map_scalars(sub) for k, v in spec.bracket.items()},
        pseudo={k: v.map_scalars(sub) for k, v in spec.pseudo.items()},
        variables=tuple(v for v in spec.variables if v not in assignment),
        signs=spec.signs,
        notes=spec.notes,
        strict=spec.validated,
    )
