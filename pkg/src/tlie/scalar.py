"""Exact Laurent polynomials over the rationals.

Scalars live in Q[v1^{±1}, ..., vk^{±1}] for whatever unit variables an algebra
declares (in practice ``q`` and ``p``).  A scalar is a map from monomials to
nonzero rational coefficients; the map is canonical, so equality of scalars is
equality of maps.

Monomials are stored sparsely as sorted ``((var, exp), ...)`` tuples with no
zero exponents, so scalars built against different variable sets still combine.
Coefficients are kept as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import NotAUnit, ZeroAssignment

Monomial = tuple  # tuple[tuple[str, int], ...]
Number = Union[int, Fraction]

_ONE_MONO: Monomial = ()


def _norm_coeff(c) -> Number:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm_coeff(Fraction(c.numerator, c.denominator))
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        s = exps.get(v, 0) + e
        if s:
            exps[v] = s
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def _mono_str(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _mono_sort_key(m: Monomial):
    return (-sum(e for _, e in m), tuple((v, -e) for v, e in m))


class LaurentScalar:
    """An immutable element of Q[q^{±1}, p^{±1}, ...]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Number] = {}
        if terms:
            for mono, c in terms.items():
                c = _norm_coeff(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentScalar":
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction

    @classmethod
    def const(cls, c) -> "LaurentScalar":
        c = _norm_coeff(c)
        return cls._raw({_ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1, coeff=1) -> "LaurentScalar":
        if exp == 0:
            return cls.const(coeff)
        return cls({((name, exp),): coeff})

    @classmethod
    def monomial(cls, coeff, exps: Mapping[str, int]) -> "LaurentScalar":
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        return cls({mono: coeff})

    # inspection

    @property
    def terms(self) -> dict[Monomial, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE_MONO in self._terms)

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(_ONE_MONO, 0)

    def is_unit(self) -> bool:
        """True for single-term scalars c*q^e*p^f, the units of the ring."""
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    def degree_in(self, var: str) -> tuple[int, int]:
        """(min, max) exponent of ``var`` over the terms; (0, 0) for zero."""
        exps = [dict(m).get(var, 0) for m in self._terms]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    # ring operations

    def __add__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = _norm_coeff(s)
            else:
                del out[mono]
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1 and _ONE_MONO in b:
            c = b[_ONE_MONO]
            if c == 1:
                return self
            return LaurentScalar._raw({m: _norm_coeff(x * c) for m, x in a.items()})
        if len(a) == 1 and _ONE_MONO in a:
            return other * self
        out: dict[Monomial, Number] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return LaurentScalar({m: c for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert_unit() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def invert_unit(self) -> "LaurentScalar":
        if len(self._terms) != 1:
            raise NotAUnit(f"{self} is not a unit monomial")
        (mono, c), = self._terms.items()
        return LaurentScalar._raw({_mono_pow(mono, -1): _norm_coeff(Fraction(1) / c)})

    def __truediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert_unit()

    def __rtruediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other * self.invert_unit()

    # evaluation

    def substitute(self, assignment: Mapping[str, object]) -> "LaurentScalar":
        """Replace assigned variables by nonzero rationals; others stay symbolic."""
        for v, val in assignment.items():
            if val == 0:
                raise ZeroAssignment(f"variable {v} assigned 0; units must stay invertible")
        out = ZERO
        for mono, c in self._terms.items():
            coeff: Number = c
            rest = {}
            for v, e in mono:
                if v in assignment:
                    coeff = coeff * Fraction(assignment[v]) ** e
                else:
                    rest[v] = e
            out = out + LaurentScalar.monomial(coeff, rest)
        return out

    def specialize(self, assignment: Mapping[str, object]) -> Fraction:
        missing = self.variables() - set(assignment)
        if missing:
            raise ValueError(f"no value assigned to {sorted(missing)}")
        return Fraction(self.substitute(assignment).constant_value())

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sort_key(self):
        return tuple((_mono_sort_key(m), str(c)) for m, c in sorted(self._terms.items(), key=lambda t: _mono_sort_key(t[0])))

    # printing

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=_mono_sort_key):
            c = self._terms[mono]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = _mono_str(mono)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"LaurentScalar({str(self)!r})"

    def needs_parens(self) -> bool:
        return len(self._terms) > 1 or (len(self._terms) == 1 and next(iter(self._terms.values())) < 0)


def as_scalar(x, strict: bool = True):
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentScalar.const(x)
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a Laurent scalar")
    return NotImplemented


ZERO = LaurentScalar._raw({})
ONE = LaurentScalar._raw({_ONE_MONO: 1})


def var(name: str) -> LaurentScalar:
    return LaurentScalar.var(name)


def scalar_arith(a: LaurentScalar, b: LaurentScalar | None, op: str) -> LaurentScalar:
    """Functional form of the ring operations: op in {add, sub, mul, neg}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def scalar_invert_unit(a: LaurentScalar) -> LaurentScalar:
    return as_scalar(a).invert_unit()


def scalar_specialize(a: LaurentScalar, assignment: Mapping[str, object]) -> Fraction:
    return as_scalar(a).specialize(assignment)


def scalar_sum(items: Iterable[LaurentScalar]) -> LaurentScalar:
    total = ZERO
    for x in items:
        total = total + x
    return total
