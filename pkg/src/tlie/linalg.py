"""Exact sparse linear membership over the fraction field Q(q, p, ...).

Vectors are sparse maps word -> coefficient.  Generators are inserted into an
echelon structure keyed by a total order on words (the leading word of a
vector is its largest word); a target lies in the span iff repeated
leading-word elimination reduces it to zero.  Combinations are tracked so a
membership claim always comes with explicit coefficients, which are then
checked to lie in the Laurent ring and re-verified there.

Rational-function arithmetic is delegated to sympy's sparse fraction fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from sympy import QQ
from sympy.polys.fields import field as sympy_field

from .core import TensorPoly, tensor_sum
from .scalar import LaurentScalar


class FractionField:
    """Q(v1, ..., vk) for a list of unit variables, with Laurent conversions."""

    def __init__(self, variables: Iterable[str]):
        names = list(dict.fromkeys(variables)) or ["q"]
        self.names = names
        self.K, *gens = sympy_field(",".join(names), QQ)
        self.gens = dict(zip(names, gens))
        self.zero = self.K.zero
        self.one = self.K.one

    def from_laurent(self, c: LaurentScalar):
        out = self.zero
        for mono, coeff in c.items():
            c = Fraction(coeff)
            term = self.K(QQ(c.numerator, c.denominator))
            for v, e in mono:
                g = self.gens.get(v)
                if g is None:
                    raise KeyError(f"variable {v} not declared in the fraction field")
                term = term * g ** e
            out = out + term
        return out

    def to_laurent(self, f) -> LaurentScalar | None:
        """The Laurent scalar equal to ``f``, or None when the denominator is not a monomial."""
        den_terms = f.denom.terms()
        if len(den_terms) != 1:
            return None
        (den_exp, den_c), = den_terms
        out = {}
        for exp, c in f.numer.terms():
            mono = tuple(sorted((v, e - d) for v, e, d in zip(self.names, exp, den_exp) if e - d))
            c = c / den_c
            out[mono] = Fraction(int(c.numerator), int(c.denominator))
        return LaurentScalar(out)


@dataclass
class MembershipResult:
    """Outcome of a span-membership decision.

    When ``member`` holds, ``combination`` maps generator labels to Laurent
    scalars with Σ c·g = multiplier·target, checked by exact ring arithmetic.
    ``multiplier`` is 1 unless the field solution needs non-monomial
    denominators, in which case it is their least common multiple.
    """

    member: bool
    combination: dict = dc_field(default_factory=dict)
    remainder: dict = dc_field(default_factory=dict)  # word -> field element, empty iff member
    multiplier: LaurentScalar | None = None
    ring_verified: bool = False


class Echelon:
    """Incrementally maintained echelon basis of a span of sparse vectors."""

    def __init__(self, ff: FractionField, key: Callable[[Hashable], object], track: bool = True):
        self.ff = ff
        self.key = key
        self.track = track
        self.pivots: dict[Hashable, tuple[dict, dict]] = {}
        self.labels: list = []

    def _lead(self, vec: Mapping) -> Hashable:
        return max(vec, key=self.key)

    @staticmethod
    def _axpy(dst: dict, src: Mapping, factor) -> None:
        for w, c in src.items():
            s = dst.get(w)
            s = -factor * c if s is None else s - factor * c
            if s:
                dst[w] = s
            else:
                dst.pop(w, None)

    def add(self, label, vec: Mapping) -> bool:
        """Insert a generator; returns False when it was already in the span."""
        v = {w: c for w, c in vec.items() if c}
        idx = len(self.labels)
        self.labels.append(label)
        combo = {idx: self.ff.one} if self.track else {}
        while v:
            lead = self._lead(v)
            piv = self.pivots.get(lead)
            if piv is None:
                inv = 1 / v[lead]
                row = {w: c * inv for w, c in v.items()}
                cmb = {i: c * inv for i, c in combo.items()}
                self.pivots[lead] = (row, cmb)
                return True
            f = v[lead]
            self._axpy(v, piv[0], f)
            if self.track:
                self._axpy(combo, piv[1], f)
        return False

    def reduce(self, vec: Mapping) -> tuple[dict, dict]:
        """Return (remainder, combo) with vec = remainder + Σ combo[i]·generator_i."""
        v = {w: c for w, c in vec.items() if c}
        combo: dict = {}
        remainder: dict = {}
        while v:
            lead = self._lead(v)
            piv = self.pivots.get(lead)
            if piv is None:
                remainder[lead] = v.pop(lead)
                continue
            f = v[lead]
            self._axpy(v, piv[0], f)
            if self.track:
                for i, c in piv[1].items():
                    s = combo.get(i, self.ff.zero) + f * c
                    if s:
                        combo[i] = s
                    else:
                        combo.pop(i, None)
        return remainder, combo


def tensor_to_vector(ff: FractionField, t: TensorPoly) -> dict:
    return {w: ff.from_laurent(c) for w, c in t.items()}


def decide_membership(
    ech: Echelon,
    target: TensorPoly,
    generators: Mapping | None = None,
) -> MembershipResult:
    """Decide target ∈ span over the fraction field, then certify over the Laurent ring.

    ``generators`` maps the echelon labels to their TensorPoly values; it is
    needed for the ring re-verification when combinations are tracked.
    """
    ff = ech.ff
    remainder, combo = ech.reduce(tensor_to_vector(ff, target))
    if remainder:
        return MembershipResult(False, {}, remainder)
    if not ech.track:
        return MembershipResult(True)
    den = ff.one.numer
    for c in combo.values():
        den = den.lcm(c.denom)
    if len(den.terms()) == 1:
        den = ff.one.numer
    else:
        # monomial factors are units of the Laurent ring; drop them
        exps = [m for m, _ in den.terms()]
        low = tuple(min(col) for col in zip(*exps))
        den = den.exquo(den.ring({low: 1})).monic()
    mult_f = ff.K(den)
    coeffs = {}
    for i, c in combo.items():
        lc = ff.to_laurent(c * mult_f)
        if lc is None:  # cannot happen after clearing denominators
            return MembershipResult(True, {}, {}, None, False)
        coeffs[ech.labels[i]] = lc
    multiplier = ff.to_laurent(mult_f)
    ok = False
    if generators is not None:
        rebuilt = tensor_sum(generators[label].scale(c) for label, c in coeffs.items())
        ok = rebuilt == target.scale(multiplier)
    return MembershipResult(True, coeffs, {}, multiplier, ok and multiplier.is_unit())
