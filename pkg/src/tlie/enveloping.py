"""PBW normal forms in U(L) = T(L) / J by rewriting, plus confluence and membership tests.

J is the two-sided ideal generated by x⊗y - T(x⊗y) - [x,y].  Rewriting always
acts at the leftmost reducible position of a word:

* x⊗y with x > y   ->  q_{x,y} y⊗x + <x,y> + [x,y]
* x⊗x, q_{x,x}=-1  ->  (<x,x> + [x,x]) / 2

Swaps keep the total grade δ and lower the disorder by one; the other terms
lower δ (stability), so (δ, disorder) descends lexicographically and every
word has a normal form made of non-decreasing words.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .core import TensorPoly, TLieSpec, Word, specialize_spec, tensor_sum
from .errors import BoundsTooSmall
from .linalg import Echelon, FractionField, decide_membership
from .report import FAIL, PASS, CheckRecord, Witness
from .scalar import ONE, LaurentScalar

HALF = LaurentScalar.const(Fraction(1, 2))


@dataclass(frozen=True, order=True)
class DegreeMeasure:
    delta: int
    disorder: int


def disorder(spec: TLieSpec, w: Word) -> int:
    idx = [spec.index[x] for x in w]
    return sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])


def measure(spec: TLieSpec, w: Iterable[str]) -> DegreeMeasure:
    w = tuple(w)
    return DegreeMeasure(spec.eta(w), disorder(spec, w))


def diagonal_sign(spec: TLieSpec, x: str) -> LaurentScalar:
    return spec.q(x, x)


def is_pbw_monomial(spec: TLieSpec, w: Iterable[str]) -> bool:
    """Non-decreasing, with a repeated letter only when S fixes its square."""
    w = tuple(w)
    for a, b in zip(w, w[1:]):
        if spec.index[a] > spec.index[b]:
            return False
        if a == b and spec.q(a, a) != ONE:
            return False
    return True


def pair_rule(spec: TLieSpec, x: str, y: str) -> tuple[str, TensorPoly] | None:
    """The rewrite for the adjacent pair x⊗y, or None if the pair is already reduced."""
    if spec.index[x] > spec.index[y]:
        return "swap", TensorPoly._raw({(y, x): spec.q(x, y)}) + spec.ps(x, y) + spec.br(x, y)
    if x == y and spec.q(x, x) == -1:
        return "diagonal", (spec.ps(x, x) + spec.br(x, x)).scale(HALF)
    return None


def leftmost_reducible(spec: TLieSpec, w: Word) -> int | None:
    idx = spec.index
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if idx[a] > idx[b] or (a == b and spec.q(a, a) == -1):
            return i
    return None


def rewrite_at(spec: TLieSpec, w: Word, position: int) -> tuple[str, TensorPoly]:
    """One rewrite step of the word ``w`` at slots (position, position+1)."""
    rule = pair_rule(spec, w[position], w[position + 1])
    if rule is None:
        raise ValueError(f"position {position} of {'.'.join(w)} is not reducible")
    name, frag = rule
    pre, post = w[:position], w[position + 2:]
    return name, TensorPoly._raw({pre + f + post: c for f, c in frag.items()})


def _nf_word(spec: TLieSpec, w: Word, memo: dict) -> dict:
    hit = memo.get(w)
    if hit is not None:
        return hit
    pos = leftmost_reducible(spec, w)
    if pos is None:
        out = {w: ONE}
    else:
        out: dict = {}
        _, step = rewrite_at(spec, w, pos)
        for w2, c in step.items():
            for w3, d in _nf_word(spec, w2, memo).items():
                s = out.get(w3)
                s = c * d if s is None else s + c * d
                if s:
                    out[w3] = s
                else:
                    del out[w3]
    memo.setdefault(w, out)
    return memo[w]


def normal_form_word(spec: TLieSpec, w: Iterable[str]) -> TensorPoly:
    memo = spec.cache("enveloping.nf", dict)
    return TensorPoly._raw(dict(_nf_word(spec, tuple(w), memo)))


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    position: int
    word: Word
    coeff: LaurentScalar
    after: TensorPoly

    def to_dict(self, spec: TLieSpec) -> dict:
        return {
            "rule": self.rule,
            "position": self.position,
            "before": {"word": ".".join(self.word), "coeff": str(self.coeff)},
            "after": spec.format(self.after),
        }


@dataclass
class RewriteTrace:
    start: TensorPoly
    steps: list[RewriteStep] = field(default_factory=list)

    def replay(self, spec: TLieSpec) -> TensorPoly:
        """Re-apply every step from the start, checking each recorded state."""
        cur = self.start
        for s in self.steps:
            if cur.coeff(s.word) != s.coeff:
                raise ValueError(f"trace diverges at {'.'.join(s.word)}")
            _, frag = rewrite_at(spec, s.word, s.position)
            cur = cur - TensorPoly._raw({s.word: s.coeff}) + frag.scale(s.coeff)
            if cur != s.after:
                raise ValueError(f"trace state mismatch after rewriting {'.'.join(s.word)}")
        return cur


def normalize(spec: TLieSpec, t: TensorPoly, trace: bool = False):
    """PBW normal form of ``t``; with ``trace=True`` also return the RewriteTrace."""
    if not trace:
        memo = spec.cache("enveloping.nf", dict)
        out: dict = {}
        for w, c in t.items():
            for w2, d in _nf_word(spec, w, memo).items():
                s = out.get(w2)
                s = c * d if s is None else s + c * d
                if s:
                    out[w2] = s
                else:
                    del out[w2]
        return TensorPoly._raw(out)
    tr = RewriteTrace(t)
    cur = t
    while True:
        pending = [(w, c) for w, c in cur.items() if leftmost_reducible(spec, w) is not None]
        if not pending:
            return cur, tr
        w, c = max(pending, key=lambda item: (measure(spec, item[0]), spec.word_key(item[0])))
        pos = leftmost_reducible(spec, w)
        rule, frag = rewrite_at(spec, w, pos)
        cur = cur - TensorPoly._raw({w: c}) + frag.scale(c)
        tr.steps.append(RewriteStep(rule, pos, w, c, cur))


def pbw_multiply(spec: TLieSpec, a: TensorPoly, b: TensorPoly) -> TensorPoly:
    return normalize(spec, a * b)


def enumerate_pbw(spec: TLieSpec, max_len: int, exact: bool = False) -> list[Word]:
    """PBW monomials of length <= max_len (or == max_len), lexicographic in the basis order."""
    out: list[Word] = []
    lengths = [max_len] if exact else range(max_len + 1)
    for n in lengths:
        for w in itertools.combinations_with_replacement(spec.ids, n):
            if is_pbw_monomial(spec, w):
                out.append(w)
    out.sort(key=lambda w: tuple(spec.index[x] for x in w))
    return out


def critical_words(spec: TLieSpec, max_delta: int) -> list[Word]:
    """Length-3 words where both adjacent pairs can be rewritten, δ <= max_delta."""
    out = []
    for w in itertools.product(spec.ids, repeat=3):
        if spec.eta(w) > max_delta:
            continue
        if pair_rule(spec, w[0], w[1]) is not None and pair_rule(spec, w[1], w[2]) is not None:
            out.append(w)
    return out


def diamond_discrepancy(spec: TLieSpec, w: Word) -> TensorPoly:
    _, left = rewrite_at(spec, w, 0)
    _, right = rewrite_at(spec, w, 1)
    return normalize(spec, left) - normalize(spec, right)


def diamond_check(spec: TLieSpec, max_delta: int) -> CheckRecord:
    """Compare the two one-step reductions of every overlap x⊗y⊗z after normalizing."""
    t0 = time.perf_counter()
    words = critical_words(spec, max_delta)
    witnesses = []
    for w in words:
        d = diamond_discrepancy(spec, w)
        if d:
            witnesses.append(Witness("diamond", w, d, "normal forms of the two first rewrites differ"))
    rec = CheckRecord(
        "diamond", FAIL if witnesses else PASS, witnesses, {"max_delta": max_delta},
        time.perf_counter() - t0, cases=len(words), label="diamond (confluence)",
    )
    return rec


# ---------------------------------------------------------------------------
# truncated ideal membership
# ---------------------------------------------------------------------------

def relation(spec: TLieSpec, x: str, y: str) -> TensorPoly:
    """The generator x⊗y - T(x⊗y) - [x,y] of J."""
    return (TensorPoly._raw({(x, y): ONE}) - TensorPoly._raw({(y, x): spec.q(x, y)})
            - spec.ps(x, y) - spec.br(x, y))


def relation_pairs(spec: TLieSpec) -> list[tuple[str, str]]:
    """Pairs whose relations span all of them: x > y, and x = x with q_{x,x} = -1.

    For x < y the relation is -q_{x,y} times the one for (y, x), and for
    q_{x,x} = 1 it vanishes, so nothing is lost.
    """
    out = []
    for x in spec.ids:
        for y in spec.ids:
            if spec.index[x] > spec.index[y] or (x == y and spec.q(x, x) == -1):
                out.append((x, y))
    return out


def word_order_key(spec: TLieSpec):
    idx = spec.index

    def key(w: Word):
        return (spec.eta(w), len(w), disorder(spec, w), tuple(idx[x] for x in w))

    return key


def ideal_generators(spec: TLieSpec, max_len: int, max_delta: int) -> dict[tuple, TensorPoly]:
    """u⊗g⊗v for relation generators g and words u, v within the bounds.

    Labels are (u, (x, y), v).
    """
    pairs = relation_pairs(spec)
    gens: dict[tuple, TensorPoly] = {}
    for n in range(0, max_len - 1):
        for pre_len in range(n + 1):
            post_len = n - pre_len
            for u in itertools.product(spec.ids, repeat=pre_len):
                eu = spec.eta(u)
                if eu > max_delta:
                    continue
                for v in itertools.product(spec.ids, repeat=post_len):
                    ev = eu + spec.eta(v)
                    if ev > max_delta:
                        continue
                    for x, y in pairs:
                        if ev + spec.grade[x] + spec.grade[y] > max_delta:
                            continue
                        g = relation(spec, x, y)
                        if not g:
                            continue
                        gens[u, (x, y), v] = TensorPoly._raw({u: ONE}) * g * TensorPoly._raw({v: ONE})
    return gens


@dataclass
class MembershipCertificate:
    """Result of a truncated membership test.

    ``member`` is decided over the fraction field.  ``combination`` holds Laurent
    coefficients with Σ c·(u⊗g⊗v) = multiplier·t, re-checked in the ring;
    ``ring_verified`` means the multiplier is a unit, i.e. t itself is a ring
    combination of the bounded generators.
    """

    member: bool
    bounds: dict
    combination: dict = field(default_factory=dict)  # label -> LaurentScalar
    multiplier: LaurentScalar = ONE
    ring_verified: bool = False
    remainder: str | None = None
    generators: int = 0

    def status(self) -> str:
        return "member" if self.member else "not-member-within-bounds"

    def to_dict(self, spec: TLieSpec) -> dict:
        combo = []
        for (u, (x, y), v), c in sorted(self.combination.items(), key=lambda kv: (
                spec.word_key(kv[0][0]), spec.word_key(kv[0][1]), spec.word_key(kv[0][2]))):
            combo.append({"left": ".".join(u), "relation": [x, y], "right": ".".join(v), "coeff": str(c)})
        out = {
            "status": self.status(),
            "bounds": dict(self.bounds),
            "generators": self.generators,
            "ring_verified": self.ring_verified,
        }
        if self.member:
            out["multiplier"] = str(self.multiplier)
            out["combination"] = combo
        if self.remainder is not None:
            out["remainder"] = self.remainder
        return out


def ideal_member_truncated(spec: TLieSpec, t: TensorPoly, max_len: int, max_delta: int) -> MembershipCertificate:
    """Decide whether ``t`` lies in the span of the bounded generators u⊗g⊗v of J."""
    for w in t.words():
        if len(w) > max_len or spec.eta(w) > max_delta:
            raise BoundsTooSmall(
                f"word {'.'.join(w) or '1'} (length {len(w)}, grade {spec.eta(w)}) exceeds "
                f"max_len={max_len}, max_delta={max_delta}"
            )
    bounds = {"max_len": max_len, "max_delta": max_delta}
    if not t:
        return MembershipCertificate(True, bounds, {}, ONE, True)
    gens = ideal_generators(spec, max_len, max_delta)
    ff = FractionField(spec.variables)
    ech = Echelon(ff, word_order_key(spec))
    for label in sorted(gens, key=lambda lab: (spec.word_key(lab[0]), spec.word_key(lab[1]), spec.word_key(lab[2]))):
        ech.add(label, {w: ff.from_laurent(c) for w, c in gens[label].items()})
    res = decide_membership(ech, t, gens)
    if not res.member:
        rem = " + ".join(f"({c}) * {'.'.join(w)}" for w, c in
                         sorted(res.remainder.items(), key=lambda item: spec.word_key(item[0])))
        return MembershipCertificate(False, bounds, remainder=rem, generators=len(gens))
    return MembershipCertificate(True, bounds, res.combination, res.multiplier, res.ring_verified,
                                 generators=len(gens))


def specialize_enveloping(spec: TLieSpec, assignment: Mapping[str, object]) -> TLieSpec:
    """The algebra with every scalar evaluated; normal forms then commute with evaluation."""
    return specialize_spec(spec, assignment)


def specialize_tensor(t: TensorPoly, assignment: Mapping[str, object]) -> TensorPoly:
    return t.map_scalars(lambda c: c.substitute(assignment))


__all__ = [
    "DegreeMeasure", "RewriteStep", "RewriteTrace", "MembershipCertificate",
    "measure", "disorder", "is_pbw_monomial", "pair_rule", "leftmost_reducible", "rewrite_at",
    "normalize", "normal_form_word", "pbw_multiply", "enumerate_pbw", "critical_words",
    "diamond_check", "diamond_discrepancy", "relation", "relation_pairs", "ideal_generators",
    "ideal_member_truncated", "specialize_enveloping", "specialize_tensor", "word_order_key",
    "tensor_sum",
]
