"""The q-symmetric algebra S(L) = U(L⁰) and the action of L on it.

S(L) has the sorted words z_Σ as a basis (a letter x may repeat only when
q_{x,x} = 1).  The action x·z_Σ follows the recursive construction used to
prove the PBW theorem:

* (A) x·z_Σ = z_x z_Σ whenever x <= Σ (x can be prepended),
* otherwise, with Σ = (μ, N) split at its minimal letter,
  x·z_Σ = z_x z_Σ + q_{x,μ} μ·w + Σ_i ξ_i a_i·(b_i·z_N) + [x,μ]·z_N,
  where w = x·z_N - z_x z_N and <x,μ> = Σ_i ξ_i a_i⊗b_i.

For a letter repeated against q_{x,x} = -1 (only possible in color/super
algebras) the relation 2x⊗x = <x,x> + [x,x] gives
x·z_{(x,N)} = ½(<x,x>·z_N + [x,x]·z_N).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .core import TensorPoly, TLieSpec, Word, apply_T
from .enveloping import enumerate_pbw, is_pbw_monomial
from .errors import PreconditionViolated, RecursionBoundExceeded
from .report import FAIL, PASS, CheckRecord, Witness
from .scalar import ONE, LaurentScalar

HALF = LaurentScalar.const(Fraction(1, 2))
MAX_DEPTH = 5000


def _add(out: dict, w: Word, c: LaurentScalar) -> None:
    s = out.get(w)
    s = c if s is None else s + c
    if s:
        out[w] = s
    else:
        out.pop(w, None)


def sym_word(spec: TLieSpec, w: Iterable[str]) -> tuple[LaurentScalar, Word]:
    """Sort ``w`` in S(L): the coefficient collects q_{a,b} for every inverted pair a > b.

    Returns coefficient 0 when a letter with q_{x,x} = -1 repeats.
    """
    w = tuple(w)
    idx = spec.index
    coeff = ONE
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if idx[w[i]] > idx[w[j]]:
                coeff = coeff * spec.q(w[i], w[j])
    s = tuple(sorted(w, key=idx.__getitem__))
    for a, b in zip(s, s[1:]):
        if a == b and spec.q(a, a) == -1:
            return LaurentScalar.const(0), s
    return coeff, s


def sym_normalize(spec: TLieSpec, t: TensorPoly) -> TensorPoly:
    """Image of ``t`` in S(L), written on sorted monomials."""
    out: dict = {}
    for w, c in t.items():
        k, s = sym_word(spec, w)
        if k:
            _add(out, s, c * k)
    return TensorPoly._raw(out)


def sym_product(spec: TLieSpec, a: Word, b: Word) -> TensorPoly:
    k, s = sym_word(spec, a + b)
    return TensorPoly._raw({s: k} if k else {})


class ActionCache:
    """Write-once memo table (x, m) -> x·z_m for one algebra."""

    def __init__(self):
        self.table: dict[tuple[str, Word], TensorPoly] = {}

    def get(self, key):
        return self.table.get(key)

    def put(self, key, value: TensorPoly) -> TensorPoly:
        return self.table.setdefault(key, value)

    def __len__(self) -> int:
        return len(self.table)

    def filtration_violations(self, spec: TLieSpec) -> list[tuple[str, Word, TensorPoly]]:
        """Entries breaking clause (B): x·z_m - z_x z_m must have grade <= η(x)+η(m)-1."""
        bad = []
        for (x, m), value in self.table.items():
            rest = value - sym_product(spec, (x,), m)
            bound = spec.grade[x] + spec.eta(m) - 1
            over = TensorPoly._raw({w: c for w, c in rest.items() if spec.eta(w) > bound})
            if over:
                bad.append((x, m, over))
        return bad


def action_cache(spec: TLieSpec) -> ActionCache:
    return spec.cache("symrep.action", ActionCache)


def _act(spec: TLieSpec, x: str, m: Word, cache: ActionCache, depth: int) -> TensorPoly:
    hit = cache.get((x, m))
    if hit is not None:
        return hit
    if depth > MAX_DEPTH:
        raise RecursionBoundExceeded(f"action recursion deeper than {MAX_DEPTH} at {x}·{'.'.join(m)}")
    idx = spec.index
    if not m or idx[x] < idx[m[0]] or (x == m[0] and spec.q(x, x) == ONE):
        value = TensorPoly._raw({(x,) + m: ONE})  # clause (A)
    elif x == m[0]:
        # q_{x,x} = -1: x·(x·z_N) = ½(<x,x> + [x,x])·z_N
        n = m[1:]
        pair = spec.ps(x, x) + spec.br(x, x)
        value = _act_tensor(spec, pair, n, cache, depth + 1).scale(HALF)
    else:
        mu, n = m[0], m[1:]
        parts: dict = {}
        for w, c in sym_product(spec, (x,), m).items():
            _add(parts, w, c)
        w_poly = _act(spec, x, n, cache, depth + 1) - sym_product(spec, (x,), n)
        qxm = spec.q(x, mu)
        for w, c in _act_on_poly(spec, mu, w_poly, cache, depth + 1).items():
            _add(parts, w, c * qxm)
        for (a, b), xi in spec.ps(x, mu).items():
            inner = _act(spec, b, n, cache, depth + 1)
            for w, c in _act_on_poly(spec, a, inner, cache, depth + 1).items():
                _add(parts, w, c * xi)
        for (z,), c0 in spec.br(x, mu).items():
            for w, c in _act(spec, z, n, cache, depth + 1).items():
                _add(parts, w, c * c0)
        value = TensorPoly._raw(parts)
    return cache.put((x, m), value)


def _act_on_poly(spec: TLieSpec, x: str, p: TensorPoly, cache: ActionCache, depth: int) -> TensorPoly:
    out: dict = {}
    for m, c in p.items():
        for w, d in _act(spec, x, m, cache, depth).items():
            _add(out, w, c * d)
    return TensorPoly._raw(out)


def _act_tensor(spec: TLieSpec, t: TensorPoly, m: Word, cache: ActionCache, depth: int) -> TensorPoly:
    out: dict = {}
    for word, c in t.items():
        cur = TensorPoly._raw({m: ONE})
        for letter in reversed(word):
            cur = _act_on_poly(spec, letter, cur, cache, depth)
        for w, d in cur.items():
            _add(out, w, c * d)
    return TensorPoly._raw(out)


def _check_monomial(spec: TLieSpec, m: Iterable[str]) -> Word:
    m = tuple(m)
    if not is_pbw_monomial(spec, m):
        raise ValueError(f"{'.'.join(m)} is not a sorted S(L) monomial")
    return m


def act(spec: TLieSpec, x: str, m: Iterable[str] = (), cache: ActionCache | None = None) -> TensorPoly:
    """x·z_m for a basis element x and a sorted monomial m."""
    cache = action_cache(spec) if cache is None else cache
    try:
        return _act(spec, x, _check_monomial(spec, m), cache, 0)
    except RecursionError as exc:
        raise RecursionBoundExceeded(str(exc)) from None


def act_poly(spec: TLieSpec, x: str, p: TensorPoly, cache: ActionCache | None = None) -> TensorPoly:
    cache = action_cache(spec) if cache is None else cache
    return _act_on_poly(spec, x, p, cache, 0)


def act_word(spec: TLieSpec, t: TensorPoly | Iterable[str], m: Iterable[str] = (),
             cache: ActionCache | None = None) -> TensorPoly:
    """(a_1⊗...⊗a_k)·z_m = a_1·(...(a_k·z_m)), extended linearly to tensors."""
    cache = action_cache(spec) if cache is None else cache
    if not isinstance(t, TensorPoly):
        t = TensorPoly._raw({tuple(t): ONE})
    try:
        return _act_tensor(spec, t, _check_monomial(spec, m), cache, 0)
    except RecursionError as exc:
        raise RecursionBoundExceeded(str(exc)) from None


def sym_monomials(spec: TLieSpec, max_eta: int) -> list[Word]:
    """Sorted S(L) monomials of total grade <= max_eta, in lexicographic order."""
    out: list[Word] = []
    ids = spec.ids

    def extend(prefix: Word, start: int, budget: int) -> None:
        out.append(prefix)
        for i in range(start, len(ids)):
            x = ids[i]
            g = spec.grade[x]
            if g > budget:
                continue
            if prefix and prefix[-1] == x and spec.q(x, x) != ONE:
                continue
            extend(prefix + (x,), i, budget - g)

    extend((), 0, max_eta)
    out.sort(key=lambda w: tuple(spec.index[x] for x in w))
    return out


def lemma_c_discrepancy(spec: TLieSpec, lam: str, mu: str, n: Iterable[str]) -> TensorPoly:
    """x_λ·(x_μ·z_N) - T(x_λ⊗x_μ)·z_N - [x_λ, x_μ]·z_N."""
    n = tuple(n)
    lhs = act_poly(spec, lam, act(spec, mu, n))
    pair = TensorPoly._raw({(lam, mu): ONE})
    rhs = act_word(spec, apply_T(spec, pair), n) + act_word(spec, spec.br(lam, mu), n)
    return lhs - rhs


def check_clause_b(spec: TLieSpec, cache: ActionCache | None = None) -> CheckRecord:
    """Filtration clause (B) on every memoized action value."""
    t0 = time.perf_counter()
    cache = action_cache(spec) if cache is None else cache
    bad = cache.filtration_violations(spec)
    witnesses = [Witness("clause_b", (x, m), over, "terms above the filtration bound") for x, m, over in bad]
    return CheckRecord("clause_b", FAIL if witnesses else PASS, witnesses, {},
                       time.perf_counter() - t0, cases=len(cache), label="clause (B) filtration")


def check_lemma_c(spec: TLieSpec, max_total_eta: int) -> CheckRecord:
    """Clause (C) for all basis pairs (λ, μ) and monomials N with η(λ)+η(μ)+η(N) <= bound."""
    t0 = time.perf_counter()
    witnesses = []
    cases = 0
    monos = sym_monomials(spec, max_total_eta)
    for lam, mu in itertools.product(spec.ids, repeat=2):
        budget = max_total_eta - spec.grade[lam] - spec.grade[mu]
        if budget < 0:
            continue
        for n in monos:
            if spec.eta(n) > budget:
                continue
            cases += 1
            d = lemma_c_discrepancy(spec, lam, mu, n)
            if d:
                witnesses.append(Witness("lemma_c", (lam, mu, n), d))
    return CheckRecord("lemma_c", FAIL if witnesses else PASS, witnesses, {"max_total_eta": max_total_eta},
                       time.perf_counter() - t0, cases=cases, label="Lemma C")


@dataclass
class IndependenceCertificate:
    certified: bool
    max_len: int
    lemma_c_bound: int
    monomials: int = 0
    witness: Witness | None = None
    lemma_c: CheckRecord | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "refuted"

    def to_dict(self, spec: TLieSpec) -> dict:
        out = {
            "status": self.status,
            "max_len": self.max_len,
            "lemma_c_bound": self.lemma_c_bound,
            "monomials": self.monomials,
            "notes": list(self.notes),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict(spec.word_key)
        return out


def independence_certificate(spec: TLieSpec, max_len: int) -> IndependenceCertificate:
    """Certify that PBW monomials of length <= max_len are linearly independent in U(L).

    Clause (C) is verified first up to the largest grade of those monomials, so
    the action factors through U(L) there; then each monomial Σ must act on 1
    as z_Σ.  Distinct monomials reach distinct basis vectors of S(L), so no
    nontrivial combination of them can vanish in U(L).  A Lemma-C failure
    refutes the certificate: the action cannot be a U(L)-module structure.
    """
    if max_len < 0:
        raise PreconditionViolated("max_len must be nonnegative")
    monos = enumerate_pbw(spec, max_len)
    bound = max((spec.eta(m) for m in monos), default=0)
    lemma = check_lemma_c(spec, bound)
    cert = IndependenceCertificate(False, max_len, bound, len(monos), lemma_c=lemma)
    if lemma.failed:
        cert.witness = lemma.witnesses[0]
        cert.notes.append(f"Lemma C fails on {len(lemma.witnesses)} of {lemma.cases} cases")
        return cert
    for m in monos:
        got = act_word(spec, m, ())
        expected = TensorPoly._raw({m: ONE})
        if got != expected:
            cert.witness = Witness("pbw_action", (m,), got - expected, "x_Σ·1 differs from z_Σ")
            return cert
    cert.certified = True
    return cert


__all__ = [
    "ActionCache", "IndependenceCertificate", "sym_word", "sym_normalize", "sym_product", "act",
    "act_poly", "act_word", "sym_monomials", "lemma_c_discrepancy", "check_lemma_c", "check_clause_b",
    "independence_certificate", "action_cache",
]
