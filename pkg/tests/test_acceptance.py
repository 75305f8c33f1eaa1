"""Acceptance criteria 1-10.  Each test prints one line: criterion, PASS/FAIL, detail, time."""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from tlie import catalog
from tlie.axioms import check_adequacy, check_braid, reevaluate, verify
from tlie.core import TensorPoly, apply_bracket, apply_pseudobracket, apply_S, apply_T, specialize_spec
from tlie.enveloping import (
    diamond_check,
    enumerate_pbw,
    ideal_member_truncated,
    is_pbw_monomial,
    measure,
    normalize,
    pbw_multiply,
    rewrite_at,
    specialize_tensor,
)
from tlie.errors import NotACommutationFactor
from tlie.scalar import ONE, ZERO, LaurentScalar
from tlie.symrep import action_cache, check_clause_b, check_lemma_c, independence_certificate

q = LaurentScalar.var("q")
W = TensorPoly.word


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, seconds: float, limit: float | None):
        within = limit is None or seconds < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\ncriterion {n}: {status}  {detail}  [{seconds:.2f} s{budget}]")
        assert ok, detail
        assert within, f"took {seconds:.2f} s, limit {limit} s"
    return emit


def random_laurent(rng: random.Random, variables=("q",), terms=2) -> LaurentScalar:
    out = ZERO
    for _ in range(rng.randint(1, terms)):
        exps = {v: rng.randint(-2, 2) for v in variables}
        out = out + LaurentScalar.monomial(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), exps)
    return out


def random_tensor(rng: random.Random, spec, max_len=3, terms=3) -> TensorPoly:
    out = TensorPoly()
    for _ in range(rng.randint(1, terms)):
        w = tuple(rng.choice(spec.ids) for _ in range(rng.randint(0, max_len)))
        out = out + W(*w, coeff=random_laurent(rng, tuple(spec.variables) or ("q",)))
    return out


def test_criterion_1_axiom_suite(report):
    t0 = time.perf_counter()
    failures = []
    for n in (2, 3, 4, 5):
        spec = catalog.load(f"sl_plus_q:{n}")
        assert len(spec.ids) == n * (n + 1) // 2
        rep = verify(spec, "involution,multiplicativity,stability,antisymmetry,jacobi")
        failures += [f"sl_plus_q:{n}/{r.check}" for r in rep.records if not r.passed]
    report(1, not failures, f"basic axioms on sl_plus_q:2..5; failures: {failures or 'none'}",
           time.perf_counter() - t0, 10)


def test_criterion_2_adequacy(report):
    t0 = time.perf_counter()
    details = []
    ok = True
    for key in ("sl_plus_q:3", "Lpq:3x3"):
        rec = check_adequacy(catalog.load(key), method="linear")
        ok &= rec.passed and not any("partial" in n for n in rec.notes)
        details.append(f"{key} {rec.status} ({rec.cases} triples)")
    report(2, ok, "; ".join(details), time.perf_counter() - t0, 60)


def ec_expected(spec, i, j, a, b) -> TensorPoly:
    """e_ab e_ij solved from the three relation shapes, for e_ij < e_ab."""
    x, y = f"e{i}{j}", f"e{a}{b}"
    xy = W(x, y)
    br = spec.br(x, y)
    if i == a or j == b:
        return (xy - br).scale(q ** -1)
    if j == a:
        return (xy - br).scale(q)
    return xy - spec.ps(x, y) - br


def test_criterion_3_ec_relations(report):
    t0 = time.perf_counter()
    spec = catalog.load("sl_plus_q:4")
    cells = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    bad = []
    pairs = 0
    for (i, j), (a, b) in itertools.product(cells, repeat=2):
        x, y = f"e{i}{j}", f"e{a}{b}"
        if not spec.lt(x, y):
            continue
        pairs += 1
        shapes = [i == a or j == b, j == a, i != a and j != b and j != a]
        if sum(shapes) != 1:
            bad.append((x, y, "shape"))
            continue
        if normalize(spec, W(y, x)) != normalize(spec, ec_expected(spec, i, j, a, b)):
            bad.append((x, y))
    report(3, not bad, f"{pairs} ordered pairs of sl_plus_q:4; mismatches: {bad or 'none'}",
           time.perf_counter() - t0, 10)


def test_criterion_4_pbw_counts(report):
    t0 = time.perf_counter()
    spec = catalog.load("sl_plus_q:3")
    n2 = len(enumerate_pbw(spec, 2, exact=True))
    n3 = len(enumerate_pbw(spec, 3, exact=True))
    certs = {n: independence_certificate(spec, n).status for n in (2, 3)}
    ok = n2 == 21 and n3 == 56 and all(s == "certified" for s in certs.values())
    report(4, ok, f"len 2: {n2}, len 3: {n3}; certificates {certs}", time.perf_counter() - t0, 30)


def test_criterion_5_counterexample(report):
    t0 = time.perf_counter()
    spec = catalog.load("tilde_sl4")
    dia = diamond_check(spec, 12)
    reproducible = bool(dia.witnesses) and all(reevaluate(spec, w) == w.discrepancy for w in dia.witnesses)
    member = ideal_member_truncated(spec, W("e23", "e14"), 3, 8)
    cert = independence_certificate(spec, 2)
    ok = dia.failed and reproducible and member.member and not cert.certified
    detail = (f"diamond {dia.status} ({len(dia.witnesses)} witnesses, reproducible={reproducible}); "
              f"e23.e14 {member.status()} (multiplier {member.multiplier}, ring-verified {member.ring_verified}); "
              f"certificate {cert.status}")
    report(5, ok, detail, time.perf_counter() - t0, 60)


def test_criterion_6_braids(report):
    t0 = time.perf_counter()
    keys = list(catalog.EXAMPLE_KEYS) + ["sl_plus_q:1", "sl_plus_q:5", "sl_minus_q:2", "sl_minus_q:4",
                                         "Lpq:2x3", "Lpq:3x2:eps12=-1", "classical_sl_minus:3", "abelian:2"]
    s_fail = [k for k in keys if not check_braid(catalog.load(k), "S").passed]
    t_fail = []
    for family in ("sl_plus_q", "sl_minus_q"):
        for n in (2, 3, 4):
            rec = check_braid(catalog.load(f"{family}:{n}"), "T")
            if not rec.passed:
                t_fail.append(f"{family}:{n} ({len(rec.witnesses)} of {rec.cases} decreasing triples)")
    detail = f"S fails on: {s_fail or 'none'}; T fails on: {t_fail or 'none'}"
    report(6, not s_fail and not t_fail, detail, time.perf_counter() - t0, 10)


def test_criterion_7_specialization(report):
    t0 = time.perf_counter()
    mismatched = []
    for n in (1, 2, 3, 4):
        special = specialize_spec(catalog.load(f"sl_plus_q:{n}"), {"q": 1})
        classical = catalog.load(f"classical_sl_plus:{n}")
        if special.ids != classical.ids or special.tables()[2:] != classical.tables()[2:]:
            mismatched.append(n)
    spec = catalog.load("sl_plus_q:3")
    spec1 = specialize_spec(spec, {"q": 1})
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        t = random_tensor(rng, spec, max_len=3)
        if normalize(spec1, specialize_tensor(t, {"q": 1})) != specialize_tensor(normalize(spec, t), {"q": 1}):
            bad += 1
    report(7, not mismatched and not bad,
           f"constants differ for n in {mismatched or 'none'}; commuting failures {bad}/100",
           time.perf_counter() - t0, 10)


def test_criterion_8_lemma_machinery(report):
    t0 = time.perf_counter()
    details = []
    ok = True
    for key in ("sl_plus_q:3", "Lpq:2x2"):
        spec = catalog.load(key)
        lem = check_lemma_c(spec, 12)
        clause = check_clause_b(spec)
        ok &= lem.passed and clause.passed and clause.cases == len(action_cache(spec))
        details.append(f"{key}: Lemma C {lem.status} ({lem.cases} cases), clause B {clause.status} "
                       f"({clause.cases} memoized values)")
    report(8, ok, "; ".join(details), time.perf_counter() - t0, 60)


def test_criterion_9_color_super(report):
    t0 = time.perf_counter()
    spec = catalog.load("super_demo")
    half = normalize(spec, W("x", "x")) == spec.br("x", "x").scale(Fraction(1, 2))
    no_square = ("x", "x") not in enumerate_pbw(spec, 3) and not is_pbw_monomial(spec, ("x", "x"))
    witness = None
    try:
        catalog.make_color("bad", (2,), lambda a, b: -1 if a[0] and not b[0] else 1,
                           [("x", (1,)), ("y", (0,))], {})
    except NotACommutationFactor as exc:
        witness = exc.witness
    ok = half and no_square and witness is not None
    report(9, ok, f"x.x = 1/2 [x,x]: {half}; x^2 excluded: {no_square}; rejection witness {witness}",
           time.perf_counter() - t0, 1)


def test_criterion_10_property_suites(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    spec = catalog.load("sl_plus_q:3")
    failures: dict[str, int] = {}

    def fail(name):
        failures[name] = failures.get(name, 0) + 1

    for _ in range(100):
        t = random_tensor(rng, spec, max_len=4)
        nf = normalize(spec, t)
        if normalize(spec, nf) != nf:
            fail("idempotence")
        nf2, trace = normalize(spec, t, trace=True)
        if nf2 != nf or trace.replay(spec) != nf:
            fail("trace")
        for step in trace.steps:
            _, frag = rewrite_at(spec, step.word, step.position)
            if any(not measure(spec, w) < measure(spec, step.word) for w in frag.words()):
                fail("measure descent")
    for _ in range(200):
        a, b, c = (normalize(spec, random_tensor(rng, spec, max_len=2, terms=2)) for _ in range(3))
        if pbw_multiply(spec, pbw_multiply(spec, a, b), c) != pbw_multiply(spec, a, pbw_multiply(spec, b, c)):
            fail("associativity")
    for _ in range(100):
        a = W(rng.choice(spec.ids), coeff=random_laurent(rng)) * random_tensor(rng, spec, max_len=0) * W("e12", "e23")
        b = W(rng.choice(spec.ids), coeff=random_laurent(rng)) * W("e13", "e24") + W("e14", "e34", "e12")
        c = random_laurent(rng)
        for f in (apply_S, apply_T, apply_bracket, apply_pseudobracket):
            for pos in (0, 1):
                if f(spec, a + b.scale(c), pos) != f(spec, a, pos) + f(spec, b, pos).scale(c):
                    fail(f"linearity {f.__name__}")
    for _ in range(1000):
        x, y, z = (random_laurent(rng, ("q", "p"), 3) for _ in range(3))
        if not (x + y == y + x and x * y == y * x and (x + y) + z == x + (y + z)
                and (x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z
                and x + ZERO == x and x * ONE == x and x - x == ZERO):
            fail("ring axioms")
    report(10, not failures, f"failures: {failures or 'none'} (100 normal forms, 200 triples, "
           f"100 linearity draws, 1000 scalar cases)", time.perf_counter() - t0, None)
