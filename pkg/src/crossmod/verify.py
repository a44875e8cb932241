"""The acceptance suites: every criterion as a callable returning pass/fail
plus log lines, shared by the CLI `verify` command and the test suite."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import fixtures, mutations
from .algebras import (
    check_algebra_morphism,
    check_boxed_identities,
    check_crossed_algebra,
    enumerate_algebra_morphisms,
    group_algebra_C,
    group_algebra_P,
    identity_algebra_morphism,
    kp_iso_witness,
    is_isomorphism,
    morphisms_equal,
    pullback,
    pushforward_data,
    pushforward_ideal,
    pushforward_rho_via_grade,
    transpose_from_pushforward,
    transpose_to_pullback,
    untranspose_from_pullback,
    untranspose_to_pushforward,
)
from .crossed_modules import (
    SemidirectElement,
    check_crossed_module,
    identity_morphism,
    sd_mul,
)
from .fields import GF, QQ
from .formal_maps import (
    Cap,
    Cup,
    Id,
    OrderedComplex,
    annulus_flatten,
    annulus_labeling,
    compose_expressions,
    compose_h,
    expression,
    labeling_from_vertex_potential,
    validate_simplicial,
    whiskering_orders,
)
from .hqft import (
    check_equivalence_invariance,
    eval_expression,
    extract_algebra,
    make_hqft,
    random_expression,
    state_space,
)
from .linalg import Matrix
from .algebras import same_structure


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    seconds: float
    lines: list

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} criterion {self.number}: {self.title} ({self.seconds:.2f}s)"


def _result(number, title, started, ok, lines) -> CriterionResult:
    return CriterionResult(number, title, ok, time.time() - started, lines)


def criterion_1() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    for name, cm in fixtures.std_crossed_modules().items():
        started = time.time()
        rep = check_crossed_module(cm)
        elapsed = time.time() - started
        ok &= rep.ok and elapsed < 1.0
        lines.append(f"  {name}: {'ok' if rep.ok else rep.summary()} ({elapsed:.3f}s)")
    return _result(1, "crossed-module axioms on all fixtures", t0, ok, lines)


def criterion_2() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    algs = fixtures.std_algebras(QQ)
    cms = fixtures.std_crossed_modules()
    for name, cm in cms.items():
        for label in (f"KC.{name}", f"KP.{name}"):
            rep = check_crossed_algebra(algs[label])
            ok &= rep.ok
            lines.append(f"  {label}: {'ok' if rep.ok else rep.summary()}")
        # grade-dimension formula against the brute-force count
        L = algs[f"KC.{name}"]
        ker = sum(1 for c in cm.top.elements() if cm.d(c) == 0)
        image = set(cm.boundary.map)
        for p in cm.base.elements():
            formula = ker if p in image else 0
            count = sum(1 for c in cm.top.elements() if cm.d(c) == p)
            ok &= L.dims[p] == formula == count
        lines.append(f"  KC.{name}: grade dims match |ker d| * [p in dC]")
    ok &= (time.time() - t0) < 5.0
    return _result(2, "group algebras pass the full checker; dim formula", t0, ok, lines)


def criterion_3() -> CriterionResult:
    t0 = time.time()
    cm = fixtures.std_crossed_modules()["CM-A3S3"]
    lines = []
    try:
        witness = kp_iso_witness(cm, QQ)
        rep = check_algebra_morphism(witness)
        ok = rep.ok and is_isomorphism(witness)
        lines.append("  witness e_p -> (e_q(p))_n is an isomorphism; "
                     "36 products match the cocycle law")
    except AssertionError as exc:
        ok = False
        lines.append(f"  {exc}")
    ok &= (time.time() - t0) < 1.0
    return _result(3, "K[P] ~ q*(K[G]) with the cocycle multiplication law", t0, ok, lines)


def criterion_4() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    for name, cm in fixtures.std_crossed_modules().items():
        size = cm.top.order * cm.base.order
        if size > 64:
            lines.append(f"  {name}: skipped (|C||P| = {size} > 64)")
            continue
        pairs = [SemidirectElement(cm, c, p)
                 for c in cm.top.elements() for p in cm.base.elements()]
        agree = all(
            (lambda s, cell: (s.c, s.p) == (cell.c, cell.p))(
                sd_mul(a, b),
                compose_h(_cell(cm, a), _cell(cm, b)))
            for a in pairs for b in pairs)
        whisker = all(
            (lambda r1, r2: (r1.c, r1.p) == (r2.c, r2.p))(*whiskering_orders(cm, c, p, c2, p2))
            for c in cm.top.elements() for p in cm.base.elements()
            for c2 in cm.top.elements() for p2 in cm.base.elements())
        ok &= agree and whisker
        lines.append(f"  {name}: compose_h = sd_mul on {len(pairs) ** 2} pairs; "
                     f"whiskering orders agree ({'ok' if agree and whisker else 'FAIL'})")
    ok &= (time.time() - t0) < 1.0
    return _result(4, "interchange/Peiffer: #0 = semidirect product", t0, ok, lines)


def _cell(cm, sd):
    from .formal_maps import LabeledCell
    return LabeledCell(cm, sd.c, sd.p)


def criterion_5() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    algs = fixtures.std_algebras(QQ)
    for name in ["KC.CM-Id2", "KC.CM-A3S3", "KC.CM-Mod", "KC.CM-AutS3",
                 "KP.CM-Id2", "KP.CM-A3S3", "KP.CM-Mod", "KP.CM-AutS3",
                 "QKG.CM-A3S3", "PUSH.CM-A3S3"]:
        rep = check_boxed_identities(algs[name])
        ok &= rep.ok
        lines.append(f"  {name}: {'ok' if rep.ok else rep.summary()}")
    ok &= (time.time() - t0) < 10.0
    return _result(5, "all four boxed identity families, exhaustively", t0, ok, lines)


def criterion_6() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    algs = fixtures.std_algebras(QQ)
    for name in fixtures.fixture_algebra_names():
        tau = make_hqft(algs[name])
        L = tau.algebra
        snakes = True
        for g in L.P.elements():
            e1 = expression(L.cm, [g], [[Id(g), Cup(L.P.inv[g])], [Cap(g), Id(g)]], [g])
            e2 = expression(L.cm, [g], [[Cup(g), Id(g)], [Id(g), Cap(L.P.inv[g])]], [g])
            ident = Matrix.identity(L.field, L.dims[g])
            snakes &= eval_expression(tau, e1).matrix == ident
            snakes &= eval_expression(tau, e2).matrix == ident
        rng = random.Random(20240 + len(name))
        functorial = True
        for _ in range(100):
            e1 = random_expression(tau, rng)
            e2 = random_expression(tau, rng,
                                   source=[c.labels[0] for c in e1.target.circuits])
            lhs = eval_expression(tau, compose_expressions(e1, e2)).matrix
            rhs = eval_expression(tau, e2).matrix @ eval_expression(tau, e1).matrix
            functorial &= lhs == rhs
        roundtrip = same_structure(extract_algebra(tau), L)
        ok &= snakes and functorial and roundtrip
        lines.append(f"  {name}: snakes {'ok' if snakes else 'FAIL'}, "
                     f"functoriality x100 {'ok' if functorial else 'FAIL'}, "
                     f"round trip {'ok' if roundtrip else 'FAIL'}")
    ok &= (time.time() - t0) < 30.0
    return _result(6, "evaluator coherence: snakes, functoriality, round trip", t0, ok, lines)


def criterion_7() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    algs = fixtures.std_algebras(QQ)
    for name in fixtures.fixture_algebra_names():
        rep = check_equivalence_invariance(make_hqft(algs[name]))
        ok &= rep.ok
        lines.append(f"  {name}: {'ok' if rep.ok else rep.summary()}")
    ok &= (time.time() - t0) < 10.0
    return _result(7, "equivalence-invariance families (a)-(d)", t0, ok, lines)


def _naive_span_dim(vectors):
    """Independent oracle: dimension of a rational span by textbook
    elimination on a dense list of lists."""
    rows = [list(map(Fraction, v)) for v in vectors]
    dim, col_count = 0, (len(rows[0]) if rows else 0)
    reduced = []
    for row in rows:
        for r in reduced:
            lead = next(i for i, x in enumerate(r) if x != 0)
            if row[lead] != 0:
                factor = row[lead] / r[lead]
                row = [a - factor * b for a, b in zip(row, r)]
        if any(x != 0 for x in row):
            reduced.append(row)
            dim += 1
    return dim


def _naive_ideal_dims(fmor, L):
    """Brute-force the ideal span closure with no shared machinery: embed
    everything in the full underlying space and iterate products."""
    P = L.P
    Q = fmor.target.base
    f0 = fmor.f_base.map
    offsets = L.grade_offsets()
    total = L.total_dim

    def embed(p, vec):
        out = [Fraction(0)] * total
        for i, x in enumerate(vec):
            out[offsets[p] + i] = Fraction(x)
        return out

    basis = [(p, i) for p in P.elements() for i in range(L.dims[p])]
    gens = []
    for n in P.elements():
        if f0[n] != 0 or n == 0:
            continue
        for p, i in basis:
            e = tuple(L.field.one if j == i else L.field.zero
                      for j in range(L.dims[p]))
            img = L.apply_phi(n, p, e)
            vec = embed(P.conj(n, p), img)
            base_vec = embed(p, e)
            gens.append([a - b for a, b in zip(vec, base_vec)])
    for b in L.C.elements():
        if fmor.f_top.map[b] != 0 or b == 0:
            continue
        gens.append([a - c for a, c in zip(embed(L.cm.d(b), L.tilde[b]),
                                           embed(0, L.unit))])

    def full_mul(u, v):
        out = [Fraction(0)] * total
        for p in P.elements():
            for i in range(L.dims[p]):
                a = u[offsets[p] + i]
                if a == 0:
                    continue
                for q in P.elements():
                    for j in range(L.dims[q]):
                        bcoef = v[offsets[q] + j]
                        if bcoef == 0:
                            continue
                        prod = L.multiply(p, tuple(L.field.one if k == i else L.field.zero
                                                   for k in range(L.dims[p])),
                                          q, tuple(L.field.one if k == j else L.field.zero
                                                   for k in range(L.dims[q])))
                        pq = P.mul(p, q)
                        for k, s in enumerate(prod):
                            out[offsets[pq] + k] += a * bcoef * Fraction(s)
        return out

    span = list(gens)
    dim = _naive_span_dim(span)
    while True:
        new = []
        for v in span:
            for p, i in basis:
                e = embed(p, tuple(L.field.one if j == i else L.field.zero
                                   for j in range(L.dims[p])))
                new.append(full_mul(e, v))
                new.append(full_mul(v, e))
        grown = _naive_span_dim(span + new)
        if grown == dim:
            break
        span = span + new
        dim = grown
    # split by target-grade class
    dims = {}
    for q in Q.elements():
        cols = [offsets[p] + i for p in P.elements() if f0[p] == q
                for i in range(L.dims[p])]
        dims[q] = _naive_span_dim([[v[c] for c in cols] for v in span])
    return dims


def criterion_8() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    fmor = fixtures.std_morphisms()["q.CM-A3S3"]
    L = fixtures.std_algebras(QQ)["KP.CM-A3S3"]
    data = pushforward_data(fmor, L)
    rep = check_crossed_algebra(data.algebra)
    ok &= rep.ok
    lines.append(f"  pushforward of K[S3] over (1->Z/2): checker "
                 f"{'ok' if rep.ok else rep.summary()}")
    Q = fmor.target.base
    for q in Q.elements():
        mats = [(p, pushforward_rho_via_grade(data, q, p)) for p in data.members[q]]
        usable = [m for _, m in mats if m is not None]
        same = bool(usable) and all(m == usable[0] for m in usable)
        ok &= same and len(usable) == len(mats)
        lines.append(f"  rho via every representative grade of {Q.names[q]}: "
                     f"{len(usable)}/{len(mats)} usable, all equal: {same}")
    oracle = _naive_ideal_dims(fmor, L)
    match = all(data.ideal_dim(q) == oracle[q] for q in Q.elements())
    ok &= match
    lines.append(f"  ideal dims {dict((Q.names[q], data.ideal_dim(q)) for q in Q.elements())} "
                 f"match brute-force oracle: {match}")
    ok &= (time.time() - t0) < 5.0
    return _result(8, "pushforward checker, rho independence, ideal oracle", t0, ok, lines)


def criterion_9() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    f2 = GF(2)
    algs = fixtures.std_algebras(f2)
    fmor = fixtures.std_morphisms()["collapse.CM-Id2"]
    L, Lp = algs["KC.CM-Id2"], algs["KQ.1Z2"]
    over_f = enumerate_algebra_morphisms(fmor, L, Lp)
    pulled = pullback(fmor, Lp)
    into_pull = enumerate_algebra_morphisms(identity_morphism(L.cm), L, pulled)
    data = pushforward_data(fmor, L)
    from_push = enumerate_algebra_morphisms(identity_morphism(fmor.target),
                                            data.algebra, Lp)
    counts = (len(over_f), len(into_pull), len(from_push))
    ok &= counts[0] == counts[1] == counts[2]
    lines.append(f"  |Hom over f| = {counts[0]}, |Hom into pullback| = {counts[1]}, "
                 f"|Hom from pushforward| = {counts[2]}")
    for m in over_f:
        tp = transpose_to_pullback(m)
        ok &= check_algebra_morphism(tp).ok
        back = untranspose_from_pullback(tp, fmor, Lp)
        ok &= morphisms_equal(back, m)
        tq = transpose_from_pushforward(m, data)
        ok &= check_algebra_morphism(tq).ok
        back2 = untranspose_to_pushforward(tq, fmor, L, data)
        ok &= morphisms_equal(back2, m)
    for m2 in into_pull:
        ok &= morphisms_equal(
            transpose_to_pullback(untranspose_from_pullback(m2, fmor, Lp)), m2)
    for m2 in from_push:
        ok &= morphisms_equal(
            transpose_from_pushforward(untranspose_to_pushforward(m2, fmor, L, data), data),
            m2)
    lines.append("  transposes are mutually inverse on every enumerated morphism")
    ok &= (time.time() - t0) < 60.0
    return _result(9, "adjunction transposes over F2, bounded enumeration", t0, ok, lines)


def criterion_10() -> CriterionResult:
    t0 = time.time()
    lines, ok = [], True
    cms = fixtures.std_crossed_modules()
    # identity-labeled (potential-derived) complexes always validate
    tetra = OrderedComplex(4, (0, 1, 2, 3),
                           edges=tuple(itertools.combinations(range(4), 2)),
                           triangles=tuple(itertools.combinations(range(4), 3)),
                           tetrahedra=((0, 1, 2, 3),))
    for name, cm in cms.items():
        for pot in itertools.islice(itertools.product(cm.base.elements(), repeat=4), 40):
            m = labeling_from_vertex_potential(cm, tetra, pot)
            ok &= validate_simplicial(m).ok
    lines.append("  potential-derived labelings of the full tetrahedron validate")
    cm = cms["CM-Id2"]
    for c, g, h in itertools.product(cm.top.elements(), cm.base.elements(),
                                     cm.base.elements()):
        pieces = set()
        for diagonal in ("up", "down"):
            for conc in ("first", "second"):
                m = annulus_labeling(cm, c, g, h, diagonal, conc)
                ok &= validate_simplicial(m).ok
                pieces.add(annulus_flatten(m))
        ok &= len(pieces) == 1
    lines.append("  CM-Id2: both annulus triangulations flatten to the same piece, "
                 "all (c,g,h)")
    cm = cms["CM-A3S3"]
    rng = random.Random(5)
    for _ in range(50):
        c = rng.randrange(cm.top.order)
        g = rng.randrange(cm.base.order)
        h = rng.randrange(cm.base.order)
        pieces = set()
        for diagonal in ("up", "down"):
            for conc in ("first", "second"):
                m = annulus_labeling(cm, c, g, h, diagonal, conc)
                ok &= validate_simplicial(m).ok
                pieces.add(annulus_flatten(m))
        ok &= len(pieces) == 1
    lines.append("  CM-A3S3: 50 random tuples, both triangulations agree")
    ok &= (time.time() - t0) < 5.0
    return _result(10, "simplicial validation and annulus flattening", t0, ok, lines)


def criterion_11() -> CriterionResult:
    t0 = time.time()
    results = mutations.run_all()
    missed = [d for d in results if not d.detected]
    lines = [f"  {d.mutation}: {'detected at ' + str(d.instance) if d.detected else 'MISSED'}"
             for d in results]
    lines.append(f"  {len(results) - len(missed)}/{len(results)} mutations detected")
    return _result(11, "mutation sensitivity: 100% detection", t0, not missed, lines)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
            criterion_11]

SUITES = {
    "axioms": [criterion_1, criterion_2],
    "iso": [criterion_3],
    "interchange": [criterion_4],
    "boxed": [criterion_5],
    "evaluator": [criterion_6],
    "invariance": [criterion_7],
    "pushforward": [criterion_8],
    "adjunction": [criterion_9],
    "simplicial": [criterion_10],
    "mutations": [criterion_11],
    "none": [],
    "all": CRITERIA,
}


def run_suite(name: str, out=print) -> int:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    all_ok = True
    for criterion in SUITES[name]:
        result = criterion()
        out(result.summary())
        for line in result.lines:
            out(line)
        all_ok &= result.ok
    return 0 if all_ok else 1
