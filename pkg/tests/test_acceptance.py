"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import json
import math
import random
import time
from fractions import Fraction

import mpmath as mp
import pytest

from charslope import (CompositeOrFibred, HyperbolicGeometry, KnotSyntaxError,
                       SignatureObstruction, Slope, SpliceAnnotation, TorusId,
                       TwistCoefficient, bound, bundled_db, guarded_floor,
                       noncharacterising_witnesses, parse, q_frak,
                       q_leq_s_check, r_frak, refined_bound, render, s_frak,
                       sd_lower_bound, surgery_jsj, threshold_problems)
from test_expr import random_tree

mp.mp.dps = 50

DB = bundled_db()
E51_TEXT = "hyp(borromean;hyp(whitehead;torus(2,3)),sum(hyp(fig8),hyp(stevedore)))"
E53_TEXT = "cable(1,2;%s)" % E51_TEXT
E54_TEXT = ("hyp(borromean_m5_2;hyp(whitehead_m7;torus(2,3)),"
            "sum(hyp(fig8),hyp(stevedore)))")


def ok(line):
    print("ACCEPTANCE ok: %s" % line)


def test_example_51_fixture():
    start = time.perf_counter()
    rep = bound(parse(E51_TEXT), DB)
    elapsed = time.perf_counter() - start
    assert (rep.Q, rep.R, rep.S, rep.C) == (34, 2, 25, 34)
    assert elapsed < 1.0
    ok("example 5.1 fixture: Q=34 R=2 S=25 C=34 in %.3fs" % elapsed)


def test_example_53_fixture():
    rep = bound(parse(E53_TEXT), DB)
    assert rep.C == 34
    ok("example 5.3 fixture: cable wrap keeps C=34")


def test_example_54_fixture():
    rep = bound(parse(E54_TEXT), DB)
    assert rep.R == 36
    assert rep.C == 36
    ok("example 5.4 fixture: twisted links give R=36 C=36")


def test_formula_spot_values():
    assert s_frak(HyperbolicGeometry.for_knot(0.0141687)).value == 70
    assert s_frak(HyperbolicGeometry.for_knot(0.0035737)).value == 136
    res = q_leq_s_check(parse(E51_TEXT), DB)
    assert abs(res.threshold - 0.0762003) <= 5e-7
    assert sd_lower_bound(-38) == 19
    ok("formula spot values: s=70, s=136, threshold 0.0762003 (+-5e-7), sd=19")


def test_graph_manifold_table():
    assert bound(parse("torus(2,3)")).C == 8
    assert bound(parse("torus(3,7)")).C == 8
    assert bound(parse("torus(2,11)")).C == 11
    for outer in ("cable(7,2;%s)", "cable(-2,3;cable(7,2;%s))"):
        t = parse(outer % "cable(5,2;torus(2,3))")
        assert bound(t).C == max(5 + 2, 5 + 3)
    assert bound(parse("sum(torus(2,3),torus(2,5))")).C == 1
    assert bound(parse("cable(1,2;sum(torus(2,3),torus(2,5)))")).C == 2
    ok("graph-manifold table: 8, 8, 11, iterated-cable formula, 1, 2")


def test_threshold_property_suite():
    rng = random.Random(51)
    for i in range(200):
        systole = rng.uniform(1e-4, 10.0)
        merids = tuple(rng.uniform(0.5, 40.0) for _ in range(rng.randint(0, 4)))
        g = HyperbolicGeometry(len(merids) + 1, systole, merids,
                               (0,) * len(merids))
        assert threshold_problems(g) == [], (i, systole, merids)
        assert s_frak(g).value <= q_frak(g).value
    rng = random.Random(52)
    for _ in range(1000):
        v = Fraction(rng.randint(0, 10**9), rng.randint(1, 10**6))
        exact = v.numerator // v.denominator
        assert guarded_floor(float(v)).value >= exact
    # adversarial near-integer probes
    for n in range(1, 50):
        v = Fraction(n * 10**12 - 1, 10**12)
        assert guarded_floor(float(v)).value >= v.numerator // v.denominator
    ok("threshold semantics on 200 random geometries; floor guard on 1000+ probes")


def test_surgery_oracle_equivalence():
    checked = 0
    for s in (-3, -2, 2, 3):
        for r in range(-5, 6):
            t = parse("cable(%d,%d;hyp(fig8))" % (r, s))
            for q in range(3, 13):
                for p in range(-50, 51):
                    if math.gcd(abs(p), q) != 1:
                        continue
                    res = surgery_jsj(t, Slope(p, q))
                    expect_ii = abs(p - q * r * s) == 1 and abs(s) >= 2
                    assert (res.case_tag == "II") == expect_ii, (p, q, r, s)
                    fs = res.filled_slope
                    assert math.gcd(abs(fs.p), fs.q) == 1 and fs.q > 0
                    if expect_ii:
                        assert Fraction(fs.p, fs.q) == Fraction(p, q * s * s)
                    else:
                        assert fs == Slope(p, q)
                    checked += 1
    ok("surgery case selection matches the arithmetic oracle on %d slopes"
       % checked)


def _refined(expr_text, evidence):
    tree = parse(expr_text)
    anns = [SpliceAnnotation(TorusId((0,)), evidence)]
    return tree, anns, refined_bound(tree, DB, anns, complete=True)


def test_refined_bound_fixtures():
    sig_text = "hyp(whitehead;hyp({sys=0.0141687}))"
    _t, _a, rep = _refined(sig_text, SignatureObstruction(-38))
    assert rep.C == 34
    assert bound(parse(sig_text), DB).C == 70

    fib_text = "hyp(whitehead;hyp(pretzel_m2_m77_77))"
    _t, _a, rep = _refined(fib_text, CompositeOrFibred())
    assert rep.C == 34
    assert bound(parse(fib_text), DB).C == 136

    tree, anns, rep = _refined(sig_text, TwistCoefficient(77))
    assert rep.C == 77
    assert noncharacterising_witnesses(tree, DB, anns) == [Slope(1, 77)]
    ok("refined fixtures: 70->34 (signature), 136->34 (fibred), "
       "77 with witness 1/77 (twist)")


def test_parser_round_trip_500():
    rng = random.Random(20260810)
    for i in range(500):
        t = random_tree(rng, allow_unknot=(i % 50 == 0))
        assert parse(render(t)) == t
    ok("parser round-trips 500 random trees")


def test_parser_fuzz_10k():
    rng = random.Random(4242)
    crashes = 0
    corpus = 0
    alphabet = "torusCablehypsum(){}[];,=.0123456789-_ \n\t"
    for i in range(10000):
        corpus += 1
        if i % 3 == 0:
            text = bytes(rng.randrange(256) for _ in range(rng.randint(0, 40)))
        elif i % 3 == 1:
            text = "".join(rng.choice(alphabet)
                           for _ in range(rng.randint(0, 80)))
        else:
            base = list(E53_TEXT)
            for _ in range(rng.randint(1, 6)):
                pos = rng.randrange(len(base))
                base[pos] = rng.choice(alphabet)
            text = "".join(base)
        try:
            parse(text)
        except KnotSyntaxError:
            pass
        except Exception:
            crashes += 1
    assert crashes == 0
    ok("parser fuzz: %d inputs, no crash" % corpus)
