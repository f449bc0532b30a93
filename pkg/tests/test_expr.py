"""Expression grammar: parsing, printing, round trips, error positions."""

import random

import pytest

from charslope import (CableNode, ComposingNode, HyperbolicGeometry,
                       HyperbolicNode, KnotSyntaxError, TorusLeaf, UnknotLeaf,
                       parse, render, validate)
from charslope.expr import load_knot_file, parse_expression

E51 = "hyp(borromean;hyp(whitehead;torus(2,3)),sum(hyp(fig8),hyp(stevedore)))"


def test_parse_torus():
    assert parse("torus(2,3)") == TorusLeaf(2, 3)
    assert parse(" torus ( -2 , 3 ) ") == TorusLeaf(-2, 3)


def test_parse_unknot_and_cable():
    assert parse("unknot") == UnknotLeaf()
    assert parse("cable(1,2;torus(2,3))") == CableNode(1, 2, TorusLeaf(2, 3))


def test_parse_example_tree():
    t = parse("cable(1,2; %s)" % E51)
    assert isinstance(t, CableNode)
    root = t.child
    assert isinstance(root, HyperbolicNode)
    assert root.geometry == "borromean"
    assert len(root.children) == 2
    w = root.children[0]
    assert isinstance(w, HyperbolicNode) and w.geometry == "whitehead"
    assert w.children == (TorusLeaf(2, 3),)
    s = root.children[1]
    assert isinstance(s, ComposingNode)
    assert [k.geometry for k in s.children] == ["fig8", "stevedore"]


def test_parse_inline_geometry_sugar():
    t = parse("hyp{sys=0.0141687}")
    assert isinstance(t, HyperbolicNode)
    assert t.children == ()
    g = t.geometry
    assert isinstance(g, HyperbolicGeometry)
    assert g.components == 1
    assert g.systole == 0.0141687
    assert g.meridian_lengths == ()
    assert g.linking_numbers == ()
    assert parse("hyp({sys=0.0141687})") == t


def test_parse_inline_with_lists():
    t = parse("hyp({sys=1.5,mu=[1.25,2.5],lk=[0,-3]};torus(2,3),torus(2,5))")
    g = t.geometry
    assert g.components == 3
    assert g.meridian_lengths == (1.25, 2.5)
    assert g.linking_numbers == (0, -3)


def test_parse_inline_partial_lists():
    g = parse("hyp({sys=1.5,lk=[0]};torus(2,3))").geometry
    assert g.components == 2
    assert g.meridian_lengths is None
    assert g.linking_numbers == (0,)


def test_unary_sum_is_syntax_ok_but_invalid():
    t = parse("sum(torus(2,3))")
    assert isinstance(t, ComposingNode)
    assert validate(t)


def test_syntax_error_positions():
    with pytest.raises(KnotSyntaxError) as err:
        parse("torus(2 3)")
    assert err.value.line == 1
    assert err.value.column == 9
    with pytest.raises(KnotSyntaxError) as err:
        parse("cable(1,2;\n  torus(2,))")
    assert err.value.line == 2


def test_trailing_garbage_rejected():
    with pytest.raises(KnotSyntaxError):
        parse("torus(2,3) torus(2,5)")


def test_decimal_int_distinction():
    with pytest.raises(KnotSyntaxError):
        parse("torus(2.5,3)")
    with pytest.raises(KnotSyntaxError):
        parse("hyp({sys=-1.0})")


def test_render_canonical():
    assert render(TorusLeaf(2, 3)) == "torus(2,3)"
    assert render(UnknotLeaf()) == "unknot"
    assert render(parse(E51)) == E51.replace(" ", "")


def test_render_inline_geometry():
    t = parse("hyp{sys=0.0141687}")
    assert render(t) == "hyp({sys=0.0141687})"
    assert parse(render(t)) == t


def test_spans_cover_subtrees():
    ke = parse_expression("cable(1,2;torus(2,3))")
    assert ke.spans[()] == (0, 21)
    start, end = ke.spans[(0,)]
    assert ke.source[start:end] == "torus(2,3)"


def test_load_knot_file(tmp_path):
    path = tmp_path / "k.knot"
    path.write_text("torus(2,3)\n")
    assert load_knot_file(path) == TorusLeaf(2, 3)


# -- randomized round trips ---------------------------------------------------

def random_tree(rng, depth=0, allow_unknot=False):
    choices = ["torus", "hyp"]
    if depth < 3:
        choices += ["cable", "sum", "hyp_kids"]
    if allow_unknot:
        choices.append("unknot")
    kind = rng.choice(choices)
    if kind == "unknot":
        return UnknotLeaf()
    if kind == "torus":
        while True:
            a = rng.choice([-1, 1]) * rng.randint(2, 9)
            b = rng.choice([-1, 1]) * rng.randint(2, 9)
            from math import gcd
            if gcd(abs(a), abs(b)) == 1:
                return TorusLeaf(a, b)
    if kind == "cable":
        return CableNode(rng.randint(-9, 9),
                         rng.choice([-1, 1]) * rng.randint(2, 5),
                         random_tree(rng, depth + 1))
    if kind == "sum":
        return ComposingNode(tuple(random_tree(rng, depth + 1)
                                   for _ in range(rng.randint(2, 3))))
    named = rng.random() < 0.5
    kids = 0 if kind == "hyp" else rng.randint(0, 2)
    if named:
        g = rng.choice(["whitehead", "borromean", "fig8", "some_link-2"])
        if kids:
            return HyperbolicNode(g, tuple(random_tree(rng, depth + 1)
                                           for _ in range(kids)))
        return HyperbolicNode(g, ())
    systole = round(rng.uniform(0.001, 9.0), rng.randint(1, 6))
    mu = tuple(round(rng.uniform(0.5, 40.0), rng.randint(1, 6))
               for _ in range(kids))
    lk = tuple(rng.randint(-5, 5) for _ in range(kids))
    g = HyperbolicGeometry(kids + 1, systole, mu, lk)
    return HyperbolicNode(g, tuple(random_tree(rng, depth + 1)
                                   for _ in range(kids)))


def test_round_trip_500_random_trees():
    rng = random.Random(20260810)
    for i in range(500):
        t = random_tree(rng, allow_unknot=(i % 50 == 0))
        text = render(t)
        assert parse(text) == t, text


def test_fuzz_smoke_no_crashes():
    rng = random.Random(99)
    alphabet = "torusCablehypsum(){}[];,=.0123456789-_ \n\t\x00\xff"
    for _ in range(2000):
        n = rng.randint(0, 60)
        text = "".join(rng.choice(alphabet) for _ in range(n))
        try:
            parse(text)
        except KnotSyntaxError:
            pass
