"""Satellite-tree model: validation, winding numbers, classification."""

import pytest
from hypothesis import given, strategies as st

from charslope import (CableNode, Composite, ComposingNode, GraphPrime,
                       HyperbolicGeometry, HyperbolicNode, HyperbolicType,
                       MissingGeometryError, TorusId, TorusLeaf, Unknot,
                       UnknotLeaf, ValidationError, all_winding_zero,
                       bundled_db, classify, cumulative_winding, edge_winding,
                       iter_nodes, iter_tori, validate)

T23 = TorusLeaf(2, 3)
T25 = TorusLeaf(2, 5)


def geom(components, systole=2.0, mu=None, lk=None):
    if mu is None:
        mu = (1.0,) * (components - 1)
    if lk is None:
        lk = (0,) * (components - 1)
    return HyperbolicGeometry(components, systole, tuple(mu), tuple(lk))


# -- validation ----------------------------------------------------------------

def test_trefoil_is_valid():
    assert validate(T23) == []


def test_cable_of_unknot_rejected():
    report = validate(CableNode(1, 2, UnknotLeaf()))
    assert any("cable companion trivial" in v.message for v in report)


def test_noncoprime_torus_rejected():
    report = validate(TorusLeaf(2, 4))
    assert any("gcd" in v.message for v in report)


def test_torus_cone_orders():
    assert validate(TorusLeaf(1, 3))
    assert validate(TorusLeaf(-2, 3)) == []


def test_cable_winding_magnitude():
    assert any("|s| >= 2" in v.message for v in validate(CableNode(3, 1, T23)))
    assert validate(CableNode(3, -2, T23)) == []


def test_composing_arity_and_factors():
    assert any("two factors" in v.message
               for v in validate(ComposingNode((T23,))))
    assert validate(ComposingNode((T23, T25))) == []
    bad = ComposingNode((T23, UnknotLeaf()))
    assert any("trivial" in v.message for v in validate(bad))


def test_unknot_only_at_root():
    assert validate(UnknotLeaf()) == []
    bad = HyperbolicNode(geom(2), (UnknotLeaf(),))
    assert any("trivial" in v.message for v in validate(bad))


def test_hyperbolic_child_count_vs_components():
    ok = HyperbolicNode(geom(3), (T23, T25))
    assert validate(ok) == []
    bad = HyperbolicNode(geom(3), (T23,))
    assert any("components" in v.message for v in validate(bad))


def test_named_geometry_checked_only_with_db():
    node = HyperbolicNode("whitehead", (T23,))
    assert validate(node) == []
    assert validate(node, bundled_db()) == []
    missing = HyperbolicNode("nosuchlink", ())
    assert validate(missing) == []
    assert any("unknown geometry key" in v.message
               for v in validate(missing, bundled_db()))


def test_validity_is_hereditary():
    t = HyperbolicNode(geom(3), (CableNode(1, 2, T23),
                                 ComposingNode((T23, T25))))
    assert validate(t) == []
    for path, node in iter_nodes(t):
        if path:
            assert validate(node) == []


# -- winding numbers -------------------------------------------------------------

def test_edge_winding_cable_and_composing():
    t = CableNode(5, 2, T23)
    assert edge_winding(t, TorusId((0,))) == 2
    c = ComposingNode((T23, T25))
    assert edge_winding(c, TorusId((0,))) == 1
    assert edge_winding(c, TorusId((1,))) == 1


def test_edge_winding_hyperbolic_uses_linking():
    t = HyperbolicNode(geom(2, lk=(0,)), (T23,))
    assert edge_winding(t, TorusId((0,))) == 0
    t3 = HyperbolicNode(geom(3, lk=(2, -3)), (T23, T25))
    assert edge_winding(t3, TorusId((1,))) == 3


def test_edge_winding_missing_linking_data():
    g = HyperbolicGeometry(2, 2.0, meridian_lengths=(1.0,), linking_numbers=None)
    t = HyperbolicNode(g, (T23,))
    with pytest.raises(MissingGeometryError):
        edge_winding(t, TorusId((0,)))


def test_edge_winding_named_key_needs_db():
    t = HyperbolicNode("whitehead", (T23,))
    with pytest.raises(MissingGeometryError):
        edge_winding(t, TorusId((0,)))
    assert edge_winding(t, TorusId((0,)), bundled_db()) == 0


def test_cumulative_winding_products():
    t = CableNode(1, 2, CableNode(1, 3, T23))
    assert cumulative_winding(t, TorusId((0,))) == 2
    assert cumulative_winding(t, TorusId((0, 0))) == 6


def test_cumulative_winding_zero_annihilates():
    inner = HyperbolicNode(geom(2, lk=(3,)), (T23,))
    t = HyperbolicNode(geom(2, lk=(0,)), (inner,))
    assert cumulative_winding(t, TorusId((0,))) == 0
    assert cumulative_winding(t, TorusId((0, 0))) == 0
    assert all_winding_zero(t)


def test_all_winding_zero_examples():
    w = HyperbolicNode(geom(2, lk=(0,)), (T23,))
    assert all_winding_zero(w)
    assert not all_winding_zero(CableNode(1, 2, T23))


def test_all_winding_zero_forces_zero_linking_root():
    # cable and composing roots always have a nonzero-winding first edge
    samples = [
        HyperbolicNode(geom(2, lk=(0,)), (T23,)),
        HyperbolicNode(geom(3, lk=(0, 0)), (T23, T25)),
        HyperbolicNode(geom(2, lk=(1,)), (T23,)),
        CableNode(1, 2, T23),
        ComposingNode((T23, T25)),
    ]
    for t in samples:
        if not all_winding_zero(t):
            continue
        assert isinstance(t, HyperbolicNode)
        assert all(n == 0 for n in t.geometry.linking_numbers)


@given(st.integers(min_value=-5, max_value=5), st.integers(min_value=2, max_value=5))
def test_cumulative_zero_iff_some_edge_zero(lk_value, s):
    inner = HyperbolicNode(geom(2, lk=(lk_value,)), (T23,))
    t = CableNode(1, s, inner)
    total = cumulative_winding(t, TorusId((0, 0)))
    assert (total == 0) == (lk_value == 0)
    assert total == s * abs(lk_value)


# -- classification ---------------------------------------------------------------

def test_classify_unknot_and_composite():
    assert isinstance(classify(UnknotLeaf()), Unknot)
    assert isinstance(classify(ComposingNode((T23, T25))), Composite)


def test_classify_torus_knot():
    kind = classify(T23)
    assert isinstance(kind, GraphPrime)
    assert kind.cables == ()
    assert kind.core == T23


def test_classify_peels_cables_outermost_first():
    t = CableNode(7, 2, CableNode(5, 3, T23))
    kind = classify(t)
    assert kind.cables == ((7, 2), (5, 3))
    assert kind.core == T23


def test_classify_cable_of_composite():
    t = CableNode(1, 2, ComposingNode((T23, T25)))
    kind = classify(t)
    assert isinstance(kind, GraphPrime)
    assert isinstance(kind.core, ComposingNode)


def test_classify_hyperbolic_type():
    t = HyperbolicNode(geom(2), (T23,))
    assert isinstance(classify(t), HyperbolicType)
    deep = CableNode(1, 2, HyperbolicNode(geom(1, mu=(), lk=())))
    assert isinstance(classify(deep), HyperbolicType)


def test_classify_requires_valid_tree():
    with pytest.raises(ValidationError):
        classify(TorusLeaf(2, 4))


def test_classify_partition():
    trees = [
        UnknotLeaf(),
        T23,
        CableNode(4, 3, T23),
        ComposingNode((T23, T25)),
        HyperbolicNode(geom(1, mu=(), lk=())),
        CableNode(1, 2, ComposingNode((T23, T25))),
    ]
    for t in trees:
        kind = classify(t)
        kinds = [isinstance(kind, cls)
                 for cls in (Unknot, Composite, GraphPrime, HyperbolicType)]
        assert sum(kinds) == 1
        has_hyp = any(isinstance(n, HyperbolicNode) for _p, n in iter_nodes(t))
        assert isinstance(kind, GraphPrime) == (
            not has_hyp and not isinstance(kind, (Unknot, Composite)))


def test_iter_tori_counts_edges():
    t = HyperbolicNode(geom(3), (CableNode(1, 2, T23), T25))
    paths = {torus.path for torus in iter_tori(t)}
    assert paths == {(0,), (1,), (0, 0)}
