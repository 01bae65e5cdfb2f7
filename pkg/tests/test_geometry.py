import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vofl import geometry as geo
from vofl.errors import ConfigError, DomainError


def test_interval_classify():
    dom = geo.interval()
    assert list(dom.classify([0.0, 1.0, -1.0, 1.5])) == [geo.INTERIOR, geo.BOUNDARY,
                                                          geo.BOUNDARY, geo.EXTERIOR]


def test_channel_classify():
    dom = geo.notched_channel()
    pts = np.array([[0, 0.75], [0, -0.75], [0, 0.5], [0, 0], [2.0, 0.9], [3, 0], [1.0, 0.75],
                    [4, 0]])
    assert list(dom.classify(pts)) == [2, 2, 1, 0, 0, 1, 1, 2]


@settings(max_examples=200, deadline=None)
@given(st.floats(-4, 4), st.floats(-2, 2))
def test_classify_partitions(x, y):
    cls = geo.notched_channel().classify(np.array([[x, y]]))
    assert cls[0] in (geo.INTERIOR, geo.BOUNDARY, geo.EXTERIOR)


def test_five_node_grid():
    ns = geo.uniform_nodes(geo.interval(), 5)
    np.testing.assert_array_equal(ns.points[:, 0], [-1, -0.5, 0, 0.5, 1])
    np.testing.assert_array_equal(ns.boundary, [True, False, False, False, True])
    assert ns.n_total == 5 and ns.n_interior == 3


def test_grid_sizes():
    assert geo.uniform_nodes(geo.interval(), 33).n_total == 33
    ns = geo.nodes_with_spacing(geo.notched_channel(), 0.125)
    assert ns.n_total == 713
    assert ns.n_interior == 569
    assert ns.cell_volume == pytest.approx(1 / 64)
    assert np.all(geo.notched_channel().classify(ns.interior) == geo.INTERIOR)


def test_grid_symmetry():
    ns = geo.uniform_nodes(geo.interval(), 17)
    np.testing.assert_allclose(np.sort(ns.points[:, 0]), np.sort(-ns.points[:, 0]), atol=1e-15)
    ch = geo.nodes_with_spacing(geo.notched_channel(), 0.125)
    key = {tuple(np.round(p, 9)) for p in ch.points}
    assert all((round(-x, 9) + 0.0, y) in key for x, y in key)


def test_degenerate_inputs():
    with pytest.raises(DomainError):
        geo.interval(1, 1)
    with pytest.raises(DomainError):
        geo.box([0, 0], [1, 0])
    with pytest.raises(ValueError):
        geo.uniform_nodes(geo.interval(), 1)


def test_named_fields():
    f = {n: geo.named_field(n) for n in ("alpha1", "alpha2", "alpha3", "alpha4", "alpha5")}
    assert f["alpha1"](0.5)[0] == 1.5
    assert f["alpha4"](-0.5)[0] == pytest.approx(1.0)
    assert f["alpha5"](0.0)[0] == 1.0
    assert f["alpha3"](0.0)[0] == pytest.approx(0.7)
    assert f["alpha2"](0.25)[0] == 0.75
    with pytest.raises(ConfigError):
        geo.named_field("alpha9")


def test_validation_reports_point():
    with pytest.raises(DomainError, match="1.5"):
        geo.named_field("alpha2").validate(np.array([0.0, 1.5]))
    with pytest.raises(DomainError):
        geo.named_field("alpha1").validate(np.array([-1.0]))
    geo.named_field("alpha2").validate(np.linspace(-0.9, 0.9, 7))


def test_blend_field():
    f = geo.blend(2.0, 1.4, -0.5, 0.5)
    pts = np.array([[-2, 0], [-0.5, 0.3], [0.0, 0.0], [0.5, 1], [2.5, 0]])
    np.testing.assert_allclose(f(pts, 2), [2.0, 2.0, 1.7, 1.4, 1.4])
    np.testing.assert_allclose(f(np.array([[0.25, 0.0]]), 2), [1.7 - 0.6 * 0.25])


def test_field_from_spec():
    assert geo.field_from_spec(1.5).is_constant
    assert geo.field_from_spec("1.2")(0.0)[0] == 1.2
    assert geo.field_from_spec("alpha3").label == "alpha3"
    f = geo.field_from_spec({"kind": "affine", "offset": 1.5, "slope": [0.5, 0.0]})
    assert f(np.array([[1.0, 0.3]]), 2)[0] == 2.0
    with pytest.raises(ConfigError):
        geo.field_from_spec({"offset": 1})
