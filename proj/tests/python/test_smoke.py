import pytest

import perico


def test_square_pipeline():
    pg = perico.example("square")
    assert pg.kind == "euclidean-lattice"
    assert pg.orbits == 1
    report = perico.colour_pipeline(pg)
    assert report["palette"] == 2
    assert report["index"] == 4
    assert report["proper"] is True


def test_hyperbolic_pipeline():
    pg = perico.example("tess-3-7")
    report = perico.colour_pipeline(pg, verify_radius=2)
    assert report["index"] == 168
    assert report["genus"] == 3
    assert report["palette"] <= 9
    assert report["proper"] is True


def test_genus_and_budget():
    assert perico.hyp.riemann_hurwitz_genus(0, [2, 3, 7], 168) == 3
    assert perico.hyp.colour_budget(1) == (7, 1048576)
    with pytest.raises(ValueError):
        perico.hyp.riemann_hurwitz_genus(0, [2, 3, 7], 100)


def test_serialization_round_trip():
    pg = perico.example("hexagonal")
    text = perico.serialize(pg)
    assert perico.serialize(perico.parse(text)) == text


def test_ends_and_render():
    assert perico.estimate_ends(perico.example("square")) == 1
    assert perico.estimate_ends(perico.example("path")) == 2
    svg = perico.render_svg(perico.example("square"), radius=3)
    assert svg.startswith("<svg")


def test_edge_colouring():
    report = perico.edge_colour_pipeline(perico.example("hexagonal"))
    assert report["palette"] == 3
    with pytest.raises(ValueError):
        perico.edge_colour_pipeline(perico.example("square"))
