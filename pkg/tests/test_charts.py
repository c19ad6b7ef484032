"""Unit tests for chart parsing, realization, dualization, comparison."""

import json

import pytest

from gradedext.charts import (Chart, Dot, Edge, bundled_chart,
                              chart_from_dict, chart_to_dict, chart_to_module,
                              compare_charts, dualize_chart,
                              render_chart_ascii, render_chart_svg)


def _tower(n):
    dots = tuple(Dot("f%d" % i, 0, i) for i in range(n))
    edges = tuple(Edge("two", "f%d" % i, "f%d" % (i + 1))
                  for i in range(n - 1))
    return Chart("homological", dots, edges)


def test_tower_gives_cyclic_group():
    M = chart_to_module(_tower(4))
    assert M.group_at(0).exponents == (4,)     # Z/16
    assert M.group_at(2).exponents == ()


def test_validation_catches_bad_edges():
    d = (Dot("a", 0, 0), Dot("b", 2, 0))
    with pytest.raises(ValueError):
        Chart("homological", d,
              (Edge("two", "a", "b"),)).validate()   # degree step wrong
    with pytest.raises(ValueError):
        Chart("homological", (Dot("a", 0, 0), Dot("b", 0, 2)),
              (Edge("two", "a", "b", exotic=False),)).validate()
    with pytest.raises(ValueError):
        Chart("sideways", (), ()).validate()


def test_roundtrip():
    fig = bundled_chart("figure2")
    assert chart_from_dict(chart_to_dict(fig)) == fig


def test_bundled_charts_have_17_dots():
    assert len(bundled_chart("figure1").dots) == 17
    assert len(bundled_chart("figure2").dots) == 17


def test_figure2_orders():
    fig2 = bundled_chart("figure2")
    assert fig2.degreewise_orders() == {16: 16, 18: 8, 20: 4, 22: 4, 24: 2,
                                        26: 2, 28: 2, 30: 4, 32: 2}


def test_figure2_module_orders():
    M = chart_to_module(bundled_chart("figure2"))
    for t, order in bundled_chart("figure2").degreewise_orders().items():
        assert 2 ** sum(M.group_at(t).exponents) == order


def test_dualize_figure2_is_figure1():
    fig2 = bundled_chart("figure2")
    fig1 = bundled_chart("figure1")
    dual = dualize_chart(fig2, 4)
    cmp = compare_charts(dual, fig1)
    assert cmp.equal, cmp.to_dict()
    # the filtration-7 class dualizes to filtration 0
    moved = {d.id: (d.degree, d.filtration) for d in dual.dots}
    assert moved["d30f7"] == (34, 0)
    # six exotic extensions appear
    assert sum(1 for e in dual.edges if e.exotic) == 6


def test_dualize_involution_up_to_position():
    fig2 = bundled_chart("figure2")
    back = dualize_chart(dualize_chart(fig2, 4), -4)
    cmp = compare_charts(back, fig2)
    assert cmp.equal, cmp.to_dict()


def test_compare_reports_differences():
    a = _tower(3)
    b = _tower(2)
    cmp = compare_charts(a, b)
    assert not cmp.equal
    assert cmp.dot_diff[0] == ((0, 2),)
    assert cmp.order_diff == (0,)


def test_render_outputs():
    fig1 = bundled_chart("figure1")
    text = render_chart_ascii(fig1)
    assert "o" in text and "exotic" in text
    svg = render_chart_svg(fig1)
    assert svg.startswith("<svg") and svg.count("<circle") == 17
    # deterministic
    assert render_chart_svg(fig1) == svg
    assert json.dumps(chart_to_dict(fig1)) == json.dumps(chart_to_dict(fig1))
