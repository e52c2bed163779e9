"""Graph text format and the periodic graph model."""

import pytest

from endcycle.graph import (
    KIND_FINITE,
    KIND_PERIODIC_N,
    KIND_PERIODIC_Z,
    Dart,
    EdgeId,
    Ray,
    VertexId,
    graph_from_text,
    parse_dart_label,
    parse_edge_label,
    parse_vertex_label,
)
from endcycle.errors import (
    BadOffset,
    FormatError,
    InfiniteComponents,
    LoopEdge,
    NotARay,
    UnknownEdge,
    UnknownVertex,
    UnknownVertexClass,
)


def test_ladder_basics(ladder):
    assert ladder.spec.name == "ladder"
    assert ladder.kind == KIND_PERIODIC_Z
    assert sorted(ladder.spec.cell_classes) == ["bot", "top"]
    assert ladder.degree(parse_vertex_label("top[0]")) == 3
    e = parse_edge_label("rung[2]")
    tail, head = ladder.endpoints(e)
    assert tail == VertexId("top", 2)
    assert head == VertexId("bot", 2)


def test_neighbors_and_shift(ladder):
    v = parse_vertex_label("top[0]")
    nb = {u.label() for _, u in ladder.neighbors(v)}
    assert nb == {"top[-1]", "top[1]", "bot[0]"}
    assert ladder.shift_vertex(v, 5) == VertexId("top", 5)
    assert ladder.shift_edge(EdgeId("rail_top", 1), -3) == EdgeId("rail_top", -2)


def test_cap_vertices_do_not_shift(chords):
    origin = parse_vertex_label("origin")
    assert origin.index is None
    with pytest.raises(UnknownVertex):
        chords.shift_vertex(origin, 4)


def test_truncate_counts(ladder):
    t = ladder.truncate(2)
    assert len(t.vertices) == 10
    assert len(t.edges) == 13
    assert len(t.boundary) == 4
    assert all(v in t.vertices for v in t.boundary)


def test_truncate_monotone(ladder):
    small = set(ladder.truncate(1).vertices)
    big = set(ladder.truncate(3).vertices)
    assert small < big


def test_end_counts(ladder, chords, single_ray, intro_plain, theta, disjoint):
    assert len(list(ladder.ends())) == 2
    assert len(list(chords.ends())) == 1
    assert len(list(single_ray.ends())) == 1
    assert len(list(intro_plain.ends())) == 2
    assert len(list(theta.ends())) == 0
    assert len(list(disjoint.ends())) == 2


def test_components(ladder, disjoint, three_parts, theta):
    assert len(ladder.components()) == 1
    assert len(disjoint.components()) == 2
    assert len(three_parts.components()) == 3
    comps = theta.components()
    assert len(comps) == 1 and comps[0].finite and comps[0].size == 2


def test_component_of_is_consistent(disjoint):
    top = parse_vertex_label("top[7]")
    bot = parse_vertex_label("bot[-2]")
    t0 = parse_vertex_label("t0")
    assert disjoint.component_of(top) == disjoint.component_of(bot)
    assert disjoint.component_of(top) != disjoint.component_of(t0)


def test_ray_end_and_half_space(double_ray):
    r = Ray(parse_vertex_label("node[0]"), (), (parse_dart_label("step[0]+"),), 1)
    end = double_ray.end_of_ray(r)
    assert end.label() == "end+0"
    assert double_ray.in_half_space(parse_vertex_label("node[9]"), end, 3)
    assert not double_ray.in_half_space(parse_vertex_label("node[-9]"), end, 3)


def test_walk_from(ladder):
    darts = (parse_dart_label("rail_top[0]+"), parse_dart_label("rung[1]+"))
    verts = ladder.walk_from(parse_vertex_label("top[0]"), darts)
    assert [v.label() for v in verts] == ["top[0]", "top[1]", "bot[1]"]


def test_walk_from_rejects_broken_chain(ladder):
    darts = (parse_dart_label("rail_top[0]+"), parse_dart_label("rail_top[5]+"))
    with pytest.raises(NotARay):
        ladder.walk_from(parse_vertex_label("top[0]"), darts)


def test_finite_graphs_have_no_rays(theta):
    with pytest.raises(NotARay):
        theta.check_ray(Ray(VertexId("u", None), (), (Dart(EdgeId("left", None), True),), 0))


def test_ball_radius_one(double_ray):
    sub = double_ray.ball(parse_vertex_label("node[0]"), 1)
    assert {v.label() for v in sub.vertices} == {"node[-1]", "node[0]", "node[1]"}


def test_require_helpers(ladder):
    with pytest.raises(UnknownVertex):
        ladder.require_vertex(VertexId("origin", None))
    with pytest.raises(UnknownEdge):
        ladder.require_edge(EdgeId("spoke", 0))


def test_label_round_trips():
    for text in ("top[0]", "bot[-3]", "origin"):
        assert parse_vertex_label(text).label() == text
    assert parse_edge_label("rail_top[-2]").label() == "rail_top[-2]"
    d = parse_dart_label("rung[4]-")
    assert d.edge == EdgeId("rung", 4) and not d.forward


# --- parse failures -------------------------------------------------------

def test_missing_graph_line():
    with pytest.raises(FormatError, match="missing graph line"):
        graph_from_text("kind finite\nvertex a\n")


def test_bad_kind():
    with pytest.raises(FormatError, match="line 2"):
        graph_from_text("graph g\nkind sometimes\nvertex a\n")


def test_loop_edge_rejected():
    with pytest.raises(LoopEdge):
        graph_from_text("graph g\nkind periodic-z\nvertex a\nedge e : a -> a\n")


def test_unknown_endpoint_class():
    with pytest.raises(UnknownVertexClass):
        graph_from_text("graph g\nkind periodic-z\nvertex a\nedge e : a -> b[+1]\n")


def test_bad_endpoint_syntax():
    # cell endpoints need brackets, a bare offset is not accepted
    with pytest.raises(FormatError, match="bad endpoint"):
        graph_from_text("graph g\nkind periodic-z\nvertex a\nedge e : a -> a+1\n")


def test_duplicate_edge_name():
    with pytest.raises(FormatError, match="duplicate name"):
        graph_from_text(
            "graph g\nkind periodic-z\nvertex a\n"
            "edge e : a -> a[+1]\nedge e : a -> a[+2]\n"
        )


def test_isolated_cell_class_rejected():
    # a cell class with no attachment toward the center would repeat forever
    with pytest.raises(InfiniteComponents):
        graph_from_text(
            "graph g\nkind periodic-z\nvertex a\nvertex b\nedge e : a -> a[+1]\n"
        )


def test_finite_kind_takes_no_indices():
    # finite vertices behave like caps, so an index is an offset error
    with pytest.raises(BadOffset):
        graph_from_text(
            "graph g\nkind finite\nvertex a\nvertex b\nedge e : a -> b[+1]\n"
        )
