import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotcert.errors import (
    DegreeNotThree,
    EdgeAbsent,
    InputError,
    LabelClash,
    ScriptError,
    TriangleAbsent,
)
from knotcert.graphcore import (
    G7_MOVE_SCRIPT,
    K7_LABELS,
    DeltaY,
    YDelta,
    adjacency,
    apply_script,
    complete_graph,
    construct_g7,
    contract_edge,
    delete_edge,
    delta_y,
    edge,
    graph_from_json,
    graph_to_json,
    is_connected,
    is_isomorphic,
    make_graph,
    script_from_json,
    script_to_json,
    verify_automorphism,
    y_delta,
)

G7_EDGES = {
    ("c", "d"), ("c", "e"), ("c", "f"), ("c", "g"), ("c", "h"),
    ("d", "g"), ("d", "i"), ("d", "k"),
    ("e", "f"), ("e", "i"), ("e", "l"),
    ("f", "j"), ("f", "k"),
    ("g", "j"), ("g", "l"),
    ("h", "i"), ("h", "j"), ("h", "k"), ("h", "l"),
    ("i", "j"), ("k", "l"),
}


def test_complete_graph_sizes():
    k7 = complete_graph(K7_LABELS)
    assert len(k7.vertices) == 7 and len(k7.edges) == 21
    single = complete_graph(["a"])
    assert len(single.vertices) == 1 and len(single.edges) == 0
    tri = complete_graph(["a", "b", "c"])
    assert tri.edges == frozenset({("a", "b"), ("a", "c"), ("b", "c")})


def test_complete_graph_rejects_duplicates():
    with pytest.raises(InputError):
        complete_graph(["a", "a", "b"])
    with pytest.raises(InputError):
        complete_graph([])


def test_delta_y_star():
    tri = complete_graph(["a", "b", "c"])
    star = delta_y(tri, ("a", "b", "c"), "v")
    assert star.edges == frozenset({("a", "v"), ("b", "v"), ("c", "v")})


def test_delta_y_on_k7():
    g1 = delta_y(complete_graph(K7_LABELS), ("a", "b", "c"), "h")
    assert len(g1.vertices) == 8 and len(g1.edges) == 21
    for v in "abc":
        assert len(adjacency(g1)[v]) == 5


def test_delta_y_errors():
    c4 = make_graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    with pytest.raises(TriangleAbsent):
        delta_y(c4, ("a", "b", "c"), "v")
    tri = complete_graph(["a", "b", "c"])
    with pytest.raises(LabelClash):
        delta_y(tri, ("a", "b", "c"), "a")


def test_y_delta_star_to_triangle():
    star = make_graph("vabc", [("v", "a"), ("v", "b"), ("v", "c")])
    assert y_delta(star, "v") == complete_graph(["a", "b", "c"])


def test_y_delta_k4_double_edge_collapse():
    k4 = complete_graph(["a", "b", "c", "v"])
    out = y_delta(k4, "v")
    assert out == complete_graph(["a", "b", "c"])
    assert len(out.edges) == 3


def test_y_delta_degree_rejections():
    k5 = complete_graph(list("abcde"))
    with pytest.raises(DegreeNotThree):
        y_delta(k5, "a")  # degree 4
    path = make_graph("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(DegreeNotThree):
        y_delta(path, "b")  # degree 2
    with pytest.raises(InputError):
        y_delta(path, "z")


def test_delete_and_contract():
    tri = complete_graph(["a", "b", "c"])
    merged = contract_edge(tri, ("a", "b"))
    assert merged.vertices == frozenset({"a", "c"})
    assert merged.edges == frozenset({("a", "c")})
    k4 = contract_edge(complete_graph(list("abcde")), ("d", "e"))
    assert is_isomorphic(k4, complete_graph(list("wxyz"))) is not None
    path = make_graph("abc", [("a", "b"), ("b", "c")])
    cut = delete_edge(path, ("a", "b"))
    assert not is_connected(cut)
    with pytest.raises(EdgeAbsent):
        delete_edge(path, ("a", "c"))
    with pytest.raises(EdgeAbsent):
        contract_edge(path, ("a", "c"))


def test_apply_script_construction():
    final, inter = apply_script(complete_graph(K7_LABELS), G7_MOVE_SCRIPT)
    assert len(inter) == 7 and inter[-1] == final
    assert len(final.vertices) == 10 and len(final.edges) == 21
    # the fifth intermediate pins both Y-triangle centers
    g5 = inter[4]
    assert adjacency(g5)["a"] == frozenset("hij")
    assert adjacency(g5)["b"] == frozenset("hkl")
    g6 = inter[5]
    assert len(g6.vertices) == 11 and len(g6.edges) == 21
    for e in [("h", "i"), ("h", "j"), ("i", "j")]:
        assert e in g6.edges and e not in g5.edges


def test_apply_script_empty_and_errors():
    k7 = complete_graph(K7_LABELS)
    final, inter = apply_script(k7, script_from_json('{"steps": []}'))
    assert final == k7 and inter == []
    from knotcert.graphcore import MoveScript
    bad = MoveScript((DeltaY(("a", "b", "c"), "h"), YDelta("d")))
    with pytest.raises(ScriptError) as err:
        apply_script(k7, bad)
    assert err.value.index == 1
    assert isinstance(err.value.cause, DegreeNotThree)


def test_construct_g7_exact():
    g7 = construct_g7()
    assert g7.vertices == frozenset("cdefghijkl")
    assert g7.edges == frozenset(G7_EDGES)
    deg = {v: len(adjacency(g7)[v]) for v in g7.vertices}
    assert deg["c"] == 5 and deg["h"] == 5
    assert all(deg[v] == 4 for v in "defgijkl")
    assert is_connected(g7)


def test_is_isomorphic_witness_and_refusals():
    g7 = construct_g7()
    relabel = {v: v.upper() for v in g7.vertices}
    shuffled = make_graph(
        [relabel[v] for v in g7.vertices],
        [(relabel[u], relabel[v]) for u, v in g7.edges],
    )
    witness = is_isomorphic(g7, shuffled)
    assert witness is not None
    assert all(edge(witness[u], witness[v]) in shuffled.edges for u, v in g7.edges)
    star = make_graph("vabc", [("v", "a"), ("v", "b"), ("v", "c")])
    assert is_isomorphic(star, complete_graph(["a", "b", "c"])) is None
    assert is_isomorphic(g7, complete_graph(K7_LABELS)) is None


def test_verify_automorphism():
    g7 = construct_g7()
    horizontal = {"c": "h", "h": "c", "e": "i", "i": "e", "f": "j", "j": "f",
                  "d": "l", "l": "d", "g": "k", "k": "g"}
    vertical = {"c": "c", "h": "h", "e": "f", "f": "e", "i": "j", "j": "i",
                "d": "g", "g": "d", "k": "l", "l": "k"}
    assert verify_automorphism(g7, horizontal)
    assert verify_automorphism(g7, vertical)
    swap_cd = {v: v for v in g7.vertices}
    swap_cd["c"], swap_cd["d"] = "d", "c"
    assert not verify_automorphism(g7, swap_cd)
    with pytest.raises(InputError):
        verify_automorphism(g7, {"c": "c"})


def test_bundled_fixtures_match_construction():
    from knotcert import fixtures
    assert fixtures.load_graph(fixtures.G7_GRAPH) == construct_g7()
    assert fixtures.load_script(fixtures.G7_SCRIPT) == G7_MOVE_SCRIPT
    with pytest.raises(FileNotFoundError):
        fixtures.fixture_path("nonexistent.json")


def test_graph_json_round_trip():
    g7 = construct_g7()
    text = graph_to_json(g7)
    assert graph_from_json(text) == g7
    assert text == graph_to_json(graph_from_json(text))
    lines = text.splitlines()
    assert '"edges"' in lines[1]  # sorted keys: edges before vertices


def test_script_json_round_trip():
    text = script_to_json(G7_MOVE_SCRIPT)
    assert script_from_json(text) == G7_MOVE_SCRIPT
    assert '"deltaY"' in text and '"yDelta"' in text
    with pytest.raises(InputError):
        script_from_json('{"steps": [{"op": "warp"}]}')


# -- properties --------------------------------------------------------------

labels = st.sampled_from("abcdefgh")


@st.composite
def graphs(draw, min_v=3, max_v=7):
    n = draw(st.integers(min_v, max_v))
    vs = [chr(ord("a") + i) for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    picked = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return make_graph(vs, picked)


@st.composite
def graphs_with_triangle(draw):
    g = draw(graphs(min_v=4))
    vs = sorted(g.vertices)
    tri = draw(st.permutations(vs))[:3]
    es = set(g.edges) | {edge(tri[0], tri[1]), edge(tri[0], tri[2]), edge(tri[1], tri[2])}
    return make_graph(g.vertices, es), tuple(sorted(tri))


@given(graphs_with_triangle())
@settings(max_examples=120)
def test_moves_invert_each_other(data):
    g, tri = data
    forward = delta_y(g, tri, "z")
    assert len(forward.edges) == len(g.edges)
    assert len(forward.vertices) == len(g.vertices) + 1
    assert y_delta(forward, "z") == g
    assert "z" not in g.vertices  # purity: input untouched


@given(graphs_with_triangle())
@settings(max_examples=60)
def test_y_delta_edge_bookkeeping(data):
    g, tri = data
    forward = delta_y(g, tri, "z")
    nbrs = adjacency(forward)["z"]
    non_adjacent = sum(
        1 for i, u in enumerate(sorted(nbrs)) for v in sorted(nbrs)[i + 1:]
        if edge(u, v) not in forward.edges
    )
    back = y_delta(forward, "z")
    assert len(back.edges) == len(forward.edges) - 3 + non_adjacent


@given(graphs(), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_is_isomorphic_symmetric_under_relabeling(g, rnd):
    vs = sorted(g.vertices)
    img = list("zyxwvuts"[:len(vs)])
    rnd.shuffle(img)
    relabel = dict(zip(vs, img))
    h = make_graph(img, [(relabel[u], relabel[v]) for u, v in g.edges])
    assert is_isomorphic(g, h) is not None
    assert is_isomorphic(h, g) is not None
    if len(g.edges) >= 1:
        smaller = delete_edge(g, sorted(g.edges)[0])
        assert is_isomorphic(smaller, h) is None
        assert is_isomorphic(h, smaller) is None
