import networkx as nx
import pytest

from flagmaps import (CoxeterCayleySource, GraphSource, ResourceCapExceeded, TreeSource, UniversalFlagSource,
                      ZdSource, build_platonic, ends_estimate, ends_profile, flag_graph_source, parse_source)
from flagmaps.ends import RelabeledSource, ball, free_group_source


def nx_annulus_count(g, root, inner, outer):
    """Components of the annulus inner <= d <= outer that reach distance outer."""
    dist = nx.single_source_shortest_path_length(g, root, cutoff=outer)
    keep = [v for v, d in dist.items() if inner <= d <= outer]
    sub = g.subgraph(keep)
    return sum(1 for comp in nx.connected_components(sub) if any(dist[v] == outer for v in comp))


def regular_tree(k, depth):
    g = nx.Graph()
    g.add_node(0)
    frontier, nxt_id = [0], 1
    for level in range(depth):
        new = []
        for v in frontier:
            for _ in range(k if level == 0 else k - 1):
                g.add_edge(v, nxt_id)
                new.append(nxt_id)
                nxt_id += 1
        frontier = new
    return g


def test_ball_sizes(cube):
    assert len(ball(ZdSource(1), 3).dist) == 7
    assert len(ball(ZdSource(2), 2).dist) == 13
    b = ball(flag_graph_source(cube), 30)
    assert len(b.dist) == 48 and b.exhausted


def test_ball_cap():
    with pytest.raises(ResourceCapExceeded):
        ball(ZdSource(3), 20, max_vertices=1000)


def test_line_has_two_ends():
    assert ends_estimate(ZdSource(1), 2, 10).component_count == 2
    for inner in range(1, 6):
        for spread in range(2, 6):
            assert ends_estimate(ZdSource(1), inner, inner + spread).component_count == 2


def test_plane_has_one_end():
    est = ends_estimate(ZdSource(2), 3, 12)
    assert est.component_count == 1
    assert est.component_count == nx_annulus_count(nx.grid_2d_graph(41, 41), (20, 20), 3, 12)


@pytest.mark.parametrize("r", range(1, 7))
def test_tree_counts(r):
    est = ends_estimate(TreeSource(3), r, r + 6)
    assert est.component_count == 3 * 2 ** (r - 1)
    assert est.component_count == nx_annulus_count(regular_tree(3, r + 6), 0, r, r + 6)


def test_finite_graph_has_no_unbounded_components(cube):
    src = flag_graph_source(cube)
    diameter = nx.diameter(nx.Graph((x, int(y)) for ri in cube.r for x, y in enumerate(ri)))
    assert ends_estimate(src, 1, diameter + 1).component_count == 0
    assert ends_profile(src, 3, 4).verdict == "0"


def test_profiles():
    assert ends_profile(ZdSource(1), 4, 6).verdict == "2"
    assert ends_profile(ZdSource(2), 4, 6).counts == [1, 1, 1, 1]
    prof = ends_profile(free_group_source(2), 4, 6)
    assert prof.counts == [4 * 3 ** (r - 1) for r in range(1, 5)]
    assert prof.verdict == "growing"


def test_universal_45_one_end():
    prof = ends_profile(UniversalFlagSource(4, 5), 4, 6)
    assert prof.counts == [1, 1, 1, 1] and prof.verdict == "1"
    assert ends_profile(CoxeterCayleySource(4, 5), 4, 6).verdict == "1"


def test_profile_argument_checks():
    with pytest.raises(ValueError):
        ends_profile(ZdSource(1), 3, 1)
    with pytest.raises(ValueError):
        ends_estimate(ZdSource(1), 3, 3)


def test_stabilized_flag():
    assert ends_estimate(ZdSource(1), 2, 8).stabilized
    assert ends_estimate(TreeSource(3), 1, 4).stabilized
    # on a 20-cycle the two arcs meet at the antipode
    cycle = GraphSource(0, lambda v: [(v - 1) % 20, (v + 1) % 20], finite_size=20, name="C20")
    assert ends_estimate(cycle, 2, 8).stabilized
    est = ends_estimate(cycle, 2, 10)
    assert est.component_count == 1 and not est.stabilized


def test_relabeling_preserves_counts(cube):
    src = flag_graph_source(cube)
    perm = [(7 * x + 3) % cube.n for x in range(cube.n)]
    inv = {y: x for x, y in enumerate(perm)}
    moved = RelabeledSource(src, perm.__getitem__, inv.__getitem__)
    assert ends_profile(moved, 3, 3).counts == ends_profile(src, 3, 3).counts


def test_custom_source():
    # a ray: one end
    ray = GraphSource(0, lambda v: [w for w in (v - 1, v + 1) if w >= 0], name="ray")
    assert ends_profile(ray, 3, 4).verdict == "1"


def test_parse_source(tmp_path, cube):
    from flagmaps import save

    path = tmp_path / "c.flags.json"
    save(cube, path)
    src = parse_source(f"file:{path}")
    assert src.finite_size == 48 and ends_profile(src, 2, 3).verdict == "0"
    assert isinstance(parse_source("zd:2"), ZdSource)
    assert isinstance(parse_source("tree:3"), TreeSource)
    assert isinstance(parse_source("coxeter:4,5"), CoxeterCayleySource)
    assert isinstance(parse_source("universal:4,5"), UniversalFlagSource)
    for bad in ["zd", "nope:1", "coxeter:4"]:
        with pytest.raises(ValueError):
            parse_source(bad)
