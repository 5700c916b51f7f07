import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from flagmaps import (CHIRAL, OTHER, REGULAR, Automorphism, aut_group, automorphism_from_pair, build_torus44,
                      classify, reflection_generators, rotation_generators)
from flagmaps.symmetry import adjacent_flags_cross, flag_orbits, generated_subgroup


def coloured_flag_graph(fs):
    g = nx.Graph()
    g.add_nodes_from(range(fs.n))
    for i, ri in enumerate(fs.lists):
        for x, y in enumerate(ri):
            g.add_edge(x, y, colour=i)
    return g


def nx_automorphisms(fs):
    g = coloured_flag_graph(fs)
    gm = GraphMatcher(g, g, edge_match=lambda a, b: a["colour"] == b["colour"])
    return {tuple(m[x] for x in range(fs.n)) for m in gm.isomorphisms_iter()}


@pytest.mark.parametrize("name", ["cube", "torus44(2,1)", "torus44(3,0)", "hemicube", "square+triangle"])
def test_aut_group_matches_networkx(maps, name):
    fs = maps[name]
    ours = {f.image for f in aut_group(fs)}
    assert ours == nx_automorphisms(fs)


def test_every_cube_target_propagates(cube):
    assert all(automorphism_from_pair(cube, 0, b) is not None for b in range(cube.n))
    assert automorphism_from_pair(cube, 5, 5).is_identity()


def test_chiral_adjacent_flags_not_related(torus21):
    assert automorphism_from_pair(torus21, 0, int(torus21.r0[0])) is None


def test_automorphisms_commute(maps):
    for fs in (maps["cube"], maps["torus44(3,1)"]):
        assert all(f.commutes_with(fs) for f in aut_group(fs))


@pytest.mark.parametrize("name,order", [
    ("tetrahedron", 24), ("cube", 48), ("octahedron", 48), ("dodecahedron", 120), ("icosahedron", 120),
    ("torus44(2,1)", 20), ("torus44(3,0)", 72), ("torus44(3,1)", 40), ("hemicube", 24), ("square+triangle", 2),
])
def test_aut_orders(maps, name, order):
    group = aut_group(maps[name])
    assert len(group) == order
    assert group[0].is_identity()


def test_classify(maps, cube, torus21):
    assert classify(cube).tag == REGULAR and classify(cube).orbit_count == 1
    cls = classify(torus21)
    assert cls.tag == CHIRAL
    assert sorted(len(o) for o in cls.orbits) == [20, 20]
    assert adjacent_flags_cross(torus21, cls.orbits)
    assert classify(maps["square+triangle"]).tag == OTHER
    assert classify(maps["hemicube"]).tag == REGULAR


def test_trivial_symmetry_gives_identity_only():
    from flagmaps import from_faces, validate

    # tetrahedron with five faces stellated in an asymmetric pattern
    faces = [[0, 2, 3], [0, 1, 4], [2, 0, 4], [3, 1, 5], [1, 0, 5], [1, 3, 6], [3, 2, 6], [2, 1, 6],
             [0, 3, 7], [3, 5, 7], [5, 0, 7], [1, 2, 8], [2, 4, 8], [4, 1, 8]]
    fs = from_faces(faces)
    assert validate(fs).ok
    group = aut_group(fs)
    assert len(group) == 1 and group[0].is_identity()
    assert classify(fs, group).tag == OTHER


def test_reflections_cube(cube):
    gens = reflection_generators(cube, 0)
    assert gens.relations_hold
    assert gens.orders == {"rho0": 2, "rho1": 2, "rho2": 2}
    assert ((gens["rho0"] * gens["rho1"]) ** 4).is_identity()
    assert ((gens["rho1"] * gens["rho2"]) ** 3).is_identity()
    for j in range(3):
        assert gens[f"rho{j}"](0) == cube.r[j][0]
    assert len(generated_subgroup(gens.generators.values())) == 48


def test_reflections_absent_on_chiral(torus21):
    assert reflection_generators(torus21) is None


def test_rotations(cube, torus21):
    rot = rotation_generators(cube, 0)
    assert rot.orders == {"R": 4, "S": 3} and rot.relations_hold
    assert len(generated_subgroup([rot["R"], rot["S"]])) == 24
    rot = rotation_generators(torus21, 0)
    assert rot.orders == {"R": 4, "S": 4} and rot.relations_hold
    assert len(generated_subgroup([rot["R"], rot["S"]])) == 20
    assert (rot["R"] ** 4)(0) == 0


@pytest.mark.parametrize("b,c", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_chiral_tori(b, c):
    fs = build_torus44(b, c)
    cls = classify(fs)
    assert cls.tag == CHIRAL
    assert len(aut_group(fs)) == fs.n // 2


def test_automorphism_algebra():
    f = Automorphism([1, 2, 0, 3])
    assert (f ** 3).is_identity() and f.order() == 3
    assert f * f.inverse() == Automorphism.identity(4)
    assert f ** -1 == f.inverse()
    # composition applies the right factor first
    assert (f * Automorphism([0, 1, 3, 2]))(3) == 0


def test_flag_orbits_of_rotation_subgroup(cube):
    rot = rotation_generators(cube)
    orbits = flag_orbits(cube, generated_subgroup([rot["R"], rot["S"]]))
    assert sorted(map(len, orbits)) == [24, 24]
    assert adjacent_flags_cross(cube, orbits)
