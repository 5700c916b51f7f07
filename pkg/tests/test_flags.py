import networkx as nx
import numpy as np
import pytest

from flagmaps import (FlagSystem, MapFragment, NonSimpleMapError, build_hemicube, build_platonic,
                      build_square_triangle, build_torus44, from_faces, orbit_partition, schlafli_type,
                      surface_invariants, validate)
from flagmaps.flags import EDGE, FACE, VERTEX, bipartition, cycle_of
from flagmaps.symmetry import isomorphism

from conftest import cube_from_coordinates


def nx_orbit_count(fs, gens):
    g = nx.Graph()
    g.add_nodes_from(range(fs.n))
    for i in gens:
        g.add_edges_from((x, int(y)) for x, y in enumerate(fs.r[i]))
    return nx.number_connected_components(g)


def test_cube_matches_coordinate_construction(cube):
    other = cube_from_coordinates()
    assert validate(other).ok
    assert any(isomorphism(other, 0, cube, b) is not None for b in range(cube.n))


def test_validate_cube_is_clean(cube):
    report = validate(cube)
    assert report.ok and report.problems == []


def test_validate_identity_reports_fixed_points():
    ident = list(range(8))
    report = validate(FlagSystem(ident, ident, ident))
    assert not report.ok
    assert sum(p.startswith("fixed point") for p in report.problems) == 3


def test_validate_broken_involution(cube):
    r0 = cube.r0.copy()
    r0[0] = r0[5] if r0[5] != 0 else r0[6]
    report = validate(FlagSystem(r0, cube.r1, cube.r2))
    assert "involution" in report.kinds()
    assert any(p.startswith("involution: r0") for p in report.problems)


def test_validate_range_and_connectivity(cube):
    r0 = cube.r0.copy()
    r0[3] = cube.n
    assert validate(FlagSystem(r0, cube.r1, cube.r2)).kinds() == {"range"}
    two = FlagSystem(*(np.concatenate([ri, ri + cube.n]) for ri in cube.r))
    assert "connectivity" in validate(two).kinds()


def test_validate_square_condition(cube):
    # swapping r2 partners between two edges keeps involutions but breaks (r0 r2)^2
    r2 = cube.r2.copy()
    a, b = 0, int(cube.r1[0])
    ra, rb = int(r2[a]), int(r2[b])
    r2[a], r2[rb] = rb, a
    r2[b], r2[ra] = ra, b
    assert "square" in validate(FlagSystem(cube.r0, cube.r1, r2)).kinds()


def test_orbit_partition_cube(cube):
    assert len(orbit_partition(cube, VERTEX)) == 8
    faces = orbit_partition(cube, FACE)
    assert len(faces) == 6 and all(len(f) == 8 for f in faces)
    assert len(orbit_partition(cube, ())) == cube.n
    assert len(orbit_partition(cube, (0, 1, 2))) == 1
    for gens in [VERTEX, EDGE, FACE, (0,), (1,)]:
        assert len(orbit_partition(cube, gens)) == nx_orbit_count(cube, gens)


@pytest.mark.parametrize("name,expected", [
    ("cube", (8, 12, 6, 2, True, 0)),
    ("torus44(2,1)", (5, 10, 5, 0, True, 1)),
    ("hemicube", (4, 6, 3, 1, False, 1)),
    ("tetrahedron", (4, 6, 4, 2, True, 0)),
    ("icosahedron", (12, 30, 20, 2, True, 0)),
])
def test_surface_invariants(maps, name, expected):
    inv = surface_invariants(maps[name])
    assert (inv.V, inv.E, inv.F, inv.chi, inv.orientable, inv.genus) == expected


def test_orientability_agrees_with_networkx(maps):
    for fs in maps.values():
        g = nx.Graph((x, int(y)) for ri in fs.r for x, y in enumerate(ri))
        assert (bipartition(fs) is not None) == nx.is_bipartite(g)


def test_schlafli_types(maps):
    assert str(schlafli_type(maps["cube"])) == "{4,3}"
    ico = schlafli_type(maps["icosahedron"])
    assert (ico.p, ico.q) == (3, 5)
    st = schlafli_type(build_square_triangle())
    assert not st.uniform and str(st) == "NonUniform"


def test_builder_counts():
    assert build_platonic("cube").n == 48
    t = build_torus44(3, 0)
    assert t.n == 72 and surface_invariants(t).V == 9
    with pytest.raises(NonSimpleMapError):
        build_torus44(1, 0)
    with pytest.raises(NonSimpleMapError):
        build_torus44(1, 1)
    with pytest.raises(ValueError):
        build_platonic("hypercube")


def test_from_faces_rejects_open_surface():
    with pytest.raises(NonSimpleMapError):
        from_faces([[0, 1, 2]])


def test_hemicube_has_no_multi_edges():
    fs = build_hemicube()
    assert validate(fs).ok
    assert not surface_invariants(fs).orientable


def test_dual_and_relabel(cube):
    octa = cube.dual()
    assert str(schlafli_type(octa)) == "{3,4}"
    rng = np.random.default_rng(1)
    perm = rng.permutation(cube.n)
    moved = cube.relabel(perm)
    assert validate(moved).ok
    assert isomorphism(cube, 0, moved, int(perm[0])) == perm.tolist()


def test_cycle_of_sizes(cube):
    r = cube.lists
    assert len(cycle_of(r, 0, VERTEX)) == 6
    assert len(cycle_of(r, 0, EDGE)) == 4
    assert len(cycle_of(r, 0, FACE)) == 8


def test_fragment_boundary_and_interior():
    undefined = -1
    frag = MapFragment([1, 0, undefined], [2, undefined, 0], [undefined, undefined, undefined])
    assert frag.boundary == frozenset({0, 1, 2})
    assert frag.interior == frozenset()
    assert not frag.is_closed()
    with pytest.raises(ValueError):
        frag.to_flag_system()
