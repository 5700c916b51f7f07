import itertools

import pytest

from flagmaps import FlagSystem, build_platonic, build_torus44, corpus

# lines reported by the acceptance suite, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def maps():
    return corpus()


@pytest.fixture(scope="session")
def cube():
    return build_platonic("cube")


@pytest.fixture(scope="session")
def torus21():
    return build_torus44(2, 1)


def cube_from_coordinates() -> FlagSystem:
    """Cube flags as explicit (vertex, edge, face) triples, built without the
    face-cycle constructor."""
    verts = list(itertools.product((0, 1), repeat=3))
    edges = [frozenset((u, v)) for u, v in itertools.combinations(verts, 2)
             if sum(a != b for a, b in zip(u, v)) == 1]
    faces = [frozenset(v for v in verts if v[axis] == side) for axis in range(3) for side in (0, 1)]
    flags = [(v, e, f) for f in faces for e in edges if e <= f for v in e]
    index = {flag: k for k, flag in enumerate(flags)}

    def swap(k, x):
        v, e, f = x
        if k == 0:
            (w,) = e - {v}
            return index[(w, e, f)]
        if k == 1:
            (e2,) = [d for d in edges if d <= f and v in d and d != e]
            return index[(v, e2, f)]
        (f2,) = [g for g in faces if e <= g and g != f]
        return index[(v, e, f2)]

    return FlagSystem(*([swap(k, x) for x in flags] for k in range(3)))
