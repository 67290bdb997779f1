import importlib.resources as resources

import pytest

from essedge import parse_triangulation, build_skeleton
from essedge.snf import homology_invariants


def fixture_text(name):
    return (resources.files("essedge") / "fixtures" / name).read_text()


@pytest.fixture(scope="session")
def m136():
    return parse_triangulation(fixture_text("m136.tri"))


@pytest.fixture(scope="session")
def fig8():
    return parse_triangulation(fixture_text("fig8.tri"))


@pytest.fixture(scope="session")
def q8():
    return parse_triangulation(fixture_text("q8.tri"))


@pytest.fixture(scope="session")
def m136_skeleton(m136):
    return build_skeleton(m136)


@pytest.fixture(scope="session")
def fig8_skeleton(fig8):
    return build_skeleton(fig8)


@pytest.fixture(scope="session")
def q8_skeleton(q8):
    return build_skeleton(q8)


@pytest.fixture(scope="session")
def m136_shapes():
    from essedge.shapes import parse_shapes
    return parse_shapes(fixture_text("m136_shapes.txt"))


def primal_h1(skeleton):
    """H1 of the pseudo-manifold from its CW chain complex: vertices,
    edge classes, face classes.  Independent of any group presentation."""
    n0 = skeleton.vertex_count
    n1 = skeleton.edge_count
    d1 = [[0] * n1 for _ in range(n0)]
    for e in skeleton.edge_classes:
        t, (a, b) = e.corners[0]
        d1[skeleton.vertex_of[(t, b)]][e.index] += 1
        d1[skeleton.vertex_of[(t, a)]][e.index] -= 1
    n2 = skeleton.face_count
    d2 = [[0] * n2 for _ in range(n1)]
    for fc in skeleton.face_classes:
        t, f = fc.representatives[0]
        x, y, z = sorted(v for v in range(4) if v != f)
        for u, v in ((x, y), (y, z), (z, x)):
            e, sign = skeleton.edge_lookup[(t, u, v)]
            d2[e][fc.index] += sign
    return homology_invariants(d1, d2, n1)


def dual_h1(skeleton):
    """H1 of the compact core from the dual CW structure: tetrahedra,
    face classes, edge classes."""
    n0 = skeleton.triangulation.tet_count
    n1 = skeleton.face_count
    d1 = [[0] * n1 for _ in range(n0)]
    for fc in skeleton.face_classes:
        (t1, _), (t2, _) = fc.representatives
        d1[t2][fc.index] += 1
        d1[t1][fc.index] -= 1
    n2 = skeleton.edge_count
    d2 = [[0] * n2 for _ in range(n1)]
    for e in skeleton.edge_classes:
        for i in range(e.degree):
            t, _ = e.corners[i]
            c, slot = skeleton.face_lookup[(t, e.pivots[i])]
            d2[c][e.index] += 1 if slot == 0 else -1
    return homology_invariants(d1, d2, n1)
