"""
Quotient skeleton of a triangulation: edge classes, face classes, vertex
links, and the pseudo-manifold classification.
"""
from .triangulation import FACE_VERTICES, TET_EDGES


class EdgeClass:
    """
    An equivalence class of tetrahedron edges.

    corners is the cyclic sequence of (tet, (a, b)) incidences around the
    edge, directions coherent with a chosen orientation of the class; for a
    boundary edge it is an arc rather than a cycle.  pivots[i] is the face
    of corners[i]'s tetrahedron crossed to reach corners[i+1] (cyclically
    for a closed edge, so pivots has length degree; length degree-1 for a
    boundary edge).
    """

    def __init__(self, index, corners, pivots, closed=True):
        self.index = index
        self.corners = tuple((t, (a, b)) for t, (a, b) in corners)
        self.pivots = tuple(pivots)
        self.closed = closed

    @property
    def degree(self):
        return len(self.corners)

    def __repr__(self):
        inside = ", ".join("%d (%d%d)" % (t, a, b) for t, (a, b) in self.corners)
        return "EdgeClass(%d, deg %d: %s)" % (self.index, self.degree, inside)


def _cycle_variants(corners):
    n = len(corners)
    flipped = tuple((t, (b, a)) for t, (a, b) in corners)
    seqs = [corners, tuple(reversed(corners)),
            flipped, tuple(reversed(flipped))]
    variants = []
    for seq in seqs:
        for r in range(n):
            variants.append(seq[r:] + seq[:r])
    return variants


def cycles_match(corners1, corners2):
    """Equality of edge cycles up to rotation, reversal and orientation."""
    return tuple(corners2) in set(_cycle_variants(tuple(corners1)))


def _edge_variants(tri, corners, pivots):
    """All (corners, pivots) representations of a closed edge cycle:
    rotations, traversal reversal and orientation flip."""
    n = len(corners)
    entries = []
    for i in range(n):
        t, _ = corners[i]
        other, sigma = tri.gluing(t, pivots[i])
        entries.append(sigma(pivots[i]))
    # entry face of corner i (face crossed arriving there)
    entry = [entries[(i - 1) % n] for i in range(n)]
    rev_corners = tuple(corners[(n - j) % n] for j in range(n))
    rev_pivots = tuple(entry[(n - j) % n] for j in range(n))
    base = [(tuple(corners), tuple(pivots)), (rev_corners, rev_pivots)]
    variants = []
    for cs, ps in base:
        flipped = tuple((t, (b, a)) for t, (a, b) in cs)
        for seq_c, seq_p in ((cs, ps), (flipped, ps)):
            for r in range(n):
                variants.append((seq_c[r:] + seq_c[:r],
                                 seq_p[r:] + seq_p[:r]))
    return variants


class FaceClass:
    """A pair of (tet, face) slots identified by a gluing (one slot on the
    boundary)."""

    def __init__(self, index, representatives):
        self.index = index
        self.representatives = tuple(representatives)

    def __repr__(self):
        return "FaceClass(%d, %s)" % (self.index, list(self.representatives))


class VertexLink:
    """The surface of corner triangles around a vertex class."""

    def __init__(self, index, structure, euler_characteristic, orientable,
                 surface_kind, has_boundary):
        self.index = index
        self.structure = structure
        self.euler_characteristic = euler_characteristic
        self.orientable = orientable
        self.surface_kind = surface_kind
        self.has_boundary = has_boundary

    @property
    def triangle_count(self):
        return len(self.structure.triangles)

    def __repr__(self):
        return "VertexLink(%d, %s, chi=%d)" % (
            self.index, self.surface_kind, self.euler_characteristic)


class LinkStructure:
    """
    Combinatorics of one vertex link.

    triangles: sorted list of corner triangles (tet, vertex).
    side_gluing: ((tet, vertex), side_face) -> ((tet', vertex'), side', sigma)
    for every glued side, where sigma is the tetrahedron gluing permutation.
    orient: triangle -> +-1 when the link is orientable (coherent triangle
    orientations relative to the sorted corner ordering).
    """

    def __init__(self, triangles, side_gluing, orient):
        self.triangles = triangles
        self.side_gluing = side_gluing
        self.orient = orient


class SkeletonSummary:
    def __init__(self, tri, vertex_count, edge_classes, face_classes,
                 vertex_links, classification, edge_lookup, face_lookup,
                 vertex_of):
        self.triangulation = tri
        self.vertex_count = vertex_count
        self.edge_classes = edge_classes
        self.face_classes = face_classes
        self.vertex_links = vertex_links
        self.classification = classification
        # (tet, a, b) -> (edge class index, +1 if (a,b) follows the class
        # orientation, else -1)
        self.edge_lookup = edge_lookup
        # (tet, face) -> (face class index, slot 0 or 1)
        self.face_lookup = face_lookup
        # (tet, vertex) -> vertex class index
        self.vertex_of = vertex_of

    @property
    def edge_count(self):
        return len(self.edge_classes)

    @property
    def face_count(self):
        return len(self.face_classes)

    def euler_characteristic(self):
        """V - E + F - T of the pseudo-manifold."""
        return (self.vertex_count - self.edge_count + self.face_count
                - self.triangulation.tet_count)

    def edge_class_of(self, tet, a, b):
        return self.edge_lookup[(tet, a, b)][0]

    def degrees(self):
        return tuple(e.degree for e in self.edge_classes)

    def __repr__(self):
        return ("SkeletonSummary(%d vertices, %d edges %s, %d faces, %s)"
                % (self.vertex_count, self.edge_count, self.degrees(),
                   self.face_count, self.classification))


class SkeletonError(ValueError):
    pass


def _trace_edge(tri, t0, a0, b0):
    """
    Walk the corner cycle of the edge through (t0, a0->b0).

    Returns (corners, pivots, closed).  Raises SkeletonError if the walk
    identifies the edge with itself reversing orientation (not a
    pseudo-manifold).
    """
    others = [v for v in range(4) if v not in (a0, b0)]
    seen = set()

    def walk(t, a, b, pivot):
        corners, pivots = [], []
        while True:
            if (t, a, b) in seen:
                return corners, pivots, True
            if (t, b, a) in seen:
                raise SkeletonError(
                    "edge through (%d, %d%d) is identified with itself "
                    "reversing orientation" % (t, a, b))
            seen.add((t, a, b))
            corners.append((t, (a, b)))
            entry = tri.gluing(t, pivot)
            if entry is None:
                return corners, pivots, False
            pivots.append(pivot)
            other, sigma = entry
            na, nb = sigma(a), sigma(b)
            came_in = sigma(pivot)
            next_pivot = [v for v in range(4) if v not in (na, nb, came_in)][0]
            t, a, b, pivot = other, na, nb, next_pivot

    first, first_pivots, closed = walk(t0, a0, b0, others[0])
    if closed:
        return first, first_pivots, True
    # boundary edge: walk the other way and prepend; the combined forward
    # pivots along the prepended part are the entry faces of the back walk
    seen.discard((t0, a0, b0))
    back, back_pivots, closed2 = walk(t0, a0, b0, others[1])
    if closed2:
        raise SkeletonError("inconsistent edge trace at (%d, %d%d)"
                            % (t0, a0, b0))
    tail = [(t, (b, a)) for t, (a, b) in reversed(back[1:])]
    tail_pivots = []
    for j in range(len(back_pivots) - 1, -1, -1):
        t, _ = back[j]
        _, sigma = tri.gluing(t, back_pivots[j])
        tail_pivots.append(sigma(back_pivots[j]))
    return tail + first, tail_pivots + first_pivots, False


def _canonical_cycle(tri, corners, pivots, closed):
    if closed:
        return min(_edge_variants(tri, corners, pivots))
    fwd = (tuple(corners), tuple(pivots))
    # reversed arc: pivots become entry faces, read backwards
    entries = []
    for i, p in enumerate(pivots):
        t, _ = corners[i]
        _, sigma = tri.gluing(t, p)
        entries.append(sigma(p))
    rev_plain = (tuple(reversed(corners)), tuple(reversed(entries)))
    variants = [fwd, rev_plain]
    for cs, ps in (fwd, rev_plain):
        variants.append((tuple((t, (b, a)) for t, (a, b) in cs), ps))
    return min(variants)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _link_side_direction(sorted_corners, flag, side):
    """Direction induced on an unordered side {x, y} by the triangle
    orientation: boundary order of (w1, w2, w3) is w1->w2->w3->w1."""
    w1, w2, w3 = sorted_corners
    boundary = [(w1, w2), (w2, w3), (w3, w1)]
    if flag < 0:
        boundary = [(q, p) for p, q in boundary]
    for p, q in boundary:
        if {p, q} == set(side):
            return (p, q)
    raise ValueError("side %r not in triangle %r" % (side, sorted_corners))


def build_skeleton(tri):
    """
    Compute the full quotient skeleton of a triangulation.

    Mutual-inverse or self-identification violations raise SkeletonError;
    unglued faces are allowed (boundary mode) and produce boundary edge
    classes and links with boundary.
    """
    report = tri.validate()
    hard = [v for v in report.violations if v[0] != "unglued"]
    if hard:
        raise SkeletonError("invalid triangulation: " + "; ".join(
            v[3] for v in hard))
    n = tri.tet_count

    # --- edge classes by orbit tracing ---
    edge_classes = []
    edge_lookup = {}
    traced = set()
    for t in range(n):
        for a, b in TET_EDGES:
            if (t, a, b) in traced or (t, b, a) in traced:
                continue
            corners, pivots, closed = _trace_edge(tri, t, a, b)
            corners, pivots = _canonical_cycle(tri, corners, pivots, closed)
            index = len(edge_classes)
            edge_classes.append(EdgeClass(index, corners, pivots, closed))
            for tt, (aa, bb) in corners:
                traced.add((tt, aa, bb))
                edge_lookup[(tt, aa, bb)] = (index, 1)
                edge_lookup[(tt, bb, aa)] = (index, -1)

    # --- face classes ---
    face_classes = []
    face_lookup = {}
    for t in range(n):
        for f in range(4):
            if (t, f) in face_lookup:
                continue
            entry = tri.gluing(t, f)
            if entry is None:
                reps = [(t, f)]
            else:
                other, sigma = entry
                reps = sorted([(t, f), (other, sigma(f))])
            index = len(face_classes)
            face_classes.append(FaceClass(index, reps))
            for slot, rep in enumerate(reps):
                face_lookup[rep] = (index, slot)

    # --- vertex classes ---
    uf = _UnionFind([(t, v) for t in range(n) for v in range(4)])
    for t in range(n):
        for f in range(4):
            entry = tri.gluing(t, f)
            if entry is None:
                continue
            other, sigma = entry
            for v in FACE_VERTICES[f]:
                uf.union((t, v), (other, sigma(v)))
    roots = sorted({uf.find((t, v)) for t in range(n) for v in range(4)})
    vertex_of = {}
    for t in range(n):
        for v in range(4):
            vertex_of[(t, v)] = roots.index(uf.find((t, v)))

    # --- vertex links ---
    vertex_links = []
    for vi, root in enumerate(roots):
        triangles = sorted(tv for tv in vertex_of if vertex_of[tv] == vi)
        side_gluing = {}
        boundary_sides = 0
        for (t, v) in triangles:
            for f in range(4):
                if f == v:
                    continue
                entry = tri.gluing(t, f)
                if entry is None:
                    boundary_sides += 1
                    continue
                other, sigma = entry
                side_gluing[((t, v), f)] = ((other, sigma(v)), sigma(f), sigma)

        # link vertices: classes of edge ends (tet, v, w)
        ends = [(t, v, w) for (t, v) in triangles for w in range(4) if w != v]
        uf_ends = _UnionFind(ends)
        for ((t, v), f), ((t2, v2), f2, sigma) in side_gluing.items():
            for w in range(4):
                if w != v and w != f:
                    uf_ends.union((t, v, w), (t2, v2, sigma(w)))
        link_v = len({uf_ends.find(e) for e in ends})
        link_f = len(triangles)
        link_e = (3 * link_f + boundary_sides) // 2
        chi = link_v - link_e + link_f

        orient = _orient_link(triangles, side_gluing)
        orientable = orient is not None
        has_boundary = boundary_sides > 0
        if has_boundary:
            kind = "other"
        elif chi == 2:
            kind = "sphere"
        elif chi == 0 and orientable:
            kind = "torus"
        elif chi == 0:
            kind = "klein_bottle"
        else:
            kind = "other"
        structure = LinkStructure(triangles, side_gluing, orient)
        vertex_links.append(VertexLink(vi, structure, chi, orientable, kind,
                                       has_boundary))

    # --- classification ---
    kinds = {link.surface_kind for link in vertex_links}
    if not tri.is_closed() or n == 0:
        classification = "pseudo_manifold_other"
    elif kinds == {"sphere"} and len(vertex_links) == 1:
        classification = "closed_manifold_1vertex"
    elif kinds <= {"torus", "klein_bottle"}:
        classification = "ideal_all_torus_or_klein"
    else:
        classification = "pseudo_manifold_other"

    return SkeletonSummary(tri, len(vertex_links), edge_classes, face_classes,
                           vertex_links, classification, edge_lookup,
                           face_lookup, vertex_of)


def _orient_link(triangles, side_gluing):
    """BFS-assign coherent orientations to link triangles; None when the
    link is non-orientable."""
    orient = {}
    for start in triangles:
        if start in orient:
            continue
        orient[start] = 1
        queue = [start]
        while queue:
            tv = queue.pop()
            t, v = tv
            corners = sorted(w for w in range(4) if w != v)
            for f in range(4):
                if f == v or (tv, f) not in side_gluing:
                    continue
                tv2, f2, sigma = side_gluing[(tv, f)]
                side = [w for w in corners if w != f]
                p, q = _link_side_direction(corners, orient[tv], side)
                corners2 = sorted(w for w in range(4) if w != tv2[1])
                side2 = [sigma(w) for w in side]
                # (p, q) already carries this triangle's flag; the neighbour
                # is coherent iff it induces the opposite direction
                p2, q2 = _link_side_direction(corners2, 1, side2)
                needed = 1 if (p2, q2) == (sigma(q), sigma(p)) else -1
                if tv2 in orient:
                    if orient[tv2] != needed:
                        return None
                else:
                    orient[tv2] = needed
                    queue.append(tv2)
    return orient
