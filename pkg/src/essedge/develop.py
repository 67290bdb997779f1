"""
Bounded developing-map scan for a verified exact shape solution: place one
tetrahedron at (0, 1, oo, z), develop across face gluings by exact
cross-ratio, and look for edge lifts with coincident endpoints or pairs of
lifts of distinct edge classes sharing both endpoints.

Every tetrahedron with positive volume meets its neighbours only along
faces, so a parallel pair of edges forces a walk between the two lifts
through flat tetrahedra.  The scan therefore develops each connected
cluster of flat tetrahedra separately; when a cluster's development is
finite, or closes up under a detected parabolic translation, its
coincidence scan is complete and the report is conclusive for that
cluster.
"""
from .gaussian import (GaussianRational, INFINITY, Moebius, ONE, ZERO,
                       point, fourth_vertex, cross_ratio_shape,
                       moebius_between)
from .shapes import ShapeAssignment, verify_shapes, ShapeError
from .skeleton import build_skeleton
from .triangulation import TET_EDGES, FACE_VERTICES

# vertex orderings realising the three slot shapes as cross-ratios
_SLOT_ORDER = ((0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))


class DevelopedTet:
    __slots__ = ("tet", "positions", "depth", "path")

    def __init__(self, tet, positions, depth, path=()):
        self.tet = tet
        self.positions = tuple(positions)
        self.depth = depth
        # (tet, face) crossings from the base instance
        self.path = tuple(path)

    def key(self):
        return (self.tet, self.positions)

    def __repr__(self):
        return "DevelopedTet(%d, %s, depth %d)" % (self.tet, self.positions,
                                                   self.depth)


class ClusterScan:
    def __init__(self, tets, conclusive, reason, translation=None,
                 coincidences=(), instance_count=0):
        self.tets = tuple(sorted(tets))
        self.conclusive = conclusive
        self.reason = reason
        self.translation = translation
        self.coincidences = list(coincidences)
        self.instance_count = instance_count

    def __repr__(self):
        return "ClusterScan(tets=%s, conclusive=%s, %s)" % (
            self.tets, self.conclusive, self.reason)


class DevelopReport:
    def __init__(self, radius, instances, edge_endpoints_distinct,
                 coincident_edges, parallel_candidates, clusters):
        self.radius = radius
        self.instances = instances
        self.edge_endpoints_distinct = edge_endpoints_distinct
        self.coincident_edges = coincident_edges
        self.parallel_candidates = parallel_candidates
        self.clusters = clusters

    @property
    def conclusive_for_flat_clusters(self):
        return all(c.conclusive for c in self.clusters)

    def __repr__(self):
        return ("DevelopReport(radius %d, %d instances, coincident=%s, "
                "candidates=%s, conclusive_for_flat_clusters=%s)"
                % (self.radius, len(self.instances), self.coincident_edges,
                   self.parallel_candidates,
                   self.conclusive_for_flat_clusters))


class FloatPoint:
    """Projective point over floating complex numbers, with a rounded
    canonical key so near-equal positions deduplicate."""

    __slots__ = ("x", "y")

    def __init__(self, x, y=1.0):
        x, y = complex(x), complex(y)
        if abs(y) >= 1e-12 and (abs(x) <= 1.0 or abs(x / y) < 1e12):
            x, y = x / y, 1.0
        else:
            x, y = 1.0, 0.0
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("FloatPoint is immutable")

    @property
    def is_infinity(self):
        return self.y == 0

    def __eq__(self, other):
        if not isinstance(other, FloatPoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return abs(self.x - other.x) <= 1e-9 * max(1.0, abs(self.x),
                                                   abs(other.x))

    def __hash__(self):
        if self.is_infinity:
            return hash("inf")
        return hash((round(self.x.real, 6), round(self.x.imag, 6)))

    def __repr__(self):
        return "oo" if self.is_infinity else "%.6g%+.6gj" % (self.x.real,
                                                             self.x.imag)


def _float_fourth_vertex(slot_positions, z):
    k = next(i for i, p in enumerate(slot_positions) if p is None)

    def eval_with(x, y):
        coords = [(p.x, p.y) if p is not None else (complex(x), complex(y))
                  for p in slot_positions]

        def det(i, j):
            return coords[i][0] * coords[j][1] - coords[j][0] * coords[i][1]

        return det(2, 0) * det(3, 1) - complex(z) * det(2, 1) * det(3, 0)

    alpha = eval_with(1.0, 0.0)
    beta = eval_with(0.0, 1.0)
    return FloatPoint(-beta, alpha)


def _develop_across(tri, shapes, inst, face):
    """The developed neighbour of an instance through one of its faces."""
    other, sigma = tri.gluing(inst.tet, face)
    positions = [None] * 4
    for v in FACE_VERTICES[face]:
        positions[sigma(v)] = inst.positions[v]
    missing = sigma(face)
    slot_positions = [positions[v] for v in _SLOT_ORDER[0]]
    # solve the slot-0 cross-ratio relation for the missing vertex
    idx = _SLOT_ORDER[0].index(missing)
    slot_positions[idx] = None
    z = shapes.shapes[other]
    if shapes.exact:
        positions[missing] = fourth_vertex(slot_positions, z)
    else:
        positions[missing] = _float_fourth_vertex(slot_positions, z)
    return DevelopedTet(other, positions, inst.depth + 1,
                        inst.path + ((inst.tet, face),))


def _base_instance(tet, z):
    # vertices 0, 1, 2 at 0, 1, oo; the cross-ratio convention then places
    # vertex 3 at 1/(1-z) so that the {01} edge carries the shape z
    if isinstance(z, GaussianRational):
        return DevelopedTet(tet, (point(0), point(1), INFINITY,
                                  point(ONE / (ONE - z))), 0)
    z = complex(z)
    return DevelopedTet(tet, (FloatPoint(0.0), FloatPoint(1.0),
                              FloatPoint(1.0, 0.0),
                              FloatPoint(1.0 / (1.0 - z))), 0)


def _edge_lifts(skeleton, inst):
    """(edge class, endpoint pair) for the six edges of an instance."""
    out = []
    for a, b in TET_EDGES:
        cls = skeleton.edge_lookup[(inst.tet, a, b)][0]
        out.append((cls, inst.positions[a], inst.positions[b]))
    return out


def _check_cross_ratios(shapes, inst):
    if not shapes.exact:
        return
    for slot in range(3):
        order = _SLOT_ORDER[slot]
        got = cross_ratio_shape(*(inst.positions[v] for v in order))
        if got != shapes.slot_value(inst.tet, slot):
            raise ShapeError(
                "developed cross-ratio mismatch on tetrahedron %d slot %d"
                % (inst.tet, slot))


def develop_and_scan(tri_or_skeleton, shapes, radius=3, cluster_cap=200):
    """
    Exact developing scan to the given combinatorial radius plus a
    per-cluster scan of the flat subcomplex.  Requires an exact shape
    assignment passing verify_shapes.
    """
    skeleton = build_skeleton(tri_or_skeleton) if not hasattr(
        tri_or_skeleton, "edge_classes") else tri_or_skeleton
    tri = skeleton.triangulation
    if not isinstance(shapes, ShapeAssignment):
        shapes = ShapeAssignment(shapes)
    report = verify_shapes(skeleton, shapes)
    if not report.passed:
        raise ShapeError("shape assignment fails the edge equations")
    if not shapes.exact and shapes.flat_set():
        raise ShapeError("flat tetrahedra need exact shapes for the "
                         "cluster scan")

    # global breadth-first development
    base = _base_instance(0, shapes.shapes[0])
    _check_cross_ratios(shapes, base)
    seen = {base.key(): base}
    frontier = [base]
    for _ in range(radius):
        nxt = []
        for inst in frontier:
            for face in range(4):
                if tri.gluing(inst.tet, face) is None:
                    continue
                new = _develop_across(tri, shapes, inst, face)
                if new.key() not in seen:
                    _check_cross_ratios(shapes, new)
                    seen[new.key()] = new
                    nxt.append(new)
        frontier = nxt
    instances = list(seen.values())

    edge_distinct = {}
    coincident = []
    lift_index = {}
    candidates = {}
    for inst in instances:
        for cls, p, q in _edge_lifts(skeleton, inst):
            if p == q:
                if cls not in [c[0] for c in coincident]:
                    coincident.append((cls, p))
                edge_distinct[cls] = False
            else:
                edge_distinct.setdefault(cls, True)
                # record lifts by endpoint pair; a pair seen under two
                # distinct classes is a parallel candidate, reported with
                # the development paths connecting the base to both lifts
                hit = lift_index.setdefault(frozenset((p, q)), {})
                for other_cls, other_path in hit.items():
                    if other_cls != cls:
                        key = tuple(sorted((cls, other_cls))) + (p, q)
                        candidates.setdefault(
                            key, {"classes": tuple(sorted((cls, other_cls))),
                                  "endpoints": (p, q),
                                  "paths": (other_path, inst.path)})
                hit.setdefault(cls, inst.path)
    candidates = [candidates[k] for k in sorted(candidates, key=repr)]

    clusters = [_scan_cluster(tri, skeleton, shapes, cluster, cluster_cap)
                for cluster in _flat_clusters(tri, shapes)]
    return DevelopReport(radius, instances, edge_distinct, coincident,
                         candidates, clusters)


def _flat_clusters(tri, shapes):
    flat = set(shapes.flat_set())
    clusters = []
    remaining = set(flat)
    while remaining:
        start = min(remaining)
        comp = {start}
        queue = [start]
        while queue:
            t = queue.pop()
            for f in range(4):
                entry = tri.gluing(t, f)
                if entry and entry[0] in flat and entry[0] not in comp:
                    comp.add(entry[0])
                    queue.append(entry[0])
        clusters.append(sorted(comp))
        remaining -= comp
    return clusters


def _intra_faces(tri, cluster, t):
    flat = set(cluster)
    return [f for f in range(4)
            if tri.gluing(t, f) is not None and tri.gluing(t, f)[0] in flat]


def _scan_cluster(tri, skeleton, shapes, cluster, cap):
    """
    Develop one flat cluster.  Finite developments are fully scanned; a
    linear cluster (every member with exactly two intra-cluster gluings)
    whose development repeats under a parabolic translation is scanned
    exactly up to that translation; anything else is inconclusive.
    """
    base_tet = cluster[0]
    base = _base_instance(base_tet, shapes.shapes[base_tet])
    seen = {base.key(): base}
    order = [base]
    frontier = [base]
    finite = False
    while frontier and len(seen) <= cap:
        nxt = []
        for inst in frontier:
            for face in _intra_faces(tri, cluster, inst.tet):
                new = _develop_across(tri, shapes, inst, face)
                if new.key() not in seen:
                    seen[new.key()] = new
                    order.append(new)
                    nxt.append(new)
        frontier = nxt
        if not frontier:
            finite = True
    if finite:
        pairs = _coincidences_among(skeleton, order)
        return ClusterScan(cluster, True, "finite development",
                           coincidences=pairs, instance_count=len(order))
    if any(len(_intra_faces(tri, cluster, t)) != 2 for t in cluster):
        return ClusterScan(cluster, False,
                           "development cap %d exceeded (branching cluster)"
                           % cap, instance_count=len(seen))
    return _scan_linear_cluster(tri, skeleton, shapes, cluster, cap)


def _scan_linear_cluster(tri, skeleton, shapes, cluster, cap):
    base_tet = cluster[0]
    base = _base_instance(base_tet, shapes.shapes[base_tet])
    line = [base]
    prev_key = None
    inst = base
    translation = None
    while len(line) <= cap:
        faces = _intra_faces(tri, cluster, inst.tet)
        moved = None
        for face in faces:
            new = _develop_across(tri, shapes, inst, face)
            if new.key() != prev_key:
                moved = new
                break
        if moved is None:
            break
        if moved.tet == base_tet:
            g = moebius_between(base.positions, moved.positions)
            if g is not None and not g.is_identity():
                translation = g
                break
        prev_key = inst.key()
        line.append(moved)
        inst = moved
    if translation is None:
        return ClusterScan(cluster, False,
                           "no period found within %d steps" % cap,
                           instance_count=len(line))
    if not translation.is_parabolic():
        return ClusterScan(cluster, False,
                           "period map is not parabolic",
                           translation=translation,
                           instance_count=len(line))
    pairs = _periodic_coincidences(skeleton, line, translation)
    return ClusterScan(cluster, True,
                       "closes up under a parabolic translation",
                       translation=translation, coincidences=pairs,
                       instance_count=len(line))


def _coincidences_among(skeleton, instances):
    lifts = {}
    pairs = set()
    for inst in instances:
        for cls, p, q in _edge_lifts(skeleton, inst):
            if p == q:
                pairs.add((cls, cls))
                continue
            key = frozenset((p, q))
            for other in lifts.get(key, ()):
                if other != cls:
                    pairs.add(tuple(sorted((cls, other))))
            lifts.setdefault(key, set()).add(cls)
    return sorted(pairs)


def _translation_constant(translation):
    """Conjugate a parabolic map to z -> z + c and return (W, c)."""
    q = translation.parabolic_fixed_point()
    if q.is_infinity:
        w = Moebius(1, 0, 0, 1)
    else:
        w = Moebius(0, 1, 1, -q.value())
    h = w.compose(translation).compose(w.inverse())
    if h.c != ZERO or h.a != h.d:
        raise ValueError("conjugation did not produce a translation")
    return w, h.b / h.a


def _periodic_coincidences(skeleton, core, translation):
    """
    Coincidences among edge lifts of the full line development, which is
    the union of translation^k applied to the core instances.  In the
    coordinate where the translation is z -> z + c, two lifts coincide in
    some translate exactly when their endpoint pairs differ by an integer
    multiple of c.
    """
    w, c = _translation_constant(translation)

    def coord(p):
        img = w(p)
        return None if img.is_infinity else img.value()

    lifts = []
    for inst in core:
        for cls, p, q in _edge_lifts(skeleton, inst):
            lifts.append((cls, coord(p), coord(q)))

    def integer_shift(u, v):
        """k with u = v + k c, or None (None coordinates mean infinity,
        which the translation fixes)."""
        if u is None or v is None:
            return 0 if u is None and v is None else None
        k = (u - v) / c
        if k.im != 0 or k.re.denominator != 1:
            return None
        return int(k.re)

    pairs = set()
    for i, (c1, p1, q1) in enumerate(lifts):
        if p1 == q1:
            pairs.add((c1, c1))
        for c2, p2, q2 in lifts[i + 1:]:
            if c1 == c2:
                continue
            for (u1, u2), (v1, v2) in (((p1, q1), (p2, q2)),
                                       ((p1, q1), (q2, p2))):
                k1 = integer_shift(u1, v1)
                k2 = integer_shift(u2, v2)
                if k1 is not None and k1 == k2:
                    pairs.add(tuple(sorted((c1, c2))))
    return sorted(pairs)
