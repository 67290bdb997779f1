"""
Fundamental group data extracted from triangulations.

Two presentations are provided: the edge-generator presentation of a
closed 1-vertex triangulation (generators are oriented edge classes, one
relator per face class), and the dual-spine presentation (generators are
face classes with a spanning tree of the dual graph collapsed, one relator
per edge class).

On the spine side, loops are recorded by their face-crossing words.  A
path on a vertex link crossing from one corner triangle to an adjacent one
crosses the corresponding face of the triangulation, so paths on the
boundary tori, peripheral generators, and the loops needed for the
essential / parallel edge tests are all words in the same generators.
"""
from .presentation import Presentation, free_reduce, inverse_word, concat
from .skeleton import build_skeleton
from .snf import abelian_invariants


def _as_skeleton(obj):
    if hasattr(obj, "edge_classes"):
        return obj
    return build_skeleton(obj)


def presentation_closed(tri_or_skeleton):
    """
    Edge-generator presentation of pi_1 for a closed triangulation with one
    vertex: generator i is edge class i with its stored orientation; each
    face class contributes the relator reading its three boundary edges.
    """
    skeleton = _as_skeleton(tri_or_skeleton)
    tri = skeleton.triangulation
    if not tri.is_closed():
        raise ValueError("triangulation has unglued faces")
    if skeleton.vertex_count != 1:
        raise ValueError("need exactly one vertex, found %d"
                         % skeleton.vertex_count)
    relators = []
    for fc in skeleton.face_classes:
        t, f = fc.representatives[0]
        x, y, z = sorted(v for v in range(4) if v != f)
        word = []
        for u, v in ((x, y), (y, z), (z, x)):
            e, sign = skeleton.edge_lookup[(t, u, v)]
            word.append(sign * (e + 1))
        relators.append(free_reduce(word))
    labels = {"generators": [e.index for e in skeleton.edge_classes],
              "relators": [fc.index for fc in skeleton.face_classes]}
    return Presentation(len(skeleton.edge_classes), relators, labels)


class LinkTree:
    """Spanning tree of a vertex link's corner-triangle adjacency graph,
    rooted at the lexicographically least triangle."""

    def __init__(self, structure):
        self.structure = structure
        self.basepoint = min(structure.triangles)
        self.parent = {self.basepoint: None}
        self.tree_sides = set()
        order = [self.basepoint]
        i = 0
        while i < len(order):
            tv = order[i]
            i += 1
            for f in sorted(x for x in range(4) if x != tv[1]):
                key = (tv, f)
                if key not in structure.side_gluing:
                    continue
                tv2, f2, _ = structure.side_gluing[key]
                if tv2 not in self.parent:
                    self.parent[tv2] = (tv, f)
                    self.tree_sides.add(frozenset([key, (tv2, f2)]))
                    order.append(tv2)
        self.order = order

    def path_crossings(self, tv):
        """Crossings (triangle, out_side) from the basepoint to tv."""
        steps = []
        while self.parent[tv] is not None:
            steps.append(self.parent[tv])
            tv = self.parent[tv][0]
        return list(reversed(steps))

    def cotree_sides(self):
        """Glued sides not in the tree, one frozenset per side, sorted by
        their lex-least slot."""
        seen = set()
        out = []
        for key in sorted(self.structure.side_gluing):
            tv2, f2, _ = self.structure.side_gluing[key]
            side = frozenset([key, (tv2, f2)])
            if side in seen or side in self.tree_sides:
                continue
            seen.add(side)
            out.append(side)
        return out


class PeripheralSystem:
    """The two chosen peripheral generators of a torus link: their words in
    the spine presentation and the underlying crossing cycles."""

    def __init__(self, vertex, basepoint, words, curves):
        self.vertex = vertex
        self.basepoint = basepoint
        self.words = words
        self.curves = curves


class SpineData:
    """
    Dual-spine presentation of a closed (possibly ideal) triangulation,
    with the bookkeeping needed to express boundary paths as words.
    """

    def __init__(self, tri_or_skeleton):
        skeleton = _as_skeleton(tri_or_skeleton)
        tri = skeleton.triangulation
        if not tri.is_closed():
            raise ValueError("triangulation has unglued faces")
        self.skeleton = skeleton
        self.tri = tri

        # spanning tree of the dual graph, face classes in index order
        parent = list(range(tri.tet_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        self.tree_faces = set()
        for fc in skeleton.face_classes:
            (t1, _), (t2, _) = fc.representatives
            r1, r2 = find(t1), find(t2)
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
                self.tree_faces.add(fc.index)
        self.gen_of_face = {}
        for fc in skeleton.face_classes:
            if fc.index not in self.tree_faces:
                self.gen_of_face[fc.index] = len(self.gen_of_face)
        self.generator_count = len(self.gen_of_face)

        relators = []
        for e in skeleton.edge_classes:
            word = []
            for i in range(e.degree):
                t, _ = e.corners[i]
                letter = self.crossing_letter(t, e.pivots[i])
                if letter:
                    word.append(letter)
            relators.append(free_reduce(word))
        labels = {"generators": sorted(self.gen_of_face,
                                       key=self.gen_of_face.get),
                  "relators": [e.index for e in skeleton.edge_classes]}
        self.presentation = Presentation(self.generator_count, relators,
                                         labels)
        self._link_trees = {}
        self._peripheral = {}

    def crossing_letter(self, t, f):
        """Signed generator for crossing out of tetrahedron t through face
        (t, f); 0 for a spanning-tree face."""
        c, slot = self.skeleton.face_lookup[(t, f)]
        if c in self.tree_faces:
            return 0
        g = self.gen_of_face[c] + 1
        return g if slot == 0 else -g

    def crossing_word(self, crossings):
        return free_reduce([x for x in (self.crossing_letter(t, f)
                                        for (t, _v), f in crossings) if x])

    def link_tree(self, vertex):
        if vertex not in self._link_trees:
            structure = self.skeleton.vertex_links[vertex].structure
            self._link_trees[vertex] = LinkTree(structure)
        return self._link_trees[vertex]

    def path_word(self, vertex, tv):
        """Word of the link-tree path from the link basepoint to triangle
        tv on the link of the given vertex class."""
        return self.crossing_word(self.link_tree(vertex).path_crossings(tv))

    # ---- peripheral generators ----

    def peripheral(self, vertex):
        if vertex not in self._peripheral:
            self._peripheral[vertex] = self._build_peripheral(vertex)
        return self._peripheral[vertex]

    def _build_peripheral(self, vertex):
        link = self.skeleton.vertex_links[vertex]
        if link.surface_kind != "torus":
            raise ValueError("vertex %d link is a %s, not a torus"
                             % (vertex, link.surface_kind))
        tree = self.link_tree(vertex)
        structure = link.structure
        cotree = tree.cotree_sides()
        cindex = {side: k for k, side in enumerate(cotree)}

        def slot_pair(side):
            a, b = sorted(side)
            return a, b

        # corner rotation loops give the relations among cotree cycles
        rows = []
        ends = sorted({(t, v, w) for (t, v) in structure.triangles
                       for w in range(4) if w != v})
        visited = set()
        for start in ends:
            if start in visited:
                continue
            row = [0] * len(cotree)
            t, v, w = start
            sides = [f for f in range(4) if f not in (v, w)]
            out = min(sides)
            cur = (t, v, w, out)
            while True:
                t, v, w, out = cur
                visited.add((t, v, w))
                key = ((t, v), out)
                tv2, f2, sigma = structure.side_gluing[key]
                side = frozenset([key, (tv2, f2)])
                if side in cindex:
                    lo, _hi = slot_pair(side)
                    row[cindex[side]] += 1 if key == lo else -1
                w2 = sigma(w)
                t2, v2 = tv2
                out2 = [f for f in range(4) if f not in (v2, w2, f2)][0]
                cur = (t2, v2, w2, out2)
                if (cur[0], cur[1], cur[2]) == start and cur[3] == min(
                        f for f in range(4) if f not in (start[1], start[2])):
                    break
            rows.append(row)

        # pick the lex-least pair of cotree cycles generating H1 = Z^2
        chosen = None
        c = len(cotree)
        for i in range(c):
            for j in range(i + 1, c):
                ei = [1 if k == i else 0 for k in range(c)]
                ej = [1 if k == j else 0 for k in range(c)]
                inv = abelian_invariants(rows + [ei, ej], c)
                if not inv:
                    chosen = (i, j)
                    break
            if chosen:
                break
        if chosen is None:
            raise ValueError("no pair of cotree cycles generates the link "
                             "homology (vertex %d)" % vertex)

        words = []
        curves = []
        for k in chosen:
            lo, hi = slot_pair(cotree[k])
            crossings = (tree.path_crossings(lo[0]) + [lo]
                         + [self._invert_crossing(vertex, x) for x in
                            reversed(tree.path_crossings(hi[0]))])
            # the based word keeps the full loop; the curve (used for
            # holonomy, which is conjugation-invariant) is cyclically
            # reduced to its geodesic-like core
            words.append(self.crossing_word(crossings))
            curves.append(_reduce_crossings(
                crossings, lambda x: self._invert_crossing(vertex, x)))
        return PeripheralSystem(vertex, tree.basepoint, tuple(words),
                                tuple(curves))

    def _invert_crossing(self, vertex, crossing):
        structure = self.skeleton.vertex_links[vertex].structure
        tv2, f2, _ = structure.side_gluing[crossing]
        return (tv2, f2)

    # ---- words for the essential / parallel tests ----

    def vertex_of_end(self, t, v):
        return self.skeleton.vertex_of[(t, v)]

    def edge_loop_word(self, edge_index):
        """
        The compact-core loop of an ideal edge whose two ends lie at the
        same vertex: connect the ends of the edge arc along the link
        spanning tree.  The edge arc itself crosses no faces of the spine,
        so only the two connecting paths contribute.
        """
        e = self.skeleton.edge_classes[edge_index]
        t0, (a, b) = e.corners[0]
        v1 = self.vertex_of_end(t0, a)
        v2 = self.vertex_of_end(t0, b)
        if v1 != v2:
            raise ValueError("edge %d joins distinct vertices" % edge_index)
        return concat(self.path_word(v1, (t0, a)),
                      inverse_word(self.path_word(v1, (t0, b))))

    def peripheral_subgroup(self, vertex, conjugator=()):
        """Generators of the peripheral subgroup, conjugated by the given
        word (w maps to conjugator^-1 w conjugator)."""
        words = self.peripheral(vertex).words
        inv = inverse_word(conjugator)
        return [concat(inv, w, conjugator) for w in words]

    def parallel_test_data(self, edge_e, edge_f, flip):
        """
        The double-coset instance deciding whether edge e is admissibly
        parallel to edge f (flip False) or to f reversed (flip True).

        Returns (word, h2_gens, h1_gens) with the convention that e is
        parallel to the stated edge iff word lies in <h2><h1>, or None when
        the endpoints do not match up.
        """
        sk = self.skeleton
        e = sk.edge_classes[edge_e]
        f = sk.edge_classes[edge_f]
        t0, (a0, b0) = e.corners[0]
        t1, (af, bf) = f.corners[0]
        if not flip:
            # delta = -f must run from t(e) to i(e)
            ya, yb = bf, af
        else:
            ya, yb = af, bf
        v1 = self.vertex_of_end(t0, a0)
        v2 = self.vertex_of_end(t0, b0)
        if (self.vertex_of_end(t1, ya) != v2
                or self.vertex_of_end(t1, yb) != v1):
            return None
        pw1_xa = self.path_word(v1, (t0, a0))
        pw2_xb = self.path_word(v2, (t0, b0))
        pw2_ya = self.path_word(v2, (t1, ya))
        pw1_yb = self.path_word(v1, (t1, yb))
        word = concat(inverse_word(pw2_xb), pw2_ya,
                      inverse_word(pw1_yb), pw1_xa)
        h2 = self.peripheral_subgroup(v2, pw2_xb)
        h1 = self.peripheral_subgroup(v1, pw1_xa)
        return word, h2, h1


def _reduce_crossings(crossings, invert):
    """Cyclically cancel adjacent mutually inverse crossings."""
    out = []
    for x in crossings:
        if out and out[-1] == invert(x):
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == invert(out[-1]):
        out = out[1:-1]
    return out


def presentation_spine(tri_or_skeleton):
    """Dual-spine presentation of pi_1 (tree-collapsed)."""
    return SpineData(tri_or_skeleton).presentation


def peripheral_words(tri_or_skeleton, vertex):
    """The two peripheral generator words at a torus link."""
    return SpineData(tri_or_skeleton).peripheral(vertex).words
