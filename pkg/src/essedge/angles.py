"""
Angle structures on ideal triangulations: exact equation systems, semi and
strict feasibility by rational LP, taut enumeration, and the combinatorial
Gauss-Bonnet sum.  All angles are in units of pi, so the tetrahedron
equations have right-hand side 1 and the edge equations 2.
"""
from fractions import Fraction

from .linprog import solve_lp, feasible_point
from .skeleton import build_skeleton

# slot 0 holds the angle of the opposite edge pair {01, 23}, slot 1 of
# {02, 13}, slot 2 of {03, 12}
PAIR_SLOT = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}


def slot_of(a, b):
    return PAIR_SLOT[(a, b) if a < b else (b, a)]


class AngleVector:
    """3n rationals in pi-units, slots 0..2 per tetrahedron."""

    def __init__(self, entries):
        self.entries = tuple(Fraction(x) for x in entries)
        if len(self.entries) % 3:
            raise ValueError("angle vector length must be a multiple of 3")

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, AngleVector) and self.entries == other.entries

    def slot(self, tet, s):
        return self.entries[3 * tet + s]

    def is_semi(self):
        return all(x >= 0 for x in self.entries)

    def is_strict(self):
        return all(x > 0 for x in self.entries)

    def is_taut(self):
        return all(x in (0, 1) for x in self.entries)

    def __repr__(self):
        return "AngleVector(%s)" % (", ".join(str(x) for x in self.entries))


class AngleSystem:
    """
    The angle equality system of a triangulation: one row per tetrahedron
    (slot sum 1) followed by one row per interior edge class (incidence sum
    2).  corner_slots maps each edge class index to the list of slot column
    indices its cycle passes through (with multiplicity).
    """

    def __init__(self, skeleton):
        tri = skeleton.triangulation
        n = tri.tet_count
        self.skeleton = skeleton
        self.tet_count = n
        self.columns = 3 * n
        rows = []
        rhs = []
        for t in range(n):
            row = [0] * self.columns
            for s in range(3):
                row[3 * t + s] = 1
            rows.append(row)
            rhs.append(Fraction(1))
        self.edge_row_index = {}
        self.corner_slots = {}
        for e in skeleton.edge_classes:
            slots = [3 * t + slot_of(a, b) for t, (a, b) in e.corners]
            self.corner_slots[e.index] = slots
            if not e.closed:
                continue
            row = [0] * self.columns
            for s in slots:
                row[s] += 1
            self.edge_row_index[e.index] = len(rows)
            rows.append(row)
            rhs.append(Fraction(2))
        self.matrix = rows
        self.rhs = rhs

    @property
    def shape(self):
        return (len(self.matrix), self.columns)

    def residual(self, angles):
        """Exact residuals of all equalities at an AngleVector."""
        return [sum(r * x for r, x in zip(row, angles.entries)) - b
                for row, b in zip(self.matrix, self.rhs)]

    def satisfied_by(self, angles):
        return all(r == 0 for r in self.residual(angles))


class LPOutcome:
    def __init__(self, status, witness=None, optimum=None):
        self.status = status
        self.witness = witness
        self.optimum = optimum

    @property
    def feasible(self):
        return self.status == "feasible"

    def __repr__(self):
        extra = "" if self.optimum is None else ", t*=%s" % self.optimum
        return "LPOutcome(%s%s)" % (self.status, extra)


def build_angle_system(tri_or_skeleton):
    skeleton = _as_skeleton(tri_or_skeleton)
    return AngleSystem(skeleton)


def _as_skeleton(obj):
    if hasattr(obj, "edge_classes"):
        return obj
    return build_skeleton(obj)


def solve_angle_lp(tri_or_skeleton, mode):
    """
    Exact feasibility of the angle equations.

    mode "semi": a solution with all entries >= 0, or infeasible.
    mode "strict": maximise t subject to the equalities and entries >= t;
    the outcome carries the exact optimum and an optimal witness, and is
    feasible exactly when t* > 0 (a strict angle structure exists).
    """
    system = build_angle_system(tri_or_skeleton)
    A, b = system.matrix, system.rhs
    if mode == "semi":
        x = feasible_point(A, b)
        if x is None:
            return LPOutcome("infeasible")
        return LPOutcome("feasible", AngleVector(x))
    if mode != "strict":
        raise ValueError("mode must be 'semi' or 'strict'")
    ncols = system.columns
    if ncols == 0:
        return LPOutcome("infeasible")
    # substitute x = y + t, y >= 0, t = tp - tm free
    rowsum = [sum(row) for row in A]
    A2 = [row + [rowsum[i], -rowsum[i]] for i, row in enumerate(A)]
    c = [Fraction(0)] * ncols + [Fraction(-1), Fraction(1)]
    status, x, value = solve_lp(A2, b, c)
    if status != "optimal":
        return LPOutcome("infeasible")
    t = -value
    witness = AngleVector([xi + t for xi in x[:ncols]])
    return LPOutcome("feasible" if t > 0 else "infeasible", witness, t)


def enumerate_taut(tri_or_skeleton, limit=None):
    """
    All taut structures (one slot 1 per tetrahedron, edge sums exactly 2),
    by backtracking in lexicographic slot order; at most `limit` results.
    """
    skeleton = _as_skeleton(tri_or_skeleton)
    system = AngleSystem(skeleton)
    n = system.tet_count
    edges = [e for e in skeleton.edge_classes if e.closed]
    # per tet, per slot: incidence counts on each closed edge class
    counts = [[{} for _ in range(3)] for _ in range(n)]
    for e in edges:
        for s in system.corner_slots[e.index]:
            t, slot = divmod(s, 3)
            d = counts[t][slot]
            d[e.index] = d.get(e.index, 0) + 1
    max_rest = [{} for _ in range(n + 1)]
    for t in range(n - 1, -1, -1):
        acc = dict(max_rest[t + 1])
        for e in edges:
            best = max(counts[t][s].get(e.index, 0) for s in range(3))
            acc[e.index] = acc.get(e.index, 0) + best
        max_rest[t] = acc

    results = []
    acc = {e.index: 0 for e in edges}
    choice = [0] * n

    def backtrack(t):
        if limit is not None and len(results) >= limit:
            return
        if t == n:
            if all(acc[e.index] == 2 for e in edges):
                entries = []
                for tt in range(n):
                    for s in range(3):
                        entries.append(Fraction(1 if choice[tt] == s else 0))
                results.append(AngleVector(entries))
            return
        for s in range(3):
            ok = True
            for e_index, k in counts[t][s].items():
                if acc[e_index] + k > 2:
                    ok = False
                    break
            if ok:
                for e_index, k in counts[t][s].items():
                    acc[e_index] += k
                # prune when some edge can no longer reach 2
                reachable = all(
                    acc[e.index] + max_rest[t + 1].get(e.index, 0) >= 2
                    for e in edges)
                if reachable:
                    choice[t] = s
                    backtrack(t + 1)
                for e_index, k in counts[t][s].items():
                    acc[e_index] -= k
        return

    if n == 0:
        return []
    backtrack(0)
    return results


def formal_gauss_bonnet(corner_angles, corner_count):
    """
    Combinatorial area of an n-gon with the given corner angles, in
    pi-units: sum of the angles minus (n - 2).
    """
    angles = [Fraction(x) for x in corner_angles]
    if len(angles) != corner_count:
        raise ValueError("expected %d corner angles, got %d"
                         % (corner_count, len(angles)))
    if corner_count < 3:
        raise ValueError("a disc needs at least 3 corners")
    return sum(angles) - (corner_count - 2)
