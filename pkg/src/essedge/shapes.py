"""
Thurston gluing equations: exponent system construction, exact
verification of Gaussian-rational shape assignments, Newton solving of the
log-form equations, and the bridge from shapes to angle structures.

Shape slot convention, validated by the exact edge products of the bundled
fixtures: z at the {01, 23} edge pair, 1/(1-z) at {02, 13}, 1-1/z at
{03, 12}.
"""
import cmath
import math

from .angles import slot_of
from .fundamental import SpineData
from .gaussian import GaussianRational, as_gaussian, parse_gaussian, ONE
from .skeleton import build_skeleton


class ShapeError(ValueError):
    pass


class NewtonError(RuntimeError):
    pass


class ShapeAssignment:
    """One shape per tetrahedron, exact GaussianRational or complex float;
    the derived slot values are 1/(1-z) and 1-1/z."""

    def __init__(self, shapes):
        values = []
        exact = True
        for z in shapes:
            if isinstance(z, GaussianRational):
                pass
            elif isinstance(z, complex):
                exact = False
            else:
                z = as_gaussian(z)
            values.append(z)
        self.shapes = tuple(values)
        self.exact = exact and all(isinstance(z, GaussianRational)
                                   for z in values)
        for t, z in enumerate(self.shapes):
            if self._bad(z):
                raise ShapeError("tetrahedron %d has degenerate shape %r"
                                 % (t, z))

    @staticmethod
    def _bad(z):
        if isinstance(z, GaussianRational):
            return z == 0 or z == 1
        return z == 0 or z == 1

    def __len__(self):
        return len(self.shapes)

    def slot_value(self, tet, slot):
        z = self.shapes[tet]
        if slot == 0:
            return z
        one = ONE if isinstance(z, GaussianRational) else 1.0
        if slot == 1:
            return one / (one - z)
        return one - one / z

    def triple_product(self, tet):
        """z * z' * z'' (explicitly -1 for every admissible shape)."""
        return (self.slot_value(tet, 0) * self.slot_value(tet, 1)
                * self.slot_value(tet, 2))

    def flat_set(self):
        """Tetrahedra whose shape has zero imaginary part."""
        out = []
        for t, z in enumerate(self.shapes):
            im = z.im if isinstance(z, GaussianRational) else z.imag
            if im == 0:
                out.append(t)
        return out

    def as_complex(self):
        return [complex(z) for z in self.shapes]

    def __repr__(self):
        return "ShapeAssignment(%s)" % (list(self.shapes),)


def parse_shapes(text):
    """Shapes from text (one exact number per line, '#' comments) or a
    JSON document {"shapes": ["...", ...]}."""
    import json
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        entries = doc["shapes"]
    else:
        entries = [line.split("#", 1)[0].strip()
                   for line in text.splitlines()]
        entries = [e for e in entries if e]
    return ShapeAssignment([parse_gaussian(e) for e in entries])


class GluingSystem:
    """
    Exponent data of the gluing and completeness equations: edge_rows[e]
    and cusp_rows[k] are integer vectors of length 3n (slot order as in
    the angle system); edge equations demand slot-value products equal 1
    with argument sum 2 pi, cusp equations log-holonomy 0.
    """

    def __init__(self, tri_or_skeleton):
        spine = (tri_or_skeleton if isinstance(tri_or_skeleton, SpineData)
                 else SpineData(tri_or_skeleton))
        skeleton = spine.skeleton
        tri = skeleton.triangulation
        n = tri.tet_count
        self.spine = spine
        self.skeleton = skeleton
        self.columns = 3 * n
        self.edge_rows = []
        for e in skeleton.edge_classes:
            row = [0] * self.columns
            for t, (a, b) in e.corners:
                row[3 * t + slot_of(a, b)] += 1
            self.edge_rows.append(row)
        self.cusp_rows = []
        self.cusp_of_row = []
        for link in skeleton.vertex_links:
            if link.surface_kind != "torus":
                raise ShapeError("vertex %d link is a %s, not a torus"
                                 % (link.index, link.surface_kind))
            peripheral = spine.peripheral(link.index)
            for curve in peripheral.curves:
                self.cusp_rows.append(self._curve_row(link, curve))
                self.cusp_of_row.append(link.index)

    def _curve_row(self, link, curve):
        """Exponent row of a peripheral curve: each corner the curve cuts
        contributes the slot of that corner, signed by turn handedness in
        the link's chosen orientation."""
        structure = link.structure
        orient = structure.orient
        row = [0] * self.columns
        m = len(curve)
        for k in range(m):
            tv, out_side = curve[(k + 1) % m]
            prev_tv, prev_out = curve[k]
            tv_in, f_in, _sigma = structure.side_gluing[(prev_tv, prev_out)]
            if tv_in != tv:
                raise ShapeError("peripheral curve is not contiguous")
            t, v = tv
            w = 6 - v - f_in - out_side
            corners = sorted(u for u in range(4) if u != v)
            i = corners.index(w)
            nxt = corners[(i + 1) % 3]
            prv = corners[(i - 1) % 3]
            if orient[tv] < 0:
                nxt, prv = prv, nxt
            # boundary orientation passes corner w from side(next) to
            # side(prev); agreeing turns count +1
            sign = 1 if (f_in, out_side) == (nxt, prv) else -1
            row[3 * t + slot_of(v, w)] += sign
        return row

    @property
    def rows(self):
        return self.edge_rows + self.cusp_rows

    def targets(self):
        """Log-equation right-hand sides: 2 pi i for edge rows, 0 for cusp
        rows."""
        two_pi_i = complex(0.0, 2.0 * math.pi)
        return ([two_pi_i] * len(self.edge_rows)
                + [0j] * len(self.cusp_rows))


def build_gluing_system(tri_or_skeleton):
    return GluingSystem(tri_or_skeleton)


class ShapeReport:
    def __init__(self, edge_products, edge_argument_sums, flat,
                 triple_products, exact):
        self.edge_products = edge_products
        self.edge_argument_sums = edge_argument_sums
        self.flat = flat
        self.triple_products = triple_products
        self.exact = exact

    @property
    def products_ok(self):
        if self.exact:
            return all(p == 1 for p in self.edge_products)
        return all(abs(p - 1) < 1e-9 for p in self.edge_products)

    def arguments_ok(self, tol=1e-9):
        return all(abs(s - 2.0) < tol / math.pi
                   for s in self.edge_argument_sums)

    @property
    def passed(self):
        return self.products_ok and self.arguments_ok()

    def __repr__(self):
        return ("ShapeReport(products_ok=%s, argument_sums=%s, flat=%s)"
                % (self.products_ok,
                   ["%.9f" % s for s in self.edge_argument_sums], self.flat))


def _slot_argument(value):
    """Argument in units of pi, flat convention: positive reals give 0,
    negative reals give 1."""
    if isinstance(value, GaussianRational):
        if value.im == 0:
            return 0.0 if value.re > 0 else 1.0
        value = complex(value)
    phase = cmath.phase(value)
    if phase == 0 and value.real < 0:
        phase = math.pi
    return phase / math.pi


def verify_shapes(tri_or_skeleton, shapes):
    """
    Exact check of the edge equations: for each edge class the product of
    incident slot values (exact for exact input) and the argument sum in
    pi-units, plus the flat set.
    """
    skeleton = build_skeleton(tri_or_skeleton) if not hasattr(
        tri_or_skeleton, "edge_classes") else tri_or_skeleton
    if not isinstance(shapes, ShapeAssignment):
        shapes = ShapeAssignment(shapes)
    if len(shapes) != skeleton.triangulation.tet_count:
        raise ShapeError("expected %d shapes, got %d"
                         % (skeleton.triangulation.tet_count, len(shapes)))
    products = []
    argsums = []
    for e in skeleton.edge_classes:
        if not e.closed:
            continue
        prod = None
        argsum = 0.0
        for t, (a, b) in e.corners:
            v = shapes.slot_value(t, slot_of(a, b))
            prod = v if prod is None else prod * v
            argsum += _slot_argument(v)
        products.append(prod)
        argsums.append(argsum)
    triples = [shapes.triple_product(t)
               for t in range(len(shapes))]
    return ShapeReport(products, argsums, shapes.flat_set(), triples,
                       shapes.exact)


def completeness_products(tri_or_skeleton, shapes):
    """Exact cusp-equation products (one per peripheral curve); all equal
    to 1 exactly when the verified solution is complete."""
    system = build_gluing_system(tri_or_skeleton)
    if not isinstance(shapes, ShapeAssignment):
        shapes = ShapeAssignment(shapes)
    out = []
    for row in system.cusp_rows:
        prod = ONE if shapes.exact else complex(1.0)
        for col, exp in enumerate(row):
            if not exp:
                continue
            t, slot = divmod(col, 3)
            v = shapes.slot_value(t, slot)
            for _ in range(abs(exp)):
                prod = prod * v if exp > 0 else prod / v
        out.append(prod)
    return out


def shapes_to_angles(tri_or_skeleton, shapes, tol=1e-9):
    """
    Slot arguments of a verified shape solution, in pi-units.  With all
    imaginary parts positive this is a strict angle structure; flat
    tetrahedra contribute 0/1 entries.  Raises when verify_shapes fails.
    """
    skeleton = build_skeleton(tri_or_skeleton) if not hasattr(
        tri_or_skeleton, "edge_classes") else tri_or_skeleton
    if not isinstance(shapes, ShapeAssignment):
        shapes = ShapeAssignment(shapes)
    report = verify_shapes(skeleton, shapes)
    if not report.products_ok or not report.arguments_ok(tol):
        raise ShapeError("shape assignment fails the edge equations")
    out = []
    for t in range(len(shapes)):
        for slot in range(3):
            out.append(_slot_argument(shapes.slot_value(t, slot)))
    return out


def _log_residual(system, zs):
    """Residuals of all log equations at the given complex shapes."""
    values = []
    for row, target in zip(system.rows, system.targets()):
        total = 0j
        for col, exp in enumerate(row):
            if not exp:
                continue
            t, slot = divmod(col, 3)
            z = zs[t]
            w = z if slot == 0 else (1.0 / (1.0 - z) if slot == 1
                                     else 1.0 - 1.0 / z)
            total += exp * cmath.log(w)
        values.append(total - target)
    return values


def _jacobian_row(row, zs):
    """Derivative of one log equation with respect to each shape."""
    n = len(zs)
    out = [0j] * n
    for t in range(n):
        a = row[3 * t]
        b = row[3 * t + 1]
        c = row[3 * t + 2]
        if not (a or b or c):
            continue
        z = zs[t]
        out[t] = (a - c) / z + (b - c) / (1.0 - z)
    return out


def _solve_complex(matrix, rhs):
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) < 1e-14:
            raise NewtonError("singular Jacobian")
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][-1] / a[i][i] for i in range(n)]


def solve_shapes_newton(tri_or_skeleton, initial=None, tol=1e-12,
                        max_iter=50):
    """
    Newton iteration on the log-form gluing and completeness equations.

    A maximal independent subset of rows is selected at the initial point
    (edge rows first, ascending, then cusp rows); success requires the
    residual of every equation, including the dependent ones, to fall
    below tol.  Raises NewtonError on a singular Jacobian or divergence.
    """
    system = build_gluing_system(tri_or_skeleton)
    n = system.columns // 3
    if n == 0:
        raise ShapeError("empty triangulation")
    zs = list(initial) if initial is not None else [complex(0.0, 1.0)] * n
    zs = [complex(z) for z in zs]
    if len(zs) != n:
        raise ShapeError("expected %d initial shapes" % n)

    # deterministic choice of an independent square subsystem
    rows = system.rows
    targets = system.targets()
    chosen = []
    basis = []
    for idx, row in enumerate(rows):
        if len(chosen) == n:
            break
        cand = _jacobian_row(row, zs)
        vec = cand[:]
        for b in basis:
            pivot_col, pivot_val = b
            f = vec[pivot_col] / pivot_val[pivot_col]
            vec = [x - f * y for x, y in zip(vec, pivot_val)]
        norm = max(abs(x) for x in vec)
        if norm > 1e-9:
            col = max(range(n), key=lambda k: abs(vec[k]))
            basis.append((col, vec))
            chosen.append(idx)
    if len(chosen) < n:
        raise NewtonError("gluing system rank %d < %d at the initial point"
                          % (len(chosen), n))

    worst = float("inf")
    for iteration in range(max_iter):
        residual = _log_residual(system, zs)
        worst = max(abs(r) for r in residual)
        if worst < tol:
            return ShapeAssignment(zs)
        sub = [_jacobian_row(rows[i], zs) for i in chosen]
        rhs = [-residual[i] for i in chosen]
        try:
            delta = _solve_complex(sub, rhs)
        except NewtonError:
            raise NewtonError("singular Jacobian at iteration %d"
                              % iteration)
        step = 1.0
        for t in range(n):
            zs[t] += delta[t]
            if zs[t] == 0 or zs[t] == 1:
                zs[t] += 1e-9j * step
    raise NewtonError("no convergence after %d iterations (residual %.3g)"
                      % (max_iter, worst))
