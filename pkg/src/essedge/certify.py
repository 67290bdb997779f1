"""
Certification of essential and strongly essential triangulations.

Certificate sources are cascaded from cheap and global to expensive and
local: angle-structure LPs first (a semi-angle structure makes every edge
essential, a strict one additionally rules out parallel edges), then
abelianisation checks, then the exact developing-map scan of a verified
geometric solution, and finally budgeted group-theoretic search.  Every
yes/no answer carries the certificate that produced it; unknown is an
honest outcome carrying the exhausted budget.
"""
from fractions import Fraction

from .angles import solve_angle_lp
from .decide import (Budget, decide_word, decide_membership,
                     decide_double_coset)
from .develop import develop_and_scan
from .fundamental import SpineData, presentation_closed
from .presentation import concat
from .shapes import (ShapeAssignment, verify_shapes, completeness_products,
                     solve_shapes_newton, NewtonError, ShapeError)
from .skeleton import build_skeleton
from .snf import in_column_span
from .gaussian import GaussianRational

ALL_METHODS = ("angle", "homology", "geometry", "group")


class EdgeVerdict:
    def __init__(self, edge, essential, certificate):
        self.edge = edge
        self.essential = essential
        self.certificate = certificate

    def to_json(self):
        return {"edge": self.edge, "essential": self.essential,
                "certificate": self.certificate}

    def __repr__(self):
        return "EdgeVerdict(%d, %s, %s)" % (self.edge, self.essential,
                                            self.certificate.get("kind"))


class TriangulationVerdict:
    def __init__(self, essential, strongly_essential, edge_verdicts,
                 pair_table, method_log):
        self.essential = essential
        self.strongly_essential = strongly_essential
        self.edge_verdicts = edge_verdicts
        self.pair_table = pair_table
        self.method_log = method_log

    def to_json(self):
        return {
            "essential": self.essential,
            "strongly_essential": self.strongly_essential,
            "edges": [v.to_json() for v in self.edge_verdicts],
            "pairs": [{"pair": list(k), "parallel": v[0],
                       "certificate": v[1]}
                      for k, v in sorted(self.pair_table.items())],
            "method_log": self.method_log,
        }

    def __repr__(self):
        return ("TriangulationVerdict(essential=%s, strongly=%s)"
                % (self.essential, self.strongly_essential))


class CertifyError(ValueError):
    pass


def _classify(skeleton):
    kind = skeleton.classification
    if kind == "closed_manifold_1vertex":
        return "closed"
    if kind == "ideal_all_torus_or_klein":
        links = {l.surface_kind for l in skeleton.vertex_links}
        if links == {"torus"}:
            return "ideal"
        raise CertifyError("Klein bottle links are not supported")
    raise CertifyError("unsupported classification %r" % kind)


def _aggregate(values):
    if all(v == "yes" for v in values):
        return "yes"
    if any(v == "no" for v in values):
        return "no"
    return "unknown"


def _rationalize(value, max_denominator=10 ** 6):
    return Fraction(value).limit_denominator(max_denominator)


def _exact_shapes(skeleton, shapes, log):
    """An exact verified shape solution (with exact completeness), from
    the given shapes or by Newton solving and rationalising."""
    if shapes is not None:
        if not isinstance(shapes, ShapeAssignment):
            shapes = ShapeAssignment(shapes)
        if not shapes.exact:
            log.append("geometry: supplied shapes are floating; skipped")
            return None
        candidate = shapes
    else:
        try:
            approx = solve_shapes_newton(skeleton)
        except (NewtonError, ShapeError) as e:
            log.append("geometry: newton failed (%s)" % e)
            return None
        try:
            candidate = ShapeAssignment([
                GaussianRational(_rationalize(z.real), _rationalize(z.imag))
                for z in approx.as_complex()])
        except ShapeError:
            log.append("geometry: rationalisation degenerate; skipped")
            return None
    report = verify_shapes(skeleton, candidate)
    if not report.passed:
        log.append("geometry: exact edge equations fail; skipped")
        return None
    if any(p != 1 for p in completeness_products(skeleton, candidate)):
        log.append("geometry: completeness fails; skipped")
        return None
    log.append("geometry: exact complete solution verified "
               "(flat set %s)" % report.flat)
    return candidate


def certify_essential(tri, budgets=None, shapes=None, methods=ALL_METHODS,
                      radius=3, _spine=None):
    """Per-edge and whole-triangulation essential verdicts."""
    budgets = budgets or Budget()
    skeleton = build_skeleton(tri) if not hasattr(tri, "edge_classes") \
        else tri
    case = _classify(skeleton)
    log = []
    if case == "closed":
        verdicts = _essential_closed(skeleton, budgets, methods, log)
    else:
        spine = _spine or SpineData(skeleton)
        verdicts = _essential_ideal(skeleton, spine, budgets, shapes,
                                    methods, log, radius)
    overall = _aggregate([v.essential for v in verdicts])
    return TriangulationVerdict(overall, None, verdicts, {}, log)


def _essential_closed(skeleton, budgets, methods, log):
    presentation = presentation_closed(skeleton)
    verdicts = []
    for e in skeleton.edge_classes:
        word = (e.index + 1,)
        verdicts.append(_word_nontrivial_verdict(
            presentation, word, e.index, budgets, methods, log))
    return verdicts


def _word_nontrivial_verdict(presentation, word, edge, budgets, methods,
                             log):
    if "homology" not in methods and "group" not in methods:
        return EdgeVerdict(edge, "unknown", {"kind": "budget_exhausted"})
    verdict = decide_word(presentation, word, budgets)
    kind = verdict.certificate.get("kind")
    tag = "homology" if kind == "abelianization" else "group_word"
    if verdict.answer == "yes":
        return EdgeVerdict(edge, "yes",
                           {"kind": tag, "detail": verdict.certificate})
    if verdict.answer == "no":
        return EdgeVerdict(edge, "no",
                           {"kind": tag, "detail": verdict.certificate})
    return EdgeVerdict(edge, "unknown", verdict.certificate)


def _essential_ideal(skeleton, spine, budgets, shapes, methods, log,
                     radius):
    n_edges = len(skeleton.edge_classes)
    verdicts = [None] * n_edges

    if "angle" in methods:
        semi = solve_angle_lp(skeleton, "semi")
        if semi.feasible:
            log.append("angle: semi-angle structure found; all edges "
                       "essential")
            return [EdgeVerdict(e.index, "yes", {"kind": "semi_angle"})
                    for e in skeleton.edge_classes]
        log.append("angle: no semi-angle structure")

    # edges joining distinct ideal vertices cannot be admissibly
    # null-homotopic (a path homotopy fixes both endpoints)
    loops = []
    for e in skeleton.edge_classes:
        t0, (a, b) = e.corners[0]
        if spine.vertex_of_end(t0, a) != spine.vertex_of_end(t0, b):
            verdicts[e.index] = EdgeVerdict(e.index, "yes",
                                            {"kind": "distinct_vertices"})
        else:
            loops.append(e.index)

    presentation = spine.presentation
    words = {e: spine.edge_loop_word(e) for e in loops}
    subgroups = {}
    for e in loops:
        t0, (a, _b) = skeleton.edge_classes[e].corners[0]
        v = spine.vertex_of_end(t0, a)
        subgroups[e] = spine.peripheral(v).words

    if "homology" in methods:
        for e in loops:
            if verdicts[e] is not None:
                continue
            columns = ([presentation.exponent_vector(h)
                        for h in subgroups[e]]
                       + presentation.relator_matrix())
            target = presentation.exponent_vector(words[e])
            if not in_column_span(columns, target):
                verdicts[e] = EdgeVerdict(e, "yes", {
                    "kind": "homology", "image": target})
        if any(v is not None and v.certificate["kind"] == "homology"
               for v in verdicts):
            log.append("homology: peripheral lattice separation applied")

    exact = None
    if "geometry" in methods and any(verdicts[e] is None for e in loops):
        exact = _exact_shapes(skeleton, shapes, log)
        if exact is not None:
            report = develop_and_scan(skeleton, exact, radius=radius)
            for e in loops:
                if verdicts[e] is not None:
                    continue
                distinct = report.edge_endpoints_distinct.get(e)
                if distinct is False:
                    verdicts[e] = EdgeVerdict(e, "no", {
                        "kind": "geometric_endpoints",
                        "witness": repr(report.coincident_edges)})
                elif distinct:
                    verdicts[e] = EdgeVerdict(e, "yes", {
                        "kind": "geometric_endpoints"})

    if "group" in methods:
        for e in loops:
            if verdicts[e] is not None:
                continue
            verdict = decide_membership(presentation, subgroups[e],
                                        words[e], budgets)
            if verdict.answer == "no":
                verdicts[e] = EdgeVerdict(e, "yes", {
                    "kind": "group_membership",
                    "detail": verdict.certificate})
            elif verdict.answer == "yes":
                verdicts[e] = EdgeVerdict(e, "no", {
                    "kind": "group_membership",
                    "detail": verdict.certificate})
    for e in loops:
        if verdicts[e] is None:
            verdicts[e] = EdgeVerdict(e, "unknown",
                                      {"kind": "budget_exhausted",
                                       "budget": budgets.to_json()})
    return verdicts


def certify_strongly_essential(tri, budgets=None, shapes=None,
                               methods=ALL_METHODS, radius=3):
    """Essential plus pairwise non-parallelism verdicts."""
    budgets = budgets or Budget()
    skeleton = build_skeleton(tri) if not hasattr(tri, "edge_classes") \
        else tri
    case = _classify(skeleton)
    log = []

    if "angle" in methods and case == "ideal":
        strict = solve_angle_lp(skeleton, "strict")
        if strict.feasible:
            log.append("angle: strict angle structure (t* = %s); strongly "
                       "essential" % strict.optimum)
            verdicts = [EdgeVerdict(e.index, "yes", {"kind": "strict_angle"})
                        for e in skeleton.edge_classes]
            return TriangulationVerdict("yes", "yes", verdicts, {}, log)
        log.append("angle: strict optimum %s; no strict angle structure"
                   % (strict.optimum,))

    spine = SpineData(skeleton) if case == "ideal" else None
    base = certify_essential(skeleton, budgets, shapes, methods, radius,
                             _spine=spine)
    log.extend(base.method_log)
    if base.essential == "no":
        return TriangulationVerdict("no", "no", base.edge_verdicts, {}, log)

    if case == "closed":
        pairs = _pairs_closed(skeleton, budgets, methods, log)
    else:
        pairs = _pairs_ideal(skeleton, spine, budgets, shapes, methods, log,
                             radius)

    pair_answers = [v[0] for v in pairs.values()]
    if any(a == "parallel" for a in pair_answers):
        strongly = "no"
    elif base.essential == "yes" and all(a == "not_parallel"
                                         for a in pair_answers):
        strongly = "yes"
    else:
        strongly = "unknown"
    return TriangulationVerdict(base.essential, strongly,
                                base.edge_verdicts, pairs, log)


def _pairs_closed(skeleton, budgets, methods, log):
    presentation = presentation_closed(skeleton)
    n = len(skeleton.edge_classes)
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            answers = []
            certs = []
            for word in (concat((i + 1,), (-(j + 1),)),
                         concat((i + 1,), (j + 1,))):
                verdict = decide_word(presentation, word, budgets)
                kind = verdict.certificate.get("kind")
                tag = ("homology" if kind == "abelianization"
                       else "group_word")
                answers.append(verdict.answer)
                certs.append({"kind": tag, "detail": verdict.certificate})
            if "no" in answers:
                # some sign combination is trivial: the loops are parallel
                pairs[(i, j)] = ("parallel", certs[answers.index("no")])
            elif answers == ["yes", "yes"]:
                pairs[(i, j)] = ("not_parallel", certs[0])
            else:
                pairs[(i, j)] = ("unknown", {"kind": "budget_exhausted"})
    return pairs


def _pairs_ideal(skeleton, spine, budgets, shapes, methods, log, radius):
    presentation = spine.presentation
    n = len(skeleton.edge_classes)
    pairs = {}

    geometric = None
    if "geometry" in methods:
        exact = _exact_shapes(skeleton, shapes, log)
        if exact is not None:
            report = develop_and_scan(skeleton, exact, radius=radius)
            if report.conclusive_for_flat_clusters:
                coincident = set()
                for cluster in report.clusters:
                    coincident.update(tuple(sorted(p))
                                      for p in cluster.coincidences)
                geometric = coincident
                log.append("geometry: flat-cluster scan conclusive; "
                           "coincident pairs %s" % sorted(coincident))
            else:
                log.append("geometry: flat-cluster scan not conclusive")

    for i in range(n):
        for j in range(i + 1, n):
            if geometric is not None:
                if (i, j) in geometric:
                    pairs[(i, j)] = ("parallel", {"kind": "geometric_scan"})
                else:
                    pairs[(i, j)] = ("not_parallel",
                                     {"kind": "geometric_scan"})
                continue
            if "group" not in methods:
                pairs[(i, j)] = ("unknown", {"kind": "budget_exhausted"})
                continue
            pairs[(i, j)] = _pair_double_coset(spine, presentation, i, j,
                                               budgets)
    return pairs


def _pair_double_coset(spine, presentation, i, j, budgets):
    answers = []
    for flip in (False, True):
        data = spine.parallel_test_data(i, j, flip)
        if data is None:
            continue
        word, h2, h1 = data
        verdict = decide_double_coset(presentation, h1, h2, word, budgets)
        if verdict.answer == "yes":
            return ("parallel", {"kind": "group_double_coset",
                                 "flip": flip,
                                 "detail": verdict.certificate})
        answers.append(verdict.answer)
    if answers and all(a == "no" for a in answers):
        return ("not_parallel", {"kind": "group_double_coset"})
    if not answers:
        # no orientation matches the endpoints: never parallel
        return ("not_parallel", {"kind": "distinct_vertices"})
    return ("unknown", {"kind": "budget_exhausted"})
