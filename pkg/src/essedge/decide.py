"""
Budgeted semi-decision procedures for word triviality, subgroup membership
and double-coset membership in finite presentations.

Every verdict is three-valued; a yes or no always carries a certificate
that an independent checker can replay (abelianisation invariants, a
rewriting trace, a completed coset table, a finite quotient, or an
explicit factorisation).  Unknown carries the exhausted budget.  All
searches are deterministic and ordered, so a definite verdict at some
budget is returned unchanged at any larger budget.
"""
from itertools import permutations

from .presentation import (free_reduce, inverse_word, concat, cyclic_reduce,
                           word_image)
from .snf import in_column_span
from .coset import coset_enumeration


class Budget:
    """Search budgets; unknown keys are rejected to keep CLI specs honest."""

    DEFAULTS = {
        "coset_nodes": 20000,
        "rewrite_steps": 20000,
        "rewrite_slack": 8,
        "quotient_degree": 5,
        "quotient_nodes": 100000,
        "factor_depth": 6,
        "factor_nodes": 5000,
    }

    def __init__(self, **kwargs):
        for key in kwargs:
            if key not in self.DEFAULTS:
                raise ValueError("unknown budget key %r" % key)
        self._values = dict(self.DEFAULTS)
        self._values.update(kwargs)

    def __getattr__(self, key):
        try:
            return self._values[key]
        except KeyError:
            raise AttributeError(key)

    @classmethod
    def parse(cls, spec):
        """Parse "key=value,key=value" budget specs."""
        kwargs = {}
        if spec:
            for part in spec.split(","):
                key, _, value = part.partition("=")
                if not _:
                    raise ValueError("bad budget entry %r" % part)
                kwargs[key.strip()] = int(value)
        return cls(**kwargs)

    def to_json(self):
        return dict(self._values)


class GroupVerdict:
    def __init__(self, answer, certificate):
        self.answer = answer
        self.certificate = certificate

    def __repr__(self):
        return "GroupVerdict(%s, %s)" % (self.answer,
                                         self.certificate.get("kind"))

    def to_json(self):
        return {"answer": self.answer, "certificate": self.certificate}


def _relator_closure(presentation):
    """All cyclic permutations of the cyclically reduced relators and their
    inverses; empty relators dropped."""
    closure = set()
    for r in presentation.relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        for base in (r, inverse_word(r)):
            for i in range(len(base)):
                closure.add(base[i:] + base[:i])
    return sorted(closure)


def cyclic_canonical(word):
    """Canonical representative of a word up to conjugation and inversion:
    the lex-least rotation of the cyclic reduction or of its inverse.
    Triviality only depends on this class."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for base in (w, inverse_word(w)):
        for i in range(len(base)):
            rot = base[i:] + base[:i]
            if best is None or rot < best:
                best = rot
    return best


def _cyclic_moves(state, closure_by_first, closure, max_len):
    """Successor canonical states: replace a prefix u of a cyclic relator
    conjugate, read at any rotation of the state, by the inverse of the
    rest (u may be empty, which inserts a whole inverse relator)."""
    out = set()
    n = len(state)
    rotations = [state[i:] + state[:i] for i in range(n)] or [()]
    for rot in rotations:
        for rel in closure:
            # u empty: prepend the inverse relator
            new = free_reduce(inverse_word(rel) + rot)
            if len(new) <= max_len:
                out.add(cyclic_canonical(new))
        if not rot:
            continue
        for rel in closure_by_first.get(rot[0], ()):
            L = len(rel)
            k = 0
            while k < L and k < len(rot) and rel[k] == rot[k]:
                k += 1
                new = free_reduce(inverse_word(rel[k:]) + rot[k:])
                if len(new) <= max_len:
                    out.add(cyclic_canonical(new))
    return out


def rewrite_search(presentation, word, budget):
    """
    Search for a rewriting trace from the word to the empty word, working
    on canonical cyclic words (triviality is conjugation-invariant, and
    canonical forms quotient out inversion, so the search for a word and
    its inverse is identical).  Bidirectional: a ball of short trivial
    words is grown from the empty word first, then a best-first search by
    length runs from the given word until it meets the ball.

    Returns the trace as a list of canonical cyclic words ending in (),
    or None when the node budget or length cap is exhausted.
    """
    import heapq
    closure = _relator_closure(presentation)
    if not closure:
        return None if cyclic_canonical(word) else [()]
    closure_by_first = {}
    for rel in closure:
        closure_by_first.setdefault(rel[0], []).append(rel)
    start = cyclic_canonical(word)
    if not start:
        return [()]
    max_len = len(start) + budget.rewrite_slack

    # backward ball around the empty word
    back_parent = {(): None}
    back_budget = budget.rewrite_steps // 4
    back_len = max(len(r) + budget.rewrite_slack // 2 for r in closure)
    frontier = [()]
    expanded = 0
    for _depth in range(3):
        nxt = []
        for s in sorted(frontier):
            expanded += 1
            if expanded > back_budget:
                break
            for t in sorted(_cyclic_moves(s, closure_by_first, closure,
                                          back_len)):
                if t not in back_parent:
                    back_parent[t] = s
                    nxt.append(t)
        if expanded > back_budget:
            break
        frontier = nxt

    def back_trace(state):
        trace = []
        while state is not None:
            trace.append(state)
            state = back_parent[state]
        return trace

    if start in back_parent:
        return back_trace(start)

    parent = {start: None}
    heap = [(len(start), start)]
    expanded = 0
    while heap:
        _, s = heapq.heappop(heap)
        expanded += 1
        if expanded > budget.rewrite_steps:
            return None
        for t in sorted(_cyclic_moves(s, closure_by_first, closure, max_len)):
            if t in parent:
                continue
            parent[t] = s
            if t in back_parent:
                forward = []
                cur = t
                while cur is not None:
                    forward.append(cur)
                    cur = parent[cur]
                forward.reverse()
                return forward + back_trace(back_parent[t])
            heapq.heappush(heap, (len(t), t))
    return None


def check_rewrite_step(presentation, before, after):
    """Replay one cyclic rewriting move (the move relation is symmetric,
    so both directions are tried)."""
    closure = _relator_closure(presentation)
    closure_by_first = {}
    for rel in closure:
        closure_by_first.setdefault(rel[0], []).append(rel)
    before = cyclic_canonical(before)
    after = cyclic_canonical(after)
    limit = max((len(before), len(after))) + max(
        (len(r) for r in closure), default=0)
    return (after in _cyclic_moves(before, closure_by_first, closure, limit)
            or before in _cyclic_moves(after, closure_by_first, closure,
                                       limit))


def replay_rewrite_trace(presentation, word, trace):
    """Replay a triviality certificate: the trace starts at the word's
    canonical cyclic form, every step is a legal move, and it ends empty."""
    if not trace:
        return not cyclic_canonical(word)
    trace = [tuple(w) for w in trace]
    if trace[0] != cyclic_canonical(word) or trace[-1] != ():
        return False
    for a, b in zip(trace, trace[1:]):
        if not check_rewrite_step(presentation, a, b):
            return False
    return True


# ---- finite quotients ----

def _perm_mul(p, q):
    """Apply p first, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _evaluate(images, word, n):
    result = tuple(range(n))
    for x in word:
        p = images[abs(x) - 1]
        result = _perm_mul(result, p if x > 0 else _perm_inv(p))
    return result


def quotient_search(presentation, predicate, budget):
    """
    Enumerate homomorphisms to symmetric groups S_n, n up to the budgeted
    degree, by backtracking over generator images in lexicographic order;
    relators are checked as soon as their support is assigned.  The first
    homomorphism satisfying the predicate is returned as (n, images), along
    with a flag telling whether the search ran to completion.
    """
    k = presentation.generator_count
    nodes = 0
    relators_by_support = [[] for _ in range(k + 1)]
    for r in presentation.relators:
        top = max((abs(x) for x in r), default=0)
        relators_by_support[top].append(r)
    for n in range(2, budget.quotient_degree + 1):
        elements = sorted(permutations(range(n)))
        images = [None] * k
        identity = tuple(range(n))

        def assign(g):
            nonlocal nodes
            if g == k:
                return predicate(n, tuple(images))
            for p in elements:
                nodes += 1
                if nodes > budget.quotient_nodes:
                    raise _BudgetExhausted
                images[g] = p
                ok = all(_evaluate(images, r, n) == identity
                         for r in relators_by_support[g + 1])
                if ok:
                    result = assign(g + 1)
                    if result:
                        return result
            images[g] = None
            return None

        if k == 0:
            continue
        try:
            found = assign(0)
        except _BudgetExhausted:
            return None, False
        if found:
            return found, True
    return None, True


class _BudgetExhausted(Exception):
    pass


def subgroup_closure(images, n):
    """All elements generated by the given permutations."""
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    gens = list(images) + [_perm_inv(p) for p in images]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = _perm_mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


# ---- factorisation search ----

def _product_table(gens, depth, node_budget):
    """Freely reduced products of the generators, BFS by factor count:
    word -> factor list.  Deterministic order."""
    table = {(): []}
    frontier = [()]
    nodes = 0
    for _ in range(depth):
        next_frontier = []
        for w in frontier:
            for gi, g in enumerate(gens):
                for sign in (1, -1):
                    nodes += 1
                    if nodes > node_budget:
                        return table
                    piece = g if sign > 0 else inverse_word(g)
                    new = concat(w, piece)
                    if new not in table:
                        table[new] = table[w] + [sign * (gi + 1)]
                        next_frontier.append(new)
        frontier = next_frontier
    return table


# ---- the three deciders ----

def decide_word(presentation, word, budget=None):
    """Is the word nontrivial in the presented group?"""
    budget = budget or Budget()
    word = free_reduce(word)
    if not word:
        return GroupVerdict("no", {"kind": "free_reduction"})
    image = word_image(presentation, word)
    if any(image):
        return GroupVerdict("yes", {"kind": "abelianization",
                                    "image": list(image)})
    trace = rewrite_search(presentation, word, budget)
    if trace is not None:
        return GroupVerdict("no", {"kind": "rewriting_trace",
                                   "trace": [list(w) for w in trace]})
    table = coset_enumeration(presentation, max_cosets=budget.coset_nodes)
    if table is not None:
        endpoint = table.apply(0, word)
        answer = "yes" if endpoint != 0 else "no"
        return GroupVerdict(answer, {"kind": "coset_table",
                                     "table": table.to_json(),
                                     "coset": endpoint})
    found, _complete = quotient_search(
        presentation,
        lambda n, images: ((n, images)
                           if _evaluate(images, word, n) != tuple(range(n))
                           else None),
        budget)
    if found:
        n, images = found
        return GroupVerdict("yes", {"kind": "finite_quotient", "degree": n,
                                    "images": [list(p) for p in images]})
    return GroupVerdict("unknown", {"kind": "budget_exhausted",
                                    "budget": budget.to_json()})


def decide_membership(presentation, subgroup_words, word, budget=None):
    """Does the word lie in the subgroup generated by the given words?"""
    budget = budget or Budget()
    word = free_reduce(word)
    subgroup_words = [free_reduce(h) for h in subgroup_words]
    # abelianisation: image of word must lie in the span of the subgroup
    # images and the relator lattice
    columns = ([presentation.exponent_vector(h) for h in subgroup_words]
               + presentation.relator_matrix())
    target = presentation.exponent_vector(word)
    if not in_column_span(columns, target):
        return GroupVerdict("no", {"kind": "abelianization",
                                   "image": list(target)})
    table6 = _product_table(subgroup_words, budget.factor_depth,
                            budget.factor_nodes)
    if word in table6:
        return GroupVerdict("yes", {"kind": "factorization",
                                    "factors": table6[word]})
    table = coset_enumeration(presentation, subgroup_words,
                              max_cosets=budget.coset_nodes)
    if table is not None:
        endpoint = table.apply(0, word)
        answer = "yes" if endpoint == 0 else "no"
        return GroupVerdict(answer, {"kind": "coset_table",
                                     "table": table.to_json(),
                                     "coset": endpoint})
    found, _complete = quotient_search(
        presentation,
        lambda n, images: _membership_separation(n, images, subgroup_words,
                                                 word),
        budget)
    if found:
        n, images, endpoint = found
        return GroupVerdict("no", {"kind": "quotient_separation",
                                   "degree": n,
                                   "images": [list(p) for p in images]})
    return GroupVerdict("unknown", {"kind": "budget_exhausted",
                                    "budget": budget.to_json()})


def _membership_separation(n, images, subgroup_words, word):
    sub = subgroup_closure([_evaluate(images, h, n) for h in subgroup_words],
                           n)
    qw = _evaluate(images, word, n)
    if qw not in sub:
        return (n, images, qw)
    return None


def decide_double_coset(presentation, h1_words, h2_words, word, budget=None):
    """Does the word lie in the double coset H2 H1?"""
    budget = budget or Budget()
    word = free_reduce(word)
    h1_words = [free_reduce(h) for h in h1_words]
    h2_words = [free_reduce(h) for h in h2_words]
    if not word:
        return GroupVerdict("yes", {"kind": "factorization",
                                    "h2_factors": [], "h1_factors": []})
    columns = ([presentation.exponent_vector(h) for h in h1_words]
               + [presentation.exponent_vector(h) for h in h2_words]
               + presentation.relator_matrix())
    target = presentation.exponent_vector(word)
    if not in_column_span(columns, target):
        return GroupVerdict("no", {"kind": "abelianization",
                                   "image": list(target)})
    # bounded literal factorisation: w = p2 * p1 after free reduction
    t1 = _product_table(h1_words, budget.factor_depth, budget.factor_nodes)
    t2 = _product_table(h2_words, budget.factor_depth, budget.factor_nodes)
    for p2, factors2 in t2.items():
        rest = concat(inverse_word(p2), word)
        if rest in t1:
            return GroupVerdict("yes", {"kind": "factorization",
                                        "h2_factors": factors2,
                                        "h1_factors": t1[rest]})
    # exact decision from a completed coset table for H1 (or symmetrically
    # for H2 applied to the inverse question)
    for subgroup, others, w, swap in (
            (h1_words, h2_words, word, False),
            (h2_words, h1_words, inverse_word(word), True)):
        table = coset_enumeration(presentation, subgroup,
                                  max_cosets=budget.coset_nodes)
        if table is None:
            continue
        # w in H2 H1  <=>  some coset H1 x with x in H2 satisfies
        # (H1 x) . w = H1; walk the orbit of coset 0 under H2
        hits = {c for c in range(table.coset_count)
                if table.apply(c, w) == 0}
        orbit = {0: ()}
        frontier = [0]
        while frontier:
            c = frontier.pop(0)
            for gi, h in enumerate(others):
                for sign in (1, -1):
                    piece = h if sign > 0 else inverse_word(h)
                    d = table.apply(c, piece)
                    if d not in orbit:
                        orbit[d] = orbit[c] + (sign * (gi + 1),)
                        frontier.append(d)
        common = hits.intersection(orbit)
        if common:
            c = min(common)
            # orbit word x has the coset H1 x, so h2 = x^-1
            return GroupVerdict("yes", {"kind": "coset_table",
                                        "table": table.to_json(),
                                        "h2_inverse_factors": list(orbit[c]),
                                        "swapped": swap})
        return GroupVerdict("no", {"kind": "coset_table",
                                   "table": table.to_json(),
                                   "orbit_size": len(orbit),
                                   "swapped": swap})
    found, _complete = quotient_search(
        presentation,
        lambda n, images: _double_coset_separation(n, images, h1_words,
                                                   h2_words, word),
        budget)
    if found:
        n, images = found[0], found[1]
        return GroupVerdict("no", {"kind": "quotient_separation",
                                   "degree": n,
                                   "images": [list(p) for p in images]})
    return GroupVerdict("unknown", {"kind": "budget_exhausted",
                                    "budget": budget.to_json()})


def _double_coset_separation(n, images, h1_words, h2_words, word):
    sub1 = subgroup_closure([_evaluate(images, h, n) for h in h1_words], n)
    sub2 = subgroup_closure([_evaluate(images, h, n) for h in h2_words], n)
    qw = _evaluate(images, word, n)
    # q(h2 h1) acts as h2 first, then h1
    product = {_perm_mul(a, b) for a in sub2 for b in sub1}
    if qw not in product:
        return (n, images)
    return None


# ---- certificate replay ----

def _rebuild_table(presentation, subgroup_words, cert):
    from .coset import CosetTable
    data = cert["table"]
    rows = [tuple(r) for r in data["table"]]
    table = CosetTable(presentation.generator_count, presentation.relators,
                       [tuple(h) for h in subgroup_words], rows)
    return table if table.verify() else None


def _hom_ok(presentation, cert):
    n = cert["degree"]
    images = [tuple(p) for p in cert["images"]]
    identity = tuple(range(n))
    return all(_evaluate(images, r, n) == identity
               for r in presentation.relators), n, images


def replay_word_verdict(presentation, word, verdict):
    """Independent check of a decide_word yes/no certificate."""
    word = free_reduce(word)
    cert = verdict.certificate
    kind = cert.get("kind")
    if verdict.answer == "unknown":
        return kind == "budget_exhausted"
    if kind == "free_reduction":
        return verdict.answer == "no" and not word
    if kind == "abelianization":
        return verdict.answer == "yes" and any(word_image(presentation,
                                                          word))
    if kind == "rewriting_trace":
        return verdict.answer == "no" and replay_rewrite_trace(
            presentation, word, cert["trace"])
    if kind == "coset_table":
        table = _rebuild_table(presentation, (), cert)
        if table is None:
            return False
        endpoint = table.apply(0, word)
        return (verdict.answer == "yes") == (endpoint != 0)
    if kind == "finite_quotient":
        ok, n, images = _hom_ok(presentation, cert)
        return (ok and verdict.answer == "yes"
                and _evaluate(images, word, n) != tuple(range(n)))
    return False


def replay_membership_verdict(presentation, subgroup_words, word, verdict):
    """Independent check of a decide_membership yes/no certificate."""
    word = free_reduce(word)
    subgroup_words = [free_reduce(h) for h in subgroup_words]
    cert = verdict.certificate
    kind = cert.get("kind")
    if verdict.answer == "unknown":
        return kind == "budget_exhausted"
    if kind == "abelianization":
        columns = ([presentation.exponent_vector(h) for h in subgroup_words]
                   + presentation.relator_matrix())
        return verdict.answer == "no" and not in_column_span(
            columns, presentation.exponent_vector(word))
    if kind == "factorization":
        product = ()
        for f in cert["factors"]:
            h = subgroup_words[abs(f) - 1]
            product = concat(product, h if f > 0 else inverse_word(h))
        return verdict.answer == "yes" and product == word
    if kind == "coset_table":
        table = _rebuild_table(presentation, subgroup_words, cert)
        if table is None:
            return False
        return (verdict.answer == "yes") == (table.apply(0, word) == 0)
    if kind == "quotient_separation":
        ok, n, images = _hom_ok(presentation, cert)
        if not ok or verdict.answer != "no":
            return False
        sub = subgroup_closure([_evaluate(images, h, n)
                                for h in subgroup_words], n)
        return _evaluate(images, word, n) not in sub
    return False


def replay_double_coset_verdict(presentation, h1_words, h2_words, word,
                                verdict):
    """Independent check of a decide_double_coset yes/no certificate."""
    word = free_reduce(word)
    h1_words = [free_reduce(h) for h in h1_words]
    h2_words = [free_reduce(h) for h in h2_words]
    cert = verdict.certificate
    kind = cert.get("kind")
    if verdict.answer == "unknown":
        return kind == "budget_exhausted"
    if kind == "abelianization":
        columns = ([presentation.exponent_vector(h) for h in h1_words]
                   + [presentation.exponent_vector(h) for h in h2_words]
                   + presentation.relator_matrix())
        return verdict.answer == "no" and not in_column_span(
            columns, presentation.exponent_vector(word))
    if kind == "factorization":
        p2 = ()
        for f in cert["h2_factors"]:
            h = h2_words[abs(f) - 1]
            p2 = concat(p2, h if f > 0 else inverse_word(h))
        p1 = ()
        for f in cert["h1_factors"]:
            h = h1_words[abs(f) - 1]
            p1 = concat(p1, h if f > 0 else inverse_word(h))
        return verdict.answer == "yes" and concat(p2, p1) == word
    if kind == "coset_table":
        subgroup, others, w = h1_words, h2_words, word
        if cert.get("swapped"):
            subgroup, others, w = h2_words, h1_words, inverse_word(word)
        table = _rebuild_table(presentation, subgroup, cert)
        if table is None:
            return False
        if verdict.answer == "yes":
            x = ()
            for f in cert["h2_inverse_factors"]:
                h = others[abs(f) - 1]
                x = concat(x, h if f > 0 else inverse_word(h))
            return table.apply(0, concat(x, w)) == 0
        hits = {c for c in range(table.coset_count)
                if table.apply(c, w) == 0}
        orbit = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            for h in others:
                for piece in (h, inverse_word(h)):
                    d = table.apply(c, piece)
                    if d not in orbit:
                        orbit.add(d)
                        frontier.append(d)
        return not hits & orbit
    if kind == "quotient_separation":
        ok, n, images = _hom_ok(presentation, cert)
        if not ok or verdict.answer != "no":
            return False
        return _double_coset_separation(n, images, h1_words, h2_words,
                                        word) is not None
    return False
