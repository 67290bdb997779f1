"""
Words and finite presentations.  A word is a tuple of nonzero ints, letter
+-(g+1) standing for generator g or its inverse.  Free reduction is the
only normalisation ever applied implicitly.
"""
from .snf import abelian_invariants, cokernel_reducer


def free_reduce(letters):
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word):
    return tuple(-x for x in reversed(word))


def concat(*words):
    out = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def word_from_string(text):
    """Parse words like "ab A" or "a b^-1": letters a..z are generators
    0..25, capitals their inverses; whitespace ignored."""
    out = []
    for ch in text.replace(" ", ""):
        if ch.islower():
            out.append(ord(ch) - ord("a") + 1)
        elif ch.isupper():
            out.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError("bad word character %r" % ch)
    return free_reduce(out)


def word_to_string(word):
    return "".join(chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1)
                   for x in word) or "1"


class Presentation:
    """A finite presentation: generator count plus relator words."""

    def __init__(self, generator_count, relators, labels=None):
        self.generator_count = generator_count
        rels = []
        for r in relators:
            r = free_reduce(r)
            for x in r:
                if not 1 <= abs(x) <= generator_count:
                    raise ValueError("relator letter %d out of range" % x)
            rels.append(r)
        self.relators = tuple(rels)
        self.labels = labels or {}

    def exponent_vector(self, word):
        v = [0] * self.generator_count
        for x in word:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v

    def relator_matrix(self):
        return [self.exponent_vector(r) for r in self.relators]

    def __repr__(self):
        return "Presentation(%d generators | %s)" % (
            self.generator_count,
            ", ".join(word_to_string(r) for r in self.relators) or "-")


def homology(presentation):
    """Smith invariants of the abelianised presentation: torsion factors
    then one 0 per free factor."""
    return abelian_invariants(presentation.relator_matrix(),
                              presentation.generator_count)


def word_image(presentation, word):
    """Image of a word in the abelianisation, reduced to a canonical tuple
    (zero exactly for words trivial in the abelianisation)."""
    reduce_vec = cokernel_reducer(presentation.relator_matrix(),
                                  presentation.generator_count)
    return reduce_vec(presentation.exponent_vector(word))


def simplify_presentation(presentation, budget=1000):
    """
    Tietze simplification: free and cyclic reduction, removal of empty
    relators, elimination of generators occurring in length-1 or length-2
    relators, and substitution through relators where a generator appears
    exactly once.  The group is unchanged; at most `budget` elimination
    passes run, so the result is a fixpoint whenever the budget allows.
    """
    ngens = presentation.generator_count
    relators = [cyclic_reduce(r) for r in presentation.relators]

    for _ in range(budget):
        relators = sorted({cyclic_reduce(r) for r in relators if r},
                          key=lambda r: (len(r), r))
        # find a relator with a generator appearing exactly once in it
        target = None
        for r in relators:
            seen = {}
            for x in r:
                seen[abs(x)] = seen.get(abs(x), 0) + 1
            for x in r:
                if seen[abs(x)] == 1:
                    target = (r, abs(x))
                    break
            if target:
                break
        if target is None:
            break
        rel, g = target
        # rotate the unique occurrence of g to the front: g w = 1 gives
        # g -> w^-1, while g^-1 w = 1 gives g -> w
        i = next(k for k, x in enumerate(rel) if abs(x) == g)
        rot = rel[i:] + rel[:i]
        if rot[0] == g:
            replacement = inverse_word(rot[1:])
        else:
            replacement = rot[1:]
        new_relators = []
        for r in relators:
            if r == rel:
                continue
            out = []
            for x in r:
                if x == g:
                    out.extend(replacement)
                elif x == -g:
                    out.extend(inverse_word(replacement))
                else:
                    out.append(x)
            new_relators.append(cyclic_reduce(out))
        # delete generator g, renumber the ones above it
        def renumber(x):
            a = abs(x)
            return (a - 1 if a > g else a) * (1 if x > 0 else -1)
        relators = [tuple(renumber(x) for x in r) for r in new_relators]
        ngens -= 1

    relators = sorted({cyclic_reduce(r) for r in relators if r},
                      key=lambda r: (len(r), r))
    return Presentation(ngens, relators)
