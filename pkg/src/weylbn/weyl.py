"""Weyl-group elements, word calculus, and weight actions.

An element is stored as the permutation it induces on the root index set,
so equality and hashing are plain tuple comparisons and no floating point
ever appears.  A word is a tuple of 1-based Bourbaki node numbers; the
word (i1, i2, ..., ik) spells the product r_{i1} r_{i2} ... r_{ik}, which
acts on a vector by applying r_{ik} first.  Words parse and print as
whitespace-separated node numbers, e.g. "2 1 3 2".

Elements are immutable and every operation is re-entrant, so work over
independent elements parallelizes freely.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import EnumerationCapExceeded
from .rootsys import coxeter_matrix

DEFAULT_WORD_CAP = 10**6


class WeylElement:
    """A Weyl-group element as a permutation of the root index set."""

    __slots__ = ("rs", "perm", "_length")

    def __init__(self, rs, perm):
        self.rs = rs
        self.perm = perm
        self._length = None

    def __mul__(self, other):
        p, q = self.perm, other.perm
        return WeylElement(self.rs, tuple(p[q[r]] for r in range(len(p))))

    def inverse(self):
        p = self.perm
        inv = [0] * len(p)
        for r, img in enumerate(p):
            inv[img] = r
        return WeylElement(self.rs, tuple(inv))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"WeylElement({self.rs.spec.label()}, len={length(self)})"

    def is_identity(self):
        return all(img == r for r, img in enumerate(self.perm))


def identity_element(rs):
    return WeylElement(rs, tuple(range(len(rs.roots))))


def simple_reflection(rs, node):
    """The reflection in the simple root at the 1-based ``node``."""
    return WeylElement(rs, rs.simple_refl_perms[node - 1])


def element_of(rs, word):
    """Evaluate a word of node numbers to a Weyl-group element."""
    word = tuple(word)
    n = rs.rank
    for letter in word:
        if not 1 <= letter <= n:
            raise ValueError(f"letter {letter} outside 1..{n}")
    perm = tuple(range(len(rs.roots)))
    for letter in word:
        refl = rs.simple_refl_perms[letter - 1]
        perm = tuple(perm[refl[r]] for r in range(len(perm)))
    return WeylElement(rs, perm)


def length(w):
    """Number of positive roots sent negative by ``w``."""
    if w._length is None:
        pos = w.rs.positive_set
        w._length = sum(1 for r in pos if w.perm[r] not in pos)
    return w._length


def _left_descents(w):
    """Nodes s with l(r_s w) < l(w), i.e. w^{-1}(a_s) negative."""
    rs = w.rs
    pos = rs.positive_set
    inv = w.inverse().perm
    return [
        i + 1
        for i, si in enumerate(rs.simple_indices)
        if inv[si] not in pos
    ]


@lru_cache(maxsize=None)
def longest_element(rs):
    """The unique maximal-length element, found by greedy ascent.

    Starting from the identity, left-multiply by any simple reflection
    that increases length until none does; the result is checked to have
    length #roots/2 and to be an involution.
    """
    pos = rs.positive_set
    simples = rs.simple_indices
    w = identity_element(rs)
    inv = w.perm
    while True:
        for i, si in enumerate(simples):
            if inv[si] in pos:
                w = simple_reflection(rs, i + 1) * w
                inv = w.inverse().perm
                break
        else:
            break
    if length(w) * 2 != len(rs.roots):
        raise AssertionError("greedy ascent did not reach the longest element")
    if not (w * w).is_identity():
        raise AssertionError("longest element is not an involution")
    return w


def is_minus_one(w):
    """True when ``w`` negates every simple root."""
    rs = w.rs
    return all(w.perm[si] == rs.neg_index[si] for si in rs.simple_indices)


def canonical_reduced_word(w):
    """The lexicographically smallest reduced word for ``w``."""
    out = []
    cur = w
    while not cur.is_identity():
        s = min(_left_descents(cur))
        out.append(s)
        cur = simple_reflection(cur.rs, s) * cur
    return tuple(out)


def reduced_words(w, cap=DEFAULT_WORD_CAP):
    """The full set of reduced words for ``w``.

    Enumerates by descent recursion, then re-derives the same set by
    closing one word under braid moves; the two routes must agree, which
    also certifies that the braid-move graph on the result is connected.
    Raises EnumerationCapExceeded (with a partial count) past ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    rs = w.rs
    memo = {}

    def rec(u):
        key = u.perm
        got = memo.get(key)
        if got is not None:
            return got
        if u.is_identity():
            result = frozenset({()})
        else:
            words = set()
            for s in _left_descents(u):
                for tail in rec(simple_reflection(rs, s) * u):
                    words.add((s,) + tail)
                    if len(words) > cap:
                        raise EnumerationCapExceeded(
                            f"more than {cap} reduced words", len(words)
                        )
            result = frozenset(words)
        memo[key] = result
        return result

    words = rec(w)
    seed = min(words)
    closure = _braid_closure(rs, seed, cap)
    if closure != words:
        raise AssertionError("braid closure disagrees with descent recursion")
    return words


def braid_moves(rs, word):
    """All words obtained from ``word`` by one braid substitution."""
    cox = _coxeter_of(rs)
    out = []
    k = len(word)
    for pos in range(k - 1):
        a, b = word[pos], word[pos + 1]
        if a == b:
            continue
        m = cox[a - 1][b - 1]
        if pos + m > k:
            continue
        pattern = tuple(a if t % 2 == 0 else b for t in range(m))
        if tuple(word[pos : pos + m]) == pattern:
            swapped = tuple(b if t % 2 == 0 else a for t in range(m))
            out.append(word[:pos] + swapped + word[pos + m :])
    return out


@lru_cache(maxsize=None)
def _coxeter_of(rs):
    return coxeter_matrix(rs)


def _braid_closure(rs, seed, cap):
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for word in frontier:
            for moved in braid_moves(rs, word):
                if moved not in seen:
                    if len(seen) >= cap:
                        raise EnumerationCapExceeded(
                            f"more than {cap} reduced words", len(seen)
                        )
                    seen.add(moved)
                    nxt.append(moved)
        frontier = nxt
    return frozenset(seen)


def fundamental_weight(rs, node):
    """Weight-basis coordinates of the fundamental weight at ``node``."""
    return tuple(1 if i == node - 1 else 0 for i in range(rs.rank))


def reflect_weight(rs, node, coords):
    """Apply the simple reflection at ``node`` in weight coordinates."""
    c = coords[node - 1]
    if c == 0:
        return coords
    row = rs.cartan[node - 1]
    return tuple(x - c * y for x, y in zip(coords, row))


def act_on_weight(rs, w_or_word, coords):
    """Apply a word or element to fundamental-weight coordinates."""
    if isinstance(w_or_word, WeylElement):
        word = canonical_reduced_word(w_or_word)
    else:
        word = tuple(w_or_word)
    for letter in reversed(word):
        coords = reflect_weight(rs, letter, coords)
    return coords


def simple_root_weight_coords(rs, node):
    """The simple root at ``node`` written in the weight basis."""
    return tuple(rs.cartan[node - 1])


def parse_word(text):
    """Parse whitespace-separated 1-based node numbers into a word."""
    parts = text.split()
    return tuple(int(p) for p in parts)


def format_word(word):
    return " ".join(str(x) for x in word)


def all_elements(rs, cap=None):
    """Every element of the Weyl group, by closure of the simple reflections.

    Returns a dict mapping each permutation tuple to its length.  Intended
    for small groups; ``cap`` bounds the enumeration when given.
    """
    from .errors import GroupTooLarge

    ident = tuple(range(len(rs.roots)))
    gens = rs.simple_refl_perms
    lengths = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            lp = lengths[p]
            for g in gens:
                q = tuple(g[p[r]] for r in range(len(p)))
                if q not in lengths:
                    if cap is not None and len(lengths) >= cap:
                        raise GroupTooLarge(
                            f"Weyl group larger than cap {cap}"
                        )
                    lengths[q] = lp + 1
                    nxt.append(q)
        frontier = nxt
    return lengths
