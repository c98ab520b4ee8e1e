"""Irreducible crystallographic root systems with exact integer arithmetic.

Roots are integer vectors in the standard ambient coordinates of the
Bourbaki plates.  Families whose Bourbaki realization has half-integer
coordinates (the E family and F4) carry a global ``scale`` factor of 2 so
that every stored coordinate is an exact integer; all pairings are ratios
of dot products, so the scale cancels.  Simple roots and node numbers
follow the Bourbaki plates and are 1-based throughout the public API
(see the numbering table in the README).

The non-reduced family BC stores both a root and its double; every
Weyl-group computation on a BC system goes through its reduced core of
nondivisible roots (type B), see :func:`nondivisible_core`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .errors import InvalidSpec, NonCrystallographicInput, NotNonReduced

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")

# Cartan-integer product -> order of the product of the two reflections.
PRODUCT_ORDER_TABLE = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class RootSystemSpec:
    """A family label and a rank, validated for admissibility."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidSpec(f"rank must be a positive integer, got {self.rank!r}")
        fam, n = self.family, self.rank
        if fam == "E" and n not in (6, 7, 8):
            raise InvalidSpec(f"E requires rank in {{6,7,8}}, got {n}")
        if fam == "F" and n != 4:
            raise InvalidSpec(f"F requires rank 4, got {n}")
        if fam == "G" and n != 2:
            raise InvalidSpec(f"G requires rank 2, got {n}")
        if fam == "D" and n < 3:
            raise InvalidSpec(f"D requires rank >= 3, got {n}")

    def label(self):
        return f"{self.family}{self.rank}"


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _e(i, dim):
    return tuple(1 if j == i else 0 for j in range(dim))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _neg(v):
    return tuple(-a for a in v)


def _scale_vec(c, v):
    return tuple(c * a for a in v)


def _simple_root_data(spec):
    """Ambient dimension, scale factor, and the Bourbaki simple roots."""
    fam, n = spec.family, spec.rank
    if fam == "A":
        dim = n + 1
        simples = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n)]
        return dim, 1, simples
    if fam in ("B", "BC"):
        dim = n
        simples = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        simples.append(_e(n - 1, dim))
        return dim, 1, simples
    if fam == "C":
        dim = n
        simples = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        simples.append(_scale_vec(2, _e(n - 1, dim)))
        return dim, 1, simples
    if fam == "D":
        dim = n
        simples = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        simples.append(_add(_e(n - 2, dim), _e(n - 1, dim)))
        return dim, 1, simples
    if fam == "G":
        return 3, 1, [(1, -1, 0), (-2, 1, 1)]
    if fam == "F":
        # Scaled by 2: a4 = (e1 - e2 - e3 - e4)/2.
        return 4, 2, [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]
    if fam == "E":
        # Scaled by 2, ambient R^8 for every E rank.
        simples = [
            (1, -1, -1, -1, -1, -1, -1, 1),
            (2, 2, 0, 0, 0, 0, 0, 0),
            (-2, 2, 0, 0, 0, 0, 0, 0),
            (0, -2, 2, 0, 0, 0, 0, 0),
            (0, 0, -2, 2, 0, 0, 0, 0),
            (0, 0, 0, -2, 2, 0, 0, 0),
            (0, 0, 0, 0, -2, 2, 0, 0),
            (0, 0, 0, 0, 0, -2, 2, 0),
        ]
        return 8, 2, simples[:n]
    raise InvalidSpec(f"unknown family {fam!r}")


def reflect_vector(a, v):
    """Reflect the integer vector ``v`` in the root vector ``a``."""
    num = 2 * dot(v, a)
    den = dot(a, a)
    if num % den:
        raise NonCrystallographicInput(
            f"pairing 2<{v},{a}>/<{a},{a}> = {num}/{den} is not an integer"
        )
    c = num // den
    return tuple(x - c * y for x, y in zip(v, a))


def _classical_roots(spec, dim):
    fam, n = spec.family, spec.rank
    roots = set()
    if fam == "A":
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    roots.add(_sub(_e(i, dim), _e(j, dim)))
        return roots
    short = {_e(i, dim) for i in range(n)} | {_neg(_e(i, dim)) for i in range(n)}
    long_ = {_scale_vec(2, v) for v in short}
    mixed = set()
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            mixed.add(_add(_scale_vec(si, _e(i, dim)), _scale_vec(sj, _e(j, dim))))
    if fam == "B":
        return short | mixed
    if fam == "C":
        return long_ | mixed
    if fam == "D":
        return mixed
    if fam == "BC":
        return short | long_ | mixed
    raise InvalidSpec(fam)


def _closure_roots(simples):
    """All roots generated from the simple roots by simple reflections."""
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for v in frontier:
            for a in simples:
                w = reflect_vector(a, v)
                if w not in roots:
                    roots.add(w)
                    new.append(w)
        frontier = new
    return roots


def _coefficients(simples, roots, dim):
    """Expand each root in the simple-root basis, exactly.

    Picks a set of pivot coordinates making the simple-root matrix square
    and invertible, inverts it once over Q, and verifies the full ambient
    equation for every root (so linear dependence or non-integrality is
    caught).
    """
    rank = len(simples)
    cols = [list(map(Fraction, s)) for s in simples]
    used = []
    for i in range(dim):
        trial = used + [i]
        mat = [[cols[j][t] for j in range(rank)] for t in trial]
        if _rank_of(mat) == len(trial):
            used = trial
        if len(used) == rank:
            break
    pivots = used
    if len(pivots) != rank:
        raise InvalidSpec("simple roots are linearly dependent")
    square = [[cols[j][i] for j in range(rank)] for i in pivots]
    inv = _invert(square)
    coeffs = {}
    for v in roots:
        rhs = [Fraction(v[i]) for i in pivots]
        c = [sum(inv[i][j] * rhs[j] for j in range(rank)) for i in range(rank)]
        # Verify on all ambient coordinates and check integrality.
        for i in range(dim):
            if sum(Fraction(simples[j][i]) * c[j] for j in range(rank)) != v[i]:
                raise InvalidSpec(f"root {v} is outside the simple-root span")
        if any(x.denominator != 1 for x in c):
            raise NonCrystallographicInput(f"root {v} has non-integer coefficients")
        coeffs[v] = tuple(int(x) for x in c)
    return coeffs


def _rank_of(mat):
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def _invert(mat):
    n = len(mat)
    m = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        f = m[c][c]
        m[c] = [x / f for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                g = m[i][c]
                m[i] = [x - g * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


class RootSystem:
    """An immutable root datum: indexed roots plus Cartan/Dynkin data.

    Root indices are positions in the lexicographically sorted ``roots``
    tuple.  Node numbers (for simple roots) are 1-based Bourbaki labels.
    """

    __slots__ = (
        "spec",
        "ambient_dim",
        "scale",
        "roots",
        "root_index",
        "simple_indices",
        "positive_set",
        "coeffs",
        "neg_index",
        "cartan",
        "dynkin_edges",
        "simple_refl_perms",
    )

    def __init__(self, spec, ambient_dim, scale, roots, simples, coeffs):
        self.spec = spec
        self.ambient_dim = ambient_dim
        self.scale = scale
        self.roots = tuple(sorted(roots))
        self.root_index = {v: i for i, v in enumerate(self.roots)}
        self.simple_indices = tuple(self.root_index[s] for s in simples)
        self.coeffs = tuple(coeffs[v] for v in self.roots)
        self.positive_set = frozenset(
            i for i, c in enumerate(self.coeffs) if _first_nonzero(c) > 0
        )
        self.neg_index = tuple(self.root_index[_neg(v)] for v in self.roots)
        self.cartan = _cartan_matrix(simples)
        self.dynkin_edges = tuple(
            (i + 1, j + 1)
            for i in range(len(simples))
            for j in range(i + 1, len(simples))
            if self.cartan[i][j] != 0
        )
        self.simple_refl_perms = tuple(
            tuple(self.root_index[reflect_vector(s, v)] for v in self.roots)
            for s in simples
        )
        self._check()

    @property
    def rank(self):
        return self.spec.rank

    @property
    def family(self):
        return self.spec.family

    def _check(self):
        n_roots = len(self.roots)
        if 2 * len(self.positive_set) != n_roots:
            raise InvalidSpec("positive roots are not half of all roots")
        for i in range(n_roots):
            if self.neg_index[self.neg_index[i]] != i:
                raise InvalidSpec("negation is not an involution on roots")
            if (i in self.positive_set) == (self.neg_index[i] in self.positive_set):
                raise InvalidSpec("a root and its negative have the same sign")
        for k, row in enumerate(self.cartan):
            if row[k] != 2:
                raise InvalidSpec("Cartan diagonal entry is not 2")

    def simple_root(self, node):
        """Vector of the simple root at the 1-based Bourbaki ``node``."""
        return self.roots[self.simple_indices[node - 1]]

    def node_degree(self, node):
        return sum(1 for e in self.dynkin_edges if node in e)

    def neighbors(self, node):
        out = set()
        for i, j in self.dynkin_edges:
            if i == node:
                out.add(j)
            elif j == node:
                out.add(i)
        return tuple(sorted(out))

    def is_reduced(self):
        half = set()
        for v in self.roots:
            if all(x % 2 == 0 for x in v) and tuple(x // 2 for x in v) in self.root_index:
                half.add(v)
        return not half

    def to_json(self):
        """Canonical JSON document; byte-stable (roots sorted, keys sorted)."""
        doc = {
            "family": self.spec.family,
            "rank": self.spec.rank,
            "ambient_dim": self.ambient_dim,
            "scale": self.scale,
            "simple_nodes": [list(self.roots[i]) for i in self.simple_indices],
            "roots": [list(v) for v in self.roots],
            "cartan": [list(row) for row in self.cartan],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _first_nonzero(seq):
    for x in seq:
        if x:
            return x
    return 0


def _cartan_matrix(simples):
    """Row i lists the weight-basis coordinates of simple root i.

    Entry [i][j] is 2(a_i, a_j)/(a_j, a_j), so the reflection in node i
    acts on fundamental-weight coordinates by v -> v - v[i] * row_i.
    """
    n = len(simples)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = 2 * dot(simples[i], simples[j])
            den = dot(simples[j], simples[j])
            if num % den:
                raise NonCrystallographicInput("non-integral Cartan entry")
            row.append(num // den)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _build_cached(family, rank):
    spec = RootSystemSpec(family, rank)
    dim, scale, simples = _simple_root_data(spec)
    simples = [tuple(v) for v in simples]
    if spec.family in ("A", "B", "C", "D", "BC"):
        roots = _classical_roots(spec, dim)
        for s in simples:
            if s not in roots:
                raise InvalidSpec(f"simple root {s} missing from construction")
    else:
        roots = _closure_roots(simples)
    coeffs = _coefficients(simples, roots, dim)
    return RootSystem(spec, dim, scale, roots, simples, coeffs)


def build_root_system(spec):
    """Construct the root system for an admissible spec.

    Results are cached and immutable; callers share instances freely.
    """
    if isinstance(spec, tuple):
        spec = RootSystemSpec(*spec)
    return _build_cached(spec.family, spec.rank)


def reflect(rs, a, v):
    """Reflect vector ``v`` in the root with index ``a``."""
    return reflect_vector(rs.roots[a], tuple(v))


def coxeter_matrix(rs):
    """Orders m(a, b) of products of pairs of simple reflections.

    Each entry is found by iterating the product permutation on the root
    set until it is the identity, then cross-checked against the Cartan
    product table {0:2, 1:3, 2:4, 3:6}.
    """
    n = rs.rank
    idx = range(len(rs.roots))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(1)
                continue
            pi, pj = rs.simple_refl_perms[i], rs.simple_refl_perms[j]
            prod = tuple(pi[pj[r]] for r in idx)
            order = 1
            cur = prod
            while any(cur[r] != r for r in idx):
                cur = tuple(prod[cur[r]] for r in idx)
                order += 1
            table = PRODUCT_ORDER_TABLE[rs.cartan[i][j] * rs.cartan[j][i]]
            if order != table:
                raise NonCrystallographicInput(
                    f"reflection-product order {order} disagrees with Cartan table {table}"
                )
            row.append(order)
        out.append(tuple(row))
    return tuple(out)


def nondivisible_core(rs):
    """The reduced sub-root-system of roots whose half is not a root.

    Only defined for the non-reduced BC family; the result is the type-B
    system on the same simple roots (asserted by Cartan-matrix equality).
    """
    if rs.is_reduced():
        raise NotNonReduced(f"{rs.spec.label()} is already reduced")
    kept = set()
    for v in rs.roots:
        if any(x % 2 for x in v) or tuple(x // 2 for x in v) not in rs.root_index:
            kept.add(v)
    core = build_root_system(RootSystemSpec("B", rs.rank))
    if set(core.roots) != kept:
        raise InvalidSpec("nondivisible roots do not form the expected B system")
    if core.cartan != _cartan_matrix([rs.simple_root(i + 1) for i in range(rs.rank)]):
        raise InvalidSpec("core Cartan matrix mismatch")
    return core


def reduced_form(rs):
    """``rs`` itself if reduced, else its nondivisible core."""
    return rs if rs.is_reduced() else nondivisible_core(rs)


def is_end_node(rs, node):
    """True when the node has Dynkin-diagram degree exactly 1."""
    return rs.node_degree(node) == 1


def branch_node(rs):
    """The unique degree-3 node, or None when the diagram is a path."""
    found = [n for n in range(1, rs.rank + 1) if rs.node_degree(n) == 3]
    if len(found) > 1:
        raise InvalidSpec("more than one branch node in an irreducible diagram")
    return found[0] if found else None


def dynkin_path(rs, start, end):
    """The unique simple path between two nodes of the Dynkin tree."""
    if start == end:
        return (start,)
    parent = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in rs.neighbors(u):
                if v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    path = [end]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))
