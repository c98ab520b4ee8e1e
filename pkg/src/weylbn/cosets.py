"""Parabolic quotients, double-coset counting, and the verification suites
built on them.

A maximal parabolic choice is a root system together with one removed
simple node a.  The quotient W/W' (W' generated by the reflections of the
remaining nodes) is realized as the W-orbit of the fundamental weight at
a, whose stabilizer is exactly W'; double cosets W'\\W/W' then correspond
to W'-orbits on that weight orbit.  Everything is exact integer
arithmetic on weight-coordinate tuples.

Non-reduced (BC) input is handled by computing on the reduced core of
nondivisible roots while reports keep the original BC label.

Sweep cases touch only immutable shared root-system data, so they are
independent and may run in parallel; results merge deterministically in
(family, rank, node) order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupTooLarge, RankTooSmall, WitnessNotApplicable
from .rootsys import branch_node, build_root_system, dynkin_path, is_end_node, reduced_form
from .weyl import (
    WeylElement,
    act_on_weight,
    element_of,
    fundamental_weight,
    is_minus_one,
    length,
    longest_element,
    reduced_words,
    simple_reflection,
)

NAIVE_WEYL_CAP = 10**5


class ParabolicChoice:
    """A root system with one removed simple node (1-based)."""

    __slots__ = ("rs", "removed", "core")

    def __init__(self, rs, removed):
        if not 1 <= removed <= rs.rank:
            raise ValueError(f"node {removed} outside 1..{rs.rank}")
        self.rs = rs
        self.removed = removed
        self.core = reduced_form(rs)

    @property
    def family(self):
        return self.rs.spec.family

    @property
    def rank(self):
        return self.rs.rank

    def __repr__(self):
        return f"ParabolicChoice({self.rs.spec.label()}, node={self.removed})"


@dataclass(frozen=True)
class DoubleCosetReport:
    family: str
    rank: int
    node: int
    quotient_size: int
    count: int
    expected_two: bool
    passed: bool

    def to_record(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "node": self.node,
            "index": self.quotient_size,
            "count": self.count,
            "expected_two": self.expected_two,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class WitnessReport:
    word: tuple
    i: int
    length_ok: bool
    two_reduced_words: bool
    endpoints_r_a: bool
    coset_distinct: bool

    @property
    def passed(self):
        return (
            self.length_ok
            and self.two_reduced_words
            and self.endpoints_r_a
            and self.coset_distinct
        )


def _sparse_cartan_rows(rs):
    """Per-node list of (position, entry) pairs with nonzero Cartan entry."""
    return [
        tuple((j, c) for j, c in enumerate(row) if c)
        for row in rs.cartan
    ]


def _orbit(rs, start, nodes):
    """BFS closure of ``start`` under the simple reflections at ``nodes``."""
    sparse = _sparse_cartan_rows(rs)
    idxs = [n - 1 for n in nodes]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in idxs:
                c = v[i]
                if c == 0:
                    continue
                w = list(v)
                for j, entry in sparse[i]:
                    w[j] -= c * entry
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _orbit_partition_count(rs, points, nodes):
    """Number of orbits of the reflections at ``nodes`` acting on ``points``."""
    sparse = _sparse_cartan_rows(rs)
    idxs = [n - 1 for n in nodes]
    remaining = set(points)
    count = 0
    while remaining:
        seed = remaining.pop()
        count += 1
        frontier = [seed]
        while frontier:
            nxt = []
            for v in frontier:
                for i in idxs:
                    c = v[i]
                    if c == 0:
                        continue
                    w = list(v)
                    for j, entry in sparse[i]:
                        w[j] -= c * entry
                    w = tuple(w)
                    if w in remaining:
                        remaining.remove(w)
                        nxt.append(w)
            frontier = nxt
    return count


def parabolic_orbit(choice):
    """The W-orbit of the fundamental weight at the removed node.

    Its size is the index [W : W'], because the stabilizer of a dominant
    fundamental weight is the parabolic subgroup of the other nodes.
    """
    core = choice.core
    start = fundamental_weight(core, choice.removed)
    return frozenset(_orbit(core, start, range(1, core.rank + 1)))


def double_coset_count(choice):
    """Count W'\\W/W' as W'-orbits on the weight orbit of the removed node."""
    core = choice.core
    if core.rank < 2:
        raise RankTooSmall("double-coset counting needs rank >= 2")
    orbit = parabolic_orbit(choice)
    others = [n for n in range(1, core.rank + 1) if n != choice.removed]
    count = _orbit_partition_count(core, orbit, others)
    expected_two = choice.family == "A" and is_end_node(choice.rs, choice.removed)
    passed = (count == 2) == expected_two and count >= 2
    return DoubleCosetReport(
        family=choice.family,
        rank=choice.rank,
        node=choice.removed,
        quotient_size=len(orbit),
        count=count,
        expected_two=expected_two,
        passed=passed,
    )


def double_coset_orbit_sizes(choice):
    """Sorted sizes of the W'-orbits on the weight orbit (they partition it)."""
    core = choice.core
    orbit = parabolic_orbit(choice)
    others = [n for n in range(1, core.rank + 1) if n != choice.removed]
    sizes = []
    remaining = set(orbit)
    while remaining:
        seed = remaining.pop()
        part = _orbit(core, seed, others)
        remaining -= part
        sizes.append(len(part))
    return sorted(sizes)


def double_coset_count_naive(choice, cap=NAIVE_WEYL_CAP):
    """Independent oracle: partition the fully enumerated Weyl group.

    Enumerates W as root permutations and partitions it into W' x W'
    double cosets by direct multiplication (two-sided closure under the
    simple reflections of W').  Only for |W| <= cap.
    """
    core = choice.core
    ident = tuple(range(len(core.roots)))
    gens = core.simple_refl_perms
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[r]] for r in range(len(p)))
                if q not in elements:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"|W| exceeds the naive cap {cap}")
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    sub_gens = [
        core.simple_refl_perms[n - 1]
        for n in range(1, core.rank + 1)
        if n != choice.removed
    ]
    n_idx = range(len(ident))
    remaining = set(elements)
    count = 0
    while remaining:
        seed = remaining.pop()
        count += 1
        frontier = [seed]
        while frontier:
            nxt = []
            for p in frontier:
                for g in sub_gens:
                    for q in (
                        tuple(g[p[r]] for r in n_idx),
                        tuple(p[g[r]] for r in n_idx),
                    ):
                        if q in remaining:
                            remaining.remove(q)
                            nxt.append(q)
            frontier = nxt
    return count


def sweep_cases(max_rank, families=None):
    """The (family, rank) pairs a sweep covers, in canonical order.

    Classical families run from rank 2 (D from rank 4, since D3 is the
    same root system as A3) up to ``max_rank``; exceptional types are
    included whenever their rank is in range.
    """
    if max_rank < 2:
        raise RankTooSmall("sweeps need max_rank >= 2")
    fams = set(families) if families else None
    cases = []
    for fam in ("A", "B", "BC", "C", "D"):
        lo = 4 if fam == "D" else 2
        for rank in range(lo, max_rank + 1):
            cases.append((fam, rank))
    for fam, rank in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if rank <= max_rank:
            cases.append((fam, rank))
    if fams is not None:
        cases = [c for c in cases if c[0] in fams]
    return sorted(cases)


def double_coset_sweep(max_rank, families=None):
    """Double-coset reports for every node of every type in range."""
    reports = []
    for fam, rank in sweep_cases(max_rank, families):
        rs = build_root_system((fam, rank))
        for node in range(1, rank + 1):
            reports.append(double_coset_count(ParabolicChoice(rs, node)))
    return reports


def reports_table(reports):
    """Aligned text table for a list of double-coset reports."""
    header = ("family", "rank", "node", "index", "count", "expected_two", "pass")
    rows = [header]
    for r in reports:
        rows.append(
            (r.family, str(r.rank), str(r.node), str(r.quotient_size), str(r.count),
             str(r.expected_two), str(r.passed))
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in rows
    ]
    return "\n".join(lines)


def third_coset_witness(choice):
    """A length-2i+2 element with exactly two reduced words, witnessing a
    third double coset besides W' and W' r_a W'.

    With a the removed node: if a has diagram degree >= 2, take i = 1 and
    the two smallest neighbors; if a is an end node and the diagram has a
    branch node, walk the path a = a_1, ..., a_i = branch and take the
    branch's two other neighbors.  The element is
    r_{a_1}...r_{a_i} r_{c} r_{c'} r_{a_i}...r_{a_1}; the report checks
    its length, its reduced words (both must begin and end with r_a), and
    that its double coset differs from W' and W' r_a W' (tested on the
    weight orbit, where membership in W' means fixing the fundamental
    weight at a).
    """
    core = choice.core
    a = choice.removed
    if choice.family == "A" and is_end_node(choice.rs, a):
        raise WitnessNotApplicable(
            f"type A end node {a}: the two-coset case, no witness exists"
        )
    degree = core.node_degree(a)
    if degree >= 2:
        path = (a,)
        extra = core.neighbors(a)[:2]
    else:
        b = branch_node(core)
        if b is None or degree != 1:
            raise WitnessNotApplicable(
                f"{core.spec.label()} node {a}: no branch node to walk to"
            )
        path = dynkin_path(core, a, b)
        prev = path[-2]
        extra = tuple(n for n in core.neighbors(b) if n != prev)[:2]
    i = len(path)
    word = path + extra + tuple(reversed(path))
    w = element_of(core, word)
    length_ok = length(w) == 2 * i + 2
    words = reduced_words(w)
    two = len(words) == 2
    swapped = path + (extra[1], extra[0]) + tuple(reversed(path))
    two = two and words == {word, swapped}
    endpoints = all(u[0] == a and u[-1] == a for u in words)
    omega = fundamental_weight(core, a)
    img = act_on_weight(core, word, omega)
    r_a_img = act_on_weight(core, (a,), omega)
    others = [n for n in range(1, core.rank + 1) if n != a]
    coset_of_ra = _orbit(core, r_a_img, others)
    coset_distinct = img != omega and img not in coset_of_ra
    return WitnessReport(
        word=word,
        i=i,
        length_ok=length_ok,
        two_reduced_words=two,
        endpoints_r_a=endpoints,
        coset_distinct=coset_distinct,
    )


def root_count_gap_check(choice):
    """Sizes (#roots, #roots in the span of the kept nodes, gap holds).

    The gap #roots > #sub-roots + 2 is what rules the two-coset case out
    whenever the longest element acts as -1; that implication is asserted
    here whenever it applies.
    """
    core = choice.core
    if core.rank < 2:
        raise RankTooSmall("gap check needs rank >= 2")
    k = choice.removed - 1
    size_psi = len(core.roots)
    size_sub = sum(1 for c in core.coeffs if c[k] == 0)
    holds = size_psi > size_sub + 2
    if is_minus_one(longest_element(core)) and not holds:
        raise AssertionError(
            f"{core.spec.label()} node {choice.removed}: root-count gap fails"
        )
    return size_psi, size_sub, holds


def end_node_weight_sets(m):
    """Type A_m, first node removed: torus-weight sets of the parabolic,
    of its intersection with the longest-element conjugate, and their
    difference.

    Returns three frozensets of simple-root-coefficient tuples.  The
    difference must be the m telescoping sums a_i + ... + a_m.
    """
    if m < 2:
        raise RankTooSmall("weight-set computation needs rank >= 2")
    rs = build_root_system(("A", m))
    pos = rs.positive_set
    lie_p = set(pos)
    for r in range(len(rs.roots)):
        if r not in pos and rs.coeffs[r][0] == 0:
            lie_p.add(r)
    w0 = longest_element(rs)
    w0_image = {w0.perm[r] for r in lie_p}
    lie_q = lie_p & w0_image
    diff = lie_p - lie_q
    expected = {
        tuple(0 if j < i else 1 for j in range(m)) for i in range(m)
    }
    got = {rs.coeffs[r] for r in diff}
    if got != expected or len(diff) != m:
        raise AssertionError(f"A{m}: weight-set difference is not the m tail sums")

    def as_coeffs(s):
        return frozenset(rs.coeffs[r] for r in s)

    return as_coeffs(lie_p), as_coeffs(lie_q), as_coeffs(diff)


def w0_negation_map(rs):
    """The permutation sigma with w0(a_i) = -a_{sigma(i)} in type A.

    Returns sigma as a dict on 1-based nodes and asserts sigma(i) = m+1-i.
    """
    if rs.spec.family != "A":
        raise ValueError("negation map is a type-A statement")
    m = rs.rank
    w0 = longest_element(rs)
    sigma = {}
    for i, si in enumerate(rs.simple_indices, start=1):
        img = w0.perm[si]
        target = rs.neg_index[img]
        j = rs.simple_indices.index(target) + 1
        sigma[i] = j
    if any(sigma[i] != m + 1 - i for i in sigma):
        raise AssertionError(f"A{m}: w0 does not reverse the simple roots")
    return sigma
