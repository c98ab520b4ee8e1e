"""Tits-system (BN-pair) verification in explicit finite groups.

A candidate is a triple (G, B, N) of a finite group and two subgroups.
Derived data: H = B ∩ N, the Weyl group W = N/H as canonical coset
representatives, the distinguished generators S (the nontrivial classes
w for which B ∪ BwB is a subgroup), lengths and canonical words over S,
and the B,B-double-coset partition of G.  The axiom checker verifies,
exhaustively

  T1  B and N generate G,
  T2  S generates W and consists of involutions,
  T3  sBw ⊆ BwB ∪ BswB for all s in S, w in W,
  T4  sBs ≠ B for all s in S,

plus that the map w -> BwB is a bijection onto the double cosets and
that B is its own normalizer.  Classification: a system is saturated
when H equals the intersection of all N-conjugates of B, weakly split
when B = H·Fit(B), and split when it is saturated and B = H ⋉ U for
some normal U inside Fit(B).

The weakly-split test uses only the Fitting subgroup because in a finite
group every nilpotent normal subgroup U of B lies inside Fit(B); so if
B = HU for some such U then B = H·Fit(B), and conversely Fit(B) itself
is a nilpotent normal witness.

Candidates are immutable once built (derived data is cached per
candidate), so distinct candidates can be checked in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    GroupTooLarge,
    HNotNormal,
    NoConjugatorFound,
    NotTwoTransitive,
    SubgroupNotFound,
)
from . import fingrp
from .fingrp import (
    FiniteGroup,
    central_quotient,
    closure,
    coset_action,
    element_order,
    fitting_subgroup,
    is_2transitive,
    is_normal,
    monomial_subgroup,
    normal_subgroups,
    setwise_stabilizer,
    special_linear_group,
    stabilizer,
    upper_triangular_subgroup,
)

DEFAULT_MAX_GROUP = 21000


@dataclass(eq=False)
class TitsSystemCandidate:
    G: FiniteGroup
    B: FiniteGroup
    N: FiniteGroup
    label: str = ""

    def __post_init__(self):
        for name, H in (("B", self.B), ("N", self.N)):
            if not H.is_subgroup_of(self.G):
                raise ValueError(f"{name} is not a subgroup of G")


@dataclass
class TitsReport:
    t1_generates: bool
    t2_holds: bool
    t3_holds: bool
    t4_holds: bool
    h_normal_in_n: bool
    bruhat_bijective: bool
    normalizer_is_b: bool
    weyl_order: int
    s_set: tuple
    cells: dict

    @property
    def passed(self):
        return (
            self.t1_generates
            and self.t2_holds
            and self.t3_holds
            and self.t4_holds
            and self.h_normal_in_n
            and self.bruhat_bijective
            and self.normalizer_is_b
        )

    def to_record(self):
        return {
            "t1_generates": self.t1_generates,
            "t2_holds": self.t2_holds,
            "t3_holds": self.t3_holds,
            "t4_holds": self.t4_holds,
            "h_normal_in_n": self.h_normal_in_n,
            "bruhat_bijective": self.bruhat_bijective,
            "normalizer_is_b": self.normalizer_is_b,
            "weyl_order": self.weyl_order,
            "s_set": list(self.s_set),
            "cells": {k: v for k, v in sorted(self.cells.items())},
            "pass": self.passed,
        }


@dataclass
class ClassificationFlags:
    saturated: bool
    weakly_split: bool
    split: bool
    witness_u: FiniteGroup | None = field(default=None, compare=False)

    def to_record(self):
        return {
            "saturated": self.saturated,
            "weakly_split": self.weakly_split,
            "split": self.split,
            "witness_u_order": self.witness_u.order if self.witness_u else None,
        }


def derive_weyl(c):
    """H = B ∩ N and one canonical representative per coset of H in N.

    H must be normal in N (raises HNotNormal otherwise); representatives
    are the least element of each coset, sorted.
    """
    H = c.G.subgroup(c.B.elemset & c.N.elemset)
    if not is_normal(H, c.N):
        raise HNotNormal("B ∩ N is not normal in N")
    mul = c.G.ops.mul
    rep_of = {}
    reps = []
    for n in c.N.elements:
        if n in rep_of:
            continue
        coset = sorted(mul(n, h) for h in H.elements)
        r = coset[0]
        reps.append(r)
        for x in coset:
            rep_of[x] = r
    return H, tuple(sorted(reps))


class _Derived:
    """Everything the checks share: Weyl quotient, S, lengths, cells."""

    __slots__ = (
        "c", "H", "reps", "rep_of", "identity_rep", "cell_of", "cell_sets",
        "s_reps", "lengths", "words",
    )

    def __init__(self, c):
        self.c = c
        mul = c.G.ops.mul
        self.H, self.reps = derive_weyl(c)
        rep_of = {}
        for n in c.N.elements:
            coset = sorted(mul(n, h) for h in self.H.elements)
            for x in coset:
                rep_of[x] = coset[0]
        self.rep_of = rep_of
        self.identity_rep = rep_of[c.G.ops.identity]
        self._build_cells()
        self._find_s()
        self._word_bfs()

    def wmul(self, r1, r2):
        return self.rep_of[self.c.G.ops.mul(r1, r2)]

    def _build_cells(self):
        """Double cosets B w B for each Weyl representative."""
        mul = self.c.G.ops.mul
        belems = self.c.B.elements
        cell_of = {}
        cell_sets = {}
        for w in self.reps:
            if w in cell_of:
                cell_sets[w] = None  # merged into an earlier class
                continue
            left = {mul(b, w) for b in belems}
            cell = set()
            for x in left:
                for b in belems:
                    cell.add(mul(x, b))
            cell_sets[w] = frozenset(cell)
            for x in cell:
                if x not in cell_of:
                    cell_of[x] = w
        self.cell_of = cell_of
        self.cell_sets = cell_sets

    def _find_s(self):
        """S = nontrivial classes w with B ∪ BwB closed under products.

        B ∪ BwB is closed iff every product w·b·w stays in B ∪ BwB,
        because (BwB)(BwB) is the union of the B(wbw)B over b in B.
        """
        mul = self.c.G.ops.mul
        e = self.identity_rep
        out = []
        for w in self.reps:
            if w == e:
                continue
            ok = True
            for b in self.c.B.elements:
                cls = self.cell_of.get(mul(mul(w, b), w))
                if cls is None or (cls != e and cls != w):
                    ok = False
                    break
            if ok:
                out.append(w)
        self.s_reps = tuple(out)

    def _word_bfs(self):
        """Lengths and lexicographically least words over S for each class."""
        lengths = {self.identity_rep: 0}
        words = {self.identity_rep: ()}
        frontier = [self.identity_rep]
        while frontier:
            nxt = []
            for w in frontier:
                for k, s in enumerate(self.s_reps, start=1):
                    u = self.wmul(s, w)
                    if u not in lengths:
                        lengths[u] = lengths[w] + 1
                        words[u] = (k,) + words[w]
                        nxt.append(u)
            frontier = nxt
        # Prefer the lexicographically least among shortest words.
        changed = True
        while changed:
            changed = False
            for w in lengths:
                for k, s in enumerate(self.s_reps, start=1):
                    u = self.wmul(s, w)
                    if u in lengths and lengths[u] == lengths[w] + 1:
                        cand = (k,) + words[w]
                        if cand < words[u]:
                            words[u] = cand
                            changed = True
        self.lengths = lengths
        self.words = words


_derived_cache = {}


def _derived(c):
    got = _derived_cache.get(id(c))
    if got is None or got.c is not c:
        got = _Derived(c)
        _derived_cache[id(c)] = got
    return got


def find_S(c):
    """The distinguished generators, as canonical coset representatives."""
    return _derived(c).s_reps


def check_axioms(c, max_group=DEFAULT_MAX_GROUP):
    """Exhaustive T1-T4 verification plus Bruhat and normalizer checks."""
    if c.G.order > max_group:
        raise GroupTooLarge(
            f"|G| = {c.G.order} exceeds the exhaustive-check cap {max_group}"
        )
    mul, inv = c.G.ops.mul, c.G.ops.inv
    try:
        d = _derived(c)
    except HNotNormal:
        return TitsReport(
            t1_generates=False, t2_holds=False, t3_holds=False, t4_holds=False,
            h_normal_in_n=False, bruhat_bijective=False, normalizer_is_b=False,
            weyl_order=0, s_set=(), cells={},
        )
    e = d.identity_rep

    gen = closure(c.G.ops, c.B.generators() + c.N.generators())
    t1 = len(gen) == c.G.order and set(gen) == set(c.G.elements)

    gen_w = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in d.s_reps:
                u = d.wmul(s, w)
                if u not in gen_w:
                    gen_w.add(u)
                    nxt.append(u)
        frontier = nxt
    t2 = gen_w == set(d.reps) and all(d.wmul(s, s) == e for s in d.s_reps)

    distinct_cells = {d.cell_of.get(w) for w in d.reps}
    covered = sum(len(s) for s in d.cell_sets.values() if s is not None)
    bruhat = (
        None not in distinct_cells
        and len(distinct_cells) == len(d.reps)
        and all(d.cell_of.get(w) == w for w in d.reps)
        and covered == c.G.order
    )

    t3 = True
    for s in d.s_reps:
        for w in d.reps:
            sw = d.wmul(s, w)
            for b in c.B.elements:
                cls = d.cell_of.get(mul(mul(s, b), w))
                if cls != w and cls != sw:
                    t3 = False
                    break
            if not t3:
                break
        if not t3:
            break

    t4 = all(
        any(mul(mul(s, b), s) not in c.B.elemset for b in c.B.elements)
        for s in d.s_reps
    )

    normalizer = True
    bset = c.B.elemset
    bgens = c.B.generators()
    for g in c.G.elements:
        if g in bset:
            continue
        gi = inv(g)
        if all(mul(mul(g, b), gi) in bset for b in bgens):
            normalizer = False
            break

    cells = {}
    if bruhat:
        for w in d.reps:
            key = " ".join(str(x) for x in d.words[w])
            cells[key] = len(d.cell_sets[w])

    return TitsReport(
        t1_generates=t1,
        t2_holds=t2,
        t3_holds=t3,
        t4_holds=t4,
        h_normal_in_n=True,
        bruhat_bijective=bruhat,
        normalizer_is_b=normalizer,
        weyl_order=len(d.reps),
        s_set=tuple(c.G.ops.fmt(s) for s in d.s_reps),
        cells=cells,
    )


def bruhat_cells(c):
    """Map from canonical S-word of each Weyl class to its cell size."""
    d = _derived(c)
    return {
        " ".join(str(x) for x in d.words[w]): len(d.cell_sets[w])
        for w in d.reps
        if d.cell_sets[w] is not None
    }


def weyl_length_census(c):
    """Multiset of S-word lengths over the Weyl classes, as a sorted tuple."""
    d = _derived(c)
    return tuple(sorted(d.lengths[w] for w in d.reps))


def order_of_product(c, s1, s2):
    """Order of the product of two Weyl classes."""
    d = _derived(c)
    prod = d.wmul(s1, s2)
    cur = prod
    n = 1
    while cur != d.identity_rep:
        cur = d.wmul(cur, prod)
        n += 1
    return n


def star_property_check(c):
    """Length-vs-product law for double cosets, exhaustively.

    For every s in S and w in W: if l(sw) > l(w) then BsB·BwB = BswB,
    and otherwise BsB·BwB is exactly the union of BwB and BswB (two
    distinct cosets).  Products are read off the cell partition via
    BsB·BwB = union of the B(sbw)B over b in B.
    """
    d = _derived(c)
    mul = c.G.ops.mul
    for s in d.s_reps:
        for w in d.reps:
            sw = d.wmul(s, w)
            got = {d.cell_of.get(mul(mul(s, b), w)) for b in c.B.elements}
            if d.lengths[sw] > d.lengths[w]:
                expected = {sw}
            else:
                expected = {w, sw}
                if w == sw:
                    return False
            if got != expected:
                return False
    return True


def intersection_identity_check(c):
    """H equals both the intersection of all W-conjugates of B and
    B ∩ w0 B w0^{-1}, with w0 the unique longest Weyl class."""
    d = _derived(c)
    mul, inv = c.G.ops.mul, c.G.ops.inv
    maxlen = max(d.lengths.values())
    longest = [w for w in d.reps if d.lengths[w] == maxlen]
    if len(longest) != 1:
        return False
    w0 = longest[0]

    def conj_b(n):
        ni = inv(n)
        return {mul(mul(n, b), ni) for b in c.B.elements}

    total = set(c.B.elemset)
    for w in d.reps:
        total &= conj_b(w)
    first = total == d.H.elemset
    second = (c.B.elemset & conj_b(w0)) == d.H.elemset
    return first and second


def classify(c):
    """Saturated / weakly-split / split flags with a splitting witness.

    Split search tries U = Fit(B) first, then every normal subgroup of B
    inside Fit(B) in decreasing order; any subgroup of Fit(B) is
    nilpotent, so each candidate that complements H is a valid witness.
    """
    d = _derived(c)
    mul, inv = c.G.ops.mul, c.G.ops.inv
    hset = d.H.elemset

    inter = set(c.B.elemset)
    for n in c.N.elements:
        ni = inv(n)
        inter &= {mul(mul(n, b), ni) for b in c.B.elements}
    saturated = inter == hset

    fit = fitting_subgroup(c.B)
    product = {mul(h, u) for h in d.H.elements for u in fit.elements}
    weakly = product == c.B.elemset

    split = False
    witness = None
    if saturated and weakly:
        if len(hset & fit.elemset) == 1:
            split = True
            witness = fit
        else:
            for U in sorted(
                normal_subgroups(c.B), key=lambda u: -u.order
            ):
                if not U.elemset <= fit.elemset:
                    continue
                if len(hset & U.elemset) != 1:
                    continue
                prod = {mul(h, u) for h in d.H.elements for u in U.elements}
                if prod == c.B.elemset:
                    split = True
                    witness = U
                    break
    return ClassificationFlags(saturated=saturated, weakly_split=weakly, split=split, witness_u=witness)


def weakly_split_bruteforce(c):
    """Oracle: search every normal subgroup of B for a nilpotent one U
    with B = HU.  Intended for |B| small."""
    d = _derived(c)
    mul = c.G.ops.mul
    for U in normal_subgroups(c.B):
        if not fingrp.is_nilpotent(U):
            continue
        prod = {mul(h, u) for h in d.H.elements for u in U.elements}
        if prod == c.B.elemset:
            return True
    return False


# ---------------------------------------------------------------------------
# Constructors for the example systems


def standard_sl_system(n, p, cap=fingrp.SL_ENUM_CAP):
    """(SL_n(F_p), upper-triangular B, monomial N).  Cached per (n, p)."""
    got = _standard_cache.get((n, p))
    if got is not None:
        return got
    G = special_linear_group(n, p, cap=cap)
    B = upper_triangular_subgroup(G)
    N = monomial_subgroup(G)
    c = TitsSystemCandidate(G, B, N, label=f"sl-{n}-{p}")
    _standard_cache[(n, p)] = c
    return c


_standard_cache = {}


def rank1_from_2transitive(action, x, xp):
    """Rank-1 system from a 2-transitive action: B = Stab(x),
    N = setwise stabilizer of {x, x'}."""
    if x == xp:
        raise ValueError("the two base points must differ")
    if not is_2transitive(action):
        raise NotTwoTransitive("the action is not 2-transitive")
    B = stabilizer(action, x)
    N = setwise_stabilizer(action, (x, xp))
    return TitsSystemCandidate(action.group, B, N, label="rank1-2transitive")


def projective_rank1_system(n, p):
    """Rank-1 system of SL_{n}(F_p) acting on P^{n-1}(F_p)."""
    action = fingrp.projective_space_action(n - 1, p)
    x, xp = action.points[0], action.points[1]
    c = rank1_from_2transitive(action, x, xp)
    c.label = f"projective-{n}-{p}"
    return c


def affine_rank1_system(p):
    """Rank-1 system of the affine group of F_p acting on the line."""
    action = fingrp.affine_line_action(p)
    c = rank1_from_2transitive(action, 0, p - 1)
    c.label = f"affine-{p}"
    return c


def sl_rank1_column_system(n, p):
    """Rank-1 system of SL_n(F_p) from the two column stabilizers.

    B fixes the line through the first basis vector (first column zero
    below the top), B' the line through the last; N = H ∪ gH for a found
    g swapping the two lines, which conjugates B onto B'.
    """
    G = special_linear_group(n, p)
    B_members = [m for m in G.elements if all(m[i][0] == 0 for i in range(1, n))]
    Bp_members = [m for m in G.elements if all(m[i][n - 1] == 0 for i in range(n - 1))]
    B = G.subgroup(B_members)
    Bp = G.subgroup(Bp_members)
    H = G.subgroup(B.elemset & Bp.elemset)
    mul, inv = G.ops.mul, G.ops.inv
    g = next(
        (
            m
            for m in G.elements
            if all(m[i][0] == 0 for i in range(n - 1))
            and all(m[i][n - 1] == 0 for i in range(1, n))
        ),
        None,
    )
    if g is None:
        raise NoConjugatorFound("no element swaps the two coordinate lines")
    gi = inv(g)
    conj = {mul(mul(g, b), gi) for b in B.elements}
    if conj != Bp.elemset:
        raise NoConjugatorFound("swap candidate does not conjugate B onto B'")
    N = G.subgroup(sorted(H.elemset | {mul(g, h) for h in H.elements}))
    return TitsSystemCandidate(G, B, N, label=f"sl-rank1-{n}-{p}")


def psl3_f2_nonstandard_system():
    """A rank-1 system in PSL_3(F_2) on 8 points whose B has order 21.

    Searches for an order-21 subgroup (the normalizer of a Sylow
    7-subgroup), takes the coset action on its 8 cosets, checks
    2-transitivity, builds the rank-1 system, and classifies it.
    """
    G = central_quotient(special_linear_group(3, 2))
    seed7 = next(
        (x for x in G.elements if element_order(G.ops, x) == 7), None
    )
    if seed7 is None:
        raise SubgroupNotFound("no element of order 7")
    mul, inv = G.ops.mul, G.ops.inv
    p7 = set(closure(G.ops, [seed7]))
    K = None
    for y in G.elements:
        if element_order(G.ops, y) != 3:
            continue
        yi = inv(y)
        if {mul(mul(y, x), yi) for x in p7} == p7:
            cand = closure(G.ops, [seed7, y])
            if len(cand) == 21:
                K = G.subgroup(cand)
                break
    if K is None:
        raise SubgroupNotFound("no order-21 subgroup found")
    action = coset_action(G, K)
    if len(action.points) != 8:
        raise SubgroupNotFound("coset action is not on 8 points")
    x = min(K.elements)
    xp = next(pt for pt in action.points if pt != x)
    c = rank1_from_2transitive(action, x, xp)
    c.label = "psl3f2-nonstandard"
    flags = classify(c)
    return c, flags


def cell_size_formula_check(n, p):
    """Every Bruhat cell of the standard SL_n system has size p^l(w)·|B|,
    the sizes sum to |G|, and the length census matches the Weyl group of
    the type-A root system of rank n-1."""
    from .rootsys import build_root_system
    from .weyl import all_elements

    c = standard_sl_system(n, p)
    d = _derived(c)
    total = 0
    for w in d.reps:
        size = len(d.cell_sets[w])
        if size != p ** d.lengths[w] * c.B.order:
            return False
        total += size
    if total != c.G.order or total != fingrp.sl_order(n, p):
        return False
    if n >= 2:
        rs = build_root_system(("A", n - 1))
        census = sorted(all_elements(rs).values())
        if census != sorted(d.lengths[w] for w in d.reps):
            return False
        if c.B.order * sum(p**l for l in census) != c.G.order:
            return False
    return True
