"""Explicit finite groups: matrix groups over prime fields, their central
quotients, abstract subgroup machinery, and group actions.

Elements are canonical hashable encodings: a matrix is a tuple of row
tuples with entries reduced mod p, an affine-group element is a pair
(t, x).  A FiniteGroup bundles an element list with its multiplication
and inversion oracles; subgroups are FiniteGroups sharing the same
oracles, so set operations on elements are meaningful across them.
Groups are immutable after construction and safe to share.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import GroupTooLarge, NotTwoTransitive

SL_ENUM_CAP = 10**5
NILPOTENCY_CAP = 10**4
NORMAL_SUBGROUP_CAP = 4096


@dataclass(frozen=True)
class GroupOps:
    """Multiplication/inversion oracles plus metadata for one element kind."""

    mul: callable
    inv: callable
    identity: object
    fmt: callable
    label: str
    meta: tuple = ()


class FiniteGroup:
    """An explicit finite group (or subgroup) over shared GroupOps."""

    def __init__(self, ops, elements, gens=None, check=True):
        self.ops = ops
        self.elements = tuple(sorted(elements))
        self.elemset = frozenset(self.elements)
        self._gens = tuple(gens) if gens is not None else None
        if check:
            self._spot_check()

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.ops.identity

    def __contains__(self, x):
        return x in self.elemset

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.ops is other.ops
            and self.elemset == other.elemset
        )

    def __hash__(self):
        return hash((id(self.ops), self.elemset))

    def __repr__(self):
        return f"FiniteGroup({self.ops.label}, order={self.order})"

    def _spot_check(self):
        mul, inv = self.ops.mul, self.ops.inv
        e = self.ops.identity
        if e not in self.elemset:
            raise ValueError(f"{self.ops.label}: identity not a member")
        for x in self.elements:
            if inv(x) not in self.elemset:
                raise ValueError(f"{self.ops.label}: not closed under inversion")
        rng = random.Random(20160)
        n = len(self.elements)
        for _ in range(min(200, n * n)):
            a = self.elements[rng.randrange(n)]
            b = self.elements[rng.randrange(n)]
            if mul(a, b) not in self.elemset:
                raise ValueError(f"{self.ops.label}: not closed under multiplication")
            c = self.elements[rng.randrange(n)]
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                raise ValueError(f"{self.ops.label}: multiplication not associative")
        if mul(e, self.elements[0]) != self.elements[0]:
            raise ValueError(f"{self.ops.label}: identity law fails")

    def generators(self):
        """A small generating set (greedy; cached)."""
        if self._gens is None:
            gens = []
            current = {self.ops.identity}
            for x in self.elements:
                if x not in current:
                    gens.append(x)
                    current = set(closure(self.ops, gens))
                    if len(current) == self.order:
                        break
            self._gens = tuple(gens)
        return self._gens

    def subgroup(self, elements, gens=None):
        return FiniteGroup(self.ops, elements, gens=gens, check=False)

    def is_subgroup_of(self, other):
        return self.ops is other.ops and self.elemset <= other.elemset


def closure(ops, gens, cap=None):
    """BFS closure of ``gens`` under multiplication; sorted element tuple."""
    mul = ops.mul
    els = {ops.identity}
    els.update(gens)
    frontier = list(els)
    gens = list(dict.fromkeys(gens))
    while frontier:
        new = []
        for b in frontier:
            for a in gens:
                c = mul(a, b)
                if c not in els:
                    if cap is not None and len(els) >= cap:
                        raise GroupTooLarge(f"closure exceeds cap {cap}")
                    els.add(c)
                    new.append(c)
        frontier = new
    return tuple(sorted(els))


def subgroup_closure(G, gens, cap=None):
    return G.subgroup(closure(G.ops, gens, cap=cap), gens=tuple(gens))


def element_order(ops, x):
    e = ops.identity
    cur = x
    n = 1
    while cur != e:
        cur = ops.mul(cur, x)
        n += 1
    return n


def is_normal(H, G):
    """Conjugate H's generators by every element of G."""
    mul, inv = G.ops.mul, G.ops.inv
    hset = H.elemset
    hgens = H.generators()
    for g in G.elements:
        gi = inv(g)
        for h in hgens:
            if mul(mul(g, h), gi) not in hset:
                return False
    return True


def conjugacy_classes(G):
    """Conjugacy classes, each a frozenset, in a deterministic order."""
    mul, inv = G.ops.mul, G.ops.inv
    gens = G.generators()
    seen = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        cls = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = mul(mul(g, y), inv(g))
                    if z not in cls:
                        cls.add(z)
                        nxt.append(z)
            frontier = nxt
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def normal_subgroups(G, cap=NORMAL_SUBGROUP_CAP):
    """All normal subgroups, as closures of unions of conjugacy classes.

    Grown lattice-style: starting from the trivial subgroup, repeatedly
    close a known normal subgroup together with one more conjugacy class.
    Every normal subgroup is a union of classes, so this reaches all of
    them.  Raises GroupTooLarge past ``cap`` many subgroups.
    """
    classes = conjugacy_classes(G)
    trivial = frozenset({G.ops.identity})
    found = {trivial}
    worklist = [trivial]
    while worklist:
        base = worklist.pop()
        for cls in classes:
            if cls <= base:
                continue
            grown = frozenset(closure(G.ops, tuple(base | cls)))
            if grown not in found:
                if len(found) >= cap:
                    raise GroupTooLarge(f"more than {cap} normal subgroups")
                found.add(grown)
                worklist.append(grown)
    return [G.subgroup(els) for els in sorted(found, key=lambda s: (len(s), sorted(s)))]


def _normal_closure(G, seed):
    """Smallest subgroup containing ``seed`` and normal in G."""
    mul, inv = G.ops.mul, G.ops.inv
    gens = list(seed)
    current = closure(G.ops, gens)
    while True:
        new = []
        cset = frozenset(current)
        for g in G.generators():
            gi = inv(g)
            for h in gens:
                c = mul(mul(g, h), gi)
                if c not in cset:
                    new.append(c)
        if not new:
            return current
        gens.extend(new)
        current = closure(G.ops, gens)


def commutator_subgroup(G, H, L):
    """[H, L] inside G: normal closure of generator commutators."""
    mul, inv = G.ops.mul, G.ops.inv

    def comm(a, b):
        return mul(mul(a, b), mul(inv(a), inv(b)))

    seed = {comm(h, l) for h in H.generators() for l in L.generators()}
    seed.discard(G.ops.identity)
    if not seed:
        return G.subgroup((G.ops.identity,))
    # Close under multiplication and conjugation by H and L generators.
    mulcl = closure(G.ops, tuple(seed))
    conj_gens = tuple(H.generators()) + tuple(L.generators())
    while True:
        cset = frozenset(mulcl)
        new = []
        for g in conj_gens:
            gi = inv(g)
            for h in mulcl:
                c = mul(mul(g, h), gi)
                if c not in cset:
                    new.append(c)
        if not new:
            return G.subgroup(mulcl)
        mulcl = closure(G.ops, tuple(cset) + tuple(new))


def is_nilpotent(H, cap=NILPOTENCY_CAP):
    """Lower central series reaches the trivial subgroup."""
    if H.order > cap:
        raise GroupTooLarge(f"nilpotency check capped at {cap}")
    current = H
    while current.order > 1:
        nxt = commutator_subgroup(H, H, current)
        if nxt.order == current.order:
            return False
        current = nxt
    return True


def _p_core(G, p, classes):
    """Largest normal p-subgroup: greedy join of p-power-order classes."""
    candidates = [
        cls for cls in classes if _is_p_power(element_order(G.ops, next(iter(cls))), p)
    ]
    core = frozenset({G.ops.identity})
    changed = True
    while changed:
        changed = False
        for cls in candidates:
            if cls <= core:
                continue
            grown = frozenset(closure(G.ops, tuple(core | cls)))
            if _is_p_power(len(grown), p):
                core = grown
                changed = True
    return core


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fitting_subgroup(B, cap=NILPOTENCY_CAP):
    """Largest nilpotent normal subgroup: the join of the p-cores."""
    if B.order > cap:
        raise GroupTooLarge(f"Fitting computation capped at {cap}")
    classes = conjugacy_classes(B)
    gens = set()
    for p in _prime_factors(B.order) or [2]:
        gens |= _p_core(B, p, classes)
    fit = B.subgroup(closure(B.ops, tuple(gens)))
    if not is_nilpotent(fit, cap=cap) or not is_normal(fit, B):
        raise AssertionError("Fitting subgroup candidate fails its definition")
    return fit


def center(G):
    gens = G.generators()
    mul = G.ops.mul
    members = [z for z in G.elements if all(mul(z, g) == mul(g, z) for g in gens)]
    return G.subgroup(members)


# ---------------------------------------------------------------------------
# Group actions


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on an indexed point set."""

    group: FiniteGroup
    points: tuple
    apply: callable = field(compare=False)


def orbits(action):
    """Orbit partition, each orbit a frozenset, deterministic order."""
    gens = action.group.generators()
    apply = action.apply
    remaining = set(action.points)
    parts = []
    for x in action.points:
        if x not in remaining:
            continue
        orb = {x}
        remaining.discard(x)
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = apply(g, y)
                    if z in remaining:
                        remaining.discard(z)
                        orb.add(z)
                        nxt.append(z)
            frontier = nxt
        parts.append(frozenset(orb))
    return parts


def stabilizer(action, x):
    members = [g for g in action.group.elements if action.apply(g, x) == x]
    return action.group.subgroup(members)


def setwise_stabilizer(action, pair):
    pair = frozenset(pair)
    members = [
        g
        for g in action.group.elements
        if frozenset(action.apply(g, x) for x in pair) == pair
    ]
    return action.group.subgroup(members)


def is_2transitive(action):
    """Transitive with point stabilizer transitive on the rest."""
    pts = action.points
    if len(pts) < 2:
        return False
    parts = orbits(action)
    if len(parts) != 1:
        return False
    x = pts[0]
    stab = stabilizer(action, x)
    rest = tuple(p for p in pts if p != x)
    sub_action = GroupAction(stab, rest, action.apply)
    return len(orbits(sub_action)) == 1


# ---------------------------------------------------------------------------
# Matrix groups over prime fields


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def mat_mul(a, b, p):
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) % p for j in rng) for i in rng
    )


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(a, p):
    """Inverse mod p by Gauss-Jordan elimination."""
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] % p)
        m[c], m[piv] = m[piv], m[c]
        f = pow(m[c][c], p - 2, p)
        m[c] = [x * f % p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                g = m[i][c]
                m[i] = [(x - g * y) % p for x, y in zip(m[i], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def mat_det(a, p):
    n = len(a)
    m = [list(row) for row in a]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        f = pow(m[c][c], p - 2, p)
        for i in range(c + 1, n):
            if m[i][c]:
                g = m[i][c] * f % p
                m[i] = [(x - g * y) % p for x, y in zip(m[i], m[c])]
    return det % p


def mat_fmt(a):
    """Rows of mod-p digits, semicolon-separated: ((1,0),(0,1)) -> "10;01"."""
    return ";".join("".join(str(x) for x in row) for row in a)


def matrix_ops(n, p):
    return GroupOps(
        mul=lambda a, b: mat_mul(a, b, p),
        inv=lambda a: mat_inv(a, p),
        identity=mat_identity(n),
        fmt=mat_fmt,
        label=f"GL{n}(F{p})-kind",
        meta=("matrix", n, p),
    )


def sl_order(n, p):
    order = p ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= p**i - 1
    return order


def special_linear_group(n, p, cap=SL_ENUM_CAP):
    """SL_n(F_p), fully enumerated from elementary transvections.

    Instances are cached per (n, p); they are immutable and shared.
    """
    got = _sl_cache.get((n, p))
    if got is not None and sl_order(n, p) <= cap:
        return got
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    expected = sl_order(n, p)
    if expected > cap:
        raise GroupTooLarge(f"|SL_{n}(F_{p})| = {expected} exceeds cap {cap}")
    ops = matrix_ops(n, p)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
                m[i][j] = 1
                gens.append(tuple(tuple(row) for row in m))
    elements = closure(ops, gens, cap=cap + 1)
    if len(elements) != expected:
        raise AssertionError(
            f"enumerated {len(elements)} elements, order formula says {expected}"
        )
    G = FiniteGroup(ops, elements, gens=gens)
    _sl_cache[(n, p)] = G
    return G


_sl_cache = {}


def upper_triangular_subgroup(G):
    """Upper-triangular members of a matrix group."""
    members = [
        m for m in G.elements if all(m[i][j] == 0 for i in range(len(m)) for j in range(i))
    ]
    return G.subgroup(members)


def strictly_upper_unipotent_subgroup(G):
    """Unipotent upper-triangular members (1 on the diagonal)."""
    members = [
        m
        for m in G.elements
        if all(m[i][i] == 1 for i in range(len(m)))
        and all(m[i][j] == 0 for i in range(len(m)) for j in range(i))
    ]
    return G.subgroup(members)


def monomial_subgroup(G):
    """Members with exactly one nonzero entry in each row and column."""
    members = []
    for m in G.elements:
        n = len(m)
        rows_ok = all(sum(1 for x in row if x) == 1 for row in m)
        cols_ok = all(sum(1 for i in range(n) if m[i][j]) == 1 for j in range(n))
        if rows_ok and cols_ok:
            members.append(m)
    return G.subgroup(members)


def diagonal_subgroup(G):
    members = [
        m
        for m in G.elements
        if all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m)) if i != j)
    ]
    return G.subgroup(members)


def _scalar_canonical(m, p):
    return min(
        tuple(tuple(x * lam % p for x in row) for row in m) for lam in range(1, p)
    )


def central_quotient(G):
    """Quotient by the scalar subgroup, on canonical representatives.

    Each class is represented by the lexicographically least scalar
    multiple of its matrices, so equality of representatives is equality
    of classes and the quotient order times the scalar-subgroup order is
    the group order (asserted).
    """
    kind, n, p = G.ops.meta
    if kind != "matrix":
        raise ValueError("central quotient requires a matrix group")

    def canon(m):
        return _scalar_canonical(m, p)

    ops = GroupOps(
        mul=lambda a, b: canon(mat_mul(a, b, p)),
        inv=lambda a: canon(mat_inv(a, p)),
        identity=canon(mat_identity(n)),
        fmt=mat_fmt,
        label=f"P{G.ops.label}",
        meta=("pmatrix", n, p),
    )
    elements = sorted({canon(m) for m in G.elements})
    scalars = [
        m
        for m in G.elements
        if all(m[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        and len({m[i][i] for i in range(n)}) == 1
    ]
    if len(elements) * len(scalars) != G.order:
        raise AssertionError("quotient order times scalar count != group order")
    return FiniteGroup(ops, elements)


def projective_space_action(n, p):
    """SL_{n+1}(F_p) acting on the points of P^n(F_p).

    Points are nonzero column vectors canonicalized to the
    lexicographically least scalar multiple.
    """
    G = special_linear_group(n + 1, p)

    def canon(v):
        return min(tuple(x * lam % p for x in v) for lam in range(1, p))

    pts = sorted(
        {
            canon(v)
            for v in _all_vectors(n + 1, p)
            if any(v)
        }
    )

    def apply(m, v):
        w = tuple(sum(m[i][k] * v[k] for k in range(n + 1)) % p for i in range(n + 1))
        return canon(w)

    return GroupAction(G, tuple(pts), apply)


def _all_vectors(n, p):
    vs = [()]
    for _ in range(n):
        vs = [v + (x,) for v in vs for x in range(p)]
    return vs


def coset_action(G, B):
    """G acting by left multiplication on the left cosets of B.

    Each coset is named by its least element.
    """
    mul = G.ops.mul
    rep_of = {}
    reps = []
    for g in G.elements:
        if g in rep_of:
            continue
        coset = sorted(mul(g, b) for b in B.elements)
        r = coset[0]
        reps.append(r)
        for x in coset:
            rep_of[x] = r

    def apply(g, r):
        return rep_of[mul(g, r)]

    return GroupAction(G, tuple(sorted(reps)), apply)


def affine_group(p):
    """The semidirect product of F_p (translations) by F_p^* (scalings).

    Elements are pairs (t, x) acting on F_p by y -> x*y + t;
    (t1, x1)(t2, x2) = (t1 + x1*t2, x1*x2).
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    ops = GroupOps(
        mul=lambda a, b: ((a[0] + a[1] * b[0]) % p, a[1] * b[1] % p),
        inv=lambda a: (-pow(a[1], p - 2, p) * a[0] % p, pow(a[1], p - 2, p)),
        identity=(0, 1),
        fmt=lambda a: f"({a[0]},{a[1]})",
        label=f"F{p} affine",
        meta=("affine", p),
    )
    elements = [(t, x) for t in range(p) for x in range(1, p)]
    return FiniteGroup(ops, elements, gens=[(1, 1)] + ([(0, _primitive_root(p))] if p > 2 else []))


def affine_line_action(p):
    """The natural 2-transitive action of the affine group on F_p."""
    G = affine_group(p)

    def apply(g, y):
        return (g[1] * y + g[0]) % p

    return GroupAction(G, tuple(range(p)), apply)


def _primitive_root(p):
    for g in range(2, p):
        if element_order_modp(g, p) == p - 1:
            return g
    return 1


def element_order_modp(g, p):
    n = 1
    cur = g % p
    while cur != 1:
        cur = cur * g % p
        n += 1
    return n


def export_multiplication_csv(G, fh):
    """Write the full multiplication table as CSV (small groups only)."""
    import csv

    fmt = G.ops.fmt
    mul = G.ops.mul
    writer = csv.writer(fh)
    writer.writerow(["*"] + [fmt(g) for g in G.elements])
    for a in G.elements:
        writer.writerow([fmt(a)] + [fmt(mul(a, b)) for b in G.elements])
