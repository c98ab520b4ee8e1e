import pytest

from weylbn.errors import GroupTooLarge, HNotNormal, NotTwoTransitive
from weylbn.fingrp import (
    FiniteGroup,
    GroupAction,
    GroupOps,
    affine_line_action,
    coset_action,
    fitting_subgroup,
    projective_space_action,
    special_linear_group,
    strictly_upper_unipotent_subgroup,
    upper_triangular_subgroup,
)
from weylbn.titssys import (
    TitsSystemCandidate,
    affine_rank1_system,
    bruhat_cells,
    check_axioms,
    classify,
    cell_size_formula_check,
    derive_weyl,
    find_S,
    intersection_identity_check,
    order_of_product,
    projective_rank1_system,
    psl3_f2_nonstandard_system,
    rank1_from_2transitive,
    sl_rank1_column_system,
    standard_sl_system,
    star_property_check,
    weakly_split_bruteforce,
)


def test_derive_weyl_standard():
    c = standard_sl_system(3, 2)
    H, reps = derive_weyl(c)
    assert H.order == 1 and len(reps) == 6


def test_derive_weyl_rank1():
    c = projective_rank1_system(3, 2)
    H, reps = derive_weyl(c)
    assert len(reps) == 2
    assert c.N.order == 2 * H.order


def test_derive_weyl_trivial():
    c = standard_sl_system(2, 3)
    G = c.G
    triv = TitsSystemCandidate(G, G, G)
    H, reps = derive_weyl(triv)
    assert H.order == G.order and len(reps) == 1
    assert find_S(triv) == ()


def test_find_s_sizes():
    assert len(find_S(standard_sl_system(3, 2))) == 2
    assert len(find_S(projective_rank1_system(3, 2))) == 1


def test_axioms_standard_sl3f2():
    rep = check_axioms(standard_sl_system(3, 2))
    assert rep.passed
    assert sorted(rep.cells.values()) == [8, 16, 16, 32, 32, 64]
    assert sum(rep.cells.values()) == 168
    assert rep.weyl_order == 6


def test_axioms_standard_sl2f3():
    rep = check_axioms(standard_sl_system(2, 3))
    assert rep.passed
    assert sorted(rep.cells.values()) == [6, 18]


def test_axioms_failure_flagged():
    c = standard_sl_system(3, 2)
    B = upper_triangular_subgroup(c.G)
    broken = TitsSystemCandidate(c.G, B, B)
    rep = check_axioms(broken)
    assert not rep.t1_generates
    assert not rep.passed


def test_axioms_group_cap():
    with pytest.raises(GroupTooLarge):
        check_axioms(standard_sl_system(3, 3), max_group=100)


def test_star_property():
    assert star_property_check(standard_sl_system(3, 2))
    assert star_property_check(standard_sl_system(3, 3))
    assert star_property_check(standard_sl_system(2, 5))


def test_intersection_identity():
    c = standard_sl_system(3, 2)
    assert intersection_identity_check(c)
    H, _ = derive_weyl(c)
    assert H.order == 1
    c = standard_sl_system(3, 3)
    assert intersection_identity_check(c)
    H, _ = derive_weyl(c)
    assert H.order == 4
    # Rank 1: w0 = s, so the identity degenerates to H = B ∩ sBs.
    assert intersection_identity_check(projective_rank1_system(3, 2))


def test_classify_standard_split():
    c = standard_sl_system(3, 2)
    flags = classify(c)
    assert flags.saturated and flags.weakly_split and flags.split
    assert flags.witness_u.elemset == strictly_upper_unipotent_subgroup(c.G).elemset
    c = standard_sl_system(2, 5)
    flags = classify(c)
    assert flags.split
    assert flags.witness_u.elemset == strictly_upper_unipotent_subgroup(c.G).elemset


def test_classify_affine_split():
    c = affine_rank1_system(5)
    flags = classify(c)
    assert flags.saturated and flags.weakly_split and flags.split


def test_weakly_split_bruteforce_agreement():
    for c in (standard_sl_system(2, 3), standard_sl_system(2, 5), affine_rank1_system(7), standard_sl_system(3, 2)):
        assert classify(c).weakly_split == weakly_split_bruteforce(c)


def test_rank1_from_2transitive():
    act = projective_space_action(2, 2)
    c = rank1_from_2transitive(act, act.points[0], act.points[1])
    rep = check_axioms(c)
    assert rep.passed and rep.weyl_order == 2
    assert c.G.order // c.B.order == 7 and c.B.order == 24


def test_rank1_sl2f7():
    c = projective_rank1_system(2, 7)
    assert c.G.order // c.B.order == 8
    assert check_axioms(c).passed


def test_rank1_affine():
    c = affine_rank1_system(5)
    assert c.G.order // c.B.order == 5
    assert check_axioms(c).passed


def test_rank1_rejects_intransitive():
    ops = GroupOps(
        mul=lambda a, b: (a + b) % 4,
        inv=lambda a: (-a) % 4,
        identity=0,
        fmt=str,
        label="C4",
    )
    C4 = FiniteGroup(ops, range(4))
    act = GroupAction(C4, tuple(range(4)), lambda g, y: (g + y) % 4)
    with pytest.raises(NotTwoTransitive):
        rank1_from_2transitive(act, 0, 1)


@pytest.mark.parametrize("n,p,index", [(2, 2, 3), (2, 3, 4), (3, 2, 7)])
def test_column_system(n, p, index):
    c = sl_rank1_column_system(n, p)
    assert c.G.order // c.B.order == index
    assert check_axioms(c).passed
    proj = projective_rank1_system(n, p)
    assert sorted(bruhat_cells(c).values()) == sorted(bruhat_cells(proj).values())


def test_rank1_round_trip_same_cells():
    c = projective_rank1_system(3, 2)
    act = coset_action(c.G, c.B)
    x = next(p for p in act.points if act.apply(min(c.B.elements), p) == p and p in c.B.elemset)
    xp = next(p for p in act.points if p != x)
    again = rank1_from_2transitive(act, x, xp)
    assert sorted(bruhat_cells(again).values()) == sorted(bruhat_cells(c).values())


def test_psl3f2_nonstandard():
    c, flags = psl3_f2_nonstandard_system()
    assert c.B.order == 21
    assert c.G.order == 168 and c.G.order // c.B.order == 8
    rep = check_axioms(c)
    assert rep.passed and rep.weyl_order == 2
    assert flags.split and flags.saturated and flags.weakly_split
    assert fitting_subgroup(c.B).order == 7
    assert flags.witness_u.order == 7


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_cell_size_formula(n, p):
    assert cell_size_formula_check(n, p)


def test_coxeter_orders_vs_type_a():
    c = standard_sl_system(4, 2)
    S = find_S(c)
    assert len(S) == 3
    orders = sorted(
        order_of_product(c, S[i], S[j]) for i in range(3) for j in range(i + 1, 3)
    )
    # Type A3 pattern: two adjacent pairs of order 3, one commuting pair.
    assert orders == [2, 3, 3]
    for s in S:
        assert order_of_product(c, s, s) == 1


def test_classify_monotone_everywhere():
    systems = [
        standard_sl_system(2, 2),
        standard_sl_system(2, 3),
        standard_sl_system(3, 2),
        affine_rank1_system(3),
        projective_rank1_system(2, 5),
    ]
    for c in systems:
        flags = classify(c)
        if flags.split:
            assert flags.weakly_split and flags.saturated


def test_h_not_normal_raises():
    # Inside the symmetric-group-shaped SL2(F2), pick B, N with B ∩ N not
    # normal in N: B a point stabilizer, N the whole group.
    G = special_linear_group(2, 2)
    B = upper_triangular_subgroup(G)
    cand = TitsSystemCandidate(G, B, G)
    with pytest.raises(HNotNormal):
        derive_weyl(cand)
    assert not check_axioms(cand).h_normal_in_n
