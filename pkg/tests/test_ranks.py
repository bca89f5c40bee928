import random

import pytest

from fanoterm.catalog import build_group
from fanoterm.cyclo import ONE, root_of_unity
from fanoterm.groups import GroupId, ProjElem
from fanoterm.invariants import detect_l3, singular_invariants
from fanoterm.linalg import diag, perm_mat
from fanoterm.ranks import (
    fermat_coinvariant_rank,
    fermat_invariant_dim,
    monomial_parts,
    rank_candidates,
    resolve_rank,
)

W = root_of_unity(3, 1)
W2 = W * W


def _exps(es):
    return diag([(ONE, W, W2)[e] for e in es])


@pytest.fixture(scope="module")
def fermat():
    return build_group("C3_4_A6")


def _sub(fermat, mats):
    return fermat.subgroup(gens=[fermat.index_of(ProjElem(m)) for m in mats])


def test_rank_candidates_examples():
    assert rank_candidates(GroupId(660, 13)) == {20}
    assert rank_candidates(GroupId(3, 1)) == {12, 18}
    assert rank_candidates(GroupId(2, 1)) == {8}
    assert rank_candidates(GroupId(999, 999)) == frozenset()


def test_monomial_parts():
    m = _exps((0, 1, 0, 0, 0, 2)) * perm_mat([1, 2, 0, 3, 4, 5])
    parts = monomial_parts(m)
    assert parts is not None
    pi, scal = parts
    assert pi == (1, 2, 0, 3, 4, 5)
    from fanoterm.linalg import MatC
    from fanoterm.cyclo import rational

    dense = MatC([[ONE] * 6 for _ in range(6)])
    assert monomial_parts(dense) is None


def test_fermat_dim_trivial(fermat):
    from fanoterm.ranks import fermat_invariant_rank

    h = fermat.subgroup(gens=[])
    assert fermat_invariant_dim(h) == 20
    assert fermat_invariant_rank(h) == 23
    assert fermat_coinvariant_rank(h) == 0


def test_fermat_dim_codim2_c3(fermat):
    from fanoterm.ranks import fermat_invariant_rank

    h = _sub(fermat, [_exps((0, 0, 0, 1, 1, 1))])
    assert fermat_invariant_dim(h) == 2
    assert fermat_invariant_rank(h) == 5
    assert fermat_coinvariant_rank(h) == 18


def test_fermat_rank_c3_cubed_with_four_l3(fermat):
    # a diagonal C3^3 containing four codimension-2 subgroups is pinned to
    # coinvariant rank 20 by the bound, and the trace agrees exactly
    from fanoterm.groups import GroupId, identify
    from fanoterm.invariants import detect_l3

    h = _sub(fermat, [_exps((0, 0, 0, 0, 2, 1)), _exps((0, 0, 0, 2, 0, 1)),
                      _exps((0, 0, 2, 0, 0, 1))])
    assert h.order == 27
    assert identify(h.view) == GroupId(27, 5)
    l3 = detect_l3(fermat)
    assert sum(1 for fs in l3.subgroups if fs <= h.members) == 4
    assert fermat_coinvariant_rank(h) == 20


def test_1944_full_group_has_even_normalizer_witness():
    # the unique codimension-2 C3 of the order-1944 group is normalized,
    # but not centralized, by an even-order element: n31 = 1 for the
    # whole group
    group = build_group("G1944")
    l3 = detect_l3(group)
    _, n3s, n3, n31, n32 = singular_invariants(group.whole(), l3)
    assert (n3s, n3, n31, n32) == (1, 1, 1, 0)


def test_fermat_dim_g1_g2(fermat):
    # the two non-conjugate order-108 monomial groups separating ranks 19/20
    g = _exps((0, 0, 0, 1, 1, 1))
    a = _exps((0, 0, 0, 0, 1, 2)) * perm_mat([1, 2, 0, 3, 4, 5])
    b = _exps((0, 2, 1, 0, 0, 0)) * perm_mat([0, 1, 2, 4, 5, 3])
    c = perm_mat([3, 4, 5, 0, 2, 1])
    g1 = _sub(fermat, [g, a, b, c])
    assert g1.order == 108
    assert fermat_invariant_dim(g1) == 1
    assert fermat_coinvariant_rank(g1) == 19
    # rank-20 companion: three diagonals and a block-swapping 4-cycle
    d1 = _exps((0, 0, 0, 0, 2, 1))
    d2 = _exps((0, 0, 0, 2, 0, 1))
    d3 = _exps((0, 0, 2, 0, 0, 1))
    s = perm_mat([1, 0, 4, 5, 3, 2])
    g2 = _sub(fermat, [d1, d2, d3, s])
    assert g2.order == 108
    assert fermat_invariant_dim(g2) == 0
    assert fermat_coinvariant_rank(g2) == 20
    from fanoterm.groups import fingerprint

    assert fingerprint(g1.view).tier1 == fingerprint(g2.view).tier1
    assert g1.members != g2.members


def test_burnside_integrality_random_subgroups(fermat):
    rng = random.Random(2024)
    l3 = detect_l3(fermat)
    for _ in range(25):
        gens = [rng.randrange(1, fermat.n) for _ in range(2)]
        members = fermat.view.bounded_closure(gens, 3000)
        if members is None:
            continue
        h = fermat.subgroup(members=members)
        dim = fermat_invariant_dim(h)  # raises unless an exact integer in range
        assert 0 <= dim <= 20
        n3 = sum(1 for fs in l3.subgroups if fs <= h.members)
        rank = 20 - dim
        if n3 >= 1:
            assert rank >= 18
        if n3 >= 2:
            assert rank == 20


def test_fermat_rank_monotonicity(fermat):
    rng = random.Random(7)
    view = fermat.view
    for _ in range(15):
        x = rng.randrange(1, fermat.n)
        y = rng.randrange(1, fermat.n)
        inner = view.bounded_closure([x], 3000)
        outer = view.bounded_closure([x, y], 3000)
        if inner is None or outer is None:
            continue
        r_in = fermat_coinvariant_rank(fermat.subgroup(members=inner))
        r_out = fermat_coinvariant_rank(fermat.subgroup(members=outer))
        assert r_in <= r_out


def test_resolve_rank_overlay_and_singleton(fermat):
    # C2 anywhere resolves through the unique table row
    group = build_group("L2_11")
    inv = next(i for i in range(1, group.n) if group.element_order(i) == 2)
    h = group.subgroup(gens=[inv])
    rr = resolve_rank(h, "L2_11", GroupId(2, 1), 0, use_fermat=False)
    assert rr.rank == 8 and rr.method == "table"
    # the 1944 ambient's codimension-2 C3 resolves through the overlay
    g1944 = build_group("G1944")
    l3 = detect_l3(g1944)
    assert l3.count == 1
    h3 = g1944.subgroup(members=l3.subgroups[0])
    rr = resolve_rank(h3, "G1944", GroupId(3, 1), 1, use_fermat=False)
    assert rr.rank == 18 and rr.method == "overlay"
    # unresolved candidates propagate as a set
    rr = resolve_rank(h3, "L2_11", GroupId(3, 1), 0, use_fermat=False)
    assert rr.rank is None and rr.candidates == (12, 18)


def test_fermat_resolution_checks_table_membership(fermat):
    l3 = detect_l3(fermat)
    h = fermat.subgroup(members=l3.subgroups[0])
    rr = resolve_rank(h, "C3_4_A6", GroupId(3, 1), 1, use_fermat=True)
    assert rr.rank == 18 and rr.method == "monomial-trace"
