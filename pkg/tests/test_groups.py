import random

import pytest

from fanoterm.cyclo import ONE, root_of_unity
from fanoterm.groups import (
    BudgetExceeded,
    FinGroup,
    GroupId,
    OrderCapExceeded,
    ProjElem,
    UnidentifiedGroup,
    fingerprint,
    identify,
    quotient_group,
)
from fanoterm.linalg import MatC, diag, identity, perm_mat

W = root_of_unity(3, 1)


def perm_group(*image_lists, dim=None):
    d = dim or max(len(x) for x in image_lists)
    return FinGroup.generate([perm_mat(im, d) for im in image_lists])


S3 = lambda: perm_group([1, 0, 2], [1, 2, 0])
A4 = lambda: perm_group([1, 2, 0, 3], [1, 0, 3, 2])
C6 = lambda: perm_group([1, 2, 3, 4, 5, 0])


def test_projective_normalization():
    m = diag([W, W, W, ONE, ONE, ONE])
    scaled = m.scale(W)
    assert ProjElem(m) == ProjElem(scaled)
    first = next(e for row in ProjElem(scaled).mat.rows for e in row if not e.is_zero)
    assert first is ONE


def test_generate_identity_only():
    g = FinGroup.generate([identity(3)])
    assert g.n == 1


def test_generate_cap():
    with pytest.raises(OrderCapExceeded):
        perm_group_cap = FinGroup.generate([perm_mat([1, 2, 3, 4, 5, 6, 0], 7)], cap=5)


def test_element_order():
    g = S3()
    assert g.element_order(0) == 1
    orders = sorted(g.element_order(i) for i in range(g.n))
    assert orders == [1, 2, 2, 2, 3, 3]


def test_projective_order_of_scalar_power():
    # diag(w,w,w,1,1,1) has projective order 3 even though lifts differ by scalars
    g = FinGroup.generate([diag([W, W, W, ONE, ONE, ONE]), diag([ONE, W, W * W, ONE, ONE, ONE])])
    p1 = g.index_of(ProjElem(diag([W, W, W, ONE, ONE, ONE])))
    assert g.element_order(p1) == 3


def test_conjugacy_classes_trivial_and_abelian():
    t = FinGroup.generate([identity(2)])
    assert len(t.conjugacy_classes()) == 1
    c6 = C6()
    assert len(c6.conjugacy_classes()) == 6


def test_conjugacy_classes_a7(built):
    a7 = built("A7_perm")
    assert len(a7.conjugacy_classes()) == 9


def test_centralizer_and_normalizer():
    g = S3()
    ident_centralizer = g.centralizer(0)
    assert ident_centralizer.order == g.n
    # in a cyclic group, normalizer = centralizer = whole group
    c6 = C6()
    x = next(i for i in range(1, c6.n) if c6.element_order(i) == 6)
    assert c6.centralizer(x).order == 6
    assert c6.normalizer_of_cyclic(x).order == 6
    # C_G(g) is contained in N_G(<g>)
    for grp in (S3(), A4()):
        for i in range(grp.n):
            assert grp.centralizer(i).members <= grp.normalizer_of_cyclic(i).members


def test_subgroup_closure():
    g = S3()
    triv = g.subgroup(gens=[])
    assert triv.order == 1
    x3 = next(i for i in range(1, g.n) if g.element_order(i) == 3)
    assert g.subgroup(gens=[x3]).order == 3
    invs = [i for i in range(1, g.n) if g.element_order(i) == 2]
    assert g.subgroup(gens=invs).order == 6


def test_involution_closure_of_simple_group(built):
    l2 = built("L2_11")
    invs = [i for i in range(1, l2.n) if l2.element_order(i) == 2]
    assert l2.subgroup(gens=invs[:2]).order in (4, 6, 10, 12, 60, 660)
    assert l2.subgroup(gens=invs).order == 660


def test_quotients():
    c6 = C6()
    whole = c6.whole()
    assert quotient_group(whole, whole).n == 1
    c3 = c6.subgroup(gens=[next(i for i in range(1, 6) if c6.element_order(i) == 3)])
    q = quotient_group(whole, c3)
    assert q.n == 2
    s3 = S3()
    a3 = s3.subgroup(gens=[next(i for i in range(1, 6) if s3.element_order(i) == 3)])
    assert quotient_group(s3.whole(), a3).n == 2


def test_quotient_rejects_non_normal():
    s3 = S3()
    c2 = s3.subgroup(gens=[next(i for i in range(1, 6) if s3.element_order(i) == 2)])
    with pytest.raises(ValueError):
        quotient_group(s3.whole(), c2)


def test_quotient_identify_battery():
    c6 = C6()
    c3 = c6.subgroup(gens=[next(i for i in range(1, 6) if c6.element_order(i) == 3)])
    assert identify(quotient_group(c6.whole(), c3).view) == GroupId(2, 1)
    c2 = c6.subgroup(gens=[next(i for i in range(1, 6) if c6.element_order(i) == 2)])
    assert identify(quotient_group(c6.whole(), c2).view) == GroupId(3, 1)
    a4 = A4()
    v4 = a4.subgroup(gens=[i for i in range(1, 12) if a4.element_order(i) == 2])
    assert v4.order == 4
    assert identify(quotient_group(a4.whole(), v4).view) == GroupId(3, 1)


def test_subgroup_classes_s3():
    classes = S3().subgroup_conjugacy_classes()
    assert [c.rep.order for c in classes] == [1, 2, 3, 6]


def test_subgroup_classes_a4_contains_klein():
    classes = A4().subgroup_conjugacy_classes()
    assert [c.rep.order for c in classes] == [1, 2, 3, 4, 12]


def test_subgroup_classes_budget():
    with pytest.raises(BudgetExceeded):
        built = perm_group([1, 0, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5, 6, 0])
        built.subgroup_conjugacy_classes(budget=10)


def _oracle_subgroup_classes(group):
    """Independent brute force: closures of all one- and two-element
    generating sets, deduplicated by conjugacy."""
    view = group.view
    cyclic = {}
    for x in range(1, group.n):
        fs = view.closure([x])
        cyclic.setdefault(fs, x)
    subgroups = {frozenset((0,))} | set(cyclic)
    items = sorted(cyclic.items(), key=lambda kv: sorted(kv[0]))
    for i, (fs1, g1) in enumerate(items):
        for fs2, g2 in items[i + 1:]:
            subgroups.add(view.closure([g1, g2]))
    reps = set()
    seen = set()
    for fs in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
        if fs in seen:
            continue
        orbit = group.subgroup_orbit(fs)
        seen.update(orbit)
        reps.add(min(orbit, key=sorted))
    return reps


def _two_generated(group, members):
    view = group.view
    ms = sorted(members)
    target = len(members)
    for i, x in enumerate(ms):
        if x == 0:
            continue
        for y in ms[i:]:
            if len(view.bounded_closure([x, y], target + 1) or ()) == target:
                return True
    return target == 1


@pytest.mark.parametrize("key", ["Q8_S3", "A3_5"])
def test_subgroup_classes_match_oracle(built, key):
    # the oracle sees exactly the two-generated subgroups; the sweep must
    # find all of those, and anything extra must be certified as needing
    # three generators (so the oracle could not reach it by construction)
    group = built(key)
    classes = group.subgroup_conjugacy_classes(budget=1000)
    got = {c.rep.members for c in classes}
    oracle = _oracle_subgroup_classes(group)
    assert oracle <= got
    for extra in got - oracle:
        assert not _two_generated(group, extra)


def test_subgroup_classes_lagrange_and_nonconjugacy(built):
    group = built("A3_5")
    classes = group.subgroup_conjugacy_classes(budget=1000)
    for c in classes:
        assert group.n % c.rep.order == 0
    # representatives are pairwise non-conjugate: orbits are disjoint
    all_sets = [s for c in classes for s in c.orbit]
    assert len(all_sets) == len(set(all_sets))
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            assert ci.rep.members not in cj.orbit


def test_subgroup_classes_deterministic(built):
    group = built("Q8_S3")
    a = group.subgroup_conjugacy_classes(budget=1000)
    b = group.subgroup_conjugacy_classes(budget=1000)
    assert [(c.index, sorted(c.rep.members)) for c in a] == [
        (c.index, sorted(c.rep.members)) for c in b
    ]


def test_generate_canonical_order_reproducible():
    g1 = S3()
    g2 = S3()
    assert [e.key for e in g1.elements] == [e.key for e in g2.elements]
    assert g1._perms == g2._perms


def test_fingerprint_separates_small_groups():
    fps = {name: fingerprint(g().view).tier1 for name, g in [("S3", S3), ("C6", C6), ("A4", A4)]}
    assert len(set(fps.values())) == 3


def test_identify_small():
    assert identify(FinGroup.generate([identity(2)]).view) == GroupId(1, 1)
    assert identify(S3().view) == GroupId(6, 1)
    assert identify(C6().view) == GroupId(6, 2)
    assert identify(A4().view) == GroupId(12, 3)


def test_identify_large_order_convention(built):
    a7 = built("A7_perm")
    assert identify(a7.view) == GroupId(2520, 0)


def test_identify_unknown_is_sentinel():
    # C17 is deliberately outside the catalog
    g = FinGroup.generate([perm_mat(list(range(1, 17)) + [0], 17)])
    out = identify(g.view)
    assert isinstance(out, UnidentifiedGroup)
    assert out.order == 17
    assert str(out) == "(17,?)"


def test_index_of_rejects_foreign_elements():
    g = S3()
    with pytest.raises(KeyError):
        g.index_of(ProjElem(perm_mat([1, 2, 3, 0], 4)))
