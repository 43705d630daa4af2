import itertools

from hypothesis import given, settings, strategies as st

from stonegroupoid.groups import (SMALL_GROUP_COUNTS, FiniteGroup, alternating, cyclic, dicyclic, dihedral,
                                  direct_product, find_isomorphism, from_presentation, is_isomorphism,
                                  normal_subgroups, quaternion, small_groups, subgroups, symmetric)


def test_library_axioms_and_counts():
    lib = small_groups(24)
    counts = {}
    for name, g in lib:
        assert g.violations() == [], name
        counts[g.order] = counts.get(g.order, 0) + 1
    assert counts == SMALL_GROUP_COUNTS


def test_library_pairwise_non_isomorphic():
    by_order = {}
    for name, g in small_groups(24):
        by_order.setdefault(g.order, []).append(g)
    for gs in by_order.values():
        for a, b in itertools.combinations(gs, 2):
            assert find_isomorphism(a, b) is None


def test_presentations_match_constructions():
    assert find_isomorphism(from_presentation("ab", "a^3, b^2, b a b a"), symmetric(3)) is not None
    assert find_isomorphism(dicyclic(2), quaternion()) is not None
    assert find_isomorphism(from_presentation("ab", "a^2, b^2, [a,b]"), direct_product(cyclic(2), cyclic(2)))


def test_isomorphism_is_an_isomorphism():
    f = find_isomorphism(dihedral(4), permutation_d4())
    assert f is not None and is_isomorphism(dihedral(4), permutation_d4(), f)


def permutation_d4():
    from stonegroupoid.groups import permutation_group
    return permutation_group(4, [(1, 2, 3, 0), (3, 2, 1, 0)])


def test_subgroup_counts():
    assert len(subgroups(symmetric(3))) == 6
    assert len(normal_subgroups(symmetric(3))) == 3
    assert len(subgroups(alternating(4))) == 10
    assert len(normal_subgroups(alternating(4))) == 3


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([g for _, g in small_groups(16)]), st.data())
def test_quotients_are_groups_with_homomorphic_projection(g, data):
    N = data.draw(st.sampled_from(normal_subgroups(g)))
    q, proj = g.quotient(N)
    assert q.violations() == []
    assert q.order * len(N) == g.order
    for a in range(g.order):
        for b in range(g.order):
            assert proj[g.table[a][b]] == q.table[proj[a]][proj[b]]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([g for _, g in small_groups(24)]), st.randoms(use_true_random=False))
def test_relabelled_group_is_found_isomorphic(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    inv = [0] * g.order
    for i, p in enumerate(perm):
        inv[p] = i
    table = [[perm[g.table[inv[a]][inv[b]]] for b in range(g.order)] for a in range(g.order)]
    h = FiniteGroup.from_table(table)
    f = find_isomorphism(g, h)
    assert f is not None and is_isomorphism(g, h, f)
