import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import normal_wide_subgroupoids, skeletal_unions, van_dantzig_laws, wide_subgroupoids_brute
from stonegroupoid.constructions import (WideSubgroupoid, collapse, everything, kernel_basis_of_tower,
                                         normal_basis, normal_core, quotient, reconstruct, separating_family,
                                         separation_report, skeletal_replacement, units, van_dantzig,
                                         van_dantzig_trace_violations, wide_subgroupoids)
from stonegroupoid.errors import DomainError, NotNormalError, NotSkeletalError, SectionError
from stonegroupoid.finite_groupoid import (GroupoidFunctor, action_groupoid, disjoint_union, group_groupoid,
                                           internal_essentially_surjective, internal_fully_faithful,
                                           is_skeletal, pair_groupoid, trivial_groupoid, validate_groupoid,
                                           whitehead_equivalence)
from stonegroupoid.generators import cyclic_tower, random_groupoid, random_unit_neighborhood
from stonegroupoid.groups import cyclic, find_isomorphism, symmetric
from stonegroupoid.tower import GroupoidTower


def BZ(n):
    return group_groupoid(cyclic(n))


def S3_elements():
    g = symmetric(3)
    ident = g.identity
    invol = next(a for a in range(6) if a != ident and g.table[a][a] == ident)
    rot = next(a for a in range(6) if g.element_orders[a] == 3)
    return g, ident, invol, rot


# -- van Dantzig ---------------------------------------------------------------


def _closed_inside(G, U):
    """All unit-containing subsets of U closed under composition and inverse."""
    base = frozenset(G.unit)
    rest = sorted(U - base)
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            S = base | frozenset(extra)
            if not WideSubgroupoid(G, S).violations():
                yield S


def test_van_dantzig_examples():
    G = BZ(4)
    H, tr = van_dantzig(G, {0, 2})
    assert H.morphisms == {0, 2}
    assert max(_closed_inside(G, frozenset({0, 2})), key=len) == {0, 2}
    H, tr = van_dantzig(G, {0, 1, 3})
    assert H.morphisms == {0}
    # 1 + 1 = 2 leaves K, so 1 cannot join F
    assert tr.F == {0} and van_dantzig_trace_violations(G, tr) == []
    H, _ = van_dantzig(G, range(4))
    assert H.morphisms == set(range(4))


def test_van_dantzig_needs_units():
    with pytest.raises(DomainError):
        van_dantzig(BZ(4), {1, 2})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_van_dantzig_laws_hold(seed):
    rng = random.Random(seed)
    G = random_groupoid(rng, 24, 4)
    U = random_unit_neighborhood(G, rng)
    H, tr = van_dantzig(G, U)
    assert van_dantzig_trace_violations(G, tr) == []
    assert van_dantzig_laws(G, U, tr) == []
    assert H.violations() == [] and frozenset(G.unit) <= H.morphisms <= U


# -- skeleta -------------------------------------------------------------------


def test_skeleton_of_pair_groupoid():
    r = skeletal_replacement(pair_groupoid(2))
    assert r.skeleton.num_objects == 1 and r.skeleton.num_morphisms == 1
    assert r.section == (0,)
    assert internal_fully_faithful(r.inclusion) and internal_essentially_surjective(r.inclusion)


def test_skeleton_of_skeletal_is_identity():
    X = disjoint_union(BZ(2), BZ(3))
    r = skeletal_replacement(X)
    assert r.skeleton == X
    assert r.inclusion == GroupoidFunctor.identity(X)


def test_skeleton_of_swap_action():
    A = action_groupoid(cyclic(2), 2, lambda g, s: (s + g) % 2)
    r = skeletal_replacement(A)
    assert r.section == (0,)
    assert r.skeleton.num_morphisms == 1 and r.inclusion.mor_map == (A.unit[0],)


def test_tower_skeleton_compatible():
    from stonegroupoid.generators import translation_tower
    T = translation_tower(2, 3)
    S = skeletal_replacement(T)
    assert all(is_skeletal(G) and G.num_objects == 1 for G in S.tower.levels)
    for n, F in enumerate(T.transitions):
        assert F.obj_map[S.levels[n + 1].section[0]] == S.levels[n].section[0]


def test_tower_skeleton_rejects_non_surjective_pi0():
    D = disjoint_union(BZ(2), BZ(2))
    F = GroupoidFunctor(BZ(2), D, (0,), (0, 1))
    with pytest.raises(SectionError):
        skeletal_replacement(GroupoidTower((D, BZ(2)), (F,)))


# -- normal cores and quotients --------------------------------------------------


def test_normal_core_examples():
    g, e, t, r = S3_elements()
    X = group_groupoid(g)
    assert normal_core(X, WideSubgroupoid(X, {e, t})).morphisms == {e}
    A3 = frozenset({e, r, g.table[r][r]})
    assert normal_core(X, WideSubgroupoid(X, A3)).morphisms == A3
    assert normal_core(X, everything(X)).morphisms == set(range(6))


def test_normal_core_needs_skeletal_and_wide():
    with pytest.raises(NotSkeletalError):
        normal_core(pair_groupoid(2), everything(pair_groupoid(2)))
    with pytest.raises(DomainError):
        normal_core(BZ(4), WideSubgroupoid(BZ(4), {0, 1}))


def test_quotient_examples():
    q = quotient(BZ(4), WideSubgroupoid(BZ(4), {0, 2}))
    assert q.quotient.num_morphisms == 2 and validate_groupoid(q.quotient).ok
    assert find_isomorphism(group_groupoid_iso(q.quotient), cyclic(2)) is not None
    q = quotient(BZ(4), units(BZ(4)))
    assert whitehead_equivalence(q.projection) and len(set(q.projection.mor_map)) == 4
    D = disjoint_union(BZ(2), BZ(2))
    q = quotient(D, WideSubgroupoid(D, {0, 2, 3}))
    assert [len(q.quotient.loops(x)) for x in range(2)] == [2, 1]


def group_groupoid_iso(G):
    from stonegroupoid.finite_groupoid import isotropy
    return isotropy(G, 0)


def test_quotient_by_non_normal_has_witness():
    g, e, t, _ = S3_elements()
    X = group_groupoid(g)
    with pytest.raises(NotNormalError) as err:
        quotient(X, WideSubgroupoid(X, {e, t}))
    w = err.value.witness
    assert w["loop"] == t and w["conjugate"] not in (e, t)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_quotient_projection_is_a_full_surjective_functor(seed):
    rng = random.Random(seed)
    X = skeletal_replacement(random_groupoid(rng, 24, 3)).skeleton
    N = rng.choice(normal_basis(X))
    q = quotient(X, N)
    assert validate_groupoid(q.quotient).ok
    assert q.projection.violations() == []
    assert set(q.projection.mor_map) == set(range(q.quotient.num_morphisms))
    kernel = {g for g in range(X.num_morphisms) if q.quotient.is_unit(q.projection.mor_map[g])}
    assert kernel == N.morphisms


# -- bases ---------------------------------------------------------------------------


def test_normal_basis_examples():
    assert [sorted(H.morphisms) for H in normal_basis(BZ(4))] == [[0], [0, 2], [0, 1, 2, 3]]
    assert [sorted(H.morphisms) for H in normal_basis(trivial_groupoid())] == [[0]]
    kernels = [sorted(K.morphisms) for K in kernel_basis_of_tower(cyclic_tower(2, 3))]
    assert kernels == [[0, 2, 4, 6], [0, 4], [0]]


@pytest.mark.parametrize("names_X", [nx for nx in skeletal_unions(8)], ids=lambda nx: "+".join(nx[0]))
def test_normal_basis_is_exactly_the_normal_wide_subgroupoids(names_X):
    _, X = names_X
    assert {H.morphisms for H in normal_basis(X)} == set(normal_wide_subgroupoids(X))
    assert {H.morphisms for H in wide_subgroupoids(X)} == set(wide_subgroupoids_brute(X))


# -- collapse and separation ---------------------------------------------------------


def test_collapse_example():
    E = disjoint_union(BZ(2), BZ(3))
    P = collapse(E, 0)
    assert P.violations() == []
    assert P.mor_map[:2] == (0, 1)
    assert set(P.mor_map[2:]) == {P.target.unit[0]}


@pytest.mark.parametrize("names_E", [nx for nx in skeletal_unions(12)][::7], ids=lambda nx: "+".join(nx[0]))
def test_collapse_functorial_and_retracts(names_E):
    _, E = names_E
    for x in range(E.num_objects):
        P = collapse(E, x)
        assert P.violations() == []
        loops = E.loops(x)
        assert [P.target.src[P.mor_map[g]] for g in loops] == [0] * len(loops)
        assert len({P.mor_map[g] for g in loops}) == len(loops)


def test_separation_examples():
    E = disjoint_union(BZ(2), BZ(2))
    fam = separating_family(E)
    assert fam[0].obj_map == (0, 1)
    assert separation_report(E, fam).ok
    # loops at one vertex are separated by the collapse there
    assert separation_report(BZ(5), [collapse(BZ(5), 0)]).ok
    assert not separation_report(E, fam[:1]).ok


# -- reconstruction -------------------------------------------------------------------


def test_reconstruct_examples():
    X = BZ(4)
    assert reconstruct(X).bijective
    r = reconstruct(X, [WideSubgroupoid(X, {0, 2}), everything(X)])
    assert not r.morphisms_injective
    assert [1, 3] in r.witness["collisions"]
    assert reconstruct(cyclic_tower(2, 4)).bijective


def test_reconstruct_needs_skeletal():
    with pytest.raises(NotSkeletalError):
        reconstruct(pair_groupoid(2))
