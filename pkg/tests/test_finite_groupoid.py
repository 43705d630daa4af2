import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import components_bfs
from stonegroupoid.errors import OracleBoundExceeded, StructuralError
from stonegroupoid.finite_groupoid import (FiniteGroupoid, GroupoidFunctor, action_groupoid,
                                           discrete_groupoid, disjoint_union, equivalence_oracle,
                                           group_groupoid, internal_essentially_surjective,
                                           internal_fully_faithful, is_skeletal, isotropy, pair_groupoid,
                                           pair_times_group, pi0, relabel, trivial_groupoid,
                                           validate_groupoid, whitehead_equivalence)
from stonegroupoid.generators import random_groupoid, shuffled
from stonegroupoid.groups import cyclic, find_isomorphism, symmetric


def BZ(n):
    return group_groupoid(cyclic(n))


def test_group_is_groupoid():
    assert validate_groupoid(BZ(2)).ok


def test_pair_groupoid_valid():
    P = pair_groupoid(2)
    assert P.num_morphisms == 4 and validate_groupoid(P).ok


def test_composability_violation_has_witness():
    G = BZ(2)
    D = disjoint_union(G, G)
    # claim 0 (on object 0) composes with 2 (on object 1)
    bad = FiniteGroupoid.from_tables(2, D.src, D.tgt, D.unit, D.inv, list(D.comp) + [(0, 2, 0)])
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert ("composability", 0, 2) in rep.violations


def test_associativity_violation_detected():
    G = BZ(3)
    comp = {(g, y): gy for g, y, gy in G.comp}
    comp[(1, 1)] = 0  # breaks 1+1=2
    rep = validate_groupoid(FiniteGroupoid.from_tables(1, G.src, G.tgt, G.unit, G.inv, comp))
    assert not rep.ok


def test_out_of_range_tables_raise():
    with pytest.raises(StructuralError):
        validate_groupoid(FiniteGroupoid.from_tables(1, [0], [3], [0], [0], [(0, 0, 0)]))


def test_pi0_examples():
    p = pi0(pair_groupoid(2))
    assert p.count == 1 and p.representatives == (0,)
    assert pi0(disjoint_union(BZ(2), BZ(3))).count == 2
    swap = action_groupoid(cyclic(2), 2, lambda g, s: (s + g) % 2)
    assert pi0(swap).count == 1


def test_isotropy_examples():
    assert isotropy(pair_groupoid(3), 1).order == 1
    assert find_isomorphism(isotropy(BZ(4), 0), cyclic(4)) is not None
    A = action_groupoid(cyclic(4), 2, lambda g, s: (s + g) % 2)
    stab = isotropy(A, 0)
    # morphism s*4 + g is s -> g.s; loops at 0 are g in {0, 2}
    assert stab.labels == (0, 2) and stab.order == 2


def test_is_skeletal_examples():
    assert not is_skeletal(pair_groupoid(2))
    assert is_skeletal(disjoint_union(BZ(2), BZ(5), trivial_groupoid()))


def test_ff_es_examples():
    P = pair_groupoid(2)
    inc = P.full_subgroupoid([0])[1]
    ident = GroupoidFunctor.identity(P)
    assert internal_fully_faithful(ident) and internal_essentially_surjective(ident)
    assert internal_fully_faithful(inc) and internal_essentially_surjective(inc)
    to_point = GroupoidFunctor(BZ(2), trivial_groupoid(), (0,), (0, 0))
    assert not internal_fully_faithful(to_point)
    D = disjoint_union(BZ(2), BZ(2))
    first = D.full_subgroupoid([0])[1]
    assert not internal_essentially_surjective(first)


def test_whitehead_examples():
    P = pair_groupoid(2)
    assert whitehead_equivalence(P.full_subgroupoid([0])[1])
    assert not whitehead_equivalence(GroupoidFunctor(BZ(2), BZ(3), (0,), (0, 0)))
    assert whitehead_equivalence(GroupoidFunctor.identity(BZ(6)))


def test_oracle_examples(monkeypatch):
    assert equivalence_oracle(pair_groupoid(3), trivial_groupoid())
    assert not equivalence_oracle(BZ(2), BZ(3))
    free = action_groupoid(cyclic(2), 2, lambda g, s: (s + g) % 2)
    assert equivalence_oracle(free, trivial_groupoid())
    assert not equivalence_oracle(BZ(4), group_groupoid(cyclic(2)))
    with pytest.raises(OracleBoundExceeded):
        equivalence_oracle(pair_groupoid(9), trivial_groupoid())
    monkeypatch.setenv("STONE_GROUPOID_ORACLE_BOUND", "100")
    assert equivalence_oracle(pair_groupoid(9), trivial_groupoid())


def test_oracle_distinguishes_isotropy_not_just_orders():
    assert not equivalence_oracle(BZ(4), disjoint_union(BZ(2), BZ(2)))
    from stonegroupoid.groups import direct_product
    assert not equivalence_oracle(BZ(4), group_groupoid(direct_product(cyclic(2), cyclic(2))))


def test_pair_times_group_connected_with_right_isotropy():
    S3 = symmetric(3)
    G = pair_times_group(3, S3)
    assert validate_groupoid(G).ok and pi0(G).count == 1
    assert find_isomorphism(isotropy(G, 2), S3) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_groupoids_validate_and_pi0_matches_bfs(seed):
    G = random_groupoid(random.Random(seed), 40, 4)
    assert validate_groupoid(G).ok
    p = pi0(G)
    comps = components_bfs(G)
    assert p.count == len(comps)
    for comp in comps:
        assert len({p.component[x] for x in comp}) == 1
        assert p.representatives[p.component[min(comp)]] == min(comp)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_relabel_is_an_equivalence(seed):
    rng = random.Random(seed)
    G = random_groupoid(rng, 30, 3)
    obj = list(range(G.num_objects))
    mor = list(range(G.num_morphisms))
    rng.shuffle(obj)
    rng.shuffle(mor)
    H, iso = relabel(G, obj, mor)
    assert validate_groupoid(H).ok and not iso.violations()
    assert whitehead_equivalence(iso) and internal_fully_faithful(iso)
    assert equivalence_oracle(G, H)


def test_functor_violations_reported():
    F = GroupoidFunctor(BZ(4), BZ(2), (0,), (0, 1, 1, 1))
    assert any(v[0] == "functor-comp" for v in F.violations())
    with pytest.raises(StructuralError):
        GroupoidFunctor(BZ(2), BZ(2), (0,), (0,)).violations()


def test_discrete_and_shuffled():
    D = discrete_groupoid(4)
    assert is_skeletal(D) and pi0(D).count == 4
    assert validate_groupoid(shuffled(pair_groupoid(3), random.Random(1))).ok
