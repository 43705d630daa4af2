import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import threads_brute
from stonegroupoid.errors import DepthError, SectionError
from stonegroupoid.finite_groupoid import GroupoidFunctor, disjoint_union, group_groupoid
from stonegroupoid.generators import broken_tower, cyclic_tower, random_tower
from stonegroupoid.groups import cyclic
from stonegroupoid.tower import (GroupoidTower, SetTower, morphism_tower, pi0_tower, restrict_threads,
                                 threads_at_depth, tower_section, truncate, validate_tower)


def BZ(n):
    return group_groupoid(cyclic(n))


def test_reduction_tower_valid():
    T = cyclic_tower(2, 2)
    assert validate_tower(T).ok


def test_constant_tower_valid():
    G = BZ(3)
    I = GroupoidFunctor.identity(G)
    assert validate_tower(GroupoidTower((G, G, G), (I, I))).ok


def test_missing_morphism_image_detected():
    # two copies of BZ/2 mapped onto one BZ/2, every morphism sent to the unit
    D = disjoint_union(BZ(2), BZ(2))
    F = GroupoidFunctor(D, BZ(2), (0, 0), (0, 0, 0, 0))
    rep = validate_tower(GroupoidTower((BZ(2), D), (F,)))
    assert ("morphism-surjectivity", 0, 1) in rep.violations
    assert ("star-surjectivity", 0, 0, 1) in rep.violations


def test_cyclic_threads():
    T = cyclic_tower(2, 3)
    assert len(threads_at_depth(T, 2, "morphisms")) == 8
    const = SetTower((3,) * 6, ((0, 1, 2),) * 5)
    assert len(threads_at_depth(const, 5)) == 3


def test_non_surjective_threads_detected():
    S = morphism_tower(broken_tower())
    assert len(threads_at_depth(S, 0)) == 1 != S.sizes[0]


def test_depth_out_of_range():
    with pytest.raises(DepthError):
        threads_at_depth(SetTower((2,), ()), 1)
    with pytest.raises(DepthError):
        truncate(cyclic_tower(2, 2), 3)


def test_section_examples():
    assert tower_section(SetTower((2, 4), ((0, 1, 0, 1),))) == [(0, 1)]
    assert tower_section(SetTower((3, 3), ((0, 1, 2),))) == [(0, 1, 2)]
    with pytest.raises(SectionError) as e:
        tower_section(SetTower((3, 2), ((0, 0),)))
    assert e.value.witness == {"level": 0, "unreached": [1, 2]}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_sections_compose_to_identity(seed):
    rng = random.Random(seed)
    lo = rng.randint(1, 6)
    hi = lo + rng.randint(0, 6)
    tau = list(range(lo)) + [rng.randrange(lo) for _ in range(hi - lo)]
    rng.shuffle(tau)
    (sigma,) = tower_section(SetTower((lo, hi), (tuple(tau),)))
    assert all(tau[sigma[e]] == e for e in range(lo))
    assert all(sigma[e] == min(i for i, t in enumerate(tau) if t == e) for e in range(lo))


def test_truncate():
    T = cyclic_tower(2, 4)
    assert truncate(T, 1).depth == 1 and len(truncate(T, 1).levels) == 2
    assert truncate(T, T.depth) == T


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_threads_match_brute_force_and_truncation(seed):
    rng = random.Random(seed)
    sizes = [rng.randint(1, 4) for _ in range(rng.randint(1, 4))]
    trans = tuple(tuple(rng.randrange(sizes[n]) for _ in range(sizes[n + 1])) for n in range(len(sizes) - 1))
    S = SetTower(tuple(sizes), trans)
    for d in range(S.depth + 1):
        assert threads_at_depth(S, d) == threads_brute(sizes, trans, d)
    top = threads_at_depth(S, S.depth)
    for d in range(S.depth + 1):
        assert restrict_threads(top, d) == threads_at_depth(S, d)
        T = truncate(S, d)
        # truncating first keeps every level-d element that has a thread in the truncated tower
        assert set(threads_at_depth(S, d)) <= set(threads_at_depth(T, d))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_towers_valid_with_surjective_pi0(seed):
    T = random_tower(random.Random(seed), 4, 16, 3)
    assert validate_tower(T).ok
    P = pi0_tower(T)
    assert P.surjectivity_failures() == []


def test_extend_hook():
    T = cyclic_tower(3, 2)
    E = T.extended(4)
    assert [G.num_morphisms for G in E.levels] == [3, 9, 27, 81, 243]
    assert validate_tower(E).ok
    with pytest.raises(DepthError):
        GroupoidTower((BZ(2),), ()).extended(2)
