import random

import pytest

from stonegroupoid.errors import GeneratorSpecError
from stonegroupoid.finite_groupoid import equivalence_oracle, validate_groupoid, whitehead_equivalence
from stonegroupoid.generators import (KINDS, TOWER_KINDS, GeneratorSpec, broken_tower, generate, pullback,
                                      random_functor, random_tower, shuffled_tower)
from stonegroupoid.tower import GroupoidTower, validate_tower


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_validates(kind):
    X = generate(GeneratorSpec(kind, depth=3, seed=5))
    if kind in TOWER_KINDS:
        assert isinstance(X, GroupoidTower) and X.depth == 2
        assert validate_tower(X).ok
    else:
        assert validate_groupoid(X).ok


def test_generation_is_deterministic():
    spec = GeneratorSpec("random", seed=17, max_morphisms=40)
    assert generate(spec) == generate(spec)
    t = GeneratorSpec("random-tower", seed=17)
    assert generate(t) == generate(t)


def test_sizes():
    assert generate(GeneratorSpec("pair", n=3)).num_morphisms == 9
    T = generate(GeneratorSpec("cyclic-tower", p=3, depth=2))
    assert [G.num_morphisms for G in T.levels] == [3, 9]
    A = generate(GeneratorSpec("action", p=2, depth=3))
    assert A.num_objects == 2 and A.num_morphisms == 16


@pytest.mark.parametrize("kwargs, field", [
    ({"kind": "nope"}, "kind"),
    ({"kind": "pair", "n": 0}, "n"),
    ({"kind": "cyclic-tower", "p": 4}, "p"),
    ({"kind": "cyclic-tower", "depth": 0}, "depth"),
    ({"kind": "cyclic-tower", "p": 7, "depth": 8}, "depth"),
    ({"kind": "random", "max_morphisms": 0}, "max_morphisms"),
])
def test_bad_specs_name_the_field(kwargs, field):
    with pytest.raises(GeneratorSpecError) as e:
        generate(GeneratorSpec(**kwargs))
    assert e.value.witness == {"field": field}


def test_broken_tower_is_invalid():
    assert not validate_tower(broken_tower()).ok


def test_shuffled_tower_stays_valid():
    rng = random.Random(2)
    T = random_tower(rng, 3, 16, 3)
    assert validate_tower(shuffled_tower(T, rng)).ok


def test_pullback_is_an_equivalence():
    from stonegroupoid.finite_groupoid import group_groupoid
    from stonegroupoid.groups import cyclic
    G = group_groupoid(cyclic(3))
    P, F = pullback(G, [0, 0, 0])
    assert P.num_objects == 3 and P.num_morphisms == 27
    assert whitehead_equivalence(F) and equivalence_oracle(P, G)


def test_random_functors_are_functors():
    for seed in range(50):
        F = random_functor(random.Random(seed))
        assert F.violations() == []
