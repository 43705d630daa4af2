import random

import pytest

from stonegroupoid.errors import DomainError
from stonegroupoid.finite_groupoid import (action_groupoid, disjoint_union, group_groupoid, pair_groupoid,
                                           pair_times_group)
from stonegroupoid.fundamental import edge_path_relators, fundamental_group, fundamental_group_check
from stonegroupoid.coset import CosetTable
from stonegroupoid.errors import EnumerationLimit
from stonegroupoid.generators import shuffled
from stonegroupoid.groups import cyclic, dihedral, find_isomorphism, symmetric


def test_pair_groupoid_is_simply_connected():
    assert fundamental_group(pair_groupoid(4))[0].order == 1


@pytest.mark.parametrize("k, g", [(1, symmetric(3)), (2, cyclic(5)), (3, dihedral(4)), (2, symmetric(4))])
def test_pair_times_group(k, g):
    G = shuffled(pair_times_group(k, g), random.Random(k))
    r = fundamental_group_check(G, base=k - 1)
    assert r.ok and find_isomorphism(r.group, g) is not None


def test_without_tree_relators_group_is_infinite():
    # two objects: the free factor from the extra arrow never closes
    G = pair_groupoid(2)
    with pytest.raises(EnumerationLimit):
        CosetTable(G.num_morphisms, edge_path_relators(G), max_cosets=2000).enumerate()


def test_stabilizer_of_transitive_action():
    A = action_groupoid(cyclic(8), 2, lambda g, s: (s + g) % 2)
    r = fundamental_group_check(A, 1)
    assert r.ok and r.group.order == 4


def test_disconnected_rejected():
    with pytest.raises(DomainError):
        fundamental_group(disjoint_union(group_groupoid(cyclic(2)), group_groupoid(cyclic(2))))
