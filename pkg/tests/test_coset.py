import pytest

from stonegroupoid.coset import CosetTable, parse_relators, regular_multiplication, transversal_words
from stonegroupoid.errors import EnumerationLimit
from stonegroupoid.groups import FiniteGroup


@pytest.mark.parametrize("gens, rels, order", [
    ("a", "a^5", 5),
    ("ab", "a^2, b^3, a b a b", 6),
    ("ab", "a^3, b^3, a b a b", 12),        # A4
    ("ab", "a^2, b^3, a b a b a b a b", 24),  # S4
    ("ab", "a^2, b^3, a b a b a b a b a b", 60),  # A5
    ("ab", "a^4, b^2 a^-2, b^-1 a b a", 8),  # Q8
    ("ab", "a^2, b^2, [a,b]", 4),
])
def test_orders(gens, rels, order):
    t = CosetTable(len(gens), parse_relators(rels, gens)).enumerate()
    assert t.index == order
    g = FiniteGroup.from_table(regular_multiplication(t))
    assert g.violations() == []


def test_subgroup_index():
    # S3 over <a>, a of order 2: index 3
    t = CosetTable(2, parse_relators("a^2, b^3, a b a b", "ab"), subgroup=[[0]]).enumerate()
    assert t.index == 3


def test_transversal_reaches_every_coset():
    t = CosetTable(2, parse_relators("a^3, b^3, a b a b", "ab")).enumerate()
    words = transversal_words(t)
    assert sorted(t.act(0, w) for w in words) == list(range(t.index))


def test_infinite_group_hits_limit():
    with pytest.raises(EnumerationLimit):
        CosetTable(1, [], max_cosets=100).enumerate()


def test_parse_commutator_and_powers():
    assert parse_relators("[a,b], a^-2", "ab") == [[1, 3, 0, 2], [1, 1]]
