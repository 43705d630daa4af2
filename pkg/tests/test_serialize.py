import random

import pytest
from hypothesis import given, settings, strategies as st

from stonegroupoid import serialize as ser
from stonegroupoid.constructions import skeletal_replacement
from stonegroupoid.finite_groupoid import group_groupoid, pair_groupoid
from stonegroupoid.generators import cyclic_tower, random_functor, random_groupoid, random_tower
from stonegroupoid.groups import symmetric
from stonegroupoid.realization import realize_tower
from stonegroupoid.tower import pi0_tower


def roundtrip(obj):
    text = ser.dumps(ser.to_doc(obj))
    kind, back = ser.parse(ser.loads(text))
    return kind, back


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_groupoid_and_functor_roundtrip(seed):
    rng = random.Random(seed)
    G = random_groupoid(rng, 30, 3)
    assert roundtrip(G) == ("groupoid", G)
    F = random_functor(rng, 32)
    assert roundtrip(F) == ("functor", F)


def test_tower_settower_presentation_roundtrip():
    T = random_tower(random.Random(4), 3, 16, 3)
    assert roundtrip(T) == ("tower", T)
    S = pi0_tower(T)
    assert roundtrip(S) == ("set-tower", S)
    P = realize_tower(skeletal_replacement(cyclic_tower(3, 3)).tower)
    assert roundtrip(P) == ("presentation", P)
    assert roundtrip(frozenset({0, 3})) == ("subset", frozenset({0, 3}))


def test_dumps_is_canonical():
    G = group_groupoid(symmetric(3))
    a = ser.dumps(ser.to_doc(G))
    assert a.endswith("\n") and a == ser.dumps(ser.loads(a))


def test_functor_source_may_be_supplied():
    F = random_functor(random.Random(0))
    doc = ser.functor_to_doc(F)
    del doc["source"]
    assert ser.functor_from_doc(doc, F.source) == F
    with pytest.raises(ser.FormatError):
        ser.functor_from_doc(doc)


@pytest.mark.parametrize("text", [
    "not json",
    '{"format": "other/groupoid"}',
    '{"format": "stonegroupoid/groupoid", "version": 1}',
    '[1, 2]',
])
def test_bad_documents_raise_format_error(text):
    with pytest.raises(ser.FormatError):
        ser.parse(ser.loads(text))


def test_bare_list_subset():
    assert ser.subset_from_doc([2, 0, 2]) == frozenset({0, 2})


def test_names_survive():
    G = pair_groupoid(2)
    doc = ser.groupoid_to_doc(G)
    doc["object_names"] = ["a", "b"]
    H = ser.groupoid_from_doc(doc)
    assert ser.groupoid_to_doc(H)["object_names"] == ["a", "b"]
