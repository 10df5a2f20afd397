import json
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barrier_gauge import Arrangement, ArrangementError, build_lattice, generate_named
from barrier_gauge import linalg
from barrier_gauge.named import braid, coordinate, figure, generic
from oracles import subset_flats

BUILTINS_SMALL = [
    ("coordinate", 1),
    ("coordinate", 2),
    ("coordinate", 3),
    ("generic", 1, 3),
    ("generic", 2, 4),
    ("generic", 2, 6),
    ("generic", 3, 6),
    ("braid", 1),
    ("braid", 2),
    ("braid", 3),
    ("figure1a",),
    ("figure1b",),
    ("figure1c",),
    ("figure1d",),
]


def lattice_set(lat):
    return {f.key: (f.support, f.codim) for f in lat.flats}


def test_coordinate_plane():
    lat = build_lattice(coordinate(2))
    assert len(lat.flats) == 6
    assert Counter(f.codim for f in lat.flats) == {1: 3, 2: 3}


def test_three_generic_lines():
    lat = build_lattice(Arrangement.from_normals(2, [[1, 0, 0], [0, 1, 0], [1, 1, 1]]))
    assert len(lat.flats) == 6
    assert all(len(f.support) == f.codim for f in lat.flats)


def test_braid_plane():
    lat = build_lattice(braid(2))
    assert len(lat.flats) == 13
    points = Counter(len(f.support) for f in lat.by_codim(2))
    assert points == {3: 4, 2: 3}


def test_generic_counts():
    assert len(build_lattice(generic(2, 4)).flats) == 10
    lat = build_lattice(generic(3, 6))
    assert Counter(f.codim for f in lat.flats) == {1: 6, 2: 15, 3: 20}


def test_sorted_and_top():
    lat = build_lattice(braid(2))
    keys = [f.sort_key for f in lat.flats]
    assert keys == sorted(keys)
    assert lat.top == tuple(range(6))
    assert all(lat.flats[i].support == (i,) for i in lat.top)


@pytest.mark.parametrize("spec", BUILTINS_SMALL, ids=lambda s: "-".join(map(str, s)))
def test_matches_subset_enumeration(spec):
    arr = generate_named(*spec)
    assert arr.ell <= 10
    assert lattice_set(build_lattice(arr)) == subset_flats(arr)


arrangements = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-2, 2), min_size=n + 1, max_size=n + 1).filter(any), min_size=1, max_size=6),
    )
)


def make(n, normals):
    uniq = {}
    for v in normals:
        key = tuple(linalg.rref([[F(x) for x in v]])[0][0])
        uniq.setdefault(key, v)
    return Arrangement.from_normals(n, list(uniq.values()))


@settings(max_examples=60)
@given(arrangements)
def test_random_matches_subset_enumeration(case):
    arr = make(*case)
    assert lattice_set(build_lattice(arr)) == subset_flats(arr)


@settings(max_examples=60)
@given(arrangements)
def test_saturation_and_closure(case):
    arr = make(*case)
    lat = build_lattice(arr)
    for f in lat.flats:
        assert 1 <= f.codim <= arr.n
        for i, a in enumerate(arr.normals):
            r = linalg.rank(list(f.basis) + [a])
            assert (i in f.support) == (r == f.codim)
            if i not in f.support:
                assert r == f.codim + 1
    for f in lat.flats:
        for g in lat.flats:
            basis, r = linalg.rref(list(f.basis) + list(g.basis))
            if r <= arr.n:
                assert tuple(basis) in lat.index


@settings(max_examples=60)
@given(arrangements)
def test_order_is_containment(case):
    lat = build_lattice(make(*case))
    order = set(lat.order)
    for i, f in enumerate(lat.flats):
        for j, g in enumerate(lat.flats):
            sub = i != j and set(g.support) <= set(f.support) and f.codim > g.codim
            # for saturated flats, containment of subspaces is containment of supports reversed
            assert ((i, j) in order) == sub
    for i, j in lat.covers:
        assert (i, j) in order and lat.flats[i].codim == lat.flats[j].codim + 1


def invertible(n):
    return st.lists(st.lists(st.integers(-3, 3), min_size=n + 1, max_size=n + 1), min_size=n + 1, max_size=n + 1).filter(
        lambda m: linalg.det([[F(x) for x in r] for r in m]) != 0
    )


def _shape(lat):
    ms = Counter((f.codim, len(f.support)) for f in lat.flats)
    order = {(lat.flats[i].support, lat.flats[j].support) for i, j in lat.order}
    return ms, order


@settings(max_examples=40)
@given(st.sampled_from([coordinate(2), generic(2, 4), braid(2), figure("figure1c"), generic(3, 5)]), st.data())
def test_projective_invariance(arr, data):
    g = data.draw(invertible(arr.n))
    # contragredient action on covectors: a -> a g
    moved = [[sum(F(a[k]) * g[k][j] for k in range(arr.n + 1)) for j in range(arr.n + 1)] for a in arr.normals]
    # supports are indexed by hyperplane position, which is preserved, so the order must match exactly
    assert _shape(build_lattice(Arrangement.from_normals(arr.n, moved))) == _shape(build_lattice(arr))


def test_deterministic_serialization():
    arr = figure("figure1d")
    assert build_lattice(arr).to_json() == build_lattice(arr).to_json()
    shuffled = Arrangement.from_normals(2, list(reversed(arr.normals)))
    a, b = build_lattice(arr), build_lattice(shuffled)
    ell = arr.ell
    relabel = sorted((f.codim, tuple(sorted(ell - 1 - i for i in f.support))) for f in b.flats)
    assert relabel == [(f.codim, f.support) for f in a.flats]


def test_export_formats():
    lat = build_lattice(coordinate(2))
    doc = json.loads(lat.to_json())
    assert doc["n"] == 2 and len(doc["flats"]) == 6
    assert doc["flats"][0] == {"support": [0], "codim": 1, "basis": [["1", "0", "0"]]}
    dot = lat.to_dot()
    assert dot.startswith("digraph")
    assert dot.count("->") == len(lat.covers) == 6


def test_unknown_name():
    with pytest.raises(ArrangementError, match="unknown arrangement"):
        generate_named("hexagon")
    with pytest.raises(ArrangementError):
        generate_named("generic", 2)
