import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from barrier_gauge import Arrangement, ArrangementError, parse_arrangement


def doc(n, normals, mults=None):
    hs = []
    for i, v in enumerate(normals):
        h = {"normal": v}
        if mults:
            h["multiplicity"] = mults[i]
        hs.append(h)
    return json.dumps({"n": n, "hyperplanes": hs})


def test_parse_coordinate():
    arr = parse_arrangement(doc(2, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    assert arr.n == 2 and arr.ell == 3
    assert arr.multiplicities == [1, 1, 1]


def test_canonical_scaling():
    arr = parse_arrangement(doc(2, [["0", "-2", "4/3"]], ["3/2"]))
    assert arr.normals == [(0, 1, F(-2, 3))]
    assert arr.multiplicities == [F(3, 2)]


@pytest.mark.parametrize(
    "text,fragment",
    [
        (doc(2, [["2", "0", "0"], ["1", "0", "0"]]), "duplicate hyperplane"),
        (doc(1, [["0", "0"]]), "zero normal"),
        (doc(1, [["1", "0", "0"]]), "hyperplanes[0].normal"),
        (doc(1, [["1", "x"]]), "hyperplanes[0].normal[1]"),
        (doc(1, [["1", "0"]], ["0"]), "multiplicity"),
        (doc(1, [["1", "0"]], ["-1"]), "multiplicity"),
        (doc(0, [["1"]]), "n"),
        (doc(2, []), "hyperplanes"),
        ('{"n": 2, "hyperplanes": [', "line 1"),
        ("[]", "object"),
        (json.dumps({"n": 1, "hyperplanes": [{"normal": [1, 0]}]}), "hyperplanes[0].normal[0]"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ArrangementError) as exc:
        parse_arrangement(text)
    assert fragment in str(exc.value)


def test_duplicate_reports_partner():
    with pytest.raises(ArrangementError, match=r"hyperplanes\[0\]"):
        parse_arrangement(doc(2, [["1", "1", "0"], ["0", "0", "1"], ["-3", "-3", "0"]]))


normals = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@given(st.lists(normals, min_size=1, max_size=6), st.lists(st.fractions(F(1, 5), F(5)), min_size=6, max_size=6))
def test_round_trip(vs, ms):
    try:
        arr = Arrangement.from_normals(2, vs, ms[: len(vs)])
    except ArrangementError:
        return
    text = arr.to_json()
    again = parse_arrangement(text)
    assert again == arr
    assert again.to_json() == text


def test_semantic_round_trip_rereduces():
    arr = parse_arrangement(doc(1, [["2/4", "3"]], ["6/4"]))
    out = json.loads(arr.to_json())
    assert out["hyperplanes"][0] == {"normal": ["1", "6"], "multiplicity": "3/2"}
