from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from barrier_gauge.lp import maximize


def q(rows):
    return [[F(x) for x in r] for r in rows]


def test_textbook():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    res = maximize([F(3), F(2)], q([[1, 1], [1, 3], [1, 0]]), [F(4), F(6), F(3)])
    assert res.status == "optimal"
    assert res.value == 11 and res.x == (3, 1)


def test_equality_and_negative_rhs():
    # max x, x + y = 2, -x <= -1/2 (x >= 1/2), y >= 1/3 written as -y <= -1/3
    res = maximize([F(1), F(0)], q([[-1, 0], [0, -1]]), [F(-1, 2), F(-1, 3)], q([[1, 1]]), [F(2)])
    assert res.status == "optimal" and res.value == F(5, 3)


def test_infeasible_and_unbounded():
    assert maximize([F(1)], q([[1]]), [F(1)], q([[1]]), [F(2)]).status == "infeasible"
    assert maximize([F(1), F(0)], q([[0, 1]]), [F(1)]).status == "unbounded"


def test_redundant_equalities():
    res = maximize([F(1), F(1)], (), (), q([[1, 1], [2, 2]]), [F(3), F(6)])
    assert res.status == "optimal" and res.value == 3


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    c = [F(3, 4), F(-150), F(1, 50), F(-6)]
    A = [[F(1, 4), F(-60), F(-1, 25), F(9)], [F(1, 2), F(-90), F(-1, 50), F(3)], [F(0), F(0), F(1), F(0)]]
    res = maximize(c, A, [F(0), F(0), F(1)])
    assert res.status == "optimal" and res.value == F(1, 20)


coef = st.integers(-4, 4)


@settings(max_examples=80)
@given(
    st.integers(1, 3).flatmap(
        lambda nv: st.tuples(
            st.lists(coef, min_size=nv, max_size=nv),
            st.lists(st.lists(coef, min_size=nv, max_size=nv), min_size=1, max_size=4),
            st.lists(st.integers(-3, 6), min_size=4, max_size=4),
            st.lists(st.lists(st.integers(0, 3), min_size=nv, max_size=nv), max_size=1),
            st.integers(0, 4),
        )
    )
)
def test_against_scipy(case):
    c, A, b, Aeq, beq = case
    b = b[: len(A)]
    res = maximize([F(x) for x in c], q(A), [F(x) for x in b], q(Aeq), [F(beq)] * len(Aeq))
    ref = linprog(
        -np.array(c, float),
        A_ub=np.array(A, float),
        b_ub=np.array(b, float),
        A_eq=np.array(Aeq, float) if Aeq else None,
        b_eq=np.array([beq] * len(Aeq), float) if Aeq else None,
        bounds=[(0, None)] * len(c),
        method="highs",
    )
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert res.status == expected
    if expected == "optimal":
        assert float(res.value) == pytest.approx(-ref.fun, abs=1e-7)
        x = res.x
        assert all(v >= 0 for v in x)
        assert all(sum(a * v for a, v in zip(row, x)) <= bi for row, bi in zip(q(A), b))
