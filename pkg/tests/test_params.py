"""Exact big-integer order arithmetic."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stslab import (
    ParameterError,
    ParameterSolution,
    choose_K,
    corollary26_bounds,
    delta_of,
    global_threshold,
    k_bound_expression,
    n_bound,
    residue_coverage,
    solve_order,
    threshold,
)
from stslab.params import ADMISSIBLE_DELTAS, multiplicative_order_of_two


def test_admissible_deltas():
    assert ADMISSIBLE_DELTAS == (1, 3, 7, 9, 13, 15, 19, 21)
    assert all(d % 6 in (1, 3) for d in ADMISSIBLE_DELTAS)


def test_multiplicative_order_of_two():
    assert multiplicative_order_of_two(7) == 3
    assert multiplicative_order_of_two(31) == 5
    assert multiplicative_order_of_two(11) == 10


def test_choose_K_smallest():
    k, K = choose_K(3, 9)
    assert K == (1 << k) - 1
    assert K % 24 == 7
    assert math.gcd(K, 2) == 1


def test_choose_K_order_strategy_sufficient():
    for v1, v2 in [(3, 9), (7, 15), (9, 87)]:
        k, K = choose_K(v1, v2, strategy="order")
        assert K == (1 << k) - 1 and K % 24 == 7
        assert math.gcd(K, v1 - 1) == 1 and math.gcd(K, v2 - 1) == 1


def test_choose_K_rejects_even():
    with pytest.raises(ParameterError):
        choose_K(4, 9)


def test_delta_of_validation():
    with pytest.raises(ParameterError):
        delta_of(2, 0, 1, 3)
    with pytest.raises(ParameterError):
        delta_of(1, 5, 1, 3)


def test_residue_row_K1():
    got = [delta_of(d, 0, 1, 3) % 24 for d in (1, 3, 7, 9)]
    assert got == [19, 15, 7, 3]


def test_residue_row_K7_class():
    vals = {delta_of(d, r, 7, 3) % 24 for d in ADMISSIBLE_DELTAS for r in range(7)}
    assert {1, 9, 13, 21} <= vals


def test_residue_coverage_complete():
    admissible_mod24 = {x for x in range(24) if x % 6 in (1, 3)}
    both = {x % 24 for x in residue_coverage(1, 3, 9)}
    both |= {x % 24 for x in residue_coverage(31, 3, 9)}
    assert both >= admissible_mod24


def test_residue_coverage_precondition():
    with pytest.raises(ParameterError):
        residue_coverage(7, 15, 9)  # gcd(24*14, 7) = 7


def test_threshold_formula():
    assert threshold(3, 1, 0) == 1536 * 9
    assert threshold(5, 7, 10) == 10 + 1536 * 343 * 25


def test_solver_window_total():
    v1, v2 = 3, 9
    k, K = choose_K(v1, v2)
    start = global_threshold(v1, v2, K)
    start += (1 - start) % 6  # first admissible order at or after start
    solved = 0
    for u in range(start, start + 48 * K, 2):
        if u % 6 not in (1, 3):
            continue
        sol = solve_order(u, v1, v2, K=K, k=k)
        assert sol.check() == []
        assert sol.u == sol.x + sol.v_choice * (sol.y - sol.x)
        solved += 1
    # the window holds 8K full residue cycles, two admissible orders each
    assert solved == 16 * K


def test_solver_below_threshold_raises():
    with pytest.raises(ParameterError):
        solve_order(25, 3, 9)


def test_solver_rejects_inadmissible():
    with pytest.raises(ParameterError):
        solve_order(10**6, 3, 9)  # 10**6 = 4 mod 6


def test_certificate_roundtrip():
    v1, v2 = 3, 9
    k, K = choose_K(v1, v2)
    u = global_threshold(v1, v2, K)
    u += (1 - u) % 6
    sol = solve_order(u, v1, v2, K=K, k=k)
    again = ParameterSolution.from_text(sol.to_text())
    assert again == sol
    assert again.check() == []


def test_certificate_check_catches_tampering():
    v1, v2 = 3, 9
    k, K = choose_K(v1, v2)
    u = global_threshold(v1, v2, K)
    u += (1 - u) % 6
    sol = solve_order(u, v1, v2, K=K, k=k)
    import dataclasses

    bad = dataclasses.replace(sol, x=sol.x + 24)
    assert bad.check()


def test_certificate_parse_errors():
    with pytest.raises(ParameterError):
        ParameterSolution.from_text("u = 3\n")
    with pytest.raises(ParameterError):
        ParameterSolution.from_text("garbage line\n")


def test_corollary_bounds_and_symbolic_K():
    lo, hi = corollary26_bounds(3)
    assert lo == 2**24 * 3**5
    assert hi == 2**144 * 3**25
    assert k_bound_expression(3) == "2**(2**169 * 3**30)"
    bound = n_bound(3, K=7)
    assert bound == 24 * 7 + 1536 * 7**3 * hi**2


@settings(max_examples=20, deadline=None)
@given(
    st.sampled_from(ADMISSIBLE_DELTAS),
    st.integers(0, 6),
    st.integers(0, 10**6),
    st.integers(1, 10**6),
)
def test_order_identity_random(delta, r, t, a_extra):
    # the expanded identity u = offset + 1536 K^2 v a + 24 K t holds exactly
    K, v, v2 = 7, 9, 9
    a = 8 * K * v2 + a_extra
    off = delta_of(delta, r, K, v)
    x = delta + 24 * r + 24 * K * t
    y = K * (-1 + 8 * 24 * K * a + 24 * t)
    u = x + v * (y - x)
    assert u == off + 8 * 24 * K * K * v * a + 24 * K * t
