"""
Solve pipeline tests: absolute factorization, order reduction, order 3 and order 4 cases
"""

import random

import pytest

from app.core.errors import AlgebraError
from app.services import dmod, solve
from app.services.corpus import corpus
from app.services.ore import ONE, OrePoly, mul, monic, parse_operator, twist
from app.services.polyalg import PX, X, rat
from app.services.solve import (SOLVED, ReduceOrderResult, abs_factorization,
                                product_equation_solutions, reduce_order, register_gauge_reducer,
                                solve_order3, solve_order4, special_case)


def op(text):
    return parse_operator(text)


def test_product_equation():
    sols = product_equation_solutions(X * (X + 1))
    assert X in sols
    assert -X in sols
    # constant 2 has no rational square root
    assert product_equation_solutions(X ** 0 * 2) == []
    assert product_equation_solutions(X * 0) == []


@pytest.mark.parametrize("text", ["t^2 - t - 1", "t^2 + x*t - 1"])
def test_reduce_order_recovers_symmetric_square(text):
    L3 = dmod.sym_power_op(op(text), 2).operator
    red = reduce_order(L3)
    assert red.ok
    assert red.tier == 1
    assert red.L2.coeff(1) == -1
    assert monic(twist(dmod.sym_power_op(red.L2, 2).operator, red.r)) == monic(L3)


def test_reduce_order_without_symmetric_square():
    red = reduce_order(op("t^3 - x"))
    assert not red.ok
    assert red.tier == 2
    with pytest.raises(AlgebraError):
        reduce_order(op("t^2 - x"))


def test_registered_gauge_reducer():
    calls = []

    def reducer(L3):
        calls.append(L3)
        return ReduceOrderResult(False, tier=2, reason="stub reducer")

    register_gauge_reducer(reducer)
    try:
        red = reduce_order(op("t^3 - x"))
    finally:
        register_gauge_reducer(None)
    assert calls == [op("t^3 - x")]
    assert red.reason == "stub reducer"


def test_abs_factorization_by_order_drop():
    absf = abs_factorization(op("t^2 - x"))
    assert absf.p == 2
    assert absf.factors == [ONE]
    assert not absf.absolutely_irreducible


def test_abs_factorization_irreducible():
    absf = abs_factorization(op("t^2 - t - 1"))
    assert absf.absolutely_irreducible
    assert absf.p is None
    assert 2 in absf.sections


def test_solve_order3_reducible():
    L = mul(op("t^2 - x"), op("t - 1"))
    report = solve_order3(L)
    assert report.status == SOLVED
    assert report.case == "reducible"
    assert op("t - 1") in report.artifacts["factors"]


def test_solve_order3_liouvillian():
    report = solve_order3(op("t^3 - x"))
    assert report.status == SOLVED
    assert report.case == "liouvillian"
    assert report.artifacts["section"].order < 3


def test_solve_order3_rejects_other_orders():
    with pytest.raises(AlgebraError):
        solve_order3(op("t^2 - x"))
    with pytest.raises(AlgebraError):
        solve_order4(op("t^3 - x"))


@pytest.mark.slow
def test_solve_order3_symmetric_square():
    L = twist(dmod.sym_power_op(op("t^2 + x*t - 1"), 2).operator, PX + 1)
    report = solve_order3(L)
    assert report.status == SOLVED
    assert report.case == "symmetric-square"


def test_special_case_symmetric_cube():
    """Symmetric square of order 7 goes through the special case"""
    L = dmod.sym_power_op(op("t^2 - t - 1"), 3).operator
    report = special_case(L)
    assert report.artifacts["sym2_order"] == 7
    assert report.status == SOLVED
    assert report.case == "symmetric-cube-special"
    assert report.artifacts["Ls"].order == 4


def test_solve_order4_reducible():
    L = mul(op("t^3 - x"), op("t - 2"))
    report = solve_order4(L)
    assert report.status == SOLVED
    assert report.case == "reducible"
    assert report.artifacts["order"] == 1


def test_solve_order4_absolute_factorization():
    report = solve_order4(op("t^4 - x"))
    assert report.status == SOLVED
    assert report.case == "absolute-factorization"
    assert report.artifacts["p"] == 2


def test_case3b_recurrences():
    L = corpus.get("a227845").operator
    report = solve.case3b(L)
    assert report.status == SOLVED
    assert report.artifacts["exact_equality"]
    L2a, L2b = report.artifacts["L2a"], report.artifacts["L2b"]
    assert L2b == L2a.shift_coeffs(rat(1, 2))
    assert monic(dmod.sym_product_op(L2a, L2b)) == monic(report.artifacts["section"])
    terms = [r.terms for r in report.artifacts["recurrences"]]
    assert ((0, PX ** 2), (-2, -6 * PX ** 2 + 6 * PX - 2), (-4, PX ** 2 - 2 * PX + 1)) in terms


def test_exterior_square_in_d2_splits_into_two_sections():
    L6 = dmod.ext_power_op(corpus.get("a227845").operator, 2).operator
    assert all(not L6.coeff(i) for i in (1, 3, 5))
    assert dmod.section_operator(L6, 2).lower_than_expected
    pieces = solve.split_exterior_section(L6)
    assert [P.order for P in pieces] == [3, 3]
    assert solve.split_exterior_section(dmod.ext_power_op(op("t^4 + t - x"), 2).operator) is None


@pytest.mark.slow
def test_solve_order4_prefers_half_shift_for_a227845():
    report = solve_order4(corpus.get("a227845").operator)
    assert report.status == SOLVED
    assert report.case == "symmetric-product-half-shift"
    assert "L6 factors d=3" not in report.stats


def test_solve_order3_gauge_built_liouvillian():
    L = dmod.minimal_operator([1, X, 0], dmod.companion(op("t^3 - x"))).operator
    assert L.order == 3
    assert L != op("t^3 - x")
    report = solve_order3(L)
    assert report.status == SOLVED
    assert report.case == "liouvillian"


def random_order_one(rng):
    return OrePoly.of(-(X + rng.randint(1, 4)) * rng.choice([1, 2, -1]), 1)


def random_order_two(rng):
    return OrePoly.of(rng.choice([1, -1, 2]), rng.randint(-2, 2) + rng.randint(1, 2) * X, X + rng.randint(1, 3))


def _reducible_round_trips(count):
    rng = random.Random(21)
    for _ in range(count):
        B = random_order_one(rng)
        L = mul(random_order_two(rng), B)
        report = solve_order3(L)
        assert report.status == SOLVED
        assert report.case == "reducible"
        assert monic(B) in report.artifacts["factors"]


def _symmetric_square_round_trips(count):
    rng = random.Random(22)
    for k in range(count):
        L2 = op("t^2 + x*t - 1").shift_coeffs(k)
        r = (X + rng.randint(1, 3)) / (X + rng.randint(4, 6))
        L = twist(dmod.sym_power_op(L2, 2).operator, r)
        report = solve_order3(L)
        assert report.status == SOLVED
        assert report.case == "symmetric-square"
        rebuilt = twist(dmod.sym_power_op(report.artifacts["L2"], 2).operator, report.artifacts["r"])
        assert monic(rebuilt) == monic(L)


def _liouvillian_round_trips(count):
    rng = random.Random(23)
    for _ in range(count):
        v = [1, rng.randint(1, 3) * X + rng.randint(-2, 2), rng.randint(0, 2)]
        L = dmod.minimal_operator(v, dmod.companion(op("t^3 - x"))).operator
        if L.order < 3:
            continue
        report = solve_order3(L)
        assert report.status == SOLVED
        assert report.case == "liouvillian"


def test_order3_round_trips():
    _reducible_round_trips(2)
    _liouvillian_round_trips(2)


@pytest.mark.slow
def test_order3_round_trips_ten_per_case():
    _reducible_round_trips(10)
    _symmetric_square_round_trips(10)
    _liouvillian_round_trips(10)
