"""
Hypergeometric machinery tests: polynomial and rational solutions, candidates, right factors
"""

import random

import pytest
from sympy.polys.domains import QQ

from app.core.errors import AlgebraError
from app.services import dmod, hyper, linalg, polyalg
from app.services.equiv import is_gauge_equivalent
from app.services.hyper import (DISCARDED, candidate_types, degree_bound, newton_polygon,
                                plucker_relations_hold, polynomial_solutions, rational_solutions,
                                right_factors, section_filter, universal_denominator)
from app.services.ore import OrePoly, det_op, mul, parse_operator, primitive_polys, right_divides
from app.services.polyalg import FX, PX, QX, X, shift
from app.services.shiftclass import SimClass


def op(text):
    return parse_operator(text)


def test_scalar_polynomial_solutions():
    sols = polynomial_solutions(linalg.matrix([[(X + 1) / X]]))
    assert sols.complete
    assert sols.basis == [[PX]]
    assert polynomial_solutions(linalg.matrix([[1]])).basis == [[QX.one]]
    assert polynomial_solutions(linalg.matrix([[2]])).basis == []


def test_polynomial_solutions_with_lambda():
    sols = polynomial_solutions(linalg.matrix([[2 * (X + 1) / X]]), lam=2)
    assert sols.basis == [[PX]]


def test_polynomial_solutions_of_system():
    A = linalg.matrix([[1, 1], [0, 1]])
    sols = polynomial_solutions(A)
    assert sols.complete
    assert len(sols.basis) == 2
    for P in sols.basis:
        shifted = [shift(FX.new(p), 1) for p in P]
        assert shifted == linalg.mat_vec(A, [FX.new(p) for p in P])


def test_zero_lambda_rejected():
    with pytest.raises(AlgebraError):
        polynomial_solutions(linalg.matrix([[1]]), lam=0)


def test_degree_bound():
    assert degree_bound(primitive_polys(op("t - 1"))) == 0
    # x*(x+1)*(x+2) is a solution
    assert degree_bound(primitive_polys(op("x*t - (x+3)"))) == 3
    assert degree_bound(primitive_polys(op("t - 2"))) == -1


def test_universal_denominator():
    assert universal_denominator(PX, PX + 1) == PX * (PX + 1)
    assert universal_denominator(PX, PX + QQ(1, 2)) == QX.one


def test_rational_solutions_order_one():
    sols = rational_solutions(op("(x+2)*t - x"))
    assert sols.complete
    assert len(sols.basis) == 1
    y = sols.basis[0]
    assert (X + 2) * shift(y, 1) == X * y
    assert polyalg.is_constant(y * X * (X + 1))


def test_rational_solutions_order_two():
    # 1 and 1/x
    sols = rational_solutions(op("(x+2)*t^2 - (2*x+2)*t + x"))
    assert len(sols.basis) == 2
    assert rational_solutions(op("t^2 - x")).basis == []


def test_newton_polygon_edges():
    edges = newton_polygon(primitive_polys(op("t^2 - (x+1)*t + x")))
    assert [(e.start, e.end) for e in edges] == [(0, 1), (1, 2)]
    assert [e.slope for e in edges] == [0, 1]


def test_candidate_types_cover_known_factors():
    candidates, extension = candidate_types(op("t^2 - (x+1)*t + x"), 1)
    assert extension == 0
    assert any(c.lam == FX.one for c in candidates)
    lams = [c.lam for c in candidate_types(op("t^2 - 5*t + 6"), 1)[0]]
    assert FX(2) in lams
    assert FX(3) in lams


def test_candidate_types_count_extensions():
    _, extension = candidate_types(op("t^2 - t - 1"), 1)
    assert extension >= 1


def test_right_factors_order_one():
    search = right_factors(op("t^2 - (x+1)*t + x"), 1)
    assert search.complete
    assert search.factors == [op("t - 1")]
    assert right_factors(op("t^2 - x"), 1).factors == []


def test_right_factors_of_product():
    B = op("t - (x+1)/x")
    L = mul(op("t - x"), B)
    search = right_factors(L, 1)
    assert B in search.factors
    for R in search.factors:
        assert right_divides(R, L)


def test_right_factors_order_two_constant_coefficients():
    L = op("t - 1")
    for k in (2, 3, 5):
        L = mul(L, op(f"t - {k}"))
    search = right_factors(L, 2)
    assert search.complete
    assert len(search.factors) == 6
    assert op("t^2 - 3*t + 2") in search.factors
    for R in search.factors:
        assert R.order == 2
        assert right_divides(R, L)


def test_right_factors_order_two_of_product():
    B = op("t^2 - x")
    L = mul(op("t - 2"), B)
    assert B in right_factors(L, 2).factors


def test_candidate_filter():
    L = mul(op("t^2 - x"), op("t - (x+2)"))
    plain = right_factors(L, 1)
    assert plain.factors == [op("t - (x+2)")]
    assert right_factors(L, 1, lambda c: True).factors == plain.factors
    rejected = right_factors(L, 1, lambda c: False)
    assert rejected.factors == []
    assert rejected.stats.after_filter == 0
    assert rejected.stats.total == plain.stats.total
    assert all(c.status == DISCARDED for c in rejected.candidates)


def test_factor_order_range():
    with pytest.raises(AlgebraError):
        right_factors(op("t^2 - x"), 2)


def test_plucker_relations():
    base = {I: FX.zero for I in linalg.wedge_indices(4, 2)}
    decomposable = dict(base)
    decomposable[(0, 1)] = FX.one
    assert plucker_relations_hold(decomposable, 4, 2)
    mixed = dict(decomposable)
    mixed[(2, 3)] = FX.one
    assert not plucker_relations_hold(mixed, 4, 2)


def test_section_order_drop_is_liouvillian():
    sf = hyper.order1_factors_of_section(op("t^2 - x"))
    assert sf.liouvillian
    assert sf.search is None
    assert sf.factors == []


def test_fully_filtered_search_skips_testing():
    search = right_factors(op("t^4 + t - x"), 2, lambda c: False)
    assert search.complete
    assert search.factors == []
    assert search.stats.tested == 0
    assert search.stats.after_filter == 0


def gauge_built_from_d2(a, b, c):
    """Order 4 operator gauge equivalent to one in Q(x)[t^2]"""
    Lt = op(f"t^4 + ({a}*x + {c})*t^2 - {b}*(x + {c + 1})^2")
    return dmod.minimal_operator([1, 1, 0, 0], dmod.companion(Lt)).operator


def _check_section_factor_dets(a, b, c):
    L = gauge_built_from_d2(a, b, c)
    assert L.order == 4
    sec = dmod.section_operator(L, 2)
    plain = right_factors(sec.lp, 2)
    filtered = right_factors(sec.lp, 2, section_filter(L, 2))
    assert sorted(map(str, filtered.factors)) == sorted(map(str, plain.factors))
    assert filtered.stats.after_filter < filtered.stats.total
    target = SimClass.of(det_op(L))
    for R in plain.factors:
        assert SimClass.of(det_op(R)).scaled(2) in (target, target.signed(-1))


@pytest.mark.parametrize("a,b,c", [(1, 1, 0), (2, 1, 1)])
def test_section_factor_dets_match(a, b, c):
    _check_section_factor_dets(a, b, c)


@pytest.mark.slow
@pytest.mark.parametrize("a", [1, 2, 3])
@pytest.mark.parametrize("b", [1, 2])
@pytest.mark.parametrize("c", [0, 1])
def test_section_factor_dets_match_grid(a, b, c):
    _check_section_factor_dets(a, b, c)


def random_factor(rng, order):
    if order == 1:
        return OrePoly.of(-(X + rng.randint(1, 4)) * rng.choice([1, 2, -1]), 1)
    return OrePoly.of(rng.choice([1, -1, 2]), rng.randint(-2, 2) + rng.randint(0, 2) * X, 1)


def _random_products(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        d = rng.choice([1, 2])
        A, B = random_factor(rng, rng.choice([1, 2])), random_factor(rng, d)
        L = mul(A, B)
        search = right_factors(L, d)
        assert search.factors
        for R in search.factors:
            assert right_divides(R, L)
        assert any(is_gauge_equivalent(R, B) is not None for R in search.factors)


def test_random_products():
    _random_products(4, 31)


@pytest.mark.slow
def test_random_products_hundred():
    _random_products(100, 32)
