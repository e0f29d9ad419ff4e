"""
Difference module tests: companion modules, minimal operators, tensor constructions
"""

import random

import pytest
from sympy.polys.domains import QQ

from app.core.errors import AlgebraError
from app.services import dmod, linalg
from app.services.dmod import DModule
from app.services.ore import OrePoly, SequenceOracle, apply, det_op, monic, parse_operator
from app.services.polyalg import FX, X


def op(text):
    return parse_operator(text)


def one_dim(r):
    return DModule(linalg.matrix([[r]]), ("b",))


def random_operator(rng, order):
    return OrePoly(tuple(rng.randint(1, 3) + rng.randint(-2, 2) * X for _ in range(order)) + (X + 1,))


def test_companion_shape_and_determinant():
    M = dmod.companion(op("t^2 - x"))
    assert linalg.equal(M.action, linalg.matrix([[0, 1], [X, 0]]))
    assert linalg.equal(dmod.companion(op("t - x")).action, linalg.matrix([[X]]))
    rng = random.Random(7)
    for order in (2, 3):
        L = random_operator(rng, order)
        assert linalg.det(dmod.companion(L).action) == det_op(L)


def test_companion_needs_trailing_coefficient():
    with pytest.raises(AlgebraError):
        dmod.companion(op("t^2 + t"))


def test_change_basis():
    M = one_dim(X ** 2)
    assert linalg.equal(dmod.change_basis(M, linalg.identity(1)).action, M.action)
    assert dmod.change_basis(M, linalg.matrix([[X]])).action.to_list()[0][0] == (X + 1) * X
    P = linalg.matrix([[1, X], [0, 2]])
    N = dmod.companion(op("t^2 - x*t + 1"))
    back = dmod.change_basis(dmod.change_basis(N, P), linalg.inv(P))
    assert linalg.equal(back.action, N.action)


def test_minimal_operator_of_generator_is_input():
    L = op("(x+1)*t^3 - x*t + 2")
    assert dmod.minimal_operator(dmod.unit_vector(3), dmod.companion(L)).operator == monic(L)


def test_minimal_operator_of_second_basis_vector():
    result = dmod.minimal_operator(dmod.unit_vector(2, 1), dmod.companion(op("t^2 - x")))
    assert result.operator == op("t^2 - (x+1)")
    assert not result.lower_than_expected


def test_minimal_operator_in_direct_sum():
    M = dmod.direct_sum(dmod.companion(op("t^2 - x")), dmod.companion(op("t - 2")))
    v = [FX.zero, FX.zero, FX.one]
    result = dmod.minimal_operator(v, M)
    assert result.operator == op("t - 2")
    assert result.lower_than_expected


def test_minimal_operator_of_zero_rejected():
    with pytest.raises(AlgebraError):
        dmod.minimal_operator([FX.zero, FX.zero], dmod.companion(op("t^2 - x")))


def test_tensor_constructions_and_determinants():
    assert dmod.tensor(one_dim(X), one_dim(FX(3))).action.to_list()[0][0] == 3 * X
    rng = random.Random(8)
    M = dmod.companion(random_operator(rng, 2))
    N = dmod.companion(random_operator(rng, 3))
    dM, dN = linalg.det(M.action), linalg.det(N.action)
    assert linalg.det(dmod.tensor(M, N).action) == dM ** 3 * dN ** 2
    assert linalg.det(dmod.sym_power(M, 3).action) == dM ** 6
    assert linalg.det(dmod.ext_power(N, 2).action) == dN ** 2
    with pytest.raises(AlgebraError):
        dmod.ext_power(M, 3)


def test_symmetric_product_of_order_one():
    assert dmod.sym_product_op(op("t - 2"), op("t - x")) == op("t - 2*x")
    assert dmod.sym_product_op(op("t - 2"), op("t - 1")) == op("t - 2")


def test_symmetric_product_annihilates_products():
    La, Lb = op("t^2 - x*t - 1"), op("t^2 + t - (x+2)")
    Ls = dmod.sym_product_op(La, Lb)
    assert Ls.order == 4
    u = SequenceOracle.from_operator(La, [1, 2], start=0)
    v = SequenceOracle.from_operator(Lb, [3, -1], start=0)
    w = SequenceOracle(lambda n: u(n) * v(n))
    assert all(apply(Ls, w, n) == 0 for n in range(2, 50) if apply(Ls, w, n) is not None)


def test_symmetric_square_matches_self_product():
    L = op("t^2 + x*t - 1")
    assert dmod.sym_power_op(L, 2).operator == dmod.sym_product_op(L, L)


def test_power_operators_expected_orders():
    L2 = op("t^2 - t - 1")
    assert dmod.sym_power_op(L2, 2).order == 3
    L4 = op("t^4 + x*t^2 - t + (x+1)")
    ext = dmod.ext_power_op(L4, 2)
    assert ext.order == 6 and not ext.lower_than_expected


def test_symmetric_square_of_cube_drops_order():
    cube = dmod.sym_power_op(op("t^2 - t - 1"), 3)
    assert cube.order == 4
    square = dmod.sym_power_op(cube.operator, 2)
    assert square.order == 7
    assert square.expected == 10
    assert square.lower_than_expected


def test_section_operator_order_drop():
    sec = dmod.section_operator(op("t^2 - x"), 2)
    assert sec.lower_than_expected
    assert sec.lp == op("t - 2*x")


def test_section_operator_of_second_component():
    sec = dmod.section_operator(op("t^2 - x"), 2, component=1)
    assert sec.ldown == op("t^2 - (x+1)")
    assert sec.lp == op("t - (2*x+1)")
    with pytest.raises(AlgebraError):
        dmod.section_operator(op("t^2 - x"), 2, component=2)


def test_appendix_split_identity_and_diagonal():
    I2 = linalg.identity(2)
    assert dmod.appendix_split(I2, I2).holds
    a1, a2, b1, b2 = X, X + 1, FX(2), FX(QQ(1, 3))
    A = linalg.matrix([[a1, 0], [0, a2]])
    B = linalg.matrix([[b1, 0], [0, b2]])
    split = dmod.appendix_split(A, B)
    assert split.holds
    first = split.blocks.to_list()
    assert [first[i][i] for i in range(3)] == [b1 * b2 * a1 ** 2, b1 * b2 * a1 * a2, b1 * b2 * a2 ** 2]


def _check_appendix_split(rng, count):
    for _ in range(count):
        A = linalg.matrix([[rng.randint(1, 3) + X, rng.randint(-2, 2)], [rng.randint(-2, 2), X - rng.randint(1, 3)]])
        B = linalg.matrix([[rng.randint(1, 3), 1 / (X + rng.randint(1, 3))], [X, rng.randint(1, 3)]])
        assert dmod.appendix_split(A, B).holds


def test_appendix_split_random_pairs():
    _check_appendix_split(random.Random(9), 3)


@pytest.mark.slow
def test_appendix_split_many_pairs():
    _check_appendix_split(random.Random(90), 50)


def test_appendix_split_rejects_singular():
    with pytest.raises(AlgebraError):
        dmod.appendix_split(linalg.zeros(2, 2), linalg.identity(2))
