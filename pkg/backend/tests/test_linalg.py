"""
Linear algebra tests over Q(x)
"""

import random

import pytest

from app.core.errors import AlgebraError
from app.services import linalg
from app.services.polyalg import FX, X


def random_matrix(rng, n):
    return linalg.matrix([[rng.randint(-3, 3) + rng.randint(-2, 2) * X for _ in range(n)] for _ in range(n)])


def diag(*values):
    n = len(values)
    return linalg.matrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def test_nullspace_shapes():
    assert linalg.nullspace(linalg.identity(3)) == []
    assert len(linalg.nullspace(linalg.zeros(2, 2))) == 2


def test_nullspace_of_rank_deficient_product():
    rng = random.Random(1)
    u = [[rng.randint(1, 4) + X for _ in range(4)] for _ in range(2)]
    v = [[rng.randint(-3, 3) * X + rng.randint(1, 3) for _ in range(4)] for _ in range(2)]
    rows = [[sum(u[k][i] * v[k][j] for k in range(2)) for j in range(4)] for i in range(4)]
    A = linalg.matrix(rows)
    kernel = linalg.nullspace(A)
    assert len(kernel) == 4 - linalg.rank(A)
    for w in kernel:
        assert all(not e for e in linalg.mat_vec(A, w))


def test_solve_reproduces_right_hand_side():
    rng = random.Random(2)
    A = random_matrix(rng, 3)
    b = [X, FX.one, X ** 2]
    v = linalg.solve(A, b)
    assert v is not None
    assert linalg.mat_vec(A, v) == b


def test_inverse_of_singular_rejected():
    with pytest.raises(AlgebraError):
        linalg.inv(linalg.matrix([[1, X], [2, 2 * X]]))


def test_kronecker_of_diagonals():
    a, b, c, d = X, X + 1, FX(2), 1 / X
    assert linalg.equal(linalg.kronecker(diag(a, b), diag(c, d)), diag(a * c, a * d, b * c, b * d))
    assert linalg.equal(linalg.kronecker(linalg.identity(2), linalg.identity(2)), linalg.identity(4))


def test_kronecker_rejects_non_square():
    with pytest.raises(AlgebraError):
        linalg.kronecker(linalg.zeros(2, 3), linalg.identity(2))


def test_symmetric_power_of_diagonal():
    assert linalg.equal(linalg.sym_power_matrix(linalg.identity(2), 2), linalg.identity(3))
    assert linalg.equal(linalg.sym_power_matrix(diag(2, 3), 2), diag(4, 6, 9))


def test_exterior_power_of_diagonal():
    a, b, c, d = X, X + 1, FX(2), FX(3)
    expected = diag(a * b, a * c, a * d, b * c, b * d, c * d)
    assert linalg.equal(linalg.ext_power_matrix(diag(a, b, c, d), 2), expected)
    assert linalg.equal(linalg.ext_power_matrix(linalg.identity(4), 2), linalg.identity(6))


def test_exterior_power_degree_range():
    with pytest.raises(AlgebraError):
        linalg.ext_power_matrix(linalg.identity(3), 4)


def _check_determinant_identities(rng, count):
    for _ in range(count):
        A, B = random_matrix(rng, 2), random_matrix(rng, 2)
        assert linalg.det(linalg.kronecker(A, B)) == linalg.det(A) ** 2 * linalg.det(B) ** 2
        assert linalg.det(linalg.sym_power_matrix(A, 2)) == linalg.det(A) ** 3
        C = random_matrix(rng, 3)
        assert linalg.det(linalg.sym_power_matrix(C, 2)) == linalg.det(C) ** 4
        assert linalg.det(linalg.ext_power_matrix(C, 2)) == linalg.det(C) ** 2
        D = random_matrix(rng, 4)
        assert linalg.det(linalg.ext_power_matrix(D, 2)) == linalg.det(D) ** 3


def test_determinant_identities():
    _check_determinant_identities(random.Random(3), 5)


@pytest.mark.slow
def test_determinant_identities_many():
    _check_determinant_identities(random.Random(30), 200)


def test_power_matrices_are_multiplicative():
    rng = random.Random(4)
    for n in (2, 3):
        A, B = random_matrix(rng, n), random_matrix(rng, n)
        assert linalg.equal(linalg.sym_power_matrix(A * B, 2),
                            linalg.sym_power_matrix(A, 2) * linalg.sym_power_matrix(B, 2))
        assert linalg.equal(linalg.ext_power_matrix(A * B, 2),
                            linalg.ext_power_matrix(A, 2) * linalg.ext_power_matrix(B, 2))
