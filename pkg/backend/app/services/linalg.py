"""
Linear Algebra - Dense matrices over Q(x) (and QQ) on top of DomainMatrix
Elimination, kernels and the Kronecker / symmetric / exterior combinators
"""
import logging
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring as poly_ring

from app.core.errors import AlgebraError
from app.services.polyalg import K, RatFunc, ratfunc, shift

logger = logging.getLogger(__name__)

Mat = DomainMatrix
Vec = List[RatFunc]


def matrix(rows: Sequence[Sequence], domain=K) -> Mat:
    if domain == K:
        data = [[ratfunc(e) for e in row] for row in rows]
    else:
        data = [[domain.convert(e) for e in row] for row in rows]
    ncols = len(data[0]) if data else 0
    return DomainMatrix(data, (len(data), ncols), domain)


def identity(n: int, domain=K) -> Mat:
    return DomainMatrix.eye(n, domain).to_dense()


def zeros(m: int, n: int, domain=K) -> Mat:
    return DomainMatrix.zeros((m, n), domain).to_dense()


def column(v: Sequence, domain=K) -> Mat:
    return matrix([[e] for e in v], domain)


def entries(A: Mat) -> List[list]:
    return A.to_list()


def equal(A: Mat, B: Mat) -> bool:
    return A.shape == B.shape and A.to_list() == B.to_list()


def require_square(A: Mat, what: str = "matrix") -> int:
    m, n = A.shape
    if m != n:
        raise AlgebraError(f"{what} must be square, got {m}x{n}")
    return n


def shift_matrix(A: Mat, k=1) -> Mat:
    """Entrywise x -> x + k"""
    return A.applyfunc(lambda e: shift(e, k))


def mat_vec(A: Mat, v: Sequence) -> list:
    zero = A.domain.zero
    out = []
    for row in A.to_list():
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc += a * b
        out.append(acc)
    return out


def rref(A: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form; fraction-free with cleared denominators over Q(x)"""
    if A.domain == K:
        return A.rref(method="CD")
    return A.rref()


def nullspace(A: Mat) -> List[list]:
    """Kernel basis as lists, one free column set to 1 per vector"""
    m, n = A.shape
    one, zero = A.domain.one, A.domain.zero
    if m == 0:
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    rows = R.to_list()
    basis = []
    for j in range(n):
        if j in pivots:
            continue
        v = [zero] * n
        v[j] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][j]
        basis.append(v)
    return basis


def rank(A: Mat) -> int:
    if A.shape[0] == 0:
        return 0
    return len(rref(A)[1])


def solve(A: Mat, b: Sequence) -> Optional[list]:
    """One solution of A v = b (free variables zero), None if inconsistent"""
    m, n = A.shape
    aug = A.hstack(column(b, A.domain))
    R, pivots = rref(aug)
    if n in pivots:
        return None
    rows = R.to_list()
    v = [A.domain.zero] * n
    for r, pc in enumerate(pivots):
        v[pc] = rows[r][n]
    return v


def inv(A: Mat) -> Mat:
    n = require_square(A)
    R, pivots = rref(A.hstack(identity(n, A.domain)))
    if tuple(pivots[:n]) != tuple(range(n)):
        raise AlgebraError("singular matrix")
    return R.extract(list(range(n)), list(range(n, 2 * n)))


def det(A: Mat):
    require_square(A)
    return A.det()


def kronecker(A: Mat, B: Mat) -> Mat:
    n = require_square(A, "left factor")
    m = require_square(B, "right factor")
    a, b = A.to_list(), B.to_list()
    zero = A.domain.zero
    rows = [[zero] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            if not a[i][j]:
                continue
            for k in range(m):
                for l in range(m):
                    rows[i * m + k][j * m + l] = a[i][j] * b[k][l]
    return DomainMatrix(rows, (n * m, n * m), A.domain)


def block_diag(*blocks: Mat) -> Mat:
    domain = blocks[0].domain
    size = sum(B.shape[0] for B in blocks)
    rows = [[domain.zero] * size for _ in range(size)]
    offset = 0
    for B in blocks:
        k = require_square(B, "block")
        for i, row in enumerate(B.to_list()):
            rows[offset + i][offset:offset + k] = row
        offset += k
    return DomainMatrix(rows, (size, size), domain)


def sym_monomials(n: int, d: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of degree d in graded lexicographic order, b1 > b2 > ..."""
    result = []
    for idx in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in idx:
            e[i] += 1
        result.append(tuple(e))
    return result


def wedge_indices(n: int, d: int) -> List[Tuple[int, ...]]:
    """Index tuples i1 < ... < id in lexicographic order"""
    return list(combinations(range(n), d))


def sym_dimension(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def sym_power_matrix(A: Mat, d: int) -> Mat:
    """Action on degree-d monomials: row of m = coefficients of prod tau(b_i)"""
    n = require_square(A)
    if d < 1:
        raise AlgebraError("symmetric power degree must be positive")
    R, *gens = poly_ring([f"b{i + 1}" for i in range(n)], A.domain)
    a = A.to_list()
    forms = [sum((gens[j] * a[i][j] for j in range(n) if a[i][j]), R.zero) for i in range(n)]
    monos = sym_monomials(n, d)
    rows = []
    for mono in monos:
        image = R.one
        for i, e in enumerate(mono):
            if e:
                image *= forms[i] ** e
        rows.append([image.get(target, A.domain.zero) for target in monos])
    return DomainMatrix(rows, (len(monos), len(monos)), A.domain)


def ext_power_matrix(A: Mat, d: int) -> Mat:
    """d x d minors, rows and columns indexed by lexicographic wedges"""
    n = require_square(A)
    if not 1 <= d <= n:
        raise AlgebraError(f"exterior power degree {d} out of range 1..{n}")
    idx = wedge_indices(n, d)
    if d == 1:
        return A
    rows = [[A.extract(list(I), list(J)).det() for J in idx] for I in idx]
    return DomainMatrix(rows, (len(idx), len(idx)), A.domain)
