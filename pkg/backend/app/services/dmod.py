"""
Difference Modules - tau-action matrices and the operators they produce
Companion modules, base change, minimal operators, tensor constructions, sections
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Tuple

from app.core.errors import AlgebraError
from app.services import linalg, polyalg
from app.services.linalg import Mat, Vec
from app.services.ore import OrePoly, monic, psi_inverse
from app.services.polyalg import FX, RatFunc, shift

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DModule:
    """Rows of action hold the coordinates of tau(b_i)"""
    action: Mat
    basis_labels: Tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.action.shape[0]


def unit_vector(n: int, i: int = 0) -> Vec:
    return [FX.one if j == i else FX.zero for j in range(n)]


def companion(L: OrePoly) -> DModule:
    n = L.order
    if n < 1:
        raise AlgebraError("companion module needs positive order")
    if not L.coeffs[0]:
        raise AlgebraError("zero trailing coefficient; normalize first")
    Lm = monic(L)
    rows = [unit_vector(n, i + 1) for i in range(n - 1)]
    rows.append([-c for c in Lm.coeffs[:n]])
    labels = tuple("1" if i == 0 else ("t" if i == 1 else f"t^{i}") for i in range(n))
    return DModule(linalg.matrix(rows), labels)


def change_basis(M: DModule, P: Mat) -> DModule:
    """New action tau(P) * A * P^-1, rows of P are the new basis vectors"""
    P_inv = linalg.inv(P)
    action = linalg.shift_matrix(P) * M.action * P_inv
    labels = tuple(f"e{i + 1}" for i in range(M.dim))
    return DModule(action, labels)


def power_action(A: Mat, step: int) -> Mat:
    """Action of tau^step: A(x+step-1) ... A(x+1) A(x)"""
    out = A
    for k in range(1, step):
        out = linalg.shift_matrix(A, k) * out
    return out


def act(A_T: Mat, v: Sequence[RatFunc], step: int = 1) -> Vec:
    """Coordinates of tau^step(v) given the transposed step action"""
    return linalg.mat_vec(A_T, [shift(c, step) for c in v])


@dataclass
class MinimalOperator:
    operator: OrePoly
    iterates: List[Vec]
    expected: int

    @property
    def order(self) -> int:
        return self.operator.order

    @property
    def lower_than_expected(self) -> bool:
        return self.order < self.expected

    @property
    def span(self) -> List[Vec]:
        """tau-iterates spanning the cyclic submodule"""
        return self.iterates[:self.order]


def minimal_operator(v: Sequence[RatFunc], M: DModule, step: int = 1) -> MinimalOperator:
    """Monic relation among v, T(v), T^2(v), ... with T = tau^step"""
    v = [polyalg.ratfunc(c) for c in v]
    n = M.dim
    if len(v) != n:
        raise AlgebraError(f"vector length {len(v)} does not match module dimension {n}")
    if not any(v):
        raise AlgebraError("minimal operator of the zero vector")
    A_T = power_action(M.action, step).transpose()
    iterates = [v]
    for _ in range(n):
        iterates.append(act(A_T, iterates[-1], step))
    cols = linalg.matrix([[it[i] for it in iterates] for i in range(n)])
    R, pivots = linalg.rref(cols)
    rows = R.to_list()
    k = next(j for j in range(n + 1) if j not in pivots)
    c = [FX.zero] * (k + 1)
    c[k] = FX.one
    for r, pc in enumerate(pivots):
        if pc < k:
            c[pc] = -rows[r][k]
    logger.debug(f"minimal operator: order {k} in dimension {n} (step {step})")
    return MinimalOperator(OrePoly(tuple(c)), iterates, n)


def tensor(M: DModule, N: DModule) -> DModule:
    labels = tuple(f"{a}*{b}" for a in M.basis_labels for b in N.basis_labels)
    return DModule(linalg.kronecker(M.action, N.action), labels)


def sym_power(M: DModule, d: int) -> DModule:
    monos = linalg.sym_monomials(M.dim, d)
    labels = tuple("*".join(f"b{i + 1}^{e}" for i, e in enumerate(m) if e) for m in monos)
    return DModule(linalg.sym_power_matrix(M.action, d), labels)


def ext_power(M: DModule, d: int) -> DModule:
    if not 1 <= d <= M.dim:
        raise AlgebraError(f"exterior power degree {d} out of range 1..{M.dim}")
    labels = tuple("^".join(f"b{i + 1}" for i in I) for I in linalg.wedge_indices(M.dim, d))
    return DModule(linalg.ext_power_matrix(M.action, d), labels)


def direct_sum(M: DModule, N: DModule) -> DModule:
    labels = tuple(f"m.{a}" for a in M.basis_labels) + tuple(f"n.{b}" for b in N.basis_labels)
    return DModule(linalg.block_diag(M.action, N.action), labels)


def sym_product_op(L: OrePoly, L2: OrePoly) -> OrePoly:
    """Minimal operator of 1*1 in the tensor product of companion modules"""
    M = tensor(companion(L), companion(L2))
    return minimal_operator(unit_vector(M.dim), M).operator


def sym_power_op(L: OrePoly, d: int) -> MinimalOperator:
    """Minimal operator of b1^d; expected order C(n+d-1, d)"""
    M = sym_power(companion(L), d)
    result = minimal_operator(unit_vector(M.dim), M)
    if result.lower_than_expected:
        logger.info(f"symmetric power d={d}: order {result.order} lower than expected {M.dim}")
    return result


def ext_power_op(L: OrePoly, d: int) -> MinimalOperator:
    """Minimal operator of b1 ^ ... ^ bd; expected order C(n, d)"""
    M = ext_power(companion(L), d)
    result = minimal_operator(unit_vector(M.dim), M)
    if result.lower_than_expected:
        logger.info(f"exterior power d={d}: order {result.order} lower than expected {M.dim}")
    return result


def expected_sym_order(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def expected_ext_order(n: int, d: int) -> int:
    return comb(n, d)


@dataclass
class Section:
    p: int
    ldown: OrePoly  # supported on powers of tau^p
    lp: OrePoly
    expected: int

    @property
    def lower_than_expected(self) -> bool:
        return self.lp.order < self.expected


def section_operator(L: OrePoly, p: int, component: int = 0) -> Section:
    """Minimal operator of tau^component under tau^p, pulled back by x -> p*x"""
    if p < 1:
        raise AlgebraError("section index must be positive")
    if not 0 <= component < L.order:
        raise AlgebraError(f"component {component} out of range 0..{L.order - 1}")
    M = companion(L)
    result = minimal_operator(unit_vector(M.dim, component), M, step=p)
    ldown = _spread(result.operator, p)
    lp = psi_inverse(ldown, p)
    logger.debug(f"section p={p}: order {lp.order} of {L.order}")
    return Section(p, ldown, lp, L.order)


def _spread(T_op: OrePoly, p: int) -> OrePoly:
    """Place the T^i coefficient at tau^(p*i)"""
    out = [FX.zero] * (p * T_op.order + 1)
    for i, c in enumerate(T_op.coeffs):
        out[p * i] = c
    return OrePoly(tuple(out))


# Appendix decomposition of the exterior square of a 2x2 tensor product

def appendix_basis() -> Mat:
    """Rows: e1, (e3-e4)/2, e6, e2, (e3+e4)/2, e5 in the wedge basis of (m*n)"""
    h = polyalg.rat(1, 2)
    rows = [
        [1, 0, 0, 0, 0, 0],
        [0, 0, h, -h, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, h, h, 0, 0],
        [0, 0, 0, 0, 1, 0],
    ]
    return linalg.matrix(rows)


@dataclass
class AppendixSplit:
    P: Mat
    transformed: Mat
    blocks: Mat

    @property
    def holds(self) -> bool:
        return linalg.equal(self.transformed, self.blocks)


def appendix_split(A: Mat, B: Mat) -> AppendixSplit:
    for name, Z in (("A", A), ("B", B)):
        if Z.shape != (2, 2):
            raise AlgebraError(f"{name} must be 2x2")
        if not linalg.det(Z):
            raise AlgebraError(f"{name} is singular")
    P = appendix_basis()
    W = linalg.ext_power_matrix(linalg.kronecker(A, B), 2)
    transformed = linalg.shift_matrix(P) * W * linalg.inv(P)
    blocks = linalg.block_diag(
        linalg.sym_power_matrix(A, 2) * linalg.det(B),
        linalg.sym_power_matrix(B, 2) * linalg.det(A),
    )
    return AppendixSplit(P, transformed, blocks)
