"""
Equivalence - Gauge and projective maps between difference operators
Rational solutions of systems, Hom spaces and the +-r twist search
"""
import logging
import random
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional

from sympy.polys.domains import QQ

from app.core.config import settings
from app.core.errors import AlgebraError
from app.services import dmod, linalg, polyalg
from app.services.hyper import DegreeCap, Solutions, polynomial_solutions, universal_denominator
from app.services.linalg import Mat
from app.services.ore import (OrePoly, SequenceOracle, apply, det_op, gcrd, monic, mul,
                              regular_start, right_divides, twist)
from app.services.polyalg import FX, QX, RatFunc, shift, shift_poly
from app.services.shiftclass import class_roots

logger = logging.getLogger(__name__)

GAUGE_RETRIES = 5


def _common_denominator(A: Mat):
    dens = [polyalg.den(e) for row in A.to_list() for e in row if e]
    return reduce(lambda a, b: a.lcm(b), dens, QX.one)


def rational_solutions_system(A: Mat, degree_cap: DegreeCap = "auto") -> Solutions:
    """Rational vectors Y with Y(x+1) = A Y"""
    n = linalg.require_square(A)
    if not linalg.det(A):
        raise AlgebraError("system matrix must be invertible")
    top = shift_poly(_common_denominator(A), -1)
    bottom = _common_denominator(linalg.inv(A))
    U = universal_denominator(bottom, top)
    logger.debug(f"universal denominator of degree {U.degree()} for a {n}x{n} system")
    # P = U Y satisfies P(x+1) = (U(x+1)/U(x)) A P
    factor = FX.new(shift_poly(U, 1), U)
    sols = polynomial_solutions(A * factor, 1, degree_cap)
    basis = [[FX.new(P, U) for P in vec] for vec in sols.basis]
    return Solutions(basis, sols.complete, sols.bound)


@dataclass
class GaugeMap:
    """G with source*G in D*target; maps V(target) onto V(source)"""
    G: OrePoly
    source: OrePoly
    target: OrePoly

    def verify(self) -> bool:
        return right_divides(self.target, mul(self.source, self.G)) and gcrd(self.G, self.target).order == 0


@dataclass
class HomSpace:
    basis: List[OrePoly]
    complete: bool = True


def hom_system(L1: OrePoly, L2: OrePoly) -> Mat:
    """Z_k = coordinates of tau^k G mod L2, stacked for k < ord L1"""
    n1, n2 = L1.order, L2.order
    A2 = dmod.companion(L2).action
    step = linalg.inv(A2).transpose()
    L1m = monic(L1)
    size = n1 * n2
    rows = [[FX.zero] * size for _ in range(size)]
    blocks = step.to_list()

    def put(bi, bj, scale):
        for i in range(n2):
            for j in range(n2):
                if blocks[i][j]:
                    rows[bi * n2 + i][bj * n2 + j] += scale * blocks[i][j]

    for k in range(n1 - 1):
        put(k, k + 1, FX.one)
    for k in range(n1):
        if L1m.coeffs[k]:
            put(n1 - 1, k, -L1m.coeffs[k])
    return linalg.matrix(rows)


def gauge_hom(L1: OrePoly, L2: OrePoly, degree_cap: DegreeCap = "auto") -> HomSpace:
    """All G with ord G < ord L2 and L1*G = 0 mod L2"""
    if L1.order < 1 or L2.order < 1:
        raise AlgebraError("gauge maps need operators of positive order")
    n2 = L2.order
    sols = rational_solutions_system(hom_system(L1, L2), degree_cap)
    basis = [OrePoly(tuple(Z[:n2])) for Z in sols.basis]
    if not sols.complete:
        logger.warning("hom space search truncated by the degree cap")
    return HomSpace(basis, sols.complete)


def is_gauge_equivalent(L1: OrePoly, L2: OrePoly, degree_cap: DegreeCap = "auto") -> Optional[GaugeMap]:
    """Invertible G with G(V(L2)) = V(L1), or None"""
    if L1.order != L2.order:
        return None
    hom = gauge_hom(L1, L2, degree_cap)
    if not hom.basis:
        return None
    trials = list(hom.basis)
    if len(trials) > 1:
        trials.append(reduce(lambda a, b: a + b, trials))
        rng = random.Random(settings.seed)
        for _ in range(GAUGE_RETRIES):
            trials.append(reduce(lambda a, b: a + b, (G.scale(rng.randint(1, 9)) for G in hom.basis)))
    for G in trials:
        if G and gcrd(G, L2).order == 0:
            gm = GaugeMap(G, L1, L2)
            if not right_divides(L2, mul(L1, G)):
                raise AlgebraError("hom space element fails the divisibility check")
            return gm
    return None


def twist_class_root(L: OrePoly, Ltarget: OrePoly) -> Optional[List[RatFunc]]:
    """Rational r with r^n det(L) ~ det(Ltarget), both signs for even n"""
    n = L.order
    return class_roots(det_op(Ltarget) / det_op(L), n)


@dataclass
class ProjectiveMap:
    """gauge maps V((tau - r) sym-product source) onto V(target)"""
    r: RatFunc
    gauge: GaugeMap


def projective_hom(L: OrePoly, Ltarget: OrePoly, degree_cap: DegreeCap = "auto") -> Optional[ProjectiveMap]:
    if L.order != Ltarget.order:
        raise AlgebraError("projective equivalence needs equal orders")
    roots = twist_class_root(L, Ltarget)
    if roots is None:
        logger.info("determinant ratio has no rational n-th root up to shift quotients")
        return None
    for r in roots:
        gm = is_gauge_equivalent(Ltarget, twist(L, r), degree_cap)
        if gm is not None:
            logger.info(f"projective map found with r = {polyalg.format_ratfunc(r)}")
            return ProjectiveMap(r, gm)
    return None


def _hypergeometric(r: RatFunc, start: int) -> SequenceOracle:
    """h(start) = 1, h(n+1) = r(n) h(n)"""
    values = [QQ.one]

    def gen(m):
        while start + len(values) <= m:
            v = polyalg.evaluate(r, start + len(values) - 1)
            if v is None or not v:
                raise AlgebraError(f"twist has a zero or pole at {start + len(values) - 1}")
            values.append(values[-1] * v)
        return values[m - start]
    return SequenceOracle(gen, start, "twist")


def _singular_points(f: RatFunc) -> set:
    points = set()
    for p in (polyalg.num(f), polyalg.den(f)):
        if p.degree() > 0:
            points |= polyalg.integer_roots(p)
    return points


def verify_projective_map(L: OrePoly, Ls: OrePoly, pmap: ProjectiveMap, terms: Optional[int] = None,
                          seed: Optional[int] = None) -> bool:
    """Random solutions of Ls, twisted and mapped through G, are annihilated by L"""
    terms = terms or settings.verify_terms
    rng = random.Random(settings.seed if seed is None else seed)
    G = pmap.gauge.G
    start = max([regular_start(Ls)] + [p + 1 for p in _singular_points(pmap.r)])
    y = SequenceOracle.from_operator(Ls, [rng.randint(-9, 9) or 1 for _ in range(Ls.order)], start)
    h = _hypergeometric(pmap.r, start)

    def mapped(n):
        total = QQ.zero
        for i, g in enumerate(G.coeffs):
            if not g:
                continue
            v = polyalg.evaluate(g, n)
            if v is None:
                return None
            total += v * h(n + i) * y(n + i)
        return total

    valid = 0
    n = start
    limit = start + 4 * terms + L.order
    while valid < terms and n < limit:
        window = [mapped(n + i) for i in range(L.order + 1)]
        if all(w is not None for w in window):
            res = apply(L, lambda m: window[m - n], n)
            if res is not None:
                if res:
                    logger.warning(f"projective map residual {res} at n = {n}")
                    return False
                valid += 1
        n += 1
    return valid >= terms
