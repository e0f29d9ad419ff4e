"""
Solve Pipelines - Order 3 and order 4 operators in terms of order 2 operators
Absolute factorization, tiered order reduction, symmetric product and symmetric cube cases
"""
import logging
import random
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, List, Optional

from sympy import primefactors

from app.core.config import settings
from app.core.errors import AlgebraError, RequiresExtension
from app.services import dmod, linalg, polyalg
from app.services.dmod import MinimalOperator, Section, section_operator
from app.services.equiv import projective_hom, verify_projective_map
from app.services.hyper import (CandidateStats, case4_filter, order1_factors_of_section,
                                rational_solutions, right_factors, section_filter)
from app.services.ore import ONE, OrePoly, det_op, monic, twist, unfold
from app.services.polyalg import FX, RatFunc, shift
from app.services.shiftclass import SimClass, rational_root

logger = logging.getLogger(__name__)

SOLVED = "solved"
FAIL = "fail"
INCOMPLETE = "incomplete"
REQUIRES_EXTENSION = "requires-extension"

__all__ = [
    "SolveReport", "AbsFactorization", "ReduceOrderResult", "section_operator",
    "abs_factorization", "reduce_order", "register_gauge_reducer", "solve_order3",
    "solve_order4", "case3a", "case3b", "split_exterior_section", "case4", "special_case",
]


@dataclass
class SolveReport:
    input: OrePoly
    case: str
    status: str
    artifacts: Dict[str, Any] = field(default_factory=dict)
    stats: Dict[str, CandidateStats] = field(default_factory=dict)
    reason: str = ""

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def _use_filter(use_filter: Optional[bool]) -> bool:
    return settings.candidate_filter == "det" if use_filter is None else use_filter


# Absolute factorization

@dataclass
class AbsFactorization:
    p: Optional[int] = None
    factors: List[OrePoly] = field(default_factory=list)
    sections: Dict[int, Section] = field(default_factory=dict)
    stats: Dict[int, CandidateStats] = field(default_factory=dict)
    status: str = "absolutely-irreducible"

    @property
    def absolutely_irreducible(self) -> bool:
        return self.status == "absolutely-irreducible"


def abs_factorization(L: OrePoly, use_filter: Optional[bool] = None) -> AbsFactorization:
    """[p, factors of L^(p) of order n/p] for the first prime p that splits, else absolutely irreducible"""
    n = L.order
    if n < 2:
        raise AlgebraError("absolute factorization needs order >= 2")
    use_filter = _use_filter(use_filter)
    result = AbsFactorization()
    incomplete = False
    for p in primefactors(n):
        sec = section_operator(L, p)
        result.sections[p] = sec
        if sec.lower_than_expected:
            logger.info(f"section p={p} has order {sec.lp.order} < {n}")
            result.p, result.factors, result.status = p, [ONE], "factored"
            return result
        search = right_factors(sec.lp, n // p, section_filter(L, p) if use_filter else None)
        result.stats[p] = search.stats
        if search.factors:
            result.p, result.factors, result.status = p, search.factors, "factored"
            return result
        incomplete = incomplete or not search.complete
    if incomplete:
        result.status = INCOMPLETE
    return result


# ReduceOrder

@dataclass
class ReduceOrderResult:
    ok: bool
    L2: Optional[OrePoly] = None
    r: Optional[RatFunc] = None
    tier: int = 1
    reason: str = ""


GaugeReducer = Callable[[OrePoly], ReduceOrderResult]
_gauge_reducer: Optional[GaugeReducer] = None


def register_gauge_reducer(reducer: Optional[GaugeReducer]) -> None:
    """Install the general gauge-case reduction used when exact matching fails"""
    global _gauge_reducer
    _gauge_reducer = reducer


def product_equation_solutions(kappa: RatFunc) -> List[RatFunc]:
    """Rational T with T(x) T(x+1) = kappa"""
    if not kappa:
        return []
    # T(x+2) kappa(x) = kappa(x+1) T(x)
    sols = rational_solutions(OrePoly.of(-shift(kappa, 1), 0, kappa))
    out = []
    for Ta in sols.basis:
        c2 = kappa / (Ta * shift(Ta, 1))
        if not polyalg.is_constant(c2):
            continue
        try:
            c = rational_root(polyalg.constant_value(c2), 2)
        except RequiresExtension:
            continue
        out.extend([Ta * c, -Ta * c])
    return out


def reduce_order(L3: OrePoly, gauge_reducer: Optional[GaugeReducer] = None) -> ReduceOrderResult:
    """L2 = t^2 - t + b and r with (t - r) sym-product Sym^2(L2) = L3 after normalization"""
    if L3.order != 3:
        raise AlgebraError("reduce_order expects an order 3 operator")
    Lm = monic(L3)
    s0, s1, s2 = Lm.coeffs[:3]
    if s0 and s1 and s2:
        kappa = s2 * shift(s0, 1) / s1
        for T in product_equation_solutions(kappa):
            r = shift(T, -2) - shift(s2, -2)
            if not r:
                continue
            b = shift(T, -1) / shift(r, 1)
            if not b:
                continue
            L2 = OrePoly.of(b, -1, 1)
            if monic(twist(dmod.sym_power_op(L2, 2).operator, r)) == Lm:
                logger.info(f"exact symmetric square: L2 = {L2}, r = {polyalg.format_ratfunc(r)}")
                return ReduceOrderResult(True, L2, r, 1)
    reducer = gauge_reducer or _gauge_reducer
    if reducer is not None:
        return reducer(L3)
    return ReduceOrderResult(False, tier=2, reason="gauge-case reduction not built-in")


# Order 3

def solve_order3(L: OrePoly, use_filter: Optional[bool] = None) -> SolveReport:
    if L.order != 3:
        raise AlgebraError("solve_order3 expects an order 3 operator")
    if not L.coeffs[0]:
        raise AlgebraError("zero trailing coefficient; normalize first")
    report = SolveReport(L, "none", FAIL)
    incomplete = False
    for d in (1, 2):
        search = right_factors(L, d)
        report.stats[f"factors d={d}"] = search.stats
        if search.factors:
            report.case, report.status = "reducible", SOLVED
            report.artifacts = {"factors": search.factors, "order": d}
            return report
        incomplete = incomplete or not search.complete
    sf = order1_factors_of_section(L, _use_filter(use_filter))
    if sf.search:
        report.stats["section factors"] = sf.search.stats
        incomplete = incomplete or not sf.search.complete
    if sf.liouvillian:
        report.case, report.status = "liouvillian", SOLVED
        report.artifacts = {"section": sf.section.lp, "factors": sf.factors, "detected_by": sf.reason}
        return report
    red = reduce_order(L)
    if red.ok:
        report.case, report.status = "symmetric-square", SOLVED
        report.artifacts = {"L2": red.L2, "r": red.r}
        return report
    report.status = INCOMPLETE if incomplete else FAIL
    report.reason = red.reason
    return report


# Order 4 helpers

def _finish(report: SolveReport, L: OrePoly, Ls: OrePoly, Ltarget: Optional[OrePoly] = None) -> SolveReport:
    """Projective map from Ls to the target, checked on sequences"""
    target = L if Ltarget is None else Ltarget
    pm = projective_hom(Ls, target)
    if pm is None:
        report.status, report.reason = FAIL, "no projective map to the input operator"
        return report
    if not verify_projective_map(target, Ls, pm):
        report.status, report.reason = FAIL, "projective map failed numeric verification"
        return report
    report.artifacts["Ls"] = Ls
    report.artifacts["projective_map"] = pm
    report.status = SOLVED
    return report


def _exterior_square(L: OrePoly, report: SolveReport,
                     ext2: Optional[MinimalOperator] = None) -> Optional[MinimalOperator]:
    L6 = ext2 or dmod.ext_power_op(L, 2)
    report.artifacts["L6"] = L6.operator
    if L6.lower_than_expected:
        report.status, report.reason = FAIL, f"exterior square has order {L6.order} < 6"
        return None
    return L6


def case3a(L: OrePoly, use_filter: Optional[bool] = None,
           ext2: Optional[MinimalOperator] = None) -> SolveReport:
    report = SolveReport(L, "symmetric-product", FAIL)
    try:
        L6 = _exterior_square(L, report, ext2)
        if L6 is None:
            return report
        # both order 3 pieces of the exterior square of L2a (*) L2b have det^2 ~ det(L)^3
        flt = case4_filter(L) if _use_filter(use_filter) else None
        search = right_factors(L6.operator, 3, flt)
        report.stats["L6 factors d=3"] = search.stats
        if len(search.factors) < 2:
            report.status = INCOMPLETE if not search.complete else FAIL
            report.reason = f"{len(search.factors)} order 3 factor(s) of the exterior square"
            return report
        L3a, L3b = search.factors[:2]
        report.artifacts["factors"] = [L3a, L3b]
        ra, rb = reduce_order(L3a), reduce_order(L3b)
        if not (ra.ok and rb.ok):
            report.status = INCOMPLETE
            report.reason = ra.reason or rb.reason
            return report
        report.artifacts["L2a"], report.artifacts["L2b"] = ra.L2, rb.L2
        Ls = dmod.sym_product_op(ra.L2, rb.L2)
        if Ls.order != 4:
            report.reason = f"symmetric product has order {Ls.order}"
            return report
        return _finish(report, L, Ls)
    except RequiresExtension as e:
        report.status, report.reason = REQUIRES_EXTENSION, str(e)
        return report


def _half_shift_representative(L2a: OrePoly, Ltarget: OrePoly):
    """(L2a', L2b', rho) with L2a' = twist(L2a, rho), L2b' its half shift and L2a' (*) L2b' = Ltarget"""
    half = polyalg.rat(1, 2)
    Ls = dmod.sym_product_op(L2a, L2a.shift_coeffs(half))
    Lsm, Lt = monic(Ls), monic(Ltarget)
    if Lsm == Lt:
        return L2a, L2a.shift_coeffs(half), FX.one
    c3, t3 = Lsm.coeff(3), Lt.coeff(3)
    if not c3 or not t3:
        return None
    sigma = shift(t3 / c3, -3)
    if monic(twist(Ls, sigma)) != Lt:
        return None
    # rho(x) rho(x+1/2) = sigma(x) becomes R(t) R(t+1) = sigma(t/2) with rho(x) = R(2x)
    for R in product_equation_solutions(polyalg.scale_substitute(sigma, 2, "forward")):
        rho = polyalg.scale_substitute(R, 2, "inverse")
        a = twist(L2a, rho)
        b = a.shift_coeffs(half)
        if monic(dmod.sym_product_op(a, b)) == Lt:
            return a, b, rho
    return None


def split_exterior_section(L6: OrePoly) -> Optional[List[OrePoly]]:
    """Sections of 1 and tau when the exterior square lies in D_2: the two order 3 pieces"""
    sec = section_operator(L6, 2)
    if sec.lp.order != 3:
        return None
    return [sec.lp, section_operator(L6, 2, component=1).lp]


def case3b(L: OrePoly, use_filter: Optional[bool] = None,
           ext2: Optional[MinimalOperator] = None) -> SolveReport:
    report = SolveReport(L, "symmetric-product-half-shift", FAIL)
    try:
        L6 = _exterior_square(L, report, ext2)
        if L6 is None:
            return report
        sec6 = section_operator(L6.operator, 2)
        report.artifacts["L6_section"] = sec6.lp
        if sec6.lower_than_expected:
            candidates = split_exterior_section(L6.operator)
            if candidates is None:
                report.reason = f"section of the exterior square has order {sec6.lp.order}"
                return report
            complete = True
        else:
            flt = section_filter(L6.operator, 2) if _use_filter(use_filter) else None
            search = right_factors(sec6.lp, 3, flt)
            report.stats["L6 section factors d=3"] = search.stats
            candidates, complete = search.factors, search.complete
        if not candidates:
            report.status = INCOMPLETE if not complete else FAIL
            report.reason = "no order 3 factor of the exterior square section"
            return report
        sec = section_operator(L, 2)
        report.artifacts["section"] = sec.lp
        reason = ""
        for L3a in candidates:
            red = reduce_order(L3a)
            if not red.ok:
                reason = red.reason
                continue
            report.artifacts["factors"] = [L3a]
            exact = _half_shift_representative(red.L2, sec.lp)
            if exact is not None:
                L2a, L2b, rho = exact
                report.artifacts.update({"L2a": L2a, "L2b": L2b, "rho": rho, "exact_equality": True})
                report.artifacts["recurrences"] = [unfold(L2b, 2), unfold(twist(L2b, -1), 2)]
                report.status = SOLVED
                return report
            L2a = red.L2
            L2b = L2a.shift_coeffs(polyalg.rat(1, 2))
            report.artifacts.update({"L2a": L2a, "L2b": L2b, "exact_equality": False})
            report.artifacts["recurrences"] = [unfold(L2b, 2)]
            Ls = dmod.sym_product_op(L2a, L2b)
            if Ls.order == 4:
                return _finish(report, L, Ls, sec.lp)
        report.status = INCOMPLETE
        report.reason = reason or "no factor reduced to a symmetric square"
        return report
    except RequiresExtension as e:
        report.status, report.reason = REQUIRES_EXTENSION, str(e)
        return report


def _reduce_and_map(report: SolveReport, L: OrePoly, L3: OrePoly) -> bool:
    red = reduce_order(L3)
    if not red.ok:
        report.reason = red.reason
        return False
    report.artifacts["L3"] = L3
    report.artifacts["L2"] = red.L2
    Ls = dmod.sym_power_op(red.L2, 3).operator
    _finish(report, L, Ls)
    return report.solved


def case4(L: OrePoly, use_filter: Optional[bool] = None) -> SolveReport:
    report = SolveReport(L, "symmetric-cube", FAIL)
    try:
        sym2 = dmod.sym_power_op(L, 2)
        report.artifacts["sym2_order"] = sym2.order
        if sym2.order == 7:
            return special_case(L, sym2)
        if sym2.order != 10:
            report.reason = f"symmetric square has order {sym2.order}"
            return report
        if not SimClass.of(det_op(L)).is_square():
            report.reason = "det(L) is not ~ a square"
            return report
        flt = case4_filter(L) if _use_filter(use_filter) else None
        search = right_factors(sym2.operator, 3, flt)
        report.stats["sym2 factors d=3"] = search.stats
        for L3 in search.factors:
            if _reduce_and_map(report, L, L3):
                return report
        if not report.solved:
            report.status = INCOMPLETE if not search.complete else FAIL
            report.reason = report.reason or "no order 3 factor of the symmetric square"
        return report
    except RequiresExtension as e:
        report.status, report.reason = REQUIRES_EXTENSION, str(e)
        return report


def _quotient_relation(span: List[list], b: list, A_T, order: int) -> Optional[OrePoly]:
    """Monic L3 with L3(b) in span, from tau-iterates of b"""
    iterates = [b]
    for _ in range(order):
        iterates.append(dmod.act(A_T, iterates[-1]))
    vectors = span + iterates
    M = linalg.matrix([[v[i] for v in vectors] for i in range(len(b))])
    R, pivots = linalg.rref(M)
    rows = R.to_list()
    base = len(span)
    j = next(k for k in range(len(vectors)) if k not in pivots)
    if j - base != order:
        return None
    c = [FX.zero] * (order + 1)
    c[order] = FX.one
    for r, pc in enumerate(pivots):
        if base <= pc < j:
            c[pc - base] = -rows[r][j]
    return OrePoly(tuple(c))


def special_case(L: OrePoly, sym2: Optional[MinimalOperator] = None) -> SolveReport:
    report = SolveReport(L, "symmetric-cube-special", FAIL)
    try:
        sym2 = sym2 or dmod.sym_power_op(L, 2)
        report.artifacts["sym2_order"] = sym2.order
        if sym2.order != 7:
            report.reason = f"symmetric square has order {sym2.order}, not 7"
            return report
        M = dmod.sym_power(dmod.companion(L), 2)
        A_T = M.action.transpose()
        span = sym2.span
        quotient = M.dim - len(span)
        choices = [dmod.unit_vector(M.dim, i) for i in range(M.dim)]
        rng = random.Random(settings.seed)
        for _ in range(5):
            choices.append([FX(rng.randint(-3, 3)) for _ in range(M.dim)])
        for b in choices:
            if linalg.rank(linalg.matrix(span + [b])) != len(span) + 1:
                continue
            L3 = _quotient_relation(span, b, A_T, quotient)
            if L3 is None:
                continue
            logger.info(f"special case: L3 = {L3}")
            if _reduce_and_map(report, L, L3):
                return report
        report.reason = report.reason or "no vector outside M7 gives a reducible quotient relation"
        return report
    except RequiresExtension as e:
        report.status, report.reason = REQUIRES_EXTENSION, str(e)
        return report


def solve_order4(L: OrePoly, use_filter: Optional[bool] = None) -> SolveReport:
    """Cases in order: reducible, absolute factorization, symmetric product, symmetric cube"""
    if L.order != 4:
        raise AlgebraError("solve_order4 expects an order 4 operator")
    if not L.coeffs[0]:
        raise AlgebraError("zero trailing coefficient; normalize first")
    stats: Dict[str, CandidateStats] = {}
    incomplete = False
    for d in (1, 2, 3):
        search = right_factors(L, d)
        stats[f"factors d={d}"] = search.stats
        if search.factors:
            return SolveReport(L, "reducible", SOLVED, {"factors": search.factors, "order": d}, stats)
        incomplete = incomplete or not search.complete
    absf = abs_factorization(L, use_filter)
    for p, s in absf.stats.items():
        stats[f"section p={p} factors"] = s
    if absf.status == "factored":
        artifacts = {"p": absf.p, "factors": absf.factors, "section": absf.sections[absf.p].lp}
        return SolveReport(L, "absolute-factorization", SOLVED, artifacts, stats)
    incomplete = incomplete or absf.status == INCOMPLETE
    reasons = []
    ext2 = dmod.ext_power_op(L, 2)
    cases = [partial(case3a, ext2=ext2), partial(case3b, ext2=ext2), case4]
    if not ext2.lower_than_expected and section_operator(ext2.operator, 2).lower_than_expected:
        # exterior square in D_2: the half-shift case needs no factoring
        cases[0], cases[1] = cases[1], cases[0]
    for fn in cases:
        report = fn(L, use_filter)
        report.stats = {**stats, **report.stats}
        if report.status in (SOLVED, REQUIRES_EXTENSION):
            return report
        incomplete = incomplete or report.status == INCOMPLETE
        reasons.append(f"{report.case}: {report.reason}")
    return SolveReport(L, "none", INCOMPLETE if incomplete else FAIL, {}, stats, "; ".join(reasons))
