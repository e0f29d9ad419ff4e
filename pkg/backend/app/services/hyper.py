"""
Hypergeometric Solutions - Polynomial and rational solutions, candidate types, right factors
Degree bounds, universal denominators, Newton polygon candidates and exterior-power factor search
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from sympy.polys.domains import QQ
from tqdm import tqdm

from app.core.config import settings
from app.core.errors import AlgebraError
from app.services import dmod, linalg, polyalg
from app.services.dmod import DModule, MinimalOperator, Section
from app.services.linalg import Mat
from app.services.ore import OrePoly, det_op, monic, primitive_polys, right_divides, twist
from app.services.polyalg import FX, PX, QX, X, Poly, Rat, RatFunc, ratfunc, shift, shift_poly
from app.services.shiftclass import SimClass, orbit_representative

logger = logging.getLogger(__name__)

DegreeCap = Union[int, str, None]
CYCLIC_RETRIES = 5

PENDING = "pending"
DISCARDED = "discarded"
TESTED = "tested"


def _cap(degree_cap: DegreeCap) -> int:
    if degree_cap is None or degree_cap == "auto":
        return settings.degree_cap
    return int(degree_cap)


@dataclass
class Solutions:
    """Solution basis plus whether the degree search was exhaustive"""
    basis: list
    complete: bool = True
    bound: Optional[int] = None


# Scalar equations

def _falling(k: int) -> Poly:
    out = QX.one
    for j in range(k):
        out *= PX - j
    return out


def degree_bound(polys: Sequence[Poly]) -> int:
    """Largest possible degree of a polynomial y with sum p_i(x) y(x+i) = 0, -1 if none"""
    m = len(polys) - 1
    # tau^i = (1 + Delta)^i
    q = [sum((polys[i] * comb(i, k) for i in range(k, m + 1) if polys[i]), QX.zero)
         for k in range(m + 1)]
    live = [k for k in range(m + 1) if q[k]]
    if not live:
        raise AlgebraError("degree bound of the zero operator")
    b = max(q[k].degree() - k for k in live)
    phi = sum((_falling(k) * polyalg.lc(q[k]) for k in live if q[k].degree() - k == b), QX.zero)
    roots = [r for r in polyalg.integer_roots(phi) if r >= 0]
    return max(roots, default=-1)


def _coefficient_matrix(columns: List[Poly]) -> Mat:
    height = max((polyalg.degree(c) for c in columns), default=-1) + 1
    return linalg.matrix([[polyalg.coeff(c, r) for c in columns] for r in range(height)], QQ)


def _kernel(columns: List[Poly]) -> List[list]:
    M = _coefficient_matrix(columns)
    if M.shape[0] == 0:
        return [[QQ.one if i == j else QQ.zero for i in range(len(columns))]
                for j in range(len(columns))]
    return linalg.nullspace(M)


def bounded_polynomial_solutions(polys: Sequence[Poly], N: int) -> List[Poly]:
    """Basis of polynomial solutions of degree <= N"""
    if N < 0:
        return []
    columns = []
    for j in range(N + 1):
        image = QX.zero
        for i, p in enumerate(polys):
            if p:
                image += p * (PX + i) ** j
        columns.append(image)
    return [polyalg.poly(v) for v in _kernel(columns)]


def universal_denominator(bottom: Poly, top: Poly) -> Poly:
    """Multiple of every denominator: orbit minima divide bottom, orbit maxima divide top"""
    U = QX.one
    if not bottom or not top or bottom.degree() <= 0 or top.degree() <= 0:
        return U
    H = polyalg.dispersion(top, bottom)
    if H is None:
        return U
    for i in range(H, -1, -1):
        d = top.gcd(shift_poly(bottom, i))
        if d.degree() <= 0:
            continue
        d = d.monic()
        top = top.exquo(d)
        bottom = bottom.exquo(shift_poly(d, -i))
        for j in range(i + 1):
            U *= shift_poly(d, -j)
    return U


@dataclass
class RationalAnsatz:
    """y = P/U(x - offset) with P a polynomial solution of polys"""
    polys: List[Poly]
    denominator: Poly
    bound: int
    offset: int = 0


def rational_ansatz(L: OrePoly) -> RationalAnsatz:
    offset = 0
    while not L.coeffs[offset]:
        offset += 1
    L = OrePoly(L.coeffs[offset:])
    polys = primitive_polys(L)
    m = len(polys) - 1
    if m == 0:
        return RationalAnsatz([], QX.one, -1, offset)
    U = universal_denominator(polys[0], shift_poly(polys[m], -m))
    shifted = [shift_poly(U, i) for i in range(m + 1)]
    D = reduce(lambda a, b: a.lcm(b), shifted)
    cleared = [p * D.exquo(s) for p, s in zip(polys, shifted)]
    return RationalAnsatz(cleared, U, degree_bound(cleared), offset)


def solve_ansatz(ansatz: RationalAnsatz, degree_cap: DegreeCap = None) -> Solutions:
    if not ansatz.polys:
        return Solutions([], True, -1)
    cap = _cap(degree_cap)
    N = min(ansatz.bound, cap)
    basis = [polyalg.shift(FX.new(P, ansatz.denominator), -ansatz.offset)
             for P in bounded_polynomial_solutions(ansatz.polys, N)]
    return Solutions(basis, ansatz.bound <= cap, ansatz.bound)


def rational_solutions(L: OrePoly, degree_cap: DegreeCap = None) -> Solutions:
    """All rational y with L(y) = 0"""
    if not L:
        raise AlgebraError("rational solutions of the zero operator")
    return solve_ansatz(rational_ansatz(L), degree_cap)


# Systems tau(Y) = B Y

def _limit(e: RatFunc) -> Rat:
    n, d = e.numer, e.denom
    if n.degree() < d.degree():
        return QQ.zero
    return n.LC / d.LC


def system_degree_bound(B: Mat) -> int:
    """Degree bound for polynomial Y with Y(x+1) = B(x) Y(x); B invertible"""
    n = linalg.require_square(B)
    rows = B.to_list()
    vals = [polyalg.valuation_at_infinity(e) for row in rows for e in row if e]
    if vals and min(vals) > 0:
        return -1
    inv_rows = linalg.inv(B).to_list()
    inv_vals = [polyalg.valuation_at_infinity(e) for row in inv_rows for e in row if e]
    if inv_vals and min(inv_vals) > 0:
        return -1
    if vals and min(vals) == 0:
        B0 = linalg.matrix([[_limit(e) if e else QQ.zero for e in row] for row in rows], QQ)
        I = linalg.identity(n, QQ)
        if linalg.rank(B0 - I) == n:
            return -1
        if linalg.equal(B0, I):
            E = B - linalg.identity(n)
            B1 = []
            for row in E.to_list():
                B1.append([_limit(e * X) if e else QQ.zero for e in row])
            charpoly = QX.from_list(linalg.matrix(B1, QQ).charpoly())
            roots = [r for r in polyalg.integer_roots(charpoly) if r >= 0]
            return max(roots, default=-1)
    # uncouple one coordinate at a time and take the scalar bounds
    module = DModule(B, tuple(f"y{i}" for i in range(n)))
    bound = -1
    for i in range(n):
        op = dmod.minimal_operator(dmod.unit_vector(n, i), module).operator
        bound = max(bound, degree_bound(primitive_polys(op)))
    return bound


def polynomial_solutions(A: Mat, lam=1, degree_cap: DegreeCap = "auto") -> Solutions:
    """Polynomial vectors P with P(x+1) = lam^-1 A P"""
    n = linalg.require_square(A)
    lam = ratfunc(lam)
    if not lam:
        raise AlgebraError("lambda must be nonzero")
    B = A * (1 / lam)
    if n == 1:
        b = B.to_list()[0][0]
        if not b:
            return Solutions([], True, -1)
        polys = primitive_polys(OrePoly.of(-b, 1))
        bound = degree_bound(polys)
        cap = _cap(degree_cap)
        basis = [[P] for P in bounded_polynomial_solutions(polys, min(bound, cap))]
        return Solutions(basis, bound <= cap, bound)
    if not linalg.det(B):
        raise AlgebraError("system matrix must be invertible")
    bound = system_degree_bound(B)
    cap = _cap(degree_cap)
    N = min(bound, cap)
    if bound > cap:
        logger.warning(f"degree bound {bound} exceeds cap {cap}; search truncated")
    if N < 0:
        return Solutions([], True, bound)
    rows = B.to_list()
    D = reduce(lambda a, b: a.lcm(b), (polyalg.den(e) for row in rows for e in row if e), QX.one)
    DB = [[polyalg.num(e) * D.exquo(polyalg.den(e)) if e else QX.zero for e in row] for row in rows]
    columns = []
    for k in range(n):
        for j in range(N + 1):
            col = []
            for i in range(n):
                entry = -DB[i][k] * PX ** j
                if i == k:
                    entry += D * (PX + 1) ** j
                col.append(entry)
            columns.append(col)
    height = max(polyalg.degree(e) for col in columns for e in col) + 1
    if height <= 0:
        kernel = [[QQ.one if i == j else QQ.zero for i in range(len(columns))] for j in range(len(columns))]
    else:
        M = linalg.matrix([[polyalg.coeff(col[i], r) for col in columns]
                           for i in range(n) for r in range(height)], QQ)
        kernel = linalg.nullspace(M)
    basis = []
    for v in kernel:
        basis.append([polyalg.poly(v[k * (N + 1):(k + 1) * (N + 1)]) for k in range(n)])
    return Solutions(basis, bound <= cap, bound)


# Candidate types

@dataclass
class CandidateType:
    z: Rat
    factors: Tuple[Tuple[Poly, int], ...]
    provenance: str
    status: str = PENDING
    reason: str = ""
    bound: Optional[int] = None

    @property
    def lam(self) -> RatFunc:
        out = FX(self.z)
        for f, e in self.factors:
            out *= FX.new(f) ** e
        return out

    @property
    def degree(self) -> int:
        return sum(f.degree() * e for f, e in self.factors)

    @property
    def sim_class(self) -> SimClass:
        return SimClass.from_factors(self.z, self.factors)

    def describe(self) -> str:
        return polyalg.format_ratfunc(self.lam)


@dataclass
class CandidateStats:
    total: int = 0
    after_filter: int = 0
    tested: int = 0
    factors_found: int = 0
    degenerate: int = 0
    requires_extension: int = 0
    incomplete: int = 0


@dataclass(frozen=True)
class Edge:
    start: int
    end: int
    slope: Rat  # growth exponent k of y(x+1)/y(x) ~ z x^k
    poly: Poly

    @property
    def length(self) -> int:
        return self.end - self.start


def newton_polygon(polys: Sequence[Poly]) -> List[Edge]:
    """Upper hull of (i, deg a_i) with the edge characteristic polynomials"""
    points = [(i, p.degree()) for i, p in enumerate(polys) if p]
    hull: List[Tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    edges = []
    for (i0, h0), (i1, h1) in zip(hull, hull[1:]):
        slope = QQ(h1 - h0, i1 - i0)
        E = QX.zero
        for i in range(i0, i1 + 1):
            p = polys[i]
            if p and QQ(p.degree() - h0) == slope * (i - i0):
                E += QX({(i - i0,): polyalg.lc(p)})
        edges.append(Edge(i0, i1, -slope, E))
    return edges


def _companion_qq(g: Poly) -> Mat:
    g = g.monic()
    m = g.degree()
    rows = [[QQ.one if j == i + 1 else QQ.zero for j in range(m)] for i in range(m - 1)]
    rows.append([-polyalg.coeff(g, j) for j in range(m)])
    return linalg.matrix(rows, QQ)


def _edge_roots(edge: Edge) -> Tuple[List[Rat], Poly]:
    """Rational roots with multiplicity and the product of the remaining factors"""
    roots: List[Rat] = []
    rest = QX.one
    for f, m in polyalg.factor(edge.poly).factors:
        if f.degree() == 1:
            roots.extend([-polyalg.coeff(f, 0)] * m)
        else:
            rest *= f ** m
    return roots, rest


def _subset_products(values: List[Rat], k: int) -> Set[Rat]:
    out = set()
    for combo in combinations(values, k):
        out.add(reduce(lambda a, b: a * b, combo, QQ.one))
    return out


def _edge_constants(split: List[Tuple[List[Rat], Poly]], counts: Sequence[int]) -> Tuple[Set[Rat], int]:
    """Rational products of counts[s] roots taken from each edge s"""
    per_edge = []
    for (roots, rest), c in zip(split, counts):
        options = []
        for c1 in range(max(0, c - polyalg.degree(rest)), min(c, len(roots)) + 1):
            options.append((_subset_products(roots, c1), rest, c - c1))
        per_edge.append(options)
    constants: Set[Rat] = set()
    extension = 0
    for choice in product(*per_edge):
        rational = {QQ.one}
        irrational = None
        for values, rest, c2 in choice:
            rational = {a * b for a in rational for b in values}
            if c2:
                W = linalg.ext_power_matrix(_companion_qq(rest), c2)
                irrational = W if irrational is None else linalg.kronecker(irrational, W)
        eigen = {QQ.one}
        if irrational is not None:
            charpoly = QX.from_list(irrational.charpoly())
            eigen = set(polyalg.rational_roots(charpoly))
            extension += sum(1 for f, _ in polyalg.factor(charpoly).factors if f.degree() > 1)
        constants |= {a * b for a in rational for b in eigen}
    return constants, extension


def _compositions(d: int, limits: Sequence[int]):
    if not limits:
        if d == 0:
            yield ()
        return
    for c in range(min(d, limits[0]) + 1):
        for rest in _compositions(d - c, limits[1:]):
            yield (c,) + rest


def _exponent_vectors(orbits: List[Tuple[Poly, int, int]], target: int) -> List[Tuple[Tuple[Poly, int], ...]]:
    """Exponents e_f in [low_f, high_f] with sum e_f deg f = target"""
    degs = [f.degree() for f, _, _ in orbits]
    lo = [0] * (len(orbits) + 1)
    hi = [0] * (len(orbits) + 1)
    for i in range(len(orbits) - 1, -1, -1):
        lo[i] = lo[i + 1] + orbits[i][1] * degs[i]
        hi[i] = hi[i + 1] + orbits[i][2] * degs[i]
    out = []

    def walk(i, remaining, acc):
        if i == len(orbits):
            if remaining == 0:
                out.append(tuple(acc))
            return
        f, low, high = orbits[i]
        for e in range(low, high + 1):
            rest = remaining - e * degs[i]
            if lo[i + 1] <= rest <= hi[i + 1]:
                walk(i + 1, rest, acc + [(f, e)] if e else acc)
    walk(0, target, [])
    return out


def _orbit_ranges(a0: Poly, an: Poly) -> List[Tuple[Poly, int, int]]:
    trailing: Dict[Poly, int] = {}
    leading: Dict[Poly, int] = {}
    for poly, bucket in ((a0, trailing), (an, leading)):
        if poly.degree() <= 0:
            continue
        for f, m in polyalg.factor(poly).factors:
            rep = orbit_representative(f)
            bucket[rep] = bucket.get(rep, 0) + m
    reps = sorted(set(trailing) | set(leading), key=lambda f: polyalg.factor_key((f, 0)))
    return [(f, -leading.get(f, 0), trailing.get(f, 0)) for f in reps]


def candidate_types(L: OrePoly, d: int) -> Tuple[List[CandidateType], int]:
    """Candidates for det(R) up to ~, and the count of constants needing an extension"""
    n = L.order
    if not 1 <= d < n:
        raise AlgebraError(f"factor order {d} out of range 1..{n - 1}")
    if not L.coeffs[0]:
        raise AlgebraError("zero trailing coefficient; normalize first")
    polys = primitive_polys(L)
    edges = newton_polygon(polys)
    split = [_edge_roots(e) for e in edges]
    orbits = _orbit_ranges(polys[0], shift_poly(polys[n], -(n - 1)))
    seen: Dict[tuple, CandidateType] = {}
    extension = 0
    for counts in _compositions(d, [e.length for e in edges]):
        total_slope = sum((e.slope * c for e, c in zip(edges, counts)), QQ.zero)
        if QQ.denom(total_slope) != 1:
            continue
        target = int(QQ.numer(total_slope))
        constants, ext = _edge_constants(split, counts)
        extension += ext
        if not constants:
            continue
        vectors = _exponent_vectors(orbits, target)
        for z in sorted(constants):
            for vec in vectors:
                key = (z, vec)
                if key not in seen:
                    seen[key] = CandidateType(z, vec, f"edge counts {list(counts)}, degree {target}")
    if extension:
        logger.warning(f"{extension} candidate constant factor(s) need an algebraic extension; skipped")
    return list(seen.values()), extension


# Right factors

@dataclass
class FactorSearch:
    factors: List[OrePoly]
    stats: CandidateStats
    candidates: List[CandidateType] = field(default_factory=list)
    status: str = "complete"
    reason: str = ""

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def cyclic_minimal_operator(M: DModule) -> Optional[MinimalOperator]:
    """Minimal operator of e1, retrying seeded integer combinations until cyclic"""
    v = dmod.unit_vector(M.dim)
    result = dmod.minimal_operator(v, M)
    rng = random.Random(settings.seed)
    for _ in range(CYCLIC_RETRIES):
        if not result.lower_than_expected:
            return result
        v = [FX(rng.randint(-3, 3)) + c for c in v]
        result = dmod.minimal_operator(v, M)
    return None if result.lower_than_expected else result


def _signed_coordinate(P: Dict[tuple, RatFunc], idx: Sequence[int]) -> RatFunc:
    if len(set(idx)) < len(idx):
        return FX.zero
    order = sorted(range(len(idx)), key=lambda i: idx[i])
    sign = 1
    seen = [False] * len(idx)
    for i in range(len(idx)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return P[tuple(sorted(idx))] * sign


def plucker_relations_hold(P: Dict[tuple, RatFunc], n: int, d: int) -> bool:
    for I in combinations(range(n), d - 1):
        for J in combinations(range(n), d + 1):
            total = FX.zero
            for k, j in enumerate(J):
                term = _signed_coordinate(P, I + (j,)) * P[J[:k] + J[k + 1:]]
                total += term if k % 2 == 0 else -term
            if total:
                return False
    return True


def _factor_from_solution(Lm: OrePoly, d: int, K: Optional[Mat], lam_w: RatFunc) -> Optional[OrePoly]:
    """Order-d factor whose Casoratian has ratio lam_w, None if not decomposable"""
    if d == 1:
        R = OrePoly.of(-lam_w, 1)
        return R if right_divides(R, Lm) else None
    n = Lm.order
    m = K.shape[0]
    v = [FX.one]
    for k in range(1, m):
        v.append(v[-1] * shift(lam_w, k - 1))
    s = linalg.solve(K, v)
    if s is None:
        return None
    P = dict(zip(linalg.wedge_indices(n, d), s))
    base = P[tuple(range(d))]
    if not base or not plucker_relations_hold(P, n, d):
        return None
    full = tuple(range(d + 1))
    coeffs = []
    for j in range(d + 1):
        c = P[full[:j] + full[j + 1:]] / base
        coeffs.append(c if (d + j) % 2 == 0 else -c)
    R = OrePoly(tuple(coeffs))
    return R if right_divides(R, Lm) else None


@dataclass
class _Trial:
    candidate: CandidateType
    ansatz: RationalAnsatz


def _run_trial(trial: _Trial, Lm: OrePoly, d: int, K: Optional[Mat], cap: int):
    sols = solve_ansatz(trial.ansatz, cap)
    found: List[OrePoly] = []
    degenerate = 0
    lam = trial.candidate.lam
    trials = list(sols.basis)
    if len(trials) > 1:
        trials.append(reduce(lambda a, b: a + b, trials))
    for q in trials:
        R = _factor_from_solution(Lm, d, K, lam * shift(q, 1) / q)
        if R is None:
            degenerate += 1
        elif R not in found:
            found.append(R)
    return found, degenerate, sols.complete


def right_factors(L: OrePoly, d: int, candidate_filter: Optional[Callable[[CandidateType], bool]] = None,
                  degree_cap: DegreeCap = None, workers: Optional[int] = None) -> FactorSearch:
    """Monic order-d right factors reachable from the candidate types of L"""
    n = L.order
    if not 1 <= d < n:
        raise AlgebraError(f"factor order {d} out of range 1..{n - 1}")
    if not L.coeffs[0]:
        raise AlgebraError("zero trailing coefficient; normalize first")
    cap = _cap(degree_cap)
    workers = workers or settings.workers
    Lm = monic(L)
    stats = CandidateStats()
    candidates, extension = candidate_types(L, d)
    stats.total = len(candidates)
    stats.requires_extension = extension
    kept = []
    for c in candidates:
        if candidate_filter is not None and not candidate_filter(c):
            c.status, c.reason = DISCARDED, "filter"
        else:
            kept.append(c)
    stats.after_filter = len(kept)
    logger.info(f"order {d} factors of order {n} operator: {stats.total} candidates, {stats.after_filter} after filter")
    if not kept:
        return FactorSearch([], stats, candidates)

    K = None
    E = Lm
    if d > 1:
        cyclic = cyclic_minimal_operator(dmod.ext_power(dmod.companion(Lm), d))
        if cyclic is None:
            return FactorSearch([], stats, candidates, "incomplete", "no cyclic vector found in the exterior power")
        E = cyclic.operator
        K = linalg.matrix(cyclic.iterates[:E.order])

    trials = []
    for c in tqdm(kept, desc="bounds", disable=not settings.progress):
        ansatz = rational_ansatz(twist(E, 1 / c.lam))
        c.bound = ansatz.bound
        trials.append(_Trial(c, ansatz))
    trials.sort(key=lambda p: p.ansatz.bound)

    def run(trial):
        return _run_trial(trial, Lm, d, K, cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, trials))
    else:
        outcomes = [run(p) for p in tqdm(trials, desc="candidates", disable=not settings.progress)]

    factors: List[OrePoly] = []
    for trial, (found, degenerate, complete) in zip(trials, outcomes):
        c = trial.candidate
        stats.tested += 1
        stats.degenerate += degenerate
        if not complete:
            stats.incomplete += 1
        new = [R for R in found if R not in factors]
        factors.extend(new)
        outcome = f"{len(new)} factor(s)" if found else ("capped" if not complete else "no solutions")
        c.status, c.reason = TESTED, outcome
        if settings.trace:
            logger.info(f"candidate {c.describe()} bound={c.bound} outcome={outcome}")
    stats.factors_found = len(factors)
    status, reason = "complete", ""
    if stats.incomplete:
        status, reason = "incomplete", f"{stats.incomplete} candidate(s) exceeded degree cap {cap}"
    return FactorSearch(factors, stats, candidates, status, reason)


# Section filters

def section_filter(L: OrePoly, p: int) -> Callable[[CandidateType], bool]:
    """Keep lambda with (-1)^(n-n/p) lambda(x/p) ~ det(L)"""
    n = L.order
    target = SimClass.of(det_op(L))
    sign = -1 if (n - n // p) % 2 else 1

    def keep(c: CandidateType) -> bool:
        return c.sim_class.scaled(p).signed(sign) == target
    return keep


def case4_filter(L: OrePoly) -> Callable[[CandidateType], bool]:
    """Keep lambda with lambda^2 ~ det(L)^3"""
    target = SimClass.of(det_op(L)) ** 3

    def keep(c: CandidateType) -> bool:
        return c.sim_class ** 2 == target
    return keep


@dataclass
class SectionFactors:
    section: Section
    search: Optional[FactorSearch]
    liouvillian: bool
    reason: str = ""

    @property
    def factors(self) -> List[OrePoly]:
        return self.search.factors if self.search else []


def order1_factors_of_section(L: OrePoly, use_filter: bool = True) -> SectionFactors:
    n = L.order
    section = dmod.section_operator(L, n)
    if section.lower_than_expected:
        logger.info(f"section operator of order {section.lp.order} < {n}: Liouvillian by section")
        return SectionFactors(section, None, True, "section order drop")
    search = right_factors(section.lp, 1, section_filter(L, n) if use_filter else None)
    return SectionFactors(section, search, bool(search.factors),
                          "order 1 factor of the section" if search.factors else "")
