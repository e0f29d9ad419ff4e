"""
Ore Operators - The ring Q(x)[tau] with tau*f(x) = f(x+1)*tau
Arithmetic, Euclidean division, determinants and sequence evaluation
"""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ

from app.core.errors import AlgebraError, ParseError
from app.services.grammar import Algebra, parse_with
from app.services import polyalg
from app.services.polyalg import FX, X, Rat, RatFunc, ratfunc, shift

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrePoly:
    """sum a_i tau^i with coeffs[i] = a_i"""
    coeffs: Tuple[RatFunc, ...]

    def __post_init__(self):
        cs = [ratfunc(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs) -> "OrePoly":
        return cls(tuple(coeffs))

    @classmethod
    def tau(cls, k: int = 1) -> "OrePoly":
        return cls(tuple([0] * k + [1]))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RatFunc:
        return self.coeffs[-1]

    def coeff(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else FX.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "OrePoly") -> "OrePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return self + (-other)

    def __neg__(self) -> "OrePoly":
        return OrePoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        return mul(self, other)

    def scale(self, f) -> "OrePoly":
        """Left multiplication by a rational function"""
        f = ratfunc(f)
        return OrePoly(tuple(f * c for c in self.coeffs))

    def shift_coeffs(self, k=1) -> "OrePoly":
        """Substitute x -> x + k in every coefficient"""
        return OrePoly(tuple(shift(c, k) for c in self.coeffs))

    def __str__(self) -> str:
        return format_operator(self)


ONE = OrePoly.of(1)
TAU = OrePoly.tau()


def tau_minus(r) -> OrePoly:
    return OrePoly.of(-ratfunc(r), 1)


def _tau_shift(L: OrePoly, k: int) -> OrePoly:
    """tau^k * L"""
    return OrePoly(tuple([FX.zero] * k + [shift(c, k) for c in L.coeffs]))


def mul(A: OrePoly, B: OrePoly) -> OrePoly:
    if not A or not B:
        return OrePoly(())
    out = [FX.zero] * (A.order + B.order + 1)
    for i, a in enumerate(A.coeffs):
        if not a:
            continue
        for j, b in enumerate(B.coeffs):
            if b:
                out[i + j] += a * shift(b, i)
    return OrePoly(tuple(out))


def right_divide(A: OrePoly, B: OrePoly) -> Tuple[OrePoly, OrePoly]:
    """(Q, R) with A = Q*B + R and ord R < ord B"""
    if not B:
        raise AlgebraError("right division by the zero operator")
    q = [FX.zero] * max(A.order - B.order + 1, 0)
    R = A
    while R and R.order >= B.order:
        k = R.order - B.order
        c = R.lc / shift(B.lc, k)
        q[k] += c
        R = R - _tau_shift(B, k).scale(c)
    return OrePoly(tuple(q)), R


def remainder(A: OrePoly, B: OrePoly) -> OrePoly:
    return right_divide(A, B)[1]


def right_divides(R: OrePoly, L: OrePoly) -> bool:
    return not remainder(L, R)


def monic(L: OrePoly) -> OrePoly:
    if not L:
        raise AlgebraError("zero operator has no monic form")
    return L.scale(1 / L.lc)


def gcrd(A: OrePoly, B: OrePoly) -> OrePoly:
    if not A and not B:
        raise AlgebraError("gcrd of two zero operators")
    while B:
        A, B = B, remainder(A, B)
    return monic(A)


def tau_power_remainders(L: OrePoly, count: int) -> List[List[RatFunc]]:
    """Coordinates of tau^m mod L on 1, tau, ..., tau^(n-1) for m < count"""
    n = L.order
    Lm = monic(L)
    vec = [FX.one] + [FX.zero] * (n - 1) if n > 0 else []
    out = []
    for _ in range(count):
        out.append(vec)
        # tau * (sum v_i tau^i) = sum v_i(x+1) tau^(i+1), then reduce tau^n
        shifted = [FX.zero] + [shift(v, 1) for v in vec]
        top = shifted.pop()
        vec = [shifted[i] - top * Lm.coeffs[i] for i in range(n)]
    return out


def lclm(A: OrePoly, B: OrePoly) -> OrePoly:
    from app.services import linalg

    if not A or not B:
        raise AlgebraError("lclm with the zero operator")
    if A.order == 0:
        return monic(B)
    if B.order == 0:
        return monic(A)
    bound = A.order + B.order + 1
    ra = tau_power_remainders(A, bound)
    rb = tau_power_remainders(B, bound)
    columns = []
    for k in range(bound):
        columns.append(ra[k] + rb[k])
        M = linalg.matrix([list(row) for row in zip(*columns)])
        kernel = linalg.nullspace(M)
        if kernel:
            c = kernel[0]
            return monic(OrePoly(tuple(c)))
    raise AlgebraError("lclm search exceeded the order bound")


def det_op(L: OrePoly) -> RatFunc:
    """(-1)^n a_0 / a_n"""
    if not L or L.order < 1:
        raise AlgebraError("determinant needs an operator of positive order")
    a0 = L.coeffs[0]
    if not a0:
        raise AlgebraError("zero trailing coefficient; normalize the tau-content first")
    sign = -1 if L.order % 2 else 1
    return sign * a0 / L.lc


def normalize(L: OrePoly) -> Tuple[OrePoly, int]:
    """L = L' * tau^k with trailing coefficient of L' nonzero"""
    if not L:
        raise AlgebraError("zero operator")
    k = 0
    while not L.coeffs[k]:
        k += 1
    return OrePoly(L.coeffs[k:]), k


def primitive_polys(L: OrePoly) -> List:
    """Integral coprime polynomial coefficients, positive leading coefficient"""
    if not L:
        raise AlgebraError("zero operator")
    common = reduce(lambda a, b: a.lcm(b), (polyalg.den(c) for c in L.coeffs))
    polys = [polyalg.num(c) * common.exquo(polyalg.den(c)) for c in L.coeffs]
    g = reduce(lambda a, b: a.gcd(b), (p for p in polys if p))
    polys = [p.exquo(g) for p in polys]
    denoms = ZZ.one
    for p in polys:
        for c in p.values():
            denoms = ZZ.lcm(denoms, QQ.denom(c))
    polys = [p.mul_ground(QQ(denoms)) for p in polys]
    content = ZZ.zero
    for p in polys:
        for c in p.values():
            content = ZZ.gcd(content, QQ.numer(c))
    if polyalg.lc(polys[-1]) < 0:
        content = -content
    return [p.quo_ground(QQ(content)) for p in polys]


def primitive(L: OrePoly) -> OrePoly:
    return OrePoly(tuple(ratfunc(p) for p in primitive_polys(L)))


def twist(L: OrePoly, r) -> OrePoly:
    """(tau - r) sym-product L: coefficient a_i divided by r(x)...r(x+i-1)"""
    r = ratfunc(r)
    if not r:
        raise AlgebraError("twist by zero")
    out = []
    prod = FX.one
    for i, a in enumerate(L.coeffs):
        out.append(a / prod)
        prod = prod * shift(r, i)
    return OrePoly(tuple(out))


def psi(L: OrePoly, p: int) -> OrePoly:
    """tau -> tau^p, x -> x/p"""
    out = [FX.zero] * (p * L.order + 1)
    for i, a in enumerate(L.coeffs):
        out[p * i] = polyalg.scale_substitute(a, p, "forward")
    return OrePoly(tuple(out))


def psi_inverse(L: OrePoly, p: int) -> OrePoly:
    """Inverse of psi for operators supported on multiples of p"""
    if any(c for i, c in enumerate(L.coeffs) if i % p):
        raise AlgebraError(f"operator is not in Q(x)[tau^{p}]")
    return OrePoly(tuple(polyalg.scale_substitute(L.coeffs[i], p, "inverse")
                         for i in range(0, len(L.coeffs), p)))


@dataclass(frozen=True)
class Recurrence:
    """sum c_j(n) U(n + offset_j) = 0, highest offset 0"""
    terms: Tuple[Tuple[int, object], ...]

    def format(self, var: str = "n") -> str:
        pieces = []
        for offset, c in self.terms:
            arg = var if offset == 0 else f"{var}{offset}"
            text = polyalg.format_poly(c, var)
            if len(c) > 1:
                text = f"({text})"
            pieces.append(f"{text}*U({arg})")
        return " + ".join(pieces).replace("+ -", "- ") + " = 0"


def unfold(L: OrePoly, p: int) -> Recurrence:
    """Recurrence of psi_p(L) re-indexed so the top term is U(n)"""
    polys = primitive_polys(psi(L, p))
    top = len(polys) - 1
    terms = []
    for i in range(top, -1, -1):
        if polys[i]:
            terms.append((i - top, polyalg.shift_poly(polys[i], -top)))
    return Recurrence(tuple(terms))


def apply(L: OrePoly, u: Callable[[int], Rat], n: int) -> Optional[Rat]:
    """sum a_i(n) u(n+i); None when a coefficient has a pole at n"""
    total = QQ.zero
    for i, a in enumerate(L.coeffs):
        if not a:
            continue
        v = polyalg.evaluate(a, n)
        if v is None:
            return None
        if v:
            total += v * u(n + i)
    return total


class SequenceOracle:
    """Cached exact sequence a(n) for n >= start"""

    def __init__(self, generator: Callable[[int], Rat], start: int = 0, name: str = ""):
        self.generator = generator
        self.start = start
        self.name = name
        self._cache: Dict[int, Rat] = {}

    def __call__(self, n: int) -> Rat:
        if n < self.start:
            raise AlgebraError(f"sequence {self.name} undefined at {n}")
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]

    def terms(self, count: int, start: Optional[int] = None) -> List[Rat]:
        s = self.start if start is None else start
        return [self(n) for n in range(s, s + count)]

    @classmethod
    def from_terms(cls, values: Sequence, start: int = 0, name: str = "") -> "SequenceOracle":
        data = [polyalg.rat(v) for v in values]

        def gen(n):
            return data[n - start]
        return cls(gen, start, name)

    @classmethod
    def from_operator(cls, L: OrePoly, initial: Sequence, start: Optional[int] = None,
                      name: str = "") -> "SequenceOracle":
        """Run L forward from initial values placed past its singular points"""
        polys = primitive_polys(L)
        n = len(polys) - 1
        if len(initial) != n:
            raise AlgebraError(f"need {n} initial values, got {len(initial)}")
        if start is None:
            start = regular_start(L)
        values: List[Rat] = [polyalg.rat(v) for v in initial]

        def gen(m):
            while start + len(values) <= m:
                x = start + len(values) - n
                acc = QQ.zero
                for i in range(n):
                    if polys[i]:
                        acc += polyalg.evaluate_poly(polys[i], x) * values[x - start + i]
                values.append(-acc / polyalg.evaluate_poly(polys[n], x))
            return values[m - start]
        return cls(gen, start, name)


def regular_start(L: OrePoly) -> int:
    """First index past the integer roots of the leading and trailing coefficients"""
    polys = primitive_polys(L)
    roots = set()
    for p in (polys[0], polys[-1]):
        if p.degree() > 0:
            roots |= polyalg.integer_roots(p)
    return max([0] + [r + 1 for r in roots])


# Text form

def _signed_coeff(c: RatFunc) -> Tuple[str, str]:
    sign = "-" if polyalg.lc(polyalg.num(c)) < 0 else "+"
    body = -c if sign == "-" else c
    if polyalg.is_polynomial(body):
        p = polyalg.num(body)
        text = polyalg.format_poly(p)
        if len(p) > 1:
            text = f"({text})"
    else:
        text = polyalg.format_ratfunc(body)
    return sign, text


def format_operator(L: OrePoly, symbol: str = "t") -> str:
    if not L:
        return "0"
    parts = []
    for i in range(L.order, -1, -1):
        c = L.coeffs[i]
        if not c:
            continue
        sign, text = _signed_coeff(c)
        if i == 0:
            body = text
        else:
            mono = symbol if i == 1 else f"{symbol}^{i}"
            body = mono if text == "1" else f"{text}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _op_name(name: str, pos: int) -> OrePoly:
    if name == "x":
        return OrePoly.of(X)
    if name in ("t", "tau"):
        return TAU
    raise ParseError(f"unknown symbol {name!r}", pos)


def _op_div(a: OrePoly, b: OrePoly, pos: int) -> OrePoly:
    if not b or b.order > 0:
        raise ParseError("division only by nonzero rational functions", pos)
    return mul(a, OrePoly.of(1 / b.coeffs[0]))


def _op_pow(a: OrePoly, e: int, pos: int) -> OrePoly:
    if e < 0:
        if not a or a.order > 0:
            raise ParseError("negative powers only of nonzero rational functions", pos)
        return OrePoly.of(a.coeffs[0] ** e)
    out = ONE
    for _ in range(e):
        out = mul(out, a)
    return out


OPERATOR_ALGEBRA = Algebra(
    const=lambda n: OrePoly.of(n),
    name=_op_name,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    neg=lambda a: -a,
    mul=mul,
    div=_op_div,
    pow=_op_pow,
)


def parse_operator(text: str) -> OrePoly:
    try:
        L = parse_with(text, OPERATOR_ALGEBRA)
    except ParseError as e:
        e.text = e.text or text
        raise
    if not L:
        raise ParseError("zero operator", 0, text)
    return L
