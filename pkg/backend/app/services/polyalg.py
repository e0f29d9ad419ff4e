"""
Polynomial Algebra - Exact rationals, polynomials and rational functions over QQ
Shifts, scalings, factorization, roots and dispersion
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Set, Tuple, Union

from sympy import Poly as SympyPoly, Symbol
from sympy.polys.dispersion import dispersionset
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement

from app.core.errors import AlgebraError, ParseError
from app.services.grammar import Algebra, parse_with

logger = logging.getLogger(__name__)

# Q(x), its ring Q[x] and the DomainMatrix domain built on them
FX, X = field("x", QQ)
QX = FX.ring
PX = QX.gens[0]
K = FX.to_domain()
SYMBOL_X = Symbol("x")

Rat = type(QQ.one)
RatFunc = FracElement
Poly = PolyElement
Scalar = Union[int, Fraction, Rat, Poly, RatFunc, str]


def rat(value, den: int = 1) -> Rat:
    """Exact rational from int, Fraction, string or QQ element"""
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator * den)
    if den != 1:
        return QQ.convert(value) / QQ(den)
    return QQ.convert(value)


def ratfunc(value: Scalar) -> RatFunc:
    if isinstance(value, FracElement):
        return value
    if isinstance(value, PolyElement):
        return FX.new(value.set_ring(QX))
    if isinstance(value, str):
        return parse_ratfunc(value)
    return FX(rat(value))


def poly(value) -> Poly:
    if isinstance(value, PolyElement):
        return value
    if isinstance(value, FracElement):
        if not is_polynomial(value):
            raise AlgebraError(f"not a polynomial: {format_ratfunc(value)}")
        return num(value)
    if isinstance(value, (list, tuple)):
        # low-to-high coefficient list
        return QX({(i,): rat(c) for i, c in enumerate(value) if c})
    return QX(rat(value))


def num(f: RatFunc) -> Poly:
    """Numerator scaled so the denominator is monic"""
    return f.numer.quo_ground(f.denom.LC)


def den(f: RatFunc) -> Poly:
    return f.denom.monic()


def is_polynomial(f: RatFunc) -> bool:
    return f.denom.degree() <= 0


def is_constant(f: RatFunc) -> bool:
    return f.numer.degree() <= 0 and f.denom.degree() <= 0


def constant_value(f: RatFunc) -> Rat:
    if not is_constant(f):
        raise AlgebraError(f"not a constant: {format_ratfunc(f)}")
    return f.numer.LC / f.denom.LC if f.numer else QQ.zero


def degree(p: Poly) -> int:
    """Degree with -1 for the zero polynomial"""
    return -1 if not p else p.degree()


def coeff(p: Poly, i: int) -> Rat:
    return p.get((i,), QQ.zero)


def coefficients(p: Poly) -> List[Rat]:
    """Low-to-high coefficient list"""
    return [coeff(p, i) for i in range(degree(p) + 1)]


def lc(p: Poly) -> Rat:
    return p.LC if p else QQ.zero


def valuation_at_infinity(f: RatFunc) -> Optional[int]:
    """deg den - deg num, None for zero"""
    if not f:
        return None
    return f.denom.degree() - f.numer.degree()


def shift_poly(p: Poly, k) -> Poly:
    if not p or p.degree() == 0:
        return p
    return p.shift(QQ.convert(rat(k)))


def shift(f: RatFunc, k=1) -> RatFunc:
    """f(x + k) for rational k"""
    k = rat(k)
    if not k:
        return f
    return FX.new(shift_poly(f.numer, k), shift_poly(f.denom, k))


def _scale_poly(p: Poly, s: Rat) -> Poly:
    return QX({(i,): c * s ** i for (i,), c in p.items()})


def scale_poly(p: Poly, p_scale: int, direction: str = "forward") -> Poly:
    s = QQ(1, p_scale) if direction == "forward" else QQ(p_scale)
    return _scale_poly(p, s)


def scale_substitute(f: RatFunc, p: int, direction: str = "forward") -> RatFunc:
    """forward: f(x/p); inverse: f(p*x)"""
    if p < 1:
        raise AlgebraError("scale factor must be positive")
    if direction not in ("forward", "inverse"):
        raise AlgebraError(f"unknown direction {direction}")
    if p == 1:
        return f
    return FX.new(scale_poly(f.numer, p, direction), scale_poly(f.denom, p, direction))


def evaluate(f: RatFunc, point) -> Optional[Rat]:
    """Exact value at a rational point, None at a pole"""
    a = rat(point)
    d = f.denom.evaluate(PX, a)
    if not d:
        return None
    return f.numer.evaluate(PX, a) / d


def evaluate_poly(p: Poly, point) -> Rat:
    if not p:
        return QQ.zero
    return p.evaluate(PX, rat(point))


@dataclass(frozen=True)
class Factorization:
    content: Rat
    factors: Tuple[Tuple[Poly, int], ...]

    def expand(self) -> Poly:
        result = QX(self.content)
        for f, m in self.factors:
            result *= f ** m
        return result


def factor_key(item):
    f, m = item
    return (f.degree(), [str(c) for c in f.to_dense()], m)


def factor(p: Poly) -> Factorization:
    """Monic irreducible factors over QQ with extracted rational content"""
    if not p:
        raise AlgebraError("cannot factor the zero polynomial")
    content, pairs = p.factor_list()
    factors = []
    for f, m in pairs:
        lead = f.LC
        content *= lead ** m
        factors.append((f.monic(), m))
    factors.sort(key=factor_key)
    return Factorization(content, tuple(factors))


def rational_roots(p: Poly) -> List[Rat]:
    if not p:
        raise AlgebraError("zero polynomial has every root")
    roots = [-coeff(f, 0) for f, _ in factor(p).factors if f.degree() == 1]
    return sorted(roots)


def integer_roots(p: Poly) -> Set[int]:
    return {int(QQ.numer(r)) for r in rational_roots(p) if QQ.denom(r) == 1}


def to_sympy_poly(p: Poly) -> SympyPoly:
    return SympyPoly(p.as_expr(), SYMBOL_X, domain=QQ)


def dispersion_set(a: Poly, b: Poly) -> List[int]:
    """All j >= 0 with gcd(a(x), b(x+j)) nonconstant"""
    if not a or not b:
        raise AlgebraError("dispersion of the zero polynomial")
    if a.degree() <= 0 or b.degree() <= 0:
        return []
    return sorted(int(j) for j in dispersionset(to_sympy_poly(a), to_sympy_poly(b)))


def dispersion(a: Poly, b: Poly) -> Optional[int]:
    js = dispersion_set(a, b)
    return js[-1] if js else None


# Text form

def format_rat(c: Rat) -> str:
    n, d = QQ.numer(c), QQ.denom(c)
    return f"{n}" if d == 1 else f"{n}/{d}"


def format_poly(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for (i,), c in sorted(p.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if i == 0:
            body = format_rat(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{format_rat(a)}*{mono}"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _wrap(p: Poly, var: str = "x") -> str:
    text = format_poly(p, var)
    if len(p) > 1 or QQ.denom(lc(p)) != 1 or (len(p) == 1 and lc(p) < 0):
        return f"({text})"
    return text


def format_ratfunc(f: RatFunc, var: str = "x") -> str:
    n, d = num(f), den(f)
    if d == 1:
        return format_poly(n, var)
    return f"{_wrap(n, var)}/{_wrap(d, var)}"


def _ratfunc_name(name: str, pos: int) -> RatFunc:
    if name != "x":
        raise ParseError(f"unknown symbol {name!r}", pos)
    return X


def _ratfunc_div(a: RatFunc, b: RatFunc, pos: int) -> RatFunc:
    if not b:
        raise ParseError("division by zero", pos)
    return a / b


def _ratfunc_pow(a: RatFunc, e: int, pos: int) -> RatFunc:
    if e < 0 and not a:
        raise ParseError("zero to a negative power", pos)
    return a ** e


RATFUNC_ALGEBRA = Algebra(
    const=lambda n: FX(n),
    name=_ratfunc_name,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    neg=lambda a: -a,
    mul=lambda a, b: a * b,
    div=_ratfunc_div,
    pow=_ratfunc_pow,
)


def parse_ratfunc(text: str) -> RatFunc:
    try:
        return parse_with(text, RATFUNC_ALGEBRA)
    except ParseError as e:
        e.text = e.text or text
        raise


def parse_poly(text: str) -> Poly:
    return poly(parse_ratfunc(text))
