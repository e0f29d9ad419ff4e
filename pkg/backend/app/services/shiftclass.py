"""
Shift Classes - Similarity of rational functions up to shift quotients tau(P)/P
Gosper-Petkovsek normal form, certificates and hashable class keys
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import integer_nthroot
from sympy.concrete.gosper import gosper_normal
from sympy.polys.domains import QQ

from app.core.errors import AlgebraError, RequiresExtension
from app.services import polyalg
from app.services.polyalg import FX, QX, Poly, Rat, RatFunc, shift, shift_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GPForm:
    """r = z * (a/b) * c(x+1)/c(x) with gcd(a(x), b(x+j)) = 1 for every integer j"""
    z: Rat
    a: Poly
    b: Poly
    c: RatFunc

    def reconstruct(self) -> RatFunc:
        return FX(self.z) * FX.new(self.a, self.b) * shift(self.c, 1) / self.c


def _from_sympy(p) -> Poly:
    return QX.from_list([QQ.from_sympy(c) for c in p.all_coeffs()])


def _shift_product(d: Poly, h: int) -> Poly:
    """d(x-1) d(x-2) ... d(x-h)"""
    out = QX.one
    for j in range(1, h + 1):
        out *= shift_poly(d, -j)
    return out


def gp_form(r: RatFunc) -> GPForm:
    if not r:
        raise AlgebraError("normal form of zero")
    n, d = polyalg.num(r), polyalg.den(r)
    if n.degree() <= 0 and d.degree() <= 0:
        return GPForm(polyalg.constant_value(r), QX.one, QX.one, FX.one)
    z = polyalg.lc(n)
    za, b, c = gosper_normal(n.monic().as_expr(), d.as_expr(), polyalg.SYMBOL_X, polys=True)
    a = _from_sympy(za).monic()
    b = _from_sympy(b).monic()
    c = FX.new(_from_sympy(c))
    # negative shifts: b(x) and a(x+h) sharing a factor
    for h in polyalg.dispersion_set(b, a):
        g = b.gcd(shift_poly(a, h)).monic()
        if g.degree() <= 0:
            continue
        b = b.exquo(g)
        a = a.exquo(shift_poly(g, -h))
        c = c / FX.new(_shift_product(g, h))
    return GPForm(z, a, b, c)


def shift_quotient_certificate(r: RatFunc) -> Optional[RatFunc]:
    """P with P(x+1)/P(x) = r, or None"""
    form = gp_form(r)
    if form.z == 1 and form.a == 1 and form.b == 1:
        return form.c
    return None


def orbit_representative(f: Poly) -> Poly:
    """Shift of a monic polynomial whose subleading coefficient lies in [0, deg)"""
    m = f.degree()
    s = polyalg.coeff(f, m - 1) / QQ(m)
    floor = QQ.numer(s) // QQ.denom(s)
    return shift_poly(f, -floor)


@dataclass(frozen=True)
class SimClass:
    """Constant part and net multiplicity per shift orbit; equal keys iff r1 ~ r2"""
    z: Rat
    orbits: Tuple[Tuple[Poly, int], ...]

    @classmethod
    def from_factors(cls, z, factors: Iterable[Tuple[Poly, int]]) -> "SimClass":
        z = polyalg.rat(z)
        nets: Dict[Poly, int] = {}
        for f, e in factors:
            if not e:
                continue
            z *= polyalg.lc(f) ** e
            if f.degree() <= 0:
                continue
            rep = orbit_representative(f.monic())
            nets[rep] = nets.get(rep, 0) + e
        items = tuple(sorted(((f, e) for f, e in nets.items() if e), key=polyalg.factor_key))
        return cls(z, items)

    @classmethod
    def of(cls, r: RatFunc) -> "SimClass":
        if not r:
            raise AlgebraError("shift class of zero")
        fn = polyalg.factor(polyalg.num(r))
        fd = polyalg.factor(polyalg.den(r))
        factors = list(fn.factors) + [(f, -e) for f, e in fd.factors]
        return cls.from_factors(fn.content / fd.content, factors)

    def __mul__(self, other: "SimClass") -> "SimClass":
        return SimClass.from_factors(self.z * other.z, self.orbits + other.orbits)

    def __pow__(self, k: int) -> "SimClass":
        return SimClass.from_factors(self.z ** k, [(f, e * k) for f, e in self.orbits])

    def scaled(self, p: int) -> "SimClass":
        """Class of r(x/p)"""
        return SimClass.from_factors(self.z, [(polyalg.scale_poly(f, p), e) for f, e in self.orbits])

    def signed(self, sign: int) -> "SimClass":
        return SimClass(self.z * sign, self.orbits)

    @property
    def trivial(self) -> bool:
        return self.z == 1 and not self.orbits

    def representative(self) -> RatFunc:
        out = FX(self.z)
        for f, e in self.orbits:
            out *= FX.new(f) ** e
        return out

    def is_square(self) -> bool:
        """Every orbit multiplicity even; a square up to ~ once constants are ignored"""
        return all(e % 2 == 0 for _, e in self.orbits)


@dataclass(frozen=True)
class SimResult:
    equivalent: bool
    certificate: Optional[RatFunc] = None

    def __bool__(self) -> bool:
        return self.equivalent


def sim_test(r1: RatFunc, r2: RatFunc) -> SimResult:
    if not r1 or not r2:
        raise AlgebraError("similarity test with zero")
    if SimClass.of(r1) != SimClass.of(r2):
        return SimResult(False)
    P = shift_quotient_certificate(r1 / r2)
    return SimResult(P is not None, P)


def rational_root(z: Rat, n: int) -> Rat:
    """Real rational n-th root, RequiresExtension otherwise"""
    if z < 0 and n % 2 == 0:
        raise RequiresExtension(f"even root of negative constant {polyalg.format_rat(z)}")
    sign = -1 if z < 0 else 1
    a = abs(int(QQ.numer(z)))
    b = int(QQ.denom(z))
    ra, exact_a = integer_nthroot(a, n)
    rb, exact_b = integer_nthroot(b, n)
    if not (exact_a and exact_b):
        raise RequiresExtension(f"{n}-th root of {polyalg.format_rat(z)} is irrational")
    return QQ(sign * int(ra), int(rb))


def class_roots(r: RatFunc, n: int) -> Optional[List[RatFunc]]:
    """Rational s with s^n ~ r, one per real root of unity; None if no root exists"""
    key = SimClass.of(r)
    if any(e % n for _, e in key.orbits):
        return None
    z = rational_root(key.z, n)
    s = FX(z)
    for f, e in key.orbits:
        s *= FX.new(f) ** (e // n)
    return [s, -s] if n % 2 == 0 else [s]
