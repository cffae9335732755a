"""Closed-form genus-3 Howe curve builders.

Inputs are the 2-torsion data of two genus-1 curves sharing the branch
points 0 and infinity:

    E1: y^2 = x (x - a2)(x - a3),   E2: y^2 = x (x - b2)(x - b3),

with a2, a3, b2, b3 nonzero and pairwise distinct.  The fiber product
normalizes to a hyperelliptic octic exactly when a2 a3 = b2 b3; otherwise
to a plane quartic in standard form whose six coefficients come from the
resultant of the two deflated curve equations.
"""

from __future__ import annotations

from . import polynomials as poly
from .errors import (
    BadParameter,
    BadQuartic,
    DegenerateDenominator,
    HyperellipticCase,
    NotHyperellipticCase,
)
from .field_tower import FieldCtx, FieldElement
from .hyperelliptic import HyperCurve
from .polynomials import UniPoly


class TwoTorsionParams:
    __slots__ = ("ctx", "a2", "a3", "b2", "b3")

    def __init__(self, ctx: FieldCtx, a2, a3, b2, b3):
        vals = [x if isinstance(x, FieldElement) else ctx.scalar(x) for x in (a2, a3, b2, b3)]
        if any(v.is_zero() for v in vals):
            raise BadParameter("branch parameters must be nonzero")
        for i in range(4):
            for j in range(i + 1, 4):
                if vals[i] == vals[j]:
                    raise BadParameter("branch parameters must be pairwise distinct")
        self.ctx = ctx
        self.a2, self.a3, self.b2, self.b3 = vals

    def sums_products(self):
        t1 = self.a2 + self.a3
        t2 = self.a2 * self.a3
        r1 = self.b2 + self.b3
        r2 = self.b2 * self.b3
        return t1, t2, r1, r2


class OortTriple:
    """(nu, mu, lam) for E1: y^2=x(x-1)(x-nu), E2: y^2=x(x-mu)(x-mu*lam)."""

    __slots__ = ("ctx", "nu", "mu", "lam")

    def __init__(self, ctx: FieldCtx, nu, mu, lam):
        conv = [x if isinstance(x, FieldElement) else ctx.scalar(x) for x in (nu, mu, lam)]
        nu, mu, lam = conv
        one = ctx.one(0)
        if nu.is_zero() or nu == one:
            raise BadParameter("nu must avoid {0, 1}")
        if mu.is_zero() or mu == one or mu == nu:
            raise BadParameter("mu must avoid {0, 1, nu}")
        if lam.is_zero() or lam == one or mu * lam == one or mu * lam == nu:
            raise BadParameter("lam must avoid {0, 1, 1/mu, nu/mu}")
        self.ctx = ctx
        self.nu, self.mu, self.lam = nu, mu, lam

    def params(self) -> TwoTorsionParams:
        return TwoTorsionParams(self.ctx, self.ctx.one(0), self.nu,
                                self.mu, self.mu * self.lam)


def is_oort_hyperelliptic(t: TwoTorsionParams) -> bool:
    return t.a2 * t.a3 == t.b2 * t.b3


def build_howe_hyperelliptic(t: TwoTorsionParams) -> HyperCurve:
    """Octic model of the normalized fiber product in the hyperelliptic
    case: y^2 = prod over the four even sign patterns of
    (x^2 - (sqrt(a2) +- sqrt(a3) +- sqrt(b2) +- sqrt(b3))^2 / (a2+a3-b2-b3))."""
    if not is_oort_hyperelliptic(t):
        raise NotHyperellipticCase("a2*a3 != b2*b3")
    ctx = t.ctx
    den = t.a2 + t.a3 - t.b2 - t.b3
    if den.is_zero():
        raise DegenerateDenominator("a2+a3 = b2+b3")
    sq = [v.sqrt()[0] for v in (t.a2, t.a3, t.b2, t.b3)]
    lev = 0
    for s in sq:
        lev = ctx.common_level(lev, s.level)
    s2, s3, sb2, sb3 = (ctx.lift(s, lev) for s in sq)
    deninv = ctx.lift(den, lev).inverse()
    a_values = []
    for e3, eb2, eb3 in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        s = s2 + ctx.scalar(e3, lev) * s3 + ctx.scalar(eb2, lev) * sb2 \
            + ctx.scalar(eb3, lev) * sb3
        a_values.append((s * s * deninv).reduce_level())
    f = UniPoly(ctx, 0, [ctx.one(0)])
    for A in a_values:
        f = f * UniPoly(ctx, A.level, [-A, ctx.zero(A.level), ctx.one(A.level)])
    if not poly.is_squarefree(f):
        raise BadParameter("degenerate parameters: octic is not square-free")
    return HyperCurve(f)


def build_howe_from_EH(f: UniPoly) -> HyperCurve:
    """y^2 = f(x^2) from the shared quartic of E: y^2=f and H: y^2=xf."""
    if f.degree != 4 or not poly.is_squarefree(f) or f.coeff(0).is_zero():
        raise BadQuartic("need a square-free quartic with f(0) != 0")
    coeffs = []
    for i in range(5):
        coeffs.append(f.coeff(i))
        coeffs.append(f.ctx.zero(f.level))
    return HyperCurve(UniPoly(f.ctx, f.level, coeffs[:-1]))


def ciani_coefficients(t: TwoTorsionParams):
    """(b40, b22, b04, b20, b02, b00) of the resultant quartic."""
    t1, t2, r1, r2 = t.sums_products()
    b40 = r2
    b22 = -(t2 + r2)
    b04 = t2
    b20 = 2 * (t1 * r2) - t2 * r1 - r1 * r2
    b02 = -(t1 * t2) - t1 * r2 + 2 * (t2 * r1)
    b00 = (t1 * t1 * r2) - (t1 * t2 * r1) - (t1 * r1 * r2) + (t2 * t2) \
        + (t2 * r1 * r1) - 2 * (t2 * r2) + (r2 * r2)
    return b40, b22, b04, b20, b02, b00


def build_ciani(t: TwoTorsionParams, verify: bool = False):
    """Standard-form plane quartic of the non-hyperelliptic fiber product."""
    from .quartic import CianiQuartic

    t1, t2, r1, r2 = t.sums_products()
    if t2 == r2:
        raise HyperellipticCase("a2*a3 = b2*b3: use build_howe_hyperelliptic")
    b = ciani_coefficients(t)
    if verify:
        _verify_resultant(t.ctx, (t1, t2, r1, r2), b)
    return CianiQuartic(t.ctx, b)


def _verify_resultant(ctx, sums, b) -> None:
    """Grid-interpolation check: the closed-form coefficients agree with
    Res_x(x^2+(-t1-u)x+t2, x^2+(-r1-v)x+r2) on a 5x5 grid of (u, v), which
    pins a bidegree-(2,2) polynomial exactly."""
    t1, t2, r1, r2 = sums
    lev = max(1, t1.level, t2.level, r1.level, r2.level)
    pts = []
    for e in ctx.elements(1):
        pts.append(ctx.lift(e, lev))
        if len(pts) == 5:
            break
    b40, b22, b04, b20, b02, b00 = (ctx.lift(x, lev) for x in b)
    one = ctx.one(lev)
    for u in pts:
        for v in pts:
            f1 = UniPoly(ctx, lev, [ctx.lift(t2, lev), -(ctx.lift(t1, lev)) - u, one])
            f2 = UniPoly(ctx, lev, [ctx.lift(r2, lev), -(ctx.lift(r1, lev)) - v, one])
            lhs = poly.resultant(f1, f2)
            rhs = b40 * u * u + b22 * u * v + b04 * v * v + b20 * u + b02 * v + b00
            if lhs != rhs:
                raise AssertionError("closed-form coefficients disagree with resultant")


def lambda_prime(o: OortTriple) -> FieldElement:
    """Legendre parameter of the third quotient curve."""
    one = o.ctx.one(0)
    num = (o.mu * o.lam - one) * (o.mu - o.nu)
    den = (o.mu * o.lam - o.nu) * (o.mu - one)
    if den.is_zero():
        raise DegenerateDenominator("(mu*lam - nu)(mu - 1) = 0")
    return (num / den).reduce_level()


def mu_quadratic(ctx: FieldCtx, nu, lam, lam_prime) -> UniPoly:
    """lam*mu^2 + ((lam'(nu+lam) - (1+lam*nu))/(1-lam'))*mu + nu."""
    one = ctx.one(0)
    if lam_prime == one:
        raise DegenerateDenominator("lam' = 1")
    if lam.is_zero():
        raise DegenerateDenominator("lam = 0")
    mid = (lam_prime * (nu + lam) - (one + lam * nu)) / (one - lam_prime)
    return UniPoly(ctx, max(x.level for x in (nu, lam, lam_prime, mid)),
                   [nu, mid, lam])


def mu_from_lambdas(ctx: FieldCtx, nu, lam, lam_prime, max_level: int | None = None):
    """Admissible roots mu of the quadratic, filtered by the exclusion list
    mu not in {0, 1, nu, 1/lam, nu/lam, +-sqrt(nu/lam)}."""
    q = mu_quadratic(ctx, nu, lam, lam_prime)
    target = max(2, q.level * 2) if q.level else 2
    rts = poly.roots(q, min(target, ctx.max_level))
    one = ctx.one(0)
    lam_inv = lam.inverse()
    excluded = {ctx.zero(0).key(), one.key(), nu.key(),
                lam_inv.key(), (lam_inv * nu).key()}
    for s in (lam_inv * nu).sqrt():
        excluded.add(s.key())
    out = []
    for r, _mult in rts:
        if r.key() in excluded:
            continue
        out.append(r)
    return sorted(out, key=lambda e: e.key())
