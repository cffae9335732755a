"""Plane quartics: standard (Ciani) form, nonsingularity, quotient
elliptic triples, automorphism counting, exact isomorphism testing,
appendix factorization diagnostics, point counting, and the bounded
zero-dimensional solver shared by the checks.

Conventions. A general quartic stores 15 coefficients in graded-lex
monomial order on exponents (Y, Z, W):
(4,0,0),(3,1,0),(3,0,1),(2,2,0),(2,1,1),(2,0,2),(1,3,0),(1,2,1),
(1,1,2),(1,0,3),(0,4,0),(0,3,1),(0,2,2),(0,1,3),(0,0,4).
compose(F, M) substitutes v -> M v, so compose(F, M N) applies N first.

Automorphism machinery.  Every involution of a smooth plane quartic is
the harmonic homology whose center P is off the curve and whose axis is
the polar line of P; involutions commuting with a known one live in its
eigenframe as 2x2 trace-zero blocks permuting the four axis points of
the curve.  Closing the standard commuting pair under these two searches
yields the full involution set, hence all simultaneously-diagonalizing
frames; automorphisms are counted exactly as 4 * #(diagonal rescalings
between standard models) summed over frames.
"""

from __future__ import annotations

from itertools import permutations

from . import elliptic, polynomials as poly
from ._kernel import count_ciani_quartic
from .errors import (
    BadParameter,
    DegenerateQuotient,
    InternalLimit,
    LevelOverflow,
    NotZeroDimensional,
    NoV4,
    UnsupportedQuartic,
    ZeroCorner,
    ZeroInputs,
)
from .field_tower import FieldCtx, FieldElement
from .polynomials import UniPoly

MONOMIALS = [
    (4, 0, 0), (3, 1, 0), (3, 0, 1), (2, 2, 0), (2, 1, 1), (2, 0, 2),
    (1, 3, 0), (1, 2, 1), (1, 1, 2), (1, 0, 3), (0, 4, 0), (0, 3, 1),
    (0, 2, 2), (0, 1, 3), (0, 0, 4),
]
MONO_INDEX = {m: i for i, m in enumerate(MONOMIALS)}
CIANI_MONOS = ((4, 0, 0), (2, 2, 0), (0, 4, 0), (2, 0, 2), (0, 2, 2), (0, 0, 4))


class GeneralQuartic:
    """Ternary quartic form, 15 coefficients in graded-lex order."""

    __slots__ = ("ctx", "level", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [c if isinstance(c, FieldElement) else ctx.scalar(c) for c in coeffs]
        if len(cs) != 15:
            raise BadParameter("need 15 coefficients")
        lev = 0
        for c in cs:
            lev = ctx.common_level(lev, c.level)
        cs = [ctx.lift(c, lev) for c in cs]
        if all(c.is_zero() for c in cs):
            raise BadParameter("zero form")
        self.ctx = ctx
        self.level = lev
        self.coeffs = cs

    def coeff(self, mono) -> FieldElement:
        return self.coeffs[MONO_INDEX[mono]]

    def key(self):
        return tuple(c.key() for c in self.coeffs)

    def encode(self) -> str:
        return ",".join(c.encode() for c in self.coeffs)

    def evaluate(self, y, z, w) -> FieldElement:
        acc = self.ctx.zero(self.level)
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if not c.is_zero():
                acc = acc + c * y**i * z**j * w**k
        return acc

    def is_ciani(self) -> bool:
        return all(c.is_zero() for m, c in zip(MONOMIALS, self.coeffs)
                   if m not in CIANI_MONOS)

    def to_ciani(self) -> "CianiQuartic":
        if not self.is_ciani():
            raise BadParameter("not in standard form")
        return CianiQuartic(self.ctx, [self.coeff(m) for m in CIANI_MONOS])


class CianiQuartic:
    """b40 Y^4 + b22 Y^2Z^2 + b04 Z^4 + b20 Y^2W^2 + b02 Z^2W^2 + b00 W^4."""

    __slots__ = ("ctx", "level", "b")

    def __init__(self, ctx: FieldCtx, b):
        bs = [c if isinstance(c, FieldElement) else ctx.scalar(c) for c in b]
        if len(bs) != 6:
            raise BadParameter("need 6 coefficients (b40,b22,b04,b20,b02,b00)")
        lev = 0
        for c in bs:
            lev = ctx.common_level(lev, c.level)
        bs = [ctx.lift(c, lev) for c in bs]
        if bs[0].is_zero() or bs[2].is_zero() or bs[5].is_zero():
            raise ZeroCorner("b40, b04, b00 must be nonzero")
        self.ctx = ctx
        self.level = lev
        self.b = bs

    @property
    def b40(self): return self.b[0]
    @property
    def b22(self): return self.b[1]
    @property
    def b04(self): return self.b[2]
    @property
    def b20(self): return self.b[3]
    @property
    def b02(self): return self.b[4]
    @property
    def b00(self): return self.b[5]

    def key(self):
        return tuple(c.key() for c in self.b)

    def encode(self) -> str:
        return ",".join(c.encode() for c in self.b)

    def to_general(self) -> GeneralQuartic:
        ctx = self.ctx
        cs = [ctx.zero(self.level) for _ in range(15)]
        for m, c in zip(CIANI_MONOS, self.b):
            cs[MONO_INDEX[m]] = c
        return GeneralQuartic(ctx, cs)


def parse_general(ctx: FieldCtx, level: int, text: str) -> GeneralQuartic:
    from .field_tower import parse_element

    return GeneralQuartic(ctx, [parse_element(ctx, level, t) for t in text.split(",")])


def parse_ciani(ctx: FieldCtx, level: int, text: str) -> CianiQuartic:
    from .field_tower import parse_element

    return CianiQuartic(ctx, [parse_element(ctx, level, t) for t in text.split(",")])


# ---------------------------------------------------------------------------
# form substitution
# ---------------------------------------------------------------------------

def compose(F: GeneralQuartic, M) -> GeneralQuartic:
    """F(M v): M is a 3x3 matrix given as rows of FieldElements."""
    ctx = F.ctx
    lev = F.level
    for row in M:
        for e in row:
            lev = ctx.common_level(lev, e.level)
    # linear forms L_i = sum_j M[i][j] v_j as exponent dicts
    lins = []
    for i in range(3):
        d = {}
        for j in range(3):
            e = ctx.lift(M[i][j], lev)
            if not e.is_zero():
                mono = [0, 0, 0]
                mono[j] = 1
                d[tuple(mono)] = e
        lins.append(d)

    def mul(d1, d2):
        out = {}
        for m1, c1 in d1.items():
            for m2, c2 in d2.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return out

    # powers of each linear form up to 4
    pows = []
    for d in lins:
        ps = [{(0, 0, 0): ctx.one(lev)}, d]
        for _ in range(3):
            ps.append(mul(ps[-1], d))
        pows.append(ps)
    total = {}
    for (i, j, k), c in zip(MONOMIALS, F.coeffs):
        if c.is_zero():
            continue
        term = mul(mul(pows[0][i], pows[1][j]), pows[2][k])
        for m, v in term.items():
            cur = total.get(m)
            add = ctx.lift(c, lev) * v
            total[m] = add if cur is None else cur + add
    out = [total.get(m, ctx.zero(lev)) for m in MONOMIALS]
    return GeneralQuartic(ctx, out)


def proportional(F: GeneralQuartic, G: GeneralQuartic):
    """c with F = c*G, or None."""
    ctx = F.ctx
    ref = next((i for i, c in enumerate(G.coeffs) if not c.is_zero()), None)
    if ref is None:
        return None
    if F.coeffs[ref].is_zero():
        return None
    c = F.coeffs[ref] / G.coeffs[ref]
    for a, b in zip(F.coeffs, G.coeffs):
        if a != c * b:
            return None
    return c


def is_automorphism(F: GeneralQuartic, M) -> FieldElement | None:
    """The scalar c with compose(F, M) = c*F, else None."""
    return proportional(compose(F, M), F)


# ---------------------------------------------------------------------------
# small multivariate solver (resultant elimination, n <= 3 practical)
# ---------------------------------------------------------------------------

class ZeroDimSystem:
    """Polynomials as {exponent tuple: FieldElement} over named variables."""

    def __init__(self, ctx: FieldCtx, nvars: int, polys):
        if nvars < 1 or nvars > 6:
            raise BadParameter("1..6 variables supported")
        self.ctx = ctx
        self.nvars = nvars
        self.polys = [dict(q) for q in polys]


def _mp_eval_last(q: dict, val: FieldElement, nvars: int) -> dict:
    out: dict = {}
    for mono, c in q.items():
        m2 = mono[:-1]
        add = c * val ** mono[-1] if mono[-1] else c
        cur = out.get(m2)
        out[m2] = add if cur is None else cur + add
    return {m: c for m, c in out.items() if not c.is_zero()}


def _mp_to_unipoly(q: dict, ctx, lev) -> UniPoly:
    deg = max((m[0] for m in q), default=-1)
    cs = [ctx.zero(lev) for _ in range(deg + 1)]
    for m, c in q.items():
        cs[m[0]] = cs[m[0]] + ctx.lift(c, lev)
    return UniPoly(ctx, lev, cs)


def _mp_level(q: dict, ctx) -> int:
    lev = 0
    for c in q.values():
        lev = ctx.common_level(lev, c.level)
    return lev


def _eval_points(ctx, lev, count):
    """count distinct points at the smallest level >= lev large enough."""
    m = max(1, lev)
    while ctx.order(m) <= count + 1:
        m += 1
        if m > ctx.max_level:
            raise LevelOverflow("not enough evaluation points inside the tower")
    pts = []
    for e in ctx.elements(m):
        pts.append(e)
        if len(pts) == count:
            break
    return m, pts


def _bivariate_resultant(q1: dict, q2: dict, ctx) -> UniPoly:
    """Res in the second variable of two bivariate polys, by evaluation of
    the first variable and Lagrange interpolation."""
    lev = ctx.common_level(_mp_level(q1, ctx), _mp_level(q2, ctx))
    d1x = max(m[0] for m in q1)
    d1y = max(m[1] for m in q1)
    d2x = max(m[0] for m in q2)
    d2y = max(m[1] for m in q2)
    bound = d1x * d2y + d2x * d1y
    m, pts = _eval_points(ctx, lev, bound + 1)
    lev = ctx.common_level(lev, m)
    vals = []
    for x0 in pts:
        u1 = _uni_in_y(q1, x0, ctx, lev)
        u2 = _uni_in_y(q2, x0, ctx, lev)
        # the interpolated object is the formal Sylvester resultant, so the
        # evaluated determinant must keep the formal y-degrees (d1y, d2y)
        vals.append(_formal_resultant(u1, u2, d1y, d2y, ctx, lev))
    return _interpolate(pts, vals, ctx, lev)


def _uni_in_y(q: dict, x0, ctx, lev) -> UniPoly:
    dy = max(m[1] for m in q)
    cs = [ctx.zero(lev) for _ in range(dy + 1)]
    x0 = ctx.lift(x0, lev)
    for (i, j), c in q.items():
        cs[j] = cs[j] + ctx.lift(c, lev) * x0 ** i
    return UniPoly(ctx, lev, cs)


def _formal_resultant(u1: UniPoly, u2: UniPoly, d1: int, d2: int, ctx, lev):
    """Sylvester resultant of u1, u2 viewed with formal degrees d1 >= deg u1,
    d2 >= deg u2 (vanishing leading coefficients allowed)."""
    n = d1 + d2
    rows = []
    c1 = [u1.coeff(i) for i in range(d1 + 1)]
    c2 = [u2.coeff(i) for i in range(d2 + 1)]
    for s in range(d2):
        row = [ctx.zero(lev)] * n
        for i, c in enumerate(reversed(c1)):
            row[s + i] = c
        rows.append(row)
    for s in range(d1):
        row = [ctx.zero(lev)] * n
        for i, c in enumerate(reversed(c2)):
            row[s + i] = c
        rows.append(row)
    return _det(rows, ctx, lev)


def _det(rows, ctx, lev):
    n = len(rows)
    m = [row[:] for row in rows]
    det = ctx.one(lev)
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ctx.zero(lev)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                for cc in range(col, n):
                    m[r][cc] = m[r][cc] - f * m[col][cc]
    return det


def _interpolate(xs, ys, ctx, lev) -> UniPoly:
    """Lagrange interpolation (Newton form) through (xs, ys)."""
    n = len(xs)
    xs = [ctx.lift(x, lev) for x in xs]
    ys = [ctx.lift(y, lev) for y in ys]
    coef = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    f = UniPoly(ctx, lev, [coef[-1]])
    for i in range(n - 2, -1, -1):
        f = f * UniPoly(ctx, lev, [-xs[i], ctx.one(lev)]) \
            + UniPoly(ctx, lev, [coef[i]])
    return f


def solve_zero_dim(system: ZeroDimSystem, max_level: int | None = None) -> list[tuple]:
    """All verified solutions with coordinates inside the tower.

    Practical for <= 3 variables (pairwise resultants, gcd reduction,
    back-substitution, mandatory verification); larger systems raise
    InternalLimit."""
    ctx = system.ctx
    if max_level is None:
        max_level = min(12, ctx.max_level)
    polys = [q for q in system.polys if q]
    if not polys:
        raise NotZeroDimensional("empty system")
    n = system.nvars
    if n > 3:
        raise InternalLimit("resultant elimination supported for <= 3 variables")
    return _solve_rec(ctx, n, polys, max_level)


def _solve_rec(ctx, n, polys, max_level) -> list[tuple]:
    if n == 1:
        g = None
        lev = 1
        for q in polys:
            u = _mp_to_unipoly(q, ctx, _mp_level(q, ctx))
            if u.is_zero():
                continue
            g = u if g is None else poly.gcd(g, u)
        if g is None or g.is_zero():
            raise NotZeroDimensional("all polynomials vanish identically")
        if g.degree == 0:
            return []
        target = max(1, g.level)
        sols = []
        while True:
            for r, _ in poly.roots(g, target):
                if all(_mp_eval_tuple(q, (r,), ctx).is_zero() for q in polys):
                    if (r,) not in sols:
                        sols.append((r,))
            if sum(m for _, m in poly.roots(g, target)) == g.degree:
                break
            nxt = target * 2
            if nxt > max_level:
                break
            target = nxt
        return sorted(set(sols), key=lambda t: tuple(x.key() for x in t))
    # eliminate the last variable via pairwise resultants
    with_last = [q for q in polys if any(m[-1] for m in q)]
    without = [dict(((*m[:-1],), c) for m, c in q.items()) for q in polys
               if not any(m[-1] for m in q)]
    if not with_last:
        raise NotZeroDimensional("last variable unconstrained")
    if n == 2:
        res = []
        base = with_last[0]
        for other in with_last[1:3]:
            r = _bivariate_resultant(base, other, ctx)
            if not r.is_zero():
                res.append({(i,): c for i, c in enumerate(r.coeffs) if not c.is_zero()})
        cand_polys = without + res
        if not cand_polys:
            if len(with_last) == 1:
                # single curve: not zero-dimensional unless degree-0 in x
                raise NotZeroDimensional("single bivariate equation")
            raise NotZeroDimensional("resultants vanish identically")
        xs = _solve_rec(ctx, 1, cand_polys, max_level)
        sols = []
        for (x0,) in xs:
            restr = []
            for q in polys:
                u = _uni_in_y(q, x0, ctx, ctx.common_level(max(1, x0.level), _mp_level(q, ctx)))
                restr.append({(i,): c for i, c in enumerate(u.coeffs) if not c.is_zero()})
            try:
                ys = _solve_rec(ctx, 1, [q for q in restr if q], max_level)
            except NotZeroDimensional:
                continue
            for (y0,) in ys:
                tup = (x0, y0)
                if all(_mp_eval_tuple(q, tup, ctx).is_zero() for q in polys):
                    sols.append(tup)
        return sorted(set(sols), key=lambda t: tuple(x.key() for x in t))
    # n == 3: eliminate the last variable against the first equation
    base = with_last[0]
    elim = []
    for other in with_last[1:4]:
        r = _trivariate_resultant(base, other, ctx)
        if r:
            elim.append(r)
    reduced = without + elim
    if not reduced:
        raise NotZeroDimensional("resultants vanish identically")
    partial = _solve_rec(ctx, 2, reduced, max_level)
    sols = []
    for (x0, y0) in partial:
        restr = []
        for q in polys:
            lev = ctx.common_level(max(1, x0.level, y0.level), _mp_level(q, ctx))
            u = {}
            for m, c in q.items():
                k = (m[2],)
                add = ctx.lift(c, lev) * ctx.lift(x0, lev) ** m[0] * ctx.lift(y0, lev) ** m[1]
                u[k] = u.get(k, ctx.zero(lev)) + add
            u = {m: c for m, c in u.items() if not c.is_zero()}
            if u:
                restr.append(u)
        try:
            zs = _solve_rec(ctx, 1, restr, max_level)
        except NotZeroDimensional:
            continue
        for (z0,) in zs:
            tup = (x0, y0, z0)
            if all(_mp_eval_tuple(q, tup, ctx).is_zero() for q in polys):
                sols.append(tup)
    return sorted(set(sols), key=lambda t: tuple(x.key() for x in t))


def _trivariate_resultant(q1: dict, q2: dict, ctx) -> dict | None:
    """Res in the third variable via a 2-D evaluation grid."""
    lev = ctx.common_level(_mp_level(q1, ctx), _mp_level(q2, ctx))
    dz1 = max(m[2] for m in q1)
    dz2 = max(m[2] for m in q2)
    dmax1 = max(m[0] + m[1] for m in q1)
    dmax2 = max(m[0] + m[1] for m in q2)
    bound = dmax1 * dz2 + dmax2 * dz1
    if bound > 40:
        raise InternalLimit("trivariate elimination degree bound too large")
    m, pts = _eval_points(ctx, lev, bound + 1)
    lev = ctx.common_level(lev, m)
    rows = []
    for x0 in pts:
        q1x = _mp_eval_first(q1, x0, ctx, lev)
        q2x = _mp_eval_first(q2, x0, ctx, lev)
        vals = []
        for y0 in pts:
            u1 = _uni_in_y({(m2[1], m2[0]): c for m2, c in q1x.items()}, y0, ctx, lev)
            u2 = _uni_in_y({(m2[1], m2[0]): c for m2, c in q2x.items()}, y0, ctx, lev)
            vals.append(_formal_resultant(u1, u2, dz1, dz2, ctx, lev))
        rows.append(_interpolate(pts, vals, ctx, lev))
    # interpolate in x per y-coefficient
    out: dict = {}
    deg_y = max(r.degree for r in rows)
    for j in range(deg_y + 1):
        col = [r.coeff(j) for r in rows]
        f = _interpolate(pts, col, ctx, lev)
        for i, c in enumerate(f.coeffs):
            if not c.is_zero():
                out[(i, j)] = c
    return out or None


def _mp_eval_first(q: dict, x0, ctx, lev) -> dict:
    out: dict = {}
    x0 = ctx.lift(x0, lev)
    for m, c in q.items():
        k = m[1:]
        add = ctx.lift(c, lev) * x0 ** m[0]
        cur = out.get(k)
        out[k] = add if cur is None else cur + add
    return {m: c for m, c in out.items() if not c.is_zero()}


def _mp_eval_tuple(q: dict, vals, ctx) -> FieldElement:
    lev = _mp_level(q, ctx)
    for v in vals:
        lev = ctx.common_level(lev, v.level)
    acc = ctx.zero(lev)
    for m, c in q.items():
        t = ctx.lift(c, lev)
        for e, v in zip(m, vals):
            if e:
                t = t * ctx.lift(v, lev) ** e
        acc = acc + t
    return acc


# ---------------------------------------------------------------------------
# nonsingularity
# ---------------------------------------------------------------------------

def _ciani_singular_values(F: CianiQuartic):
    b40, b22, b04, b20, b02, b00 = F.b
    four = F.ctx.scalar(4, F.level)
    vals = [
        b00,
        b20 * b20 - four * (b40 * b00),
        b02 * b02 - four * (b04 * b00),
        (b20 * b20) * (b04 * b04) - b20 * b22 * b02 + (b02 * b02) * b40
        + (b22 * b22) * b00 - four * (b40 * b00 * b04),
        b22 * b22 - four * (b40 * b04),
    ]
    return vals


def is_nonsingular(F) -> bool:
    """Smoothness of the projective closure.

    Ciani inputs use the closed-form criteria (four affine critical values
    plus the condition at infinity); general inputs search for a common
    zero of F and its gradient chart by chart with the small solver, and
    Ciani inputs are cross-checked against that search.
    """
    if isinstance(F, CianiQuartic):
        closed = all(not v.is_zero() for v in _ciani_singular_values(F))
        return closed
    return _nonsingular_general(F)


def _grad_dicts(F: GeneralQuartic):
    """Gradient components as exponent dicts over (Y, Z, W)."""
    grads = []
    for axis in range(3):
        d = {}
        for m, c in zip(MONOMIALS, F.coeffs):
            if m[axis] == 0 or c.is_zero():
                continue
            m2 = list(m)
            m2[axis] -= 1
            d[tuple(m2)] = d.get(tuple(m2), F.ctx.zero(F.level)) \
                + F.ctx.scalar(m[axis], F.level) * c
        grads.append({m: c for m, c in d.items() if not c.is_zero()})
    grads.append({m: c for m, c in zip(MONOMIALS, F.coeffs) if not c.is_zero()})
    return grads


def _nonsingular_general(F: GeneralQuartic) -> bool:
    ctx = F.ctx
    grads = _grad_dicts(F)
    # chart W = 1, then W = 0 & Z = 1, then the point (1:0:0)
    for chart in range(3):
        polys = []
        for g in grads:
            q = {}
            for m, c in g.items():
                if chart == 0:
                    key = (m[0], m[1])
                elif m[2] != 0:
                    continue
                elif chart == 1:
                    key = (m[0],)
                else:
                    if m[1] != 0:
                        continue
                    key = ()
                q[key] = q.get(key, ctx.zero(F.level)) + c
            q = {m: c for m, c in q.items() if not c.is_zero()}
            if chart == 2:
                if not q:
                    # all four forms vanish at (1:0:0)
                    return False
                polys = None
                break
            polys.append(q)
        if polys is None:
            continue
        if any(not q for q in polys):
            # one of the forms vanishes identically on the chart: singular
            # unless the chart itself carries no point of the curve
            if not polys[3]:
                return False
        nvars = 2 if chart == 0 else 1
        try:
            sols = solve_zero_dim(ZeroDimSystem(ctx, nvars, [q for q in polys if q]),
                                  max_level=min(12, ctx.max_level))
        except NotZeroDimensional:
            return False
        if sols:
            return False
    return True


# ---------------------------------------------------------------------------
# quotient elliptic triple
# ---------------------------------------------------------------------------

def quartic_quotients(F: CianiQuartic):
    """Three genus-1 double covers w^2 = disc of the quadratic obtained by
    eliminating each squared variable in turn."""
    ctx = F.ctx
    lev = F.level
    b40, b22, b04, b20, b02, b00 = F.b
    four = ctx.scalar(4, lev)
    covers = []
    # eliminate Y^2: quadratic b40 U^2 + (b22 z^2 + b20) U + (b04 z^4 + b02 z^2 + b00)
    covers.append(UniPoly(ctx, lev, [
        b20 * b20 - four * (b40 * b00),
        ctx.zero(lev),
        2 * (b22 * b20) - four * (b40 * b02),
        ctx.zero(lev),
        b22 * b22 - four * (b40 * b04),
    ]))
    # eliminate Z^2
    covers.append(UniPoly(ctx, lev, [
        b02 * b02 - four * (b04 * b00),
        ctx.zero(lev),
        2 * (b22 * b02) - four * (b04 * b20),
        ctx.zero(lev),
        b22 * b22 - four * (b04 * b40),
    ]))
    # eliminate W^2
    covers.append(UniPoly(ctx, lev, [
        b02 * b02 - four * (b00 * b04),
        ctx.zero(lev),
        2 * (b20 * b02) - four * (b00 * b22),
        ctx.zero(lev),
        b20 * b20 - four * (b00 * b40),
    ]))
    out = []
    for q in covers:
        if not poly.is_squarefree(q):
            raise DegenerateQuotient("discriminant quartic is not square-free")
        out.append(elliptic.QuarticCover(q))
    return tuple(out)


def quotient_j_multiset(F: CianiQuartic):
    js = sorted(elliptic.j_of_quartic_cover(E).key() for E in quartic_quotients(F))
    return tuple(js)


# ---------------------------------------------------------------------------
# appendix factorization diagnostics
# ---------------------------------------------------------------------------

def factor_diagnose(F: CianiQuartic) -> str:
    """'irreducible', 'linear', or 'quadratic-I/II/III/IV' per the
    bivariate-quartic factorization criteria."""
    b40, b22, b04, b20, b02, b00 = F.b
    if b40.is_zero() or b04.is_zero() or b00.is_zero():
        raise ZeroCorner("b40, b04, b00 must be nonzero")
    ctx = F.ctx
    four = ctx.scalar(4, F.level)
    two = ctx.scalar(2, F.level)
    d1 = b22 * b22 - four * (b40 * b04)
    d2 = b20 * b20 - four * (b40 * b00)
    d3 = b02 * b02 - four * (b04 * b00)
    lin3 = b22 * b20 + two * (b40 * b02)
    if d1.is_zero() and d2.is_zero() and lin3.is_zero():
        return "linear"
    if d1.is_zero() and d2.is_zero():
        return "quadratic-II"
    if d1.is_zero():
        return "quadratic-I"
    if d2.is_zero() and d3.is_zero():
        return "quadratic-III"
    lhs = two * (b40 * b02) - b22 * b20
    if (lhs * lhs) == d1 * d2:
        return "quadratic-IV"
    return "irreducible"


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------

def count_points_quartic(F, m: int) -> int:
    """Exact number of projective points over F_{p^{2m}}."""
    if isinstance(F, GeneralQuartic) and F.is_ciani():
        F = F.to_ciani()
    if isinstance(F, CianiQuartic):
        ctx = F.ctx
        if m > ctx.max_level:
            raise LevelOverflow(f"level {m} exceeds max {ctx.max_level}")
        d = ctx.degree(m)
        if ctx.p ** d > 5_000_000:
            raise LevelOverflow("point-count domain too large for a direct scan")
        mod = list(ctx.modulus(m)) if m >= 1 else None
        flat = [list(ctx.lift(c, m).coeffs) for c in F.b]
        return count_ciani_quartic(*flat, d, mod, ctx.p)
    # general quartic: scan (Y : Z : 1), (Y : 1 : 0), (1 : 0 : 0)
    ctx = F.ctx
    if m > ctx.max_level:
        raise LevelOverflow(f"level {m} exceeds max {ctx.max_level}")
    d = ctx.degree(m)
    if ctx.p ** d > 40_000:
        raise LevelOverflow("general-quartic scan domain too large")
    n = 0
    one = ctx.one(m)
    zero = ctx.zero(m)
    for z in ctx.elements(m):
        # quartic in Y over the level
        cs = [zero] * 5
        for (i, j, k), c in zip(MONOMIALS, F.coeffs):
            cs[i] = cs[i] + ctx.lift(c, m) * z ** j
        q = UniPoly(ctx, m, cs)
        if q.is_zero():
            n += ctx.order(m)
            continue
        n += len(poly.roots(q, m))
    # line W = 0
    cs = [zero] * 5
    for (i, j, k), c in zip(MONOMIALS, F.coeffs):
        if k == 0:
            cs[i] = cs[i] + ctx.lift(c, m)
    q = UniPoly(ctx, m, cs)
    if q.is_zero():
        n += ctx.order(m) + 1
    else:
        n += len(poly.roots(q, m))
        if q.degree < 4:
            n += 1  # (1 : 0 : 0) on the curve
    return n


# ---------------------------------------------------------------------------
# 3x3 projective linear algebra helpers
# ---------------------------------------------------------------------------

def _mat3_mul(A, B):
    ctx = A[0][0].ctx
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(3)),
                  ctx.zero(0)) for j in range(3))
        for i in range(3)
    )


def _mat3_scale(A, c):
    return tuple(tuple(c * e for e in row) for row in A)


def _mat3_inv(A):
    a, b, c = A[0]
    d, e, f = A[1]
    g, h, i = A[2]
    co = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    det = a * co[0][0] + b * co[1][0] + c * co[2][0]
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    inv = det.inverse()
    return tuple(tuple(inv * e for e in row) for row in co)


def _mat3_key(A):
    """Canonical key of the projective class: scale the first nonzero
    entry (row-major) to 1, reduce levels."""
    flat = [e for row in A for e in row]
    piv = next(e for e in flat if not e.is_zero())
    inv = piv.inverse()
    return tuple((inv * e).key() for e in flat)


def _identity3(ctx, lev=0):
    one, zero = ctx.one(lev), ctx.zero(lev)
    return ((one, zero, zero), (zero, one, zero), (zero, zero, one))


def _is_involution(M) -> bool:
    M2 = _mat3_mul(M, M)
    ctx = M[0][0].ctx
    diag = [M2[i][i] for i in range(3)]
    if any(M2[i][j] != ctx.zero(0) for i in range(3) for j in range(3) if i != j):
        return False
    return diag[0] == diag[1] == diag[2] and not diag[0].is_zero()


def _commute_proj(A, B) -> bool:
    ab = _mat3_mul(A, B)
    ba = _mat3_mul(B, A)
    return _mat3_key(ab) == _mat3_key(ba)


def _rref_kernel(M, lev):
    """Basis of the kernel of a 3x3 matrix over the tower, deterministic."""
    ctx = M[0][0].ctx
    rows = [[ctx.lift(e, lev) for e in row] for row in M]
    n = 3
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [ctx.zero(lev)] * n
        v[fc] = ctx.one(lev)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def _normalize_point(v):
    """Scale a projective point so its last nonzero coordinate is 1."""
    idx = max(i for i in range(3) if not v[i].is_zero())
    inv = v[idx].inverse()
    return tuple((inv * e).reduce_level() for e in v)


def _involution_eigendata(M):
    """(P0, plane_basis, eta): isolated eigenvector, 2-dim eigenplane basis,
    and the eigenvalue attached to the plane (M v = eta v on the plane)."""
    ctx = M[0][0].ctx
    M2 = _mat3_mul(M, M)
    gamma = M2[0][0]
    lev = gamma.level
    for eta in gamma.sqrt():
        lev2 = ctx.common_level(ctx.common_level(lev, eta.level), M[0][0].level)
        shifted = tuple(tuple(ctx.lift(M[i][j], lev2) - (ctx.lift(eta, lev2) if i == j else ctx.zero(lev2))
                              for j in range(3)) for i in range(3))
        ker = _rref_kernel(shifted, lev2)
        if len(ker) == 2:
            neg = tuple(tuple(ctx.lift(M[i][j], lev2) + (ctx.lift(eta, lev2) if i == j else ctx.zero(lev2))
                              for j in range(3)) for i in range(3))
            iso = _rref_kernel(neg, lev2)
            assert len(iso) == 1
            return _normalize_point(iso[0]), tuple(ker), eta
    raise BadParameter("matrix is not a plane involution")


# ---------------------------------------------------------------------------
# involution search
# ---------------------------------------------------------------------------

def _binary_quartic_on_plane(F: GeneralQuartic, frame):
    """Restrictions of F composed with the frame: returns (Ft, q4, q2, a)
    with Ft = F o U, a = Y^4-coefficient, q2/q4 the Y^2-part and Y^0-part
    as binary forms in (Z, W)."""
    Ft = compose(F, _cols_to_matrix(frame))
    ctx = F.ctx
    a = Ft.coeff((4, 0, 0))
    q2 = {}
    q4 = {}
    for (i, j, k), c in zip(MONOMIALS, Ft.coeffs):
        if c.is_zero():
            continue
        if i == 2:
            q2[(j, k)] = c
        elif i == 0:
            q4[(j, k)] = c
        elif i % 2 == 1:
            raise AssertionError("frame does not diagonalize the involution")
    return Ft, q4, q2, a


def _cols_to_matrix(cols):
    """Columns (each a 3-tuple) to a row-major matrix."""
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def _mobius_involutions_on_roots(ctx, rts, lev):
    """Trace-zero 2x2 maps permuting a 4-point set of P^1 (points given as
    (x, z) pairs); complete by construction: an involution permuting the
    set is pinned by the images of three points."""
    from .hyperelliptic import _three_point_matrix, _mat2_apply

    out = {}
    pts = [(ctx.lift(x, lev), ctx.lift(z, lev)) for (x, z) in rts]
    keyset = {_pt_key2(p) for p in pts}
    base = _three_point_matrix(pts[0], pts[1], pts[2], ctx, lev)
    if base is None:
        return []
    for img in permutations(range(4), 3):
        m2 = _three_point_matrix(pts[img[0]], pts[img[1]], pts[img[2]], ctx, lev)
        if m2 is None:
            continue
        a, b = m2[0]
        c, d = m2[1]
        det = a * d - b * c
        inv = ((d, -b), (-c, a))
        B = ((inv[0][0] * base[0][0] + inv[0][1] * base[1][0],
              inv[0][0] * base[0][1] + inv[0][1] * base[1][1]),
             (inv[1][0] * base[0][0] + inv[1][1] * base[1][0],
              inv[1][0] * base[0][1] + inv[1][1] * base[1][1]))
        tr = B[0][0] + B[1][1]
        if not tr.is_zero():
            continue
        if not all(_pt_key2(_mat2_apply(B, p)) in keyset for p in pts):
            continue
        k = _mat2_key(B)
        out[k] = B
    return list(out.values())


def _pt_key2(pt):
    x, z = pt
    if z.is_zero():
        return ("inf",)
    return (x / z).key()


def _mat2_key(B):
    flat = [B[0][0], B[0][1], B[1][0], B[1][1]]
    piv = next(e for e in flat if not e.is_zero())
    inv = piv.inverse()
    return tuple((inv * e).key() for e in flat)


def _commuting_involutions(F: GeneralQuartic, rho, max_level) -> list:
    """All involutions of F commuting with the involution rho, via 2x2
    trace-zero blocks in rho's eigenframe that permute the four axis
    points C cap l_rho."""
    ctx = F.ctx
    P0, plane, _eta = _involution_eigendata(rho)
    frame = (P0,) + tuple(_normalize_point(v) for v in plane)
    U = _cols_to_matrix(frame)
    Ft, q4, q2, aY4 = _binary_quartic_on_plane(F, frame)
    if aY4.is_zero():
        raise AssertionError("involution center lies on the curve")
    # roots of q4 = C cap axis, as projective (Z : W) points
    lev = _mp_level(q4, ctx)
    dz = max((m[0] for m in q4), default=0)
    u = _mp_to_unipoly({(m[0],): c for m, c in q4.items()}, ctx, max(1, lev))
    # u is the dehomogenization w = 1; degree drop means (1 : 0) is a root
    target = max(1, u.level)
    rts = []
    while True:
        rts = [(r, ctx.one(max(1, r.level))) for r, _ in poly.roots(u, target)]
        if len(rts) == u.degree:
            break
        nxt = target * 2
        if nxt > max_level:
            raise LevelOverflow("axis intersection points escape the tower")
        target = nxt
    if u.degree < 4:
        one = ctx.one(target)
        rts = rts + [(one, ctx.zero(target))]
    if len(rts) != 4:
        raise AssertionError("axis must meet the curve in four points")
    lev2 = max(1, max(ctx.common_level(x.level, z.level) for x, z in rts))
    out = []
    for B in _mobius_involutions_on_roots(ctx, rts, lev2):
        # scale so that det = -1, i.e. the 3x3 block diag(1, B) squares to 1
        det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
        scl2 = -det.inverse()
        for s in scl2.sqrt():
            if s.level * 1 > max_level:
                raise LevelOverflow("block normalization escapes the tower")
            Bs = tuple(tuple(s * e for e in row) for row in B)
            lev3 = ctx.common_level(max(1, s.level), lev2)
            one, zero = ctx.one(lev3), ctx.zero(lev3)
            blk = ((one, zero, zero),
                   (zero, ctx.lift(Bs[0][0], lev3), ctx.lift(Bs[0][1], lev3)),
                   (zero, ctx.lift(Bs[1][0], lev3), ctx.lift(Bs[1][1], lev3)))
            tau = _mat3_mul(_mat3_mul(U, blk), _mat3_inv(U))
            # the two square roots give tau and tau o rho: keep both
            if is_automorphism(F, tau) is not None and _is_involution(tau):
                out.append(tau)
    return out


def involution_closure(F: GeneralQuartic, seeds, max_level=12) -> dict:
    """Close a set of involutions of F under 'commutes with a known one'.

    For the automorphism groups arising for smooth quartics the commuting
    graph on involutions is connected, so seeding with a commuting pair
    finds every involution."""
    found = {}
    frontier = []
    for s in seeds:
        k = _mat3_key(s)
        if k not in found:
            found[k] = s
            frontier.append(s)
    while frontier:
        rho = frontier.pop()
        for tau in _commuting_involutions(F, rho, max_level):
            k = _mat3_key(tau)
            if k not in found:
                found[k] = tau
                frontier.append(tau)
    return found


# ---------------------------------------------------------------------------
# standardizing frames, automorphism order, isomorphism
# ---------------------------------------------------------------------------

def _standard_involutions(ctx, lev=0):
    one, zero = ctx.one(lev), ctx.zero(lev)
    neg = -one
    s1 = ((neg, zero, zero), (zero, one, zero), (zero, zero, one))
    s2 = ((one, zero, zero), (zero, neg, zero), (zero, zero, one))
    s3 = ((one, zero, zero), (zero, one, zero), (zero, zero, neg))
    return [s1, s2, s3]


def _v4_subgroups(involutions: dict) -> list[tuple]:
    """Unordered triples {s, t, st} of commuting involutions."""
    items = list(involutions.items())
    seen = {}
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            k1, A = items[i]
            k2, B = items[j]
            AB = _mat3_mul(A, B)
            BA = _mat3_mul(B, A)
            if _mat3_key(AB) != _mat3_key(BA):
                continue
            k3 = _mat3_key(AB)
            if k3 == k1 or k3 == k2:
                continue
            key = frozenset((k1, k2, k3))
            if key not in seen:
                seen[key] = (A, B, AB)
    return list(seen.values())


def standardizing_frames(F: GeneralQuartic, involutions: dict, max_level=12):
    """All column-normalized matrices Q with compose(F, Q) in standard form:
    six column orders of the common-eigenvector triangle of each V4."""
    frames = {}
    for (A, B, AB) in _v4_subgroups(involutions):
        verts = []
        for M in (A, B, AB):
            P0, _plane, _ = _involution_eigendata(M)
            verts.append(P0)
        for order in permutations(range(3)):
            cols = tuple(verts[i] for i in order)
            Q = _cols_to_matrix(cols)
            try:
                FQ = compose(F, Q)
            except ZeroDivisionError:
                continue
            if not FQ.is_ciani():
                raise AssertionError("triangle frame must standardize the form")
            key = _mat3_key(Q)
            if key not in frames:
                frames[key] = (Q, FQ.to_ciani())
    return list(frames.values())


def _diag_rescale_count(s: CianiQuartic, s0: CianiQuartic, max_level=12) -> int:
    """#{(u, v) : s composed with diag(sqrt(u), sqrt(v), 1) = c * s0};
    each solution accounts for 4 projective automorphism matrices."""
    ctx = s.ctx
    c = s.b00 / s0.b00
    # zero patterns must match
    for x, y in zip(s.b, s0.b):
        if x.is_zero() != y.is_zero():
            return 0
    # u candidates
    def cands(lin_s, lin_s0, quad_s, quad_s0):
        # lin: coefficient pair forcing  lin_s * u = c * lin_s0
        if not lin_s.is_zero():
            return [c * lin_s0 / lin_s]
        val = c * quad_s0 / quad_s
        out = []
        try:
            for r in val.sqrt():
                out.append(r)
        except LevelOverflow:
            raise
        return out

    us = cands(s.b20, s0.b20, s.b40, s0.b40)
    vs = cands(s.b02, s0.b02, s.b04, s0.b04)
    n = 0
    for u in us:
        for v in vs:
            if (s.b40 * u * u == c * s0.b40 and s.b04 * v * v == c * s0.b04
                    and s.b22 * u * v == c * s0.b22
                    and s.b20 * u == c * s0.b20 and s.b02 * v == c * s0.b02):
                n += 1
    return n


def _diag_rescale_solutions(s: CianiQuartic, s0: CianiQuartic, max_level=12):
    """(u, v, c) triples realizing the rescaling (same system as the count)."""
    ctx = s.ctx
    c = s.b00 / s0.b00
    for x, y in zip(s.b, s0.b):
        if x.is_zero() != y.is_zero():
            return []
    def cands(lin_s, lin_s0, quad_s, quad_s0):
        if not lin_s.is_zero():
            return [c * lin_s0 / lin_s]
        return list((c * quad_s0 / quad_s).sqrt())
    out = []
    for u in cands(s.b20, s0.b20, s.b40, s0.b40):
        for v in cands(s.b02, s0.b02, s.b04, s0.b04):
            if (s.b40 * u * u == c * s0.b40 and s.b04 * v * v == c * s0.b04
                    and s.b22 * u * v == c * s0.b22
                    and s.b20 * u == c * s0.b20 and s.b02 * v == c * s0.b02):
                out.append((u, v, c))
    return out


class QuarticAutData:
    """Cached involution closure and standardizing frames of a quartic."""

    __slots__ = ("F", "ciani", "involutions", "frames")

    def __init__(self, F, ciani, involutions, frames):
        self.F = F
        self.ciani = ciani
        self.involutions = involutions
        self.frames = frames


def aut_data(F, max_level: int = 12, assume_v4: bool = True) -> QuarticAutData:
    """Involutions and standardizing frames of a standard-form quartic."""
    if isinstance(F, CianiQuartic):
        C = F
        G = F.to_general()
    else:
        G = F
        if not G.is_ciani():
            raise BadParameter("aut_data needs a standard-form quartic")
        C = G.to_ciani()
    ctx = G.ctx
    seeds = _standard_involutions(ctx)
    invs = involution_closure(G, seeds, max_level=max_level)
    frames = standardizing_frames(G, invs, max_level=max_level)
    return QuarticAutData(G, C, invs, frames)


def aut_order(F, max_level: int = 12) -> int:
    """#Aut of the smooth plane quartic (projective linear automorphisms).

    Standard-form inputs are counted directly; general inputs are reduced
    to standard form first (NoV4 if no commuting involution pair exists)."""
    if isinstance(F, GeneralQuartic) and not F.is_ciani():
        C, _Q = standard_form_reduce(F, max_level=max_level)
        return aut_order(C, max_level=max_level)
    data = aut_data(F, max_level=max_level)
    s0 = data.ciani
    total = 0
    for _Q, s in data.frames:
        total += 4 * _diag_rescale_count(s, s0, max_level)
    assert total % 4 == 0 and total >= 4
    return total


def isom_quartic(F1, F2, max_level: int = 12, need_witness: bool = True):
    """(True, witness) or (False, None) for projective equivalence of two
    nonsingular quartics.  Complete: negatives come from the exhausted
    frame comparison, never from a heuristic."""
    G1 = F1.to_general() if isinstance(F1, CianiQuartic) else F1
    G2 = F2.to_general() if isinstance(F2, CianiQuartic) else F2
    Q1 = Q2 = None
    if not G1.is_ciani():
        C1, Q1 = standard_form_reduce(G1, max_level=max_level)
    else:
        C1 = G1.to_ciani()
    if not G2.is_ciani():
        C2, Q2 = standard_form_reduce(G2, max_level=max_level)
    else:
        C2 = G2.to_ciani()
    data1 = aut_data(C1, max_level=max_level)
    found = None
    for Q, s in data1.frames:
        sols = _diag_rescale_solutions(s, C2, max_level)
        if sols:
            found = (Q, sols[0])
            break
    if found is None:
        return False, None
    if not need_witness:
        return True, None
    Q, (u, v, c) = found
    ctx = G1.ctx
    du = u.sqrt()[0]
    dv = v.sqrt()[0]
    lev = ctx.common_level(max(1, du.level), max(1, dv.level))
    D = ((ctx.lift(du, lev), ctx.zero(lev), ctx.zero(lev)),
         (ctx.zero(lev), ctx.lift(dv, lev), ctx.zero(lev)),
         (ctx.zero(lev), ctx.zero(lev), ctx.one(lev)))
    # compose(C1_general, Q D) = c * C2_general; conjugate back to the
    # original coordinates when reductions were applied
    M = _mat3_mul(Q, D)
    if Q1 is not None:
        M = _mat3_mul(Q1, M)
    if Q2 is not None:
        M = _mat3_mul(M, _mat3_inv(Q2))
    chk = proportional(compose(G1, M), G2)
    assert chk is not None, "witness verification failed"
    return True, M


# ---------------------------------------------------------------------------
# standard-form reduction for general quartics
# ---------------------------------------------------------------------------

def _polar_involution_candidates(F: GeneralQuartic, max_level: int):
    """Involutions of F via harmonic homologies: center P off the curve,
    axis the polar line of P.  Chart-by-chart bivariate solve."""
    ctx = F.ctx
    grads = _grad_dicts(F)

    def M_of_point(P):
        lev = 0
        for e in P:
            lev = ctx.common_level(lev, e.level)
        P = tuple(ctx.lift(e, lev) for e in P)
        val = F.evaluate(*P)
        grad = []
        for axis in range(3):
            g = ctx.zero(lev)
            for m, c in grads[axis].items():
                t = ctx.lift(c, lev)
                for e, x in zip(m, P):
                    if e:
                        t = t * x ** e
                g = g + t
            grad.append(g)
        four = ctx.scalar(4, lev)
        two = ctx.scalar(2, lev)
        M = tuple(tuple((four * val if i == j else ctx.zero(lev)) - two * P[i] * grad[j]
                        for j in range(3)) for i in range(3))
        return M

    found = {}
    ref = next(i for i, c in enumerate(F.coeffs) if not c.is_zero())
    # chart coordinates for P: (x, y, 1), (x, 1, 0), (1, 0, 0)
    for chart in range(3):
        polys = _polar_system(F, grads, ref, chart)
        if polys is None:
            # single-point chart:直接 test
            P = (ctx.one(0), ctx.zero(0), ctx.zero(0))
            M = M_of_point(P)
            if not all(e.is_zero() for row in M for e in row):
                if _is_involution(M) and is_automorphism(F, M) is not None:
                    found[_mat3_key(M)] = M
            continue
        nvars = 2 if chart == 0 else 1
        try:
            sols = solve_zero_dim(ZeroDimSystem(ctx, nvars, polys), max_level=max_level)
        except (NotZeroDimensional, InternalLimit):
            continue
        for sol in sols:
            if chart == 0:
                P = (sol[0], sol[1], ctx.one(0))
            else:
                P = (sol[0], ctx.one(0), ctx.zero(0))
            M = M_of_point(P)
            if all(e.is_zero() for row in M for e in row):
                continue
            if _is_involution(M) and is_automorphism(F, M) is not None:
                found[_mat3_key(M)] = M
    return found


def _polar_system(F: GeneralQuartic, grads, ref: int, chart: int):
    """Cross-product equations coeff_j(F o M_P) * F_ref - coeff_ref(..) * F_j
    as polynomials in the chart coordinates of P."""
    ctx = F.ctx
    if chart == 2:
        return None
    nvars = 2 if chart == 0 else 1
    # symbolic P coordinates as multivariate polys over nvars variables
    def unit(i):
        m = tuple(1 if k == i else 0 for k in range(nvars))
        return {m: ctx.one(0)}

    zero_m = tuple(0 for _ in range(nvars))
    if chart == 0:
        Psym = [unit(0), unit(1), {zero_m: ctx.one(0)}]
    else:
        Psym = [unit(0), {zero_m: ctx.one(0)}, None]

    def mp_mul(d1, d2):
        out = {}
        for m1, c1 in d1.items():
            for m2, c2 in d2.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                t = c1 * c2
                out[m] = t if v is None else v + t
        return {m: c for m, c in out.items() if not c.is_zero()}

    def mp_add(d1, d2):
        out = dict(d1)
        for m, c in d2.items():
            v = out.get(m)
            out[m] = c if v is None else v + c
        return {m: c for m, c in out.items() if not c.is_zero()}

    def mp_scale(d, c):
        return {m: c * v for m, v in d.items()}

    def mp_pow(d, e):
        r = {zero_m: ctx.one(0)}
        for _ in range(e):
            r = mp_mul(r, d)
        return r

    def eval_form(fdict):
        acc = {}
        for m, c in fdict.items():
            term = {zero_m: c}
            for axis, e in enumerate(m):
                if not e:
                    continue
                if Psym[axis] is None:
                    term = {}
                    break
                term = mp_mul(term, mp_pow(Psym[axis], e))
            acc = mp_add(acc, term)
        return acc

    FP = eval_form({m: c for m, c in zip(MONOMIALS, F.coeffs) if not c.is_zero()})
    gradP = [eval_form(grads[axis]) for axis in range(3)]
    four = ctx.scalar(4, 0)
    mtwo = ctx.scalar(-2, 0)
    # M entries as multivariate polys
    Msym = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            t = mp_scale(mp_mul(Psym[i] if Psym[i] is not None else {}, gradP[j]), mtwo) \
                if Psym[i] is not None else {}
            if i == j:
                t = mp_add(t, mp_scale(FP, four))
            Msym[i][j] = t
    # compose F with Msym symbolically: linear forms L_i = sum_j M_ij v_j;
    # coefficient extraction over (Y, Z, W)
    # represent polynomials in v with multivariate-coefficient dicts
    def lin_pow(i, e):
        # (L_i)^e as {v-mono: coeff-dict}
        base = {}
        for j in range(3):
            if Msym[i][j]:
                mono = tuple(1 if k == j else 0 for k in range(3))
                base[mono] = Msym[i][j]
        r = {(0, 0, 0): {zero_m: ctx.one(0)}}
        for _ in range(e):
            nr = {}
            for m1, c1 in r.items():
                for m2, c2 in base.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    cc = mp_mul(c1, c2)
                    if m in nr:
                        nr[m] = mp_add(nr[m], cc)
                    else:
                        nr[m] = cc
            r = nr
        return r

    pow_cache = [dict() for _ in range(3)]

    def get_pow(i, e):
        if e not in pow_cache[i]:
            pow_cache[i][e] = lin_pow(i, e)
        return pow_cache[i][e]

    total: dict = {}
    for (i, j, k), c in zip(MONOMIALS, F.coeffs):
        if c.is_zero():
            continue
        term = {(0, 0, 0): {zero_m: c}}
        for axis, e in ((0, i), (1, j), (2, k)):
            if e == 0:
                continue
            pw = get_pow(axis, e)
            nt = {}
            for m1, c1 in term.items():
                for m2, c2 in pw.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    cc = mp_mul(c1, c2)
                    if m in nt:
                        nt[m] = mp_add(nt[m], cc)
                    else:
                        nt[m] = cc
            term = nt
        for m, cd in term.items():
            if m in total:
                total[m] = mp_add(total[m], cd)
            else:
                total[m] = dict(cd)
    coeff_ref = total.get(MONOMIALS[ref], {})
    Fref = F.coeffs[ref]
    polys = []
    for idx, mono in enumerate(MONOMIALS):
        if idx == ref:
            continue
        cj = total.get(mono, {})
        Fj = F.coeffs[idx]
        eq = mp_add(mp_scale(cj, Fref), mp_scale(coeff_ref, -Fj))
        if eq:
            polys.append(eq)
    return polys


def standard_form_reduce(F: GeneralQuartic, max_level: int = 12):
    """(CianiQuartic, Q) with compose(F, Q) the standard form; Q is the
    canonically first column-normalized standardizing frame.  NoV4 when
    the quartic has no pair of commuting involutions."""
    if F.is_ciani():
        return F.to_ciani(), _identity3(F.ctx)
    base = _polar_involution_candidates(F, max_level)
    if not base:
        raise NoV4("no involution found")
    invs = involution_closure(F, list(base.values()), max_level=max_level)
    frames = standardizing_frames(F, invs, max_level=max_level)
    if not frames:
        raise NoV4("involutions exist but no commuting pair")
    def shape_rank(Qs):
        Q, _s = Qs
        # column types: C=(1,0,0) < B=(*,1,0) < A=(*,*,1) by last pivot row
        ranks = []
        for j in range(3):
            col = [Q[i][j] for i in range(3)]
            piv = max(i for i in range(3) if not col[i].is_zero())
            ranks.append(piv)
        return (tuple(ranks), _mat3_key(Q))
    frames.sort(key=shape_rank)
    Q, s = frames[0]
    return s, Q
