"""Weighted invariants of binary sextics (genus 2) and octics (genus 3),
with the weighted-projective equality used for isomorphism dedup.

Both tuples are built from exact transvectants

    (F, G)^r = (d1-r)! (d2-r)! / (d1! d2!) *
               sum_i (-1)^i C(r, i) d^rF/dx^(r-i)dz^i * d^rG/dx^i dz^(r-i)

of the binary form attached to y^2 = f(x).  Rational prefactors are
realized as modular inverses; SmallCharacteristic is raised when the
characteristic divides a denominator (octics need p >= 11, sextics
p >= 7).  Under a curve isomorphism every invariant of coefficient
degree d scales by c^d for one common c, so the tuples carry their
degrees as weights.
"""

from __future__ import annotations

from math import comb, factorial

from . import polynomials as poly
from .errors import BadParameter, GenusMismatch, SmallCharacteristic
from .field_tower import FieldCtx, FieldElement
from .polynomials import UniPoly


class BinForm:
    """Binary form of formal degree n: sum a_i x^i z^(n-i)."""

    __slots__ = ("ctx", "level", "n", "a")

    def __init__(self, ctx, level, n, coeffs):
        self.ctx = ctx
        self.n = n
        cs = list(coeffs) + [ctx.zero(level)] * (n + 1 - len(coeffs))
        lev = level
        for c in cs:
            lev = ctx.common_level(lev, c.level)
        self.level = lev
        self.a = [ctx.lift(c, lev) for c in cs]

    @classmethod
    def from_poly(cls, f: UniPoly, n: int) -> "BinForm":
        if f.degree > n:
            raise BadParameter("formal degree too small")
        return cls(f.ctx, f.level, n, [f.coeff(i) for i in range(n + 1)])

    def mul(self, other: "BinForm") -> "BinForm":
        ctx = self.ctx
        lev = ctx.common_level(self.level, other.level)
        out = [ctx.zero(lev) for _ in range(self.n + other.n + 1)]
        for i, ai in enumerate(self.a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(other.a):
                out[i + j] = out[i + j] + ai * bj
        return BinForm(ctx, lev, self.n + other.n, out)

    def dxz(self, rx: int, rz: int) -> "BinForm":
        """d^(rx+rz) / dx^rx dz^rz, a form of degree n - rx - rz."""
        ctx, n = self.ctx, self.n
        m = n - rx - rz
        out = [ctx.zero(self.level) for _ in range(m + 1)]
        for j, aj in enumerate(self.a):
            if aj.is_zero():
                continue
            if j < rx or n - j < rz:
                continue
            c = 1
            for t in range(rx):
                c *= j - t
            for t in range(rz):
                c *= n - j - t
            out[j - rx] = out[j - rx] + ctx.scalar(c, self.level) * aj
        return BinForm(ctx, self.level, m, out)


def transvectant(F: BinForm, G: BinForm, r: int) -> BinForm:
    ctx = F.ctx
    p = ctx.p
    if factorial(F.n) % p == 0 or factorial(G.n) % p == 0:
        raise SmallCharacteristic(
            f"characteristic {p} divides a transvectant denominator")
    den = factorial(F.n) * factorial(G.n)
    num = factorial(F.n - r) * factorial(G.n - r)
    pref = ctx.scalar(num, 0) / ctx.scalar(den, 0)
    acc = None
    for i in range(r + 1):
        term = F.dxz(r - i, i).mul(G.dxz(i, r - i))
        s = comb(r, i) * (-1) ** i
        term = BinForm(ctx, term.level, term.n,
                       [ctx.scalar(s, 0) * c for c in term.a])
        acc = term if acc is None else BinForm(
            ctx, max(acc.level, term.level), term.n,
            [x + y for x, y in zip(acc.a, term.a)])
    return BinForm(ctx, acc.level, acc.n, [pref * c for c in acc.a])


def _scalar_of(F: BinForm) -> FieldElement:
    assert F.n == 0
    return F.a[0]


class WeightedInvariants:
    """Value tuple with weights; equality is weighted-projective."""

    __slots__ = ("genus", "values", "weights")

    def __init__(self, genus, values, weights):
        self.genus = genus
        self.values = list(values)
        self.weights = list(weights)

    def key(self):
        """A canonical (non-projective) serialization key; use
        normalized_key for dedup buckets."""
        return (self.genus, tuple(v.key() for v in self.values))

    def normalized_key(self):
        """Weighted-projective canonical form: scale so the first nonzero
        coordinate of minimal weight among those of weight d0 = its own
        weight becomes 1 where possible; fall back to pattern + ratios."""
        sup = [i for i, v in enumerate(self.values) if not v.is_zero()]
        if not sup:
            return (self.genus, "zero")
        # invariant ratios: for each pair in the support, the cross power
        # a_i^(w_j/g) / a_j^(w_i/g) is an absolute invariant.
        i0 = sup[0]
        parts = [tuple(sup)]
        from math import gcd as _gcd
        for j in sup[1:]:
            g = _gcd(self.weights[i0], self.weights[j])
            e_i, e_j = self.weights[j] // g, self.weights[i0] // g
            ratio = (self.values[i0] ** e_i) / (self.values[j] ** e_j)
            parts.append(ratio.key())
        return (self.genus, tuple(parts))


def weighted_equal(a: WeightedInvariants, b: WeightedInvariants) -> bool:
    """True iff b_i = c^{w_i} a_i for some c != 0 in the closure."""
    if a.genus != b.genus:
        raise GenusMismatch("invariant tuples of different genus")
    if a.weights != b.weights:
        raise GenusMismatch("weight sequences differ")
    pat_a = [v.is_zero() for v in a.values]
    pat_b = [v.is_zero() for v in b.values]
    if pat_a != pat_b:
        return False
    sup = [i for i, z in enumerate(pat_a) if not z]
    if not sup:
        return True
    from math import gcd as _gcd
    # pairwise cross-power consistency
    for ii in range(len(sup)):
        for jj in range(ii + 1, len(sup)):
            i, j = sup[ii], sup[jj]
            g = _gcd(a.weights[i], a.weights[j])
            ei, ej = a.weights[j] // g, a.weights[i] // g
            lhs = (a.values[i] ** ei) * (b.values[j] ** ej)
            rhs = (b.values[i] ** ei) * (a.values[j] ** ej)
            if lhs != rhs:
                return False
    # explicit scalar: c^d with d = gcd of support weights
    d = 0
    for i in sup:
        d = _gcd(d, a.weights[i])
    # Bezout combination for xi with c^d = xi
    xi = None
    coeffs = _bezout_for(d, [a.weights[i] for i in sup])
    ctx = a.values[0].ctx
    xi = ctx.one(0)
    for i, e in zip(sup, coeffs):
        xi = xi * (b.values[i] / a.values[i]) ** e
    # candidates: d-th roots of xi
    lev = max(1, xi.level)
    f = UniPoly(ctx, lev, [-xi] + [ctx.zero(lev)] * (d - 1) + [ctx.one(lev)])
    target = lev
    while True:
        try:
            rts = poly.roots(f, target)
        except Exception:
            return False
        if rts:
            break
        nxt = target * 2
        if nxt > ctx.max_level:
            # no d-th root inside the tower: genuinely unequal or overflow
            return False
        target = nxt
    for c, _ in rts:
        if all(b.values[i] == (c ** a.weights[i]) * a.values[i] for i in sup):
            return True
    return False


def _bezout_for(d: int, ws: list[int]) -> list[int]:
    """Integers e_i with sum e_i w_i = d = gcd(ws)."""
    from math import gcd as _gcd
    coeffs = [0] * len(ws)
    g = ws[0]
    coeffs[0] = 1
    for k in range(1, len(ws)):
        # extended gcd of g and ws[k]
        old_r, r = g, ws[k]
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        for i in range(k):
            coeffs[i] *= old_s
        coeffs[k] = old_t
        g = old_r
    assert g == d
    return coeffs


# ---------------------------------------------------------------------------
# genus 2: Clebsch-style tuple (weights 2, 4, 6, 8, 10; weight 10 = disc)
# ---------------------------------------------------------------------------

def igusa(H) -> WeightedInvariants:
    from .hyperelliptic import affine_model

    if H.genus != 2:
        raise BadParameter("genus must be 2")
    if H.f.degree % 2 == 1:
        H = affine_model(H)
    ctx = H.ctx
    f = BinForm.from_poly(H.f, 6)
    i4 = transvectant(f, f, 4)            # order 4, degree 2
    delta = transvectant(i4, i4, 2)       # order 4, degree 4
    y1 = transvectant(f, i4, 4)           # order 2, degree 3
    y2 = transvectant(i4, y1, 2)          # order 2, degree 5
    A = _scalar_of(transvectant(f, f, 6))
    B = _scalar_of(transvectant(i4, i4, 4))
    C = _scalar_of(transvectant(i4, delta, 4))
    E8 = _scalar_of(transvectant(y2, y1, 2))
    D10 = _discriminant(H.f, 6)
    return WeightedInvariants(2, [A, B, C, E8, D10], [2, 4, 6, 8, 10])


def _discriminant(f: UniPoly, n: int) -> FieldElement:
    """Discriminant of f as a degree-n binary form (deg f == n required
    here; odd-degree models are converted upstream)."""
    res = poly.resultant(f, f.derivative())
    lead = f.leading()
    sign = (-1) ** (n * (n - 1) // 2)
    return f.ctx.scalar(sign, 0) * res / lead


# ---------------------------------------------------------------------------
# genus 3: octic transvectant tuple J2..J10 (weights 2..10)
# ---------------------------------------------------------------------------

def shioda(C) -> WeightedInvariants:
    from .hyperelliptic import affine_model

    if C.genus != 3:
        raise BadParameter("genus must be 3")
    if C.ctx.p <= 7:
        raise SmallCharacteristic(
            "octic invariants need p >= 11; use exact isomorphism testing")
    if C.f.degree % 2 == 1:
        C = affine_model(C)
    ctx = C.ctx
    f = BinForm.from_poly(C.f, 8)
    g = transvectant(f, f, 4)    # order 8, degree 2
    h = transvectant(f, g, 4)    # order 8, degree 3
    m = transvectant(f, h, 4)    # order 8, degree 4
    n = transvectant(f, m, 4)    # order 8, degree 5
    vals = [
        _scalar_of(transvectant(f, f, 8)),   # J2
        _scalar_of(transvectant(f, g, 8)),   # J3
        _scalar_of(transvectant(g, g, 8)),   # J4
        _scalar_of(transvectant(g, h, 8)),   # J5
        _scalar_of(transvectant(h, h, 8)),   # J6
        _scalar_of(transvectant(h, m, 8)),   # J7
        _scalar_of(transvectant(m, m, 8)),   # J8
        _scalar_of(transvectant(m, n, 8)),   # J9
        _scalar_of(transvectant(n, n, 8)),   # J10
    ]
    return WeightedInvariants(3, vals, list(range(2, 11)))
