"""Genus-2 Richelot isogeny stepping and superspecial enumeration.

A quadratic splitting groups the six Weierstrass points into three
pairs G1 G2 G3 = f; stepping maps y^2 = G1 G2 G3 to
delta * y^2 = H1 H2 H3 with H_i = G_j' G_k - G_j G_k' ((i,j,k) cyclic)
and delta the determinant of the coefficient rows; delta = 0 marks the
degenerate (product) codomain.

Enumeration seeds breadth-first search over Cartier-Manin-zero curves
with members of the symmetric family y^2 = (x^2-1)(x^2-a)(x^2-b) whose
two genus-1 quotients are supersingular, plus a fixed list of special
curves; every class is re-normalized to its canonically smallest
Rosenhain model, which keeps all coefficient levels at 1.
"""

from __future__ import annotations

from itertools import combinations

from . import elliptic, hyperelliptic as hyp, invariants as inv, polynomials as poly
from .errors import BadParameter, LevelOverflow
from .field_tower import FieldCtx, make_field
from .hyperelliptic import INFINITY, HyperCurve
from .polynomials import UniPoly


class QuadraticSplitting:
    """Three factors with G1*G2*G3 = f; rows (g_i2, g_i1, g_i0)."""

    __slots__ = ("ctx", "level", "gs")

    def __init__(self, ctx, level, gs):
        self.ctx = ctx
        self.level = level
        self.gs = gs  # list of three UniPoly of degree <= 2

    def rows(self):
        return [[g.coeff(2), g.coeff(1), g.coeff(0)] for g in self.gs]

    def delta(self):
        m = self.rows()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )


def splittings(H: HyperCurve) -> list[QuadraticSplitting]:
    """The 15 pairings of the six Weierstrass points (2+2+2); a pair
    containing the infinite point contributes a linear factor."""
    if H.genus != 2:
        raise BadParameter("genus must be 2")
    ws = hyp.weierstrass_points(H)
    ctx = H.ctx
    lev = max((w.level for w in ws if w is not INFINITY), default=0)
    lev = max(lev, H.level)
    lead = H.f.leading()

    def pair_poly(i, j):
        a, b = ws[i], ws[j]
        if a is INFINITY and b is INFINITY:
            raise BadParameter("duplicate infinite point")
        if b is INFINITY:
            a, b = b, a
        one = ctx.one(lev)
        if a is INFINITY:
            return UniPoly(ctx, lev, [-ctx.lift(b, lev), one])
        return UniPoly(ctx, lev, [ctx.lift(a, lev) * ctx.lift(b, lev),
                                  -(ctx.lift(a, lev) + ctx.lift(b, lev)), one])

    out = []
    idx = list(range(6))
    for i1 in range(1, 6):
        rest = [k for k in idx if k not in (0, i1)]
        for j1 in range(1, 4):
            p2 = [rest[0], rest[j1]]
            p3 = [k for k in rest if k not in p2]
            gs = [pair_poly(0, i1), pair_poly(*p2), pair_poly(*p3)]
            # scale the first factor so the product reconstructs f exactly
            gs[0] = gs[0].scale(ctx.lift(lead, max(lev, lead.level)))
            prod = gs[0] * gs[1] * gs[2]
            assert prod == H.f, "splitting does not reconstruct f"
            out.append(QuadraticSplitting(ctx, lev, gs))
    assert len(out) == 15
    return out


def richelot_step(s: QuadraticSplitting) -> HyperCurve | None:
    """Non-degenerate codomain curve, or None when delta = 0."""
    d = s.delta()
    if d.is_zero():
        return None
    g1, g2, g3 = s.gs
    h1 = g2.derivative() * g3 - g2 * g3.derivative()
    h2 = g3.derivative() * g1 - g3 * g1.derivative()
    h3 = g1.derivative() * g2 - g1 * g2.derivative()
    f = (h1 * h2 * h3).scale(d.inverse())
    if f.degree < 5 or not poly.is_squarefree(f):
        return None
    return HyperCurve(f)


# ---------------------------------------------------------------------------
# Rosenhain forms
# ---------------------------------------------------------------------------

def rosenhain_forms(H: HyperCurve) -> list[tuple]:
    """All (a, b, c) with H_{a,b,c} isomorphic to H: one per ordered triple
    of Weierstrass points sent to (0, 1, oo); at most 120, canonically
    sorted triples."""
    if H.genus != 2:
        raise BadParameter("genus must be 2")
    ws = hyp.weierstrass_points(H)
    ctx = H.ctx
    lev = max([H.level] + [w.level for w in ws if w is not INFINITY])
    pts = hyp._proj_points(ws, ctx, lev)
    out = []
    n = len(pts)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k in (i, j):
                    continue
                M = hyp._three_point_matrix(pts[i], pts[j], pts[k], ctx, lev)
                if M is None:
                    continue
                imgs = []
                ok = True
                for t in range(n):
                    if t in (i, j, k):
                        continue
                    x, z = hyp._mat2_apply(M, pts[t])
                    if z.is_zero():
                        ok = False
                        break
                    imgs.append((x / z).reduce_level())
                if not ok:
                    continue
                triple = tuple(sorted(imgs, key=lambda e: e.key()))
                out.append(triple)
    assert len(out) <= 120
    return out


def rosenhain_curve(ctx: FieldCtx, triple) -> HyperCurve:
    a, b, c = triple
    lev = max(1, a.level, b.level, c.level)
    one = ctx.one(lev)
    f = UniPoly(ctx, lev, [ctx.zero(lev), one])
    for r in (one, ctx.lift(a, lev), ctx.lift(b, lev), ctx.lift(c, lev)):
        f = f * UniPoly(ctx, lev, [-r, one])
    return HyperCurve(f)


def _canonical_rosenhain(H: HyperCurve) -> HyperCurve:
    """Minimal-level, canonically smallest Rosenhain model of the class."""
    triples = rosenhain_forms(H)
    best = min(triples, key=lambda t: tuple(e.key() for e in t))
    return rosenhain_curve(H.ctx, best)


# ---------------------------------------------------------------------------
# superspecial enumeration
# ---------------------------------------------------------------------------

def _seed_candidates(ctx: FieldCtx):
    """Symmetric-family and special-curve candidates, cheaply filtered."""
    p = ctx.p
    S_p, T_p, _ = elliptic.supersingular_lists(p)
    sset = {j.key() for j in S_p}
    one1 = ctx.one(1)
    # special curves first: tiny and often superspecial
    for coeffs in ([0, -1, 0, 0, 0, 1], [-1, 0, 0, 0, 0, 0, 1],
                   [0, 1, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 1]):
        f = UniPoly(ctx, 0, coeffs)
        if f.degree >= 5 and poly.is_squarefree(f):
            yield HyperCurve(f)
    for lam in T_p:
        lam1 = ctx.lift(lam, 1)
        for a in ctx.elements(1):
            if a.is_zero() or a == one1:
                continue
            b = one1 + lam1 * (a - one1)
            if b.is_zero() or b == one1 or b == a:
                continue
            # E2: y^2 = x(x-1)(x-a)(x-b) must also be supersingular
            q = UniPoly(ctx, 1, [ctx.zero(1), one1]) \
                * UniPoly(ctx, 1, [-one1, one1]) \
                * UniPoly(ctx, 1, [-a, one1]) * UniPoly(ctx, 1, [-b, one1])
            try:
                j2 = elliptic.j_of_quartic_cover(elliptic.QuarticCover(q))
            except Exception:
                continue
            if j2.key() not in sset:
                continue
            f = UniPoly(ctx, 1, [one1])
            for r in (one1, a, b):
                f = f * UniPoly(ctx, 1, [-r, ctx.zero(1), one1])
            if poly.is_squarefree(f):
                yield HyperCurve(f)


def enumerate_ssp_genus2(p: int, oracle_seeds: bool | None = None) -> list[HyperCurve]:
    """One Rosenhain representative per superspecial genus-2 class.

    oracle_seeds=True seeds from the exhaustive Rosenhain scan (default for
    p <= 13); False forces family seeding only; None picks automatically.
    """
    if p < 7:
        ctx = make_field(p, 1)
        return []  # no superspecial genus-2 curves below p = 7
    ctx = make_field(p, 1)
    if oracle_seeds is None:
        oracle_seeds = p <= 13
    classes: dict = {}

    def try_add(H: HyperCurve) -> bool:
        if not hyp.is_superspecial(H):
            return False
        R = _canonical_rosenhain(H)
        assert R.level <= 1, "superspecial Rosenhain parameters must lie in F_{p^2}"
        ig = inv.igusa(R)
        key = ig.normalized_key()
        bucket = classes.setdefault(key, [])
        for R2, ig2 in bucket:
            if inv.weighted_equal(ig, ig2) and hyp.isom_exact(R, R2) is not None:
                return False
        bucket.append((R, ig))
        return True

    frontier = []
    if oracle_seeds:
        for T in brute_force_rosenhain_classes(p, raw=True):
            if try_add(T):
                frontier.append(_canonical_rosenhain(T))
    else:
        for H in _seed_candidates(ctx):
            if try_add(H):
                frontier.append(_canonical_rosenhain(H))
    # BFS closure under Richelot steps
    while frontier:
        H = frontier.pop()
        for s in splittings(H):
            H2 = richelot_step(s)
            if H2 is None:
                continue
            if try_add(H2):
                frontier.append(_canonical_rosenhain(H2))
    reps = [R for bucket in classes.values() for (R, _) in bucket]
    reps.sort(key=lambda c: c.key())
    return reps


def brute_force_rosenhain_classes(p: int, raw: bool = False) -> list[HyperCurve]:
    """Exhaustive Cartier-Manin oracle over Rosenhain triples in F_{p^2}.

    raw=True returns one curve per superspecial triple (no dedup);
    otherwise one representative per isomorphism class.
    """
    from ._kernel import rosenhain_superspecial_scan

    ctx = make_field(p, 1)
    mod = list(ctx.modulus(1))
    hits = rosenhain_superspecial_scan(p, 2, mod)
    curves = []
    for tri in hits:
        elems = []
        for idx in tri:
            v, t = [0, 0], idx
            v[0] = t % p
            v[1] = t // p
            elems.append(ctx.element(1, v))
        curves.append(rosenhain_curve(ctx, elems))
    if raw:
        return curves
    classes: dict = {}
    for C in curves:
        ig = inv.igusa(C)
        key = ig.normalized_key()
        bucket = classes.setdefault(key, [])
        if not any(inv.weighted_equal(ig, ig2) and hyp.isom_exact(C, C2) is not None
                   for C2, ig2 in bucket):
            bucket.append((C, ig))
    reps = [R for bucket in classes.values() for (R, _) in bucket]
    reps.sort(key=lambda c: c.key())
    return reps
