"""Hyperelliptic curves y^2 = f(x): Weierstrass data, Cartier-Manin
matrices, quotients under extra involutions, decomposed and completely
decomposed Richelot codomains, and exact isomorphism testing.

Curve text format: "p; level; f-coefficients" with the polynomial text
format of the polynomials module.
"""

from __future__ import annotations

from . import polynomials as poly
from ._kernel import count_hyperelliptic, poly_pow_coeffs
from .errors import (
    BadParameter,
    InfinityRoot,
    LevelOverflow,
    NotSymmetric,
    RamifiedAtZero,
)
from .field_tower import FieldCtx, FieldElement, make_field
from .polynomials import UniPoly

INFINITY = object()  # marker for the Weierstrass point at infinity


class HyperCurve:
    """y^2 = f(x) with f square-free of degree 2g+1 or 2g+2, g >= 1."""

    __slots__ = ("f", "genus", "_roots")

    def __init__(self, f: UniPoly):
        if f.is_zero() or f.degree < 3:
            raise BadParameter("need deg f >= 3")
        if not poly.is_squarefree(f):
            raise BadParameter("f must be square-free")
        self.f = f
        self.genus = (f.degree + 1) // 2 - 1
        self._roots = None

    @property
    def ctx(self) -> FieldCtx:
        return self.f.ctx

    @property
    def level(self) -> int:
        return self.f.level

    def key(self):
        return self.f.key()

    def __eq__(self, other):
        return isinstance(other, HyperCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f.key())

    def __repr__(self):
        return f"HyperCurve(y^2 = {self.f.encode()} @level{self.level}, g={self.genus})"

    def encode(self) -> str:
        return f"{self.ctx.p}; {self.f.level}; {self.f.encode()}"


def parse_curve(text: str, max_level: int | None = None) -> HyperCurve:
    parts = [t.strip() for t in text.split(";")]
    if len(parts) != 3:
        raise BadParameter("curve format is 'p; level; coefficients'")
    p, level = int(parts[0]), int(parts[1])
    kwargs = {"max_level": max_level} if max_level else {}
    ctx = make_field(p, max(1, level), **kwargs)
    return HyperCurve(poly.parse_poly(ctx, level, parts[2]))


# ---------------------------------------------------------------------------
# Weierstrass points
# ---------------------------------------------------------------------------

def weierstrass_points(C: HyperCurve) -> list:
    """2g+2 Weierstrass x-coordinates at the minimal sufficient level,
    canonical order; INFINITY appended when deg f is odd."""
    if C._roots is not None:
        return list(C._roots)
    lev = C.f.level
    found: list = []
    # grow the level until all roots appear
    for m in sorted({lev * d if lev else d for d in range(1, C.f.degree + 1)} | {max(1, lev)}):
        if m > C.ctx.max_level:
            raise LevelOverflow("Weierstrass points escape the tower bound")
        rs = poly.roots(C.f, m)
        if sum(mult for _, mult in rs) == C.f.degree:
            found = [r for r, _ in rs]
            break
    else:
        raise LevelOverflow("Weierstrass points escape the tower bound")
    found.sort(key=lambda r: r.key())
    if C.f.degree % 2 == 1:
        found.append(INFINITY)
    assert len(found) == 2 * C.genus + 2
    C._roots = tuple(found)
    return list(found)


# ---------------------------------------------------------------------------
# Cartier-Manin
# ---------------------------------------------------------------------------

class CartierManin:
    """g x g matrix with entry (i, j) the coefficient of x^(ip-j) in
    f^((p-1)/2), 1-based indices."""

    def __init__(self, entries):
        self.entries = entries  # list of rows of FieldElement

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)


def cartier_manin(C: HyperCurve) -> CartierManin:
    ctx = C.ctx
    p, g = ctx.p, C.genus
    idxs = [i * p - j for i in range(1, g + 1) for j in range(1, g + 1)]
    flat = [list(c.coeffs) for c in C.f.coeffs]
    d = ctx.degree(C.level)
    mod = list(ctx.modulus(C.level)) if C.level >= 1 else None
    rows = poly_pow_coeffs(flat, d, mod, p, (p - 1) // 2, idxs)
    ents = [FieldElement(ctx, C.level, tuple(r)) for r in rows]
    return CartierManin([ents[i * g:(i + 1) * g] for i in range(g)])


def is_superspecial(C: HyperCurve) -> bool:
    return cartier_manin(C).is_zero()


# ---------------------------------------------------------------------------
# quotients of +-symmetric curves
# ---------------------------------------------------------------------------

def quotient_pair(C: HyperCurve) -> tuple[HyperCurve, HyperCurve]:
    """For C: y^2 = f(x^2): the two quotients (y^2 = f, y^2 = x f)."""
    f = C.f
    if any(not f.coeff(i).is_zero() for i in range(1, f.degree + 1, 2)):
        raise NotSymmetric("curve is not in even form y^2 = f(x^2)")
    if f.coeff(0).is_zero():
        raise RamifiedAtZero("f(0) = 0")
    half = UniPoly(C.ctx, f.level, [f.coeff(2 * i) for i in range(f.degree // 2 + 1)])
    return HyperCurve(half), HyperCurve(half.shift_x())


def recombine(C1: HyperCurve) -> HyperCurve:
    """y^2 = f(x^2) from C1: y^2 = f(x) (fiber-product normalization)."""
    f = C1.f
    coeffs = []
    for c in f.coeffs:
        coeffs.append(c)
        coeffs.append(C1.ctx.zero(f.level))
    return HyperCurve(UniPoly(C1.ctx, f.level, coeffs[:-1]))


# ---------------------------------------------------------------------------
# Extra involutions: loop over Weierstrass-point pairings
# ---------------------------------------------------------------------------

class InvolutionCandidate:
    """Accepted candidate: involution matrix [[a, b], [c, -a]], the chosen
    square root lam of a^2 + bc, the diagonalizing map, the transformed
    (negation-closed) Weierstrass list, and the induced root permutation."""

    __slots__ = ("a", "b", "c", "lam", "rows", "xs", "perm")

    def __init__(self, a, b, c, lam):
        self.a, self.b, self.c, self.lam = a, b, c, lam
        self.rows = (self._eig_row(lam), self._eig_row(-lam))
        self.xs = None
        self.perm = None

    def _eig_row(self, ev):
        # left eigenrow of [[a, b], [c, -a]]: (ev + a, b), falling back to
        # (c, ev - a) and then to a coordinate row when the display in the
        # source construction degenerates (b = 0)
        r = (ev + self.a, self.b)
        if not (r[0].is_zero() and r[1].is_zero()):
            return r
        r = (self.c, ev - self.a)
        if not (r[0].is_zero() and r[1].is_zero()):
            return r
        one = self.a.ctx.one(ev.level)
        zero = self.a.ctx.zero(ev.level)
        return (one, zero) if (ev - self.a).is_zero() else (zero, one)

    def diag_matrix(self):
        """Rows of the coordinate change x -> x' (2x2, nonsingular)."""
        return self.rows

    def apply(self, x):
        (p0, p1), (q0, q1) = self.rows
        den = q0 * x + q1
        if den.is_zero():
            return None
        return (p0 * x + p1) / den


def extra_involutions(C: HyperCurve) -> list[InvolutionCandidate]:
    """All accepted diagonalizing candidates for extra involutions of C.

    Requires every Weierstrass point affine (degree 2g+2); candidates with
    a vanishing image denominator are discarded, and accepted candidates
    are deduplicated by the induced permutation of the root list.
    """
    ws = weierstrass_points(C)
    if ws and ws[-1] is INFINITY:
        raise InfinityRoot("apply an affine model first (degree must be 2g+2)")
    n = len(ws)
    g = C.genus
    ctx = C.ctx
    out: list[InvolutionCandidate] = []
    seen = set()
    x1 = ws[0]
    for t1 in range(1, n):
        s = next(i for i in range(1, n) if i != t1)
        for t2 in range(1, n):
            if t2 in (t1, s):
                continue
            xs_, xt1, xt2 = ws[s], ws[t1], ws[t2]
            a = xs_ * xt2 - x1 * xt1
            b = (xs_ + xt2) * (x1 * xt1) - (x1 + xt1) * (xs_ * xt2)
            c = (xs_ + xt2) - (x1 + xt1)
            rad = a * a + b * c
            if rad.is_zero():
                continue  # degenerate pairing: no genuine involution matrix
            for lam in rad.sqrt():
                cand = InvolutionCandidate(a, b, c, lam)
                (p0, p1), (q0, q1) = cand.rows
                if (p0 * q1 - p1 * q0).is_zero():
                    continue
                imgs = []
                ok = True
                for w in ws:
                    im = cand.apply(w)
                    if im is None:
                        ok = False
                        break
                    imgs.append(im)
                if not ok:
                    continue  # DegenerateImage: discard, not an error
                perm = _negation_permutation(imgs)
                if perm is None:
                    continue
                key = tuple(perm)
                if key in seen:
                    continue
                seen.add(key)
                cand.xs = imgs
                cand.perm = perm
                out.append(cand)
    assert len(out) <= 2 * (2 * g + 1) * (2 * g - 1)
    return out


def _negation_permutation(imgs):
    """Permutation j(i) with imgs[i] = -imgs[j(i)], j(i) != i; None if absent."""
    n = len(imgs)
    perm = [None] * n
    used = [False] * n
    for i in range(n):
        if perm[i] is not None:
            continue
        target = -imgs[i]
        j = next((k for k in range(n) if k != i and not used[k] and imgs[k] == target), None)
        if j is None:
            return None
        perm[i], perm[j] = j, i
        used[i] = used[j] = True
    return perm


def affine_model(C: HyperCurve) -> HyperCurve:
    """Isomorphic model with all Weierstrass points affine.

    For odd degree, translate so 0 is not a root, then invert x -> 1/x
    (a plain shift cannot move the point at infinity)."""
    f = C.f
    if f.degree % 2 == 0:
        return C
    ctx = C.ctx
    c = None
    for cand in ctx.elements(0):
        if not f.evaluate(cand).is_zero():
            c = cand
            break
    shifted = f.compose_linear(ctx.one(f.level), ctx.lift(c, f.level))
    rev = UniPoly(ctx, shifted.level, list(reversed(
        [shifted.coeff(i) for i in range(2 * C.genus + 3)])))
    return HyperCurve(rev)


# ---------------------------------------------------------------------------
# Decomposed Richelot codomains
# ---------------------------------------------------------------------------

def _pair_negatives(xs):
    """Representatives r_1..r_{g+1}, one per {x, -x} pair, canonical order."""
    remaining = list(xs)
    remaining.sort(key=lambda r: r.key())
    reps = []
    used = [False] * len(remaining)
    for i, r in enumerate(remaining):
        if used[i]:
            continue
        j = next(k for k in range(i + 1, len(remaining))
                 if not used[k] and remaining[k] == -r)
        used[i] = used[j] = True
        reps.append(r)
    return reps


def decomposed_richelot(C: HyperCurve) -> list[tuple[HyperCurve, HyperCurve]]:
    """Pairs (C1, C2) of genera (floor(g/2), ceil(g/2)) whose Jacobian
    product is the codomain of a decomposed Richelot isogeny from J(C).
    Empty when C has no extra involution."""
    C = affine_model(C)
    out = []
    seen = set()
    for cand in extra_involutions(C):
        reps = _pair_negatives(cand.xs)
        f1 = poly.from_roots(C.ctx, C.level, [r * r for r in reps])
        C1 = HyperCurve(f1)
        C2 = HyperCurve(f1.shift_x())
        key = (C1.key(), C2.key())
        if key in seen:
            continue
        seen.add(key)
        assert C1.genus == C.genus // 2 and C2.genus == (C.genus + 1) // 2
        out.append((C1, C2))
    return out


def completely_decomposed_g3(C: HyperCurve) -> list[tuple]:
    """Triples (E1, E2, E3) of genus-1 curves from pairs of extra
    involutions whose matrices anticommute (AB = -BA); empty when no
    commuting pair of long automorphisms exists."""
    if C.genus != 3:
        raise BadParameter("genus must be 3")
    C = affine_model(C)
    cands = extra_involutions(C)
    ctx = C.ctx
    out = []
    seen = set()
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            A, B = cands[i], cands[j]
            if not _anticommute(A, B):
                continue
            E1 = _genus1_quotient(C, A)
            E2 = _genus1_quotient(C, B)
            E3 = _genus1_quotient_product(C, A, B)
            if E3 is None:
                continue
            key = tuple(sorted(E.f.key() for E in (E1, E2, E3)))
            if key in seen:
                continue
            seen.add(key)
            out.append((E1, E2, E3))
    return out


def _anticommute(A: InvolutionCandidate, B: InvolutionCandidate) -> bool:
    m1 = ((A.a, A.b), (A.c, -A.a))
    m2 = ((B.a, B.b), (B.c, -B.a))
    ab = _mat2mul(m1, m2)
    ba = _mat2mul(m2, m1)
    return all((ab[i][j] + ba[i][j]).is_zero() for i in range(2) for j in range(2))


def _mat2mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def _genus1_quotient(C: HyperCurve, cand: InvolutionCandidate) -> HyperCurve:
    reps = _pair_negatives(cand.xs)
    return HyperCurve(poly.from_roots(C.ctx, C.level, [r * r for r in reps]))


def _genus1_quotient_product(C: HyperCurve, A, B) -> HyperCurve | None:
    """Quotient by the product involution, via direct diagonalization of AB;
    the eigenvalues are the two square roots of -(lamA*lamB)^2."""
    m = _mat2mul(((A.a, A.b), (A.c, -A.a)), ((B.a, B.b), (B.c, -B.a)))
    eta = (-(A.lam * B.lam) ** 2).sqrt()[0]
    return _genus1_from_diag(C, m, eta)


def _genus1_from_diag(C: HyperCurve, m, eta) -> HyperCurve | None:
    """Transform the roots by a map diagonalizing m (eigenvalues +-eta),
    then quotient by x -> -x."""
    a, b, c, d = m[0][0], m[0][1], m[1][0], m[1][1]
    rows = []
    for ev in (eta, -eta):
        # left eigenvector: (c, ev - a) unless degenerate, then (ev - d, b),
        # then the coordinate row of a diagonal matrix
        if not c.is_zero() or not (ev - a).is_zero():
            rows.append((c, ev - a))
        elif not b.is_zero() or not (ev - d).is_zero():
            rows.append((ev - d, b))
        else:
            rows.append((C.ctx.one(ev.level), C.ctx.zero(ev.level)))
    (r11, r12), (r21, r22) = rows
    det = r11 * r22 - r12 * r21
    if det.is_zero():
        return None
    imgs = []
    for w in (C._roots or weierstrass_points(C)):
        den = r21 * w + r22
        if den.is_zero():
            return None
        imgs.append((r11 * w + r12) / den)
    if _negation_permutation(imgs) is None:
        return None
    reps = _pair_negatives(imgs)
    return HyperCurve(poly.from_roots(C.ctx, imgs[0].level, [r * r for r in reps]))


# ---------------------------------------------------------------------------
# Exact isomorphism testing over the algebraic closure
# ---------------------------------------------------------------------------

class IsomWitness:
    """(A, lam): x -> (a x + b)/(c x + d), y -> lam y/(c x + d)^{g+1}."""

    __slots__ = ("a", "b", "c", "d", "lam")

    def __init__(self, a, b, c, d, lam):
        self.a, self.b, self.c, self.d, self.lam = a, b, c, d, lam


def _proj_points(ws, ctx, lev):
    pts = []
    for w in ws:
        if w is INFINITY:
            pts.append((ctx.one(lev), ctx.zero(lev)))
        else:
            pts.append((ctx.lift(w, lev), ctx.one(lev)))
    return pts


def _three_point_matrix(p0, p1, p2, ctx, lev):
    """2x2 M with M p0 ~ (0:1), M p1 ~ (1:1), M p2 ~ (1:0)."""
    (x0, z0), (x1, z1), (x2, z2) = p0, p1, p2
    # rows: first row vanishes on p0, second on p2
    r0 = (z0, -x0)
    r1 = (z2, -x2)
    s = r0[0] * x1 + r0[1] * z1
    t = r1[0] * x1 + r1[1] * z1
    if s.is_zero() or t.is_zero():
        return None
    # scale rows so image of p1 is (1:1)
    return ((r0[0] * t, r0[1] * t), (r1[0] * s, r1[1] * s))


def _mat2_apply(m, pt):
    x, z = pt
    return (m[0][0] * x + m[0][1] * z, m[1][0] * x + m[1][1] * z)


def _mat2_inv(m):
    a, b = m[0]
    c, d = m[1]
    return ((d, -b), (-c, a))


def isom_exact(C1: HyperCurve, C2: HyperCurve) -> IsomWitness | None:
    """Witness for an isomorphism over the algebraic closure, or None.

    Moebius candidates are generated from ordered triples of Weierstrass
    points; acceptance requires the full root multisets to match and the
    y-scaling lam to exist in the tower (level may double)."""
    if C1.genus != C2.genus or C1.ctx.p != C2.ctx.p:
        return None
    ctx = C1.ctx
    w1 = weierstrass_points(C1)
    w2 = weierstrass_points(C2)
    lev = max(1, C1.level, C2.level)
    for w in w1 + w2:
        if w is not INFINITY:
            lev = ctx.common_level(lev, w.level)
    pts1 = _proj_points(w1, ctx, lev)
    pts2 = _proj_points(w2, ctx, lev)
    m1 = _three_point_matrix(pts1[0], pts1[1], pts1[2], ctx, lev)
    if m1 is None:
        return None
    keyset2 = {_pt_key(pt) for pt in pts2}
    n = len(pts2)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k in (i, j):
                    continue
                m2 = _three_point_matrix(pts2[i], pts2[j], pts2[k], ctx, lev)
                if m2 is None:
                    continue
                M = _mat2mul(_mat2_inv(m2), m1)
                if all(_pt_key(_mat2_apply(M, pt)) in keyset2 for pt in pts1):
                    wit = _witness_from_matrix(C1, C2, M)
                    if wit is not None:
                        return wit
    return None


def _pt_key(pt):
    x, z = pt
    if z.is_zero():
        return ("inf",)
    return (x / z).key()


def _witness_from_matrix(C1, C2, M) -> IsomWitness | None:
    """lam with f1 = lam^-2 (cx+d)^(2g+2) f2((ax+b)/(cx+d)), if any."""
    ctx = C1.ctx
    g = C1.genus
    (a, b), (c, d) = M
    lev = a.level
    for e in (b, c, d):
        lev = ctx.common_level(lev, e.level)
    f2 = C2.f.lift(ctx.common_level(C2.level, lev))
    num = UniPoly(ctx, lev, [b, a])
    den = UniPoly(ctx, lev, [d, c])
    acc = UniPoly(ctx, lev, [ctx.zero(lev)])
    for i, coef in enumerate(f2.coeffs):
        acc = acc + UniPoly(ctx, lev, [coef]) * num ** i * den ** (2 * g + 2 - i)
    f1 = C1.f.lift(acc.level if acc.level else C1.level)
    f1 = C1.f.lift(ctx.common_level(C1.level, acc.level))
    if acc.is_zero() or f1.degree < 0:
        return None
    # proportionality acc = c0 * f1
    if acc.degree != f1.degree:
        return None
    ratio = acc.leading() / f1.leading()
    if acc != f1 * UniPoly(ctx, f1.level, [ratio]):
        return None
    lam_candidates = ratio.sqrt()
    lam = lam_candidates[0]
    return IsomWitness(a, b, c, d, lam)


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------

def count_points_hyp(C: HyperCurve, m: int) -> int:
    """Exact point count of the smooth model over F_{p^{2m}}."""
    ctx = C.ctx
    if m > ctx.max_level:
        raise LevelOverflow(f"level {m} exceeds max {ctx.max_level}")
    f = C.f.lift(ctx.common_level(C.level, m))
    d = ctx.degree(m)
    if ctx.p ** d > 5_000_000:
        raise LevelOverflow("point-count domain too large for a direct scan")
    mod = list(ctx.modulus(m)) if m >= 1 else None
    return count_hyperelliptic([list(c.coeffs) for c in f.coeffs], d, mod, ctx.p)
