"""Legendre-form elliptic curves and supersingular parameter lists.

The supersingularity criterion is the classical coefficient polynomial
H_p(t) = sum_i binom((p-1)/2, i)^2 t^i: the curve y^2 = x(x-1)(x-t) is
supersingular exactly when H_p(t) = 0, and all roots of H_p lie in
F_{p^2}.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from . import polynomials as poly
from ._kernel import count_hyperelliptic
from .errors import BadParameter, LevelOverflow
from .field_tower import FieldCtx, FieldElement, make_field
from .polynomials import UniPoly


@lru_cache(maxsize=None)
def deuring_poly(p: int) -> UniPoly:
    """H_p(t) over F_p, degree (p-1)/2."""
    if p < 3:
        raise BadParameter("p must be an odd prime >= 3")
    ctx = make_field(p, 1)
    m = (p - 1) // 2
    return UniPoly(ctx, 0, [comb(m, i) ** 2 % p for i in range(m + 1)])


def _check_legendre_param(t: FieldElement) -> None:
    if t == 0 or t == 1:
        raise BadParameter("Legendre parameter must avoid {0, 1}")


def is_supersingular(ctx: FieldCtx, t: FieldElement) -> bool:
    _check_legendre_param(t)
    H = deuring_poly(ctx.p)
    return H.evaluate(t).is_zero()


def j_legendre(ctx: FieldCtx, t: FieldElement) -> FieldElement:
    """j = 2^8 (t^2 - t + 1)^3 / (t^2 (t-1)^2)."""
    _check_legendre_param(t)
    one = ctx.one(t.level)
    num = ctx.scalar(256, t.level) * (t * t - t + one) ** 3
    den = (t * (t - one)) ** 2
    return (num / den).reduce_level()


@lru_cache(maxsize=None)
def supersingular_lists(p: int):
    """(S_p, T_p, T_{p,j}): supersingular j-invariants, Legendre parameters,
    and the fiber map j -> parameters; all canonically sorted."""
    ctx = make_field(p, 1)
    H = deuring_poly(p)
    assert poly.is_squarefree(H), "H_p is expected to be separable"
    rts = poly.roots(H, 1)
    T_p = [r for r, mult in rts for _ in range(mult)]
    assert len(T_p) == H.degree, "all Deuring roots must lie in F_{p^2}"
    fibers: dict = {}
    jmap: dict = {}
    for t in T_p:
        j = j_legendre(ctx, t)
        jmap[j.key()] = j
        fibers.setdefault(j.key(), []).append(t)
    S_p = [jmap[k] for k in sorted(jmap)]
    T_pj = {}
    for k in sorted(fibers):
        vals = sorted(fibers[k], key=lambda x: x.key())
        assert len(vals) <= 6
        T_pj[k] = vals
    T_p = sorted(T_p, key=lambda x: x.key())
    return S_p, T_p, T_pj


class QuarticCover:
    """Genus-1 curve y^2 = q(x), q square-free of degree 3 or 4."""

    def __init__(self, q: UniPoly):
        if q.degree not in (3, 4):
            raise BadParameter("quartic cover needs degree 3 or 4")
        if not poly.is_squarefree(q):
            raise BadParameter("quartic cover must be square-free")
        self.q = q

    @property
    def ctx(self):
        return self.q.ctx


def binary_quartic_invariants(q: UniPoly) -> tuple[FieldElement, FieldElement]:
    """Classical I and J of the binary quartic form (degree <= 4)."""
    ctx = q.ctx
    a0, a1, a2, a3, a4 = (q.coeff(i) for i in range(5))
    I = 12 * (a0 * a4) - 3 * (a1 * a3) + a2 * a2
    J = 72 * (a0 * a2 * a4) - 27 * (a0 * a3 * a3) - 27 * (a1 * a1 * a4) \
        + 9 * (a1 * a2 * a3) - 2 * (a2 * a2 * a2)
    return I, J


def j_of_quartic_cover(E: QuarticCover) -> FieldElement:
    """j-invariant of y^2 = q(x) via the binary-quartic invariants;
    independent of any choice of root by construction."""
    from .errors import NotGenusOne

    if not poly.is_squarefree(E.q):
        raise NotGenusOne("defining quartic is not square-free")
    ctx = E.ctx
    I, J = binary_quartic_invariants(E.q)
    disc = 4 * I ** 3 - J * J
    if disc.is_zero():
        raise NotGenusOne("degenerate quartic (vanishing discriminant)")
    return (ctx.scalar(6912, disc.level) * I ** 3 / disc).reduce_level()


def count_points_genus1(E: QuarticCover, m: int) -> int:
    """Exact |E(F_{p^{2m}})| on the smooth model (degree-3 model: one point
    at infinity, degree-4: two iff the leading coefficient is a square)."""
    ctx = E.ctx
    if m > ctx.max_level:
        raise LevelOverflow(f"level {m} exceeds max {ctx.max_level}")
    q = E.q.lift(ctx.common_level(E.q.level, m))
    d = ctx.degree(m)
    if ctx.p ** d > 5_000_000:
        raise LevelOverflow("point-count domain too large for a direct scan")
    mod = list(ctx.modulus(m)) if m >= 1 else None
    flat = [list(c.coeffs) for c in q.coeffs]
    return count_hyperelliptic(flat, d, mod, ctx.p)


def legendre_curve(ctx: FieldCtx, t: FieldElement) -> QuarticCover:
    _check_legendre_param(t)
    one = ctx.one(t.level)
    x_poly = UniPoly(ctx, t.level, [ctx.zero(t.level), t, -(one + t), one])
    return QuarticCover(x_poly)
