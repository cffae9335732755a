"""Dense univariate polynomials over a tower level.

Carrier for curve equations, resultants, and the large powers feeding
Cartier-Manin matrices.  Coefficients are FieldElements at a common
level, constant term first; the leading coefficient is nonzero unless
the polynomial is zero.

Text format: comma-separated element encodings, constant term first.
"""

from __future__ import annotations

from .errors import BadParameter, LevelOverflow, ZeroInputs
from .field_tower import FieldCtx, FieldElement, parse_element


class UniPoly:
    __slots__ = ("ctx", "level", "coeffs")

    def __init__(self, ctx: FieldCtx, level: int, coeffs):
        cs = list(coeffs)
        cs = [c if isinstance(c, FieldElement) else ctx.scalar(c, level) for c in cs]
        lev = level
        for c in cs:
            lev = ctx.common_level(lev, c.level)
        cs = [ctx.lift(c, lev) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.level = lev
        self.coeffs = cs

    # -- basics -------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise BadParameter("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero(self.level)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.ctx, self.level, [c * inv for c in self.coeffs])

    def lift(self, level: int) -> "UniPoly":
        if level == self.level:
            return self
        return UniPoly(self.ctx, level, [self.ctx.lift(c, level) for c in self.coeffs])

    def key(self):
        return (self.level, tuple(c.coeffs for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        lev = self.ctx.common_level(self.level, other.level)
        return self.lift(lev).key() == other.lift(lev).key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"UniPoly({self.encode()!r} @level{self.level})"

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other: "UniPoly"):
        lev = self.ctx.common_level(self.level, other.level)
        return self.lift(lev), other.lift(lev)

    def __add__(self, other):
        a, b = self._pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly(a.ctx, a.level, [a.coeff(i) + b.coeff(i) for i in range(n)])

    def __sub__(self, other):
        a, b = self._pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly(a.ctx, a.level, [a.coeff(i) - b.coeff(i) for i in range(n)])

    def __neg__(self):
        return UniPoly(self.ctx, self.level, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = UniPoly(self.ctx, other.level, [other])
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return UniPoly(a.ctx, a.level, [])
        out = [a.ctx.zero(a.level) for _ in range(len(a.coeffs) + len(b.coeffs) - 1)]
        for i, ai in enumerate(a.coeffs):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ai * bj
        return UniPoly(a.ctx, a.level, out)

    __rmul__ = __mul__

    def scale(self, s: FieldElement) -> "UniPoly":
        return UniPoly(self.ctx, self.level, [c * s for c in self.coeffs])

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a, b = self._pair(other)
        q = [a.ctx.zero(a.level)] * max(1, len(a.coeffs) - len(b.coeffs) + 1)
        r = list(a.coeffs)
        inv = b.leading().inverse()
        db = b.degree
        while len(r) - 1 >= db and r:
            c = r[-1] * inv
            shift = len(r) - 1 - db
            q[shift] = c
            for i, bi in enumerate(b.coeffs):
                r[shift + i] = r[shift + i] - c * bi
            while r and r[-1].is_zero():
                r.pop()
        return (UniPoly(a.ctx, a.level, q), UniPoly(a.ctx, a.level, r))

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __pow__(self, e: int):
        r = UniPoly(self.ctx, self.level, [self.ctx.one(self.level)])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def pow_mod(self, e: int, mod: "UniPoly") -> "UniPoly":
        r = UniPoly(self.ctx, mod.level, [self.ctx.one(mod.level)])
        b = self % mod
        while e:
            if e & 1:
                r = (r * b) % mod
            b = (b * b) % mod
            e >>= 1
        return r

    def derivative(self) -> "UniPoly":
        return UniPoly(
            self.ctx, self.level,
            [self.ctx.scalar(i, self.level) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def evaluate(self, x: FieldElement) -> FieldElement:
        lev = self.ctx.common_level(self.level, x.level)
        acc = self.ctx.zero(lev)
        xx = self.ctx.lift(x, lev)
        for c in reversed(self.coeffs):
            acc = acc * xx + self.ctx.lift(c, lev)
        return acc

    def compose_linear(self, a: FieldElement, b: FieldElement) -> "UniPoly":
        """f(a*x + b)."""
        lin = UniPoly(self.ctx, self.level, [b, a])
        acc = UniPoly(self.ctx, self.level, [])
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly(self.ctx, c.level, [c])
        return acc

    def shift_x(self) -> "UniPoly":
        """x * f."""
        if self.is_zero():
            return self
        return UniPoly(self.ctx, self.level, [self.ctx.zero(self.level)] + self.coeffs)

    # -- encoding -------------------------------------------------------------

    def encode(self) -> str:
        return ",".join(c.encode() for c in self.coeffs)


def parse_poly(ctx: FieldCtx, level: int, text: str) -> UniPoly:
    text = text.strip()
    if not text:
        return UniPoly(ctx, level, [])
    return UniPoly(ctx, level, [parse_element(ctx, level, t) for t in text.split(",")])


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    a, b = f._pair(g)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def is_squarefree(f: UniPoly) -> bool:
    if f.is_zero():
        raise BadParameter("zero polynomial")
    if f.degree == 0:
        return True
    d = f.derivative()
    if d.is_zero():  # p-th power territory
        return False
    return gcd(f, d).degree == 0


def resultant(f: UniPoly, g: UniPoly) -> FieldElement:
    """Sylvester-convention resultant via the Euclidean chain."""
    if f.is_zero() and g.is_zero():
        raise ZeroInputs("resultant of two zero polynomials")
    a, b = f._pair(g)
    ctx, lev = a.ctx, a.ctx.common_level(a.level, b.level)
    one = ctx.one(lev)
    if a.is_zero() or b.is_zero():
        return ctx.zero(lev)
    res = one
    while True:
        if b.degree == 0:
            return res * b.leading() ** a.degree
        if a.degree < b.degree:
            if (a.degree * b.degree) % 2 == 1:
                res = -res
            a, b = b, a
            continue
        r = a % b
        if r.is_zero():
            return ctx.zero(lev) if b.degree > 0 else res
        res = res * b.leading() ** (a.degree - r.degree)
        if (a.degree * b.degree) % 2 == 1:
            res = -res
        a, b = b, r


def _distinct_root_part(f: UniPoly, level: int) -> UniPoly:
    """gcd(f, x^q - x) over the target level: product of (x - r) over roots."""
    ctx = f.ctx
    g = f.lift(ctx.common_level(f.level, level)).monic()
    q = ctx.order(level)
    x = UniPoly(ctx, g.level, [ctx.zero(g.level), ctx.one(g.level)])
    xq = x.pow_mod(q, g)
    return gcd(g, xq - x)


def _split_linear(g: UniPoly, level: int, seed: int = 1) -> list[FieldElement]:
    """Roots of a product of distinct linear factors over the level.

    Deterministic equal-degree splitting: candidate shifts run through a
    seeded, reproducible sequence of level elements.
    """
    ctx = g.ctx
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [-g.coeffs[0] / g.coeffs[1]]
    q = ctx.order(level)
    p = ctx.p
    d = ctx.degree(level)
    # reproducible candidate generator
    state = seed
    roots: list[FieldElement] = []
    stack = [g.monic()]
    guard = 0
    while stack:
        h = stack.pop()
        if h.degree == 1:
            roots.append(-h.coeffs[0] / h.coeffs[1])
            continue
        guard += 1
        if guard > 10000:
            raise RuntimeError("root splitting failed to converge")
        state = (state * 1103515245 + 12345) % (2**31)
        cf = []
        s = state
        for _ in range(d):
            cf.append(s % p)
            s //= p
        a = ctx.element(level, cf)
        base = UniPoly(ctx, h.level, [a, ctx.one(h.level)])  # x + a
        t = base.pow_mod((q - 1) // 2, h) - UniPoly(ctx, h.level, [ctx.one(h.level)])
        g1 = gcd(t, h)
        if 0 < g1.degree < h.degree:
            stack.append(g1)
            stack.append(h // g1)
        else:
            stack.append(h)
    return roots


def roots(f: UniPoly, level: int, seed: int = 1, reduce: bool = True) -> list[tuple[FieldElement, int]]:
    """Roots of f in F_{p^{2*level}} with multiplicities, canonically ordered.

    With reduce=True each root is rewritten over its minimal hosting level
    (reduce=False is for internal use while embeddings are being built).
    """
    if f.is_zero():
        raise BadParameter("zero polynomial")
    ctx = f.ctx
    if level > ctx.max_level:
        raise LevelOverflow(f"level {level} exceeds max level {ctx.max_level}")
    counts: dict = {}
    work = f.lift(ctx.common_level(f.level, level))
    while work.degree > 0:
        g = _distinct_root_part(work, level)
        if g.degree == 0:
            break
        for r in _split_linear(g, level, seed=seed):
            if reduce:
                r = r.reduce_level()
            k = (r.level, r.coeffs) if not reduce else r.key()
            if k in counts:
                counts[k] = (r, counts[k][1] + 1)
            else:
                counts[k] = (r, 1)
        work = work // g  # one copy of each current root peeled per pass
    if reduce:
        res = sorted(counts.values(), key=lambda t: t[0].key())
    else:
        res = sorted(counts.values(), key=lambda t: (t[0].level, t[0].coeffs))
    return res


def power_coeffs(f: UniPoly, e: int, idxs) -> list[FieldElement]:
    """Selected coefficients of f^e, computed exactly (dense expansion)."""
    if e < 0:
        raise BadParameter("negative exponent")
    from ._kernel import poly_pow_coeffs

    ctx = f.ctx
    idxs = list(idxs)
    if f.is_zero():
        return [ctx.zero(f.level) for _ in idxs]
    flat = [list(c.coeffs) for c in f.coeffs]
    d = ctx.degree(f.level)
    mod = list(ctx.modulus(f.level)) if f.level >= 1 else None
    rows = poly_pow_coeffs(flat, d, mod, ctx.p, e, idxs)
    return [FieldElement(ctx, f.level, tuple(r)) for r in rows]


def from_roots(ctx: FieldCtx, level: int, rs, lead: FieldElement | None = None) -> UniPoly:
    f = UniPoly(ctx, level, [lead if lead is not None else ctx.one(level)])
    for r in rs:
        f = f * UniPoly(ctx, r.level, [-r, ctx.one(r.level)])
    return f
