"""Deterministic arithmetic in F_p and its even-degree extensions F_{p^{2m}}.

Level m >= 1 denotes the field F_{p^{2m}}, realized as F_p[x]/(H_{2m})
where H_{2m} is the lexicographically smallest monic irreducible
polynomial of degree 2m over F_p (coefficients compared constant-term
first, 0 < 1 < ... < p-1).  Level 0 is F_p itself.  F_{p^{2a}} embeds
into F_{p^{2b}} exactly when a | b; the embedding sends the level-a
generator to the canonically smallest root of H_{2a} in level b, so all
outputs are bit-reproducible.

Elements are immutable; a FieldCtx is safe to share. Mixed-level
arithmetic lifts both operands to the lcm level (bounded by max_level).

Textual encoding: "c0+c1*u+c2*u^2+..." with u the level generator and
plain nonnegative integer coefficients; zero terms are omitted and the
zero element prints as "0".
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd

from .errors import BadParameter, LevelOverflow, NotPrime

DEFAULT_MAX_LEVEL = 24


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any p used here
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense F_p[x] helpers on plain int lists (constant term first)
# ---------------------------------------------------------------------------

def _pstrip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pstrip(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - dm
        if q:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - q * mi) % p
        a.pop()
        _pstrip(a)
    return a


def _pgcdext(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    # returns (g, s, t) with s*a + t*b = g
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        # divmod r0 by r1
        q = []
        r = r0[:]
        dm = len(r1) - 1
        inv = pow(r1[-1], p - 2, p)
        q = [0] * max(1, len(r) - dm)
        while r and len(r) - 1 >= dm:
            c = r[-1] * inv % p
            shift = len(r) - 1 - dm
            q[shift] = c
            for i, mi in enumerate(r1):
                r[shift + i] = (r[shift + i] - c * mi) % p
            _pstrip(r)
        _pstrip(q)
        r0, r1 = r1, r
        s0, s1 = s1, _pstrip([(x - y) % p for x, y in _zipl(s0, _pmul(q, s1, p))])
        t0, t1 = t1, _pstrip([(x - y) % p for x, y in _zipl(t0, _pmul(q, t1, p))])
    return r0, s0, t0


def _zipl(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _ppow_mod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    r = [1]
    b = _pmod(a, m, p)
    while e:
        if e & 1:
            r = _pmod(_pmul(r, b, p), m, p)
        b = _pmod(_pmul(b, b, p), m, p)
        e >>= 1
    return r


def _is_irreducible(f: list[int], p: int) -> bool:
    # f monic; irreducible iff x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1
    n = len(f) - 1
    if n <= 0:
        return False
    x = [0, 1]
    h = x[:]
    for _ in range(n):
        h = _ppow_mod(h, p, f, p)
    if _pstrip([(a - b) % p for a, b in _zipl(h, x)]):
        return False
    for q in {d for d in range(2, n + 1) if n % d == 0 and _is_prime(d)}:
        h = x[:]
        for _ in range(n // q):
            h = _ppow_mod(h, p, f, p)
        g, _, _ = _pgcdext(_pstrip([(a - b) % p for a, b in _zipl(h, x)]), f, p)
        if len(g) - 1 >= 1:
            return False
    return True


def _smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lex-smallest (constant term first) monic irreducible of given degree."""
    # iterate coefficient vectors (c0, c1, ..., c_{degree-1}) in lex order
    coeffs = [0] * degree
    while True:
        f = coeffs + [1]
        if coeffs[0] != 0 and _is_irreducible(f, p):
            return tuple(f)
        i = degree - 1
        while i >= 0 and coeffs[i] == p - 1:
            coeffs[i] = 0
            i -= 1
        if i < 0:
            raise RuntimeError("no irreducible polynomial of requested degree found")
        coeffs[i] += 1


class FieldCtx:
    """Tower context for F_p, F_{p^2}, ..., F_{p^{2*max_level}}."""

    def __init__(self, p: int, max_level: int = DEFAULT_MAX_LEVEL):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p == 2:
            raise NotPrime("characteristic 2 is not supported")
        if max_level < 1:
            raise BadParameter("max_level must be >= 1")
        self.p = p
        self.max_level = max_level
        self._moduli: dict[int, tuple[int, ...]] = {}
        self._embeddings: dict[tuple[int, int], tuple[int, ...]] = {}
        self._nonresidues: dict[int, "FieldElement"] = {}
        self._frob_tables: dict[int, list[tuple[int, ...]]] = {}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, max_level={self.max_level})"

    # -- structure ---------------------------------------------------------

    def modulus(self, level: int) -> tuple[int, ...]:
        """Defining polynomial of F_{p^{2*level}} over F_p."""
        if level < 1 or level > self.max_level:
            raise LevelOverflow(f"level {level} outside 1..{self.max_level}")
        m = self._moduli.get(level)
        if m is None:
            m = _smallest_irreducible(self.p, 2 * level)
            self._moduli[level] = m
        return m

    def degree(self, level: int) -> int:
        return 1 if level == 0 else 2 * level

    def order(self, level: int) -> int:
        return self.p ** self.degree(level)

    def zero(self, level: int = 0) -> "FieldElement":
        return FieldElement(self, level, (0,) * self.degree(level))

    def one(self, level: int = 0) -> "FieldElement":
        return self.scalar(1, level)

    def scalar(self, n: int, level: int = 0) -> "FieldElement":
        c = [0] * self.degree(level)
        c[0] = n % self.p
        return FieldElement(self, level, tuple(c))

    def gen(self, level: int) -> "FieldElement":
        if level == 0:
            raise BadParameter("level 0 has no generator")
        c = [0] * self.degree(level)
        c[1] = 1
        return FieldElement(self, level, tuple(c))

    def element(self, level: int, coeffs) -> "FieldElement":
        c = [x % self.p for x in coeffs]
        d = self.degree(level)
        if len(c) > d:
            if any(c[d:]):
                raise BadParameter("coefficient sequence too long for level")
            c = c[:d]
        c += [0] * (d - len(c))
        return FieldElement(self, level, tuple(c))

    def elements(self, level: int):
        """All field elements of the level in canonical order (small levels only)."""
        p, d = self.p, self.degree(level)
        idx = [0] * d
        while True:
            yield FieldElement(self, level, tuple(idx))
            i = 0
            while i < d and idx[i] == p - 1:
                idx[i] = 0
                i += 1
            if i == d:
                return
            idx[i] += 1

    # -- embeddings --------------------------------------------------------

    def _embed_gen(self, a: int, b: int) -> tuple[int, ...]:
        """Image of the level-a generator in level b (a | b, a >= 1)."""
        key = (a, b)
        img = self._embeddings.get(key)
        if img is not None:
            return img
        mod_a = self.modulus(a)
        # roots of H_{2a} inside level b; take the canonically smallest
        root = _smallest_root(self, [self.scalar(c, b) for c in mod_a], b)
        if root is None:
            raise RuntimeError("embedding root not found (tower inconsistency)")
        self._embeddings[key] = root.coeffs
        return root.coeffs

    def lift(self, x: "FieldElement", level: int) -> "FieldElement":
        if x.level == level:
            return x
        if x.level == 0:
            return self.scalar(x.coeffs[0], level)
        if level == 0 or level % x.level != 0:
            raise BadParameter(f"no embedding of level {x.level} into level {level}")
        if level > self.max_level:
            raise LevelOverflow(f"level {level} exceeds max level {self.max_level}")
        g = FieldElement(self, level, self._embed_gen(x.level, level))
        acc = self.zero(level)
        for c in reversed(x.coeffs):
            acc = acc * g + self.scalar(c, level)
        return acc

    def common_level(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        lev = a * b // gcd(a, b)
        if lev > self.max_level:
            raise LevelOverflow(f"lcm level {lev} exceeds max level {self.max_level}")
        return lev

    # -- per-level data ----------------------------------------------------

    def frobenius_table(self, level: int) -> list[tuple[int, ...]]:
        """Images of generator powers under x -> x^p at the level."""
        t = self._frob_tables.get(level)
        if t is None:
            d = self.degree(level)
            m = list(self.modulus(level))
            gp = _ppow_mod([0, 1], self.p, m, self.p)
            t = []
            acc = [1]
            for _ in range(d):
                v = acc + [0] * (d - len(acc))
                t.append(tuple(v[:d]))
                acc = _pmod(_pmul(acc, gp, self.p), m, self.p)
            self._frob_tables[level] = t
        return t


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1, max_level: int = DEFAULT_MAX_LEVEL) -> FieldCtx:
    """Context able to host F_{p^{2m}}; levels beyond m are created lazily."""
    if m < 1 or m > max_level:
        raise LevelOverflow(f"requested level {m} outside 1..{max_level}")
    ctx = FieldCtx(p, max_level)
    ctx.modulus(1)
    ctx.modulus(m)
    return ctx


class FieldElement:
    """Element of F_{p^{2*level}} (level 0: F_p), canonical coefficient tuple."""

    __slots__ = ("ctx", "level", "coeffs")

    def __init__(self, ctx: FieldCtx, level: int, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.level = level
        self.coeffs = coeffs

    # -- canonical views ---------------------------------------------------

    def key(self) -> tuple:
        """Sort/equality key after reduction to the minimal hosting level."""
        r = self.reduce_level()
        return (r.level, r.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        return hash((self.ctx.p, self.key()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self.level == other.level:
            return self.coeffs == other.coeffs
        lev = self.ctx.common_level(self.level, other.level)
        return self.ctx.lift(self, lev).coeffs == self.ctx.lift(other, lev).coeffs

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if self.level == other.level:
            return self, other
        lev = self.ctx.common_level(self.level, other.level)
        return self.ctx.lift(self, lev), self.ctx.lift(other, lev)

    def __add__(self, other):
        a, b = self._pair(other)
        p = a.ctx.p
        return FieldElement(a.ctx, a.level, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, self.level, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        p = a.ctx.p
        return FieldElement(a.ctx, a.level, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        a, b = self._pair(other)
        ctx, p = a.ctx, a.ctx.p
        if a.level == 0:
            return FieldElement(ctx, 0, (a.coeffs[0] * b.coeffs[0] % p,))
        m = list(ctx.modulus(a.level))
        c = _pmod(_pmul(list(a.coeffs), list(b.coeffs), p), m, p)
        c += [0] * (len(a.coeffs) - len(c))
        return FieldElement(ctx, a.level, tuple(c))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        ctx, p = self.ctx, self.ctx.p
        if self.level == 0:
            return FieldElement(ctx, 0, (pow(self.coeffs[0], p - 2, p),))
        m = list(ctx.modulus(self.level))
        g, s, _ = _pgcdext(_pstrip(list(self.coeffs)), m, p)
        inv_g = pow(g[0], p - 2, p)
        s = [x * inv_g % p for x in s]
        s += [0] * (len(self.coeffs) - len(s))
        return FieldElement(ctx, self.level, tuple(s[: len(self.coeffs)]))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ctx.one(self.level)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    # -- tower operations ---------------------------------------------------

    def frobenius(self, e: int = 1) -> "FieldElement":
        """a^(p^e), via the precomputed p-power table of the level."""
        if self.level == 0:
            return self
        ctx, p = self.ctx, self.ctx.p
        a = self
        t = ctx.frobenius_table(self.level)
        d = len(self.coeffs)
        for _ in range(e % (2 * self.level)):
            out = [0] * d
            for i, c in enumerate(a.coeffs):
                if c:
                    ti = t[i]
                    for j in range(d):
                        out[j] = (out[j] + c * ti[j]) % p
            a = FieldElement(ctx, self.level, tuple(out))
        return a

    def min_level(self) -> int:
        """Smallest level whose field contains this element."""
        if self.level == 0 or not any(self.coeffs[1:]):
            return 0
        for d in sorted(_divisors(self.level)):
            if d == self.level:
                return self.level
            # fixed by Frobenius^(2d) <=> lies in F_{p^{2d}}
            if self.frobenius(2 * d) == self:
                return d
        return self.level

    def reduce_level(self) -> "FieldElement":
        """Rewrite over the minimal hosting level."""
        lev = self.min_level()
        if lev == self.level:
            return self
        if lev == 0:
            return self.ctx.scalar(self.coeffs[0])
        # solve for coordinates over level lev: match against basis lift
        ctx = self.ctx
        g = ctx.lift(ctx.gen(lev), self.level)
        d = ctx.degree(lev)
        cols = []
        acc = ctx.one(self.level)
        for _ in range(d):
            cols.append(acc.coeffs)
            acc = acc * g
        sol = _solve_linear(cols, self.coeffs, ctx.p)
        if sol is None:
            raise RuntimeError("level reduction failed (tower inconsistency)")
        return FieldElement(ctx, lev, tuple(sol))

    def lift_to(self, level: int) -> "FieldElement":
        return self.ctx.lift(self, level)

    # -- square roots --------------------------------------------------------

    def sqrt(self) -> tuple["FieldElement", ...]:
        """All square roots, at this level if a residue, else at the doubled level."""
        if self.is_zero():
            return (self,)
        ctx = self.ctx
        a = self if self.level >= 1 else ctx.lift(self, 1)
        q = ctx.order(a.level)
        if a ** ((q - 1) // 2) == ctx.one(a.level):
            r = _sqrt_in_level(a)
        else:
            lev = 2 * a.level
            if lev > ctx.max_level:
                raise LevelOverflow(f"square root needs level {lev} > max {ctx.max_level}")
            r = _sqrt_in_level(ctx.lift(a, lev))
        roots = sorted({r, -r}, key=lambda x: x.key())
        return tuple(roots)

    # -- encoding ------------------------------------------------------------

    def encode(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*u" if c != 1 else "u")
            else:
                terms.append(f"{c}*u^{i}" if c != 1 else f"u^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self.encode()} @level{self.level}>"


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(u(?:\^(\d+))?)?$")


def parse_element(ctx: FieldCtx, level: int, text: str) -> FieldElement:
    """Inverse of FieldElement.encode at a given level."""
    text = text.strip().replace(" ", "")
    coeffs = [0] * ctx.degree(level)
    if text == "0":
        return FieldElement(ctx, level, tuple(coeffs))
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise BadParameter(f"cannot parse field element term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            i = 0
        elif m.group(3) is None:
            i = 1
        else:
            i = int(m.group(3))
        if i >= len(coeffs):
            raise BadParameter(f"exponent {i} too large for level {level}")
        coeffs[i] = (coeffs[i] + c) % ctx.p
    return FieldElement(ctx, level, tuple(coeffs))


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _solve_linear(cols, target, p):
    """Solve sum_j x_j * cols[j] = target over F_p; None if inconsistent."""
    n = len(target)
    k = len(cols)
    mat = [[cols[j][i] % p for j in range(k)] + [target[i] % p] for i in range(n)]
    piv = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        piv.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if mat[i][k]:
            return None
    sol = [0] * k
    for i, c in enumerate(piv):
        sol[c] = mat[i][k]
    return sol


def _sqrt_in_level(a: FieldElement) -> FieldElement:
    """Tonelli-Shanks in F_q, q = p^{2*level}; a must be a nonzero residue."""
    ctx = a.ctx
    q = ctx.order(a.level)
    one = ctx.one(a.level)
    # q = 2^s * t + 1
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    n = ctx._nonresidues.get(a.level)
    if n is None:
        for cand in ctx.elements(a.level):
            if cand.is_zero():
                continue
            if cand ** ((q - 1) // 2) != one:
                n = cand
                break
        ctx._nonresidues[a.level] = n
    c = n ** t
    r = a ** ((t + 1) // 2)
    u = a ** t
    m = s
    while u != one:
        # find least i with u^(2^i) = 1
        i, v = 0, u
        while v != one:
            v = v * v
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = b * b
        r = r * b
        c = b * b
        u = u * c
        m = i
    return r


def _smallest_root(ctx: FieldCtx, poly_coeffs: list[FieldElement], level: int):
    """Canonically smallest root in the given level of a monic poly over it.

    Used only for embedding generators; the polynomial has small degree and
    is known to split. Roots found by gcd with x^q - x then splitting.
    """
    from . import polynomials  # local import to avoid a cycle

    f = polynomials.UniPoly(ctx, level, poly_coeffs)
    rs = polynomials.roots(f, level, reduce=False)
    if not rs:
        return None
    return min((r for r, _ in rs), key=lambda x: x.coeffs)
