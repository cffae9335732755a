"""Pure-Python kernels: reference implementations of the hot loops.

All functions work on flat int data (no FieldElement objects) so the
compiled twin in _core.pyx can share signatures exactly.

Conventions: an element of F_p[x]/(mod) is a list of d ints; a
polynomial over that field is a list of such lists, constant term
first.  mod is the ascending coefficient list of the monic defining
polynomial (length d+1), or None for d == 1 (prime field).
"""

from __future__ import annotations

IMPL = "pure"


def _emul(a, b, d, mod, p):
    if d == 1:
        return [a[0] * b[0] % p]
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(d):
                prod[k - d + i] = (prod[k - d + i] - c * mod[i]) % p
    return prod[:d]


def poly_mul_flat(fa, fb, d, mod, p):
    """Product of two dense polynomials with flattened field coefficients."""
    if not fa or not fb:
        return []
    out = [[0] * d for _ in range(len(fa) + len(fb) - 1)]
    for i, ai in enumerate(fa):
        if not any(ai):
            continue
        for j, bj in enumerate(fb):
            if not any(bj):
                continue
            c = _emul(ai, bj, d, mod, p)
            o = out[i + j]
            for k in range(d):
                o[k] = (o[k] + c[k]) % p
    while out and not any(out[-1]):
        out.pop()
    return out


def poly_pow_coeffs(f, d, mod, p, e, idxs):
    """Requested coefficients of f**e (binary powering, dense)."""
    acc = [[1] + [0] * (d - 1)]
    base = [c[:] for c in f]
    ee = e
    while ee:
        if ee & 1:
            acc = poly_mul_flat(acc, base, d, mod, p)
        ee >>= 1
        if ee:
            base = poly_mul_flat(base, base, d, mod, p)
    return [(acc[i][:] if 0 <= i < len(acc) else [0] * d) for i in idxs]


def square_table(p, d, mod):
    """Quadratic-character table for F_q, q = p^d, elements indexed by
    their coefficient vectors read as base-p integers.  table[i] is 1 for
    nonzero squares, -1 for nonsquares, 0 for zero."""
    q = p**d
    table = [-1] * q
    table[0] = 0
    if d == 1:
        for x in range(1, p):
            table[x * x % p] = 1
        return table
    for idx in range(1, q):
        # decode, square, mark
        v, t = [], idx
        for _ in range(d):
            v.append(t % p)
            t //= p
        s = _emul(v, v, d, mod, p)
        si = 0
        for k in range(d - 1, -1, -1):
            si = si * p + s[k]
        table[si] = 1
    # everything marked 1 is a square; the rest nonzero are non-squares
    return table


def count_hyperelliptic(fcoeffs, d, mod, p):
    """#{(x,y) in F_q^2 : y^2 = f(x)} + points at infinity of the smooth model.

    fcoeffs: flattened poly over F_q = p^d.  Exact count via the
    quadratic character.
    """
    q = p**d
    table = square_table(p, d, mod)
    npts = 0
    # iterate field elements by index
    x = [0] * d
    f = [c[:] for c in fcoeffs]
    for _ in range(q):
        # Horner evaluate
        acc = [0] * d
        for c in reversed(f):
            acc = _emul(acc, x, d, mod, p) if d > 1 else [acc[0] * x[0] % p]
            for k in range(d):
                acc[k] = (acc[k] + c[k]) % p
        ai = 0
        for k in range(d - 1, -1, -1):
            ai = ai * p + acc[k]
        npts += 1 + table[ai]
        # increment x
        i = 0
        while i < d and x[i] == p - 1:
            x[i] = 0
            i += 1
        if i < d:
            x[i] += 1
    deg = len(fcoeffs) - 1
    lead = fcoeffs[-1]
    li = 0
    for k in range(d - 1, -1, -1):
        li = li * p + lead[k]
    if deg % 2 == 1:
        npts += 1
    else:
        npts += 1 + table[li]
    return npts


def count_ciani_quartic(b40, b22, b04, b20, b02, b00, d, mod, p):
    """Projective points of b40*Y^4+b22*Y^2Z^2+b04*Z^4+b20*Y^2W^2+b02*Z^2W^2+b00*W^4
    over F_q, q = p^d.  Coefficients are flattened field elements.

    For fixed (Z, W) the equation is a quadratic in Y^2; root counts come
    from the quadratic character."""
    q = p**d
    table = square_table(p, d, mod)

    def idx(v):
        t = 0
        for k in range(d - 1, -1, -1):
            t = t * p + v[k]
        return t

    def nroots_y(qa, qb, qc):
        # #{Y : qa*Y^4 + qb*Y^2 + qc = 0}; qa != 0
        disc = _esub(_emul(qb, qb, d, mod, p), _escale(_emul(qa, qc, d, mod, p), 4, d, p), d, p)
        di = idx(disc)
        total = 0
        if di == 0:
            t = _eneg(qb, d, p)
            u = _ediv(t, _escale(qa, 2, d, p), d, mod, p)
            total += _nsqrt(u, table, idx, d)
        else:
            if table[di] == 1:
                r = _esqrt(disc, d, mod, p, table, idx)
                for sgn in (1, -1):
                    t = _esub(_eneg(qb, d, p), _escale(r, -sgn, d, p), d, p)
                    u = _ediv(t, _escale(qa, 2, d, p), d, mod, p)
                    total += _nsqrt(u, table, idx, d)
        return total

    npts = 0
    # chart W = 1: iterate Z
    z = [0] * d
    one = [1] + [0] * (d - 1)
    for _ in range(q):
        z2 = _emul(z, z, d, mod, p)
        z4 = _emul(z2, z2, d, mod, p)
        qa = b40
        qb = _eadd(_emul(b22, z2, d, mod, p), b20, d, p)
        qc = _eadd(_eadd(_emul(b04, z4, d, mod, p), _emul(b02, z2, d, mod, p), d, p), b00, d, p)
        npts += nroots_y(qa, qb, qc)
        i = 0
        while i < d and z[i] == p - 1:
            z[i] = 0
            i += 1
        if i < d:
            z[i] += 1
    # chart W = 0, Z = 1: b40 Y^4 + b22 Y^2 + b04 = 0
    npts += nroots_y(b40, b22, b04)
    # W = 0, Z = 0, Y = 1: needs b40 = 0 (not the case for our curves)
    if not any(b40):
        npts += 1
    return npts


def _eadd(a, b, d, p):
    return [(x + y) % p for x, y in zip(a, b)]


def _esub(a, b, d, p):
    return [(x - y) % p for x, y in zip(a, b)]


def _eneg(a, d, p):
    return [(-x) % p for x in a]


def _escale(a, n, d, p):
    return [x * n % p for x in a]


def _ptrim(a, p):
    while a and a[-1] % p == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    a = _ptrim(a[:], p)
    b = _ptrim(b[:], p)
    q = [0] * max(1, len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while a and len(a) >= len(b):
        c = a[-1] * inv % p
        sh = len(a) - len(b)
        q[sh] = c
        for i, m in enumerate(b):
            a[sh + i] = (a[sh + i] - c * m) % p
        _ptrim(a, p)
    return _ptrim(q, p), a


def _pmul1(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _psub1(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                   for i in range(n)], p)


def _einv(a, d, mod, p):
    # extended Euclid over F_p[x] against the defining polynomial
    if d == 1:
        return [pow(a[0], p - 2, p)]
    r0, r1 = list(mod), _ptrim(a[:], p)
    s0, s1 = [], [1]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub1(s0, _pmul1(q, s1, p), p)
    c = pow(r1[0], p - 2, p)
    out = [x * c % p for x in s1]
    out += [0] * (d - len(out))
    return out[:d]


def _ediv(a, b, d, mod, p):
    return _emul(a, _einv(b, d, mod, p), d, mod, p)


def _nsqrt(u, table, idx, d):
    ui = idx(u)
    if ui == 0:
        return 1
    return 2 if table[ui] == 1 else 0


def _esqrt(a, d, mod, p, table, idx):
    # Tonelli-Shanks on flat elements (used only inside counting loops)
    q = p**d
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    one = [1] + [0] * (d - 1)

    def epow(x, e):
        r = one[:]
        b = x[:]
        while e:
            if e & 1:
                r = _emul(r, b, d, mod, p)
            b = _emul(b, b, d, mod, p)
            e >>= 1
        return r

    # smallest non-residue by index order
    n = None
    v = [0] * d
    for i in range(1, q):
        j = 0
        vv = v[:]
        k = i
        for j in range(d):
            vv[j] = k % p
            k //= p
        if table[idx(vv)] == -1:
            n = vv
            break
    c = epow(n, t)
    r = epow(a, (t + 1) // 2)
    u = epow(a, t)
    m = s
    while u != one:
        i, vv = 0, u[:]
        while vv != one:
            vv = _emul(vv, vv, d, mod, p)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = _emul(b, b, d, mod, p)
        r = _emul(r, b, d, mod, p)
        c = _emul(b, b, d, mod, p)
        u = _emul(u, c, d, mod, p)
        m = i
    return r


def rosenhain_superspecial_scan(p, d, mod):
    """Brute-force search over Rosenhain triples (a, b, c) in F_q, q = p^d:
    returns all sorted index-triples (ia < ib < ic) whose genus-2 curve
    y^2 = x(x-1)(x-a)(x-b)(x-c) has vanishing Cartier-Manin matrix.

    Exact oracle used by acceptance testing at small p.
    """
    q = p**d
    m = (p - 1) // 2
    # enumerate elements by index; pre-decode
    elems = []
    for i in range(q):
        v, t = [0] * d, i
        for k in range(d):
            v[k] = t % p
            t //= p
        elems.append(v)

    one = [1] + [0] * (d - 1)

    def poly_from_roots(idx_list):
        f = [one[:]]
        for i in idx_list:
            r = elems[i]
            nf = [[0] * d for _ in range(len(f) + 1)]
            for k, ck in enumerate(f):
                # (x - r): nf[k] += -r*ck ; nf[k+1] += ck
                t = _emul(ck, r, d, mod, p)
                for jj in range(d):
                    nf[k][jj] = (nf[k][jj] - t[jj]) % p
                    nf[k + 1][jj] = (nf[k + 1][jj] + ck[jj]) % p
            f = nf
        return f

    # indices of 0 and 1
    i0 = 0
    i1 = 1  # vector (1,0,..) has index 1
    out = []
    needed = [p - 1, p - 2, 2 * p - 1, 2 * p - 2]
    for ia in range(q):
        if ia in (i0, i1):
            continue
        base_a = poly_from_roots([i0, i1, ia])
        for ib in range(ia + 1, q):
            if ib in (i0, i1):
                continue
            base_ab = poly_mul_flat(base_a, [[(-x) % p for x in elems[ib]], one], d, mod, p)
            g = poly_pow_coeffs(base_ab, d, mod, p, m, list(range(4 * m + 1)))
            # g = (x(x-1)(x-a)(x-b))^m, dense list of length 4m+1
            for ic in range(ib + 1, q):
                if ic in (i0, i1):
                    continue
                # needed coefficients of g * (x - c)^m: use binomial expansion
                # (x - c)^m = sum_j C(m,j) (-c)^(m-j) x^j
                cvec = elems[ic]
                # precompute powers of (-c)
                negc = [(-x) % p for x in cvec]
                powc = [one[:]]
                for _ in range(m):
                    powc.append(_emul(powc[-1], negc, d, mod, p))
                binom = [1] * (m + 1)
                for j in range(1, m + 1):
                    binom[j] = binom[j - 1] * (m - j + 1) // j
                ok = True
                for target in needed:
                    acc = [0] * d
                    lo = max(0, target - len(g) + 1)
                    for j in range(lo, min(m, target) + 1):
                        gi = g[target - j]
                        bj = binom[j] % p
                        if bj == 0:
                            continue
                        t = _emul(gi, powc[m - j], d, mod, p)
                        for kk in range(d):
                            acc[kk] = (acc[kk] + bj * t[kk]) % p
                    if any(acc):
                        ok = False
                        break
                if ok:
                    out.append((ia, ib, ic))
    return out
