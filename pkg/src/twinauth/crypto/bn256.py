"""Optimal-ate pairing over a 256-bit Barreto-Naehrig curve.

Self-contained Type-3 pairing backend: G1 on E(F_p): y^2 = x^3 + 3, G2 on the
sextic twist over F_p^2, target group in F_p^12.  Field elements are plain ints
(F_p) and nested tuples (F_p^2/6/12); points are Jacobian triples.  The tower
and loop structure follow the standard construction for BN curves (Beuchat et
al. style formulas, final exponentiation per Scott et al.).

This module is deliberately class-free and unmetered; the typed group API with
operation accounting lives in groups.py.
"""

from __future__ import annotations

# BN parameter. p and r are both prime; r is the order of G1, G2 and GT.
BN_V = 1868033
BN_U = BN_V**3
P = (((BN_U + 1) * 6 * BN_U + 4) * BN_U + 1) * 6 * BN_U + 1
ORDER = P - 6 * BN_U * BN_U

assert P % 4 == 3  # enables sqrt via (p+1)/4 exponent

_SQRT_EXP = (P + 1) // 4


def fp_inv(a: int) -> int:
    return pow(a, P - 2, P)


def fp_sqrt(a: int) -> int | None:
    r = pow(a, _SQRT_EXP, P)
    if r * r % P != a % P:
        return None
    return r


# ---------------------------------------------------------------------------
# F_p^2 = F_p[i] / (i^2 + 1), elements (x, y) meaning x*i + y.

FP2_ZERO = (0, 0)
FP2_ONE = (0, 1)


def fp2_add(a, b):
    return ((a[0] + b[0]) % P, (a[1] + b[1]) % P)


def fp2_sub(a, b):
    return ((a[0] - b[0]) % P, (a[1] - b[1]) % P)


def fp2_neg(a):
    return (-a[0] % P, -a[1] % P)


def fp2_conj(a):
    return (-a[0] % P, a[1])


def fp2_dbl(a):
    return (a[0] * 2 % P, a[1] * 2 % P)


def fp2_mul(a, b):
    ax, ay = a
    bx, by = b
    vy = ay * by
    vx = ax * bx
    return ((ax + ay) * (bx + by) - vy - vx, vy - vx)


def fp2_mul_r(a, b):
    # Reduced variant, for results that are stored rather than accumulated.
    ax, ay = a
    bx, by = b
    vy = ay * by
    vx = ax * bx
    return (((ax + ay) * (bx + by) - vy - vx) % P, (vy - vx) % P)


def fp2_sq(a):
    ax, ay = a
    return (2 * ax * ay % P, (ay - ax) * (ay + ax) % P)


def fp2_mul_int(a, k):
    return (a[0] * k % P, a[1] * k % P)


def fp2_mul_xi(a):
    # xi = i + 3: (x*i + y)(i + 3) = (3x + y)i + (3y - x)
    ax, ay = a
    return ((3 * ax + ay) % P, (3 * ay - ax) % P)


def fp2_inv(a):
    ax, ay = a
    t = fp_inv(ax * ax + ay * ay)
    return (-ax * t % P, ay * t % P)


def fp2_exp(a, k: int):
    r = FP2_ONE
    for bit in bin(k)[2:]:
        r = fp2_sq(r)
        r = (r[0] % P, r[1] % P)
        if bit == "1":
            r = fp2_mul_r(r, a)
    return r


def fp2_sqrt(a):
    # Square root in F_p^2 via the norm map; p = 3 mod 4.
    ax, ay = a
    if ax == 0:
        r = fp_sqrt(ay)
        if r is not None:
            return (0, r)
        # ay is a non-residue in F_p: sqrt is purely imaginary, i^2 = -1.
        r = fp_sqrt(-ay % P)
        if r is None:
            return None
        return (r, 0)
    norm = (ax * ax + ay * ay) % P
    n = fp_sqrt(norm)
    if n is None:
        return None
    for cand_n in (n, -n % P):
        half = (ay + cand_n) * fp_inv(2) % P
        y0 = fp_sqrt(half)
        if y0 is None:
            continue
        x0 = ax * fp_inv(2 * y0 % P) % P
        if fp2_sq((x0, y0)) == (a[0] % P, a[1] % P):
            return (x0, y0)
    return None


XI = (1, 3)

# ---------------------------------------------------------------------------
# F_p^6 = F_p^2[tau] / (tau^3 - xi), elements (x, y, z) = x*tau^2 + y*tau + z.

FP6_ZERO = (FP2_ZERO, FP2_ZERO, FP2_ZERO)
FP6_ONE = (FP2_ZERO, FP2_ZERO, FP2_ONE)


def fp6_add(a, b):
    return (fp2_add(a[0], b[0]), fp2_add(a[1], b[1]), fp2_add(a[2], b[2]))


def fp6_sub(a, b):
    return (fp2_sub(a[0], b[0]), fp2_sub(a[1], b[1]), fp2_sub(a[2], b[2]))


def fp6_neg(a):
    return (fp2_neg(a[0]), fp2_neg(a[1]), fp2_neg(a[2]))


def fp6_dbl(a):
    return (fp2_dbl(a[0]), fp2_dbl(a[1]), fp2_dbl(a[2]))


def fp6_mul(a, b):
    ax, ay, az = a
    bx, by, bz = b
    t0 = fp2_mul(az, bz)
    t1 = fp2_mul(ay, by)
    t2 = fp2_mul(ax, bx)

    tz = fp2_mul(fp2_add(ax, ay), fp2_add(bx, by))
    tz = fp2_sub(tz, t1)
    tz = fp2_sub(tz, t2)
    tz = fp2_mul_xi(tz)
    tz = fp2_add(tz, t0)

    ty = fp2_mul(fp2_add(ay, az), fp2_add(by, bz))
    ty = fp2_sub(ty, t0)
    ty = fp2_sub(ty, t1)
    ty = fp2_add(ty, fp2_mul_xi(t2))

    tx = fp2_mul(fp2_add(ax, az), fp2_add(bx, bz))
    tx = fp2_sub(tx, t0)
    tx = fp2_add(tx, t1)
    tx = fp2_sub(tx, t2)
    return (tx, ty, tz)


def fp6_mul_fp2(a, k):
    return (fp2_mul(a[0], k), fp2_mul(a[1], k), fp2_mul(a[2], k))


def fp6_mul_tau(a):
    # (x*tau^2 + y*tau + z) * tau = y*tau^2 + z*tau + x*xi
    return (a[1], a[2], fp2_mul_xi(a[0]))


def fp6_sq(a):
    ax, ay, az = a
    ay2 = fp2_dbl(ay)
    c4 = fp2_mul(az, ay2)
    c5 = fp2_sq(ax)
    c1 = fp2_add(fp2_mul_xi(c5), c4)
    c2 = fp2_sub(c4, c5)
    c3 = fp2_sq(az)
    c4b = fp2_sub(fp2_add(ax, az), ay)
    c5b = fp2_mul(ay2, ax)
    c4b = fp2_sq(c4b)
    c0 = fp2_add(fp2_mul_xi(c5b), c3)
    c2 = fp2_sub(fp2_add(fp2_add(c2, c4b), c5b), c3)
    return (c2, c1, c0)


def fp6_inv(a):
    ax, ay, az = a
    xx = fp2_sq(ax)
    yy = fp2_sq(ay)
    zz = fp2_sq(az)
    xy = fp2_mul(ax, ay)
    xz = fp2_mul(ax, az)
    yz = fp2_mul(ay, az)
    A = fp2_sub(zz, fp2_mul_xi(xy))
    B = fp2_sub(fp2_mul_xi(xx), yz)
    C = fp2_sub(yy, xz)
    F = fp2_mul_xi(fp2_mul(C, ay))
    F = fp2_add(F, fp2_mul(A, az))
    F = fp2_add(F, fp2_mul_xi(fp2_mul(B, ax)))
    F = fp2_inv((F[0] % P, F[1] % P))
    return (fp2_mul(C, F), fp2_mul(B, F), fp2_mul(A, F))


# ---------------------------------------------------------------------------
# F_p^12 = F_p^6[w] / (w^2 - tau), elements (x, y) = x*w + y.

FP12_ONE = (FP6_ZERO, FP6_ONE)


def fp12_conj(a):
    return (fp6_neg(a[0]), a[1])


def fp12_mul(a, b):
    axbx = fp6_mul(a[0], b[0])
    axby = fp6_mul(a[0], b[1])
    aybx = fp6_mul(a[1], b[0])
    ayby = fp6_mul(a[1], b[1])
    return (fp6_add(axby, aybx), fp6_add(ayby, fp6_mul_tau(axbx)))


def fp12_sq(a):
    v0 = fp6_mul(a[0], a[1])
    t = fp6_add(fp6_mul_tau(a[0]), a[1])
    ty = fp6_mul(fp6_add(a[0], a[1]), t)
    ty = fp6_sub(fp6_sub(ty, v0), fp6_mul_tau(v0))
    return (fp6_dbl(v0), ty)


def fp12_inv(a):
    t1 = fp6_sq(a[0])
    t2 = fp6_sq(a[1])
    t1 = fp6_sub(t2, fp6_mul_tau(t1))
    t2 = fp6_inv(t1)
    return (fp6_mul(fp6_neg(a[0]), t2), fp6_mul(a[1], t2))


def fp12_exp(a, k: int):
    r = FP12_ONE
    for bit in bin(k)[2:]:
        r = fp12_sq(r)
        if bit == "1":
            r = fp12_mul(r, a)
    return fp12_norm(r)


def fp12_norm(a):
    (xx, xy, xz), (yx, yy, yz) = a
    return (
        ((xx[0] % P, xx[1] % P), (xy[0] % P, xy[1] % P), (xz[0] % P, xz[1] % P)),
        ((yx[0] % P, yx[1] % P), (yy[0] % P, yy[1] % P), (yz[0] % P, yz[1] % P)),
    )


def fp12_eq(a, b) -> bool:
    return fp12_norm(a) == fp12_norm(b)


def fp12_is_one(a) -> bool:
    return fp12_norm(a) == FP12_ONE


# Frobenius coefficients: xi^(k*(p-1)/6) and their norms.
XI1 = [fp2_exp(XI, k * (P - 1) // 6) for k in range(1, 6)]
XI2 = [fp2_mul_r(x, fp2_conj(x)) for x in XI1]


def fp12_frobenius(a):
    x, y = a
    e1 = (
        fp2_mul(fp2_conj(x[0]), XI1[4]),
        fp2_mul(fp2_conj(x[1]), XI1[2]),
        fp2_mul(fp2_conj(x[2]), XI1[0]),
    )
    e2 = (
        fp2_mul(fp2_conj(y[0]), XI1[3]),
        fp2_mul(fp2_conj(y[1]), XI1[1]),
        fp2_conj(y[2]),
    )
    return (e1, e2)


def fp12_frobenius_p2(a):
    x, y = a
    e1 = (fp2_mul(x[0], XI2[4]), fp2_mul(x[1], XI2[2]), fp2_mul(x[2], XI2[0]))
    e2 = (fp2_mul(y[0], XI2[3]), fp2_mul(y[1], XI2[1]), y[2])
    return (e1, e2)


# ---------------------------------------------------------------------------
# Jacobian point arithmetic, generic over the coordinate field.


def _point_add(a, b, ops):
    sub, mul, sq, dbl, zero = ops
    if a[2] == zero:
        return b
    if b[2] == zero:
        return a
    z1z1 = sq(a[2])
    z2z2 = sq(b[2])
    u1 = mul(z2z2, a[0])
    u2 = mul(z1z1, b[0])
    h = sub(u2, u1)
    s1 = mul(mul(a[1], b[2]), z2z2)
    s2 = mul(mul(b[1], a[2]), z1z1)
    r = sub(s2, s1)
    if _is_zero(h) and _is_zero(r):
        return _point_double(a, ops)
    r = dbl(r)
    i = sq(h)
    i = dbl(dbl(i))
    j = mul(h, i)
    v = mul(u1, i)
    cx = sub(sub(sq(r), j), dbl(v))
    cy = sub(mul(r, sub(v, cx)), mul(s1, dbl(j)))
    cz = sub(sub(sq(_fadd(a[2], b[2])), z1z1), z2z2)
    cz = mul(cz, h)
    return (cx, cy, cz)


def _point_double(a, ops):
    sub, mul, sq, dbl, zero = ops
    A = sq(a[0])
    B = sq(a[1])
    C = sq(B)
    t = sq(_fadd(a[0], B))
    D = dbl(sub(sub(t, A), C))
    E = _fadd(dbl(A), A)
    F = sq(E)
    C8 = dbl(dbl(dbl(C)))
    cx = sub(F, dbl(D))
    cy = sub(mul(E, sub(D, cx)), C8)
    cz = dbl(mul(a[1], a[2]))
    return (cx, cy, cz)


def _is_zero(v):
    if isinstance(v, int):
        return v % P == 0
    return v[0] % P == 0 and v[1] % P == 0


def _fadd(a, b):
    if isinstance(a, int):
        return (a + b) % P
    return fp2_add(a, b)


_G1_OPS = (
    lambda a, b: (a - b) % P,
    lambda a, b: a * b % P,
    lambda a: a * a % P,
    lambda a: 2 * a % P,
    0,
)
_G2_OPS = (fp2_sub, fp2_mul_r, fp2_sq, fp2_dbl, FP2_ZERO)

G1_INF = (0, 1, 0)
G2_INF = (FP2_ZERO, FP2_ONE, FP2_ZERO)

CURVE_B = 3
# b' = b / xi puts the twist in the correct sextic class for this xi.
TWIST_B = fp2_mul_r(fp2_inv(XI), (0, CURVE_B))

G1_GEN = (1, P - 2, 1)
G2_GEN = (
    (
        21167961636542580255011770066570541300993051739349375019639421053990175267184,
        64746500191241794695844075326670126197795977525365406531717464316923369116492,
    ),
    (
        20666913350058776956210519119118544732556678129809273996262322366050359951122,
        17778617556404439934652658462602675281523610326338642107814333856843981424549,
    ),
    FP2_ONE,
)


def g1_add(a, b):
    return _point_add(a, b, _G1_OPS)


def g1_double(a):
    return _point_double(a, _G1_OPS)


def g1_neg(a):
    if a[2] == 0:
        return a
    return (a[0], -a[1] % P, a[2])


def g2_add(a, b):
    return _point_add(a, b, _G2_OPS)


def g2_neg(a):
    if _is_zero(a[2]):
        return a
    return (a[0], fp2_neg(a[1]), a[2])


def _mul_naf(pt, k, add, double, neg, inf):
    if k == 0 or _is_zero(pt[2]):
        return inf
    if k < 0:
        return _mul_naf(neg(pt), -k, add, double, neg, inf)
    npt = neg(pt)
    # 2-NAF recoding, MSB first.
    naf = []
    while k > 0:
        if k & 1:
            d = 2 - (k & 3)
            k -= d
            naf.append(d)
        else:
            naf.append(0)
        k >>= 1
    r = inf
    for d in reversed(naf):
        r = double(r)
        if d == 1:
            r = add(r, pt)
        elif d == -1:
            r = add(r, npt)
    return r


def g1_mul(pt, k: int):
    return _mul_naf(pt, k % ORDER, g1_add, g1_double, g1_neg, G1_INF)


def g2_mul(pt, k: int):
    return _mul_naf(pt, k % ORDER, g2_add, lambda a: _point_double(a, _G2_OPS), g2_neg, G2_INF)


# Fixed-base table for the G1 generator: 4-bit windows over 64 positions.
_G1_BASE_TABLE = None


def _build_base_table():
    table = []
    base = G1_GEN
    for _ in range(64):
        row = [G1_INF]
        acc = G1_INF
        for _ in range(15):
            acc = g1_add(acc, base)
            row.append(acc)
        table.append(row)
        for _ in range(4):
            base = g1_double(base)
    return table


def g1_base_mul(k: int):
    global _G1_BASE_TABLE
    if _G1_BASE_TABLE is None:
        _G1_BASE_TABLE = _build_base_table()
    k %= ORDER
    r = G1_INF
    idx = 0
    while k > 0:
        w = k & 15
        if w:
            r = g1_add(r, _G1_BASE_TABLE[idx][w])
        k >>= 4
        idx += 1
    return r


def g1_affine(pt):
    if pt[2] % P == 0:
        return G1_INF
    if pt[2] == 1:
        return (pt[0] % P, pt[1] % P, 1)
    zinv = fp_inv(pt[2])
    zinv2 = zinv * zinv % P
    return (pt[0] * zinv2 % P, pt[1] * zinv2 * zinv % P, 1)


def g2_affine(pt):
    if _is_zero(pt[2]):
        return G2_INF
    z = (pt[2][0] % P, pt[2][1] % P)
    if z == FP2_ONE:
        return ((pt[0][0] % P, pt[0][1] % P), (pt[1][0] % P, pt[1][1] % P), FP2_ONE)
    zinv = fp2_inv(z)
    zinv2 = fp2_sq(zinv)
    x = fp2_mul_r(pt[0], zinv2)
    y = fp2_mul_r(fp2_mul(pt[1], zinv2), zinv)
    return (x, y, FP2_ONE)


def g1_is_on_curve(pt) -> bool:
    if pt[2] % P == 0:
        return True
    x, y, _ = g1_affine(pt)
    return (y * y - x * x * x - CURVE_B) % P == 0


def g2_is_on_curve(pt) -> bool:
    if _is_zero(pt[2]):
        return True
    x, y, _ = g2_affine(pt)
    lhs = fp2_sq(y)
    rhs = fp2_add(fp2_mul(fp2_sq(x), x), TWIST_B)
    return fp2_sub(lhs, rhs) == (0, 0) or (fp2_sub(lhs, rhs)[0] % P == 0 and fp2_sub(lhs, rhs)[1] % P == 0)


def g2_in_subgroup(pt) -> bool:
    return g2_is_on_curve(pt) and _is_zero(g2_mul(pt, ORDER)[2])


def g1_eq(a, b) -> bool:
    return g1_affine(a) == g1_affine(b)


def g2_eq(a, b) -> bool:
    return g2_affine(a) == g2_affine(b)


# ---------------------------------------------------------------------------
# Point compression.

G1_ENC_LEN = 33
G2_ENC_LEN = 65
GT_ENC_LEN = 384


def g1_compress(pt) -> bytes:
    x, y, z = g1_affine(pt)
    if z == 0:
        return b"\x00" * G1_ENC_LEN
    return bytes([0x02 | (y & 1)]) + x.to_bytes(32, "big")


def g1_decompress(data: bytes):
    if len(data) != G1_ENC_LEN:
        raise ValueError("bad G1 encoding length")
    if data == b"\x00" * G1_ENC_LEN:
        return G1_INF
    flag = data[0]
    if flag not in (0x02, 0x03):
        raise ValueError("bad G1 flag byte")
    x = int.from_bytes(data[1:], "big")
    if x >= P:
        raise ValueError("G1 x out of range")
    y = fp_sqrt((x * x * x + CURVE_B) % P)
    if y is None:
        raise ValueError("G1 x not on curve")
    if y & 1 != flag & 1:
        y = P - y
    return (x, y, 1)


def g2_compress(pt) -> bytes:
    x, y, z = g2_affine(pt)
    if _is_zero(z):
        return b"\x00" * G2_ENC_LEN
    return bytes([0x02 | (y[1] & 1)]) + x[0].to_bytes(32, "big") + x[1].to_bytes(32, "big")


def g2_decompress(data: bytes):
    if len(data) != G2_ENC_LEN:
        raise ValueError("bad G2 encoding length")
    if data == b"\x00" * G2_ENC_LEN:
        return G2_INF
    flag = data[0]
    if flag not in (0x02, 0x03):
        raise ValueError("bad G2 flag byte")
    x = (int.from_bytes(data[1:33], "big"), int.from_bytes(data[33:], "big"))
    if x[0] >= P or x[1] >= P:
        raise ValueError("G2 x out of range")
    y = fp2_sqrt(fp2_add(fp2_mul_r(fp2_sq(x), x), TWIST_B))
    if y is None:
        raise ValueError("G2 x not on twist")
    if y[1] & 1 != flag & 1:
        y = fp2_neg(y)
        y = (y[0] % P, y[1] % P)
    pt = (x, y, FP2_ONE)
    if not g2_in_subgroup(pt):
        raise ValueError("G2 point not in subgroup")
    return pt


def gt_serialize(a) -> bytes:
    (xx, xy, xz), (yx, yy, yz) = fp12_norm(a)
    parts = [xx, xy, xz, yx, yy, yz]
    out = b"".join(c[0].to_bytes(32, "big") + c[1].to_bytes(32, "big") for c in parts)
    assert len(out) == GT_ENC_LEN
    return out


def gt_deserialize(data: bytes):
    if len(data) != GT_ENC_LEN:
        raise ValueError("bad GT encoding length")
    vals = [int.from_bytes(data[i : i + 32], "big") for i in range(0, GT_ENC_LEN, 32)]
    if any(v >= P for v in vals):
        raise ValueError("GT coefficient out of range")
    c = [(vals[i], vals[i + 1]) for i in range(0, 12, 2)]
    return ((c[0], c[1], c[2]), (c[3], c[4], c[5]))


# ---------------------------------------------------------------------------
# Optimal ate pairing.


def _to_naf(x: int):
    z = []
    while x > 0:
        if x % 2 == 0:
            z.append(0)
        else:
            d = 2 - (x % 4)
            x -= d
            z.append(d)
        x //= 2
    return z


_NAF_6UP2 = list(reversed(_to_naf(6 * BN_U + 2)))[1:]


def _line_add(r, p, q, r2):
    # Mixed addition step of the Miller loop; returns the line coefficients
    # (a, b, c) evaluated at the G1 point q and the new accumulator point.
    r_t = fp2_sq(r[2])
    B = fp2_mul(p[0], r_t)
    D = fp2_add(p[1], r[2])
    D = fp2_sub(fp2_sub(fp2_sq(D), r2), r_t)
    D = fp2_mul(D, r_t)
    H = fp2_sub(B, r[0])
    I = fp2_sq(H)
    E = fp2_dbl(fp2_dbl(I))
    J = fp2_mul(H, E)
    L1 = fp2_sub(fp2_sub(D, r[1]), r[1])
    V = fp2_mul(r[0], E)
    rx = fp2_sub(fp2_sub(fp2_sq(L1), J), fp2_dbl(V))
    rz = fp2_add(r[2], H)
    rz = fp2_sub(fp2_sub(fp2_sq(rz), r_t), I)
    t = fp2_mul(fp2_sub(V, rx), L1)
    t2 = fp2_dbl(fp2_mul(r[1], J))
    ry = fp2_sub(t, t2)
    r_out = (rx, ry, rz)

    t = fp2_add(p[1], rz)
    t = fp2_sub(fp2_sub(fp2_sq(t), r2), fp2_sq(rz))
    t2 = fp2_dbl(fp2_mul(L1, p[0]))
    a = fp2_sub(t2, t)
    c = fp2_dbl(fp2_mul_int(rz, q[1]))
    b = fp2_dbl(fp2_mul_int(fp2_neg(L1), q[0]))
    return a, b, c, r_out


def _line_double(r, q):
    r_t = fp2_sq(r[2])
    A = fp2_sq(r[0])
    B = fp2_sq(r[1])
    C = fp2_sq(B)
    D = fp2_sub(fp2_sub(fp2_sq(fp2_add(r[0], B)), A), C)
    D = fp2_dbl(D)
    E = fp2_add(fp2_dbl(A), A)
    F = fp2_sq(E)
    C8 = fp2_dbl(fp2_dbl(fp2_dbl(C)))
    rx = fp2_sub(F, fp2_dbl(D))
    ry = fp2_sub(fp2_mul(E, fp2_sub(D, rx)), C8)
    rz = fp2_sub(fp2_sub(fp2_sq(fp2_add(r[1], r[2])), B), r_t)
    r_out = (rx, ry, rz)

    a = fp2_add(r[0], E)
    a = fp2_sub(fp2_sq(a), fp2_add(fp2_add(A, F), fp2_dbl(fp2_dbl(B))))
    t = fp2_dbl(fp2_mul(E, r_t))
    b = fp2_mul_int(fp2_neg(t), q[0])
    c = fp2_dbl(fp2_mul_int(fp2_mul(rz, r_t), q[1]))
    return a, b, c, r_out


def _mul_line(f, a, b, c):
    # Sparse multiplication of f by the line (a*tau^2? ...) laid out as in the
    # dclxvi fp12e_mul_line routine.
    t1 = fp6_mul((FP2_ZERO, a, b), f[0])
    t3 = fp6_mul_fp2(f[1], c)
    fx = fp6_add(f[0], f[1])
    fy = t3
    fx = fp6_mul((FP2_ZERO, a, fp2_add(b, c)), fx)
    fx = fp6_sub(fp6_sub(fx, t1), fy)
    fy = fp6_add(fy, fp6_mul_tau(t1))
    return (fx, fy)


def miller_loop(g2pt, g1pt):
    Q = g2_affine(g2pt)
    Pg1 = g1_affine(g1pt)
    if _is_zero(Q[2]) or Pg1[2] == 0:
        return FP12_ONE
    q_aff = (Q[0], Q[1])
    p_aff = (Pg1[0], Pg1[1])
    mQ = (Q[0], fp2_neg(Q[1]))

    f = FP12_ONE
    T = (Q[0], Q[1], FP2_ONE)
    Qp = fp2_sq(Q[1])
    mQp = fp2_sq(mQ[1])

    for d in _NAF_6UP2:
        f = fp12_sq(f)
        a, b, c, T = _line_double(T, p_aff)
        f = _mul_line(f, a, b, c)
        if d == 1:
            a, b, c, T = _line_add(T, q_aff, p_aff, Qp)
            f = _mul_line(f, a, b, c)
        elif d == -1:
            a, b, c, T = _line_add(T, mQ, p_aff, mQp)
            f = _mul_line(f, a, b, c)

    # Frobenius twists of Q for the two final addition steps.
    Q1 = (fp2_mul_r(fp2_conj(Q[0]), XI1[1]), fp2_mul_r(fp2_conj(Q[1]), XI1[2]))
    Q2 = (fp2_mul_int(Q[0], XI2[1][1]), Q[1])

    Qp = fp2_sq(Q1[1])
    a, b, c, T = _line_add(T, Q1, p_aff, Qp)
    f = _mul_line(f, a, b, c)

    Qp = fp2_sq(Q2[1])
    a, b, c, T = _line_add(T, Q2, p_aff, Qp)
    f = _mul_line(f, a, b, c)
    return f


def final_exponentiation(f):
    t1 = fp12_conj(f)
    inv = fp12_inv(f)
    t1 = fp12_mul(t1, inv)
    t2 = fp12_frobenius_p2(t1)
    t1 = fp12_mul(t1, t2)

    fp1 = fp12_frobenius(t1)
    fp2_ = fp12_frobenius_p2(t1)
    fp3 = fp12_frobenius(fp2_)

    fu1 = fp12_exp(t1, BN_U)
    fu2 = fp12_exp(fu1, BN_U)
    fu3 = fp12_exp(fu2, BN_U)

    y3 = fp12_frobenius(fu1)
    fu2p = fp12_frobenius(fu2)
    fu3p = fp12_frobenius(fu3)
    y2 = fp12_frobenius_p2(fu2)

    y0 = fp12_mul(fp12_mul(fp1, fp2_), fp3)
    y1 = fp12_conj(t1)
    y5 = fp12_conj(fu2)
    y3 = fp12_conj(y3)
    y4 = fp12_conj(fp12_mul(fu1, fu2p))
    y6 = fp12_conj(fp12_mul(fu3, fu3p))

    t0 = fp12_mul(fp12_sq(y6), y4)
    t0 = fp12_mul(t0, y5)
    t1 = fp12_mul(fp12_mul(y3, y5), t0)
    t0 = fp12_mul(t0, y2)
    t1 = fp12_mul(fp12_sq(t1), t0)
    t1 = fp12_sq(t1)
    t0 = fp12_mul(t1, y1)
    t1 = fp12_mul(t1, y0)
    t0 = fp12_sq(t0)
    return fp12_norm(fp12_mul(t0, t1))


def pairing(g1pt, g2pt):
    """e(P, Q) for P in G1, Q in G2; returns an element of GT (F_p^12)."""
    if g1_affine(g1pt)[2] == 0 or _is_zero(g2_affine(g2pt)[2]):
        return FP12_ONE
    return final_exponentiation(miller_loop(g2pt, g1pt))


def gt_mul(a, b):
    return fp12_norm(fp12_mul(a, b))


def gt_exp(a, k: int):
    k %= ORDER
    if k == 0:
        return FP12_ONE
    return fp12_exp(a, k)


def gt_inv(a):
    # GT elements satisfy f^(p^6) = f^-1 (unitary after final exponentiation).
    return fp12_norm(fp12_conj(a))
