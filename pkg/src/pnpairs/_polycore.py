"""List-based polynomial arithmetic over an arbitrary coefficient field.

Coefficients ascend by degree; the zero polynomial is the empty list.  Field
objects supply add/sub/neg/mul/inv/pow_ plus zero/one/order (see gf).  These
routines back both the tower-modulus search and the Poly class.
"""

from __future__ import annotations


def trim(field, cs):
    i = len(cs)
    while i > 0 and cs[i - 1] == field.zero:
        i -= 1
    return cs[:i]


def degree(cs) -> int:
    return len(cs) - 1


def add(field, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return trim(field, out)


def neg(field, a):
    return [field.neg(c) for c in a]


def sub(field, a, b):
    return add(field, a, neg(field, b))


def scale(field, c, a):
    if c == field.zero:
        return []
    return trim(field, [field.mul(c, x) for x in a])


def mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == field.zero:
            continue
        for j, y in enumerate(b):
            if y != field.zero:
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(field, out)


def divmod_(field, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = degree(b), b[-1]
    if degree(a) < db:
        return [], trim(field, a)
    inv_lb = field.inv(lb)
    quo = [field.zero] * (degree(a) - db + 1)
    for i in range(degree(a) - db, -1, -1):
        c = a[i + db]
        if c == field.zero:
            continue
        coef = field.mul(c, inv_lb)
        quo[i] = coef
        for j, y in enumerate(b):
            if y != field.zero:
                a[i + j] = field.sub(a[i + j], field.mul(coef, y))
    return quo, trim(field, a)


def mod(field, a, b):
    return divmod_(field, a, b)[1]


def monic(field, a):
    if not a:
        return []
    lead = a[-1]
    if lead == field.one:
        return list(a)
    return scale(field, field.inv(lead), a)


def gcd(field, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, mod(field, a, b)
    return monic(field, a)


def extended_gcd(field, a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = divmod_(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(field, s0, mul(field, q, s1))
        t0, t1 = t1, sub(field, t0, mul(field, q, t1))
    if not r0:
        return [], s0, t0
    lead_inv = field.inv(r0[-1])
    return scale(field, lead_inv, r0), scale(field, lead_inv, s0), scale(field, lead_inv, t0)


def invmod(field, a, m):
    g, s, _ = extended_gcd(field, a, m)
    if degree(g) != 0:
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    return mod(field, s, m)


def mulmod(field, a, b, m):
    return mod(field, mul(field, a, b), m)


def powmod(field, a, n: int, m):
    if n < 0:
        raise ValueError("negative exponent")
    out = [field.one]
    base = mod(field, a, m)
    while n:
        if n & 1:
            out = mulmod(field, out, base, m)
        base = mulmod(field, base, base, m)
        n >>= 1
    return out


def eval_at(field, a, x):
    out = field.zero
    for c in reversed(a):
        out = field.add(field.mul(out, x), c)
    return out


def derivative(field, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        s = field.zero
        for _ in range(i % field.char if hasattr(field, "char") else i):
            s = field.add(s, c)
        out.append(s)
    return trim(field, out)


def x_poly(field):
    return [field.zero, field.one]


def is_irreducible(field, f) -> bool:
    """Monic f over a finite field of order field.order; degree >= 1."""
    d = degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if f[0] == field.zero:  # divisible by x
        return False
    q = field.order
    x = x_poly(field)
    # x^(q^d) == x mod f
    xp = powmod(field, x, q**d, f)
    if trim(field, xp) != trim(field, x):
        return False
    # gcd(x^(q^(d/r)) - x, f) == 1 for each prime r | d
    dd = d
    primes = []
    t = 2
    while t * t <= dd:
        if dd % t == 0:
            primes.append(t)
            while dd % t == 0:
                dd //= t
        t += 1
    if dd > 1:
        primes.append(dd)
    for r in primes:
        xe = powmod(field, x, q ** (d // r), f)
        g = gcd(field, sub(field, xe, x), f)
        if degree(g) != 0:
            return False
    return True
