"""Univariate polynomial arithmetic and small-degree exact factorization.

Polynomials are normalized little-endian coefficient tuples over a
:class:`~sialg.fields.Field`; the zero polynomial is ``()``.  Over GF(p)
factorization runs squarefree / distinct-degree / equal-degree splitting;
over the rationals it reduces mod one large prime and recombines factor
subsets (fine at the small degrees this pipeline produces, no attempt at
industrial-strength factoring).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd, isqrt, lcm

from .errors import BadParams
from .fields import Field, next_prime


def normalize(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(f) -> int:
    return len(f) - 1


def constant(field, c) -> tuple:
    c = field(c)
    return (c,) if c else ()


def add(f, g) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return normalize(out)


def sub(f, g) -> tuple:
    out = list(f) + [c * 0 for c in g[len(f):]]
    for i, c in enumerate(g):
        out[i] = out[i] - c
    return normalize(out)


def scale(f, c) -> tuple:
    if not c:
        return ()
    return normalize([a * c for a in f])


def mul(f, g) -> tuple:
    if not f or not g:
        return ()
    out = [f[0] * g[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return normalize(out)


def divmod_poly(f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [g[-1] * 0] * max(len(f) - len(g) + 1, 0)
    inv_lead = 1 / g[-1]
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] * inv_lead
        if c:
            q[i] = c
            for j, b in enumerate(g):
                f[i + j] = f[i + j] - c * b
    return normalize(q), normalize(f)


def mod(f, g):
    return divmod_poly(f, g)[1]


def monic(f) -> tuple:
    if not f:
        return ()
    inv = 1 / f[-1]
    return normalize([c * inv for c in f])


def gcd(f, g) -> tuple:
    while g:
        f, g = g, mod(f, g)
    return monic(f)


def xgcd(f, g):
    """Monic g0 = gcd(f, g) together with u, v such that u*f + v*g = g0."""
    r0, r1 = f, g
    one = ()
    if f:
        one = (f[-1] / f[-1],)
    elif g:
        one = (g[-1] / g[-1],)
    s0, s1 = one, ()
    t0, t1 = (), one
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), s0, t0
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(f, field) -> tuple:
    return normalize([field(i) * c for i, c in enumerate(f)][1:])


def pow_mod(f, e: int, m) -> tuple:
    result = (m[-1] / m[-1],)
    f = mod(f, m)
    while e:
        if e & 1:
            result = mod(mul(result, f), m)
        f = mod(mul(f, f), m)
        e >>= 1
    return result


def evaluate(f, x):
    acc = 0 * x
    for c in reversed(f):
        acc = acc * x + c
    return acc


# -- factorization over GF(p) ------------------------------------------------


def _squarefree_fp(field: Field, f) -> list:
    p = field.p
    out = []
    if degree(f) < 1:
        return out
    d = derivative(f, field)
    if not d:
        # f = v(x^p); p-th roots of GF(p) coefficients are themselves
        return [(g, m * p) for g, m in _squarefree_fp(field, normalize(f[::p]))]
    c = gcd(f, d)
    w = divmod_poly(f, c)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(w, c)
        fac = divmod_poly(w, y)[0]
        if degree(fac) > 0:
            out.append((monic(fac), i))
        w = y
        c = divmod_poly(c, y)[0]
        i += 1
    if degree(c) > 0:
        out.extend((g, m * p) for g, m in _squarefree_fp(field, normalize(c[::p])))
    return out


def _equal_degree_split(field: Field, f, d: int, rng) -> list:
    if degree(f) == d:
        return [f]
    p = field.p
    one = (field.one,)
    while True:
        a = normalize([field(rng.randrange(p)) for _ in range(degree(f))])
        if degree(a) < 1:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                b = pow_mod(b, 2, f)
                t = add(t, b)
            h = gcd(t, f)
        else:
            b = pow_mod(a, (p**d - 1) // 2, f)
            h = gcd(sub(b, one), f)
        if 0 < degree(h) < degree(f):
            g = divmod_poly(f, h)[0]
            return _equal_degree_split(field, monic(h), d, rng) + _equal_degree_split(
                field, monic(g), d, rng
            )


def _factor_squarefree_fp(field: Field, f) -> list:
    p = field.p
    out = []
    x = (field.zero, field.one)
    h = x
    rest = f
    d = 1
    while degree(rest) >= 2 * d:
        h = pow_mod(h, p, rest)
        g = gcd(sub(h, x), rest)
        if degree(g) > 0:
            rng = random.Random(p * 1000003 + d * 101 + degree(rest))
            out.extend(_equal_degree_split(field, monic(g), d, rng))
            rest = divmod_poly(rest, g)[0]
            h = mod(h, rest) if rest else h
        d += 1
    if degree(rest) > 0:
        out.append(monic(rest))
    return out


# -- factorization over the rationals ----------------------------------------


def _squarefree_char0(f) -> list:
    out = []
    fd = normalize([Fraction(i) * c for i, c in enumerate(f)][1:])
    c = gcd(f, fd)
    w = divmod_poly(f, c)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(w, c)
        fac = divmod_poly(w, y)[0]
        if degree(fac) > 0:
            out.append((monic(fac), i))
        w = y
        c = divmod_poly(c, y)[0]
        i += 1
    return out


def _primitive_int(f):
    """Scale a rational polynomial to primitive integer coefficients, lc > 0."""
    den = lcm(*(c.denominator for c in f)) if f else 1
    ints = [int(c * den) for c in f]
    content = 0
    for c in ints:
        content = int_gcd(content, c)
    if ints[-1] < 0:
        content = -content
    return [c // content for c in ints]


def _max_norm(ints) -> int:
    return max(abs(c) for c in ints)


def _factor_squarefree_rational(f) -> list:
    """Monic rational irreducible factors of a squarefree monic-able f."""
    n = degree(f)
    if n == 1:
        return [monic(f)]
    g = _primitive_int(f)
    lead = g[-1]
    # coefficient bound for integer factors of lead*g, with generous slack
    bound = (n + 1) * (isqrt(n + 1) + 1) * (2**n) * _max_norm(g) * abs(lead)
    p = next_prime(max(2 * bound + 1, 101))
    while True:
        field = Field(p)
        if g[-1] % p:
            gp = normalize([field(c) for c in g])
            if degree(gcd(gp, derivative(gp, field))) == 0:
                break
        p = next_prime(p + 1)
    pool = _factor_squarefree_fp(field, monic(gp))
    pool.sort()
    found = []
    current = [Fraction(c) for c in g]

    def lift(mod_poly, lead_now):
        out = []
        for c in mod_poly:
            v = c.value * lead_now % p
            if v > p // 2:
                v -= p
            out.append(Fraction(v))
        return normalize(out)

    k = 1
    while 2 * k <= len(pool):
        retry = False
        for idx in combinations(range(len(pool)), k):
            prod = (field.one,)
            for i in idx:
                prod = mul(prod, pool[i])
            lead_now = int(current[-1])
            cand = lift(prod, lead_now)
            cand = normalize([Fraction(c) for c in _primitive_int(cand)])
            if not cand or degree(cand) < 1:
                continue
            q, r = divmod_poly(tuple(current), cand)
            if not r:
                found.append(monic(cand))
                current = list(q)
                pool = [pl for i, pl in enumerate(pool) if i not in idx]
                retry = True
                break
        if not retry:
            k += 1
    if degree(normalize(current)) > 0:
        found.append(monic(normalize(current)))
    return found


def factor(field: Field, f):
    """Factor f into monic irreducibles: returns (unit, [(factor, mult), ...]).

    The unit times the product of factor powers re-multiplies to f exactly.
    """
    f = normalize([field(c) for c in f])
    if not f:
        raise BadParams("cannot factor the zero polynomial")
    unit = f[-1]
    f = monic(f)
    if degree(f) < 1:
        return unit, []
    if field.p is None:
        blocks = _squarefree_char0(f)
        out = []
        for g, m in blocks:
            for h in _factor_squarefree_rational(g):
                out.append((h, m))
    else:
        out = []
        for g, m in _squarefree_fp(field, f):
            for h in _factor_squarefree_fp(field, g):
                out.append((h, m))
    out.sort()
    return unit, out
