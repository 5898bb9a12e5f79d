"""Dense univariate polynomials over Q as plain lists of Fractions.

Coefficients run from low to high degree and the zero polynomial is [].
These helpers stay exact; they back the Gauss norm, disk images and the
resultant computations elsewhere in the package.
"""

from fractions import Fraction

from .errors import ZeroPolynomial


def trim(cs):
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def degree(cs):
    cs = trim(cs)
    if not cs:
        raise ZeroPolynomial("the zero polynomial has no degree")
    return len(cs) - 1


def add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    return add(a, [-Fraction(c) for c in b])


def scale(a, k):
    k = Fraction(k)
    return trim([k * c for c in a])


def mul(a, b):
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def pow_(a, n):
    out = [Fraction(1)]
    base = trim(a)
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def evaluate(cs, x):
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(trim(cs)):
        acc = acc * x + c
    return acc


def shift(cs, a):
    """Coefficients of P(T + a), by repeated synthetic division."""
    a = Fraction(a)
    out = [Fraction(c) for c in cs]
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return out


def compose(outer, inner):
    """Coefficients of outer(inner(T)), Horner style."""
    acc = []
    for c in reversed(trim(outer)):
        acc = add(mul(acc, inner), [Fraction(c)])
    return acc


def divmod_(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, cb in enumerate(b):
            r[i + k] -= c * cb
        r = trim(r)
    return trim(q), r


def gcd(a, b):
    """Monic gcd over Q."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def derivative(cs):
    return trim([i * c for i, c in enumerate(cs)][1:])


def content_and_primitive(cs):
    """Split off the positive rational content, leaving primitive integer
    coefficients whose leading entry keeps the original sign."""
    cs = trim(cs)
    if not cs:
        raise ZeroPolynomial("the zero polynomial has no content")
    from math import gcd as igcd, lcm

    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = igcd(g, abs(c))
    return Fraction(g, den), [c // g for c in ints]
