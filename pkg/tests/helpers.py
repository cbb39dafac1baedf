"""Independent brute-force oracles and generators shared by the tests.

Nothing here may call back into ordersix arithmetic: these are the second
route that the library is checked against.
"""

from fractions import Fraction
from math import gcd

from ordersix.series import QSeries


def poly_mul(a, b, n):
    """Truncated product of dense coefficient lists."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] += x * y
    return out


def poly_div(a, b, n):
    """Truncated quotient a/b for lists with b[0] == 1."""
    assert b[0] == 1
    out = []
    for k in range(n):
        s = a[k] if k < len(a) else 0
        for i in range(1, min(k, len(b) - 1) + 1):
            s -= b[i] * out[k - i]
        out.append(s)
    return out


def direct_euler(scale, prec):
    """prod (1 - q^(scale*n)) by multiplying the factors one at a time."""
    out = [1] + [0] * (prec - 1)
    n = 1
    while scale * n < prec:
        f = [0] * prec
        f[0] = 1
        f[scale * n] = -1
        out = poly_mul(out, f, prec)
        n += 1
    return out


def sparse_product(exponent_sign_pairs, prec):
    """prod (1 - q^e) over the given exponents (all below prec)."""
    out = [1] + [0] * (prec - 1)
    for e in exponent_sign_pairs:
        f = [0] * prec
        f[0] = 1
        f[e] = -1
        out = poly_mul(out, f, prec)
    return out


def random_series(rng, nonzero=False, h_choices=(1, 2, 3, 4, 6)):
    h = rng.choice(h_choices)
    val = rng.randint(-6, 6)
    length = rng.randint(1 if nonzero else 0, 12)
    coeffs = []
    for _ in range(length):
        if rng.random() < 0.25:
            coeffs.append(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        else:
            coeffs.append(rng.randint(-9, 9))
    if nonzero and (not coeffs or not coeffs[0]):
        if not coeffs:
            coeffs = [1]
        coeffs[0] = rng.choice([1, -1, 2, -3])
    return QSeries(coeffs, val=val, prec=val + length, h=h)


def primitive(vec):
    """Scale a rational vector to a primitive integer tuple, first nonzero
    entry positive."""
    fracs = [Fraction(x) for x in vec]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)
