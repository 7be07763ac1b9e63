"""Independent oracles shared by the test modules.

Everything here deliberately avoids the code paths under test: exact
rational arithmetic for the field operations, bisection for square
roots, and high precision quadrature (mpmath) for the Lobachevsky
function.
"""

import math
from fractions import Fraction


def exact_add(a, b):
    return a + b


def exact_sub(a, b):
    return a - b


def exact_mul(a, b):
    return a * b


def exact_div(a, b):
    return a / b


def sqrt_bounds(x, bits=80):
    """Rational lower and upper bounds for sqrt(x), x a Fraction >= 0,
    by plain bisection."""
    if x == 0:
        return Fraction(0), Fraction(0)
    lo = Fraction(0)
    hi = max(Fraction(1), x)
    for _ in range(bits + (abs(x.numerator.bit_length() - x.denominator.bit_length()))):
        mid = (lo + hi) / 2
        if mid * mid <= x:
            lo = mid
        else:
            hi = mid
    return lo, hi


def ulp_distance(a, b):
    """Number of representable doubles strictly between a and b
    (0 when equal), walking with nextafter.  Caps at 16."""
    if a == b:
        return 0
    if a > b:
        a, b = b, a
    n = 0
    x = a
    while x < b and n <= 16:
        x = math.nextafter(x, math.inf)
        n += 1
    return n


def lobachevsky_quadrature(theta, digits=40):
    """High precision quadrature of -int_0^theta log|2 sin t| dt."""
    import mpmath

    with mpmath.workdps(digits):
        t = mpmath.mpf(theta)
        val = -mpmath.quad(lambda u: mpmath.log(abs(2 * mpmath.sin(u))), [0, t])
        return float(val)
