"""Machine interval arithmetic with outward rounding.

Intervals are pairs of IEEE-754 binary64 endpoints [lo, hi] standing for
the set of reals between them.  Every operation returns an interval that
contains the exact image of its operands, with each endpoint at most one
ulp away from the exactly rounded value.

Directed rounding is realized without touching the FPU rounding mode:
round-to-nearest results are corrected by one step of math.nextafter
exactly when an error-free transformation (twoSum, Dekker's twoProd)
shows the rounded result lies on the wrong side.  All operations are
pure value computations, re-entrant, and safe under preemption; nothing
here mutates global state.
"""

from __future__ import annotations

import math

__all__ = [
    "Interval",
    "ComplexInterval",
    "IntervalError",
    "DivisionByZeroInterval",
    "NegativeOperand",
    "ContainsZero",
    "BranchCutViolation",
    "CERTAIN",
    "IMPOSSIBLE",
    "UNKNOWN",
    "certainly_less",
    "lobachevsky",
    "lobachevsky_series",
    "atan_interval",
    "sin_interval",
    "PI",
    "TWO_PI",
    "HALF_PI",
    "QUARTER_PI",
]


class IntervalError(ArithmeticError):
    """Base class for interval precondition failures."""


class DivisionByZeroInterval(IntervalError):
    """Divisor interval contains zero."""


class NegativeOperand(IntervalError):
    """sqrt or log of an interval reaching below its domain."""


class ContainsZero(IntervalError):
    """Complex box contains zero where it must not."""


class BranchCutViolation(IntervalError):
    """Complex box meets the closed negative real axis."""


_INF = math.inf
_MAX = 1.7976931348623157e308

# Dekker splitting constant 2**27 + 1 and over/underflow guards for the
# error-free product.  Outside the guarded range we fall back to an
# unconditional one-ulp nudge, still sound and still one-ulp tight.
_SPLITTER = 134217729.0
_BIG = math.ldexp(1.0, 996)
_TINY = math.ldexp(1.0, -1000)


def _down(x):
    return math.nextafter(x, -_INF)


def _up(x):
    return math.nextafter(x, _INF)


def _two_prod(a, b):
    # Dekker twoProd: a * b = p + e exactly, given no over/underflow.
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def add_down(a, b):
    s = a + b
    if s == _INF:
        return _MAX
    if s == -_INF:
        return s
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s if e >= 0.0 else _down(s)


def add_up(a, b):
    s = a + b
    if s == -_INF:
        return -_MAX
    if s == _INF:
        return s
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s if e <= 0.0 else _up(s)


def sub_down(a, b):
    return add_down(a, -b)


def sub_up(a, b):
    return add_up(a, -b)


def mul_down(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    if abs(a) >= _BIG or abs(b) >= _BIG:
        p = a * b
        return _MAX if p == _INF else _down(p)
    p, e = _two_prod(a, b)
    if p == _INF:
        return _MAX
    if p == -_INF:
        return p
    if abs(p) < _TINY:
        return _down(p)
    return p if e >= 0.0 else _down(p)


def mul_up(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    if abs(a) >= _BIG or abs(b) >= _BIG:
        p = a * b
        return -_MAX if p == -_INF else _up(p)
    p, e = _two_prod(a, b)
    if p == -_INF:
        return -_MAX
    if p == _INF:
        return p
    if abs(p) < _TINY:
        return _up(p)
    return p if e <= 0.0 else _up(p)


def _quotient_side(a, b, q):
    # Sign of (true quotient - q): a - q*b has that sign times sign(b).
    # q*b is within two ulps of a, so a - p is exact by Sterbenz.
    p, e = _two_prod(q, b)
    d = (a - p) - e
    if d == 0.0:
        return 0
    above = (d > 0.0) == (b > 0.0)
    return 1 if above else -1


def div_down(a, b):
    q = a / b
    if q == _INF:
        return _MAX
    if q == -_INF:
        return q
    if a == 0.0:
        return 0.0
    if q == 0.0 or abs(q) < _TINY or abs(q) >= _BIG or abs(b) >= _BIG:
        return _down(q)
    side = _quotient_side(a, b, q)
    return q if side >= 0 else _down(q)


def div_up(a, b):
    q = a / b
    if q == -_INF:
        return -_MAX
    if q == _INF:
        return q
    if a == 0.0:
        return 0.0
    if q == 0.0 or abs(q) < _TINY or abs(q) >= _BIG or abs(b) >= _BIG:
        return _up(q)
    side = _quotient_side(a, b, q)
    return q if side <= 0 else _up(q)


def sqrt_down(a):
    if a == 0.0:
        return 0.0
    s = math.sqrt(a)
    p, e = _two_prod(s, s)
    d = (a - p) - e
    return s if d >= 0.0 else _down(s)


def sqrt_up(a):
    if a == 0.0:
        return 0.0
    s = math.sqrt(a)
    p, e = _two_prod(s, s)
    d = (a - p) - e
    return s if d <= 0.0 else _up(s)


class Interval:
    """Closed interval [lo, hi] of reals with float64 endpoints.

    Infinite endpoints are permitted only as overflow sentinels; NaN is
    rejected.  Instances are immutable values.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise IntervalError("invalid endpoints [%r, %r]" % (lo, hi))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __repr__(self):
        return "Interval(%r, %r)" % (self.lo, self.hi)

    def __eq__(self, other):
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))

    # Set predicates.

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_interval(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_strict(self, other):
        return self.lo < other.lo and other.hi < self.hi

    def overlaps(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def width(self):
        return sub_up(self.hi, self.lo)

    def mid(self):
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return m

    def mag(self):
        return max(abs(self.lo), abs(self.hi))

    def mig(self):
        if self.lo > 0.0:
            return self.lo
        if self.hi < 0.0:
            return -self.hi
        return 0.0

    def hull(self, other):
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widened(self, delta):
        return Interval(sub_down(self.lo, delta), add_up(self.hi, delta))

    def scaled_about_mid(self, factor):
        m = self.mid()
        half = mul_up(max(sub_up(self.hi, m), sub_up(m, self.lo)), factor)
        return Interval(sub_down(m, half), add_up(m, half))

    # Arithmetic.

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(add_down(self.lo, other.lo), add_up(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other)
        return Interval(sub_down(self.lo, other.hi), sub_up(self.hi, other.lo))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(mul_down(a, c), mul_down(a, d), mul_down(b, c), mul_down(b, d))
        hi = max(mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0.0 <= other.hi:
            raise DivisionByZeroInterval(
                "division by interval [%r, %r] containing 0" % (other.lo, other.hi)
            )
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(div_down(a, c), div_down(a, d), div_down(b, c), div_down(b, d))
        hi = max(div_up(a, c), div_up(a, d), div_up(b, c), div_up(b, d))
        return Interval(lo, hi)

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def square(self):
        a, b = self.lo, self.hi
        if a >= 0.0:
            return Interval(mul_down(a, a), mul_up(b, b))
        if b <= 0.0:
            return Interval(mul_down(b, b), mul_up(a, a))
        return Interval(0.0, max(mul_up(a, a), mul_up(b, b)))

    def sqrt(self):
        if self.lo < 0.0:
            raise NegativeOperand("sqrt of [%r, %r]" % (self.lo, self.hi))
        return Interval(sqrt_down(self.lo), sqrt_up(self.hi))

    def abs(self):
        return Interval(self.mig(), self.mag())

    def log(self):
        if self.lo <= 0.0:
            raise NegativeOperand("log of [%r, %r]" % (self.lo, self.hi))
        return Interval(_log_point(self.lo).lo, _log_point(self.hi).hi)


def _as_interval(x):
    if isinstance(x, Interval):
        return x
    return Interval(float(x))


# Tri-state verified comparison, used with the 6.0001 slope bound: only
# endpoint comparisons, never an equality test.

CERTAIN = "certain"
IMPOSSIBLE = "impossible"
UNKNOWN = "unknown"


def certainly_less(a, c):
    """Compare an interval against a float threshold.

    Returns CERTAIN when every member of a is < c, IMPOSSIBLE when no
    member is, and UNKNOWN when the interval straddles the threshold.
    """
    if math.isnan(c):
        raise IntervalError("NaN threshold")
    if a.hi < c:
        return CERTAIN
    if a.lo >= c:
        return IMPOSSIBLE
    return UNKNOWN


# ----------------------------------------------------------------------
# Elementary enclosures: log, atan/arg, sin, Lobachevsky.
#
# log uses the atanh series after reduction to [1, 2); atan the Gregory
# series after reduction to |t| <= tan(pi/8).  Tail bounds are explicit
# and evaluated with directed rounding, so no libm accuracy assumption
# enters any enclosure.
# ----------------------------------------------------------------------


def _geometric_tail(power_hi, coeff, ratio_hi):
    # Upper bound for sum_{j>=0} power * ratio^j / coeff terms dominated
    # by a geometric series: power_hi / (coeff * (1 - ratio_hi)).
    denom = mul_down(float(coeff), sub_down(1.0, ratio_hi))
    return div_up(power_hi, denom)


def _atanh_series(t):
    # t * sum t^(2k)/(2k+1) for |t| well below 1, with geometric tail.
    t2 = t.square()
    acc = Interval(0.0)
    power = Interval(1.0)
    k = 0
    while True:
        acc = acc + power / (2 * k + 1)
        power = power * t2
        k += 1
        if power.hi / (2 * k + 1) < 1e-19 or k > 60:
            break
    acc = acc + Interval(0.0, _geometric_tail(power.hi, 2 * k + 1, t2.hi))
    return t * acc


def _log_core(m_iv):
    # log on [1, 2): 2 * atanh((m - 1)/(m + 1)).
    t = (m_iv - 1.0) / (m_iv + 1.0)
    return _atanh_series(t) * 2.0


def _log_point(x):
    # Enclosure of log(x) for a single positive float.
    m, e = math.frexp(x)  # x = m * 2**e with m in [0.5, 1)
    return _log_core(Interval(m + m)) + _LOG2 * (e - 1)


def log_interval(x_iv):
    """Enclosure of log over a positive interval."""
    if x_iv.lo <= 0.0:
        raise NegativeOperand("log of non-positive interval")
    return Interval(_log_point(x_iv.lo).lo, _log_point(x_iv.hi).hi)


_ATAN_REDUCE = 0.4142135623730951  # tan(pi/8)


def _atan_core(t_iv):
    # Gregory series on |t| <= ~0.45; alternating, decreasing terms.
    t2 = t_iv.square()
    acc = Interval(0.0)
    power = t_iv
    k = 0
    sign = 1.0
    while True:
        term = power / (2 * k + 1)
        acc = acc + (term if sign > 0 else -term)
        power = power * t2
        k += 1
        sign = -sign
        bound = power.mag() / (2 * k + 1)
        if bound < 1e-19 or k > 60:
            break
    return acc + Interval(-bound, bound)


def _atan_point(x):
    # Enclosure of atan at one float.
    if x < 0.0:
        r = _atan_point(-x)
        return Interval(-r.hi, -r.lo)
    if x > 1.0:
        lo_f = div_down(1.0, x)
        hi_f = div_up(1.0, x)
        inner = Interval(_atan_point(lo_f).lo, _atan_point(hi_f).hi)
        return HALF_PI - inner
    if x > _ATAN_REDUCE:
        t = (Interval(x) - 1.0) / (Interval(x) + 1.0)
        return QUARTER_PI + _atan_core(t)
    return _atan_core(Interval(x))


def atan_interval(x_iv):
    """Enclosure of atan over an interval (monotone, endpointwise)."""
    return Interval(_atan_point(x_iv.lo).lo, _atan_point(x_iv.hi).hi)


def _init_constants():
    global _LOG2, PI, TWO_PI, HALF_PI, QUARTER_PI
    _LOG2 = _atanh_series(Interval(1.0) / Interval(3.0)) * 2.0
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    a5 = _atan_core(Interval(1.0) / Interval(5.0))
    a239 = _atan_core(Interval(1.0) / Interval(239.0))
    PI = a5 * 16.0 - a239 * 4.0
    TWO_PI = PI * 2.0
    HALF_PI = PI / 2.0
    QUARTER_PI = PI / 4.0


_LOG2 = PI = TWO_PI = HALF_PI = QUARTER_PI = None


def sin_interval(x_iv):
    """Enclosure of sin over an interval, via reduction mod pi."""
    if x_iv.width() >= TWO_PI.lo:
        return Interval(-1.0, 1.0)
    n = math.floor(x_iv.mid() / math.pi + 0.5)
    y = x_iv - PI * n if n else x_iv
    s = _sin_core(y)
    if n % 2:
        s = -s
    return Interval(max(s.lo, -1.0), min(s.hi, 1.0))


def _sin_core(y_iv):
    # Taylor series with alternating tail bound, valid for |y| <= ~5.
    y2 = y_iv.square()
    acc = Interval(0.0)
    power = y_iv
    k = 0
    sign = 1.0
    while True:
        acc = acc + (power if sign > 0 else -power)
        power = power * y2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        sign = -sign
        bound = power.mag()
        if bound < 1e-19 or k > 40:
            break
    return acc + Interval(-bound, bound)


_init_constants()


# zeta(2k) enclosures for the Lobachevsky expansion.  Small k use the
# Euler values zeta(2k) = c_k pi^(2k); they are cross-checked at first
# use against the partial-sum-plus-integral-tail enclosure, which is
# sound on its own but only tight once the exponent is large.

_ZETA_EVEN = []

_ZETA_RATIONAL = {
    2: (1, 6),
    4: (1, 90),
    6: (1, 945),
    8: (1, 9450),
    10: (1, 93555),
    12: (691, 638512875),
}


def _ipow(base_iv, n):
    acc = Interval(1.0)
    for _ in range(n):
        acc = acc * base_iv
    return acc


def _zeta_brute(s, M=24):
    acc = Interval(1.0)
    for n in range(2, M + 1):
        acc = acc + Interval(1.0) / _ipow(Interval(float(n)), s)
    pw_hi = _ipow(Interval(float(M)), s - 1)
    pw_lo = _ipow(Interval(float(M + 1)), s - 1)
    tail_hi = div_up(1.0, mul_down(pw_hi.lo, float(s - 1)))
    tail_lo = div_down(1.0, mul_up(pw_lo.hi, float(s - 1)))
    return acc + Interval(tail_lo, tail_hi)


def _zeta_even(k):
    # zeta(2(k+1)), cached.
    while len(_ZETA_EVEN) <= k:
        s = 2 * len(_ZETA_EVEN) + 2
        brute = _zeta_brute(s)
        if s in _ZETA_RATIONAL:
            p, q = _ZETA_RATIONAL[s]
            exact = _ipow(PI, s) * Interval(float(p)) / Interval(float(q))
            if not brute.overlaps(exact):
                raise IntervalError("zeta(%d) tabulated value failed check" % s)
            value = exact
        else:
            value = brute
        _ZETA_EVEN.append(value)
    return _ZETA_EVEN[k]


# Critical points of the Lobachevsky function on [0, pi]: maximum at
# pi/6, minimum at 5 pi/6.  Tiny float brackets around them.
_PEAK = Interval(math.pi / 6.0).widened(1e-13)
_TROUGH = Interval(5.0 * math.pi / 6.0).widened(1e-13)


def lobachevsky(theta, terms=None):
    """Enclosure of the Lobachevsky function over an interval.

    Lob(t) = -integral_0^t log|2 sin u| du = (1/2) sum_n sin(2nt)/n^2.
    Evaluated through the logarithmic expansion

        Lob(t) = t - t log(2t) + t sum_k zeta(2k)/(k(2k+1)) (t/pi)^(2k)

    on (0, pi), with a rigorous geometric tail bound; pi-periodicity and
    oddness reduce the argument.  ``terms`` caps the series length
    (None picks enough terms for full double precision).
    """
    if theta.width() >= PI.lo:
        m = _lob_point(_PEAK, terms).hi
        return Interval(-m, m)
    n = math.floor(theta.mid() / math.pi + 0.5)
    y = theta - PI * n if n else theta
    if y.lo >= 0.0:
        return _lob_nonneg(y, terms)
    if y.hi <= 0.0:
        r = _lob_nonneg(-y, terms)
        return Interval(-r.hi, -r.lo)
    a = _lob_nonneg(Interval(0.0, -y.lo), terms)
    b = _lob_nonneg(Interval(0.0, y.hi), terms)
    return Interval(-a.hi, b.hi)


def _lob_nonneg(y, terms):
    # Enclosure over [y.lo, y.hi] inside [0, pi), via the monotonicity
    # pattern up / down / up with turning points pi/6 and 5 pi/6.
    los = []
    his = []
    for t in (y.lo, y.hi):
        v = _lob_point(Interval(t), terms)
        los.append(v.lo)
        his.append(v.hi)
    if y.lo < _PEAK.hi and y.hi > _PEAK.lo:
        his.append(_lob_point(_PEAK, terms).hi)
    if y.lo < _TROUGH.hi and y.hi > _TROUGH.lo:
        los.append(_lob_point(_TROUGH, terms).lo)
    return Interval(min(los), max(his))


def _lob_point(y, terms):
    # The logarithmic expansion at a thin interval inside [0, pi).
    if y.hi == 0.0:
        return Interval(0.0)
    if y.lo <= 0.0:
        # Thin interval touching 0: Lob is increasing there and
        # Lob(t) <= t (1 - log 2t) gives the upper envelope.
        top = _lob_point(Interval(y.hi), terms)
        return Interval(0.0, max(top.hi, 0.0))
    ratio = (y / PI).square()
    acc = Interval(0.0)
    power = ratio
    k = 1
    kmax = terms if terms is not None else 80
    while True:
        acc = acc + _zeta_even(k - 1) * power / float(k * (2 * k + 1))
        power = power * ratio
        k += 1
        if k > kmax or power.hi / (k * (2 * k + 1)) < 1e-20:
            break
    if ratio.hi >= 1.0:
        raise IntervalError("Lobachevsky argument not inside (0, pi)")
    # zeta(2k) < 2 for all k >= 1 dominates the tail geometrically.
    tail = _geometric_tail(mul_up(2.0, power.hi), k * (2 * k + 1), ratio.hi)
    acc = acc + Interval(0.0, tail)
    return y - y * log_interval(y * 2.0) + y * acc


def lobachevsky_series(theta, n_terms=10000):
    """Sine-series evaluation (1/2) sum_{n<=N} sin(2nt)/n^2 with an
    Abel-summation tail bound; the independent cross-check route for
    ``lobachevsky``.
    """
    n = math.floor(theta.mid() / math.pi + 0.5)
    y = theta - PI * n if n else theta
    acc = Interval(0.0)
    for m in range(1, n_terms + 1):
        acc = acc + sin_interval(y * (2.0 * m)) / float(m * m)
    # Abel: |sum_{m>N} sin(2my)/m^2| <= 1/((N+1)^2 |sin y|), and
    # |sin y| >= (2/pi) min(|y|, pi - |y|) on [-pi, pi] by concavity.
    ay = y.abs()
    dist = min(ay.lo, max(PI.lo - ay.hi, 0.0))
    if dist <= 0.0:
        tail = div_up(1.0, float(n_terms))  # crude sum 1/m^2 tail
    else:
        sin_lo = mul_down(2.0 / math.pi, dist)
        tail = div_up(1.0, mul_down(float(n_terms + 1) ** 2, sin_lo))
    half_tail = mul_up(0.5, tail)
    return acc * 0.5 + Interval(-half_tail, half_tail)


# ----------------------------------------------------------------------
# Rectangular complex intervals.
# ----------------------------------------------------------------------


class ComplexInterval:
    """Axis-aligned rectangle re x im in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if isinstance(re, complex) and im is None:
            re, im = Interval(re.real), Interval(re.imag)
        if im is None:
            im = Interval(0.0)
        if not isinstance(re, Interval):
            re = Interval(float(re))
        if not isinstance(im, Interval):
            im = Interval(float(im))
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexInterval is immutable")

    def __repr__(self):
        return "ComplexInterval(%r, %r)" % (self.re, self.im)

    def __eq__(self, other):
        return (
            isinstance(other, ComplexInterval)
            and self.re == other.re
            and self.im == other.im
        )

    def __hash__(self):
        return hash((self.re, self.im))

    def contains(self, z):
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def contains_box(self, other):
        return self.re.contains_interval(other.re) and self.im.contains_interval(
            other.im
        )

    def contains_strict(self, other):
        return self.re.contains_strict(other.re) and self.im.contains_strict(other.im)

    def mid(self):
        return complex(self.re.mid(), self.im.mid())

    def width(self):
        return max(self.re.width(), self.im.width())

    def hull(self, other):
        return ComplexInterval(self.re.hull(other.re), self.im.hull(other.im))

    def widened(self, delta):
        return ComplexInterval(self.re.widened(delta), self.im.widened(delta))

    def scaled_about_mid(self, factor):
        return ComplexInterval(
            self.re.scaled_about_mid(factor), self.im.scaled_about_mid(factor)
        )

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __add__(self, other):
        other = _as_cbox(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_cbox(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_cbox(other) - self

    def __mul__(self, other):
        other = _as_cbox(other)
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_cbox(other)
        den = other.re.square() + other.im.square()
        if den.lo <= 0.0:
            raise DivisionByZeroInterval("complex divisor box meets 0")
        num = self * other.conjugate()
        return ComplexInterval(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return _as_cbox(other) / self

    def conjugate(self):
        return ComplexInterval(self.re, -self.im)

    def abs_sq(self):
        return self.re.square() + self.im.square()

    def abs(self):
        return self.abs_sq().sqrt()

    def arg(self):
        """Enclosure of the principal argument.  The box must avoid zero
        and the closed negative real axis."""
        x, y = self.re, self.im
        if x.lo > 0.0:
            return _atan_quotient(y, x)
        if y.lo > 0.0:
            return HALF_PI - _atan_quotient(x, y)
        if y.hi < 0.0:
            return -(HALF_PI - _atan_quotient(x, -y))
        if x.hi < 0.0:
            raise BranchCutViolation("box meets the negative real axis")
        raise ContainsZero("argument of a box containing 0")

    def log(self):
        """Principal-branch complex log enclosure."""
        r2 = self.abs_sq()
        if r2.lo <= 0.0:
            raise ContainsZero("log of a box containing 0")
        return ComplexInterval(log_interval(r2) * 0.5, self.arg())


def _atan_quotient(y, x):
    # atan(y/x) over a rectangle with x.lo > 0: monotone increasing in y,
    # monotone in x away from y = 0.
    lo_q = div_down(y.lo, x.hi if y.lo >= 0.0 else x.lo)
    hi_q = div_up(y.hi, x.lo if y.hi >= 0.0 else x.hi)
    return Interval(_atan_point(lo_q).lo, _atan_point(hi_q).hi)


def _as_cbox(z):
    if isinstance(z, ComplexInterval):
        return z
    if isinstance(z, Interval):
        return ComplexInterval(z, Interval(0.0))
    if isinstance(z, complex):
        return ComplexInterval(Interval(z.real), Interval(z.imag))
    return ComplexInterval(Interval(float(z)), Interval(0.0))
