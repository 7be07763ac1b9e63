import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exfill.interval import (
    CERTAIN,
    IMPOSSIBLE,
    UNKNOWN,
    BranchCutViolation,
    ComplexInterval,
    ContainsZero,
    DivisionByZeroInterval,
    Interval,
    NegativeOperand,
    PI,
    HALF_PI,
    certainly_less,
    lobachevsky,
    lobachevsky_series,
    log_interval,
)

from oracles import sqrt_bounds, ulp_distance, lobachevsky_quadrature


def rand_float(rng):
    # Mix of magnitudes, signs, and exact small integers.
    kind = rng.randrange(5)
    if kind == 0:
        return float(rng.randrange(-8, 9))
    if kind == 1:
        return rng.uniform(-1e3, 1e3)
    if kind == 2:
        return rng.uniform(-1.0, 1.0)
    if kind == 3:
        return math.ldexp(rng.uniform(-1, 1), rng.randrange(-40, 40))
    return rng.uniform(-1e-6, 1e-6)


def rand_interval(rng):
    a, b = rand_float(rng), rand_float(rng)
    return Interval(min(a, b), max(a, b))


def frac(x):
    return Fraction(x)


class TestFieldOpsAgainstRationalOracle:
    def _check_op(self, op_name, x, y):
        fx_lo, fx_hi = frac(x.lo), frac(x.hi)
        fy_lo, fy_hi = frac(y.lo), frac(y.hi)
        if op_name == "add":
            z = x + y
            exact = [a + b for a in (fx_lo, fx_hi) for b in (fy_lo, fy_hi)]
        elif op_name == "sub":
            z = x - y
            exact = [a - b for a in (fx_lo, fx_hi) for b in (fy_lo, fy_hi)]
        elif op_name == "mul":
            z = x * y
            exact = [a * b for a in (fx_lo, fx_hi) for b in (fy_lo, fy_hi)]
        else:
            if y.lo <= 0 <= y.hi:
                with pytest.raises(DivisionByZeroInterval):
                    x / y
                return
            z = x / y
            exact = [a / b for a in (fx_lo, fx_hi) for b in (fy_lo, fy_hi)]
        lo, hi = min(exact), max(exact)
        # Containment of the exact endpoint set (equals the exact image
        # for these monotone-per-quadrant operations).
        assert frac(z.lo) <= lo, (op_name, x, y)
        assert frac(z.hi) >= hi, (op_name, x, y)
        # One-ulp tightness in the safe direction.
        assert frac(z.lo) == lo or ulp_distance(z.lo, float(lo)) <= 1
        assert frac(z.hi) == hi or ulp_distance(z.hi, float(hi)) <= 1

    def test_randomized_against_oracle(self):
        rng = random.Random(20140815)
        ops = ["add", "sub", "mul", "div"]
        for i in range(4000):
            x, y = rand_interval(rng), rand_interval(rng)
            self._check_op(ops[i % 4], x, y)

    def test_member_samples_stay_inside(self):
        rng = random.Random(7)
        for _ in range(1500):
            x, y = rand_interval(rng), rand_interval(rng)
            a = rng.uniform(x.lo, x.hi)
            b = rng.uniform(y.lo, y.hi)
            assert (x + y).contains(a + b)
            assert (x - y).contains(a - b)
            assert (x * y).contains(a * b)
            if not (y.lo <= 0 <= y.hi) and b != 0:
                assert (x / y).contains(a / b)


class TestSpecExamples:
    def test_add_exact_dyadic(self):
        assert Interval(1, 2) + Interval(3, 5) == Interval(4, 7)

    def test_mul_endpoint_products(self):
        assert Interval(-1, 2) * Interval(3, 4) == Interval(-4, 8)

    def test_sub_cross_endpoints(self):
        assert Interval(0, 1) - Interval(0, 1) == Interval(-1, 1)

    def test_div_exact_dyadic(self):
        assert Interval(1, 2) / Interval(2, 4) == Interval(0.25, 1.0)

    def test_div_by_zero_interval(self):
        with pytest.raises(DivisionByZeroInterval):
            Interval(1, 1) / Interval(-1, 1)

    def test_div_sign_handling(self):
        assert Interval(-2, 2) / Interval(-4, -2) == Interval(-1, 1)

    def test_sqrt_perfect_squares(self):
        assert Interval(4, 9).sqrt() == Interval(2, 3)

    def test_sqrt_zero(self):
        assert Interval(0, 0).sqrt() == Interval(0, 0)

    def test_sqrt_two_tight(self):
        z = Interval(2, 2).sqrt()
        lo, hi = sqrt_bounds(Fraction(2))
        assert Fraction(z.lo) <= lo and hi <= Fraction(z.hi)
        assert ulp_distance(z.lo, z.hi) <= 2

    def test_sqrt_negative(self):
        with pytest.raises(NegativeOperand):
            Interval(-1, 1).sqrt()

    def test_certainly_less(self):
        assert certainly_less(Interval(1, 2), 3.0) == CERTAIN
        assert certainly_less(Interval(5.9, 6.1), 6.0001) == UNKNOWN
        assert certainly_less(Interval(7, 8), 6.0001) == IMPOSSIBLE


class TestInclusionMonotonicity:
    @given(
        st.floats(-50, 50),
        st.floats(0.001, 10),
        st.floats(0, 1),
        st.floats(0, 1),
        st.floats(-50, 50),
        st.floats(0.001, 10),
        st.floats(0, 1),
        st.floats(0, 1),
    )
    @settings(max_examples=300, deadline=None)
    def test_nested_inputs_nest_outputs(self, am, aw, s1, s2, bm, bw, t1, t2):
        big_a = Interval(am - aw, am + aw)
        big_b = Interval(bm - bw, bm + bw)
        # Shrink inner intervals inside the outer ones.
        a = Interval(am - aw * s1, am + aw * s2)
        b = Interval(bm - bw * t1, bm + bw * t2)
        assert big_a.contains_interval(a) and big_b.contains_interval(b)
        assert (big_a + big_b).contains_interval(a + b)
        assert (big_a - big_b).contains_interval(a - b)
        assert (big_a * big_b).contains_interval(a * b)
        if not (big_b.lo <= 0 <= big_b.hi):
            assert (big_a / big_b).contains_interval(a / b)

    @given(st.floats(-30, 30), st.floats(-30, 30), st.floats(0, 4), st.floats(0, 4))
    @settings(max_examples=300, deadline=None)
    def test_certain_comparisons_never_lie(self, lo, hi, pad, c):
        if hi < lo:
            lo, hi = hi, lo
        x = Interval(lo, hi + pad)
        verdict = certainly_less(x, c)
        samples = [x.lo, x.hi, x.mid()]
        if verdict == CERTAIN:
            assert all(s < c for s in samples)
        elif verdict == IMPOSSIBLE:
            assert all(s >= c for s in samples)


class TestComplexBoxes:
    def test_mul_identity(self):
        one = ComplexInterval(complex(1.0, 0.0))
        z = ComplexInterval(Interval(0.3, 0.4), Interval(1.1, 1.2))
        w = one * z
        assert w.contains_box(z)

    def test_i_squared(self):
        i = ComplexInterval(complex(0.0, 1.0))
        assert (i * i).contains(complex(-1.0, 0.0))

    def test_monte_carlo_membership(self):
        rng = random.Random(99)
        for _ in range(400):
            a = ComplexInterval(rand_interval(rng), rand_interval(rng))
            b = ComplexInterval(rand_interval(rng), rand_interval(rng))
            za = complex(rng.uniform(a.re.lo, a.re.hi), rng.uniform(a.im.lo, a.im.hi))
            zb = complex(rng.uniform(b.re.lo, b.re.hi), rng.uniform(b.im.lo, b.im.hi))
            assert (a + b).contains(za + zb)
            assert (a - b).contains(za - zb)
            assert (a * b).contains(za * zb)
            if b.abs_sq().lo > 0 and zb != 0:
                assert (a / b).contains(za / zb)

    def test_complex_div_zero(self):
        with pytest.raises(DivisionByZeroInterval):
            ComplexInterval(complex(1, 0)) / ComplexInterval(
                Interval(-1, 1), Interval(-1, 1)
            )

    def test_clog_one(self):
        z = ComplexInterval(complex(1.0, 0.0)).widened(1e-14)
        w = z.log()
        assert w.contains(complex(0.0, 0.0))

    def test_clog_i(self):
        z = ComplexInterval(complex(0.0, 1.0)).widened(1e-14)
        w = z.log()
        assert w.im.contains(math.pi / 2)

    def test_clog_e(self):
        import mpmath

        with mpmath.workdps(40):
            e_hi = mpmath.e
            z = ComplexInterval(complex(math.e, 0.0)).widened(1e-14)
            w = z.log()
            lo, hi = Fraction(w.re.lo), Fraction(w.re.hi)
            log_of_float = mpmath.log(mpmath.mpf(math.e))
            assert lo <= Fraction(str(log_of_float)) <= hi
        assert w.re.contains(1.0)

    def test_clog_branch_cut(self):
        z = ComplexInterval(Interval(-2, -1), Interval(-0.1, 0.1))
        with pytest.raises(BranchCutViolation):
            z.log()

    def test_clog_zero(self):
        z = ComplexInterval(Interval(-0.1, 0.1), Interval(-0.1, 0.1))
        with pytest.raises(ContainsZero):
            z.log()

    def test_arg_samples(self):
        rng = random.Random(5)
        for _ in range(600):
            re = rand_interval(rng)
            im = rand_interval(rng)
            box = ComplexInterval(re, im)
            try:
                a = box.arg()
            except (ContainsZero, BranchCutViolation):
                continue
            for _ in range(6):
                z = complex(
                    rng.uniform(re.lo, re.hi), rng.uniform(im.lo, im.hi)
                )
                if z == 0:
                    continue
                assert a.contains(math.atan2(z.imag, z.real)) or (
                    # never accept values on the cut itself
                    z.imag == 0 and z.real < 0
                )


class TestElementary:
    def test_log_against_mpmath(self):
        import mpmath

        rng = random.Random(12)
        with mpmath.workdps(40):
            for _ in range(300):
                x = math.exp(rng.uniform(-20, 20))
                got = log_interval(Interval(x))
                want = mpmath.log(mpmath.mpf(x))
                assert Fraction(got.lo) <= Fraction(str(want)) <= Fraction(got.hi)
                assert got.width() < 1e-13 * max(1.0, abs(float(want)))

    def test_pi_enclosure(self):
        import mpmath

        with mpmath.workdps(40):
            true_pi = Fraction(str(+mpmath.pi))
        assert Fraction(PI.lo) <= true_pi <= Fraction(PI.hi)
        assert PI.width() < 1e-14


class TestLobachevsky:
    def test_zero(self):
        assert lobachevsky(Interval(0.0)).contains(0.0)

    def test_pi_periodicity(self):
        for t in (0.2, 0.9, 1.4, 2.2):
            a = lobachevsky(Interval(t))
            b = lobachevsky(Interval(t) + PI)
            assert a.overlaps(b)
            true_val = lobachevsky_quadrature(t)
            assert a.contains(true_val)

    def test_regular_tetrahedron_volume(self):
        # 3 Lob(pi/3) is the volume of the regular ideal tetrahedron.
        theta = Interval(math.pi / 3).widened(1e-15)
        v = lobachevsky(theta) * 3.0
        oracle = lobachevsky_quadrature(math.pi / 3) * 3.0
        assert v.contains(oracle)
        assert abs(oracle - 1.0149416064) < 1e-9
        assert v.width() < 1e-12

    def test_oddness(self):
        a = lobachevsky(Interval(-0.7))
        b = lobachevsky(Interval(0.7))
        assert a.overlaps(Interval(-b.hi, -b.lo))

    def test_against_quadrature(self):
        for t in (0.05, 0.3, math.pi / 6, 1.0, 2.0, 2.9):
            enc = lobachevsky(Interval(t))
            val = lobachevsky_quadrature(t)
            assert enc.contains(val), t
            assert enc.width() < 1e-12

    def test_sine_series_route_agrees(self):
        for t in (0.3, 1.0, 2.0):
            a = lobachevsky(Interval(t))
            b = lobachevsky_series(Interval(t), 4000)
            assert a.overlaps(b)
            assert b.contains(lobachevsky_quadrature(t))

    def test_wide_interval_enclosure(self):
        enc = lobachevsky(Interval(0.1, 2.9))
        for t in (0.1, 0.5236, 1.5, 2.61799, 2.9):
            assert enc.contains(lobachevsky_quadrature(t))
