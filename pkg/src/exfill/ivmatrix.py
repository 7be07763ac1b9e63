"""Verified complex interval matrices over numpy.

Midpoint-radius (disc) representation: a matrix of complex midpoints
plus a matrix of real radii.  Products are computed with round-to-
nearest BLAS and the rounding error is absorbed into the radius through
a standard a-priori bound: for a dot product of length n the floating
point result differs from the exact one by at most gamma * sum|terms|
with gamma about (2n+8)u, plus an underflow allowance.  The factors
used here are deliberately generous; tightness costs nothing compared
to the enclosure widths coming from the scalar interval evaluations.

Only containment is promised, never tightness: discs overestimate the
rectangular boxes slightly, which the Krawczyk epsilon-inflation loop
tolerates.
"""

from __future__ import annotations

import numpy as np

from .interval import ComplexInterval, Interval, add_up, mul_up, sub_up

_U = 2.0 ** -53
_REALMIN = 2.2250738585072014e-308


def _inflate(rad, n):
    # Upper bound for a nonnegative float array computed with <= ~4n
    # roundings, plus underflow slack.
    out = rad * (1.0 + (8.0 * n + 64.0) * _U) + (n + 4) * 4.0 * _REALMIN
    return np.nextafter(out, np.inf)


class CIMatrix:
    """Complex interval matrix as midpoint + radius ndarrays."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad):
        self.mid = np.asarray(mid, dtype=np.complex128)
        self.rad = np.asarray(rad, dtype=np.float64)
        if self.mid.shape != self.rad.shape:
            raise ValueError("midpoint and radius shapes differ")
        if np.any(self.rad < 0) or not np.all(np.isfinite(self.rad)):
            raise ValueError("invalid radii")

    @property
    def shape(self):
        return self.mid.shape

    @classmethod
    def exact(cls, mid):
        mid = np.asarray(mid, dtype=np.complex128)
        return cls(mid, np.zeros(mid.shape))

    @classmethod
    def eye(cls, n):
        return cls.exact(np.eye(n))

    @classmethod
    def from_boxes(cls, boxes):
        """Build from a nested sequence (or flat vector) of
        ComplexInterval rectangles; each disc covers its rectangle."""
        arr = np.asarray(boxes, dtype=object)
        mid = np.zeros(arr.shape, dtype=np.complex128)
        rad = np.zeros(arr.shape, dtype=np.float64)
        flat_boxes = arr.ravel()
        flat_mid = mid.ravel()
        flat_rad = rad.ravel()
        for i, box in enumerate(flat_boxes):
            m = box.mid()
            flat_mid[i] = m
            # Rectangle corner distance, rounded up.
            dre = max(sub_up(box.re.hi, m.real), sub_up(m.real, box.re.lo))
            dim = max(sub_up(box.im.hi, m.imag), sub_up(m.imag, box.im.lo))
            h = np.hypot(dre, dim)
            flat_rad[i] = add_up(mul_up(h, 1.0 + 8.0 * _U), 4.0 * _REALMIN)
        return cls(mid, rad)

    def to_boxes(self):
        """Rectangles covering the discs, as ComplexInterval objects."""
        out = np.empty(self.shape, dtype=object)
        flat_out = out.ravel()
        fm = self.mid.ravel()
        fr = self.rad.ravel()
        for i in range(fm.size):
            m, r = fm[i], float(fr[i])
            flat_out[i] = ComplexInterval(
                Interval(m.real, m.real).widened(r),
                Interval(m.imag, m.imag).widened(r),
            )
        return out

    def __add__(self, other):
        other = _as_cim(other, self.shape)
        mid = self.mid + other.mid
        rad = self.rad + other.rad + np.abs(mid) * 4.0 * _U
        return CIMatrix(mid, _inflate(rad, 2))

    def __sub__(self, other):
        other = _as_cim(other, self.shape)
        mid = self.mid - other.mid
        rad = self.rad + other.rad + np.abs(mid) * 4.0 * _U
        return CIMatrix(mid, _inflate(rad, 2))

    def __rsub__(self, other):
        return _as_cim(other, self.shape) - self

    def __neg__(self):
        return CIMatrix(-self.mid, self.rad)

    def __matmul__(self, other):
        other = _as_cim(other, None)
        n = self.mid.shape[-1]
        am, ar = self.mid, self.rad
        bm, br = other.mid, other.rad
        abs_am = np.abs(am)
        abs_bm = np.abs(bm)
        mid = am @ bm
        gamma = (4.0 * n + 32.0) * _U
        rad = (
            abs_am @ br
            + ar @ abs_bm
            + ar @ br
            + gamma * (abs_am @ abs_bm)
        )
        return CIMatrix(mid, _inflate(rad, n))

    def max_radius(self):
        return float(self.rad.max()) if self.rad.size else 0.0


def _as_cim(x, shape):
    if isinstance(x, CIMatrix):
        return x
    return CIMatrix.exact(x)


def boxes_to_vector(boxes):
    """Column CIMatrix from a list of ComplexInterval."""
    return CIMatrix.from_boxes([[b] for b in boxes])


def vector_to_boxes(cim):
    return list(cim.to_boxes().ravel())
