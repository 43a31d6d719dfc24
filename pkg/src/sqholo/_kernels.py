"""Compiled elementwise loop for soft sympathetic quantisation.

Every pixel is placed from its own value and its partner's, read from a
contiguous partner array.  The construction is symmetric under swapping
the two, so both members of a pair come out consistent without a scattered
pair loop.  The main loop is branch-free so it vectorises; pixels whose
chord length is zero, tiny or huge are redone by a robust scalar routine.
"""
import math

from numba import njit

# outside this range squared magnitudes lose precision or overflow
TINY2 = 1e-290
HUGE2 = 1e300


@njit(cache=True, inline="always")
def _norm(re, im):
    n2 = re * re + im * im
    if n2 < TINY2 or n2 == math.inf:
        return math.hypot(re, im)
    return math.sqrt(n2)


@njit(cache=True, inline="always")
def _place(ar, ai, br, bi, dm):
    """Shared chord placement for ``|d| = dm > 0``; returns (re, im, fallback)."""
    # d = a - conj(b), c = (a + conj(b)) / 2
    dr = ar - br
    di = ai + bi
    cr = (ar + br) * 0.5
    ci = (ai - bi) * 0.5
    ur = dr / dm
    ui = di / dm
    # new chord midpoint +/- m, perpendicular to d, on the side nearer c;
    # copysign keeps this branch-free and +0.0 sends ties to +m
    t = math.sqrt(max(1.0 - 0.25 * dm * dm, 0.0))
    sgn = math.copysign(1.0, t * (ur * ci - ui * cr) + 0.0)
    far = ar + (sgn * -ui * t - cr)
    fai = ai + (sgn * ur * t - ci)
    # chord longer than the diameter: centred on the origin and projected,
    # the point lands on d / |d|
    fb = dm > 2.0
    return (ur if fb else far), (ui if fb else fai), fb


@njit(cache=True, inline="always")
def _robust(a, b):
    ar = a.real
    ai = a.imag
    br = b.real
    bi = b.imag
    dm = _norm(ar - br, ai + bi)
    if dm == 0.0:
        am = _norm(ar, ai)
        return (complex(ar / am, ai / am) if am > 0.0 else 1.0 + 0.0j), False
    re, im, fb = _place(ar, ai, br, bi, dm)
    return complex(re, im), fb


@njit(cache=True, inline="always")
def _is_odd(a, b):
    dr = a.real - b.real
    di = a.imag + b.imag
    n2 = dr * dr + di * di
    return not (TINY2 <= n2 <= HUGE2)


@njit(cache=True, error_model="numpy")
def ssq_kernel(a, b, out):
    """Continuous SSQ placement of ``a`` given partner values ``b`` (1-D).

    Returns the number of pixels whose pair needed the fallback.
    """
    fallbacks = 0
    odd = 0
    for i in range(a.size):
        ar = a[i].real
        ai = a[i].imag
        br = b[i].real
        bi = b[i].imag
        dr = ar - br
        di = ai + bi
        n2 = dr * dr + di * di
        bad = (n2 < TINY2) | (n2 > HUGE2)
        re, im, fb = _place(ar, ai, br, bi, math.sqrt(n2) if not bad else 1.0)
        out[i] = complex(re, im)
        fallbacks += fb & (not bad)
        odd += bad
    if odd == 0:
        return fallbacks
    for i in range(a.size):
        if _is_odd(a[i], b[i]):
            out[i], fb = _robust(a[i], b[i])
            fallbacks += fb
    return fallbacks
