"""
Spherical Bessel/Neumann/Hankel functions at large order, Airy zeros and
the solid-angle moments of the l = m vector harmonics.

All Bessel routines are vectorised over the argument (the order is a
scalar) and accept real or complex input.

* ``j_l`` is evaluated by upward recurrence where ``|z| > l`` (stable there)
  and by Miller's downward recurrence elsewhere, normalised against the
  closed forms of ``j_0`` and ``j_1``.
* ``y_l`` is always evaluated by upward recurrence, which is stable for the
  dominant solution.
* ``h_l = j_l + i y_l``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "AiryZero",
    "AngularMoment",
    "airy_zero",
    "angular_moments",
    "bessel_ratio",
    "spherical_h1",
    "spherical_h1_range",
    "spherical_j",
    "spherical_j_range",
    "spherical_y",
    "spherical_y_range",
]

_RESCALE = 1e100


def _as_array(z):
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = z.astype(float)
    return z


def _j01(z):
    s, c = np.sin(z), np.cos(z)
    return s / z, s / z**2 - c / z


def _j_upward(l_lo, l_hi, z):
    out = np.empty((l_hi - l_lo + 1,) + z.shape, dtype=z.dtype)
    f0, f1 = _j01(z)
    if l_lo == 0:
        out[0] = f0
    if l_lo <= 1 <= l_hi:
        out[1 - l_lo] = f1
    for k in range(1, l_hi):
        f0, f1 = f1, (2 * k + 1) / z * f1 - f0
        if k + 1 >= l_lo:
            out[k + 1 - l_lo] = f1
    return out


def _miller_start(l_hi, zmax):
    m = max(l_hi, zmax)
    return int(m + 20 + 4.0 * math.sqrt(m))


def _j_miller(l_lo, l_hi, z):
    """Downward recurrence from a high order, rescaled to avoid overflow."""
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    start = _miller_start(l_hi, zmax)
    out = np.zeros((l_hi - l_lo + 1,) + z.shape, dtype=z.dtype)
    f_hi = np.zeros(z.shape, dtype=z.dtype)
    f = np.full(z.shape, 1e-30, dtype=z.dtype)
    f0 = f1 = None
    for k in range(start, 0, -1):
        # f holds f_k, f_hi holds f_{k+1}
        if l_lo <= k <= l_hi:
            out[k - l_lo] = f
        if k == 1:
            f1 = f
        f_lo = (2 * k + 1) / z * f - f_hi
        f_hi, f = f, f_lo
        big = np.abs(f) > _RESCALE
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE, 1.0)
            f = f * scale
            f_hi = f_hi * scale
            out *= scale
            if f1 is not None:
                f1 = f1 * scale
    f0 = f
    if l_lo == 0:
        out[0] = f0
    t0, t1 = _j01(z)
    denom = np.abs(f0) ** 2 + np.abs(f1) ** 2
    norm = (np.conj(f0) * t0 + np.conj(f1) * t1) / denom
    if not np.iscomplexobj(z):
        norm = norm.real
    return out * norm


def spherical_j_range(l_lo: int, l_hi: int, z):
    """Return ``j_l(z)`` for ``l = l_lo..l_hi`` stacked along axis 0."""
    if l_lo < 0 or l_hi < l_lo:
        raise ValueError(f"invalid order range {l_lo}..{l_hi}")
    z = _as_array(z)
    shape = z.shape
    z = z.reshape(-1)
    out = np.zeros((l_hi - l_lo + 1,) + z.shape, dtype=z.dtype)
    zero = z == 0
    if l_lo == 0:
        out[0][zero] = 1.0
    up = (np.abs(z) > l_hi) & ~zero
    down = ~up & ~zero
    if np.any(up):
        out[:, up] = _j_upward(l_lo, l_hi, z[up])
    if np.any(down):
        out[:, down] = _j_miller(l_lo, l_hi, z[down])
    return out.reshape((l_hi - l_lo + 1,) + shape)


def spherical_y_range(l_lo: int, l_hi: int, z):
    """Return ``y_l(z)`` for ``l = l_lo..l_hi`` by upward recurrence.

    Raises
    ------
    OverflowError
        If ``y_l`` exceeds the floating-point range (tiny ``|z|`` at large l).
    """
    if l_lo < 0 or l_hi < l_lo:
        raise ValueError(f"invalid order range {l_lo}..{l_hi}")
    z = _as_array(z)
    if np.any(z == 0):
        raise ValueError("spherical_y is singular at z = 0")
    out = np.empty((l_hi - l_lo + 1,) + z.shape, dtype=z.dtype)
    s, c = np.sin(z), np.cos(z)
    f0 = -c / z
    f1 = -c / z**2 - s / z
    if l_lo == 0:
        out[0] = f0
    if l_lo <= 1 <= l_hi:
        out[1 - l_lo] = f1
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, l_hi):
            f0, f1 = f1, (2 * k + 1) / z * f1 - f0
            if k + 1 >= l_lo:
                out[k + 1 - l_lo] = f1
    if not np.all(np.isfinite(out)):
        raise OverflowError(
            f"spherical_y of order up to {l_hi} overflows for min |z| = {np.min(np.abs(z)):.3g}"
        )
    return out


def spherical_h1_range(l_lo: int, l_hi: int, z):
    """Return ``h_l^(1)(z) = j_l(z) + i y_l(z)`` for ``l = l_lo..l_hi``."""
    return spherical_j_range(l_lo, l_hi, z) + 1j * spherical_y_range(l_lo, l_hi, z)


def _scalar_out(value, z):
    return value[()] if np.ndim(z) == 0 else value


def spherical_j(l: int, z):
    """Spherical Bessel function of the first kind ``j_l(z)``.

    Parameters
    ----------
    l : int
        Order, ``l >= 0``.
    z : float, complex or array_like
        Argument. ``j_l(0)`` returns the limit (1 for ``l = 0``, else 0).
    """
    return _scalar_out(spherical_j_range(l, l, z)[0], z)


def spherical_y(l: int, z):
    """Spherical Neumann function ``y_l(z)``."""
    return _scalar_out(spherical_y_range(l, l, z)[0], z)


def spherical_h1(l: int, z):
    """Spherical Hankel function of the first kind ``h_l^(1)(z)``."""
    return _scalar_out(spherical_h1_range(l, l, z)[0], z)


def bessel_ratio(l: int, z, *, max_terms: int = 100_000, tol: float = 1e-15):
    """``j_{l-1}(z) / j_l(z)`` from the continued fraction

        j_{l-1}/j_l = (2l+1)/z - 1/((2l+3)/z - 1/((2l+5)/z - ...))

    evaluated with the modified Lentz algorithm. Scalar ``z`` only.
    """
    if l < 1:
        raise ValueError("bessel_ratio needs l >= 1")
    if z == 0:
        raise ValueError("bessel_ratio is undefined at z = 0")
    tiny = 1e-300
    f = (2 * l + 1) / z
    if f == 0:
        f = tiny
    c, d = f, 0.0
    for k in range(1, max_terms):
        b = (2 * (l + k) + 1) / z
        d = b - d
        d = tiny if d == 0 else d
        c = b - 1.0 / c
        c = tiny if c == 0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < tol:
            return f
    raise ConvergenceError(f"continued fraction for j_{l - 1}/j_{l} at z={z} did not converge")


# ---------------------------------------------------------------------------
# Airy zeros
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AiryZero:
    p: int
    t_p0: float


_AI0 = "0.355028053887817239260063186004183176397979174199"
_MINUS_AIP0 = "0.258819403792806798405183560189203963479091138354"
_AIRY_PREC = 50


def _airy_ai_series(x: Decimal) -> Decimal:
    """Maclaurin series of Ai at ``x`` in ``_AIRY_PREC``-digit decimal arithmetic."""
    with localcontext() as ctx:
        ctx.prec = _AIRY_PREC
        x3 = x * x * x
        f = term = Decimal(1)
        k = 0
        while True:
            term = term * x3 / ((3 * k + 2) * (3 * k + 3))
            f += term
            k += 1
            if term == 0 or abs(term) < Decimal(10) ** (-_AIRY_PREC):
                break
        g = term = x
        k = 0
        while True:
            term = term * x3 / ((3 * k + 3) * (3 * k + 4))
            g += term
            k += 1
            if term == 0 or abs(term) < Decimal(10) ** (-_AIRY_PREC):
                break
        return Decimal(_AI0) * f - Decimal(_MINUS_AIP0) * g


def airy_ai(x: float) -> float:
    """Airy function Ai on the modest range used for zero finding (|x| <~ 15)."""
    return float(_airy_ai_series(Decimal(repr(float(x)))))


@lru_cache(maxsize=None)
def airy_zero(p: int) -> AiryZero:
    """The p-th zero of Ai on the negative real axis (``p`` in 1..10).

    The zero is bracketed on a 0.05 grid and bisected to the resolution of
    a double, with Ai summed from its Maclaurin series in 50-digit decimal
    arithmetic so the alternating series loses nothing at ``|t| ~ 13``.
    """
    if not 1 <= p <= 10:
        raise ValueError(f"airy_zero supports 1 <= p <= 10, got {p}")
    step = Decimal("0.05")
    lo = Decimal(0)
    f_lo = _airy_ai_series(lo)
    found = 0
    while True:
        hi = lo - step
        f_hi = _airy_ai_series(hi)
        if (f_lo > 0) != (f_hi > 0):
            found += 1
            if found == p:
                break
        lo, f_lo = hi, f_hi
    # bracket is [hi, lo] with hi < lo
    a, b, fa = hi, lo, f_hi
    with localcontext() as ctx:
        ctx.prec = _AIRY_PREC
        while b - a > Decimal("1e-18"):
            m = (a + b) / 2
            fm = _airy_ai_series(m)
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b = m
    return AiryZero(p=p, t_p0=float((a + b) / 2))


# ---------------------------------------------------------------------------
# Angular moments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AngularMoment:
    """Solid-angle integrals of the squared angular factors of an l = m mode.

    ``A_r``     = 2 pi int sin^(2l+1) theta dtheta       (radial component)
    ``A_theta`` = 2 pi int cos^2 theta sin^(2l-1) theta dtheta
    ``A_phi``   = 2 pi int sin^(2l-1) theta dtheta
    """

    l: int
    A_r: float
    A_theta: float
    A_phi: float


def _sin_power_integral(m: int) -> float:
    # int_0^pi sin^m = sqrt(pi) Gamma((m+1)/2) / Gamma(m/2 + 1)
    return math.exp(0.5 * math.log(math.pi) + math.lgamma((m + 1) / 2) - math.lgamma(m / 2 + 1))


def angular_moments(l: int) -> AngularMoment:
    if l < 1:
        raise ValueError("angular_moments needs l >= 1")
    two_pi = 2.0 * math.pi
    a_r = two_pi * _sin_power_integral(2 * l + 1)
    a_phi = two_pi * _sin_power_integral(2 * l - 1)
    # int cos^2 sin^(2l-1) = B(3/2, l) = Gamma(3/2) Gamma(l) / Gamma(l + 3/2)
    a_theta = two_pi * math.exp(math.lgamma(1.5) + math.lgamma(l) - math.lgamma(l + 1.5))
    return AngularMoment(l=l, A_r=a_r, A_theta=a_theta, A_phi=a_phi)
