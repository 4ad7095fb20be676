"""
TM whispering-gallery resonances (p = 1, l = m) of a dielectric sphere.

Radial coordinate conventions: inside, ``z = k r`` with ``k = 2 pi n / lambda0``
the interior wavevector; outside, the Hankel functions take ``z / n`` (the
vacuum wavevector times r). The resonance is located at a root of the real
part of

    j_{l-1}(x)/j_l(x) - n h_{l-1}(x/n)/h_l(x/n) + (n^2 - 1) l / x

on the real ``x = k a`` axis; the true (complex) pole is available from
:func:`complex_pole_q`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, NoResonanceError
from .material import MaterialModel
from .specfun import bessel_ratio, spherical_h1_range, spherical_j_range

SCAN_START = 0.51
SCAN_STEP = 0.05
L_MIN = 5


class Polarization(str, Enum):
    TM = "TM"
    TE = "TE"


@dataclass(frozen=True)
class ModeIndex:
    polarization: Polarization = Polarization.TM
    p: int = 1
    l: int = 50

    @property
    def m(self) -> int:
        return self.l


@dataclass(frozen=True)
class Resonance:
    """A solved real-axis resonance with its field normalisation.

    ``B`` is complex: it carries the phase of the outgoing Hankel function so
    that the tangential field is continuous at r = a.
    """

    mode: ModeIndex
    x_tilde: float
    radius: float
    lambda0: float
    n: float
    k: float
    B: complex
    norm: float

    @property
    def l(self) -> int:
        return self.mode.l


@dataclass(frozen=True)
class FieldSample:
    r: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    psi_r: np.ndarray
    psi_theta: np.ndarray
    psi_phi: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.sqrt(np.abs(self.psi_r) ** 2 + np.abs(self.psi_theta) ** 2
                       + np.abs(self.psi_phi) ** 2)


# ---------------------------------------------------------------------------
# characteristic equation
# ---------------------------------------------------------------------------

def _hankel_ratio(l: int, w):
    h = spherical_h1_range(l - 1, l, w)
    return h[0] / h[1]


def characteristic_residual(x, l: int, n: float) -> complex:
    """Left-hand side of the TM characteristic equation at size parameter ``x``."""
    if x == 0:
        raise ValueError("size parameter must be non-zero")
    if l < 1:
        raise ValueError("l must be >= 1")
    w = x / n
    return complex(bessel_ratio(l, x) - n * _hankel_ratio(l, w) + (n * n - 1.0) * l / x)


def _residual_re(x: float, l: int, n: float) -> float:
    return characteristic_residual(x, l, n).real


def _j_sign(l: int, x: float) -> bool:
    return float(spherical_j_range(l, l, x)[0]) > 0


def find_root(l: int, n: float, *, x_max: float | None = None) -> float:
    """First root of the real part of the residual above ``l + 0.51``.

    Sign changes that coincide with a sign change of ``j_l`` are poles of the
    Bessel ratio and are skipped.
    """
    if n <= 1.0:
        raise NoResonanceError(f"no confined TM mode for n = {n} <= 1")
    if x_max is None:
        x_max = n * (l + 0.5)
    x0 = l + SCAN_START
    f0 = _residual_re(x0, l, n)
    s0 = _j_sign(l, x0)
    i = 0
    while True:
        i += 1
        x1 = l + SCAN_START + i * SCAN_STEP
        if x1 > x_max:
            raise NoResonanceError(
                f"no TM resonance for l={l}, n={n} in [{l + SCAN_START:g}, {x_max:g}]"
            )
        f1 = _residual_re(x1, l, n)
        s1 = _j_sign(l, x1)
        if (f0 > 0) != (f1 > 0) and s0 == s1:
            break
        x0, f0, s0 = x1, f1, s1
    lo, hi, f_lo = x0, x1, f0
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _residual_re(mid, l, n)
        if fm == 0.0:
            return mid
        if (fm > 0) == (f_lo > 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    return lo if abs(f_lo) <= abs(_residual_re(hi, l, n)) else hi


# ---------------------------------------------------------------------------
# radial factors
# ---------------------------------------------------------------------------

def interior_factors(l: int, z):
    """Interior radial factors ``((l+1) j_l(z)/z, F(z))`` with ``z = k r``.

    ``F(z) = [z j_l(z)]'/z = j_l/z + l/(2l+1) j_{l-1} - (l+1)/(2l+1) j_{l+1}``.
    """
    z = np.asarray(z, dtype=float)
    j = spherical_j_range(l - 1, l + 1, z)
    rad = (l + 1) * j[1] / z
    tan = j[1] / z + (l * j[0] - (l + 1) * j[2]) / (2 * l + 1)
    return rad, tan


def exterior_factors(l: int, z, n: float):
    """Exterior radial factors ``((l+1) h_l(w)/w, H(z))`` with ``w = z/n``."""
    w = np.asarray(z, dtype=float) / n
    h = spherical_h1_range(l - 1, l + 1, w)
    rad = (l + 1) * h[1] / w
    tan = h[1] / w + (l * h[0] - (l + 1) * h[2]) / (2 * l + 1)
    return rad, tan


def continuity_coefficient(l: int, x: float, n: float) -> complex:
    """``B = F(x) / H(x)``, matching the tangential field at the surface."""
    _, f = interior_factors(l, x)
    _, h = exterior_factors(l, x, n)
    return complex(f / h)


def _interior_env2(l, z):
    rad, tan = interior_factors(l, z)
    return rad**2 + tan**2


def _exterior_env2(l, z, n, B):
    rad, tan = exterior_factors(l, z, n)
    return abs(B) ** 2 * (np.abs(rad) ** 2 + np.abs(tan) ** 2)


def _peak_envelope(l: int, x: float, n: float, B: complex) -> float:
    """Maximum of the squared, un-normalised |Psi| on the equator."""
    z = np.linspace(x / 2000, x, 2001)
    env = _interior_env2(l, z)
    i = int(np.argmax(env))
    best = float(env[i])
    if 0 < i < len(z) - 1:
        res = minimize_scalar(
            lambda t: -float(_interior_env2(l, t)),
            bracket=(z[i - 1], z[i], z[i + 1]),
            method="golden",
            options={"xtol": 1e-12},
        )
        best = max(best, -float(res.fun))
    # the exterior envelope decays away from the surface, so its maximum is at a+
    zo = np.linspace(x, 3 * x, 401)
    best = max(best, float(np.max(_exterior_env2(l, zo, n, B))))
    return best


@lru_cache(maxsize=4096)
def _solve(l: int, lambda0: float, n: float) -> Resonance:
    x = find_root(l, n)
    k = 2.0 * math.pi * n / lambda0
    B = continuity_coefficient(l, x, n)
    norm = 1.0 / math.sqrt(_peak_envelope(l, x, n, B))
    return Resonance(
        mode=ModeIndex(Polarization.TM, 1, l),
        x_tilde=x,
        radius=x / k,
        lambda0=lambda0,
        n=n,
        k=k,
        B=B,
        norm=norm,
    )


def solve_resonance(l: int, lambda0: float, material: MaterialModel) -> Resonance:
    """Solve the p = 1, l = m TM resonance at vacuum wavelength ``lambda0``.

    Raises
    ------
    ValueError
        For ``l < 5``.
    NoResonanceError
        If no root exists in ``[l + 0.51, n (l + 1/2)]``.
    """
    if int(l) != l or l < L_MIN:
        raise ValueError(f"l must be an integer >= {L_MIN}, got {l}")
    n = material.index(lambda0)
    return _solve(int(l), float(lambda0), float(n))


# ---------------------------------------------------------------------------
# field evaluation
# ---------------------------------------------------------------------------

def eval_mode(res: Resonance, r, theta=math.pi / 2, phi=0.0) -> FieldSample:
    """Normalised mode function at (r, theta, phi); r = a takes the exterior value."""
    r, theta, phi = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    l, N = res.l, res.norm
    z = res.k * r
    inside = r < res.radius
    rad = np.zeros(r.shape, dtype=complex)
    tan = np.zeros(r.shape, dtype=complex)
    if np.any(inside):
        ri, ti = interior_factors(l, z[inside])
        rad[inside], tan[inside] = ri, ti
    if np.any(~inside):
        ro, to = exterior_factors(l, z[~inside], res.n)
        rad[~inside], tan[~inside] = res.B * ro, res.B * to
    s, c = np.sin(theta), np.cos(theta)
    phase = np.exp(1j * l * phi)
    s_lm1 = s ** (l - 1)
    return FieldSample(
        r=r,
        theta=theta,
        phi=phi,
        psi_r=N * rad * s_lm1 * s * phase,
        psi_theta=N * tan * c * s_lm1 * phase,
        psi_phi=1j * N * tan * s_lm1 * phase,
    )


def exterior_surface_amplitude(res: Resonance) -> float:
    """``|Psi_out(a, pi/2, 0)|``, the field seen by an atom on the surface."""
    rad, tan = exterior_factors(res.l, res.x_tilde, res.n)
    return float(res.norm * abs(res.B) * math.sqrt(abs(rad) ** 2 + abs(tan) ** 2))


# ---------------------------------------------------------------------------
# complex pole
# ---------------------------------------------------------------------------

def complex_pole(res: Resonance, *, max_iter: int = 50) -> complex:
    """Newton iteration on the complex characteristic function seeded at ``x_tilde``."""
    l, n = res.l, res.n
    x = complex(res.x_tilde)
    for _ in range(max_iter):
        f = characteristic_residual(x, l, n)
        h = 1e-6 * abs(x)
        df = (characteristic_residual(x + h, l, n) - characteristic_residual(x - h, l, n)) / (2 * h)
        step = f / df
        x -= step
        if abs(step) <= 1e-12 * abs(x):
            return x
    raise ConvergenceError(f"complex pole for l={l}, n={n} did not converge in {max_iter} steps")


def complex_pole_q(res: Resonance, *, max_iter: int = 50) -> float:
    """Radiative Q from the complex pole: ``-Re(x) / (2 Im(x))``."""
    x = complex_pole(res, max_iter=max_iter)
    if x.imag >= 0:
        raise ConvergenceError(f"pole for l={res.l} has Im(x) = {x.imag:g} >= 0")
    return -x.real / (2.0 * x.imag)
