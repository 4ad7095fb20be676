"""
Electromagnetic mode volume of the l = m TM modes.

The angular integrals are done analytically (:func:`angular_moments`), so
only a radial quadrature remains. In the dimensionless variable ``z = k r``

    V~ = N^2 [ n^2 int_0^x (R^2 A_r + F^2 (A_t + A_p)) z^2 dz
             + |B|^2 int_x^zQ (|R_out|^2 A_r + |H|^2 (A_t + A_p)) z^2 dz ]

and ``V_P = V~ / k^3``.

Two quantization-radius policies are available:

``"shell"`` (default)
    ``k (r_Q - a) = 5000``. The exterior field of a real-axis resonance
    includes its outgoing radiative tail, which for small l contributes a
    large share of V_P; fixing the shell thickness in units of ``1/k`` keeps
    the dimensionless curves independent of wavelength and places the
    volume minimum at l = 34 for n = 1.45246.
``"adaptive"``
    March outward in steps of lambda0/4 until a step adds less than
    ``tail_tol`` of the running total, capped at r_Q = 3a.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ConvergenceError, WgmError
from .material import MaterialModel
from .modes import Resonance, exterior_factors, interior_factors, solve_resonance
from .specfun import angular_moments

SHELL_THICKNESS = 5000.0
QUANTIZATION_POLICIES = ("shell", "adaptive")

_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


@dataclass(frozen=True)
class ModeVolume:
    v_p: float
    v_tilde: float
    x_tilde: float
    r_q: float
    interior_fraction: float
    tail_converged: bool
    policy: str


def _composite_gl(f, lo: float, hi: float, panels: int) -> float:
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    z = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    vals = f(z).reshape(panels, -1)
    return float(np.sum(vals * _GL_W[None, :] * half[:, None]))


def integrate(f, lo: float, hi: float, *, rtol: float = 1e-9, atol: float = 0.0,
              panels: int = 2, max_panels: int = 1 << 14) -> float:
    """Composite 24-point Gauss-Legendre, doubling the panel count to convergence."""
    prev = _composite_gl(f, lo, hi, panels)
    while panels < max_panels:
        panels *= 2
        cur = _composite_gl(f, lo, hi, panels)
        if abs(cur - prev) <= max(rtol * abs(cur), atol):
            return cur
        prev = cur
    raise ConvergenceError(f"quadrature on [{lo:g}, {hi:g}] did not reach rtol={rtol:g}")


def _integrands(res: Resonance):
    ang = angular_moments(res.l)
    a_tan = ang.A_theta + ang.A_phi
    l, n, B2 = res.l, res.n, abs(res.B) ** 2

    def inner(z):
        rad, tan = interior_factors(l, z)
        return n * n * (rad**2 * ang.A_r + tan**2 * a_tan) * z**2

    def outer(z):
        rad, tan = exterior_factors(l, z, n)
        return B2 * (np.abs(rad) ** 2 * ang.A_r + np.abs(tan) ** 2 * a_tan) * z**2

    return inner, outer


def _shell_edges(x: float, shell: float) -> list:
    edges = [x]
    d = 0.5
    while d < shell:
        edges.append(x + d)
        d *= 2.0
    edges.append(x + shell)
    return edges


@lru_cache(maxsize=4096)
def _mode_volume(res: Resonance, policy: str, shell: float, rtol: float,
                 tail_tol: float) -> ModeVolume:
    inner, outer = _integrands(res)
    x = res.x_tilde
    i_in = integrate(inner, 0.0, x, rtol=rtol, panels=max(4, math.ceil(x / 2)))
    atol = 1e-3 * rtol * i_in
    converged = True
    if policy == "shell":
        edges = _shell_edges(x, shell)
        i_out = sum(integrate(outer, lo, hi, rtol=rtol, atol=atol)
                    for lo, hi in zip(edges[:-1], edges[1:]))
        z_q = edges[-1]
    elif policy == "adaptive":
        step = math.pi * res.n / 2.0  # lambda0 / 4 in units of 1/k
        cap = 3.0 * x
        i_out = 0.0
        z_q = x
        while True:
            hi = min(z_q + step, cap)
            piece = integrate(outer, z_q, hi, rtol=rtol, atol=atol)
            i_out += piece
            z_q = hi
            if piece < tail_tol * (i_in + i_out):
                break
            if z_q >= cap:
                converged = False
                break
    else:
        raise ValueError(f"unknown quantization policy {policy!r}; use one of {QUANTIZATION_POLICIES}")
    n2 = res.norm**2
    v_tilde = n2 * (i_in + i_out)
    return ModeVolume(
        v_p=v_tilde / res.k**3,
        v_tilde=v_tilde,
        x_tilde=x,
        r_q=z_q / res.k,
        interior_fraction=i_in / (i_in + i_out),
        tail_converged=converged,
        policy=policy,
    )


def mode_volume(res: Resonance, *, policy: str = "shell", shell: float = SHELL_THICKNESS,
                rtol: float = 1e-9, tail_tol: float = 1e-8) -> ModeVolume:
    """Mode volume V_P of a solved resonance.

    Parameters
    ----------
    res : Resonance
        Output of :func:`solve_resonance`.
    policy : {"shell", "adaptive"}
        Quantization-radius rule (see module docstring).
    shell : float
        Dimensionless shell thickness ``k (r_Q - a)`` for ``policy="shell"``.
    rtol : float
        Relative tolerance of each radial quadrature.
    tail_tol : float
        Stopping threshold of the adaptive policy. When the 3a cap is hit the
        result carries ``tail_converged=False`` and a warning is issued.
    """
    vol = _mode_volume(res, policy, float(shell), float(rtol), float(tail_tol))
    if not vol.tail_converged:
        warnings.warn(
            f"exterior tail of l={res.l} not converged at r_Q = 3a; V_P is a partial value",
            RuntimeWarning,
            stacklevel=2,
        )
    return vol


class CurvePoint(NamedTuple):
    l: int
    x_tilde: float
    v_tilde: float


def dimensionless_curve(n: float, l_range: Iterable[int], *, lambda0: float = 1e-6,
                        **volume_kw) -> list:
    """(l, x~, V~) for each l at fixed index ``n``; independent of ``lambda0``."""
    if n <= 1.0:
        raise ValueError("dimensionless_curve needs n > 1")
    material = MaterialModel(n_fixed=n)
    out = []
    for l in l_range:
        try:
            res = solve_resonance(l, lambda0, material)
            vol = mode_volume(res, **volume_kw)
        except (WgmError, ValueError) as exc:
            warnings.warn(f"skipping l={l}: {exc}", RuntimeWarning, stacklevel=2)
            continue
        out.append(CurvePoint(l, vol.x_tilde, vol.v_tilde))
    return out
