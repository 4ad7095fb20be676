"""Cavity-QED figures of merit for an atom on the sphere surface."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import WgmError
from .material import C_LIGHT, AtomSpec
from .modes import Resonance, exterior_surface_amplitude
from .quality import QBudget
from .volume import ModeVolume

G_ROUTE_RTOL = 1e-9


@dataclass(frozen=True)
class CqedPoint:
    """Coupling parameters at one resonance.

    ``g`` and ``kappa`` are angular rates (rad/s).
    """

    beta: float
    g: float
    n0: float
    N0: float
    kappa: float
    q_cavity: float
    q_atom: float
    surf_amp: float

    @property
    def geo_mean(self) -> float:
        return math.sqrt(self.n0 * self.N0)

    @property
    def g_over_2pi(self) -> float:
        return self.g / (2.0 * math.pi)


def beta(vol: ModeVolume, surf_amp: float, lambda0: float) -> float:
    """``8 pi^2 V_P / (3 lambda0^3 |Psi_out(a)|^2)``."""
    if not 0.0 < surf_amp <= 1.0 + 1e-12:
        raise ValueError(f"surface amplitude must lie in (0, 1], got {surf_amp!r}")
    return 8.0 * math.pi**2 * vol.v_p / (3.0 * lambda0**3 * surf_amp**2)


def coupling_g(beta_value: float, atom: AtomSpec) -> float:
    """Atom-field coupling ``sqrt(2 pi c gamma_perp / (beta lambda0))`` in rad/s."""
    if beta_value <= 0:
        raise ValueError("beta must be positive")
    return math.sqrt(2.0 * math.pi * C_LIGHT * atom.gamma_perp / (beta_value * atom.lambda0))


def coupling_g_direct(vol: ModeVolume, surf_amp: float, atom: AtomSpec) -> float:
    """``gamma_perp |Psi_out(a)| sqrt(V0 / V_P)``, the volume route to g."""
    return atom.gamma_perp * surf_amp * math.sqrt(atom.v0 / vol.v_p)


def kappa_from_q(q_cavity: float, lambda0: float) -> float:
    """Field decay rate ``pi c / (lambda0 Q)``."""
    return math.pi * C_LIGHT / (lambda0 * q_cavity)


def cqed_point(res: Resonance, vol: ModeVolume, q: Union[QBudget, float],
               atom: AtomSpec) -> CqedPoint:
    """All coupling parameters for ``res``.

    Parameters
    ----------
    q : QBudget or float
        A modeled budget (its ``q_total`` is used) or a fixed cavity Q,
        e.g. a measured value.
    """
    if not math.isclose(res.lambda0, atom.lambda0, rel_tol=1e-12):
        raise ValueError(f"resonance at {res.lambda0!r} m but atom at {atom.lambda0!r} m")
    q_cav = q.q_total if isinstance(q, QBudget) else float(q)
    if not q_cav > 0:
        raise ValueError(f"cavity Q must be positive, got {q_cav!r}")
    s = exterior_surface_amplitude(res)
    b = beta(vol, s, atom.lambda0)
    g = coupling_g(b, atom)
    g_alt = coupling_g_direct(vol, s, atom)
    if abs(g - g_alt) > G_ROUTE_RTOL * g:
        raise WgmError(f"coupling routes disagree: {g!r} vs {g_alt!r}")
    q_atom = atom.q_atom
    return CqedPoint(
        beta=b,
        g=g,
        n0=b / (4.0 * q_atom),
        N0=b / q_cav,
        kappa=kappa_from_q(q_cav, atom.lambda0),
        q_cavity=q_cav,
        q_atom=q_atom,
        surf_amp=s,
    )
