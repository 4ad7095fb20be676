"""Quality-factor budget: radiative, bulk, surface-scatter and water losses."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import RadiativeQWarning
from .material import MaterialModel
from .modes import Polarization, Resonance
from .specfun import airy_zero

Q_RAD_VALID_L = 18
MECHANISMS = ("rad", "bulk", "ss", "w")


def _b_switch(polarization) -> int:
    pol = Polarization(polarization)
    return 1 if pol is Polarization.TM else 0


def q_rad(l: int, p: int = 1, n: float = 1.45246, polarization="TM") -> float:
    """Asymptotic radiative Q of the (p, l) whispering-gallery mode.

        Q = 1/2 (l+1/2) n^(1-2b) (n^2-1)^(1/2) exp(2 T_l)
        T_l = (l+1/2) (eta_l - tanh eta_l)
        eta_l = arccosh{ n [1 - (t_p xi + l^(1-2b) / sqrt(l^2-1)) / (l+1/2)]^-1 }
        xi = [(l+1/2)/2]^(1/3)

    with ``t_p`` the p-th (negative) zero of Ai and ``b = 1`` (TM) or 0 (TE).
    Issues :class:`RadiativeQWarning` for ``l < 18``.
    """
    if l < 5:
        raise ValueError(f"q_rad needs l >= 5, got {l}")
    if l < Q_RAD_VALID_L:
        warnings.warn(f"asymptotic Q_rad at l={l} < {Q_RAD_VALID_L} exceeds 1% error",
                      RadiativeQWarning, stacklevel=2)
    b = _b_switch(polarization)
    nu = l + 0.5
    t = airy_zero(p).t_p0
    xi = (0.5 * nu) ** (1.0 / 3.0)
    arg = n / (1.0 - (t * xi + l ** (1 - 2 * b) / math.sqrt(l * l - 1.0)) / nu)
    if arg < 1.0:
        raise ValueError(f"no confinement: arccosh argument {arg:.6g} < 1 (l={l}, n={n})")
    eta = math.acosh(arg)
    T = nu * (eta - math.tanh(eta))
    return 0.5 * nu * n ** (1 - 2 * b) * math.sqrt(n * n - 1.0) * math.exp(2.0 * T)


def q_bulk(lambda0: float, material: MaterialModel) -> float:
    """2 pi n / (alpha lambda0)."""
    n = material.index(lambda0)
    return 2.0 * math.pi * n / (material.absorption(lambda0) * lambda0)


def q_surface_scatter(a: float, lambda0: float, material: MaterialModel) -> float:
    """Rayleigh scattering on residual surface inhomogeneities."""
    if a <= 0:
        raise ValueError("radius must be positive")
    eps = material.index(lambda0) ** 2
    pref = 3.0 * eps * (eps + 2.0) ** 2 / ((4.0 * math.pi) ** 3 * (eps - 1.0) ** 2.5)
    return pref * lambda0**3.5 * math.sqrt(2.0 * a) / material.sigma_b**2


def q_water(a: float, lambda0: float, material: MaterialModel) -> float:
    """Absorption in an adsorbed water layer of thickness ``delta_w``."""
    if a <= 0:
        raise ValueError("radius must be positive")
    n = material.index(lambda0)
    return (math.sqrt(math.pi / (8.0 * n**3)) * math.sqrt(2.0 * a)
            / (material.delta_w * math.sqrt(lambda0) * material.beta_w))


def _harmonic(*qs: float) -> float:
    inv = sum(1.0 / q for q in qs)
    return math.inf if inv == 0 else 1.0 / inv


@dataclass(frozen=True)
class QBudget:
    q_rad: float
    q_bulk: float
    q_ss: float
    q_w: float
    q_mat: float
    q_total: float
    dominant: str
    rad_valid: bool = True


def combine(q_rad: float, q_bulk: float, q_ss: float, q_w: float, *, rad_valid: bool = True) -> QBudget:
    """Combine the four mechanisms; the smallest Q names the dominant loss."""
    values = dict(zip(MECHANISMS, (q_rad, q_bulk, q_ss, q_w)))
    dominant = min(MECHANISMS, key=lambda k: (values[k], MECHANISMS.index(k)))
    return QBudget(
        q_rad=q_rad,
        q_bulk=q_bulk,
        q_ss=q_ss,
        q_w=q_w,
        q_mat=_harmonic(q_ss, q_w, q_bulk),
        q_total=_harmonic(q_rad, q_ss, q_w, q_bulk),
        dominant=dominant,
        rad_valid=rad_valid,
    )


def q_budget(res: Resonance, material: MaterialModel, *, exclude=()) -> QBudget:
    """Full budget for a solved resonance; mechanisms in ``exclude`` count as lossless."""
    unknown = set(exclude) - set(MECHANISMS)
    if unknown:
        raise ValueError(f"unknown loss mechanisms {sorted(unknown)}")
    lam, a = res.lambda0, res.radius
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RadiativeQWarning)
        qr = q_rad(res.l, res.mode.p, res.n, res.mode.polarization)
    values = {
        "rad": qr,
        "bulk": q_bulk(lam, material),
        "ss": q_surface_scatter(a, lam, material),
        "w": q_water(a, lam, material),
    }
    for k in exclude:
        values[k] = math.inf
    return combine(*(values[k] for k in MECHANISMS), rad_valid=res.l >= Q_RAD_VALID_L)
