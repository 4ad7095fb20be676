"""Fused-silica optical data and atomic transition parameters."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

C_LIGHT = 299_792_458.0

# Malitson (1965) three-term Sellmeier coefficients for fused silica, lambda in um.
_SELLMEIER_B = (0.6961663, 0.4079426, 0.8974794)
_SELLMEIER_C = (0.0684043**2, 0.1162414**2, 9.896161**2)
SELLMEIER_BAND = (400e-9, 2000e-9)

# (wavelength [m], absorption [1/m]) for very low-OH fused silica.
SILICA_ABSORPTION = ((852e-9, 4.5e-4), (1550e-9, 1.5e-5))


def silica_index(lambda0: float) -> float:
    """Refractive index of fused silica from the Sellmeier form.

    Raises ``ValueError`` outside 400-2000 nm.
    """
    lo, hi = SELLMEIER_BAND
    if not lo <= lambda0 <= hi:
        raise ValueError(f"wavelength {lambda0:.6g} m outside Sellmeier band {lo:g}-{hi:g} m")
    lam2 = (lambda0 * 1e6) ** 2
    n2 = 1.0 + sum(b * lam2 / (lam2 - c) for b, c in zip(_SELLMEIER_B, _SELLMEIER_C))
    return math.sqrt(n2)


def interpolate_absorption(lambda0: float, table) -> float:
    """Log-linear interpolation of ``alpha`` through ``table`` knots.

    Exact at the knots; raises ``ValueError`` outside the table hull.
    """
    lam = np.array([p[0] for p in table], dtype=float)
    alpha = np.array([p[1] for p in table], dtype=float)
    order = np.argsort(lam)
    lam, alpha = lam[order], alpha[order]
    if not lam[0] <= lambda0 <= lam[-1]:
        raise ValueError(
            f"wavelength {lambda0:.6g} m outside absorption table {lam[0]:.6g}-{lam[-1]:.6g} m"
        )
    hit = np.nonzero(lam == lambda0)[0]
    if hit.size:
        return float(alpha[hit[0]])
    return float(np.exp(np.interp(lambda0, lam, np.log(alpha))))


def silica_absorption(lambda0: float) -> float:
    return interpolate_absorption(lambda0, SILICA_ABSORPTION)


@dataclass(frozen=True)
class MaterialModel:
    """Dielectric and surface-loss description of the sphere.

    Attributes
    ----------
    n_fixed : float or None
        Wavelength-independent refractive index. ``None`` selects the
        fused-silica Sellmeier dispersion.
    absorption_table : tuple of (wavelength, alpha) pairs
        Bulk absorption knots in (m, 1/m), interpolated log-linearly.
    sigma_b : float
        Surface-inhomogeneity parameter sigma*B (m^2).
    delta_w : float
        Adsorbed water-layer thickness (m).
    beta_w : float
        Water absorption coefficient (1/m); taken as wavelength independent.
    """

    n_fixed: Optional[float] = None
    absorption_table: tuple = SILICA_ABSORPTION
    sigma_b: float = 5e-18
    delta_w: float = 0.2e-9
    beta_w: float = 4.33

    def index(self, lambda0: float) -> float:
        if self.n_fixed is not None:
            return float(self.n_fixed)
        return silica_index(lambda0)

    def absorption(self, lambda0: float) -> float:
        return interpolate_absorption(lambda0, self.absorption_table)

    def with_index(self, n: Optional[float]) -> "MaterialModel":
        return replace(self, n_fixed=n)

    def to_dict(self) -> dict:
        return {
            "n_fixed": self.n_fixed,
            "absorption_table": [[float(w), float(a)] for w, a in self.absorption_table],
            "sigma_b": self.sigma_b,
            "delta_w": self.delta_w,
            "beta_w": self.beta_w,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MaterialModel":
        d = dict(d)
        if "absorption_table" in d:
            d["absorption_table"] = tuple((float(w), float(a)) for w, a in d["absorption_table"])
        unknown = set(d) - {"n_fixed", "absorption_table", "sigma_b", "delta_w", "beta_w"}
        if unknown:
            raise ValueError(f"unknown material keys: {sorted(unknown)}")
        return cls(**d)


def fused_silica() -> MaterialModel:
    return MaterialModel()


@dataclass(frozen=True)
class AtomSpec:
    """Two-level transition coupled to the mode.

    ``gamma_perp`` is the transverse dipole decay rate in rad/s.
    """

    lambda0: float
    gamma_perp: float
    name: str = field(default="atom")

    def __post_init__(self):
        if self.lambda0 <= 0 or self.gamma_perp <= 0:
            raise ValueError("AtomSpec needs lambda0 > 0 and gamma_perp > 0")

    @property
    def q_atom(self) -> float:
        return math.pi * C_LIGHT / (self.lambda0 * self.gamma_perp)

    @property
    def v0(self) -> float:
        """Effective radiative volume 3 c lambda0^2 / (4 pi gamma_perp), in m^3."""
        return 3.0 * C_LIGHT * self.lambda0**2 / (4.0 * math.pi * self.gamma_perp)

    def to_dict(self) -> dict:
        return {"name": self.name, "lambda0": self.lambda0, "gamma_perp": self.gamma_perp}

    @classmethod
    def from_dict(cls, d: dict) -> "AtomSpec":
        d = dict(d)
        if "gamma_perp_over_2pi" in d:
            if "gamma_perp" in d:
                raise ValueError("give gamma_perp or gamma_perp_over_2pi, not both")
            d["gamma_perp"] = 2.0 * math.pi * float(d.pop("gamma_perp_over_2pi"))
        unknown = set(d) - {"name", "lambda0", "gamma_perp"}
        if unknown:
            raise ValueError(f"unknown atom keys: {sorted(unknown)}")
        return cls(lambda0=float(d["lambda0"]), gamma_perp=float(d["gamma_perp"]),
                   name=str(d.get("name", "atom")))


def cesium_d2() -> AtomSpec:
    """Cs D2 (F=4 -> F'=5) at 852.359 nm, gamma_perp / 2pi = 2.61 MHz."""
    return AtomSpec(lambda0=852.359e-9, gamma_perp=2.0 * math.pi * 2.61e6, name="Cs D2")


ATOMS = {"cs-d2": cesium_d2}
