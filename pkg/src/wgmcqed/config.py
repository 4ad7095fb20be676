"""Run configuration: a fully serialisable record of one CLI invocation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import yaml

from .material import ATOMS, AtomSpec, MaterialModel, cesium_d2

COMMANDS = ("mode", "sweep", "optimize", "qbudget", "reproduce", "scenario")
FIGURES = ("fig2", "fig3", "fig5", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig14")
FORMATS = ("csv", "human")
DEFAULT_INDICES = (1.45246, 2.0, 3.0)
DIMENSIONLESS_FIGURES = ("fig2", "fig5", "fig7", "fig8")
SWEEP_RANGE = (20, 120)
DIMENSIONLESS_RANGE = (5, 60)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run.

    ``lambda0`` is the operating wavelength (m); the atom is moved onto it.
    ``indices`` are the refractive indices of the dimensionless figures.
    """

    command: str = "mode"
    figure: Optional[str] = None
    lambda0: float = 852.359e-9
    atom: AtomSpec = field(default_factory=cesium_d2)
    material: MaterialModel = field(default_factory=MaterialModel)
    l: Optional[int] = None
    l_min: Optional[int] = None
    l_max: Optional[int] = None
    q_fixed: Optional[float] = None
    radius: Optional[float] = None
    indices: tuple = DEFAULT_INDICES
    volume_policy: str = "shell"
    workers: int = 1
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}; choose from {COMMANDS}")
        if self.figure is not None and self.figure not in FIGURES:
            raise ValueError(f"unknown figure {self.figure!r}; choose from {FIGURES}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; choose from {FORMATS}")
        if not (self.lambda0 > 0 and math.isfinite(self.lambda0)):
            raise ValueError("lambda0 must be a positive wavelength in m")
        if self.q_fixed is not None and not self.q_fixed > 0:
            raise ValueError("q_fixed must be positive")
        if self.radius is not None and not self.radius > 0:
            raise ValueError("radius must be positive")
        if any(not n > 1.0 for n in self.indices):
            raise ValueError("dimensionless figures need indices n > 1")

    def resolved(self) -> "RunConfig":
        """Copy with command-dependent defaults filled in."""
        lo, hi = DIMENSIONLESS_RANGE if self.figure in DIMENSIONLESS_FIGURES else SWEEP_RANGE
        l_min = lo if self.l_min is None else self.l_min
        l_max = hi if self.l_max is None else self.l_max
        if l_min < 5 or l_max <= l_min:
            raise ValueError(f"need 5 <= l_min < l_max, got {l_min}, {l_max}")
        if self.l is not None and self.l < 5:
            raise ValueError(f"l must be >= 5, got {self.l}")
        return replace(self, l_min=l_min, l_max=l_max)

    @property
    def resolved_atom(self) -> AtomSpec:
        return replace(self.atom, lambda0=self.lambda0)

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["atom"] = self.atom.to_dict()
        d["material"] = self.material.to_dict()
        d["indices"] = [float(n) for n in self.indices]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        atom = d.get("atom")
        if isinstance(atom, str):
            d["atom"] = atom_by_name(atom)
        elif isinstance(atom, dict):
            d["atom"] = AtomSpec.from_dict(atom)
        if isinstance(d.get("material"), dict):
            d["material"] = MaterialModel.from_dict(d["material"])
        if "indices" in d:
            d["indices"] = tuple(float(n) for n in d["indices"])
        for key in ("lambda0", "q_fixed", "radius"):
            if d.get(key) is not None:
                d[key] = float(d[key])
        return cls(**d)

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    @classmethod
    def from_yaml(cls, text: str) -> "RunConfig":
        data = yaml.safe_load(text) or {}
        if not isinstance(data, dict):
            raise ValueError("config must be a mapping")
        return cls.from_dict(data)


def atom_by_name(name: str) -> AtomSpec:
    try:
        return ATOMS[name]()
    except KeyError:
        raise ValueError(f"unknown atom {name!r}; choose from {sorted(ATOMS)}") from None


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return RunConfig.from_yaml(fh.read())
