"""
Integer-l design sweeps, optimum search and fixed-radius scenarios.

Each integer l fixes the sphere radius through its resonance, so the design
space is a list of rows rather than a continuous curve. Crossing points
between the n0 and N0 curves are interpolated (log-linear in radius) and
marked as such.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .cqed import CqedPoint, cqed_point
from .errors import NoCrossingError, WgmError
from .material import AtomSpec, MaterialModel, cesium_d2, fused_silica
from .modes import Resonance, solve_resonance
from .quality import q_budget
from .volume import mode_volume

L_SWEEP_MIN = 5
L_SWEEP_MAX = 200


@dataclass(frozen=True)
class SweepRow:
    """One resonance of the sweep. Rates are in Hz (g / 2 pi), lengths in m."""

    l: int
    a: float
    x_tilde: float
    v_p: float
    v_tilde: float
    beta: float
    g_over_2pi: float
    q_rad: float
    q_bulk: float
    q_ss: float
    q_w: float
    q_total: float
    q_cavity: float
    n0: float
    N0: float
    geo_mean: float
    rad_valid: bool


def evaluate_row(l: int, atom: AtomSpec, material: MaterialModel,
                 q_fixed: Optional[float] = None, **volume_kw) -> SweepRow:
    """Full record for one l; ``q_fixed`` replaces the modeled cavity Q."""
    res = solve_resonance(l, atom.lambda0, material)
    vol = mode_volume(res, **volume_kw)
    qb = q_budget(res, material)
    pt = cqed_point(res, vol, qb if q_fixed is None else q_fixed, atom)
    return SweepRow(
        l=l,
        a=res.radius,
        x_tilde=res.x_tilde,
        v_p=vol.v_p,
        v_tilde=vol.v_tilde,
        beta=pt.beta,
        g_over_2pi=pt.g_over_2pi,
        q_rad=qb.q_rad,
        q_bulk=qb.q_bulk,
        q_ss=qb.q_ss,
        q_w=qb.q_w,
        q_total=qb.q_total,
        q_cavity=pt.q_cavity,
        n0=pt.n0,
        N0=pt.N0,
        geo_mean=pt.geo_mean,
        rad_valid=qb.rad_valid,
    )


def _row_or_error(args):
    l, atom, material, q_fixed, volume_kw = args
    try:
        return evaluate_row(l, atom, material, q_fixed, **volume_kw)
    except (WgmError, ValueError, ArithmeticError) as exc:
        return exc


def run_sweep(atom: AtomSpec, material: Optional[MaterialModel] = None, l_min: int = 20,
              l_max: int = 120, *, q_fixed: Optional[float] = None, workers: int = 1,
              **volume_kw) -> list:
    """One :class:`SweepRow` per l in ``[l_min, l_max]``, sorted by l.

    Rows whose solve fails are dropped with a ``RuntimeWarning``. ``workers > 1``
    evaluates rows in a process pool; the result is identical to a serial run.
    """
    if not (L_SWEEP_MIN <= l_min < l_max <= L_SWEEP_MAX):
        raise ValueError(f"need {L_SWEEP_MIN} <= l_min < l_max <= {L_SWEEP_MAX}, "
                         f"got {l_min}, {l_max}")
    material = fused_silica() if material is None else material
    jobs = [(l, atom, material, q_fixed, volume_kw) for l in range(l_min, l_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_row_or_error, jobs))
    else:
        results = [_row_or_error(j) for j in jobs]
    rows = []
    for (l, *_), r in zip(jobs, results):
        if isinstance(r, Exception):
            warnings.warn(f"skipping l={l}: {r}", RuntimeWarning, stacklevel=2)
        else:
            rows.append(r)
    return rows


# ---------------------------------------------------------------------------
# optimum search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Extremum:
    l: int
    a: float
    value: float
    at_boundary: bool


@dataclass(frozen=True)
class GeoMeanOptimum:
    l: int
    a: float
    n0: float
    N0: float
    g_over_2pi: float
    at_boundary: bool


@dataclass(frozen=True)
class Crossing:
    """n0 = N0 point, log-linearly interpolated between two integer-l rows."""

    a: float
    value: float
    l_below: int
    l_above: int
    interpolated: bool = True


@dataclass(frozen=True)
class OptimumReport:
    argmin_n0: Extremum
    argmin_N0: Extremum
    argmin_geomean: GeoMeanOptimum
    argmax_g: Extremum
    crossing: Optional[Crossing]


def _argext(rows: Sequence[SweepRow], key, sign=1.0):
    i = min(range(len(rows)), key=lambda k: (sign * key(rows[k]), rows[k].l))
    return i, i in (0, len(rows) - 1)


def find_crossing(rows: Sequence[SweepRow], *, strict: bool = False) -> Optional[Crossing]:
    """First sign change of ``log n0 - log N0`` along the rows.

    Both logarithms are interpolated linearly in radius between the bracketing
    rows. Returns ``None`` (or raises :class:`NoCrossingError` if ``strict``)
    when the curves do not cross.
    """
    for lo, hi in zip(rows[:-1], rows[1:]):
        d0 = math.log(lo.n0) - math.log(lo.N0)
        d1 = math.log(hi.n0) - math.log(hi.N0)
        if d0 == 0.0:
            return Crossing(lo.a, lo.n0, lo.l, lo.l, interpolated=False)
        if (d0 > 0) != (d1 > 0) and d1 != 0.0:
            t = d0 / (d0 - d1)
            a = lo.a + t * (hi.a - lo.a)
            value = math.exp(math.log(lo.n0) + t * (math.log(hi.n0) - math.log(lo.n0)))
            return Crossing(a, value, lo.l, hi.l)
    if rows and math.log(rows[-1].n0) == math.log(rows[-1].N0):
        return Crossing(rows[-1].a, rows[-1].n0, rows[-1].l, rows[-1].l, interpolated=False)
    if strict:
        raise NoCrossingError("n0 and N0 do not cross within the swept rows")
    return None


def find_optimum(rows: Sequence[SweepRow]) -> OptimumReport:
    """Minima of n0, N0 and sqrt(n0 N0), maximum of g and the n0 = N0 crossing.

    ``at_boundary`` marks an extremum on the first or last row, i.e. one that
    may lie outside the swept range.
    """
    if not rows:
        raise ValueError("no sweep rows")
    i, b = _argext(rows, lambda r: r.n0)
    n0 = Extremum(rows[i].l, rows[i].a, rows[i].n0, b)
    i, b = _argext(rows, lambda r: r.N0)
    N0 = Extremum(rows[i].l, rows[i].a, rows[i].N0, b)
    i, b = _argext(rows, lambda r: r.g_over_2pi, sign=-1.0)
    g = Extremum(rows[i].l, rows[i].a, rows[i].g_over_2pi, b)
    i, b = _argext(rows, lambda r: r.geo_mean)
    r = rows[i]
    gm = GeoMeanOptimum(r.l, r.a, r.n0, r.N0, r.g_over_2pi, b)
    return OptimumReport(n0, N0, gm, g, find_crossing(rows))


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiteraturePoint:
    """Published cavity parameters quoted for comparison; not computed here."""

    name: str
    g_over_2pi: float
    n0: float
    N0: float
    computed: bool = False


FABRY_PEROT_POINTS = (
    LiteraturePoint("Fabry-Perot, current", 110e6, 2.82e-4, 6.13e-3),
    LiteraturePoint("Fabry-Perot, projected limit", 770e6, 5.7e-6, 1.9e-4),
)


@dataclass(frozen=True)
class Scenario:
    """A sphere of given radius (or mode number) with modeled or fixed Q.

    The result fields are filled by :func:`evaluate_scenario`.
    """

    name: str
    radius: Optional[float] = None
    l: Optional[int] = None
    q_fixed: Optional[float] = None
    atom: AtomSpec = field(default_factory=cesium_d2)
    material: MaterialModel = field(default_factory=fused_silica)
    resonance: Optional[Resonance] = None
    v_p: Optional[float] = None
    point: Optional[CqedPoint] = None

    @property
    def q_source(self) -> str:
        return "modeled" if self.q_fixed is None else "fixed"


def nearest_resonance(radius: float, lambda0: float, material: MaterialModel,
                      *, l_max: int = 5000) -> Resonance:
    """TM resonance (p = 1) whose radius is closest to ``radius``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = material.index(lambda0)
    x = 2.0 * math.pi * n * radius / lambda0
    # first-order WGM asymptotics x ~ nu + 1.856 (nu/2)^(1/3), solved for nu
    nu = x
    for _ in range(20):
        nu = x - 1.8557571 * (nu / 2.0) ** (1.0 / 3.0)
    l = max(5, int(round(nu - 0.5)))
    if l > l_max:
        raise ValueError(f"radius {radius:g} m needs l ~ {l} > {l_max}")

    def dist(k):
        r = solve_resonance(k, lambda0, material)
        return abs(r.radius - radius), r

    d, best = dist(l)
    for step in (1, -1):
        k = l + step
        while 5 <= k <= l_max:
            dk, rk = dist(k)
            if dk >= d:
                break
            d, best = dk, rk
            k += step
    return best


def evaluate_scenario(s: Scenario, **volume_kw) -> Scenario:
    """Solve the scenario's resonance and attach its volume and CQED point."""
    if (s.radius is None) == (s.l is None):
        raise ValueError("scenario needs exactly one of radius or l")
    if s.l is not None:
        res = solve_resonance(s.l, s.atom.lambda0, s.material)
    else:
        res = nearest_resonance(s.radius, s.atom.lambda0, s.material)
    vol = mode_volume(res, **volume_kw)
    q = q_budget(res, s.material) if s.q_fixed is None else s.q_fixed
    return replace(s, resonance=res, v_p=vol.v_p, point=cqed_point(res, vol, q, s.atom))


def default_scenarios(atom: AtomSpec, material: MaterialModel) -> list:
    """Experimental and projected microsphere points used for comparison."""
    return [
        Scenario("60 um sphere, Q = 5e7", radius=60e-6, q_fixed=5e7, atom=atom, material=material),
        Scenario("10 um sphere, Q = 0.8e7", radius=10e-6, q_fixed=0.8e7, atom=atom, material=material),
        Scenario("7.83 um sphere, Q = 0.8e7", radius=7.83e-6, q_fixed=0.8e7, atom=atom, material=material),
        Scenario("7.83 um sphere, modeled Q", radius=7.83e-6, atom=atom, material=material),
    ]
