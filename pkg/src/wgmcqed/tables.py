"""Build output tables for each CLI command and figure id."""
from __future__ import annotations

import math
import warnings

from .config import RunConfig
from .cqed import beta, cqed_point
from .errors import RadiativeQWarning, WgmError
from .material import MaterialModel
from .modes import exterior_surface_amplitude, solve_resonance
from .quality import q_budget, q_rad
from .report import Table
from .sweep import (
    FABRY_PEROT_POINTS,
    Scenario,
    default_scenarios,
    evaluate_scenario,
    find_optimum,
    run_sweep,
)
from .volume import mode_volume

UM, UM3, MHZ = 1e6, 1e18, 1e-6

SWEEP_COLUMNS = [
    "l", "a_m", "x_tilde", "v_p_m3", "v_tilde", "beta", "g_over_2pi_Hz", "q_rad", "q_bulk",
    "q_ss", "q_w", "q_total", "q_cavity", "n0", "N0", "geo_mean", "rad_valid",
]


def _vol_kw(cfg: RunConfig) -> dict:
    return {"policy": cfg.volume_policy}


def _sweep(cfg: RunConfig):
    return run_sweep(cfg.resolved_atom, cfg.material, cfg.l_min, cfg.l_max,
                     q_fixed=cfg.q_fixed, workers=cfg.workers, **_vol_kw(cfg))


def _l_values(cfg: RunConfig):
    return [cfg.l] if cfg.l is not None else list(range(cfg.l_min, cfg.l_max + 1))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def mode_table(cfg: RunConfig) -> Table:
    atom = cfg.resolved_atom
    res = solve_resonance(cfg.l, cfg.lambda0, cfg.material)
    vol = mode_volume(res, **_vol_kw(cfg))
    qb = q_budget(res, cfg.material)
    pt = cqed_point(res, vol, qb if cfg.q_fixed is None else cfg.q_fixed, atom)
    t = Table("mode", ["quantity", "value"])
    for name, value in (
        ("l", res.l), ("n", res.n), ("a_m", res.radius), ("x_tilde", res.x_tilde),
        ("B_re", res.B.real), ("B_im", res.B.imag), ("norm", res.norm),
        ("surface_amplitude", pt.surf_amp), ("v_p_m3", vol.v_p), ("v_tilde", vol.v_tilde),
        ("interior_fraction", vol.interior_fraction), ("beta", pt.beta),
        ("g_over_2pi_Hz", pt.g_over_2pi), ("q_rad", qb.q_rad), ("q_bulk", qb.q_bulk),
        ("q_ss", qb.q_ss), ("q_w", qb.q_w), ("q_mat", qb.q_mat), ("q_total", qb.q_total),
        ("dominant_loss", qb.dominant), ("q_cavity", pt.q_cavity), ("kappa_rad_s", pt.kappa),
        ("n0", pt.n0), ("N0", pt.N0), ("geo_mean", pt.geo_mean), ("rad_valid", qb.rad_valid),
    ):
        t.add(name, value)
    return t


def sweep_table(cfg: RunConfig) -> Table:
    t = Table("sweep", list(SWEEP_COLUMNS))
    for r in _sweep(cfg):
        t.add(*(getattr(r, c) for c in ("l", "a", "x_tilde", "v_p", "v_tilde", "beta",
                                        "g_over_2pi", "q_rad", "q_bulk", "q_ss", "q_w",
                                        "q_total", "q_cavity", "n0", "N0", "geo_mean",
                                        "rad_valid")))
    if cfg.q_fixed is not None:
        t.notes.append(f"cavity Q fixed at {cfg.q_fixed:g}")
    return t


def optimize_table(cfg: RunConfig) -> Table:
    rep = find_optimum(_sweep(cfg))
    t = Table("optimize", ["record", "l", "a_m", "value", "n0", "N0", "g_over_2pi_Hz",
                           "at_boundary", "interpolated"])
    t.add("min_n0", rep.argmin_n0.l, rep.argmin_n0.a, rep.argmin_n0.value, None, None, None,
          rep.argmin_n0.at_boundary, False)
    t.add("min_N0", rep.argmin_N0.l, rep.argmin_N0.a, rep.argmin_N0.value, None, None, None,
          rep.argmin_N0.at_boundary, False)
    t.add("max_g", rep.argmax_g.l, rep.argmax_g.a, rep.argmax_g.value, None, None, None,
          rep.argmax_g.at_boundary, False)
    gm = rep.argmin_geomean
    t.add("min_geo_mean", gm.l, gm.a, math.sqrt(gm.n0 * gm.N0), gm.n0, gm.N0, gm.g_over_2pi,
          gm.at_boundary, False)
    if rep.crossing is None:
        t.notes.append("n0 and N0 do not cross within the swept range")
    else:
        c = rep.crossing
        t.add("crossing", None, c.a, c.value, c.value, c.value, None, False, c.interpolated)
        t.notes.append(f"crossing interpolated log-linearly between l={c.l_below} and l={c.l_above}")
    return t


def qbudget_table(cfg: RunConfig) -> Table:
    t = Table("qbudget", ["l", "a_m", "q_rad", "q_bulk", "q_ss", "q_w", "q_mat", "q_total",
                          "dominant", "rad_valid"])
    for l in _l_values(cfg):
        res = solve_resonance(l, cfg.lambda0, cfg.material)
        qb = q_budget(res, cfg.material)
        t.add(l, res.radius, qb.q_rad, qb.q_bulk, qb.q_ss, qb.q_w, qb.q_mat, qb.q_total,
              qb.dominant, qb.rad_valid)
    return t


def scenario_table(cfg: RunConfig) -> Table:
    atom = cfg.resolved_atom
    if cfg.radius is not None or cfg.l is not None:
        label = f"a = {cfg.radius:g} m" if cfg.radius is not None else f"l = {cfg.l}"
        q = "modeled Q" if cfg.q_fixed is None else f"Q = {cfg.q_fixed:g}"
        scenarios = [Scenario(f"{label}, {q}", radius=cfg.radius, l=cfg.l if cfg.radius is None else None,
                              q_fixed=cfg.q_fixed, atom=atom, material=cfg.material)]
    else:
        scenarios = default_scenarios(atom, cfg.material)
    t = Table("scenario", ["name", "source", "l", "a_um", "q_cavity", "v_p_um3",
                           "g_over_2pi_MHz", "n0", "N0"])
    for s in scenarios:
        e = evaluate_scenario(s, **_vol_kw(cfg))
        t.add(e.name, f"computed ({e.q_source} Q)", e.resonance.l, e.resonance.radius * UM,
              e.point.q_cavity, e.v_p * UM3, e.point.g_over_2pi * MHZ, e.point.n0, e.point.N0)
    for p in FABRY_PEROT_POINTS:
        t.add(p.name, "literature constant", None, None, None, None, p.g_over_2pi * MHZ,
              p.n0, p.N0)
    return t


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

def _dimensionless_rows(cfg: RunConfig):
    """(n, resonance, volume) over the configured indices and l range."""
    lam = 1e-6
    for n in cfg.indices:
        mat = MaterialModel(n_fixed=n)
        for l in range(cfg.l_min, cfg.l_max + 1):
            try:
                res = solve_resonance(l, lam, mat)
                vol = mode_volume(res, **_vol_kw(cfg))
            except (WgmError, ValueError, ArithmeticError) as exc:
                warnings.warn(f"skipping n={n}, l={l}: {exc}", RuntimeWarning, stacklevel=2)
                continue
            yield n, res, vol


def _note_minima(t: Table, key: str, *, largest: bool = False):
    ns = sorted(set(t.column("n")))
    for n in ns:
        rows = [r for r in t.rows if r[0] == n]
        i = t.columns.index(key)
        best = (max if largest else min)(rows, key=lambda r: r[i])
        word = "maximum" if largest else "minimum"
        t.notes.append(f"n={n:g}: {word} {key}={best[i]:.6g} at l={best[1]}, x_tilde={best[2]:.6g}")


def fig2(cfg):
    t = Table("fig2 dimensionless mode volume", ["n", "l", "x_tilde", "v_tilde"])
    for n, res, vol in _dimensionless_rows(cfg):
        t.add(n, res.l, res.x_tilde, vol.v_tilde)
    _note_minima(t, "v_tilde")
    return t


def fig3(cfg):
    t = Table("fig3 mode volume", ["l", "a_um", "v_p_um3"])
    for l in _l_values(cfg):
        res = solve_resonance(l, cfg.lambda0, cfg.material)
        t.add(l, res.radius * UM, mode_volume(res, **_vol_kw(cfg)).v_p * UM3)
    return t


def fig5(cfg):
    t = Table("fig5 radiative Q", ["n", "l", "x_tilde", "q_rad", "rad_valid"])
    lam = 1e-6
    for n in cfg.indices:
        mat = MaterialModel(n_fixed=n)
        for l in range(cfg.l_min, cfg.l_max + 1):
            try:
                res = solve_resonance(l, lam, mat)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RadiativeQWarning)
                    q = q_rad(l, 1, n, "TM")
            except (WgmError, ValueError, ArithmeticError) as exc:
                warnings.warn(f"skipping n={n}, l={l}: {exc}", RuntimeWarning, stacklevel=2)
                continue
            t.add(n, l, res.x_tilde, q, l >= 18)
    return t


def _beta_dimensionless(res, vol):
    return beta(vol, exterior_surface_amplitude(res), res.lambda0)


def fig7(cfg):
    t = Table("fig7 beta", ["n", "l", "x_tilde", "beta"])
    for n, res, vol in _dimensionless_rows(cfg):
        t.add(n, res.l, res.x_tilde, _beta_dimensionless(res, vol))
    _note_minima(t, "beta")
    return t


def fig8(cfg):
    t = Table("fig8 inverse sqrt beta", ["n", "l", "x_tilde", "inv_sqrt_beta"])
    for n, res, vol in _dimensionless_rows(cfg):
        t.add(n, res.l, res.x_tilde, 1.0 / math.sqrt(_beta_dimensionless(res, vol)))
    _note_minima(t, "inv_sqrt_beta", largest=True)
    return t


def _sweep_figure(cfg, name, columns, getters):
    rows = _sweep(cfg)
    t = Table(name, ["l", "a_um"] + columns)
    for r in rows:
        t.add(r.l, r.a * UM, *(g(r) for g in getters))
    return t, rows


def fig9(cfg):
    t, rows = _sweep_figure(cfg, "fig9 coupling", ["g_over_2pi_MHz"], [lambda r: r.g_over_2pi * MHZ])
    best = max(rows, key=lambda r: r.g_over_2pi)
    t.notes.append(f"maximum g/2pi={best.g_over_2pi * MHZ:.6g} MHz at l={best.l}, a={best.a * UM:.6g} um")
    return t


def fig10(cfg):
    t, rows = _sweep_figure(cfg, "fig10 saturation photon number", ["n0"], [lambda r: r.n0])
    best = min(rows, key=lambda r: r.n0)
    t.notes.append(f"minimum n0={best.n0:.6g} at l={best.l}, a={best.a * UM:.6g} um")
    return t


def fig11(cfg):
    t, rows = _sweep_figure(cfg, "fig11 critical atom number", ["N0", "q_cavity"],
                            [lambda r: r.N0, lambda r: r.q_cavity])
    best = min(rows, key=lambda r: r.N0)
    t.notes.append(f"minimum N0={best.N0:.6g} at l={best.l}, a={best.a * UM:.6g} um")
    return t


def fig12(cfg):
    t, rows = _sweep_figure(cfg, "fig12 n0 N0 geometric mean", ["n0", "N0", "geomean"],
                            [lambda r: r.n0, lambda r: r.N0, lambda r: r.geo_mean])
    rep = find_optimum(rows)
    gm = rep.argmin_geomean
    t.notes.append(f"minimum geomean at l={gm.l}, a={gm.a * UM:.6g} um: n0={gm.n0:.6g}, N0={gm.N0:.6g}")
    if rep.crossing is not None:
        c = rep.crossing
        t.notes.append(f"curves cross at a={c.a * UM:.6g} um, n0=N0={c.value:.6g} (interpolated)")
    return t


def fig14(cfg):
    t = scenario_table(cfg)
    t.name = "fig14 scenarios"
    return t


FIGURE_BUILDERS = {
    "fig2": fig2, "fig3": fig3, "fig5": fig5, "fig7": fig7, "fig8": fig8, "fig9": fig9,
    "fig10": fig10, "fig11": fig11, "fig12": fig12, "fig14": fig14,
}

COMMAND_BUILDERS = {
    "mode": mode_table,
    "sweep": sweep_table,
    "optimize": optimize_table,
    "qbudget": qbudget_table,
    "scenario": scenario_table,
    "reproduce": lambda cfg: FIGURE_BUILDERS[cfg.figure](cfg),
}


def build_table(cfg: RunConfig) -> Table:
    return COMMAND_BUILDERS[cfg.command](cfg)
