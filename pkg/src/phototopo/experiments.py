"""Experiment recipes: the invariant sweep (``table1``) and ``fig1`` ... ``fig6``.

Every recipe returns a :class:`RunResult` holding a JSON-able summary,
row tables for ``spectra.csv`` / ``profiles.csv`` and a plot script that only
reads those CSV files.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bloch import KGrid, band_structure, gap_check, is_hermitian
from .invariants import (
    InvariantResult,
    chern_2d,
    chern_isv_2d,
    winding_chiral_1d,
    winding_spectral_1d,
)
from .mediator import EmitterLayout, effective_bloch
from .models import (
    SZ,
    chiral_nh_2d,
    enlarge_cell,
    hatano_nelson,
    qwz,
    ssh,
    stacked_hn,
    theta_model,
    theta_unitary,
)
from .realspace import (
    ATOMIC,
    OPEN,
    PERIODIC,
    PHOTONIC,
    attach_emitters,
    build_bath,
    chiral_polarize,
    ky_nodes,
    localization_score,
    ribbon_spectrum,
    skin_profile,
    spectrum_with_sectors,
)
from .symmetry import SymmetryOp, find_symmetries


def cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real + 0.0, "im": z.imag + 0.0}  # + 0.0 drops negative zeros


@dataclass
class RunResult:
    name: str
    summary: dict
    spectra: list = field(default_factory=list)
    profiles: list = field(default_factory=list)
    plot_script: str = ""


def auto_invariant(model, base_energy: complex = 0.0, grid: KGrid | None = None) -> InvariantResult:
    """The Z invariant appropriate for the model's dimension and Hermiticity.

    1D Hermitian: chiral winding (needs a chiral symmetry); 1D non-Hermitian:
    spectral winding about ``base_energy``; 2D Hermitian: Chern number of the
    bands below ``Re base_energy``; 2D non-Hermitian: Chern number of iSV.
    """
    herm = is_hermitian(model) and complex(base_energy).imag == 0
    if model.dim == 1 and not herm:
        return winding_spectral_1d(model, base_energy, grid)
    if model.dim == 2 and herm:
        return chern_2d(model, grid, complex(base_energy).real)
    variant = "HERM" if herm else "NH_AZ"
    chiral = [op for op in find_symmetries(model, variant) if op.flavor == "CHIRAL"]
    if not chiral:
        raise ValueError(f"{model.name}: no chiral symmetry found for a chiral invariant")
    # prefer sz when it is a chiral operator: it fixes the orientation convention
    S = next((op for op in chiral if np.allclose(op.unitary, SZ)), chiral[0])
    if model.dim == 1:
        return winding_chiral_1d(model, S, grid)
    return chern_isv_2d(model, S, base_energy, grid)


def _mediated(model, omega_e, g, pi=None):
    layout = EmitterLayout(pi or (1,) * model.n_bands, omega_e, g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return effective_bloch(model, layout)


# -- invariant sweep over the four quadrants ----------------------------------

TABLE1_CASES = (
    # name, constructor, omega_e, hermitian flag h
    ("ssh", lambda: ssh(1.0, 1.5), 0.0, 1),
    ("qwz", lambda: qwz(1.2, 1.0), 0.0, 1),
    ("hn", lambda: hatano_nelson(1.0, 0.5, 1.0), -1j, 0),
    ("chiral_nh_2d", lambda: chiral_nh_2d(1.0), -1j, 0),
)


def table1(g_fraction: float = 0.1, grid_m: int | None = None) -> RunResult:
    """nu_a vs nu_p in the four (Hermitian?, D) quadrants with ``g = g_fraction * gap``."""
    rows = []
    for name, ctor, w, h in TABLE1_CASES:
        bath = ctor()
        grid = KGrid(grid_m, bath.dim) if grid_m else KGrid.default(bath.dim)
        gap = gap_check(bath, grid, w, kind="point").min_distance
        g = g_fraction * gap
        ha = _mediated(bath, w, g)
        nu_p = auto_invariant(bath, w, grid)
        nu_a = auto_invariant(ha, w, grid)
        sign = (-1) ** (bath.dim + h)
        rows.append(
            {
                "model": name,
                "dim": bath.dim,
                "hermitian": bool(h),
                "omega_e": cplx(w),
                "g": g,
                "nu_p": nu_p.to_dict(),
                "nu_a": nu_a.to_dict(),
                "predicted_sign": sign,
                "pass": bool(nu_a.value == sign * nu_p.value and nu_p.value != 0),
            }
        )
    summary = {"rows": rows, "all_pass": all(r["pass"] for r in rows)}
    return RunResult("table1", summary)


# -- SSH bath: photonic and emitter edge states -------------------------------

FIG1 = {"v": 1.0, "w": 1.5, "g": 0.1, "omega_e": 0.0, "n_cells": 30, "stripe_d": 4}


def _chiral_diag(system) -> np.ndarray:
    # bath sublattice 0/1 -> +1/-1; emitters carry the opposite sign
    return np.array(
        [(1 if s.sublattice == 0 else -1) * (-1 if s.sector == ATOMIC else 1) for s in system.sites],
        dtype=float,
    )


def atomic_edge_states(v, w, g=0.1, n_cells=30, stripe_d=4, omega_e=0.0):
    """Emitter edge states of a finite emitter array inside a periodic SSH bath.

    Returns ``(system, spectrum, in_gap_indices, polarized_vectors, atomic_gap)``.
    In-gap means ``|E - w| < atomic_gap / 2`` with ``atomic_gap`` the smallest
    ``|E|`` of the mediated Bloch bands.
    """
    bath = build_bath(ssh(v, w), n_cells, PERIODIC)
    system = attach_emitters(bath, EmitterLayout.full(2, omega_e, g, stripe_d))
    spec = spectrum_with_sectors(system)
    ha = _mediated(ssh(v, w), omega_e, g)
    atomic_gap = float(np.min(np.abs(band_structure(ha, KGrid(256)).energies - omega_e)))
    at = spec.select(ATOMIC)
    in_gap = at[np.abs(spec.energies[at] - omega_e) < 0.5 * atomic_gap]
    vecs = spec.vectors[:, in_gap]
    if len(in_gap):
        vecs = chiral_polarize(vecs, _chiral_diag(system))
    return system, spec, in_gap, vecs, atomic_gap


def fig1(v=FIG1["v"], w=FIG1["w"], g=FIG1["g"], n_cells=FIG1["n_cells"], stripe_d=FIG1["stripe_d"]) -> RunResult:
    """SSH bath: photonic edge states (open chain) and atomic edge states (open emitter array)."""
    # photonic panel: open chain of the same 2*n_cells resonators
    bare = build_bath(ssh(v, w), n_cells, OPEN)
    bspec = spectrum_with_sectors(bare)
    ph_mid = np.flatnonzero(np.abs(bspec.energies) < 0.1 * abs(v - w))
    rows_s, rows_p = [], []
    for i, E in enumerate(bspec.energies):
        rows_s.append({"panel": "photonic_open", "index": i, "re": E.real, "im": E.imag, "sector": PHOTONIC})
    ph_vecs = chiral_polarize(bspec.vectors[:, ph_mid], _chiral_diag(bare)) if len(ph_mid) else []
    for j in range(len(ph_mid)):
        for n, amp in enumerate(np.abs(ph_vecs[:, j])):
            rows_p.append({"panel": "photonic_edge", "state": j, "site": n, "value": float(amp)})

    summary = {"params": {"v": v, "w": w, "g": g, "n_resonators": 2 * n_cells, "stripe_cells": stripe_d}}
    summary["photonic_midgap_states"] = len(ph_mid)
    summary["photonic_midgap_energies"] = [abs(complex(bspec.energies[j])) for j in ph_mid]

    for label, (vv, ww) in (("topological", (v, w)), ("swapped", (w, v))):
        system, spec, in_gap, vecs, atomic_gap = atomic_edge_states(vv, ww, g, n_cells, stripe_d)
        mask = system.sector_mask(ATOMIC)
        pos = system.positions()[mask]
        scores = []
        for j in range(vecs.shape[1]):
            wt = np.abs(vecs[mask, j]) ** 2
            scores.append(localization_score(wt / wt.sum(), pos))
            if label == "topological":
                for n, amp in enumerate(np.abs(vecs[mask, j]) / np.sqrt(wt.sum())):
                    rows_p.append({"panel": "atomic_edge", "state": j, "site": n, "value": float(amp)})
        at = spec.select(ATOMIC)
        nu_a = winding_chiral_1d(_mediated(ssh(vv, ww), 0.0, g), SymmetryOp(SZ, "CHIRAL"))
        summary[label] = {
            "n_emitters": int(mask.sum()),
            "atomic_ingap_states": len(in_gap),
            "atomic_edge_scores": scores,
            "atomic_bulk_gap": atomic_gap,
            "atomic_bulk_gap_over_g2_scale": atomic_gap / (g**2 / (vv + ww)),
            "nu_p": winding_chiral_1d(ssh(vv, ww), SymmetryOp(SZ, "CHIRAL")).value,
            "nu_a": nu_a.value,
        }
        if label == "topological":
            for i in at:
                E = spec.energies[i]
                rows_s.append({"panel": "atomic", "index": int(i), "re": E.real, "im": E.imag, "sector": ATOMIC})
    return RunResult("fig1", summary, rows_s, rows_p, PLOT_FIG1)


# -- QWZ ribbon: chiral edge branches -----------------------------------------

FIG2 = {"u": 1.2, "J": 1.0, "g": 0.1, "omega_e": 0.0, "L": 50, "stripes": (0, 1, 4), "n_ky": 101}


def _branch_slope(points):
    """Least-squares dE/dky of a branch crossing near ky = pi (ky unwrapped to [0, 2 pi))."""
    if len(points) < 2:
        return None
    arr = np.array(points)
    q = np.mod(arr[:, 0], 2 * np.pi)
    return float(np.polyfit(q, arr[:, 1], 1)[0])


def ribbon_analysis(u=1.2, J=1.0, g=0.1, L=50, stripe_d=0, n_ky=101, omega_e=0.0):
    """Ribbon spectrum plus in-gap statistics and right-boundary branch slopes."""
    model = qwz(u, J)
    rs = ribbon_spectrum(model, EmitterLayout.full(2, omega_e, g, stripe_d), L, ky_nodes(n_ky))
    gap_p = gap_check(model, KGrid(128, 2), omega_e).min_distance
    ha = _mediated(model, omega_e, g)
    gap_a = float(np.min(np.abs(band_structure(ha, KGrid(128, 2)).energies - omega_e)))
    pts = {PHOTONIC: {"right": [], "left": []}, ATOMIC: {"right": [], "left": []}}
    n_atomic_in_gap = 0
    for q, E, S, sc in zip(rs.ky, rs.energies, rs.sectors, rs.scores):
        E = E.real - np.real(omega_e)
        win = {PHOTONIC: np.abs(E) < 0.5 * gap_p, ATOMIC: np.abs(E) < 0.5 * gap_a}
        n_atomic_in_gap += int(np.sum((S == ATOMIC) & (np.abs(E) < 0.9 * gap_a)))
        for sector in (PHOTONIC, ATOMIC):
            sel = (S == sector) & win[sector]
            if sector == PHOTONIC:
                sel &= np.abs(E) > 0.5 * gap_a * 10  # keep away from the emitter window
            for i in np.flatnonzero(sel):
                side = "right" if sc[i] > 0.5 else "left" if sc[i] < -0.5 else None
                if side:
                    pts[sector][side].append((q, E[i]))
    slopes = {
        sector: {side: _branch_slope(p) for side, p in sides.items()} for sector, sides in pts.items()
    }
    return rs, {
        "stripe_d": stripe_d,
        "photonic_gap": gap_p,
        "atomic_gap": gap_a,
        "atomic_ingap_states": n_atomic_in_gap,
        "slopes": slopes,
        "branch_points": {s: {k: len(v) for k, v in d.items()} for s, d in pts.items()},
    }


def fig2(u=FIG2["u"], J=FIG2["J"], g=FIG2["g"], L=FIG2["L"], stripes=FIG2["stripes"], n_ky=FIG2["n_ky"]) -> RunResult:
    rows = []
    panels = []
    for d in stripes:
        rs, info = ribbon_analysis(u, J, g, L, d, n_ky)
        sp, sa = info["slopes"][PHOTONIC]["right"], info["slopes"][ATOMIC]["right"]
        info["right_boundary_opposite_velocity"] = bool(sp is not None and sa is not None and sp * sa < 0)
        panels.append(info)
        for q, E, S, sc in zip(rs.ky, rs.energies, rs.sectors, rs.scores):
            for e, s, c in zip(E, S, sc):
                rows.append({"d": d, "ky": float(q), "re": e.real, "sector": s, "score": float(c)})
    summary = {"params": {"u": u, "J": J, "g": g, "L": L, "n_ky": n_ky}, "panels": panels}
    return RunResult("fig2", summary, rows, [], PLOT_FIG2)


# -- Hatano-Nelson bath: skin effect ------------------------------------------

FIG3 = {"J": 1.0, "delta": 0.5, "g": 0.5, "omega_e": -1j, "n_cells": 20, "stripe_d": 5}


def fig3(J=FIG3["J"], delta=FIG3["delta"], g=FIG3["g"], n_cells=FIG3["n_cells"], stripe_d=FIG3["stripe_d"]) -> RunResult:
    """Hatano-Nelson bath: photonic skin modes on one edge, emitter skin modes on the other."""
    w = -1j * J
    model = hatano_nelson(J, delta)
    bare = build_bath(model, n_cells, OPEN)
    p_ph = skin_profile(bare, PHOTONIC)
    system = attach_emitters(build_bath(model, n_cells, PERIODIC), EmitterLayout.full(1, w, g, stripe_d))
    spec = spectrum_with_sectors(system)
    p_at = skin_profile(system, ATOMIC, spec)
    ha = _mediated(model, w, g)
    nu_p, nu_a = winding_spectral_1d(model, w), winding_spectral_1d(ha, w)
    grid = KGrid(256)
    rows_s = []
    for panel, m in (("photonic_bloch", model), ("atomic_bloch", ha)):
        for E in band_structure(m, grid).energies.ravel():
            rows_s.append({"panel": panel, "re": E.real, "im": E.imag})
    rows_p = [
        {"panel": "photonic_open", "site": float(x), "value": float(v)} for x, v in zip(p_ph.positions, p_ph.weights)
    ] + [{"panel": "atomic", "site": float(x), "value": float(v)} for x, v in zip(p_at.positions, p_at.weights)]
    summary = {
        "params": {"J": J, "delta": delta, "g": g, "omega_e": cplx(w), "N": n_cells, "removed_emitters": 2 * stripe_d},
        "n_atomic_states": int(len(spec.select(ATOMIC))),
        "photonic_argmax_site": float(p_ph.positions[np.argmax(p_ph.weights)]),
        "atomic_argmax_site": float(p_at.positions[np.argmax(p_at.weights)]),
        "atomic_sites": [float(p_at.positions.min()), float(p_at.positions.max())],
        "photonic_score": localization_score(p_ph.weights, p_ph.positions),
        "atomic_score": localization_score(p_at.weights, p_at.positions),
        "nu_p": nu_p.to_dict(),
        "nu_a": nu_a.to_dict(),
    }
    return RunResult("fig3", summary, rows_s, rows_p, PLOT_FIG3)


# -- 2D chiral non-Hermitian bath ---------------------------------------------

FIG4 = {"J": 1.0, "g": 0.5, "omega_e": -1j, "grid_m": 64}


def fig4(J=FIG4["J"], g=FIG4["g"], grid_m=FIG4["grid_m"]) -> RunResult:
    """2D chiral non-Hermitian bath: complex spectra and the Chern number of iSV."""
    w = -1j * J
    model = chiral_nh_2d(J)
    ha = _mediated(model, w, g)
    S = SymmetryOp(SZ, "CHIRAL", "NH_AZ")
    nu_p, nu_a = chern_isv_2d(model, S, w), chern_isv_2d(ha, S, w)
    rows = []
    for panel, m in (("photonic", model), ("atomic", ha)):
        for E in band_structure(m, KGrid(grid_m, 2)).energies.ravel():
            rows.append({"panel": panel, "re": E.real, "im": E.imag})
    summary = {
        "params": {"J": J, "g": g, "omega_e": cplx(w)},
        "nu_p": nu_p.to_dict(),
        "nu_a": nu_a.to_dict(),
        "preserved": nu_p.value == nu_a.value,
    }
    return RunResult("fig4", summary, rows, [], PLOT_FIG4)


# -- theta model: emitter placements that break the symmetry ------------------

ON_CELL = (1, 1, 0, 0)
CELL_BREAKING = (0, 1, 1, 0)


def theta_mediated(v, w, theta, g, pi):
    return _mediated(enlarge_cell(theta_model(v, w, theta), 2), 0.0, g, pi)


def proportionality(ha, ref, ks, transform=None) -> tuple:
    """Constant ``c`` with ``H_a(k) = c [ref(k)]^-1`` and its spread over ``ks``."""
    ratios = []
    for k in ks:
        B = np.linalg.inv(ref(k))
        if transform is not None:
            B = transform.conj().T @ B @ transform
        A = ha(k)
        mask = np.abs(B) > 1e-9
        ratios.append(A[mask] / B[mask])
    r = np.concatenate(ratios)
    return complex(r.mean()), float(np.max(np.abs(r - r.mean())))


def theta_gap(ha, m: int = 2048) -> float:
    E = band_structure(ha, KGrid(m)).energies.real
    return float(np.min(E[:, 1] - E[:, 0]))


def fig5_edge_states(v, w, g=0.1, n_cells=40, stripe_d=5):
    """Atomic in-gap states for on-cell and cell-breaking emitters in a periodic SSH bath."""
    big = enlarge_cell(ssh(v, w), 2)
    out = {}
    for name, pi in (("on_cell", ON_CELL), ("cell_breaking", CELL_BREAKING)):
        system = attach_emitters(build_bath(big, n_cells, PERIODIC), EmitterLayout(pi, 0.0, g, stripe_d))
        spec = spectrum_with_sectors(system)
        ha = _mediated(big, 0.0, g, pi)
        gap = float(np.min(np.abs(band_structure(ha, KGrid(256)).energies)))
        at = spec.select(ATOMIC)
        out[name] = int(np.sum(np.abs(spec.energies[at]) < 0.5 * gap))
    return out


def fig5(v=1.0, w=1.5, g=0.1, thetas=(0.0, np.pi / 8)) -> RunResult:
    ks = np.linspace(0.05, 2 * np.pi - 0.05, 64)
    S = SymmetryOp(SZ, "CHIRAL")
    rows = []
    for th in thetas:
        on = theta_mediated(v, w, th, g, ON_CELL)
        cb = theta_mediated(v, w, th, g, CELL_BREAKING)
        c_on, s_on = proportionality(on, ssh(v**2, -(w**2)), ks, theta_unitary(th))
        row = {
            "theta": th,
            "on_cell_constant": cplx(c_on),
            "on_cell_spread": s_on,
            "cell_breaking_gap": theta_gap(cb),
            "cell_breaking_gap_formula": 2 * g**2 * w * np.cos(2 * th) / (v**2 + w**2),
        }
        if th == 0.0:
            c_cb, s_cb = proportionality(cb, ssh(w**2, -(v**2)), ks)
            row.update({"cell_breaking_constant": cplx(c_cb), "cell_breaking_spread": s_cb})
        rows.append(row)
    windings = []
    for vv, ww in ((v, w), (w, v)):
        windings.append(
            {
                "v": vv,
                "w": ww,
                "nu_p": winding_chiral_1d(ssh(vv, ww), S).value,
                "nu_a_on_cell": winding_chiral_1d(theta_mediated(vv, ww, 0.0, g, ON_CELL), S).value,
                "nu_a_cell_breaking": winding_chiral_1d(theta_mediated(vv, ww, 0.0, g, CELL_BREAKING), S).value,
                "edge_states": fig5_edge_states(vv, ww, g),
            }
        )
    summary = {"params": {"v": v, "w": w, "g": g}, "theta_rows": rows, "windings": windings}
    spectra = []
    for th in thetas:
        for name, pi in (("on_cell", ON_CELL), ("cell_breaking", CELL_BREAKING)):
            E = band_structure(theta_mediated(v, w, th, g, pi), KGrid(128)).energies.real
            for j, k in enumerate(KGrid(128).axis):
                for b in range(E.shape[1]):
                    spectra.append({"theta": th, "config": name, "k": float(k), "band": b, "re": float(E[j, b])})
    return RunResult("fig5", summary, spectra, [], PLOT_FIG5)


# -- stacked chains: emitter skin effect --------------------------------------

FIG6 = {"kappa": 1.0, "J": 0.5, "g": 0.1, "n_cells": 20, "stripe_d": 3}


def fig6(kappa=FIG6["kappa"], J=FIG6["J"], g=FIG6["g"], n_cells=FIG6["n_cells"], stripe_d=FIG6["stripe_d"]) -> RunResult:
    """Stacked Hatano-Nelson chains: no photonic skin effect, yet an emitter skin effect."""
    w = -1j * kappa
    model = stacked_hn(kappa, J)
    layout = EmitterLayout((1, 0), w, g, stripe_d)
    system = attach_emitters(build_bath(model, n_cells, OPEN), layout)
    spec = spectrum_with_sectors(system)
    p_ph = skin_profile(system, PHOTONIC, spec, sum_cells=True)
    p_at = skin_profile(system, ATOMIC, spec)
    ha = _mediated(model, w, g, (1, 0))
    nu_p, nu_a = winding_spectral_1d(model, w), winding_spectral_1d(ha, w)
    rows_p = [
        {"panel": "photonic", "site": float(x), "value": float(v)} for x, v in zip(p_ph.positions, p_ph.weights)
    ] + [{"panel": "atomic", "site": float(x), "value": float(v)} for x, v in zip(p_at.positions, p_at.weights)]
    rows_s = [
        {"index": i, "re": E.real, "im": E.imag, "sector": s}
        for i, (E, s) in enumerate(zip(spec.energies, spec.sectors))
    ]
    summary = {
        "params": {"kappa": kappa, "J": J, "g": g, "N": n_cells, "d": stripe_d},
        "photonic_ratio": float(p_ph.weights.max() / p_ph.weights.min()),
        "atomic_ratio": float(p_at.weights.max() / max(p_at.weights.min(), 1e-300)),
        "atomic_argmax_site": float(p_at.positions[np.argmax(p_at.weights)]),
        "nu_p": nu_p.to_dict(),
        "nu_a": nu_a.to_dict(),
    }
    return RunResult("fig6", summary, rows_s, rows_p, PLOT_FIG6)


FIGURES = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5, "fig6": fig6}


# -- plot scripts -------------------------------------------------------------

_HEAD = '''"""Standalone plot script; reads only the CSV files next to it."""
import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def rows(name):
    with open(os.path.join(HERE, name)) as fh:
        return list(csv.DictReader(fh))

'''

PLOT_FIG1 = _HEAD + '''
prof = rows("profiles.csv")
fig, (top, bot) = plt.subplots(2, 1, figsize=(5, 6))
for panel, ax in (("photonic_edge", top), ("atomic_edge", bot)):
    states = sorted({r["state"] for r in prof if r["panel"] == panel})
    for s in states:
        data = [(int(r["site"]), float(r["value"])) for r in prof if r["panel"] == panel and r["state"] == s]
        ax.semilogy([d[0] for d in data], [d[1] for d in data], "o-", ms=3)
    ax.set_ylabel("|psi|")
bot.set_xlabel("site")
fig.savefig(os.path.join(HERE, "fig1.png"), dpi=150)
'''

PLOT_FIG2 = _HEAD + '''
spec = rows("spectra.csv")
ds = sorted({int(r["d"]) for r in spec})
fig, axes = plt.subplots(2, len(ds), figsize=(4 * len(ds), 6), squeeze=False)
for j, d in enumerate(ds):
    sub = [r for r in spec if int(r["d"]) == d]
    for i, ylim in enumerate((None, 0.02)):
        ax = axes[i][j]
        ax.scatter([float(r["ky"]) for r in sub], [float(r["re"]) for r in sub],
                   c=[float(r["score"]) for r in sub], cmap="coolwarm", vmin=-1, vmax=1, s=2)
        if ylim:
            ax.set_ylim(-ylim, ylim)
        ax.set_title(f"d = {d}")
fig.savefig(os.path.join(HERE, "fig2.png"), dpi=150)
'''

PLOT_FIG3 = _HEAD + '''
prof = rows("profiles.csv")
spec = rows("spectra.csv")
fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
for ax, panel in zip(axes, ("photonic_open", "atomic")):
    data = [r for r in prof if r["panel"] == panel]
    ax.bar([float(r["site"]) for r in data], [float(r["value"]) for r in data])
    ax.set_title(panel)
for panel, color in (("photonic_bloch", "tab:blue"), ("atomic_bloch", "tab:red")):
    data = [r for r in spec if r["panel"] == panel]
    axes[2].plot([float(r["re"]) for r in data], [float(r["im"]) for r in data], ".", color=color, ms=2)
fig.savefig(os.path.join(HERE, "fig3.png"), dpi=150)
'''

PLOT_FIG4 = _HEAD + '''
spec = rows("spectra.csv")
fig, ax = plt.subplots(figsize=(5, 5))
for panel, color in (("photonic", "tab:blue"), ("atomic", "tab:red")):
    data = [r for r in spec if r["panel"] == panel]
    ax.plot([float(r["re"]) for r in data], [float(r["im"]) for r in data], ".", color=color, ms=1)
ax.set_xlabel("Re E")
ax.set_ylabel("Im E")
fig.savefig(os.path.join(HERE, "fig4.png"), dpi=150)
'''

PLOT_FIG5 = _HEAD + '''
spec = rows("spectra.csv")
fig, ax = plt.subplots(figsize=(6, 4))
for key in sorted({(r["theta"], r["config"], r["band"]) for r in spec}):
    data = [r for r in spec if (r["theta"], r["config"], r["band"]) == key]
    ax.plot([float(r["k"]) for r in data], [float(r["re"]) for r in data],
            "-" if key[1] == "on_cell" else "--", lw=1)
ax.set_xlabel("k")
fig.savefig(os.path.join(HERE, "fig5.png"), dpi=150)
'''

PLOT_FIG6 = _HEAD + '''
prof = rows("profiles.csv")
fig, (top, bot) = plt.subplots(2, 1, figsize=(5, 5))
for ax, panel in ((top, "photonic"), (bot, "atomic")):
    data = [r for r in prof if r["panel"] == panel]
    ax.bar([float(r["site"]) for r in data], [float(r["value"]) for r in data])
    ax.set_title(panel)
fig.savefig(os.path.join(HERE, "fig6.png"), dpi=150)
'''
