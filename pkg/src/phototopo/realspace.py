"""Finite lattices: bath + emitters in the single-excitation sector.

Site ordering: all photonic sites first (cell-major, ``ij`` order over
cells, then sublattice), followed by the atomic sites in the same order.
Positions are in unit-cell units (a site sits at its cell coordinate).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

from .bloch import BlochModel, evaluate
from .errors import EmptySector, EigensolverFailure, InfiniteRange, LayoutMismatch, ResolventSingular
from .mediator import EmitterLayout

PHOTONIC = "PHOTONIC"
ATOMIC = "ATOMIC"
OPEN = "open"
PERIODIC = "periodic"
SECTOR_THRESHOLD = 0.5


class Site(NamedTuple):
    cell: tuple
    sublattice: int
    sector: str
    position: tuple


@dataclass(frozen=True, eq=False)
class RealSpaceSystem:
    hamiltonian: np.ndarray
    sites: tuple
    bc: tuple
    n_cells: tuple
    n_bands: int
    layout: EmitterLayout | None = None
    hermitian: bool = False

    @property
    def size(self) -> int:
        return len(self.sites)

    def sector_mask(self, sector: str) -> np.ndarray:
        return np.array([s.sector == sector for s in self.sites])

    def positions(self, axis: int = 0) -> np.ndarray:
        return np.array([s.position[axis] for s in self.sites], dtype=float)


@dataclass
class Spectrum:
    energies: np.ndarray
    vectors: np.ndarray  # columns: normalized right eigenvectors
    sectors: np.ndarray  # per state
    atomic_weight: np.ndarray

    def select(self, sector: str) -> np.ndarray:
        return np.flatnonzero(self.sectors == sector)


@dataclass
class ModeProfile:
    weights: np.ndarray
    energies: np.ndarray
    positions: np.ndarray
    sites: list = field(default_factory=list)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TOPO_THREADS", "1")))
    except ValueError:
        return 1


def hoppings_of(model: BlochModel, n_probe: int = 32, tol: float = 1e-12) -> dict:
    """Real-space hopping blocks, from the model or by FFT of its Bloch form."""
    if model.hoppings is not None:
        return dict(model.hoppings)
    D, M = model.dim, n_probe
    axes = [2 * np.pi * np.arange(M) / M] * D
    ks = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    H = evaluate(model, ks)
    # T_R = (1/N) sum_k e^{ik.R} H(k)
    T = np.fft.ifftn(H, axes=tuple(range(D)))
    hop = {}
    for idx in np.ndindex(*([M] * D)):
        R = tuple(i if i <= M // 2 else i - M for i in idx)
        blk = T[idx]
        if np.max(np.abs(blk)) > tol:
            if any(abs(r) >= M // 2 - 1 for r in R):
                raise InfiniteRange(f"Fourier coefficients of {model.name} do not truncate")
            hop[R] = blk
    return hop


def _cells(n_cells: tuple) -> list:
    return list(np.ndindex(*n_cells))


def build_bath(model: BlochModel, n_cells, bc="open") -> RealSpaceSystem:
    """Finite photonic lattice with hoppings ``<n, s|H|n + R, s'> = T_R[s, s']``.

    Periodic axes wrap around, open axes drop hoppings that leave the sample.
    """
    D, nb = model.dim, model.n_bands
    n_cells = (n_cells,) * D if np.isscalar(n_cells) else tuple(n_cells)
    bc = (bc,) * D if isinstance(bc, str) else tuple(bc)
    if len(n_cells) != D or len(bc) != D:
        raise ValueError("n_cells and bc need one entry per axis")
    hop = hoppings_of(model)
    cells = _cells(n_cells)
    index = {c: i for i, c in enumerate(cells)}
    N = len(cells) * nb
    H = np.zeros((N, N), dtype=complex)
    for c in cells:
        i = index[c] * nb
        for R, T in hop.items():
            tgt = []
            for a in range(D):
                x = c[a] + R[a]
                if bc[a] == PERIODIC:
                    x %= n_cells[a]
                elif not 0 <= x < n_cells[a]:
                    break
                tgt.append(x)
            else:
                j = index[tuple(tgt)] * nb
                H[i:i + nb, j:j + nb] += T
    sites = tuple(
        Site(c, s, PHOTONIC, tuple(float(x) for x in c)) for c in cells for s in range(nb)
    )
    herm = bool(np.allclose(H, H.conj().T, atol=1e-12))
    return RealSpaceSystem(H, sites, bc, n_cells, nb, None, herm)


def emitter_sites(system: RealSpaceSystem, layout: EmitterLayout, stripe_axes=None) -> list:
    """Indices of the photonic sites that receive an emitter."""
    if len(layout.pi_diagonal) != system.n_bands:
        raise LayoutMismatch("projector length does not match the number of sublattices")
    D = len(system.n_cells)
    axes = range(D) if stripe_axes is None else stripe_axes
    d = layout.stripe_d
    for a in axes:
        if d > system.n_cells[a] / 2:
            raise LayoutMismatch(f"stripe width {d} exceeds half of {system.n_cells[a]} cells")
    out = []
    for i, s in enumerate(system.sites):
        if s.sector != PHOTONIC or not layout.pi_diagonal[s.sublattice]:
            continue
        if any(s.cell[a] < d or s.cell[a] >= system.n_cells[a] - d for a in axes):
            continue
        out.append(i)
    return out


def attach_emitters(system: RealSpaceSystem, layout: EmitterLayout, stripe_axes=None) -> RealSpaceSystem:
    """Couple one emitter (energy ``omega_e``, coupling ``g``) to each selected resonator.

    Resonators within ``stripe_d`` cells of either end of the stripe axes
    (default: every axis) stay bare.
    """
    hosts = emitter_sites(system, layout, stripe_axes)
    n_p, n_a = system.size, len(hosts)
    H = np.zeros((n_p + n_a, n_p + n_a), dtype=complex)
    H[:n_p, :n_p] = system.hamiltonian
    for a, p in enumerate(hosts):
        H[n_p + a, n_p + a] = layout.omega_e
        H[n_p + a, p] = layout.g
        H[p, n_p + a] = layout.g
    atoms = tuple(system.sites[p]._replace(sector=ATOMIC) for p in hosts)
    herm = system.hermitian and layout.omega_e.imag == 0
    return replace(system, hamiltonian=H, sites=system.sites + atoms, layout=layout, hermitian=herm)


def spectrum_with_sectors(system: RealSpaceSystem, threshold: float = SECTOR_THRESHOLD) -> Spectrum:
    """Dense diagonalization; a state is ATOMIC if its weight on emitters exceeds ``threshold``."""
    H = system.hamiltonian
    try:
        if system.hermitian:
            vals, vecs = np.linalg.eigh(H)
            vals = vals.astype(complex)
        else:
            vals, vecs = np.linalg.eig(H)
            order = np.lexsort((vals.imag.round(12), vals.real.round(12)))
            vals, vecs = vals[order], vecs[:, order]
            vecs = vecs / np.linalg.norm(vecs, axis=0)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    atomic = system.sector_mask(ATOMIC)
    w_at = np.sum(np.abs(vecs[atomic]) ** 2, axis=0)
    sectors = np.where(w_at > threshold, ATOMIC, PHOTONIC)
    return Spectrum(vals, vecs, sectors, w_at)


def skin_profile(
    system: RealSpaceSystem,
    sector: str,
    spectrum: Spectrum | None = None,
    sum_cells: bool = False,
) -> ModeProfile:
    """Average of ``|psi_i(n)|^2`` over all right eigenstates of a sector.

    The profile lives on the sites of that sector; ``sum_cells`` adds up the
    sites that share a unit cell.  Returned weights sum to one.
    """
    spectrum = spectrum or spectrum_with_sectors(system)
    states = spectrum.select(sector)
    if len(states) == 0:
        raise EmptySector(f"no {sector} states")
    mask = system.sector_mask(sector)
    w = np.abs(spectrum.vectors[np.ix_(mask, states)]) ** 2
    w = w / w.sum(axis=0)
    prof = w.mean(axis=1)
    sites = [s for s, m in zip(system.sites, mask) if m]
    pos = np.array([s.position[0] for s in sites])
    if sum_cells:
        cells = sorted({s.cell for s in sites})
        idx = {c: i for i, c in enumerate(cells)}
        summed = np.zeros(len(cells))
        for s, p in zip(sites, prof):
            summed[idx[s.cell]] += p
        prof = summed
        pos = np.array([c[0] for c in cells], dtype=float)
        sites = cells
    return ModeProfile(prof / prof.sum(), spectrum.energies[states], pos, sites)


def localization_score(weights, positions, axis: int = 0, extent=None) -> float:
    """``(<x> - center) / (L/2)``: +1 at the right end, -1 at the left, 0 delocalized.

    The extent ``(x_min, x_max)`` defaults to the span of ``positions``.
    """
    w = np.asarray(weights, dtype=float)
    x = np.asarray(positions, dtype=float)
    if x.ndim == 2:
        x = x[:, axis]
    lo, hi = (x.min(), x.max()) if extent is None else extent
    half = (hi - lo) / 2
    if half == 0:
        return 0.0
    mean = np.dot(w, x) / w.sum()
    return float((mean - (lo + half)) / half)


def chiral_polarize(vectors: np.ndarray, chiral_diag: np.ndarray) -> np.ndarray:
    """Rotate a (near-degenerate) set of states to eigenvectors of the chiral operator.

    Exact zero modes of a chiral chain hybridize across the sample into
    bonding/antibonding pairs; within their span the chiral eigenbasis
    recovers the two single-edge states.
    """
    P = vectors.conj().T @ (chiral_diag[:, None] * vectors)
    _, rot = np.linalg.eigh((P + P.conj().T) / 2)
    return vectors @ rot


def effective_atomic_realspace(
    bath: RealSpaceSystem, emitters: Sequence[int], omega_e: complex, g: float, tol: float = 1e-8
) -> np.ndarray:
    """``omega_e + g^2 <i| (omega_e - H_bath)^-1 |j>`` on the emitter host sites."""
    A = omega_e * np.eye(bath.size) - bath.hamiltonian
    smin = np.linalg.svd(A, compute_uv=False)[-1]
    if smin < tol:
        raise ResolventSingular(None, float(smin))
    idx = np.asarray(emitters)
    rhs = np.zeros((bath.size, len(idx)), dtype=complex)
    rhs[idx, np.arange(len(idx))] = 1.0
    G = np.linalg.solve(A, rhs)[idx]
    return omega_e * np.eye(len(idx)) + g**2 * G


@dataclass
class RibbonSpectrum:
    ky: np.ndarray
    energies: list  # per ky node, array of energies
    sectors: list  # per ky node
    scores: list  # per ky node, score w.r.t. the extent of the state's sector
    extent: dict  # sector -> (x_min, x_max)


def ky_nodes(n: int = 101) -> np.ndarray:
    """``n`` (odd) uniform momenta ``2 pi m / n``, ``m = -(n-1)/2 .. (n-1)/2``."""
    m = np.arange(n) - (n - 1) // 2
    return 2 * np.pi * m / n


def ribbon_chain(model2d: BlochModel, ky: float, open_axis: int = 0) -> BlochModel:
    """1D chain along ``open_axis`` at fixed momentum along the other axis."""
    from .bloch import from_hoppings

    if model2d.dim != 2:
        raise ValueError("ribbon needs a 2D model")
    per = 1 - open_axis
    hop: dict = {}
    for R, T in hoppings_of(model2d).items():
        key = (R[open_axis],)
        hop[key] = hop.get(key, 0) + T * np.exp(-1j * ky * R[per])
    return from_hoppings(hop, 1, f"{model2d.name}@ky", hermitian_hint=model2d.hermitian_hint)


def ribbon_spectrum(
    model2d: BlochModel,
    layout: EmitterLayout | None,
    L: int,
    ky=None,
    open_axis: int = 0,
) -> RibbonSpectrum:
    """Spectrum of a ribbon open along ``open_axis``, with emitters striped per ``layout``."""
    ky = ky_nodes() if ky is None else np.asarray(ky, dtype=float)

    def one(q):
        sys_ = build_bath(ribbon_chain(model2d, q, open_axis), L, OPEN)
        if layout is not None:
            sys_ = attach_emitters(sys_, layout)
        spec = spectrum_with_sectors(sys_)
        return sys_, spec

    with ThreadPoolExecutor(_threads()) as pool:
        results = list(pool.map(one, ky))
    sys0 = results[0][0]
    extent = {}
    for sector in (PHOTONIC, ATOMIC):
        x = sys0.positions()[sys0.sector_mask(sector)]
        if len(x):
            extent[sector] = (float(x.min()), float(x.max()))
    energies, sectors, scores = [], [], []
    for sys_, spec in results:
        sc = []
        for i in range(len(spec.energies)):
            mask = sys_.sector_mask(spec.sectors[i])
            w = np.abs(spec.vectors[mask, i]) ** 2
            sc.append(localization_score(w, sys_.positions()[mask], extent=extent[spec.sectors[i]]))
        energies.append(spec.energies)
        sectors.append(spec.sectors)
        scores.append(np.array(sc))
    return RibbonSpectrum(ky, energies, sectors, scores, extent)


def periodic_bloch_spectrum(model: BlochModel, n_cells: int) -> np.ndarray:
    """Union of Bloch spectra on the commensurate grid, sorted like the real-space one."""
    axes = [2 * np.pi * np.arange(n_cells) / n_cells] * model.dim
    ks = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, model.dim)
    vals = np.linalg.eigvals(evaluate(model, ks)).ravel()
    return vals[np.lexsort((vals.imag.round(9), vals.real.round(9)))]

