"""Integer topological invariants on discretized Brillouin zones.

Normalizations: windings are ``(1/2 pi i) \\oint d ln det``, Chern numbers use
the Fukui-Hatsugai-Suzuki link variables,
``C = (1/2 pi i) sum_plaquettes ln(U_x U_y U_x^-1 U_y^-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import DEFAULT_TOL, BlochModel, KGrid, evaluate_grid
from .errors import (
    GapClosed,
    NonHermitianInput,
    NonQuantized,
    NotChiral,
    PointGapClosed,
    UnitarizationFailed,
)
from .symmetry import SymmetryOp

QUANT_TOL = 0.01
MAX_REFINE = 4


@dataclass(frozen=True)
class InvariantResult:
    kind: str  # WINDING_CHIRAL | WINDING_SPECTRAL | CHERN | CHERN_ISV
    value: int
    raw: float
    grid_m: int
    base_energy: complex | None = None

    @property
    def residual(self) -> float:
        return abs(self.raw - self.value)

    def to_dict(self) -> dict:
        be = self.base_energy
        return {
            "kind": self.kind,
            "value": self.value,
            "raw": self.raw,
            "residual": self.residual,
            "grid_m": self.grid_m,
            "base_energy": None if be is None else {"re": be.real + 0.0, "im": be.imag + 0.0},
        }


def _quantize(kind, raw, m, base=None) -> InvariantResult:
    value = int(np.rint(raw))
    if abs(raw - value) >= QUANT_TOL:
        raise NonQuantized(f"{kind}: raw value {raw:.4f} is not close to an integer")
    return InvariantResult(kind, value, float(raw), m, None if base is None else complex(base))


def _phase_winding(z: np.ndarray) -> tuple:
    """Winding of the closed loop ``z[0], ..., z[-1], z[0]`` and its largest phase step."""
    steps = np.angle(np.roll(z, -1) / z)
    return steps.sum() / (2 * np.pi), np.max(np.abs(steps))


def _winding_loop(det_fn, grid: KGrid, kind: str, base=None) -> InvariantResult:
    for _ in range(MAX_REFINE + 1):
        dets = det_fn(grid)
        raw, jump = _phase_winding(dets)
        if jump < np.pi / 2:
            return _quantize(kind, raw, grid.points_per_axis, base)
        grid = grid.refined(2)
    raise NonQuantized(f"{kind}: phase steps stay above pi/2 after {MAX_REFINE} refinements")


def chiral_basis(S: np.ndarray) -> np.ndarray:
    """Unitary whose columns are the +1 then the -1 eigenvectors of ``S``."""
    vals, vecs = np.linalg.eigh(S)
    order = np.argsort(-vals, kind="stable")
    return vecs[:, order], int(np.sum(vals > 0))


def winding_chiral_1d(
    model: BlochModel, S: SymmetryOp, grid: KGrid | None = None, tol: float = DEFAULT_TOL
) -> InvariantResult:
    """Winding of ``det Q(k)``, ``Q`` the off-diagonal block in the eigenbasis of ``S``.

    ``W^dag H W = [[0, Q], [Q^dag, 0]]`` with ``S = diag(1, -1)`` in that basis.
    """
    if model.dim != 1:
        raise ValueError("winding_chiral_1d needs a 1D model")
    Smat = S.unitary
    if not np.allclose(Smat, Smat.conj().T, atol=1e-10):
        raise NotChiral("chiral operator must be Hermitian (S^2 = 1)")
    W, n_plus = chiral_basis(Smat)
    if 2 * n_plus != model.n_bands:
        raise NotChiral("chiral operator must have equally many +1 and -1 eigenvalues")
    grid = grid or KGrid.default(1)

    def det_fn(gr):
        H = evaluate_grid(model, gr)
        Hs = W.conj().T @ H @ W
        if np.max(np.abs(Smat @ H @ Smat + H)) > tol:
            raise NotChiral("model does not anticommute with the chiral operator")
        d = np.linalg.det(Hs[:, :n_plus, n_plus:])
        if np.min(np.abs(d)) <= tol:
            raise GapClosed("det Q vanishes on the grid")
        return d

    return _winding_loop(det_fn, grid, "WINDING_CHIRAL")


def winding_spectral_1d(
    model: BlochModel, base_energy: complex, grid: KGrid | None = None, tol: float = DEFAULT_TOL
) -> InvariantResult:
    """Spectral winding of ``det(H(k) - E)`` around the base energy ``E``."""
    if model.dim != 1:
        raise ValueError("winding_spectral_1d needs a 1D model")
    grid = grid or KGrid.default(1)
    eye = np.eye(model.n_bands)

    def det_fn(gr):
        d = np.linalg.det(evaluate_grid(model, gr) - base_energy * eye)
        if np.min(np.abs(d)) <= tol:
            raise PointGapClosed(f"base energy {base_energy} touches the spectrum")
        return d

    return _winding_loop(det_fn, grid, "WINDING_SPECTRAL", base_energy)


def fhs_chern(vecs: np.ndarray) -> float:
    """Raw Fukui-Hatsugai-Suzuki sum for a periodic ``(Mx, My, N, n_occ)`` frame field."""

    def link(axis):
        nxt = np.roll(vecs, -1, axis=axis)
        d = np.linalg.det(np.einsum("xyai,xyaj->xyij", vecs.conj(), nxt))
        return d / np.abs(d)

    Ux, Uy = link(0), link(1)
    F = np.angle(Ux * np.roll(Uy, -1, axis=0) / (np.roll(Ux, -1, axis=1) * Uy))
    return float(F.sum() / (2 * np.pi))


def _occupied_frames(H: np.ndarray, base: float, bands, tol: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(H)
    if bands is not None:
        return vecs[..., list(bands)]
    below = vals < base
    n_occ = below.sum(axis=-1)
    if np.any(n_occ != n_occ.flat[0]) or np.min(np.abs(vals - base)) <= tol:
        raise GapClosed(f"bands touch the base energy {base}")
    return vecs[..., : int(n_occ.flat[0])]


def chern_2d(
    model: BlochModel,
    grid: KGrid | None = None,
    base_energy: float = 0.0,
    bands=None,
    tol: float = 1e-9,
) -> InvariantResult:
    """Chern number of the bands below ``base_energy`` (or of an explicit band set).

    Plaquette-link method; the raw sum is integer up to rounding for any grid.
    """
    if model.dim != 2:
        raise ValueError("chern_2d needs a 2D model")
    grid = grid or KGrid.default(2)
    H = evaluate_grid(model, grid)
    if np.max(np.abs(H - np.swapaxes(H, -1, -2).conj())) > DEFAULT_TOL:
        raise NonHermitianInput("chern_2d needs a Hermitian model")
    frames = _occupied_frames(H, float(np.real(base_energy)), bands, tol)
    return _quantize("CHERN", fhs_chern(frames), grid.points_per_axis, base_energy)


def isv_field(
    model: BlochModel, S: SymmetryOp, base_energy: complex, grid: KGrid, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """``i S V(k)`` with ``V`` the unitarized ``H(k) - E``, on the grid."""
    Smat = S.unitary
    H = evaluate_grid(model, grid) - base_energy * np.eye(model.n_bands)
    Hd = np.swapaxes(H, -1, -2).conj()
    if np.max(np.abs(Smat @ Hd @ Smat.conj().T + H)) > tol:
        raise NotChiral("H - E violates S H^dag S^-1 = -H")
    W, s, Vh = np.linalg.svd(H)
    if np.min(s) <= tol:
        raise PointGapClosed(f"base energy {base_energy} touches the spectrum")
    X = 1j * Smat @ (W @ Vh)
    eye = np.eye(model.n_bands)
    if (
        np.max(np.abs(X - np.swapaxes(X, -1, -2).conj())) > 1e-8
        or np.max(np.abs(X @ X - eye)) > 1e-8
    ):
        raise UnitarizationFailed("i S V is not a Hermitian involution")
    return X


def chern_isv_2d(
    model: BlochModel,
    S: SymmetryOp,
    base_energy: complex,
    grid: KGrid | None = None,
    tol: float = DEFAULT_TOL,
) -> InvariantResult:
    """Chern number of the negative eigenspace of ``i S V``.

    The point-gap invariant of a 2D non-Hermitian chiral Hamiltonian.
    """
    if model.dim != 2:
        raise ValueError("chern_isv_2d needs a 2D model")
    grid = grid or KGrid.default(2)
    X = isv_field(model, S, base_energy, grid, tol)
    frames = _occupied_frames(X, 0.0, None, 1e-6)
    return _quantize("CHERN_ISV", fhs_chern(frames), grid.points_per_axis, base_energy)
