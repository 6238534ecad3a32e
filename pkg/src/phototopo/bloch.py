"""Matrix-valued Bloch Hamiltonians on the Brillouin zone.

Fourier convention (used everywhere in the package)::

    H(k)[s, s'] = sum_R  <0, s| H |R, s'>  exp(-i k.R)

i.e. a model is fully described by its hopping blocks ``T_R`` with
``T_R[s, s'] = <r_0, s|H|r_R, s'>`` and ``H(k) = sum_R T_R exp(-i k.R)``.
A plane wave on the lattice is ``psi_{n,s} = exp(-i k.r_n) u_s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from .errors import EigensolverFailure, NearZeroEigenvalue, SingularMatrix

DEFAULT_TOL = 1e-8
DEFAULT_M = {1: 256, 2: 128}

Hoppings = Mapping[tuple, np.ndarray]


@dataclass(frozen=True, eq=False)
class BlochModel:
    """A Bloch Hamiltonian ``k -> H(k)`` of size ``n_bands x n_bands``.

    ``evaluator`` must accept ``k`` with shape ``(..., dim)`` and return an
    array of shape ``(..., n_bands, n_bands)``.  Tight-binding models also carry
    their real-space ``hoppings`` (see module docstring), which the real-space
    builders and :func:`phototopo.models.enlarge_cell` use directly.
    """

    dim: int
    n_bands: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    name: str = "model"
    hermitian_hint: bool | None = None
    hoppings: Hoppings | None = None
    params: Mapping[str, Any] = field(default_factory=dict)
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.n_bands < 1:
            raise ValueError("n_bands must be >= 1")

    def __call__(self, k) -> np.ndarray:
        return evaluate(self, k)


def from_hoppings(
    hoppings: Hoppings,
    dim: int,
    name: str = "model",
    hermitian_hint: bool | None = None,
    params: Mapping[str, Any] | None = None,
    meta: Mapping[str, Any] | None = None,
) -> BlochModel:
    """Build a :class:`BlochModel` from hopping blocks ``{R: T_R}``."""
    hop = {}
    for R, T in hoppings.items():
        R = tuple(int(r) for r in np.atleast_1d(R))
        if len(R) != dim:
            raise ValueError(f"lattice vector {R} does not have dimension {dim}")
        T = np.atleast_2d(np.asarray(T, dtype=complex))
        hop[R] = hop.get(R, 0) + T
    n_bands = next(iter(hop.values())).shape[0]
    vecs = np.array(list(hop.keys()), dtype=float)  # (nR, D)
    blocks = np.array(list(hop.values()))  # (nR, Nb, Nb)

    def evaluator(k):
        k = np.asarray(k, dtype=float)
        phases = np.exp(-1j * (k @ vecs.T))  # (..., nR)
        return np.tensordot(phases, blocks, axes=([-1], [0]))

    return BlochModel(
        dim=dim,
        n_bands=n_bands,
        evaluator=evaluator,
        name=name,
        hermitian_hint=hermitian_hint,
        hoppings=hop,
        params=dict(params or {}),
        meta=dict(meta or {}),
    )


@dataclass(frozen=True)
class KGrid:
    """Uniform grid ``k_j = 2 pi m / M``, ``m = 0..M-1`` on every axis."""

    points_per_axis: int
    dim: int = 1

    def __post_init__(self):
        if self.points_per_axis < 8:
            raise ValueError("KGrid needs at least 8 points per axis")

    @classmethod
    def default(cls, dim: int) -> "KGrid":
        return cls(DEFAULT_M[dim], dim)

    @property
    def spacing(self) -> float:
        return 2 * np.pi / self.points_per_axis

    @property
    def axis(self) -> np.ndarray:
        return self.spacing * np.arange(self.points_per_axis)

    @property
    def shape(self) -> tuple:
        return (self.points_per_axis,) * self.dim

    def mesh(self) -> np.ndarray:
        """Nodes with shape ``(M, ..., M, dim)`` (``ij`` indexing)."""
        axes = np.meshgrid(*([self.axis] * self.dim), indexing="ij")
        return np.stack(axes, axis=-1)

    @property
    def nodes(self) -> np.ndarray:
        """Flat node list, shape ``(M**dim, dim)``."""
        return self.mesh().reshape(-1, self.dim)

    def refined(self, factor: int = 2) -> "KGrid":
        return KGrid(self.points_per_axis * factor, self.dim)


@dataclass(frozen=True)
class GapReport:
    kind: str  # "line" | "point"
    base_energy: complex
    min_distance: float
    argmin_k: np.ndarray
    gapped: bool


@dataclass
class BandStructure:
    grid: KGrid
    energies: np.ndarray  # (M**D, Nb) complex
    vectors: np.ndarray | None = None  # (M**D, Nb, Nb), columns are right eigenvectors
    failed: list = field(default_factory=list)


def evaluate(model: BlochModel, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if k.ndim == 0:
        k = k[None]
    if not np.all(np.isfinite(k)):
        raise ValueError("k must be finite")
    return np.asarray(model.evaluator(k), dtype=complex)


def evaluate_grid(model: BlochModel, grid: KGrid) -> np.ndarray:
    """All Bloch matrices on a grid, shape ``grid.shape + (Nb, Nb)``."""
    if grid.dim != model.dim:
        raise ValueError(f"grid dim {grid.dim} != model dim {model.dim}")
    return evaluate(model, grid.mesh())


def is_hermitian(model: BlochModel, grid: KGrid | None = None, tol: float = DEFAULT_TOL) -> bool:
    if model.hermitian_hint is not None:
        return model.hermitian_hint
    grid = grid or KGrid(16, model.dim)
    H = evaluate_grid(model, grid)
    return bool(np.max(np.abs(H - np.swapaxes(H, -1, -2).conj()), initial=0.0) < tol)


def _sort_complex(vals, vecs=None):
    order = np.lexsort((vals.imag.round(12), vals.real.round(12)), axis=-1)
    vals = np.take_along_axis(vals, order, axis=-1)
    if vecs is not None:
        vecs = np.take_along_axis(vecs, order[..., None, :], axis=-1)
    return vals, vecs


def band_structure(
    model: BlochModel, grid: KGrid | None = None, vectors: bool = False, hermitian: bool | None = None
) -> BandStructure:
    """Eigenvalues (and optionally right eigenvectors) at every grid node.

    Eigenvalues are sorted by real part then imaginary part.  Nodes where the
    eigensolver does not converge are listed in ``failed`` and filled with NaN.
    """
    grid = grid or KGrid.default(model.dim)
    H = evaluate_grid(model, grid).reshape(-1, model.n_bands, model.n_bands)
    herm = is_hermitian(model, grid) if hermitian is None else hermitian
    solve = np.linalg.eigh if herm else np.linalg.eig
    failed = []
    try:
        vals, vecs = solve(H)
    except np.linalg.LinAlgError:
        vals = np.full(H.shape[:2], np.nan, dtype=complex)
        vecs = np.full(H.shape, np.nan, dtype=complex)
        for i, h in enumerate(H):
            try:
                vals[i], vecs[i] = solve(h)
            except np.linalg.LinAlgError:
                failed.append(i)
    vals = np.asarray(vals, dtype=complex)
    if not herm:
        vals, vecs = _sort_complex(vals, vecs)
    return BandStructure(grid, vals, vecs if vectors else None, failed)


def gap_check(
    model: BlochModel,
    grid: KGrid | None = None,
    base_energy: complex = 0.0,
    tol: float = DEFAULT_TOL,
    kind: str | None = None,
) -> GapReport:
    """Distance of the spectrum from ``base_energy``.

    ``kind="line"`` (default for Hermitian models with a real base) measures
    ``|Re E - Re base|``; ``kind="point"`` measures ``|E - base|``.  A line
    gap also needs the same number of bands below the base at every node, so
    a band crossing the base between grid nodes is not mistaken for a gap.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = grid or KGrid.default(model.dim)
    base_energy = complex(base_energy)
    if kind is None:
        kind = "line" if (is_hermitian(model, grid) and base_energy.imag == 0) else "point"
    bands = band_structure(model, grid)
    if bands.failed:
        raise EigensolverFailure(f"eigensolver failed at nodes {bands.failed[:5]}")
    if kind == "line":
        dist = np.abs(bands.energies.real - base_energy.real)
    elif kind == "point":
        dist = np.abs(bands.energies - base_energy)
    else:
        raise ValueError(f"unknown gap kind {kind!r}")
    per_node = dist.min(axis=1)
    i = int(np.argmin(per_node))
    d = float(per_node[i])
    gapped = d > tol
    if kind == "line":
        below = np.sum(bands.energies.real < base_energy.real, axis=1)
        if np.any(below != below[0]):
            gapped = False
            i = int(np.flatnonzero(below != below[0])[0])
            d = float(per_node[i])
    return GapReport(kind, base_energy, d, grid.nodes[i], gapped)


def band_flatten(H: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``sgn(H)``: same eigenvectors, eigenvalues mapped to +-1."""
    H = np.asarray(H, dtype=complex)
    if np.max(np.abs(H - H.conj().T)) > tol:
        raise ValueError("band_flatten needs a Hermitian matrix")
    vals, vecs = np.linalg.eigh(H)
    if np.min(np.abs(vals)) <= tol:
        raise NearZeroEigenvalue(f"eigenvalue {vals[np.argmin(np.abs(vals))]:.3e} within tol of 0")
    return (vecs * np.sign(vals)) @ vecs.conj().T


def unitarize(H: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unitary polar factor ``H (sqrt(H^dag H))^-1``.

    Works on stacks ``(..., N, N)``.  Computed from the SVD ``H = W S Vh`` as
    ``W Vh``, which equals the formula above for nonsingular ``H``.
    """
    H = np.asarray(H, dtype=complex)
    W, s, Vh = np.linalg.svd(H)
    if np.min(s) <= tol:
        raise SingularMatrix(f"smallest singular value {np.min(s):.3e} <= {tol}")
    return W @ Vh
