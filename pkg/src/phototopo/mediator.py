"""Photon-mediated emitter Hamiltonians.

The effective atomic Bloch Hamiltonian is

    H_a(k) = Pi (omega_e + g^2 (omega_e - H_p(k))^-1) Pi

restricted to the sublattices selected by the projector ``Pi``.  It is
evaluated exactly (no weak-coupling truncation) for any gapped bath.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bloch import DEFAULT_TOL, BlochModel, KGrid, evaluate, gap_check
from .errors import CertificateFailed, ResolventSingular, UnsupportedLayout


@dataclass(frozen=True)
class EmitterLayout:
    """Where emitters sit and how they couple.

    ``pi_diagonal`` is the diagonal of the projector (one entry per bath
    sublattice), ``stripe_d`` the number of boundary cells left without
    emitters in real-space builds.
    """

    pi_diagonal: tuple
    omega_e: complex = 0.0
    g: float = 0.1
    stripe_d: int = 0

    def __post_init__(self):
        pi = tuple(int(p) for p in self.pi_diagonal)
        if any(p not in (0, 1) for p in pi):
            raise ValueError("pi_diagonal entries must be 0 or 1")
        if not any(pi):
            raise ValueError("pi_diagonal must select at least one sublattice")
        if not self.g > 0:
            raise ValueError("g must be positive")
        if self.stripe_d < 0:
            raise ValueError("stripe_d must be nonnegative")
        object.__setattr__(self, "pi_diagonal", pi)
        object.__setattr__(self, "omega_e", complex(self.omega_e))

    @classmethod
    def full(cls, n_bands: int, omega_e: complex = 0.0, g: float = 0.1, stripe_d: int = 0):
        """One emitter per resonator (``Pi = 1``)."""
        return cls((1,) * n_bands, omega_e, g, stripe_d)

    @property
    def selected(self) -> np.ndarray:
        return np.flatnonzero(self.pi_diagonal)

    @property
    def is_identity(self) -> bool:
        return all(self.pi_diagonal)


def _check_layout(bath: BlochModel, layout: EmitterLayout):
    if len(layout.pi_diagonal) != bath.n_bands:
        raise UnsupportedLayout(
            f"projector has {len(layout.pi_diagonal)} entries, bath has {bath.n_bands} bands"
        )


def resolvent(H: np.ndarray, z: complex, tol: float = DEFAULT_TOL, k=None) -> np.ndarray:
    """``(z - H)^-1`` for a stack of matrices, by linear solve."""
    n = H.shape[-1]
    A = z * np.eye(n) - H
    smin = np.linalg.svd(A, compute_uv=False)[..., -1]
    if np.min(smin) < tol:
        i = np.unravel_index(np.argmin(smin), smin.shape)
        kk = None if k is None else np.asarray(k)[i]
        raise ResolventSingular(kk, float(np.min(smin)))
    return np.linalg.solve(A, np.broadcast_to(np.eye(n), A.shape))


def effective_bloch(
    bath: BlochModel,
    layout: EmitterLayout,
    grid: KGrid | None = None,
    tol: float = DEFAULT_TOL,
) -> BlochModel:
    """Mediated emitter Bloch Hamiltonian.

    The bath is checked on ``grid`` first; ``ResolventSingular`` is raised if
    ``omega_e`` touches the bath spectrum there, and also whenever a later
    evaluation hits a singular point.  A ``UserWarning`` is issued when
    ``g`` exceeds half the distance between ``omega_e`` and the bath bands.
    """
    _check_layout(bath, layout)
    grid = grid or KGrid.default(bath.dim)
    w, g, sel = layout.omega_e, layout.g, layout.selected
    line = bool(bath.hermitian_hint) and w.imag == 0
    report = gap_check(bath, grid, w, tol=tol, kind="line" if line else "point")
    if not report.gapped:
        raise ResolventSingular(report.argmin_k, report.min_distance)
    weak = g <= 0.5 * report.min_distance
    if not weak:
        warnings.warn(
            f"g={g} exceeds half the distance {report.min_distance:.3g} from omega_e to the bath",
            stacklevel=2,
        )

    def evaluator(k):
        Hp = evaluate(bath, k)
        G = resolvent(Hp, w, tol, k)
        Ha = g**2 * G[..., sel[:, None], sel[None, :]]
        return Ha + w * np.eye(len(sel))

    herm = bool(bath.hermitian_hint) and w.imag == 0
    return BlochModel(
        dim=bath.dim,
        n_bands=len(sel),
        evaluator=evaluator,
        name=f"mediated[{bath.name}]",
        hermitian_hint=True if herm else None,
        params={"omega_e": w, "g": g, "pi": layout.pi_diagonal, **bath.params},
        meta={"bath": bath, "layout": layout, "gap": report.min_distance, "weak_coupling": weak},
    )


def full_bloch(bath: BlochModel, layout: EmitterLayout) -> BlochModel:
    """Bloch Hamiltonian of emitters plus bath, ``[[w I, g I], [g I, H_p(k)]]``."""
    _check_layout(bath, layout)
    if not layout.is_identity:
        raise UnsupportedLayout("full_bloch needs one emitter per resonator (Pi = 1)")
    n, w, g = bath.n_bands, layout.omega_e, layout.g
    eye = np.eye(n)

    def evaluator(k):
        Hp = evaluate(bath, k)
        out = np.zeros(Hp.shape[:-2] + (2 * n, 2 * n), dtype=complex)
        out[..., :n, :n] = w * eye
        out[..., :n, n:] = g * eye
        out[..., n:, :n] = g * eye
        out[..., n:, n:] = Hp
        return out

    herm = bool(bath.hermitian_hint) and w.imag == 0
    return BlochModel(
        dim=bath.dim,
        n_bands=2 * n,
        evaluator=evaluator,
        name=f"full[{bath.name}]",
        hermitian_hint=True if herm else None,
        params={"omega_e": w, "g": g, **bath.params},
        meta={"bath": bath, "layout": layout},
    )


def full_spectrum_analytic(bath_energies: np.ndarray, omega_e: complex, g: float) -> np.ndarray:
    """Two hybridized bands ``(w + e)/2 +- sqrt((w - e)^2/4 + g^2)`` per bath band."""
    e = np.asarray(bath_energies)
    root = np.sqrt((omega_e - e) ** 2 / 4 + g**2)
    mid = (omega_e + e) / 2
    return np.concatenate([mid - root, mid + root], axis=-1)


@dataclass
class DeformationCertificate:
    expected: complex
    worst_rel_error: float
    worst_k: np.ndarray
    worst_lambda: float
    n_nodes: int
    passed: bool
    determinants: np.ndarray = field(repr=False, default=None)


def deformation_gap_certificate(
    bath: BlochModel,
    layout: EmitterLayout,
    grid: KGrid | None = None,
    lambda_steps: int = 11,
    rtol: float = 1e-8,
    raise_on_failure: bool = True,
) -> DeformationCertificate:
    """Check ``det(H_lambda(k) - w) = (-g^2)^Nb`` along the straight-line deformation.

    ``H_lambda = (1 - lambda) H(k) + lambda H_1`` with the k-independent
    ``H_1 = (w s0 + g sx) (x) 1``; a constant nonzero determinant means the
    full atom-light Hamiltonian stays gapped at ``w`` all the way to a
    trivial endpoint.
    """
    full = full_bloch(bath, layout)
    grid = grid or KGrid(64, bath.dim)
    n, w, g = bath.n_bands, layout.omega_e, layout.g
    H1 = np.kron(w * np.eye(2) + g * np.array([[0, 1], [1, 0]]), np.eye(n))
    Hk = evaluate(full, grid.nodes)  # (nk, 2n, 2n)
    lams = np.linspace(0.0, 1.0, lambda_steps)
    Hl = (1 - lams)[:, None, None, None] * Hk[None] + lams[:, None, None, None] * H1
    dets = np.linalg.det(Hl - w * np.eye(2 * n))  # (nlam, nk)
    expected = (-(g**2)) ** n
    rel = np.abs(dets - expected) / abs(expected)
    il, ik = np.unravel_index(np.argmax(rel), rel.shape)
    cert = DeformationCertificate(
        expected=complex(expected),
        worst_rel_error=float(rel[il, ik]),
        worst_k=grid.nodes[ik],
        worst_lambda=float(lams[il]),
        n_nodes=rel.size,
        passed=bool(rel.max() <= rtol),
        determinants=dets,
    )
    if raise_on_failure and not cert.passed:
        raise CertificateFailed(cert.worst_k, cert.worst_lambda, cert.worst_rel_error)
    return cert


def mediated_couplings_realspace(
    bath: BlochModel,
    layout: EmitterLayout,
    n_cells,
    bc: str = "periodic",
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Real-space mediated couplings ``h = g^2 <i| G_p(w) |j>`` between emitters.

    Computed as the discrete Fourier pair of the Bloch resolvent on the ring
    of ``n_cells`` (per axis); rows/columns are ordered cell-major, then by
    selected sublattice, matching :func:`phototopo.realspace.attach_emitters`
    with ``stripe_d = 0``.  ``omega_e`` is not included on the diagonal.
    """
    if bc != "periodic":
        raise ValueError("only periodic boundary conditions are supported here")
    _check_layout(bath, layout)
    D = bath.dim
    shape = (n_cells,) * D if np.isscalar(n_cells) else tuple(n_cells)
    axes = [2 * np.pi * np.arange(n) / n for n in shape]
    ks = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    G = resolvent(evaluate(bath, ks), layout.omega_e, tol, ks)
    sel = layout.selected
    G = G[..., sel[:, None], sel[None, :]]
    # G_R = (1/N) sum_k e^{-ik.R} G(k) for R = r_i - r_j
    GR = np.fft.fftn(G, axes=tuple(range(D))) / np.prod(shape)
    cells = np.stack(np.meshgrid(*[np.arange(n) for n in shape], indexing="ij"), -1).reshape(-1, D)
    diff = (cells[:, None, :] - cells[None, :, :]) % np.array(shape)
    blocks = GR[tuple(diff[..., a] for a in range(D))]  # (Nc, Nc, ns, ns)
    nc, ns = len(cells), len(sel)
    h = blocks.transpose(0, 2, 1, 3).reshape(nc * ns, nc * ns)
    return layout.g**2 * h
