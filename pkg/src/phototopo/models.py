"""Tight-binding models studied in the package, as :class:`BlochModel` s.

All constructors go through real-space hopping blocks so that the same object
serves the Bloch analysis and the finite-lattice builders.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .bloch import BlochModel, from_hoppings

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (I2, SX, SY, SZ)


def _add(hop, R, T):
    hop[R] = hop.get(R, 0) + np.asarray(T, dtype=complex)


def _ssh_hoppings(v, w):
    # H = sum_n v a+_{n1} a_{n2} + w a+_{n2} a_{n+1,1} + h.c.
    return {
        (0,): np.array([[0, v], [np.conj(v), 0]], dtype=complex),
        (1,): np.array([[0, 0], [w, 0]], dtype=complex),
        (-1,): np.array([[0, np.conj(w)], [0, 0]], dtype=complex),
    }


def ssh(v: float = 1.0, w: float = 1.5) -> BlochModel:
    """SSH chain with intracell ``v`` and intercell ``w`` hopping.

    Bloch form ``(v + w cos k) sx - w sin k sy``; ``H(k)[0, 1] = v + w e^{ik}``.
    """
    return from_hoppings(
        _ssh_hoppings(v, w), 1, "ssh", hermitian_hint=True, params={"v": v, "w": w}
    )


def theta_unitary(theta: float) -> np.ndarray:
    """``cos(theta) 1 + i sin(theta) sx``, mixing the two unit-cell modes."""
    return np.cos(theta) * I2 + 1j * np.sin(theta) * SX


def theta_model(v: float = 1.0, w: float = 1.5, theta: float = 0.0) -> BlochModel:
    """SSH chain rotated inside the unit cell: ``H(k) = U^dag H_SSH(k) U``.

    ``theta = 0`` is the SSH chain, ``theta = pi/4`` a Creutz-ladder configuration.
    """
    if not 0.0 <= theta <= np.pi / 4 + 1e-12:
        raise ValueError("theta must lie in [0, pi/4]")
    U = theta_unitary(theta)
    hop = {R: U.conj().T @ T @ U for R, T in _ssh_hoppings(v, w).items()}
    return from_hoppings(
        hop, 1, "theta", hermitian_hint=True, params={"v": v, "w": w, "theta": theta}
    )


def theta_symmetries(theta: float):
    """Time-reversal and particle-hole unitaries of :func:`theta_model`."""
    from .symmetry import SymmetryOp

    u_trs = np.cos(2 * theta) * I2 - 1j * np.sin(2 * theta) * SX
    return [
        SymmetryOp(u_trs, "TRS", "HERM", +1),
        SymmetryOp(SZ, "PHS", "HERM", +1),
    ]


def qwz(u: float = 1.2, J: float = 1.0) -> BlochModel:
    """Qi-Wu-Zhang Chern insulator.

    ``J sin kx sx + J sin ky sy + J (u + cos kx + cos ky) sz``.
    """
    hop: dict = {}
    _add(hop, (0, 0), J * u * SZ)
    for axis, sig in ((0, SX), (1, SY)):
        plus = [0, 0]
        plus[axis] = 1
        minus = [0, 0]
        minus[axis] = -1
        # sin k = (e^{ik} - e^{-ik}) / 2i and e^{ik} multiplies T_{-R}
        _add(hop, tuple(minus), J * sig / 2j + J * SZ / 2)
        _add(hop, tuple(plus), -J * sig / 2j + J * SZ / 2)
    return from_hoppings(hop, 2, "qwz", hermitian_hint=True, params={"u": u, "J": J})


def hatano_nelson(J: float = 1.0, delta: float = 0.5, gamma: float | None = None) -> BlochModel:
    """Hatano-Nelson chain ``J_R e^{ik} + J_L e^{-ik} - i gamma``.

    ``J_R = J (1 + delta)`` hops to the right, ``J_L = J (1 - delta)`` to the left;
    ``gamma`` defaults to ``2 delta J``.
    """
    if gamma is None:
        gamma = 2 * delta * J
    jr, jl = J * (1 + delta), J * (1 - delta)
    hop = {(0,): [[-1j * gamma]], (-1,): [[jr]], (1,): [[jl]]}
    return from_hoppings(
        hop,
        1,
        "hn",
        hermitian_hint=(delta == 0 and gamma == 0) or None,
        params={"J": J, "delta": delta, "gamma": gamma},
    )


def chiral_nh_2d(J: float = 1.0) -> BlochModel:
    """``J sin kx sx + J sin ky sy + iJ (2 cos kx + cos ky - 3)``.

    Non-Hermitian with chiral symmetry ``sz H^dag sz = -H``.
    """
    hop: dict = {}
    _add(hop, (0, 0), -3j * J * I2)
    for axis, sig, c in ((0, SX, 2.0), (1, SY, 1.0)):
        plus = [0, 0]
        plus[axis] = 1
        minus = [0, 0]
        minus[axis] = -1
        _add(hop, tuple(minus), J * sig / 2j + 1j * J * c * I2 / 2)
        _add(hop, tuple(plus), -J * sig / 2j + 1j * J * c * I2 / 2)
    return from_hoppings(hop, 2, "chiral_nh_2d", hermitian_hint=False, params={"J": J})


STACKED_HN_PI = (1, 0)


def stacked_hn(kappa: float = 1.0, J: float = 0.5) -> BlochModel:
    """Two unidirectional Hatano-Nelson chains of opposite chirality, coupled by ``J``.

    ``H(k) = [[kappa (e^{ik} - i), J], [J, kappa (e^{-ik} - i)]]``.  Emitters sit on
    the first chain only; the projector is stored in ``meta["emitter_pi"]``.
    """
    hop = {
        (0,): [[-1j * kappa, J], [J, -1j * kappa]],
        (-1,): [[kappa, 0], [0, 0]],
        (1,): [[0, 0], [0, kappa]],
    }
    return from_hoppings(
        hop,
        1,
        "stacked_hn",
        hermitian_hint=False,
        params={"kappa": kappa, "J": J},
        meta={"emitter_pi": STACKED_HN_PI},
    )


def enlarge_cell(model: BlochModel, factor: int) -> BlochModel:
    """Relabel ``factor`` consecutive cells as one.

    Sublattice ``a * n_bands + s`` of the new cell is sublattice ``s`` of old
    cell ``factor * n + a``.
    """
    if factor < 1:
        raise ValueError("factor must be >= 1")
    if model.dim != 1:
        raise ValueError("enlarge_cell supports 1D models only")
    if model.hoppings is None:
        raise ValueError("enlarge_cell needs a model with explicit hoppings")
    if factor == 1:
        return model
    nb = model.n_bands
    hop = defaultdict(lambda: np.zeros((factor * nb, factor * nb), dtype=complex))
    for (r,), T in model.hoppings.items():
        for a in range(factor):
            # old hop from cell f*n + a to cell f*n + a + r = f*(n + R) + b
            R, b = divmod(a + r, factor)
            hop[(R,)][a * nb:(a + 1) * nb, b * nb:(b + 1) * nb] += T
    return from_hoppings(
        dict(hop),
        1,
        f"{model.name}_x{factor}",
        hermitian_hint=model.hermitian_hint,
        params=dict(model.params, cell_factor=factor),
        meta=dict(model.meta),
    )


# name -> (constructor, defaults); the CLI/JSON vocabulary
CATALOG = {
    "ssh": (ssh, {"v": 1.0, "w": 1.5}),
    "theta": (theta_model, {"v": 1.0, "w": 1.5, "theta": 0.0}),
    "qwz": (qwz, {"u": 1.2, "J": 1.0}),
    "hn": (hatano_nelson, {"J": 1.0, "delta": 0.5, "gamma": None}),
    "chiral_nh_2d": (chiral_nh_2d, {"J": 1.0}),
    "stacked_hn": (stacked_hn, {"kappa": 1.0, "J": 0.5}),
}


def build(name: str, **params) -> BlochModel:
    """Construct a catalog model by name, filling unspecified parameters with defaults."""
    if name not in CATALOG:
        raise KeyError(f"unknown model {name!r}; known: {sorted(CATALOG)}")
    ctor, defaults = CATALOG[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise KeyError(f"unknown parameters for {name}: {sorted(unknown)}")
    return ctor(**{**defaults, **params})
