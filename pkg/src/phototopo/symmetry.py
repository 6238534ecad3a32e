"""Time-reversal, particle-hole and chiral symmetries of Bloch Hamiltonians.

Three families of constraints are supported (``U`` unitary, ``S`` chiral):

========  ============================  ============================  ======================
variant   TRS                           PHS                           chiral
========  ============================  ============================  ======================
HERM      U H*(k) U^-1 = H(-k)          U H*(k) U^-1 = -H(-k)         S H(k) S^-1 = -H(k)
NH_AZ     U H*(k) U^-1 = H(-k)          U H^T(k) U^-1 = -H(-k)        S H^dag(k) S^-1 = -H(k)
NH_AZ_DAG U H^T(k) U^-1 = H(-k)         U H*(k) U^-1 = -H(-k)         S H^dag(k) S^-1 = -H(k)
========  ============================  ============================  ======================
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bloch import BlochModel, KGrid, evaluate, is_hermitian
from .errors import AmbiguousClass
from .models import PAULI

FLAVORS = ("TRS", "PHS", "CHIRAL")
VARIANTS = ("HERM", "NH_AZ", "NH_AZ_DAG")

# (T^2, C^2, S) -> Altland-Zirnbauer label; 0 means the symmetry is absent
TENFOLD = {
    (0, 0, 0): "A",
    (0, 0, 1): "AIII",
    (1, 0, 0): "AI",
    (1, 1, 1): "BDI",
    (0, 1, 0): "D",
    (-1, 1, 1): "DIII",
    (-1, 0, 0): "AII",
    (-1, -1, 1): "CII",
    (0, -1, 0): "C",
    (1, -1, 1): "CI",
}
# The rows that occur for number-conserving Hamiltonians with T^2 = C^2 = +1.
NUMBER_CONSERVING = ("A", "AIII", "AI", "BDI", "D")


@dataclass(frozen=True, eq=False)
class SymmetryOp:
    unitary: np.ndarray
    flavor: str
    variant: str = "HERM"
    square_sign: int | None = None

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.unitary, dtype=complex))
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if U.shape[0] != U.shape[1] or not np.allclose(U.conj().T @ U, np.eye(len(U)), atol=1e-10):
            raise ValueError("symmetry matrix must be unitary")
        object.__setattr__(self, "unitary", U)
        if self.flavor == "CHIRAL":
            object.__setattr__(self, "square_sign", None)
            return
        UU = U @ U.conj()
        sign = 1 if np.allclose(UU, np.eye(len(U)), atol=1e-10) else (
            -1 if np.allclose(UU, -np.eye(len(U)), atol=1e-10) else 0
        )
        if sign == 0:
            raise ValueError("antiunitary symmetry must square to +-1")
        if self.square_sign is not None and self.square_sign != sign:
            raise ValueError(f"U U* = {sign:+d} 1, but square_sign={self.square_sign:+d}")
        object.__setattr__(self, "square_sign", sign)

    def with_variant(self, variant: str) -> "SymmetryOp":
        return SymmetryOp(self.unitary, self.flavor, variant, self.square_sign)


@dataclass(frozen=True)
class ClassLabel:
    name: str
    variant: str = "HERM"
    present: frozenset = frozenset()  # {(flavor, square_sign or None)}

    def __str__(self):
        return self.name + ("†" if self.variant == "NH_AZ_DAG" else "")

    @property
    def flags(self) -> tuple:
        d = dict(self.present)
        return (d.get("TRS", 0), d.get("PHS", 0), 1 if "CHIRAL" in d else 0)


def _label(flags: tuple, variant: str, present) -> ClassLabel:
    t, c, s = flags
    if t and c:
        s = 1
    if (t, c, s) not in TENFOLD:
        raise AmbiguousClass(f"no Altland-Zirnbauer class with T^2={t}, C^2={c}, S={s}")
    return ClassLabel(TENFOLD[(t, c, s)], variant, frozenset(present))


def label_from_flags(trs: int = 0, phs: int = 0, chiral: bool = False, variant: str = "HERM") -> ClassLabel:
    present = set()
    if trs:
        present.add(("TRS", trs))
    if phs:
        present.add(("PHS", phs))
    if chiral or (trs and phs):
        present.add(("CHIRAL", None))
    return _label((trs, phs, int(bool(chiral))), variant, present)


def symmetry_residual(model: BlochModel, op: SymmetryOp, grid: KGrid | None = None) -> float:
    """Largest entrywise violation of the constraint over the grid."""
    U = op.unitary
    if U.shape[0] != model.n_bands:
        raise ValueError(f"symmetry acts on {U.shape[0]} modes, model has {model.n_bands} bands")
    grid = grid or KGrid(16, model.dim)
    ks = grid.nodes
    H = evaluate(model, ks)
    Ud = U.conj().T
    if op.flavor == "CHIRAL":
        src = H if op.variant == "HERM" else np.swapaxes(H, -1, -2).conj()
        return float(np.max(np.abs(U @ src @ Ud + H)))
    Hm = evaluate(model, -ks)
    conj = (op.flavor == "TRS") == (op.variant != "NH_AZ_DAG")
    if op.variant == "HERM":
        conj = True
    src = H.conj() if conj else np.swapaxes(H, -1, -2)
    sign = 1.0 if op.flavor == "TRS" else -1.0
    return float(np.max(np.abs(U @ src @ Ud - sign * Hm)))


def check_symmetry(model: BlochModel, op: SymmetryOp, grid: KGrid | None = None, tol: float = 1e-8) -> bool:
    return symmetry_residual(model, op, grid) <= tol


def pauli_strings(n_bands: int) -> list:
    if n_bands == 1:
        return [np.eye(1, dtype=complex)]
    if n_bands == 2:
        return list(PAULI)
    if n_bands == 4:
        return [np.kron(a, b) for a, b in itertools.product(PAULI, PAULI)]
    raise ValueError("Pauli search supports 1, 2 or 4 bands")


def find_symmetries(
    model: BlochModel,
    variant: str,
    candidates=(),
    pauli_search: bool = True,
    grid: KGrid | None = None,
    tol: float = 1e-8,
) -> list:
    """All verified symmetries among the candidates and (optionally) Pauli strings.

    A global phase changes neither the constraints nor ``U U*``, so Pauli
    strings are tried without phase factors.
    """
    grid = grid or KGrid(16, model.dim)
    trial = [op.with_variant(variant) for op in candidates]
    if pauli_search:
        for P in pauli_strings(model.n_bands):
            for flavor in FLAVORS:
                trial.append(SymmetryOp(P, flavor, variant))
    found = [op for op in trial if check_symmetry(model, op, grid, tol)]
    # close under products: chiral from TRS x PHS
    trs = [op for op in found if op.flavor == "TRS"]
    phs = [op for op in found if op.flavor == "PHS"]
    if trs and phs and not any(op.flavor == "CHIRAL" for op in found):
        for t, c in itertools.product(trs, phs):
            for S in (c.unitary @ t.unitary.conj(), c.unitary @ t.unitary):
                op = SymmetryOp(S, "CHIRAL", variant)
                if check_symmetry(model, op, grid, tol):
                    found.append(op)
                    break
    return found


def classify(
    model: BlochModel,
    candidates=(),
    pauli_search: bool | None = None,
    variant: str | None = None,
    grid: KGrid | None = None,
    tol: float = 1e-8,
) -> ClassLabel:
    """Symmetry class from the verified symmetries.

    ``variant`` defaults to ``HERM`` for Hermitian models and ``NH_AZ``
    otherwise.  ``pauli_search`` defaults to on when ``n_bands`` is 1, 2 or 4.
    """
    if variant is None:
        variant = "HERM" if is_hermitian(model) else "NH_AZ"
    if pauli_search is None:
        pauli_search = model.n_bands in (1, 2, 4)
    found = find_symmetries(model, variant, candidates, pauli_search, grid, tol)
    flags = {}
    present = set()
    for op in found:
        sign = op.square_sign if op.flavor != "CHIRAL" else 1
        if flags.setdefault(op.flavor, sign) != sign:
            raise AmbiguousClass(f"{op.flavor} found with both T^2=+1 and T^2=-1")
        present.add((op.flavor, op.square_sign))
    return _label(
        (flags.get("TRS", 0), flags.get("PHS", 0), flags.get("CHIRAL", 0)), variant, present
    )


def inherited_flags(bath: ClassLabel, omega_e: complex, tol: float = 1e-10) -> tuple:
    """Which bath symmetries survive in ``w + g^2 (w - H)^-1``.

    Substituting the mediated form into each constraint gives the condition on
    ``w``: Hermitian TRS always; conjugating TRS needs real ``w``; transposing
    PHS needs ``w = 0``; conjugating PHS (AZ dagger) and chiral need
    ``Re w = 0``; transposing TRS (AZ dagger) always survives.
    """
    w = complex(omega_e)
    real, imag, zero = abs(w.imag) <= tol, abs(w.real) <= tol, abs(w) <= tol
    t, c, s = bath.flags
    if bath.variant == "HERM":
        keep = (True, zero, zero)
    elif bath.variant == "NH_AZ":
        keep = (real, zero, imag)
    else:
        keep = (True, imag, imag)
    return (t if keep[0] else 0, c if keep[1] else 0, s if keep[2] else 0)


def predict_inherited_class(bath_class: ClassLabel, omega_e: complex, tol: float = 1e-10) -> ClassLabel:
    """Class of the mediated emitter Hamiltonian (one emitter per resonator).

    On resonance the class is unchanged; off resonance the Hermitian
    transitions are AIII -> A, BDI -> AI and D -> A.
    """
    t, c, s = inherited_flags(bath_class, omega_e, tol)
    present = {(f, sg) for f, sg in bath_class.present}
    kept = {"TRS": bool(t), "PHS": bool(c), "CHIRAL": bool(s)}
    present = {(f, sg) for f, sg in present if kept[f]}
    return _label((t, c, s), bath_class.variant, present)
