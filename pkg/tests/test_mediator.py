import warnings

import numpy as np
import pytest
from conftest import ZOO
from hypothesis import given
from hypothesis import strategies as st

from phototopo.bloch import KGrid, band_structure, evaluate, is_hermitian
from phototopo.errors import CertificateFailed, ResolventSingular, UnsupportedLayout
from phototopo.invariants import winding_chiral_1d
from phototopo.mediator import (
    EmitterLayout,
    deformation_gap_certificate,
    effective_bloch,
    full_bloch,
    full_spectrum_analytic,
    mediated_couplings_realspace,
    resolvent,
)
from phototopo.models import SZ, qwz, ssh, stacked_hn
from phototopo.realspace import PERIODIC, build_bath, effective_atomic_realspace
from phototopo.symmetry import SymmetryOp


def quiet_effective(bath, layout):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return effective_bloch(bath, layout, KGrid(32, bath.dim))


@pytest.mark.parametrize(
    "kwargs",
    [dict(pi_diagonal=(0, 0)), dict(pi_diagonal=(1, 2)), dict(pi_diagonal=(1,), g=0.0), dict(pi_diagonal=(1,), stripe_d=-1)],
)
def test_layout_validation(kwargs):
    with pytest.raises(ValueError):
        EmitterLayout(**kwargs)


def test_layout_helpers():
    lay = EmitterLayout.full(3, omega_e=0.2)
    assert lay.is_identity and list(lay.selected) == [0, 1, 2]
    assert isinstance(lay.omega_e, complex)
    assert list(EmitterLayout((0, 1, 1, 0)).selected) == [1, 2]


def test_resolvent_inverts_and_flags_singular_points():
    H = np.diag([1.0, -1.0])
    assert np.allclose(resolvent(H, 0.5), np.diag([1 / (0.5 - 1), 1 / 1.5]))
    with pytest.raises(ResolventSingular):
        resolvent(H, 1.0)


@pytest.mark.parametrize("name", sorted(ZOO))
@given(seed=st.integers(0, 10_000), g=st.floats(0.01, 0.3))
def test_resolvent_identity_across_the_zoo(name, seed, g):
    ctor, w = ZOO[name]
    bath = ctor()
    rng = np.random.default_rng(seed)
    k = rng.uniform(-np.pi, np.pi, bath.dim)
    ha = quiet_effective(bath, EmitterLayout.full(bath.n_bands, w, g))
    lhs = (w * np.eye(bath.n_bands) - bath(k)) @ (ha(k) - w * np.eye(bath.n_bands))
    assert np.allclose(lhs, g**2 * np.eye(bath.n_bands), atol=1e-10)


def test_on_resonance_ssh_is_minus_g2_inverse():
    bath, g = ssh(1.0, 1.5), 0.1
    ha = quiet_effective(bath, EmitterLayout.full(2, 0.0, g))
    k = np.linspace(0, 2 * np.pi, 9)[:, None]
    assert np.allclose(ha(k), -(g**2) * np.linalg.inv(bath(k)))


def test_stacked_chain_closed_form():
    kappa, J, g = 1.0, 0.5, 0.1
    ha = quiet_effective(stacked_hn(kappa, J), EmitterLayout((1, 0), -1j * kappa, g))
    k = KGrid(64).axis
    expected = -(g**2) * kappa / (kappa**2 - J**2) * np.exp(-1j * k) - 1j * kappa
    assert np.max(np.abs(ha(k[:, None])[:, 0, 0] - expected)) < 1e-10


@given(w=st.floats(-0.45, 0.45), g=st.floats(0.01, 0.2))
def test_hermitian_bath_real_detuning_stays_hermitian(w, g):
    ha = quiet_effective(ssh(1.0, 1.5), EmitterLayout.full(2, w, g))
    assert ha.hermitian_hint and is_hermitian(ha, KGrid(16))


def test_complex_detuning_breaks_hermiticity():
    ha = quiet_effective(ssh(1.0, 1.5), EmitterLayout.full(2, 0.1j, 0.1))
    assert not is_hermitian(ha, KGrid(16))


@given(v=st.floats(0.2, 2.0), w=st.floats(0.2, 2.0))
def test_winding_of_h_equals_winding_of_minus_h_inverse(v, w):
    if abs(v - w) < 0.05:
        return
    S = SymmetryOp(SZ, "CHIRAL")
    bath = ssh(v, w)
    ha = quiet_effective(bath, EmitterLayout.full(2, 0.0, 1.0))
    assert winding_chiral_1d(bath, S).value == winding_chiral_1d(ha, S).value


def test_weak_coupling_warning_and_singular_detuning():
    with pytest.warns(UserWarning):
        ha = effective_bloch(ssh(1.0, 1.5), EmitterLayout.full(2, 0.0, 0.4))
    assert not ha.meta["weak_coupling"]
    with pytest.raises(ResolventSingular):
        effective_bloch(ssh(1.0, 1.5), EmitterLayout.full(2, 1.0, 0.1))


def test_layout_must_match_the_bath():
    with pytest.raises(UnsupportedLayout):
        effective_bloch(ssh(), EmitterLayout((1,)))
    with pytest.raises(UnsupportedLayout):
        full_bloch(ssh(), EmitterLayout((1, 0)))


@pytest.mark.parametrize("bath,w", [(ssh(1.0, 1.5), 0.0), (qwz(1.2), 0.1)])
def test_full_spectrum_matches_the_two_level_formula(bath, w):
    g = 0.2
    grid = KGrid(16, bath.dim)
    full = band_structure(full_bloch(bath, EmitterLayout.full(2, w, g)), grid).energies.real
    bare = band_structure(bath, grid).energies.real
    analytic = np.sort(full_spectrum_analytic(bare, w, g).real, axis=-1)
    assert np.allclose(full.reshape(analytic.shape), analytic)


@pytest.mark.parametrize("bath,w", [(ssh(1.0, 1.5), 0.0), (qwz(1.2), 0.0), (qwz(1.2), 0.3)])
def test_triviality_certificate(bath, w):
    cert = deformation_gap_certificate(bath, EmitterLayout.full(2, w, 0.1))
    assert cert.passed and cert.worst_rel_error < 1e-8
    assert cert.determinants.shape == (11, 64**bath.dim)


def test_certificate_failure_is_reported():
    with pytest.raises(CertificateFailed) as err:
        deformation_gap_certificate(ssh(), EmitterLayout.full(2, 0.0, 0.1), rtol=-1.0)
    assert err.value.rel_error >= 0


@pytest.mark.parametrize(
    "bath,layout",
    [
        (ssh(1.0, 1.5), EmitterLayout.full(2, 0.0, 0.1)),
        (stacked_hn(1.0, 0.5), EmitterLayout((1, 0), -1j, 0.1)),
        (qwz(1.2), EmitterLayout.full(2, 0.2, 0.1)),
    ],
)
def test_realspace_couplings_match_direct_inversion(bath, layout):
    n = 8 if bath.dim == 1 else 5
    h = mediated_couplings_realspace(bath, layout, n)
    system = build_bath(bath, (n,) * bath.dim, (PERIODIC,) * bath.dim)
    hosts = [i for i, s in enumerate(system.sites) if layout.pi_diagonal[s.sublattice]]
    direct = effective_atomic_realspace(system, hosts, layout.omega_e, layout.g)
    assert np.allclose(h + layout.omega_e * np.eye(len(hosts)), direct, atol=1e-12)
    # the diagonal block of the Fourier pair is the k-average of the Bloch form
    ha = quiet_effective(bath, layout)
    ks = np.stack(np.meshgrid(*[2 * np.pi * np.arange(n) / n] * bath.dim, indexing="ij"), -1)
    avg = evaluate(ha, ks).reshape(-1, len(layout.selected), len(layout.selected)).mean(0)
    ns = len(layout.selected)
    assert np.allclose(direct[:ns, :ns], avg, atol=1e-12)
