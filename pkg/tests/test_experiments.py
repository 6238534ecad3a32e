import numpy as np
import pytest

from phototopo import experiments as ex
from phototopo.bloch import from_hoppings
from phototopo.mediator import EmitterLayout, effective_bloch
from phototopo.models import SZ, chiral_nh_2d, hatano_nelson, qwz, ssh


@pytest.mark.parametrize(
    "model,w,kind,value",
    [
        (ssh(1.0, 1.5), 0.0, "WINDING_CHIRAL", 1),
        (hatano_nelson(1.0, 0.5, 1.0), -1j, "WINDING_SPECTRAL", 1),
        (qwz(1.2), 0.0, "CHERN", 1),
        (chiral_nh_2d(), -1j, "CHERN_ISV", 1),
    ],
)
def test_auto_invariant_picks_the_right_invariant(model, w, kind, value):
    r = ex.auto_invariant(model, w)
    assert (r.kind, r.value) == (kind, value)


def test_auto_invariant_needs_a_chiral_symmetry():
    # 1D Hermitian without chiral symmetry: SSH with a staggered potential
    hop = dict(ssh().hoppings)
    hop[(0,)] = hop[(0,)] + 0.3 * SZ
    with pytest.raises(ValueError):
        ex.auto_invariant(from_hoppings(hop, 1, hermitian_hint=True), 0.0)


def test_cplx_drops_negative_zero():
    assert str(ex.cplx(-1j)["re"]) == "0.0"


def test_proportionality_of_the_on_resonance_model():
    ks = np.linspace(0.1, 6.0, 16)
    bath = ssh(1.0, 1.5)
    ha = effective_bloch(bath, EmitterLayout.full(2, 0.0, 0.1))
    c, spread = ex.proportionality(ha, bath, ks)
    assert np.isclose(c, -0.01) and spread < 1e-12
    _, spread = ex.proportionality(bath, bath, ks)
    assert spread > 1e-3


def test_figure_registry():
    assert sorted(ex.FIGURES) == [f"fig{i}" for i in range(1, 7)]
