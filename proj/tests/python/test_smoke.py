import math

import pytest

import vortexbound as vb


def test_params_and_channels():
    p = vb.ModelParams(6.0)
    assert p.gamma_alpha == pytest.approx(math.sqrt(7.2))
    assert vb.make_channel(3, p) is None
    ch = vb.make_channel(0, p)
    assert ch.n_deep == 1


def test_specfun():
    assert vb.chf_m(1.0, 1.0, 2.0) == pytest.approx(math.exp(2.0), rel=1e-14)
    assert vb.bessel_k_imag(0.0, 1.0) == pytest.approx(0.42102443824070834, rel=1e-12)
    k1, k2 = vb.k_transition(2.0)
    assert k2 == pytest.approx(-k1 / 2.0 + k1 * k1, rel=1e-12)
    with pytest.raises(ValueError):
        vb.chf_m(1.0, 0.0, 1.0)


def test_spectrum_agrees_with_eigensolver():
    p = vb.ModelParams(6.0, r_trap=100.0)
    ch = vb.make_channel(0, p)
    exact = vb.find_states_exact(ch, p, vb.physical_q_threshold(p))
    prof = vb.RadialProfile.variational()
    num = vb.radial_eigensolve(prof, 6.0, 0, 100.0, 2000, 2)
    assert num[0] == pytest.approx(exact[0].eps, abs=1e-4)
    states = vb.assemble_spectrum(p, 2, 3, "closed")
    assert states[0].cls == "deep"


def test_onset_and_regime():
    c, ln_inv_r, _ = vb.fit_onset(1, 0)
    assert c == pytest.approx(0.3248, abs=5e-3)
    assert vb.regime_count(1000.0, 0.01) == 0


def test_vortex():
    prof = vb.solve_vortex_ode()
    assert prof.residual < 1e-8
    assert prof(10.0) == pytest.approx(1 - 1 / 200 - 9 / 80000, abs=1e-3)
