import numpy as np
import pytest

from nhcreutz import (
    OBC,
    PBC,
    ModelParams,
    OutOfRange,
    Overflow,
    ZeroState,
    build_realspace,
    compacton_support,
    initial_state,
    mipr,
    propagate,
)


def params(tbar=1.0, t0=0.8, gbar=0.4, g0=0.5, L=10, boundary=OBC):
    return ModelParams.from_bars(tbar=tbar, t0=t0, gbar=gbar, g0=g0, L=L,
                                 boundary=boundary)


class TestInitialState:
    def test_default_center_cell(self):
        psi = initial_state(50)
        assert psi[48] == 1.0  # cell 25, a-leg
        assert np.count_nonzero(psi) == 1

    def test_weights_normalized(self):
        psi = initial_state(4, cell=2, weights=(3.0, 4.0j))
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-15
        assert psi[2] == pytest.approx(0.6)
        assert psi[3] == pytest.approx(0.8j)

    def test_errors(self):
        with pytest.raises(OutOfRange):
            initial_state(4, cell=5)
        with pytest.raises(ZeroState):
            initial_state(4, weights=(0.0, 0.0))


class TestMipr:
    def test_single_site_values(self):
        L = 50
        e1 = np.zeros(2 * L)
        e1[0] = 1.0
        assert mipr(e1, L) == pytest.approx(0.96)
        eL = np.zeros(2 * L)
        eL[2 * (L - 1)] = 1.0
        assert mipr(eL, L) == pytest.approx(-1.0)
        mid = np.zeros(2 * L)
        mid[2 * (L // 2 - 1)] = 1.0
        assert mipr(mid, L) == pytest.approx(0.0, abs=1e-15)

    def test_errors(self):
        with pytest.raises(ValueError):
            mipr(np.ones(10), 5)
        with pytest.raises(ZeroState):
            mipr(np.zeros(8), 4)


class TestCompactonSupport:
    def test_single_cell(self):
        assert compacton_support(initial_state(8, cell=3,
                                               weights=(1.0, 1.0))) == 1

    def test_uniform(self):
        assert compacton_support(np.ones(16)) == 8

    def test_fraction_domain(self):
        with pytest.raises(ValueError):
            compacton_support(np.ones(8), fraction=0.0)
        with pytest.raises(ValueError):
            compacton_support(np.ones(8), fraction=1.0)
        with pytest.raises(ZeroState):
            compacton_support(np.zeros(8))


class TestPropagate:
    def test_hermitian_norm_conservation(self):
        H = build_realspace(params(gbar=0.0, g0=0.0, L=8))
        tr = propagate(H, initial_state(8), 10.0, 50)
        assert np.abs(tr.norms - 1.0).max() < 1e-9
        assert tr.norms[0] == 1.0
        assert len(tr.times) == 51
        assert tr.states.shape == (16, 51)

    def test_scalar_decay(self):
        kappa = np.array([0.3, 0.3, 0.3, 0.3])
        H = np.diag(-1j * kappa)
        psi = np.full(4, 0.5, dtype=complex)
        tr = propagate(H, psi, 5.0, 40)
        expected = np.exp(-0.3 * tr.times)
        assert np.abs(tr.norms - expected).max() < 1e-9

    def test_methods_agree_random(self):
        rng = np.random.default_rng(9)
        H = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        t1 = propagate(H, psi, 3.0, 30, method="eig")
        t2 = propagate(H, psi, 3.0, 30, method="expm")
        assert np.abs(t1.states - t2.states).max() < 1e-8
        assert np.abs(t1.norms - t2.norms).max() < 1e-8

    def test_efb_two_term_series(self):
        p = params(tbar=1.0, t0=0.7, gbar=0.7, g0=1.0, L=12)
        H = build_realspace(p)
        psi = initial_state(12)
        tr = propagate(H, psi, 20.0, 40)
        hpsi = H @ psi
        for m, t in enumerate(tr.times):
            exact = psi - 1j * t * hpsi
            assert np.abs(tr.states[:, m] - exact).max() < 1e-10

    def test_efb_dark_state(self):
        # (1, -i) cell weights are annihilated by the EFB Hamiltonian
        p = params(tbar=1.0, t0=0.7, gbar=0.7, g0=1.0, L=12)
        H = build_realspace(p)
        psi = initial_state(12, weights=(1.0, -1.0j))
        assert np.abs(H @ psi).max() < 1e-14
        tr = propagate(H, psi, 10.0, 20)
        assert np.abs(tr.states - psi[:, None]).max() < 1e-10

    def test_efb_overlap_strictly_decreasing(self):
        p = params(tbar=1.0, t0=0.9, gbar=0.9, g0=1.0, L=16)
        H = build_realspace(p)
        psi = initial_state(16)
        tr = propagate(H, psi, 15.0, 60)
        units = tr.states / np.linalg.norm(tr.states, axis=0)
        overlap = np.abs(units.conj().T @ units[:, 0])
        assert np.all(np.diff(overlap) < 0)

    def test_dp_overlap_periodic(self):
        # two symmetric flat levels beat with period pi / (2 sqrt(t^2-g^2))
        p = params(t0=1.0, gbar=0.5, g0=0.5, L=20, boundary=PBC)
        H = build_realspace(p)
        period = np.pi / (2.0 * np.sqrt(1.0 - 0.25))
        n_per = 25
        tr = propagate(H, initial_state(20), 4 * period, 4 * n_per)
        units = tr.states / tr.norms[None, :]
        overlap = np.abs(units.conj().T @ units[:, 0])
        for rep in (n_per, 2 * n_per, 3 * n_per, 4 * n_per):
            assert overlap[rep] > 0.99

    def test_overflow_reports_time(self):
        H = np.diag([2.0j] * 4)  # pure gain, e^{2t} blow-up
        with pytest.raises(Overflow) as exc:
            propagate(H, np.ones(4), 400.0, 40)
        assert exc.value.time is not None
        assert 0.0 < exc.value.time <= 400.0

    def test_validation(self):
        H = np.eye(4)
        with pytest.raises(ValueError):
            propagate(H, np.ones(4), -1.0, 10)
        with pytest.raises(ValueError):
            propagate(H, np.ones(4), 1.0, 0)
        with pytest.raises(ValueError):
            propagate(H, np.ones(3), 1.0, 10)
        with pytest.raises(ZeroState):
            propagate(H, np.zeros(4), 1.0, 10)
        with pytest.raises(ValueError):
            propagate(H, np.ones(4), 1.0, 10, method="magic")

    def test_trace_mipr_and_support(self):
        p = params(t0=1.0, gbar=0.0, g0=0.0, L=10)
        H = build_realspace(p)
        tr = propagate(H, initial_state(10), 8.0, 16)
        assert len(tr.mipr_series) == 17
        assert len(tr.support_series) == 17
        # Hermitian flat bands: compact localization, support stays <= 3
        assert max(tr.support_series) <= 3
