import numpy as np
import pytest

from nhcreutz import (
    OBC,
    PBC,
    GridSpec,
    ModelParams,
    build_realspace,
    classify,
    classify_point,
    dipr_map,
    eig,
    grid_axes,
    mean_dipr,
    mipr_map,
    obc_spectrum_via_chains,
    phase_diagram,
    spectrum_overlay,
)


def spec(lo=-1.0, hi=1.0, n=5, g0=0.5, **kw):
    return GridSpec(t0_range=(lo, hi, n), gbar_range=(lo, hi, n), g0=g0,
                    **kw)


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(t0_range=(1.0, -1.0, 5), gbar_range=(-1, 1, 5), g0=0.5)
        with pytest.raises(ValueError):
            GridSpec(t0_range=(-1, 1, 1), gbar_range=(-1, 1, 5), g0=0.5)
        with pytest.raises(ValueError):
            spec(boundary="ring")

    def test_axes_plain(self):
        t0v, gv = grid_axes(spec(n=5))
        assert np.allclose(t0v, np.linspace(-1, 1, 5))
        assert np.allclose(gv, np.linspace(-1, 1, 5))

    def test_axes_snapped(self):
        s = GridSpec(t0_range=(-2.0, 2.0, 101), gbar_range=(-2.0, 2.0, 101),
                     g0=0.5, tbar=1.0, snap_special=True)
        t0v, gv = grid_axes(s)
        for v in (0.5, -0.5, 1.0, -1.0):
            assert v in t0v
            assert v in gv
        assert len(t0v) == 101 and len(np.unique(t0v)) == 101

    def test_snap_leaves_out_of_range_values(self):
        s = GridSpec(t0_range=(0.0, 0.4, 5), gbar_range=(0.0, 0.4, 5),
                     g0=0.5, tbar=1.0, snap_special=True)
        t0v, _ = grid_axes(s)
        assert 0.5 not in t0v  # special value outside the range


class TestPhaseDiagram:
    def test_rows_row_major_and_match_direct(self):
        s = spec(n=3, L=10)
        rows = phase_diagram(s)
        t0v, gv = grid_axes(s)
        assert len(rows) == 9
        k = 0
        for gbar in gv:
            for t0 in t0v:
                r = rows[k]
                assert (r.t0, r.gbar) == (t0, gbar)
                p = ModelParams.from_bars(tbar=1.0, t0=t0, gbar=gbar,
                                          g0=0.5, L=10)
                c1, c2 = obc_spectrum_via_chains(p)
                eigs = np.concatenate([c1, c2])
                tol = 1e-9 * max(np.abs(eigs).max(), 0.0)
                direct = classify(eigs, tol_abs=tol)
                assert r.class_obc == direct.label
                assert r.M_obc == pytest.approx(direct.M)
                assert r.degeneracy_label == classify_point(p).label
                k += 1

    def test_pbc_real_on_fine_tuned_line(self):
        # nodes with gbar = t0 g0 / tbar classify Real under PBC
        s = GridSpec(t0_range=(0.2, 1.0, 3), gbar_range=(0.1, 0.5, 3),
                     g0=0.5, L=10)
        rows = phase_diagram(s)
        for r in rows:
            if r.gbar == pytest.approx(r.t0 * 0.5):
                assert r.class_obc in ("Real", "Collapsed")
                assert r.M_pbc == pytest.approx(1.0, abs=1e-9)

    def test_thread_determinism(self):
        s = spec(n=4, L=10)
        one = phase_diagram(s, threads=1)
        four = phase_diagram(s, threads=4)
        assert one == four

    def test_degeneracy_column_on_diagonal(self):
        # diagonal t0 = gbar with g0 = tbar = 1: EFB nodes; the phase map
        # reports them in its own degeneracy column, status stays ok
        s = spec(lo=-1.0, hi=1.0, n=3, g0=1.0, L=10)
        rows = phase_diagram(s)
        for r in rows:
            assert r.status == "ok"
            if r.t0 == r.gbar:
                # corners t0 = gbar = +-tbar upgrade to intersections
                assert r.degeneracy_label in ("EFBLine", "EFBIntersection")
            assert r.class_obc in ("Real", "Imaginary", "Complex",
                                   "Collapsed")


class TestDiprMap:
    def test_values_match_direct(self):
        s = spec(n=3, L=10)
        rows = dipr_map(s)
        for r in rows:
            p = ModelParams.from_bars(tbar=1.0, t0=r.t0, gbar=r.gbar,
                                      g0=0.5, L=10)
            res = eig(build_realspace(p), want_vectors=True)
            assert r.mean_dipr == pytest.approx(mean_dipr(res, 10))
            assert r.defective in (True, False)

    def test_efb_diagonal_flagged(self):
        s = spec(lo=-2.0, hi=2.0, n=5, g0=1.0, L=10)
        rows = dipr_map(s)
        flagged = [r for r in rows if r.t0 == r.gbar]
        assert flagged
        assert all(r.status in ("EFBLine", "EFBIntersection")
                   for r in flagged)
        assert any(r.status == "EFBLine" for r in flagged)

    def test_thread_determinism(self):
        s = spec(n=3, L=10)
        assert dipr_map(s, threads=1) == dipr_map(s, threads=3)


class TestMiprMap:
    def test_values_and_ordering(self):
        s = spec(lo=0.2, hi=0.8, n=3, L=10)
        rows = mipr_map(s, t_max=5.0, n_steps=20)
        assert len(rows) == 9
        ok = [r for r in rows if r.status == "ok"]
        assert ok
        for r in ok:
            assert -1.0 <= r.mipr_final <= 1.0
            assert 1 <= r.max_support <= 10

    def test_overflow_marked_not_raised(self):
        # gain ~ 2*gbar = 12 over t_max = 200: norm passes 1e300
        s = GridSpec(t0_range=(0.0, 0.1, 2), gbar_range=(6.0, 6.1, 2),
                     g0=0.5, L=10)
        rows = mipr_map(s, t_max=200.0, n_steps=20)
        assert any(r.status == "Overflow" for r in rows)
        for r in rows:
            if r.status == "Overflow":
                assert r.mipr_final is None

    def test_boundary_passed_through(self):
        s_obc = spec(lo=0.3, hi=0.7, n=2, L=10, boundary=OBC)
        s_pbc = spec(lo=0.3, hi=0.7, n=2, L=10, boundary=PBC)
        r_obc = mipr_map(s_obc, t_max=5.0, n_steps=10)
        r_pbc = mipr_map(s_pbc, t_max=5.0, n_steps=10)
        assert any(a.mipr_final != b.mipr_final
                   for a, b in zip(r_obc, r_pbc))


class TestSpectrumOverlay:
    def test_shapes_and_boundary_effect(self):
        p = ModelParams.from_bars(tbar=1.0, t0=0.5, gbar=0.8, g0=0.1, L=20)
        ov = spectrum_overlay(p)
        assert ov.pbc.shape == (40,)
        assert ov.obc.shape == (40,)
        # strong skin point: OBC spectrum differs visibly from PBC loop
        assert np.abs(np.sort_complex(ov.pbc)
                      - np.sort_complex(ov.obc)).max() > 0.1
