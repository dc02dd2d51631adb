"""Parameter-grid engines for phase maps, skin-effect maps, and
PBC/OBC spectrum overlays."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .degeneracy import GENERIC, _defective_from, classify_point
from .dynamics import initial_state, propagate
from .localization import mean_dipr
from .model import OBC, PBC, ModelParams, build_realspace, derive
from .spectral import classify, eig, obc_spectrum_via_chains, pbc_dispersion


@dataclass(frozen=True)
class GridSpec:
    """Rectangular (t0, gbar) grid at fixed g0, tbar.

    Ranges are (min, max, n_points). With snap_special the nearest grid
    line is moved onto each of t0, gbar in {+-g0, +-tbar} that falls in
    range, so analytic degeneracy loci are sampled exactly.
    """

    t0_range: tuple
    gbar_range: tuple
    g0: float
    tbar: float = 1.0
    L: int = 50
    boundary: str = OBC
    snap_special: bool = False

    def __post_init__(self):
        for rng in (self.t0_range, self.gbar_range):
            lo, hi, n = rng
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad grid range {rng}")
            if not (isinstance(n, (int, np.integer)) and n >= 2):
                raise ValueError("n_points must be an integer >= 2")
        if self.boundary not in (OBC, PBC):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if not (math.isfinite(self.g0) and math.isfinite(self.tbar)):
            raise ValueError("g0 and tbar must be finite")


@dataclass(frozen=True)
class GridRow:
    """One grid node; sweeps populate the fields they compute and record
    per-node failures in status instead of aborting."""

    t0: float
    gbar: float
    M_pbc: Optional[float] = None
    M_obc: Optional[float] = None
    class_obc: Optional[str] = None
    mean_dipr: Optional[float] = None
    mipr_final: Optional[float] = None
    max_support: Optional[int] = None
    degeneracy_label: Optional[str] = None
    defective: Optional[bool] = None
    status: str = "ok"


def _snap_axis(values, specials):
    out = values.copy()
    for s in sorted(set(specials)):
        if out[0] <= s <= out[-1]:
            out[int(np.argmin(np.abs(out - s)))] = s
    return out


def grid_axes(spec):
    """t0 and gbar axis values, snapped when requested."""
    t0 = np.linspace(*spec.t0_range[:2], spec.t0_range[2])
    gbar = np.linspace(*spec.gbar_range[:2], spec.gbar_range[2])
    if spec.snap_special:
        specials = (spec.g0, -spec.g0, spec.tbar, -spec.tbar)
        t0 = _snap_axis(t0, specials)
        gbar = _snap_axis(gbar, specials)
    return t0, gbar


def _node_params(spec, t0, gbar, boundary):
    return ModelParams.from_bars(tbar=spec.tbar, t0=t0, gbar=gbar,
                                 g0=spec.g0, L=spec.L, boundary=boundary)


def _run_grid(spec, worker, threads):
    t0_vals, gbar_vals = grid_axes(spec)
    # row-major: gbar index outer, t0 index inner
    jobs = [(t0, gbar) for gbar in gbar_vals for t0 in t0_vals]

    def guarded(job):
        try:
            return worker(*job)
        except Exception as exc:  # row-level marker, never abort the grid
            return GridRow(t0=job[0], gbar=job[1],
                           status=type(exc).__name__)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(guarded, jobs))
    return [guarded(job) for job in jobs]


def _status_flag(label):
    # degeneracy loci are flagged in maps that lack a degeneracy column
    return "ok" if label == GENERIC else label


def phase_diagram(spec, threads=1):
    """Spectral-density measure M and spectrum class on the grid; PBC from
    the closed-form dispersion on k_m = 2 pi m / L, OBC from the reduced
    chain pair."""

    def worker(t0, gbar):
        params = _node_params(spec, t0, gbar, PBC)
        k = 2.0 * np.pi * np.arange(spec.L) / spec.L
        ep, em = pbc_dispersion(params, k)
        pbc_eigs = np.concatenate([ep, em])
        tol_abs = 1e-9 * float(np.abs(pbc_eigs).max())
        cls_pbc = classify(pbc_eigs, tol_abs=tol_abs)
        c1, c2 = obc_spectrum_via_chains(replace(params, boundary=OBC))
        obc_eigs = np.concatenate([c1, c2])
        tol_abs = 1e-9 * float(np.abs(obc_eigs).max())
        cls_obc = classify(obc_eigs, tol_abs=tol_abs)
        label = classify_point(params).label
        return GridRow(t0=t0, gbar=gbar, M_pbc=cls_pbc.M, M_obc=cls_obc.M,
                       class_obc=cls_obc.label, degeneracy_label=label)

    return _run_grid(spec, worker, threads)


def dipr_map(spec, threads=1):
    """Eigenstate-averaged half-chain IPR difference on the grid (dense
    OBC eigenvectors) plus a numerical defectiveness flag."""

    def worker(t0, gbar):
        params = _node_params(spec, t0, gbar, OBC)
        res = eig(build_realspace(params), want_vectors=True)
        md = mean_dipr(res, spec.L)
        dfc = _defective_from(res.eigenvalues, res.right_eigenvectors, 1e-6)
        label = classify_point(params).label
        return GridRow(t0=t0, gbar=gbar, mean_dipr=md, defective=dfc,
                       degeneracy_label=label, status=_status_flag(label))

    return _run_grid(spec, worker, threads)


def mipr_map(spec, t_max=20.0, n_steps=200, threads=1):
    """Displacement IPR of the evolved center-cell state at t_max per
    node; Overflow is recorded as a row marker."""

    def worker(t0, gbar):
        params = _node_params(spec, t0, gbar, spec.boundary)
        H = build_realspace(params)
        psi0 = initial_state(spec.L)
        trace = propagate(H, psi0, t_max, n_steps, method="expm")
        label = classify_point(params).label
        return GridRow(t0=t0, gbar=gbar,
                       mipr_final=float(trace.mipr_series[-1]),
                       max_support=int(trace.support_series.max()),
                       degeneracy_label=label, status=_status_flag(label))

    return _run_grid(spec, worker, threads)


class SpectrumOverlay(NamedTuple):
    """PBC and OBC eigenvalues of the same parameter set."""

    pbc: np.ndarray
    obc: np.ndarray


def spectrum_overlay(params):
    """Dense PBC and OBC spectra side by side for one parameter point."""
    pbc = eig(build_realspace(replace(params, boundary=PBC))).eigenvalues
    obc = eig(build_realspace(replace(params, boundary=OBC))).eigenvalues
    return SpectrumOverlay(pbc=pbc, obc=obc)
