"""Non-unitary wave-packet evolution on the ladder."""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import IllConditioned, OutOfRange, Overflow, ZeroState
from .spectral import eig

# raw stored states carry the accumulated norm; cap it below float range
_LOG_NORM_MAX = math.log(1e300)
_EVEC_CONDITION_MAX = 1e6


@dataclass(frozen=True)
class WavepacketTrace:
    """Evolution record: times, raw states (columns, unit shape times
    norms), norms relative to t=0, and per-step displacement IPR and
    cell-support counts."""

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray
    mipr_series: np.ndarray
    support_series: np.ndarray


def initial_state(L, cell=None, weights=(1.0, 0.0)):
    """Normalized state on one cell (1-based; default is the center cell
    ceil(L/2)) with leg amplitudes weights = (a, b)."""
    if cell is None:
        cell = (L + 1) // 2
    if not 1 <= cell <= L:
        raise OutOfRange(f"cell {cell} outside 1..{L}")
    wa, wb = complex(weights[0]), complex(weights[1])
    nrm = math.hypot(abs(wa), abs(wb))
    if nrm == 0.0:
        raise ZeroState("both leg weights vanish")
    psi = np.zeros(2 * L, dtype=complex)
    psi[2 * (cell - 1)] = wa / nrm
    psi[2 * (cell - 1) + 1] = wb / nrm
    return psi


def mipr(state, L):
    """Displacement-weighted IPR: sum_j w_j (|a_j|^4 + |b_j|^4) with
    w_j = (L/2 - j)/(L/2), j = 1..L. Positive values mean weight piled
    on the left half."""
    if L % 2 != 0:
        raise ValueError("mipr weights assume an even cell count L")
    psi = np.asarray(state, dtype=complex).ravel()
    if psi.size != 2 * L:
        raise ValueError(f"expected 2L = {2 * L} sites, got {psi.size}")
    p2 = np.abs(psi) ** 2
    norm2 = float(p2.sum())
    if norm2 == 0.0:
        raise ZeroState("cannot normalize the zero state")
    p4 = (p2 / norm2) ** 2
    w = (L / 2.0 - np.arange(1, L + 1)) / (L / 2.0)
    return float(np.dot(w, p4[0::2] + p4[1::2]))


def compacton_support(state, fraction=1e-6):
    """Number of cells whose intensity exceeds fraction times the peak
    cell intensity."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must be in (0, 1)")
    psi = np.asarray(state, dtype=complex).ravel()
    p2 = np.abs(psi) ** 2
    cells = p2[0::2] + p2[1::2]
    peak = float(cells.max()) if cells.size else 0.0
    if peak == 0.0:
        raise ZeroState("state has no weight")
    return int(np.sum(cells > fraction * peak))


def _trace_arrays(times, units, lognorms, L):
    norms = np.exp(np.asarray(lognorms))
    states = np.asarray(units).T * norms[None, :]
    mipr_series = np.array([mipr(u, L) for u in units])
    support_series = np.array([compacton_support(u) for u in units])
    return WavepacketTrace(times, states, norms, mipr_series, support_series)


def _propagate_expm(H, psi0, times, L):
    dt = times[1] - times[0]
    U = scipy.linalg.expm(-1j * dt * H)
    units = [psi0]
    lognorms = [0.0]
    phi = psi0
    for k in range(1, len(times)):
        phi = U @ phi
        g = float(np.linalg.norm(phi))
        lognorm = lognorms[-1] + math.log(g)
        if lognorm > _LOG_NORM_MAX:
            raise Overflow(
                f"state norm exceeded 1e300 at t = {times[k]:.6g}",
                time=float(times[k]))
        phi = phi / g
        units.append(phi)
        lognorms.append(lognorm)
    return _trace_arrays(times, units, lognorms, L)


def _propagate_eig(H, psi0, times, L, res=None):
    if res is None:
        res = eig(H, want_vectors=True)
    V = res.right_eigenvectors
    E = res.eigenvalues
    try:
        c = np.linalg.solve(V, psi0)
    except np.linalg.LinAlgError:
        raise IllConditioned("eigenvector matrix is numerically singular")
    with np.errstate(divide="ignore"):
        logc = np.log(np.abs(c))
    units = [psi0]
    lognorms = [0.0]
    for k in range(1, len(times)):
        t = times[k]
        logw = logc + E.imag * t
        shift = float(logw.max())
        w = np.zeros_like(c)
        alive = np.isfinite(logw)
        w[alive] = np.exp(logw[alive] - shift) * np.exp(
            1j * (np.angle(c[alive]) - E.real[alive] * t))
        phi = V @ w
        g = float(np.linalg.norm(phi))
        if g == 0.0:
            raise ZeroState(f"evolved state vanished at t = {t:.6g}")
        lognorm = shift + math.log(g)
        if lognorm > _LOG_NORM_MAX:
            raise Overflow(
                f"state norm exceeded 1e300 at t = {t:.6g}", time=float(t))
        units.append(phi / g)
        lognorms.append(lognorm)
    return _trace_arrays(times, units, lognorms, L)


def propagate(H, psi0, t_max, n_steps, method="auto"):
    """Evolve psi0 under exp(-iHt) on a uniform grid of n_steps intervals.

    method "eig" expands in the right eigenbasis (cheap per step, needs a
    well-conditioned basis), "expm" steps with a fixed matrix exponential,
    "auto" picks eig when the eigenvector condition number is below 1e6.
    The returned trace holds raw states; norms are accumulated in log space
    and an Overflow is raised past 1e300.
    """
    H = np.asarray(H, dtype=complex)
    dim = H.shape[0]
    if H.ndim != 2 or H.shape[1] != dim:
        raise ValueError("square matrix required")
    if dim % 2 != 0:
        raise ValueError("even dimension required (two sites per cell)")
    if not np.all(np.isfinite(H.real)) or not np.all(np.isfinite(H.imag)):
        raise ValueError("H must have finite entries")
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.size != dim:
        raise ValueError(f"state length {psi0.size} does not match {dim}")
    nrm = float(np.linalg.norm(psi0))
    if nrm == 0.0:
        raise ZeroState("cannot evolve the zero state")
    psi0 = psi0 / nrm
    if not (isinstance(n_steps, (int, np.integer)) and n_steps >= 1):
        raise ValueError("n_steps must be a positive integer")
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValueError("t_max must be positive and finite")
    if method not in ("auto", "eig", "expm"):
        raise ValueError(f"unknown method {method!r}")
    times = np.linspace(0.0, float(t_max), n_steps + 1)
    L = dim // 2
    if method == "expm":
        return _propagate_expm(H, psi0, times, L)
    res = eig(H, want_vectors=True)
    if method == "eig" or res.evec_condition < _EVEC_CONDITION_MAX:
        return _propagate_eig(H, psi0, times, L, res)
    return _propagate_expm(H, psi0, times, L)
