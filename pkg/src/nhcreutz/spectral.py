"""Analytic dispersions, dense eigensolves, spectral classification, and
complex-plane area of the PBC bands."""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from .errors import ConvergenceFailure, EmptySpectrum, Overflow, SingularGauge
from .model import (OBC, build_nhssh, build_realspace, derive,
                    nhssh_permutation, require_balanced, w_basis)

REAL = "Real"
IMAGINARY = "Imaginary"
COMPLEX = "Complex"
COLLAPSED = "Collapsed"


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues plus optional right eigenvectors and solver diagnostics.

    residual_max is max_n ||H v_n - E_n v_n||_2 over unit eigenvectors (NaN
    when vectors were not requested); evec_condition is the 2-norm condition
    of the eigenvector matrix (inf sentinel when not computed).
    """

    eigenvalues: np.ndarray
    right_eigenvectors: Optional[np.ndarray]
    residual_max: float
    evec_condition: float


@dataclass(frozen=True)
class SpectralClass:
    label: str
    M: float


def pbc_dispersion(params, k):
    """Closed-form PBC band pair (E_plus, E_minus) at momentum k.

    Accepts a scalar or an array of momenta.
    """
    d = derive(params)
    t0, g0 = params.t0, params.g0
    ka = np.asarray(k, dtype=float)
    sk, ck = np.sin(ka), np.cos(ka)
    shift = 2.0 * (d.dt * sk - 1j * d.dg * ck)
    rad = ((t0 * t0 - d.gbar * d.gbar) * ck * ck
           + (d.tbar * d.tbar - g0 * g0) * sk * sk
           + 1j * (t0 * g0 - d.tbar * d.gbar) * np.sin(2.0 * ka)).astype(complex)
    root = 2.0 * np.sqrt(rad)
    if ka.ndim == 0:
        return complex(shift + root), complex(shift - root)
    return shift + root, shift - root


def obc_bulk_dispersion(params, q):
    """Thermodynamic-limit OBC band pair at Bloch angle q (balanced only)."""
    require_balanced(params)
    d = derive(params)
    qa = np.asarray(q, dtype=float)
    rad = (d.u * d.u + d.v * d.v
           + 2.0 * d.u * d.v * np.cos(qa)).astype(complex)
    root = np.sqrt(rad)
    if qa.ndim == 0:
        return complex(root), -complex(root)
    return root, -root


def eig(H, want_vectors=False):
    """Dense non-symmetric eigensolve wrapped with diagnostics."""
    H = np.asarray(H, dtype=complex)
    try:
        if not want_vectors:
            vals = np.linalg.eigvals(H)
            return SpectrumResult(vals, None, math.nan, math.inf)
        vals, vecs = np.linalg.eig(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    # columns are unit norm from LAPACK; enforce anyway
    nrm = np.linalg.norm(vecs, axis=0)
    nrm[nrm == 0.0] = 1.0
    vecs = vecs / nrm
    resid = np.linalg.norm(H @ vecs - vecs * vals, axis=0).max() if H.size else 0.0
    sv = np.linalg.svd(vecs, compute_uv=False)
    cond = math.inf if sv[-1] == 0.0 else float(sv[0] / sv[-1])
    return SpectrumResult(vals, vecs, float(resid), cond)


def spectral_density_M(eigs, tol_abs=0.0):
    """Mean of |cos(arg E)| - |sin(arg E)|; |E| <= tol_abs counts as real."""
    eigs = np.asarray(eigs, dtype=complex)
    if eigs.size == 0:
        raise EmptySpectrum("spectral density of an empty spectrum")
    theta = np.angle(eigs)
    theta[np.abs(eigs) <= tol_abs] = 0.0
    return float(np.mean(np.abs(np.cos(theta)) - np.abs(np.sin(theta))))


def classify(eigs, tol_rel=1e-9, tol_abs=0.0):
    """Label a spectrum Real / Imaginary / Complex / Collapsed, with M."""
    eigs = np.asarray(eigs, dtype=complex)
    if eigs.size == 0:
        raise EmptySpectrum("classification of an empty spectrum")
    M = spectral_density_M(eigs, tol_abs)
    emax = float(np.abs(eigs).max())
    if emax <= tol_abs:
        return SpectralClass(COLLAPSED, M)
    if np.all(np.abs(eigs.imag) <= tol_rel * emax):
        return SpectralClass(REAL, M)
    if np.all(np.abs(eigs.real) <= tol_rel * emax):
        return SpectralClass(IMAGINARY, M)
    return SpectralClass(COMPLEX, M)


def _chain_offdiag_squares(d, L):
    """Per-bond off-diagonal products (sup*sub) for the two chains.

    In each chain the product on a bond is u^2 or v^2 (always real); chain
    one starts with the primed (v-type) bond, chain two with the unprimed.
    """
    u2 = d.g * d.g - d.f * d.f
    v2 = d.gp * d.gp - d.fp * d.fp
    c1 = np.array([v2 if m % 2 == 0 else u2 for m in range(L - 1)])
    c2 = np.array([u2 if m % 2 == 0 else v2 for m in range(L - 1)])
    return c1, c2


def _tridiag_spectrum_from_squares(sq):
    """Eigenvalues of the zero-diagonal tridiagonal with off-diagonal
    products sq (spectra depend only on those products)."""
    L = len(sq) + 1
    if np.all(sq >= 0.0):
        return sla.eigvalsh_tridiagonal(np.zeros(L), np.sqrt(sq)).astype(complex)
    if np.all(sq <= 0.0):
        return 1j * sla.eigvalsh_tridiagonal(np.zeros(L), np.sqrt(-sq))
    offd = np.sqrt(sq.astype(complex))
    T = np.diag(offd, 1) + np.diag(offd, -1)
    return np.linalg.eigvals(T)


def obc_spectrum_via_chains(params):
    """Accurate OBC ladder spectrum through the decoupled chains.

    Returns (eigs_chain1, eigs_chain2), each length L. Equivalent to the
    gauge transformation in product form: a tridiagonal spectrum depends only
    on the products of opposite off-diagonal pairs, so each chain reduces to
    a symmetric tridiagonal problem that stays well conditioned at system
    sizes where direct diagonalization of skin-effect matrices fails. Open
    boundary by construction regardless of params.boundary. Balanced only.
    """
    require_balanced(params)
    if params.L % 2:
        raise ValueError("chain decomposition needs even L")
    d = derive(params)
    c1, c2 = _chain_offdiag_squares(d, params.L)
    return (_tridiag_spectrum_from_squares(c1),
            _tridiag_spectrum_from_squares(c2))


def _balanced_tridiag_eig(T):
    """Eigenpairs of a zero-diagonal tridiagonal chain, skin-effect safe.

    A diagonal similarity equalizes the two entries of every bond, removing
    the exponential envelope that makes direct diagonalization lose the
    eigenvectors (the envelope ratio exceeds 1/eps long before L=50 at
    strong non-reciprocity). The balanced matrix is symmetric with pure
    real or pure imaginary couplings, so its eigenvectors are well
    conditioned; the envelope is multiplied back afterwards. Every bond
    must be bidirectional, which fails exactly on the exceptional loci.
    """
    n = T.shape[0]
    up = np.diag(T, 1).astype(complex)
    lo = np.diag(T, -1).astype(complex)
    if np.any(up == 0.0) or np.any(lo == 0.0):
        raise SingularGauge("chain has a one-directional bond; no balancing "
                            "similarity exists (exceptional parameters)")
    # chain entries are pure imaginary, so lo/up is exactly real and the
    # cumulative envelope stays exactly real or imaginary per site
    d = np.concatenate([np.ones(1, dtype=complex), np.cumprod(np.sqrt(lo / up))])
    if not np.all(np.isfinite(d.real)) or not np.all(np.isfinite(d.imag)):
        raise Overflow("balancing envelope overflows; chain too long for "
                       "this non-reciprocity")
    s = up * d[1:] / d[:-1]
    if np.all(s.imag == 0.0):
        lam, Y = sla.eigh_tridiagonal(np.zeros(n), s.real)
        lam = lam.astype(complex)
    elif np.all(s.real == 0.0):
        lam, Y = sla.eigh_tridiagonal(np.zeros(n), s.imag)
        lam = 1j * lam
    else:
        S = np.diag(s, 1) + np.diag(s, -1)
        lam, Y = np.linalg.eig(S)
    X = d[:, None] * Y
    return lam, X / np.linalg.norm(X, axis=0)


def obc_eig_via_chains(params):
    """Eigenpairs of the balanced OBC ladder through the decoupled chains.

    Same decoupling as obc_spectrum_via_chains but keeping eigenvectors:
    each chain is balanced bond by bond, solved, unbalanced, and mapped
    back to the site basis. Use this instead of eig(build_realspace(...))
    whenever eigenvector quantities (dipr averages) are needed at system
    sizes where the skin envelope ruins the dense solve. Balanced OBC
    only; raises SingularGauge on exceptional parameters.
    """
    require_balanced(params)
    if params.boundary != OBC:
        raise ValueError("chain eigendecomposition is open-boundary only")
    L = params.L
    if L % 2:
        raise ValueError("chain decomposition needs even L")
    H1, H2 = build_nhssh(params)
    lam1, X1 = _balanced_tridiag_eig(np.asarray(H1, dtype=complex))
    lam2, X2 = _balanced_tridiag_eig(np.asarray(H2, dtype=complex))
    lam = np.concatenate([lam1, lam2])
    Z = np.zeros((2 * L, 2 * L), dtype=complex)
    Z[:L, :L] = X1
    Z[L:, L:] = X2
    M = np.empty_like(Z)
    M[nhssh_permutation(params), :] = Z
    V = w_basis(L).conj().T @ M
    V = V / np.linalg.norm(V, axis=0)
    H = build_realspace(params)
    residual = float(np.max(np.linalg.norm(H @ V - V * lam, axis=0)))
    return SpectrumResult(eigenvalues=lam, right_eigenvectors=V,
                          residual_max=residual,
                          evec_condition=float(np.linalg.cond(V)))


def _curve_distance_one(E, u, v):
    uv2 = 2.0 * u * v
    if abs(uv2) < 1e-300:
        c = cmath.sqrt(u * u + v * v)
        return min(abs(E - c), abs(E + c))
    z = (E * E - u * u - v * v) / uv2
    zr = min(1.0, max(-1.0, z.real))
    best = math.inf
    for zz in (zr, -1.0, 1.0):
        c = cmath.sqrt(u * u + v * v + uv2 * zz)
        best = min(best, abs(E - c), abs(E + c))
    return best


def obc_curve_distance(E, u, v):
    """Distance upper bound from E to the OBC bulk curve
    {+-sqrt(u^2 + v^2 + 2 u v cos q)}, by inverting cos q analytically.
    Scalar in, float out; array in, array out."""
    Ea = np.asarray(E, dtype=complex)
    if Ea.ndim == 0:
        return _curve_distance_one(complex(Ea), u, v)
    return np.array([_curve_distance_one(complex(e), u, v)
                     for e in Ea.ravel()]).reshape(Ea.shape)


def enclosed_area(params, n_k=256):
    """Total unsigned shoelace area of the PBC band loops."""
    if n_k < 64:
        raise ValueError("n_k must be >= 64")
    ks = np.linspace(0.0, 2.0 * math.pi, n_k, endpoint=False)
    band_a = np.empty(n_k, dtype=complex)
    band_b = np.empty(n_k, dtype=complex)
    prev = pbc_dispersion(params, ks[0])
    band_a[0], band_b[0] = prev
    for i in range(1, n_k):
        ep, em = pbc_dispersion(params, ks[i])
        # greedy continuation: keep each band continuous in the complex plane
        if abs(ep - band_a[i - 1]) + abs(em - band_b[i - 1]) <= \
           abs(em - band_a[i - 1]) + abs(ep - band_b[i - 1]):
            band_a[i], band_b[i] = ep, em
        else:
            band_a[i], band_b[i] = em, ep
    ep, em = pbc_dispersion(params, 2.0 * math.pi)
    swapped = (abs(ep - band_a[-1]) + abs(em - band_b[-1])
               > abs(em - band_a[-1]) + abs(ep - band_b[-1]))
    if swapped:
        loops = [np.concatenate([band_a, band_b])]
    else:
        loops = [band_a, band_b]
    total = 0.0
    for loop in loops:
        x, y = loop.real, loop.imag
        total += 0.5 * abs(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    return float(total)
