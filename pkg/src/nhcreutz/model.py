"""Matrix representations of the non-Hermitian Creutz ladder.

Two legs (sublattices a, b) with cross links. Leg hoppings carry reciprocal
amplitudes t1 (a leg), t2 (b leg) and non-reciprocal parts gamma1, gamma2;
rungs/diagonal links carry t0 and gamma0. Sites are ordered interleaved:
(a_1, b_1, a_2, b_2, ..., a_L, b_L).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ImbalancedParameters

OBC = "obc"
PBC = "pbc"


@dataclass(frozen=True)
class ModelParams:
    """Raw ladder parameters: six hopping amplitudes, cell count, boundary."""

    t0: float
    t1: float
    t2: float
    g0: float
    g1: float
    g2: float
    L: int
    boundary: str = OBC

    def __post_init__(self):
        if not isinstance(self.L, int) or self.L < 2:
            raise ValueError("L must be an integer >= 2")
        if self.boundary not in (OBC, PBC):
            raise ValueError("boundary must be 'obc' or 'pbc'")
        for name in ("t0", "t1", "t2", "g0", "g1", "g2"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ValueError(f"{name} must be a finite real, got {val!r}")

    @classmethod
    def from_bars(cls, tbar=1.0, t0=0.0, gbar=0.0, g0=0.0, dt=0.0, dg=0.0,
                  L=50, boundary=OBC):
        """Build from mean/difference leg parameters: t1 = tbar+dt, t2 = tbar-dt."""
        return cls(t0=t0, t1=tbar + dt, t2=tbar - dt,
                   g0=g0, g1=gbar + dg, g2=gbar - dg, L=L, boundary=boundary)

    @property
    def balanced(self):
        """True when both legs are identical (t1 == t2 and g1 == g2 exactly)."""
        return self.t1 == self.t2 and self.g1 == self.g2


@dataclass(frozen=True)
class DerivedParams:
    """Dressed parameters derived from ModelParams.

    tbar, gbar are leg means, dt, dg the half differences; g = tbar + t0,
    gp = tbar - t0, f = gbar + g0, fp = gbar - g0. u, v are the effective
    hoppings u = sqrt(g^2 - f^2), v = sqrt(gp^2 - fp^2) (principal branch;
    both are either real or purely imaginary for real input). eta = t0/tbar
    parametrizes the flat-band line (NaN when tbar == 0).
    """

    tbar: float
    gbar: float
    dt: float
    dg: float
    g: float
    gp: float
    f: float
    fp: float
    u: complex
    v: complex
    eta: float


def derive(params):
    """Compute DerivedParams from raw hoppings."""
    tbar = (params.t1 + params.t2) / 2.0
    gbar = (params.g1 + params.g2) / 2.0
    dt = (params.t1 - params.t2) / 2.0
    dg = (params.g1 - params.g2) / 2.0
    g = tbar + params.t0
    gp = tbar - params.t0
    f = gbar + params.g0
    fp = gbar - params.g0
    u = cmath.sqrt(complex(g * g - f * f))
    v = cmath.sqrt(complex(gp * gp - fp * fp))
    eta = params.t0 / tbar if tbar != 0.0 else math.nan
    return DerivedParams(tbar=tbar, gbar=gbar, dt=dt, dg=dg,
                         g=g, gp=gp, f=f, fp=fp, u=u, v=v, eta=eta)


def require_balanced(params):
    """Raise ImbalancedParameters unless t1 == t2 and g1 == g2 exactly."""
    if not params.balanced:
        raise ImbalancedParameters(
            "operation requires balanced legs (t1 == t2, gamma1 == gamma2); "
            f"got t1={params.t1}, t2={params.t2}, g1={params.g1}, g2={params.g2}")


def build_realspace(params):
    """Dense 2L x 2L ladder Hamiltonian.

    Entry (target, source) is the coefficient of target^dagger source.
    OBC drops the L -> 1 bond, PBC wraps it (couplings accumulate, so the
    L = 2 PBC double bond adds).
    """
    L = params.L
    t0, t1, t2 = params.t0, params.t1, params.t2
    g0, g1, g2 = params.g0, params.g1, params.g2
    H = np.zeros((2 * L, 2 * L), dtype=complex)
    a = lambda j: 2 * j
    b = lambda j: 2 * j + 1
    bonds = [(j, j + 1) for j in range(L - 1)]
    if params.boundary == PBC:
        bonds.append((L - 1, 0))
    for j, jp in bonds:
        H[a(jp), a(j)] += -1j * (t1 + g1)
        H[a(j), a(jp)] += 1j * (t1 - g1)
        H[b(jp), b(j)] += 1j * (t2 + g2)
        H[b(j), b(jp)] += -1j * (t2 - g2)
        H[a(jp), b(j)] += -(t0 + g0)
        H[b(jp), a(j)] += -(t0 + g0)
        H[a(j), b(jp)] += -(t0 - g0)
        H[b(j), a(jp)] += -(t0 - g0)
    return H


def build_bloch(params, k):
    """2 x 2 Bloch matrix h(k), convention a_j ~ sum_k exp(-i k j) a_k."""
    t0, t1, t2 = params.t0, params.t1, params.t2
    g0, g1, g2 = params.g0, params.g1, params.g2
    sk, ck = math.sin(k), math.cos(k)
    off = -t0 * ck - 1j * g0 * sk
    return 2.0 * np.array([[t1 * sk - 1j * g1 * ck, off],
                           [off, -t2 * sk + 1j * g2 * ck]], dtype=complex)


def w_basis(L):
    """Unitary 2L x 2L map to the per-cell w basis.

    w_i = (a_i + i b_i)/sqrt(2), wbar_i = (a_i - i b_i)/sqrt(2); output rows
    are ordered (w_1, wbar_1, w_2, wbar_2, ...).
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    U = np.zeros((2 * L, 2 * L), dtype=complex)
    r = 1.0 / math.sqrt(2.0)
    for j in range(L):
        U[2 * j, 2 * j] = r
        U[2 * j, 2 * j + 1] = 1j * r
        U[2 * j + 1, 2 * j] = r
        U[2 * j + 1, 2 * j + 1] = -1j * r
    return U


def build_nhssh(params):
    """The two decoupled non-Hermitian SSH chains (H1, H2), each L x L.

    H1 has superdiagonal alternating -i(fp+gp), -i(f+g), ... and subdiagonal
    alternating -i(fp-gp), -i(f-g), ...; H2 swaps primed and unprimed. PBC
    adds the matching corner entries. Requires balanced legs and even L.
    """
    require_balanced(params)
    if params.L % 2:
        raise ValueError("NH-SSH decomposition needs even L")
    d = derive(params)
    pairs = ((d.fp, d.gp, d.f, d.g), (d.f, d.g, d.fp, d.gp))
    out = []
    for (fa, ga, fb, gb) in pairs:
        L = params.L
        H = np.zeros((L, L), dtype=complex)
        for m in range(L - 1):
            fm, gm = (fa, ga) if m % 2 == 0 else (fb, gb)
            H[m, m + 1] = -1j * (fm + gm)
            H[m + 1, m] = -1j * (fm - gm)
        if params.boundary == PBC:
            # closing bond has the odd-position type (L even)
            H[L - 1, 0] += -1j * (fb + gb)
            H[0, L - 1] += -1j * (fb - gb)
        out.append(H)
    return out[0], out[1]


def nhssh_permutation(params):
    """Site permutation splitting the w-basis ladder into the two chains.

    Returns an index array perm of length 2L such that
    (U H U+)[perm][:, perm] equals build_nhssh(params)[0] (+) [1].
    Constructed by walking the nonzero coupling pattern of the OBC w-basis
    matrix from the wbar endpoint of the last cell (chain one) and the w
    endpoint (chain two); the permutation is boundary independent.
    """
    require_balanced(params)
    if params.L % 2:
        raise ValueError("NH-SSH decomposition needs even L")
    L = params.L
    obc = params if params.boundary == OBC else ModelParams(
        t0=params.t0, t1=params.t1, t2=params.t2,
        g0=params.g0, g1=params.g1, g2=params.g2, L=L, boundary=OBC)
    U = w_basis(L)
    Hw = U @ build_realspace(obc) @ U.conj().T
    scale = np.abs(Hw).max()
    adj = np.abs(Hw) + np.abs(Hw).T > 1e-12 * max(scale, 1.0)
    np.fill_diagonal(adj, False)
    perm = []
    for start in (2 * (L - 1) + 1, 2 * (L - 1)):  # wbar_L, then w_L
        chain = [start]
        seen = {start}
        while True:
            nbrs = [n for n in np.nonzero(adj[chain[-1]])[0] if n not in seen]
            if not nbrs:
                break
            if len(nbrs) > 1:
                raise RuntimeError("w-basis coupling pattern is not a path")
            chain.append(nbrs[0])
            seen.add(nbrs[0])
        if len(chain) != L:
            # a bond type vanished identically (degenerate point); fall back
            # to the ordering the walk produces at generic parameters
            chain = []
            wbar_first = start % 2 == 1
            for p in range(1, L + 1):
                cell = L - p  # 0-based
                is_wbar = (p % 2 == 1) == wbar_first
                chain.append(2 * cell + (1 if is_wbar else 0))
        perm.extend(chain)
    return np.array(perm, dtype=int)
