"""Skin-effect diagnostics: half-chain inverse participation ratios."""

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, MissingEigenvectors, ZeroState


class IprSplit(NamedTuple):
    """Left/right half-chain IPR and their difference."""

    lipr: float
    ripr: float
    dipr: float


def dipr(state, L):
    """Half-chain IPR split of a ladder state (length 2L, cells 1..L).

    lipr sums |psi|^4 over cells j <= L/2, ripr over j > L/2, both
    normalized by <psi|psi>^2; dipr = lipr - ripr. Positive dipr means
    left-localized. A uniform state gives lipr = ripr = 1/(4L).
    """
    psi = np.asarray(state, dtype=complex).ravel()
    if L % 2 != 0:
        raise ValueError("even L required to split the chain in half")
    if psi.size != 2 * L:
        raise DimensionMismatch(f"expected 2L = {2 * L} sites, got {psi.size}")
    p2 = np.abs(psi) ** 2
    norm2 = float(p2.sum())
    if norm2 == 0.0:
        raise ZeroState("cannot normalize the zero state")
    p4 = (p2 / norm2) ** 2
    half = L  # 2 sites per cell, L/2 cells on the left
    lipr = float(p4[:half].sum())
    ripr = float(p4[half:].sum())
    return IprSplit(lipr, ripr, lipr - ripr)


def mean_dipr(spectrum_result, L):
    """Eigenstate-averaged dipr over all right eigenvectors."""
    vecs = spectrum_result.right_eigenvectors
    if vecs is None:
        raise MissingEigenvectors("spectrum was computed without eigenvectors")
    if vecs.shape[0] != 2 * L:
        raise DimensionMismatch(
            f"expected 2L = {2 * L} rows, got {vecs.shape[0]}")
    return float(np.mean([dipr(vecs[:, n], L).dipr
                          for n in range(vecs.shape[1])]))
