"""ZF/MRT precoders, ZF/MRC combiners and downlink power normalization.

Channels are ``(..., K, M)`` with row k equal to h_k^T; beamformers are
``(..., M, K)`` with column k equal to g_k (downlink) or w_k (uplink).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DOWNLINK_SCHEMES, UPLINK_SCHEMES, LinkDirection, Normalization, Scheme
from .linalg import as_complex, column_norm_sq, frobenius_norm_sq, hermitian, invert_hpd


class DegenerateBeamformerError(ValueError):
    """Zero column or zero matrix where a normalization needs a positive norm."""


def check_combination(direction: LinkDirection, scheme: Scheme, normalization: Normalization):
    if direction is LinkDirection.DOWNLINK:
        if scheme not in DOWNLINK_SCHEMES:
            raise ValueError(f"{scheme.name} is not a downlink scheme")
        if normalization is Normalization.NONE:
            raise ValueError("downlink beamformers must be normalized")
    else:
        if scheme not in UPLINK_SCHEMES:
            raise ValueError(f"{scheme.name} is not an uplink scheme")
        if normalization is not Normalization.NONE:
            raise ValueError("uplink combiners are not normalized")


@dataclass(frozen=True)
class BeamformerSet:
    matrix: np.ndarray
    scheme: Scheme
    normalization: Normalization
    direction: LinkDirection

    def __post_init__(self):
        check_combination(self.direction, self.scheme, self.normalization)


def _zf(h):
    h = as_complex(h)
    k, m = h.shape[-2:]
    if k > m:
        raise ValueError(f"ZF needs k <= m, got k={k}, m={m}")
    hh = hermitian(h)
    gram = h @ hh
    # Round-off makes HH^H asymmetric at the 1e-16 level.
    gram = 0.5 * (gram + hermitian(gram))
    return hh @ invert_hpd(gram, check_hermitian=False)


def zf_precoder(h):
    """Unnormalized ZF precoder ``F = H^H (H H^H)^{-1}``, so that ``H F = I``."""
    return _zf(h)


def mrt_precoder(h):
    """Unnormalized MRT precoder ``F = H^H``."""
    return hermitian(h)


def zf_combiner(h):
    """ZF combiner with ``w_i^T h_j = delta_ij``.

    Solved through the K x K Gram matrix; this coincides with ``F`` of the ZF
    precoder, i.e. ``W = H^H (H H^H)^{-1}``.
    """
    return _zf(h)


def mrc_combiner(h):
    """MRC combiner ``W = H^H``, so that ``w_k^T h_l = h_k^H h_l``."""
    return hermitian(h)


def normalize(f, mode: Normalization):
    """Scale a precoder to unit total power.

    ``VECTOR`` scales column k by ``1 / (sqrt(K) |f_k|)``; ``MATRIX`` scales
    every column by ``1 / |F|_F``.
    """
    f = as_complex(f)
    k = f.shape[-1]
    if mode is Normalization.VECTOR:
        norms = column_norm_sq(f)
        if np.any(norms <= 0):
            raise DegenerateBeamformerError("zero column cannot be vector-normalized")
        return f / np.sqrt(k * norms)[..., None, :]
    if mode is Normalization.MATRIX:
        total = frobenius_norm_sq(f)
        if np.any(total <= 0):
            raise DegenerateBeamformerError("zero matrix cannot be matrix-normalized")
        return f / np.sqrt(total)[..., None, None]
    raise ValueError(f"downlink normalization must be VECTOR or MATRIX, got {mode}")


def precoder(h, scheme: Scheme, normalization: Normalization) -> BeamformerSet:
    if scheme is Scheme.ZF:
        f = zf_precoder(h)
    elif scheme is Scheme.MRT:
        f = mrt_precoder(h)
    else:
        raise ValueError(f"{scheme} is not a downlink scheme")
    return BeamformerSet(normalize(f, normalization), scheme, normalization, LinkDirection.DOWNLINK)


def combiner(h, scheme: Scheme) -> BeamformerSet:
    if scheme is Scheme.ZF:
        w = zf_combiner(h)
    elif scheme is Scheme.MRC:
        w = mrc_combiner(h)
    else:
        raise ValueError(f"{scheme} is not an uplink scheme")
    return BeamformerSet(w, scheme, Normalization.NONE, LinkDirection.UPLINK)
