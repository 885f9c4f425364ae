"""Closed-form ergodic sum-rate bounds, approximations and limits.

Every function takes linear power and returns bits/s/Hz. Names follow the
pattern ``<scheme>_<link>[_<normalization>][_<regime>]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .core import LinkDirection

LOG2E = 1.0 / math.log(2.0)


class Validity(enum.Flag):
    LOW_SNR = enum.auto()
    HIGH_SNR = enum.auto()
    BOUND = enum.auto()
    EXACT_LIMIT = enum.auto()


def _check_zf(m, k):
    if k > m:
        raise ValueError(f"ZF closed forms need k <= m, got k={k}, m={m}")


def zf_dl_lower(pt, m, k):
    """Well-known ZF lower bound ``K log2(1 + pt (M - K) / K)``."""
    _check_zf(m, k)
    return k * math.log2(1.0 + pt * (m - k) / k)


def zf_dl_vec(pt, m, k):
    """ZF with vector normalization: ``K log2(1 + pt (M - K + 1) / K)``.

    Upper bound for both normalizations, and the low-SNR approximation for
    vector normalization (``E{1/|f_k|^2} = M - K + 1``).
    """
    _check_zf(m, k)
    return k * math.log2(1.0 + pt * (m - k + 1) / k)


def mrt_dl_vec_low(pt, m, k):
    return k * math.log2(1.0 + pt * m / (pt * (k - 1) + k))


def mrt_dl_mat(pt, m, k):
    """MRT with matrix normalization, low and high SNR: ``K log2(1 + pt (M+1) / (pt (K-1) + K))``."""
    return k * math.log2(1.0 + pt * (m + 1) / (pt * (k - 1) + k))


# Vector normalization at high SNR has exactly the matrix closed form.
mrt_dl_vec_high = mrt_dl_mat


def mrc_ul_high(pu, m, k):
    return k * math.log2(1.0 + pu * (m + 1) / (pu * (k - 1) + 1))


def mrc_ul_low(pu, m, k):
    return k * math.log2(1.0 + pu * m / (pu * (k - 1) + 1))


def zf_ul_low(pu, m, k):
    _check_zf(m, k)
    return k * math.log2(1.0 + pu * (m - k + 1))


ASYMPTOTIC_SCHEMES = ("zf-dl", "mrt-dl", "mrc-ul", "mrc-ul-scaled")


def asymptotic_mk(scheme: str, power, m):
    """Large-array limit of the sum rate with as many users as antennas.

    For ``mrc-ul-scaled`` the power is the total uplink power, split evenly
    over the M users.
    """
    if scheme == "zf-dl":
        return power * LOG2E
    if scheme == "mrt-dl":
        return m * math.log2(1.0 + power / (power + 1.0))
    if scheme == "mrc-ul":
        return float(m)
    if scheme == "mrc-ul-scaled":
        return m * math.log2(1.0 + power / (power + 1.0))
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {ASYMPTOTIC_SCHEMES}")


def gradient_difference(pt, m):
    """Slope of the MRT-matrix rate minus slope of the ZF-vector rate (in K) at the user cross point.

    ``(pt+1)^2 / ((M+1) pt ln 4) - (M+1)(pt+1) / (M pt (2M+1) ln 2)``
    """
    if pt <= 0 or m < 2:
        raise ValueError(f"need pt > 0 and m >= 2, got pt={pt}, m={m}")
    first = (pt + 1.0) ** 2 / ((m + 1) * pt * math.log(4.0))
    second = (m + 1) * (pt + 1.0) / (m * pt * (2 * m + 1) * math.log(2.0))
    return first - second


def gradient_sign_change(m, lo=1e-9, hi=1e3, tol=1e-12):
    """Power where :func:`gradient_difference` changes sign, by bisection.

    Returns ``None`` if the sign does not change on ``[lo, hi]``.
    """
    f_lo = gradient_difference(lo, m)
    if (f_lo > 0) == (gradient_difference(hi, m) > 0):
        return None
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if (gradient_difference(mid, m) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ClosedForm:
    name: str
    func: Callable[[float, int, int], float]
    direction: LinkDirection
    validity: Validity

    def __call__(self, power, m, k) -> float:
        return self.func(power, m, k)


CATALOG = {
    cf.name: cf
    for cf in (
        ClosedForm("zf_dl_lower", zf_dl_lower, LinkDirection.DOWNLINK, Validity.BOUND),
        ClosedForm("zf_dl_vec", zf_dl_vec, LinkDirection.DOWNLINK, Validity.LOW_SNR | Validity.BOUND),
        ClosedForm("mrt_dl_vec_low", mrt_dl_vec_low, LinkDirection.DOWNLINK, Validity.LOW_SNR),
        ClosedForm("mrt_dl_vec_high", mrt_dl_vec_high, LinkDirection.DOWNLINK, Validity.HIGH_SNR),
        ClosedForm("mrt_dl_mat", mrt_dl_mat, LinkDirection.DOWNLINK, Validity.LOW_SNR | Validity.HIGH_SNR),
        ClosedForm("mrc_ul_high", mrc_ul_high, LinkDirection.UPLINK, Validity.HIGH_SNR),
        ClosedForm("mrc_ul_low", mrc_ul_low, LinkDirection.UPLINK, Validity.LOW_SNR),
        ClosedForm("zf_ul_low", zf_ul_low, LinkDirection.UPLINK, Validity.LOW_SNR | Validity.BOUND),
    )
}
