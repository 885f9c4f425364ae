"""Instantaneous SINR / sum rate and Monte-Carlo ergodic sum-rate estimation.

Noise variance is 1 on both links and the data symbols have unit power, so
the downlink total SNR equals ``pt`` and the per-user uplink SNR equals ``pu``.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beamforming import BeamformerSet, check_combination, combiner, precoder, zf_precoder
from .channel import draw_channels
from .core import LinkDirection, Normalization, Scheme, SystemConfig, validate_config
from .linalg import NotPositiveDefiniteError, as_complex, frobenius_norm_sq

# Fixed so that chunk boundaries, and hence every per-trial value, do not
# depend on the number of workers.
CHUNK_TRIALS = 500


class DegenerateDrawError(RuntimeError):
    def __init__(self, trial_index):
        super().__init__(f"degenerate channel draw at trial {trial_index}")
        self.trial_index = trial_index


@dataclass(frozen=True)
class Link:
    """A transceiver choice: direction, scheme and (downlink only) normalization."""

    direction: LinkDirection
    scheme: Scheme
    normalization: Normalization = Normalization.NONE

    def __post_init__(self):
        check_combination(self.direction, self.scheme, self.normalization)

    @property
    def name(self) -> str:
        if self.direction is LinkDirection.DOWNLINK:
            return f"{self.scheme.value}-{self.normalization.value}"
        return f"{self.scheme.value}-ul"

    @classmethod
    def parse(cls, name: str) -> Link:
        """Inverse of :attr:`name`: ``zf-vec``, ``zf-mat``, ``mrt-vec``, ``mrt-mat``, ``zf-ul``, ``mrc-ul``."""
        scheme, _, tail = name.strip().lower().partition("-")
        try:
            if tail == "ul":
                return cls(LinkDirection.UPLINK, Scheme(scheme))
            return cls(LinkDirection.DOWNLINK, Scheme(scheme), Normalization(tail))
        except ValueError:
            raise ValueError(f"unknown link {name!r}") from None

    def beamformers(self, h) -> BeamformerSet:
        if self.direction is LinkDirection.DOWNLINK:
            return precoder(h, self.scheme, self.normalization)
        return combiner(h, self.scheme)

    def power(self, cfg: SystemConfig) -> float:
        return cfg.pt if self.direction is LinkDirection.DOWNLINK else cfg.pu


@dataclass(frozen=True)
class RateEstimate:
    mean_rate: float
    std_error: float
    trials: int

    @property
    def ci95_halfwidth(self) -> float:
        return 1.96 * self.std_error

    @classmethod
    def from_samples(cls, samples) -> RateEstimate:
        samples = np.asarray(samples, dtype=float)
        n = samples.size
        std = float(np.std(samples, ddof=1)) if n > 1 else 0.0
        return cls(float(np.mean(samples)), std / math.sqrt(n), n)


def link_gains(h, bf: BeamformerSet):
    """Per-user desired gain, interference gain and noise gain.

    The SINR at power ``p`` is ``p * signal / (p * interference + noise)``.
    """
    h = as_complex(h)
    g = bf.matrix
    if h.shape[-1] != g.shape[-2] or h.shape[-2] != g.shape[-1]:
        raise ValueError(f"channel {h.shape} does not conform to beamformers {g.shape}")
    if bf.direction is LinkDirection.DOWNLINK:
        # entry (k, l) = h_k^T g_l
        cross = h @ g
        noise = np.ones(h.shape[:-1])
    else:
        # entry (k, l) = w_k^T h_l
        cross = np.swapaxes(g, -1, -2) @ np.swapaxes(h, -1, -2)
        noise = np.sum(g.real**2 + g.imag**2, axis=-2)
        if np.any(noise <= 0):
            raise ValueError("zero combining vector")
    power = cross.real**2 + cross.imag**2
    signal = np.diagonal(power, axis1=-2, axis2=-1)
    interference = np.sum(power, axis=-1) - signal
    # Cancellation error can leave tiny negative values (ZF).
    interference = np.maximum(interference, 0.0)
    return signal, interference, noise


def _sinr(h, bf, power):
    signal, interference, noise = link_gains(h, bf)
    return power * signal / (power * interference + noise)


def downlink_sinr(h, g: BeamformerSet, pt):
    if g.direction is not LinkDirection.DOWNLINK:
        raise ValueError("downlink_sinr needs downlink beamformers")
    return _sinr(h, g, pt)


def uplink_sinr(h, w: BeamformerSet, pu):
    if w.direction is not LinkDirection.UPLINK:
        raise ValueError("uplink_sinr needs uplink combiners")
    return _sinr(h, w, pu)


def sum_rate(sinrs):
    """``sum_k log2(1 + SINR_k)`` over the last axis."""
    return np.sum(np.log2(1.0 + np.asarray(sinrs, dtype=float)), axis=-1)


def _chunks(trials):
    return [(s, min(s + CHUNK_TRIALS, trials)) for s in range(0, trials, CHUNK_TRIALS)]


def trial_samples(cfg: SystemConfig, evaluators, workers: int = 1) -> list[np.ndarray]:
    """Apply each ``fn(h) -> (width, n)`` to the same channel draws.

    Returns one ``(width, trials)`` array per evaluator. Trials are processed
    in fixed chunks, optionally on a thread pool, and written by index, so
    the result does not depend on `workers`.
    """
    evaluators = list(evaluators)
    out = [None] * len(evaluators)
    lock = threading.Lock()

    def task(bounds):
        start, stop = bounds
        h = draw_channels(cfg, start, stop)
        for i, fn in enumerate(evaluators):
            try:
                values = np.atleast_2d(fn(h))
            except NotPositiveDefiniteError as exc:
                raise DegenerateDrawError(start + (exc.index or 0)) from exc
            with lock:
                # Widths are fixed per evaluator; the first chunk to finish allocates.
                if out[i] is None:
                    out[i] = np.empty((values.shape[0], cfg.trials))
            out[i][:, start:stop] = values

    chunks = _chunks(cfg.trials)
    if workers <= 1:
        for c in chunks:
            task(c)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # list() propagates the first exception
            list(pool.map(task, chunks))
    return out


def rate_evaluator(link: Link, powers):
    """Per-trial sum rate at every power in `powers`, as a :func:`trial_samples` evaluator."""
    p = np.atleast_1d(np.asarray(powers, dtype=float))[:, None, None]

    def fn(h):
        signal, interference, noise = link_gains(h, link.beamformers(h))
        return sum_rate(p * signal / (p * interference + noise))

    return fn


def inverse_frobenius_evaluator(h):
    """Per-trial ``1 / |F|_F^2`` of the unnormalized ZF precoder."""
    return 1.0 / frobenius_norm_sq(zf_precoder(h))[None, :]


def trial_rates(cfg: SystemConfig, link: Link, powers=None, workers: int = 1) -> np.ndarray:
    """Per-trial sum rates, shape ``(len(powers), trials)``.

    All powers share the same channel draws. ``powers`` defaults to the
    link's power in `cfg`.
    """
    validate_config(cfg, link.scheme)
    powers = link.power(cfg) if powers is None else powers
    return trial_samples(cfg, [rate_evaluator(link, powers)], workers)[0]


def ergodic_sum_rate(cfg: SystemConfig, direction: LinkDirection, scheme: Scheme,
                     normalization: Normalization = Normalization.NONE,
                     workers: int = 1) -> RateEstimate:
    """Monte-Carlo mean of the sum rate over ``cfg.trials`` channel draws."""
    link = Link(direction, scheme, normalization)
    return RateEstimate.from_samples(trial_rates(cfg, link, workers=workers)[0])


def inverse_frobenius_samples(cfg: SystemConfig, workers: int = 1) -> np.ndarray:
    """Per-trial ``1 / |F|_F^2`` for the unnormalized ZF precoder."""
    validate_config(cfg, Scheme.ZF)
    return trial_samples(cfg, [inverse_frobenius_evaluator], workers)[0][0]


def ergodic_zf_mat_u1(cfg: SystemConfig, workers: int = 1) -> RateEstimate:
    """First ZF matrix-normalization upper bound ``K log2(1 + pt E{1/|F|_F^2})``.

    The expectation has no closed form and is estimated by its sample mean;
    the standard error is propagated through the log by the delta method.
    """
    return zf_mat_u1_from_samples(inverse_frobenius_samples(cfg, workers), cfg.k, cfg.pt)


def zf_mat_u1_from_samples(inv_frob, k, pt) -> RateEstimate:
    x = RateEstimate.from_samples(inv_frob)
    arg = 1.0 + pt * x.mean_rate
    rate = k * math.log2(arg)
    stderr = k * pt * x.std_error / (arg * math.log(2.0))
    return RateEstimate(rate, stderr, x.trials)
