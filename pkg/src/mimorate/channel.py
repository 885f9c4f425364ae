"""I.i.d. Rayleigh channel draws with per-trial random substreams.

Every trial owns an independent Philox stream keyed by hashed
``(seed, trial_index)``, so a trial's channel does not depend on which other
trials are drawn, in what order, or on which worker.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SystemConfig

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """The SplitMix64 finalizer, a bijection on 64-bit words."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class StreamKey:
    seed: int
    trial_index: int

    def generator(self) -> np.random.Generator:
        key = [splitmix64(self.seed & MASK64), splitmix64(self.trial_index & MASK64)]
        return np.random.Generator(np.random.Philox(key=key))


def complex_normal(rng, shape):
    """CN(0, 1) samples: independent real and imaginary parts of variance 1/2."""
    z = rng.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * np.sqrt(0.5)


def draw_channel(cfg: SystemConfig, key: StreamKey) -> np.ndarray:
    """K x M channel matrix for one trial; row k is h_k^T."""
    return complex_normal(key.generator(), (cfg.k, cfg.m))


def draw_channels(cfg: SystemConfig, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Stack of channels for trials ``start..stop-1``, shape ``(stop-start, K, M)``."""
    stop = cfg.trials if stop is None else stop
    out = np.empty((stop - start, cfg.k, cfg.m), dtype=np.complex128)
    for i, t in enumerate(range(start, stop)):
        out[i] = draw_channel(cfg, StreamKey(cfg.seed, t))
    return out


@dataclass(frozen=True)
class MomentStat:
    name: str
    empirical_mean: complex | float
    empirical_var: float
    analytic_mean: float
    analytic_var: float
    samples: int

    @property
    def z(self) -> float:
        """Standardized error of the sample mean (modulus for complex quantities)."""
        return abs(self.empirical_mean - self.analytic_mean) / np.sqrt(self.analytic_var / self.samples)

    @property
    def var_rel_error(self) -> float:
        return abs(self.empirical_var - self.analytic_var) / self.analytic_var


@dataclass(frozen=True)
class MomentReport:
    m: int
    samples: int
    norm_sq: MomentStat
    inner: MomentStat
    norm_4: MomentStat
    inner_sq: MomentStat

    @property
    def stats(self) -> tuple[MomentStat, ...]:
        return (self.norm_sq, self.inner, self.norm_4, self.inner_sq)


def analytic_moments(m):
    """Means and variances of ``(|h|^2, h_k^H h_l, |h|^4, |h_k^H h_l|^2)``.

    The variance of the complex inner product is ``E|X - EX|^2``.
    """
    means = (m, 0.0, m * m + m, m)
    variances = (m, m, 4 * m**3 + 10 * m**2 + 6 * m, m * m + 2 * m)
    return means, variances


def estimate_moments(m: int, samples: int = 100_000, seed: int = 0) -> MomentReport:
    """Compare empirical moments of independent CN(0, I_M) pairs with their exact values."""
    if samples < 1000:
        raise ValueError(f"samples must be at least 1000, got {samples}")
    rng = StreamKey(seed, 0).generator()
    pair = complex_normal(rng, (samples, 2, m))
    hk, hl = pair[:, 0], pair[:, 1]
    norm_sq = np.sum(np.abs(hk) ** 2, axis=1)
    inner = np.sum(np.conj(hk) * hl, axis=1)
    values = (norm_sq, inner, norm_sq**2, np.abs(inner) ** 2)
    names = ("|h|^2", "h_k^H h_l", "|h|^4", "|h_k^H h_l|^2")
    means, variances = analytic_moments(m)
    stats = []
    for name, v, mu, var in zip(names, values, means, variances):
        emp_mean = v.mean()
        emp_var = float(np.mean(np.abs(v - emp_mean) ** 2))
        if not np.iscomplexobj(v):
            emp_mean = float(emp_mean)
        stats.append(MomentStat(name, emp_mean, emp_var, float(mu), float(var), samples))
    return MomentReport(m, samples, *stats)


def channel_deviation(h) -> np.ndarray:
    """``max_ij |(HH^H / M)_ij - delta_ij|`` per matrix in the stack."""
    h = np.asarray(h, dtype=np.complex128)
    k, m = h.shape[-2:]
    gram = h @ np.conj(np.swapaxes(h, -1, -2)) / m
    return np.max(np.abs(gram - np.eye(k)), axis=(-2, -1))


def effective_channel_deviation(m: int, k: int, trials: int, seed: int = 0) -> float:
    """Median over trials of the distance of ``HH^H / M`` from the identity."""
    if k > m:
        raise ValueError(f"k exceeds m (k={k}, m={m})")
    cfg = SystemConfig(m=m, k=k, trials=trials, seed=seed)
    return float(np.median(channel_deviation(draw_channels(cfg))))
