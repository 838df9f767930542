"""BPSK over the BI-AWGN channel and symbol-prior computation.

Symbols expand to m bits (least-significant polynomial coefficient first),
bit 0 maps to +1 and bit 1 to -1.  Priors over GF(q) are products of the
independent per-bit posteriors, normalized per symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import FieldTable


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: float
    m: int

    @property
    def sigma2(self) -> float:
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))


def symbols_to_bits(symbols: np.ndarray, m: int) -> np.ndarray:
    """(n,) field elements -> (n*m,) bits, LSB transmitted first."""
    s = np.asarray(symbols, dtype=np.int64)
    bits = (s[:, None] >> np.arange(m)) & 1
    return bits.reshape(-1)


def modulate_awgn(symbols, field: FieldTable, cfg: ChannelConfig, rng) -> np.ndarray:
    """BPSK-modulate symbol bit images and add white Gaussian noise."""
    bits = symbols_to_bits(np.asarray(symbols), field.m)
    x = 1.0 - 2.0 * bits.astype(np.float64)
    return x + rng.normal(0.0, np.sqrt(cfg.sigma2), size=x.size)


def frame_priors(y: np.ndarray, cfg: ChannelConfig, field: FieldTable) -> np.ndarray:
    """(n*m,) channel reals -> (n, q) normalized symbol priors."""
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(y)):
        raise ValueError("channel outputs must be finite")
    if y.size % field.m:
        raise ValueError("input length must be a multiple of m")
    yb = y.reshape(-1, field.m)
    # P(bit=0 | y) for each transmitted bit
    p0 = 1.0 / (1.0 + np.exp(-2.0 * yb / cfg.sigma2))
    p1 = 1.0 - p0
    n = yb.shape[0]
    pri = np.ones((n, field.q), dtype=np.float64)
    for b in range(field.q):
        for i in range(field.m):
            pri[:, b] *= p1[:, i] if (b >> i) & 1 else p0[:, i]
    pri /= pri.sum(axis=1, keepdims=True)
    return pri


def symbol_priors(y, cfg: ChannelConfig, field: FieldTable) -> np.ndarray:
    """Length-q prior for a single symbol from its m channel reals."""
    y = np.asarray(y, dtype=np.float64)
    if y.size != field.m:
        raise ValueError(f"expected {field.m} channel values, got {y.size}")
    return frame_priors(y, cfg, field)[0]
