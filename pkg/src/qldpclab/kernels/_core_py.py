"""Pure-numpy reference implementation of the hot decoding kernels.

Semantically identical to the compiled extension; selected automatically
when the extension is unavailable (or forced via QLDPCLAB_KERNELS=py).
"""

from __future__ import annotations

import numpy as np

FLOOR = 1e-30

BACKEND = "py"


def wht_rows(a: np.ndarray) -> None:
    """In-place unnormalized Walsh-Hadamard transform of each row."""
    k, q = a.shape
    h = 1
    while h < q:
        x = a.reshape(k, q // (2 * h), 2, h)
        t0 = x[:, :, 0, :] + x[:, :, 1, :]
        t1 = x[:, :, 0, :] - x[:, :, 1, :]
        x[:, :, 0, :] = t0
        x[:, :, 1, :] = t1
        h *= 2


def _exclusive_products(arr: np.ndarray) -> np.ndarray:
    """excl[i] = elementwise product of all rows of arr except row i."""
    d, q = arr.shape
    excl = np.empty_like(arr)
    excl[0] = 1.0
    for i in range(1, d):
        excl[i] = excl[i - 1] * arr[i - 1]
    suf = np.ones(q)
    for i in range(d - 2, -1, -1):
        suf = suf * arr[i + 1]
        excl[i] = excl[i] * suf
    return excl


def _normalize(v: np.ndarray) -> np.ndarray:
    v = np.maximum(v, FLOOR)
    return v / v.sum()


def check_pass(begin, end, labels, mul_table, v2c, c2v) -> None:
    """Flooding check-node update for the edge ranges [begin[i], end[i])."""
    q = v2c.shape[1]
    for s, e in zip(begin, end):
        d = e - s
        if d == 0:
            continue
        if d == 1:
            c2v[s] = 1.0 / q
            continue
        idx = mul_table[labels[s:e]]  # idx[i, b] = h_i * b
        t = np.empty((d, q))
        t[np.arange(d)[:, None], idx] = v2c[s:e]
        wht_rows(t)
        excl = _exclusive_products(t)
        wht_rows(excl)  # inverse up to 1/q, absorbed by normalization
        out = excl[np.arange(d)[:, None], idx]
        out = np.maximum(out, 0.0)
        for i in range(d):
            c2v[s + i] = _normalize(out[i])


def var_pass(cols, cbegin, cend, col_edge, priors, c2v, v2c, posteriors) -> None:
    """Flooding variable-node update; writes v2c and posteriors."""
    for j, cs, ce in zip(cols, cbegin, cend):
        d = ce - cs
        slots = col_edge[cs:ce]
        pri = priors[j]
        arr = np.vstack([pri[None, :], c2v[slots]])
        excl = _exclusive_products(arr)
        post = excl[0] * arr[0]
        for k in range(d):
            out = excl[k + 1]
            s = out.sum()
            v2c[slots[k]] = _normalize(pri if s == 0.0 else out)
        s = post.sum()
        posteriors[j] = _normalize(pri if s == 0.0 else post)


def decide(cols, posteriors, hard) -> float:
    """Hard decisions (first-max tie break); returns sum of (1 - max)."""
    p = posteriors[cols]
    hard[cols] = np.argmax(p, axis=1)
    return float(np.sum(1.0 - p.max(axis=1)))


def syndrome_count(begin, end, col_idx, labels, mul_table, hard) -> int:
    """Number of unsatisfied checks for the given hard decisions."""
    bad = 0
    for s, e in zip(begin, end):
        syn = 0
        for k in range(s, e):
            syn ^= mul_table[labels[k], hard[col_idx[k]]]
        bad += syn != 0
    return int(bad)
