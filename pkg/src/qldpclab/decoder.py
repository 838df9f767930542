"""Probability-domain FFT-QSPA belief propagation, flooding schedule.

Two drivers: full-block decoding with the parity-check stopping rule, and
sliding-window decoding of a coupled chain with the soft-BER stopping rule.
Check-node convolutions run in the Walsh-Hadamard domain; labels act as
permutations of the message index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels as default_kernels
from .construction import QaryParityCheck, ScChain
from .galois import FieldTable
from .metrics import OpsLedger, check_node_cost, var_node_cost

STOP_SYNDROME = "syndrome_zero"
STOP_SOFT = "soft_ber_met"
STOP_MAX = "max_iterations"


@dataclass
class DecodeOutcome:
    hard: np.ndarray  # field elements, int32
    iterations: int
    stop_reason: str


def wht(v: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform; wht(wht(v)) == q * v."""
    out = np.array(v, dtype=np.float64, copy=True).reshape(1, -1)
    q = out.shape[1]
    if q & (q - 1):
        raise ValueError("length must be a power of two")
    default_kernels.wht_rows(out)
    return out[0]


def check_update(incoming, labels, field: FieldTable, kern=None):
    """Outgoing check-node messages for one check of degree len(incoming)."""
    kern = kern or default_kernels
    d = len(incoming)
    if d < 2:
        raise ValueError("check degree must be at least 2")
    labels = np.asarray(labels, dtype=np.int32)
    if labels.size != d or np.any(labels == 0):
        raise ValueError("one nonzero label per edge required")
    v2c = np.ascontiguousarray(np.vstack(incoming), dtype=np.float64)
    c2v = np.empty_like(v2c)
    kern.check_pass(
        np.array([0], dtype=np.int64),
        np.array([d], dtype=np.int64),
        labels,
        field.mul_table,
        v2c,
        c2v,
    )
    return [c2v[i].copy() for i in range(d)]


def var_update(prior, incoming, kern=None):
    """(outgoing messages, posterior) for one variable node."""
    kern = kern or default_kernels
    d = len(incoming)
    prior = np.asarray(prior, dtype=np.float64)
    q = prior.size
    c2v = (
        np.ascontiguousarray(np.vstack(incoming), dtype=np.float64)
        if d
        else np.empty((0, q))
    )
    v2c = np.empty_like(c2v)
    posterior = np.empty((1, q))
    kern.var_pass(
        np.array([0], dtype=np.int64),
        np.array([0], dtype=np.int64),
        np.array([d], dtype=np.int64),
        np.arange(d, dtype=np.int64),
        prior.reshape(1, -1).copy(),
        c2v,
        v2c,
        posterior,
    )
    return [v2c[i].copy() for i in range(d)], posterior[0]


def hard_decision(posterior) -> int:
    """Argmax with ties broken toward the smallest element value."""
    return int(np.argmax(posterior))


def soft_ber_estimate(target_posteriors) -> float:
    """Mean over symbols of (1 - max posterior probability)."""
    p = np.asarray(target_posteriors, dtype=np.float64)
    return float(np.mean(1.0 - p.max(axis=1)))


def syndrome(h: QaryParityCheck, v):
    """(all checks satisfied?, per-row syndrome) for hard decisions v."""
    v = np.asarray(v, dtype=np.int64)
    if v.size != h.n_cols:
        raise ValueError("decision length does not match column count")
    prods = h.field.mul_table[h.labels, v[h.col_idx]]
    syn = np.zeros(h.n_rows, dtype=np.int32)
    nonempty = np.diff(h.row_ptr) > 0
    starts = h.row_ptr[:-1][nonempty]
    syn[nonempty] = np.bitwise_xor.reduceat(prods, starts)
    return bool(not syn.any()), syn


class BlockDecoder:
    """Reusable flooding decoder for one parity-check matrix."""

    def __init__(self, h: QaryParityCheck, kern=None):
        self.h = h
        self.kern = kern or default_kernels
        q = h.field.q
        n_rows, n_cols = h.n_rows, h.n_cols
        self.begin = h.row_ptr[:-1].copy()
        self.end = h.row_ptr[1:].copy()
        # column-grouped edge ids
        rows_of_edge = np.repeat(np.arange(n_rows), np.diff(h.row_ptr))
        order = np.lexsort((rows_of_edge, h.col_idx))
        self.col_edge = order.astype(np.int64)
        self.col_ptr = np.zeros(n_cols + 1, dtype=np.int64)
        np.add.at(self.col_ptr[1:], h.col_idx, 1)
        np.cumsum(self.col_ptr, out=self.col_ptr)
        self.cols = np.arange(n_cols, dtype=np.int64)

        self.v2c = np.empty((h.n_edges, q))
        self.c2v = np.empty((h.n_edges, q))
        self.posteriors = np.empty((n_cols, q))
        self.hard = np.zeros(n_cols, dtype=np.int32)

        m = h.field.m
        ca, cm = check_node_cost(np.diff(h.row_ptr), q, m)
        va, vm = var_node_cost(np.diff(self.col_ptr), q)
        self._iter_adds = int(ca.sum() + va.sum())
        self._iter_muls = int(cm.sum() + vm.sum())

    def decode(self, priors, imax, stop_on_syndrome=True, ledger: OpsLedger | None = None):
        h, kern = self.h, self.kern
        priors = np.ascontiguousarray(priors, dtype=np.float64)
        if priors.shape != (h.n_cols, h.field.q):
            raise ValueError("priors shape must be (n_cols, q)")
        self.v2c[:] = priors[h.col_idx]
        stop = STOP_MAX
        it = 0
        for it in range(1, imax + 1):
            kern.check_pass(
                self.begin, self.end, h.labels, h.field.mul_table, self.v2c, self.c2v
            )
            kern.var_pass(
                self.cols, self.col_ptr[:-1], self.col_ptr[1:], self.col_edge,
                priors, self.c2v, self.v2c, self.posteriors,
            )
            kern.decide(self.cols, self.posteriors, self.hard)
            if ledger is not None:
                ledger.adds += self._iter_adds
                ledger.muls += self._iter_muls
                ledger.compares += h.n_cols * (h.field.q - 1)
                ledger.field_ops += h.n_edges
            bad = kern.syndrome_count(
                self.begin, self.end, h.col_idx, h.labels, h.field.mul_table, self.hard
            )
            if stop_on_syndrome and bad == 0:
                stop = STOP_SYNDROME
                break
        return DecodeOutcome(self.hard.copy(), it, stop)


def decode_block(h: QaryParityCheck, priors, imax: int, **kw) -> DecodeOutcome:
    return BlockDecoder(h, kern=kw.pop("kern", None)).decode(priors, imax, **kw)


class WindowDecoder:
    """Sliding-window decoder over a terminated chain, retaining messages.

    The window at position t spans W column positions and the W check-row
    positions starting at t (clamped at the chain end); edges from the first
    row position back to committed symbols are outside the window, so those
    checks run at reduced degree, as do last-position variable nodes whose
    later checks have not yet entered.
    """

    def __init__(self, chain: ScChain, W: int, kern=None):
        if W < chain.bp.spreading.ms + 1:
            raise ValueError("window size must be at least ms + 1")
        self.chain = chain
        self.W = W
        self.kern = kern or default_kernels
        q = chain.bp.field.q
        m = chain.bp.field.m
        self._prep = []
        for t in range(chain.L):
            pe, ce = chain.window_bounds(t, W)
            rows = np.arange(t * chain.rM, pe * chain.rM)
            begin = chain.row_ptr[rows].copy()
            first = rows < (t + 1) * chain.rM
            begin[first] = chain.row_h1_end[rows[first]]
            end = chain.row_ptr[rows + 1].copy()

            cols = np.arange(t * chain.cM, ce * chain.cM, dtype=np.int64)
            cbegin = chain.col_ptr[cols].copy()
            cend = chain.col_ptr[cols + 1].copy()
            if t + W <= chain.L:
                last = cols >= (ce - 1) * chain.cM
                cend[last] = chain.col_h0_end[cols[last]]

            ca, cm = check_node_cost(end - begin, q, m)
            va, vm = var_node_cost(cend - cbegin, q)
            new_lo = t * chain.rM if t == 0 else (t + W - 1) * chain.rM
            new_hi = pe * chain.rM
            self._prep.append(
                {
                    "begin": begin,
                    "end": end,
                    "cols": cols,
                    "cbegin": cbegin,
                    "cend": cend,
                    "targets": cols[: chain.cM],
                    "new_rows": (new_lo, new_hi) if new_lo < new_hi else None,
                    "iter_adds": int(ca.sum() + va.sum()),
                    "iter_muls": int(cm.sum() + vm.sum()),
                }
            )
        self.v2c = np.empty((chain.n_edges, q))
        self.c2v = np.empty((chain.n_edges, q))
        self.posteriors = np.empty((chain.n_cols, q))
        self.hard = np.zeros(chain.n_cols, dtype=np.int32)

    def decode(self, priors, imax, target_ber, ledger: OpsLedger | None = None):
        """Decode one frame; returns (hard decisions, per-position iters)."""
        chain, kern = self.chain, self.kern
        priors = np.ascontiguousarray(priors, dtype=np.float64)
        if priors.shape != (chain.n_cols, chain.bp.field.q):
            raise ValueError("priors shape must be (n_cols, q)")
        labels = chain.labels
        mul = chain.bp.field.mul_table
        mc = chain.cM
        q = chain.bp.field.q
        iters = np.zeros(chain.L, dtype=np.int32)
        for t in range(chain.L):
            p = self._prep[t]
            if p["new_rows"] is not None:
                lo, hi = p["new_rows"]
                s, e = chain.row_ptr[lo], chain.row_ptr[hi]
                self.v2c[s:e] = priors[chain.col_idx[s:e]]
            for it in range(1, imax + 1):
                kern.check_pass(p["begin"], p["end"], labels, mul, self.v2c, self.c2v)
                kern.var_pass(
                    p["cols"], p["cbegin"], p["cend"], chain.col_edge,
                    priors, self.c2v, self.v2c, self.posteriors,
                )
                err_sum = kern.decide(p["targets"], self.posteriors, self.hard)
                if ledger is not None:
                    ledger.adds += p["iter_adds"]
                    ledger.muls += p["iter_muls"]
                    ledger.compares += mc * (q - 1)
                if err_sum / mc < target_ber:
                    break
            iters[t] = it
        return self.hard.copy(), iters


def decode_stream(chain: ScChain, priors, W: int, imax: int, target_ber: float, **kw):
    return WindowDecoder(chain, W, kern=kw.pop("kern", None)).decode(
        priors, imax, target_ber, **kw
    )
