"""Brute-force references for tests: no WHT, no message-passing shortcuts.

Budget caps keep every oracle obviously correct and cheap enough for CI.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .construction import QaryParityCheck
from .galois import FieldTable

MAX_ORACLE_DEGREE = 6
MAX_ENUMERATION = 2_000_000


class OracleBudgetError(RuntimeError):
    pass


def naive_check_update(incoming, labels, field: FieldTable):
    """Check-node update by direct summation over satisfying assignments.

    out_k(b) is proportional to the total probability of the other edges
    taking values v_j with sum_j h_j v_j = 0 given v_k = b.
    """
    d = len(incoming)
    if d > MAX_ORACLE_DEGREE or field.q > 16:
        raise OracleBudgetError("oracle limited to degree <= 6, q <= 16")
    q = field.q
    labels = [int(h) for h in labels]
    msgs = [np.asarray(p, dtype=np.float64) for p in incoming]
    sidx = np.arange(q)
    out = []
    for k in range(d):
        # distribution of sum_{j != k} h_j v_j, built edge by edge
        t = np.zeros(q)
        t[0] = 1.0
        for j in range(d):
            if j == k:
                continue
            nxt = np.zeros(q)
            for v in range(q):
                nxt[sidx ^ field.mul(labels[j], v)] += t[sidx] * msgs[j][v]
            t = nxt
        # the check holds iff h_k v_k equals that sum (characteristic 2)
        ok = np.array([t[field.mul(labels[k], b)] for b in range(q)])
        s = ok.sum()
        out.append(ok / s if s > 0 else np.full(q, 1.0 / q))
    return out


@dataclass
class TinyCode:
    h: QaryParityCheck
    codewords: np.ndarray  # (count, n) field elements


def _row_reduce(dense: np.ndarray, field: FieldTable) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan over GF(q); returns (reduced matrix, pivot columns)."""
    a = dense.copy()
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        sel = None
        for rr in range(r, n_rows):
            if a[rr, c]:
                sel = rr
                break
        if sel is None:
            continue
        a[[r, sel]] = a[[sel, r]]
        inv = field.inv(int(a[r, c]))
        a[r] = field.mul_table[inv, a[r]]
        for rr in range(n_rows):
            if rr != r and a[rr, c]:
                factor = int(a[rr, c])
                a[rr] = a[rr] ^ field.mul_table[factor, a[r]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def enumerate_codewords(h: QaryParityCheck) -> TinyCode:
    """All zero-syndrome words of a tiny code (nullspace span over GF(q))."""
    field = h.field
    n = h.n_cols
    dense = h.to_dense()
    reduced, pivots = _row_reduce(dense, field)
    k = n - len(pivots)
    if field.q**k > MAX_ENUMERATION:
        raise OracleBudgetError(f"codeword count q^{k} exceeds enumeration budget")
    free = [c for c in range(n) if c not in pivots]
    # nullspace basis: one vector per free column
    basis = np.zeros((k, n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = reduced[r, fc]  # -x = x in characteristic 2
    words = np.zeros((field.q**k, n), dtype=np.int64)
    for i in range(k):
        coeff = np.arange(field.q**k) // field.q**i % field.q
        words ^= field.mul_table[coeff[:, None], basis[i][None, :]]
    words = words[np.lexsort(words.T[::-1])]
    return TinyCode(h, words)


def exhaustive_posteriors(code: TinyCode, priors) -> np.ndarray:
    """Exact symbol-wise posteriors by summing over the codeword list."""
    priors = np.asarray(priors, dtype=np.float64)
    n = code.h.n_cols
    q = code.h.field.q
    w = code.codewords
    weights = np.prod(priors[np.arange(n)[None, :], w], axis=1)
    post = np.zeros((n, q))
    for j in range(n):
        np.add.at(post[j], w[:, j], weights)
    return post / post.sum(axis=1, keepdims=True)
