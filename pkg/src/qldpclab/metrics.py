"""Latency formulas, complexity estimates, and exact operation accounting.

Counting convention for instrumented costs (probability-value operations
only): a length-q WHT costs q*log2(q) add-equivalents, an entry-wise
product of two length-q vectors costs q multiply-equivalents, and a
normalization costs 2q (q adds + q multiplies).  Permutations, copies,
clamping, RNG, and hard-decision compares are excluded from the headline
count; compares and GF syndrome operations are tallied separately.
"""

from __future__ import annotations

from dataclasses import dataclass


def check_node_cost(d, q: int, m: int):
    """(adds, muls) of one flooding update of a degree-d check node.

    Two WHTs per edge, 3(d-1) exclusive-product vector multiplies, and one
    normalization per outgoing message.  d may be an integer or an array.
    """
    adds = 2 * d * q * m + d * q
    muls = 3 * (d - 1) * q + d * q
    return adds, muls


def var_node_cost(d, q: int):
    """(adds, muls) of one flooding update of a degree-d variable node.

    Exclusive products over the prior plus d incoming messages (3d vector
    multiplies), one multiply for the posterior, and d+1 normalizations.
    """
    adds = (d + 1) * q
    muls = (3 * d + 1) * q + (d + 1) * q
    return adds, muls


@dataclass
class OpsLedger:
    """Per-worker operation counters; merged associatively at aggregation."""

    adds: int = 0
    muls: int = 0
    compares: int = 0
    field_ops: int = 0
    decoded_bits: int = 0

    def __iadd__(self, other: "OpsLedger"):
        self.adds += other.adds
        self.muls += other.muls
        self.compares += other.compares
        self.field_ops += other.field_ops
        self.decoded_bits += other.decoded_bits
        return self

    @property
    def ops_per_bit(self) -> float:
        return complexity_measured(self, self.decoded_bits)

    @property
    def compares_per_bit(self) -> float:
        if self.decoded_bits == 0:
            raise ZeroDivisionError("no decoded bits in ledger")
        return self.compares / self.decoded_bits


def complexity_measured(ledger: OpsLedger, decoded_bits: int) -> float:
    """Instrumented multiply/add-equivalents per decoded bit."""
    if decoded_bits <= 0:
        raise ZeroDivisionError("no decoded bits in ledger")
    return (ledger.adds + ledger.muls) / decoded_bits


def latency_bits(kind: str, M: int, m: int, c: int, W: int | None = None) -> int:
    """Decoding latency in bits: paired block code or sliding window."""
    if min(M, m, c) <= 0:
        raise ValueError("parameters must be positive")
    if kind == "block":
        return 2 * M * m * c
    if kind == "sc_window":
        if W is None:
            raise ValueError("window size W required for sc_window latency")
        return W * M * m * c
    raise ValueError(f"unknown latency kind {kind!r}")


def complexity_formula(dv: int, m: int, q: int, I: float, W: int | None = None) -> float:
    """Asymptotic per-decoded-bit complexity: (dv/m + dv)*q*I, times W for
    sliding-window decoding."""
    if I <= 0:
        raise ValueError("average iteration count must be positive")
    base = (dv / m + dv) * q * I
    return base * W if W is not None else base


def regular_ops_per_bit(
    dv: int, dc: int, q: int, m: int, I: float, W: int | None = None
) -> float:
    """Per-decoded-bit estimate under the all-nodes-regular assumption.

    Uses the same counting convention as the instrumented ledger, so a
    block decode matches it exactly while a window decode comes in below
    it (boundary nodes run at reduced degree).
    """
    ca, cm = check_node_cost(dc, q, m)
    va, vm = var_node_cost(dv, q)
    per_bit_iter = (va + vm + (dv / dc) * (ca + cm)) / m
    return per_bit_iter * I * (W if W is not None else 1)
