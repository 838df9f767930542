"""Exact arithmetic over GF(2^m) for m in 1..5.

Elements are integers in [0, q) whose bits are polynomial-basis
coefficients, least-significant bit = constant term.  Addition is
bitwise XOR; multiplication goes through exponent/log tables built
from a fixed primitive polynomial per field size:

    m=1 : x + 1            -> 0b11
    m=2 : x^2 + x + 1      -> 0b111
    m=3 : x^3 + x + 1      -> 0b1011
    m=4 : x^4 + x + 1      -> 0b10011
    m=5 : x^5 + x^2 + 1    -> 0b100101
"""

from __future__ import annotations

import numpy as np

PRIMITIVE_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
}


class UnsupportedFieldError(ValueError):
    pass


class FieldTable:
    """GF(2^m) with precomputed exp/log and full multiplication tables.

    Immutable after construction; safe to share across threads/processes.
    """

    def __init__(self, m: int):
        if m not in PRIMITIVE_POLYS:
            raise UnsupportedFieldError(
                f"unsupported field GF(2^{m}); m must be in {sorted(PRIMITIVE_POLYS)}"
            )
        self.m = m
        self.q = 1 << m
        self.prim_poly = PRIMITIVE_POLYS[m]

        # exp_table[i] = alpha^i for i in [0, q-1); log_table[alpha^i] = i.
        # alpha = x (element 2) is primitive for every polynomial above;
        # for m=1 the only nonzero element is 1.
        exp = np.zeros(self.q - 1, dtype=np.int32)
        log = np.zeros(self.q, dtype=np.int32)
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= self.prim_poly
        self.exp_table = exp
        self.log_table = log

        # Dense q x q product table; q <= 32 so at most 1024 entries.
        a = np.arange(self.q)
        la = log[a[1:]]
        mul = np.zeros((self.q, self.q), dtype=np.int32)
        mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % (self.q - 1)]
        self.mul_table = mul

        inv = np.zeros(self.q, dtype=np.int32)
        inv[1:] = exp[(-(la)) % (self.q - 1)]
        self.inv_table = inv

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(
            self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        )

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in GF(q)")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0 in GF(q)")
        if a == 0:
            return 0
        return int(
            self.exp_table[(self.log_table[a] - self.log_table[b]) % (self.q - 1)]
        )

    def __repr__(self) -> str:
        return f"FieldTable(m={self.m}, q={self.q}, poly={self.prim_poly:#b})"


def build_field(m: int) -> FieldTable:
    """Build the GF(2^m) arithmetic tables, 1 <= m <= 5."""
    return FieldTable(m)


def field_arith(f: FieldTable, a: int, b: int, op: str) -> int:
    """Scalar field arithmetic dispatch: op in {add, mul, div, inv}.

    For op='inv' the second operand is ignored.
    """
    if not (0 <= a < f.q) or not (0 <= b < f.q):
        raise ValueError(f"operands must lie in [0, {f.q})")
    if op == "add":
        return f.add(a, b)
    if op == "mul":
        return f.mul(a, b)
    if op == "div":
        return f.div(a, b)
    if op == "inv":
        return f.inv(a)
    raise ValueError(f"unknown op {op!r}")
