"""Simulation lab for q-ary LDPC block codes and spatially coupled chains.

Construction (protograph lifting and edge spreading), FFT-QSPA belief
propagation (full-block and sliding-window), a BI-AWGN Monte Carlo harness,
and latency/complexity accounting.
"""

from .galois import FieldTable, build_field
from .kernels import BACKEND as kernel_backend

__all__ = ["FieldTable", "build_field", "kernel_backend"]
__version__ = "0.1.0"
