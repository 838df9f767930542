"""Monte Carlo experiment driver: BER sweeps, required-SNR search, CSV/JSON
persistence.

Frames are independent work units; every frame draws its noise from a
Philox substream keyed by (seed, frame index), and early stopping is
evaluated only at fixed chunk boundaries in frame order, so results are a
pure function of (config, seed) regardless of worker count.
"""

from __future__ import annotations

import csv
import json
import logging
import multiprocessing
import os
import time
from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from . import kernels
from .channel import ChannelConfig, frame_priors, modulate_awgn
from .construction import COMPONENTS, CodeBlueprint, build_block_code, build_sc_chain
from .decoder import BlockDecoder, WindowDecoder
from .galois import build_field
from .metrics import OpsLedger, complexity_measured, latency_bits
from .rng import frame_stream

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "ebn0_db", "frames", "bits", "bit_errors", "ber",
    "avg_iters", "ops_per_bit", "latency_bits", "reliable",
]

_CHUNK = {"block": 64, "sc_window": 8}


@dataclass(frozen=True)
class SimConfig:
    dv: int
    dc: int
    q: int
    M: int
    seed: int
    mode: str = "block"  # block | sc_window
    L: int = 50
    W: int = 6
    imax: int = 100
    stop_ber: float = 1e-6  # window stopping-rule target
    ebn0_db: tuple = ()
    min_errors: int = 100
    max_frames: int = 200_000
    out: str | None = None
    workers: int = 0  # 0 -> all cores

    def __post_init__(self):
        if self.mode not in ("block", "sc_window"):
            raise ValueError("mode must be 'block' or 'sc_window'")
        if self.q & (self.q - 1) or not 2 <= self.q <= 32:
            raise ValueError("q must be a power of two in [2, 32]")
        if self.min_errors < 50:
            raise ValueError("min_errors must be at least 50 for a reported BER")

    @property
    def m(self) -> int:
        return self.q.bit_length() - 1

    def construction_key(self) -> tuple:
        return (self.dv, self.dc, self.q, self.M, self.seed, self.mode, self.L, self.W)


@dataclass
class PointResult:
    ebn0_db: float
    frames: int
    bits: int
    bit_errors: int
    ber: float
    avg_iters: float
    ops_per_bit: float
    latency_bits: int
    reliable: bool
    wall_time: float
    ledger: OpsLedger

    def deterministic_tuple(self) -> tuple:
        """Everything except wall-clock time; used by the determinism contract."""
        return (
            self.ebn0_db, self.frames, self.bits, self.bit_errors, self.ber,
            self.avg_iters, self.ops_per_bit, self.latency_bits, self.reliable,
            self.ledger.adds, self.ledger.muls, self.ledger.compares,
            self.ledger.field_ops,
        )

    def csv_row(self) -> list:
        return [
            repr(self.ebn0_db), self.frames, self.bits, self.bit_errors,
            repr(self.ber), repr(self.avg_iters), repr(self.ops_per_bit),
            self.latency_bits, int(self.reliable),
        ]


@dataclass
class SimRecord:
    config: SimConfig
    rows: list = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# per-process decoder cache (workers are forked, so each builds its own)

_STATE: dict = {}


def _get_state(cfg: SimConfig):
    key = cfg.construction_key()
    st = _STATE.get(key)
    if st is None:
        field = build_field(cfg.q.bit_length() - 1)
        bp = CodeBlueprint(cfg.dv, cfg.dc, cfg.M, field, cfg.seed)
        if cfg.mode == "block":
            h = build_block_code(bp)
            dec = BlockDecoder(h)
            n_symbols = h.n_cols
            fingerprint = h.fingerprint()
        else:
            chain = build_sc_chain(bp, cfg.L)
            dec = WindowDecoder(chain, cfg.W)
            n_symbols = chain.n_cols
            fingerprint = chain.full_matrix().fingerprint()
        popcnt = np.array([bin(i).count("1") for i in range(cfg.q)], dtype=np.int64)
        _STATE.clear()  # one cached construction per process is enough
        st = _STATE[key] = {
            "bp": bp,
            "decoder": dec,
            "n_symbols": n_symbols,
            "popcnt": popcnt,
            "fingerprint": fingerprint,
        }
    return st


def _run_chunk(cfg: SimConfig, ebn0_db: float, lo: int, hi: int) -> tuple:
    """Simulate frames [lo, hi); returns flat counters for aggregation."""
    st = _get_state(cfg)
    bp: CodeBlueprint = st["bp"]
    dec = st["decoder"]
    n_symbols = st["n_symbols"]
    popcnt = st["popcnt"]
    ch = ChannelConfig(ebn0_db, bp.b / bp.c, bp.field.m)
    zeros = np.zeros(n_symbols, dtype=np.int64)
    led = OpsLedger()
    errors = 0
    iter_sum = 0
    iter_count = 0
    for idx in range(lo, hi):
        rng = frame_stream(cfg.seed, idx)
        y = modulate_awgn(zeros, bp.field, ch, rng)
        priors = frame_priors(y, ch, bp.field)
        if cfg.mode == "block":
            outcome = dec.decode(priors, cfg.imax, ledger=led)
            errors += int(popcnt[outcome.hard].sum())
            iter_sum += outcome.iterations
            iter_count += 1
        else:
            hard, iters = dec.decode(priors, cfg.imax, cfg.stop_ber, ledger=led)
            errors += int(popcnt[hard].sum())
            iter_sum += int(iters.sum())
            iter_count += iters.size
    frames = hi - lo
    bits = frames * n_symbols * bp.field.m
    led.decoded_bits = bits
    return (
        frames, bits, errors, iter_sum, iter_count,
        led.adds, led.muls, led.compares, led.field_ops,
    )


def _chunk_worker(args):
    return _run_chunk(*args)


def run_point(cfg: SimConfig, ebn0_db: float) -> PointResult:
    """Simulate one SNR point until min_errors bit errors or max_frames."""
    t0 = time.perf_counter()
    chunk = _CHUNK[cfg.mode]
    workers = cfg.workers or os.cpu_count() or 1

    totals = np.zeros(9, dtype=np.int64)

    def consume(res) -> bool:
        totals[:] += np.asarray(res, dtype=np.int64)
        return totals[2] >= cfg.min_errors

    tasks = [
        (cfg, ebn0_db, lo, min(lo + chunk, cfg.max_frames))
        for lo in range(0, cfg.max_frames, chunk)
    ]
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            if consume(_run_chunk(*t)):
                break
    else:
        with multiprocessing.Pool(workers) as pool:
            it = pool.imap(_chunk_worker, tasks)
            for res in it:
                if consume(res):
                    break

    frames, bits, errors, iter_sum, iter_count = (int(x) for x in totals[:5])
    led = OpsLedger(*(int(x) for x in totals[5:]), decoded_bits=bits)
    c = len(COMPONENTS[(cfg.dv, cfg.dc)][0][0])
    lat = latency_bits(
        cfg.mode, cfg.M, cfg.m, c, cfg.W if cfg.mode == "sc_window" else None
    )
    reliable = errors >= cfg.min_errors
    if not reliable:
        log.warning(
            "point %.2f dB stopped at %d frames with only %d errors (unreliable)",
            ebn0_db, frames, errors,
        )
    return PointResult(
        ebn0_db=float(ebn0_db),
        frames=frames,
        bits=bits,
        bit_errors=errors,
        ber=errors / bits if bits else 0.0,
        avg_iters=iter_sum / iter_count if iter_count else 0.0,
        ops_per_bit=complexity_measured(led, bits) if bits else 0.0,
        latency_bits=lat,
        reliable=reliable,
        wall_time=time.perf_counter() - t0,
        ledger=led,
    )


def _manifest(cfg: SimConfig, record: SimRecord) -> dict:
    st = _get_state(cfg)
    bp: CodeBlueprint = st["bp"]
    man = {
        "config": asdict(cfg),
        "prim_poly": bp.field.prim_poly,
        "fingerprint": st["fingerprint"],
        "kernel_backend": kernels.BACKEND,
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "rows": len(record.rows),
        "wall_time_s": sum(r.wall_time for r in record.rows),
    }
    if cfg.mode == "sc_window":
        n_cols = cfg.L * bp.c * cfg.M
        n_rows = (cfg.L + 1) * (bp.c - bp.b) * cfg.M
        man["terminated_rate"] = (n_cols - n_rows) / n_cols
        man["design_rate"] = bp.b / bp.c
    return man


def write_outputs(record: SimRecord, out_base: str) -> None:
    """Persist a sweep as <out_base>.csv and <out_base>.json."""
    with open(out_base + ".csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r in record.rows:
            w.writerow(r.csv_row())
    with open(out_base + ".json", "w") as fh:
        json.dump(_manifest(record.config, record), fh, indent=2)


def sweep(cfg: SimConfig) -> SimRecord:
    """Run every configured SNR point and persist CSV + manifest."""
    record = SimRecord(cfg)
    if cfg.max_frames > 0:
        for e in cfg.ebn0_db:
            record.rows.append(run_point(cfg, e))
    bers = [r.ber for r in record.rows]
    if any(b2 > b1 for b1, b2 in zip(bers, bers[1:])):
        log.warning("BER is not monotone non-increasing across the sweep")
    if cfg.out:
        write_outputs(record, cfg.out)
    return record


class BracketError(ValueError):
    pass


def required_snr(
    cfg: SimConfig,
    target_ber: float,
    lo_db: float,
    hi_db: float,
    eval_point=None,
) -> float:
    """Smallest Eb/N0 on a 0.1 dB grid with BER <= target, by bisection.

    eval_point(ebn0_db) -> measured BER; defaults to run_point.  The
    bracket must satisfy BER(lo) > target > BER(hi).
    """
    if eval_point is None:
        def eval_point(e):
            r = run_point(cfg, e)
            log.info("reqsnr probe %.1f dB -> ber %.3g (%s)", e, r.ber,
                     "reliable" if r.reliable else "unreliable")
            return r.ber

    lo, hi = round(lo_db, 6), round(hi_db, 6)
    if eval_point(lo) <= target_ber:
        raise BracketError(f"BER at {lo} dB already <= target; widen bracket down")
    if eval_point(hi) > target_ber:
        raise BracketError(f"BER at {hi} dB still > target; widen bracket up")
    while hi - lo > 0.1 + 1e-9:
        mid = round(round((lo + hi) / 2 * 10) / 10, 6)
        if mid <= lo or mid >= hi:
            break
        if eval_point(mid) > target_ber:
            lo = mid
        else:
            hi = mid
    return round(hi, 6)
