"""Command-line front end: construct / ber / reqsnr / complexity."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import kernels
from .construction import CodeBlueprint, build_block_code, build_sc_chain, tanner_girth
from .galois import build_field
from .harness import SimConfig, required_snr, run_point, sweep
from .metrics import complexity_formula, regular_ops_per_bit

log = logging.getLogger(__name__)


def _add_code_args(p: argparse.ArgumentParser):
    p.add_argument("--dv", type=int, default=3)
    p.add_argument("--dc", type=int, default=6)
    p.add_argument("--q", type=int, default=8)
    p.add_argument("--M", type=int, default=64)
    p.add_argument("--L", type=int, default=50)
    p.add_argument("--mode", choices=["block", "sc_window"], default="block")
    p.add_argument("--W", type=int, default=6)
    p.add_argument("--imax", type=int, default=100)
    p.add_argument("--stop-ber", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=0, help="0 = all cores")
    p.add_argument("--out", type=str, default=None)


def _config(args, ebn0=()) -> SimConfig:
    return SimConfig(
        dv=args.dv, dc=args.dc, q=args.q, M=args.M, seed=args.seed,
        mode=args.mode, L=args.L, W=args.W, imax=args.imax,
        stop_ber=args.stop_ber, ebn0_db=tuple(ebn0),
        min_errors=args.min_errors, max_frames=args.max_frames,
        out=args.out, workers=args.workers,
    )


def _cmd_construct(args) -> int:
    field = build_field(args.q.bit_length() - 1)
    bp = CodeBlueprint(args.dv, args.dc, args.M, field, args.seed)
    if args.mode == "block":
        h = build_block_code(bp)
    else:
        h = build_sc_chain(bp, args.L).full_matrix()
    info = {
        "dv": args.dv, "dc": args.dc, "q": args.q, "M": args.M,
        "mode": args.mode, "L": args.L, "seed": args.seed,
        "rows": h.n_rows, "cols": h.n_cols, "edges": h.n_edges,
        "prim_poly": field.prim_poly,
        "fingerprint": h.fingerprint(),
    }
    if args.girth:
        g = tanner_girth(h, cap=8)
        info["girth"] = g if g is not None else ">8"
        log.info("construction girth report: %s", info["girth"])
    if args.out:
        h.save_triples(args.out + ".triples")
        with open(args.out + ".json", "w") as fh:
            json.dump(info, fh, indent=2)
    print(json.dumps(info))
    return 0


def _cmd_ber(args) -> int:
    ebn0 = [float(x) for x in args.ebn0.split(",") if x]
    if not ebn0:
        print("at least one --ebn0 point required", file=sys.stderr)
        return 2
    record = sweep(_config(args, ebn0))
    for r in record.rows:
        print(
            f"{r.ebn0_db:6.2f} dB  ber={r.ber:.3e}  iters={r.avg_iters:6.2f}  "
            f"ops/bit={r.ops_per_bit:9.1f}  frames={r.frames}"
            f"{'' if r.reliable else '  [unreliable]'}"
        )
    return 0


def _cmd_reqsnr(args) -> int:
    cfg = _config(args)
    snr = required_snr(cfg, args.target_ber, args.lo, args.hi)
    print(f"required Eb/N0 for BER <= {args.target_ber:g}: {snr:.1f} dB")
    return 0


def _cmd_complexity(args) -> int:
    cfg = _config(args)
    r = run_point(cfg, args.ebn0)
    m = cfg.m
    w = cfg.W if cfg.mode == "sc_window" else None
    est_paper = complexity_formula(cfg.dv, m, cfg.q, r.avg_iters, w)
    est_regular = regular_ops_per_bit(cfg.dv, cfg.dc, cfg.q, m, r.avg_iters, w)
    out = {
        "ebn0_db": r.ebn0_db,
        "ber": r.ber,
        "avg_iters": r.avg_iters,
        "measured_ops_per_bit": r.ops_per_bit,
        "regular_estimate_ops_per_bit": est_regular,
        "asymptotic_formula": est_paper,
        "compares_per_bit": r.ledger.compares / max(r.bits, 1),
        "field_ops_per_bit": r.ledger.field_ops / max(r.bits, 1),
        "latency_bits": r.latency_bits,
        "kernel_backend": kernels.BACKEND,
    }
    print(json.dumps(out, indent=2))
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    ap = argparse.ArgumentParser(prog="qldpclab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build a code, print/save fingerprint")
    _add_code_args(p)
    p.add_argument("--girth", action="store_true", help="log a girth report")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("ber", help="Monte Carlo BER sweep")
    _add_code_args(p)
    p.add_argument("--ebn0", type=str, required=True, help="comma list of dB points")
    p.set_defaults(fn=_cmd_ber)

    p = sub.add_parser("reqsnr", help="bisect the Eb/N0 needed for a target BER")
    _add_code_args(p)
    p.add_argument("--target-ber", type=float, required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.set_defaults(fn=_cmd_reqsnr)

    p = sub.add_parser("complexity", help="operation-count ledger report")
    _add_code_args(p)
    p.add_argument("--ebn0", type=float, required=True)
    p.set_defaults(fn=_cmd_complexity)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
