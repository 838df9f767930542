"""Protograph constructions: edge spreading, lifting, labeling, coupling.

Builds the paired block / spatially-coupled parity-check matrices from one
seed so that the chain reuses exactly the lifted, labeled blocks of the
block code.  All constructed objects are immutable once built.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from .galois import FieldTable
from .rng import construction_stream

log = logging.getLogger(__name__)

# Component matrices B0, B1 per supported (dv, dc) pair.  Their sum is the
# (dv, dc)-regular base matrix of the underlying block protograph.
COMPONENTS = {
    (2, 4): ([[1, 1]], [[1, 1]]),
    (3, 6): ([[2, 1]], [[1, 2]]),
    (3, 9): ([[1, 2, 2]], [[2, 1, 1]]),
    (3, 12): ([[1, 1, 2, 2]], [[2, 2, 1, 1]]),
}


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class BaseMatrix:
    entries: np.ndarray  # (c-b) x c, non-negative ints

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def design_rate(self) -> float:
        return (self.cols - self.rows) / self.cols


@dataclass(frozen=True)
class EdgeSpreading:
    """Split of a base matrix into B0 + B1 (syndrome-former memory 1)."""

    b0: np.ndarray
    b1: np.ndarray
    ms: int = 1

    @property
    def base(self) -> BaseMatrix:
        return BaseMatrix(self.b0 + self.b1)


def component_matrices(dv: int, dc: int) -> EdgeSpreading:
    """Component matrix pair for one of the supported regular families."""
    try:
        b0, b1 = COMPONENTS[(dv, dc)]
    except KeyError:
        raise ConstructionError(
            f"unsupported degree pair ({dv},{dc}); supported: "
            + ", ".join(str(k) for k in sorted(COMPONENTS))
        ) from None
    return EdgeSpreading(np.array(b0, dtype=np.int64), np.array(b1, dtype=np.int64))


@dataclass(frozen=True)
class CodeBlueprint:
    """Everything needed to reproduce one paired BC/SC construction."""

    dv: int
    dc: int
    M: int
    field: FieldTable
    seed: int
    spreading: EdgeSpreading = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "spreading", component_matrices(self.dv, self.dc))
        if self.M < 2:
            raise ConstructionError("lifting factor M must be >= 2")

    @property
    def c(self) -> int:
        return self.spreading.base.cols

    @property
    def b(self) -> int:
        return self.c - self.spreading.base.rows

    @property
    def block_len_bits(self) -> int:
        return 2 * self.M * self.field.m * self.c

    @property
    def constraint_len_bits(self) -> int:
        # equals the block length of the paired block code by construction
        return 2 * self.M * self.field.m * self.c

    @property
    def constraint_len_symbols(self) -> int:
        return 2 * self.M * self.c


class QaryParityCheck:
    """Sparse parity-check matrix over GF(q), CSR with nonzero edge labels."""

    def __init__(self, n_rows, n_cols, row_ptr, col_idx, labels, field: FieldTable):
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        self.row_ptr = np.asarray(row_ptr, dtype=np.int64)
        self.col_idx = np.asarray(col_idx, dtype=np.int64)
        self.labels = np.asarray(labels, dtype=np.int32)
        self.field = field
        self._check()

    def _check(self):
        if np.any(self.labels <= 0) or np.any(self.labels >= self.field.q):
            raise ConstructionError("edge labels must be nonzero field elements")
        for r in range(self.n_rows):
            cols = self.col_idx[self.row_ptr[r] : self.row_ptr[r + 1]]
            if cols.size and np.any(np.diff(cols) <= 0):
                raise ConstructionError(f"duplicate or unsorted column in row {r}")

    @property
    def n_edges(self) -> int:
        return int(self.col_idx.size)

    def row_entries(self, r: int):
        """(columns, labels) of row r."""
        s, e = self.row_ptr[r], self.row_ptr[r + 1]
        return self.col_idx[s:e], self.labels[s:e]

    def row_weights(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    def col_weights(self) -> np.ndarray:
        return np.bincount(self.col_idx, minlength=self.n_cols)

    def triples(self) -> np.ndarray:
        """(E, 3) array of (row, col, label), row-major order."""
        rows = np.repeat(np.arange(self.n_rows), np.diff(self.row_ptr))
        return np.column_stack([rows, self.col_idx, self.labels.astype(np.int64)])

    def fingerprint(self) -> str:
        """64-bit hash of the sparse triples, hex encoded."""
        h = hashlib.blake2b(digest_size=8)
        h.update(np.ascontiguousarray(self.triples(), dtype=np.int64).tobytes())
        return h.hexdigest()

    def save_triples(self, path):
        with open(path, "w") as fh:
            for r, c, v in self.triples():
                fh.write(f"{r} {c} {v}\n")

    def to_dense(self) -> np.ndarray:
        h = np.zeros((self.n_rows, self.n_cols), dtype=np.int32)
        rows = np.repeat(np.arange(self.n_rows), np.diff(self.row_ptr))
        h[rows, self.col_idx] = self.labels
        return h


def _csr_from_coo(n_rows, n_cols, rows, cols, labels, field) -> QaryParityCheck:
    order = np.lexsort((cols, rows))
    rows, cols, labels = rows[order], cols[order], labels[order]
    row_ptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.add.at(row_ptr[1:], rows, 1)
    np.cumsum(row_ptr, out=row_ptr)
    return QaryParityCheck(n_rows, n_cols, row_ptr, cols, labels, field)


def _sample_block_perms(count: int, M: int, rng) -> list[np.ndarray]:
    """count nonoverlapping M x M permutations, sequential rejection."""
    for _ in range(100):
        perms: list[np.ndarray] = []
        failed = False
        for _k in range(count):
            for _try in range(100):
                p = rng.permutation(M)
                if not any(np.any(p == prev) for prev in perms):
                    perms.append(p)
                    break
            else:
                failed = True
                break
        if not failed:
            return perms
    raise ConstructionError(
        f"could not place {count} nonoverlapping {M}x{M} permutations"
    )


def lift_binary(B: BaseMatrix, M: int, rng):
    """Lift a base matrix by factor M with random permutation summands.

    Returns (rows, cols) int64 arrays of the 1-positions of the
    (c-b)M x cM binary matrix.
    """
    ent = B.entries
    if M < ent.max():
        raise ConstructionError("M must be at least the largest base-matrix entry")
    rows_out = []
    cols_out = []
    for i in range(B.rows):
        for j in range(B.cols):
            e = int(ent[i, j])
            if e == 0:
                continue
            for p in _sample_block_perms(e, M, rng):
                rows_out.append(i * M + np.arange(M, dtype=np.int64))
                cols_out.append(j * M + p.astype(np.int64))
    return np.concatenate(rows_out), np.concatenate(cols_out)


def assign_labels(rows, cols, n_rows, n_cols, field: FieldTable, rng) -> QaryParityCheck:
    """Attach uniform nonzero GF(q) labels to a binary structure."""
    labels = rng.integers(1, field.q, size=rows.size, dtype=np.int32)
    return _csr_from_coo(n_rows, n_cols, rows, cols, labels, field)


def _build_pool(bp: CodeBlueprint) -> dict[str, QaryParityCheck]:
    """The four lifted, labeled component blocks shared by BC and SC.

    Draw order is fixed (structure then labels, H0(0), H1(1), H0(1), H1(2))
    so the pool is a pure function of the blueprint seed.
    """
    rng = construction_stream(bp.seed)
    rM = (bp.c - bp.b) * bp.M
    cM = bp.c * bp.M
    pool = {}
    for name, comp in (
        ("H0_0", bp.spreading.b0),
        ("H1_1", bp.spreading.b1),
        ("H0_1", bp.spreading.b0),
        ("H1_2", bp.spreading.b1),
    ):
        rows, cols = lift_binary(BaseMatrix(comp), bp.M, rng)
        pool[name] = assign_labels(rows, cols, rM, cM, bp.field, rng)
    return pool


def _stack_blocks(layout, n_rows, n_cols, field) -> QaryParityCheck:
    """Assemble a sparse matrix from (block, row_off, col_off) placements."""
    rows = []
    cols = []
    labs = []
    for blk, ro, co in layout:
        t = blk.triples()
        rows.append(t[:, 0] + ro)
        cols.append(t[:, 1] + co)
        labs.append(t[:, 2].astype(np.int32))
    return _csr_from_coo(
        n_rows, n_cols, np.concatenate(rows), np.concatenate(cols),
        np.concatenate(labs), field,
    )


def build_block_code(bp: CodeBlueprint) -> QaryParityCheck:
    """The 2(c-b)M x 2cM paired block code [[H0(0) H1(2)], [H1(1) H0(1)]]."""
    pool = _build_pool(bp)
    rM = (bp.c - bp.b) * bp.M
    cM = bp.c * bp.M
    return _stack_blocks(
        [
            (pool["H0_0"], 0, 0),
            (pool["H1_2"], 0, cM),
            (pool["H1_1"], rM, 0),
            (pool["H0_1"], rM, cM),
        ],
        2 * rM,
        2 * cM,
        bp.field,
    )


class ScChain:
    """Terminated period-2 spatially coupled chain over L time instants.

    Row position p holds H1(p) under position p-1 and H0(p) under position
    p, with H0 alternating H0(0)/H0(1) and H1 alternating H1(1)/H1(2).  One
    extra row position is appended after L so every symbol column reaches
    full degree dv.
    """

    def __init__(self, bp: CodeBlueprint, L: int):
        if L < 1:
            raise ConstructionError("chain length L must be >= 1")
        self.bp = bp
        self.L = L
        self.pool = _build_pool(bp)
        self.rM = (bp.c - bp.b) * bp.M  # check rows per position
        self.cM = bp.c * bp.M  # symbol columns per position
        self.n_rows = (L + 1) * self.rM
        self.n_cols = L * self.cM
        self._assemble()

    def _h0(self, p: int) -> QaryParityCheck:
        return self.pool["H0_0"] if p % 2 == 0 else self.pool["H0_1"]

    def _h1(self, p: int) -> QaryParityCheck:
        return self.pool["H1_1"] if p % 2 == 1 else self.pool["H1_2"]

    def _assemble(self):
        layout = [(self._h0(0), 0, 0)]
        for p in range(1, self.L):
            layout.append((self._h1(p), p * self.rM, (p - 1) * self.cM))
            layout.append((self._h0(p), p * self.rM, p * self.cM))
        layout.append((self._h1(self.L), self.L * self.rM, (self.L - 1) * self.cM))
        h = _stack_blocks(layout, self.n_rows, self.n_cols, self.bp.field)
        self.row_ptr = h.row_ptr
        self.col_idx = h.col_idx
        self.labels = h.labels

        # Per-row index of the first edge belonging to the row's own
        # position (everything before it is the H1 part, one position back).
        pos_of_row = np.arange(self.n_rows) // self.rM
        self.row_h1_end = np.empty(self.n_rows, dtype=np.int64)
        for r in range(self.n_rows):
            s, e = self.row_ptr[r], self.row_ptr[r + 1]
            self.row_h1_end[r] = s + np.searchsorted(
                self.col_idx[s:e], pos_of_row[r] * self.cM
            )

        # Column-grouped view: edge ids sorted by (col, row), plus the split
        # between a column's own-position checks and its H1 checks below.
        rows_of_edge = np.repeat(np.arange(self.n_rows), np.diff(self.row_ptr))
        order = np.lexsort((rows_of_edge, self.col_idx))
        self.col_edge = order.astype(np.int64)
        self.col_ptr = np.zeros(self.n_cols + 1, dtype=np.int64)
        np.add.at(self.col_ptr[1:], self.col_idx, 1)
        np.cumsum(self.col_ptr, out=self.col_ptr)
        self.row_of_edge = rows_of_edge.astype(np.int64)
        self.col_h0_end = np.empty(self.n_cols, dtype=np.int64)
        pos_of_col = np.arange(self.n_cols) // self.cM
        for j in range(self.n_cols):
            s, e = self.col_ptr[j], self.col_ptr[j + 1]
            self.col_h0_end[j] = s + np.searchsorted(
                rows_of_edge[order[s:e]], (pos_of_col[j] + 1) * self.rM
            )

    @property
    def n_edges(self) -> int:
        return int(self.col_idx.size)

    def full_matrix(self) -> QaryParityCheck:
        return QaryParityCheck(
            self.n_rows, self.n_cols, self.row_ptr, self.col_idx, self.labels,
            self.bp.field,
        )

    def window_bounds(self, t: int, W: int):
        """Active (row position end, col position end) of window t, clamped."""
        return min(t + W, self.L + 1), min(t + W, self.L)

    def window_view(self, t: int, W: int) -> QaryParityCheck:
        """Materialize the decoding window at position t as a submatrix.

        Covers columns [t*cM, (t+W)*cM) and the W row positions starting at
        t; edges from the first row position back to already-shifted columns
        are outside the view.  Truncated at the chain end.
        """
        if not 0 <= t < self.L:
            raise IndexError(f"window position {t} outside terminated chain")
        if W < self.bp.spreading.ms + 1:
            raise ValueError("window size must be at least ms + 1")
        pe, ce = self.window_bounds(t, W)
        col_lo = t * self.cM
        rows = []
        cols = []
        labs = []
        for r in range(t * self.rM, pe * self.rM):
            s = self.row_h1_end[r] if r // self.rM == t else self.row_ptr[r]
            e = self.row_ptr[r + 1]
            rows.append(np.full(e - s, r - t * self.rM, dtype=np.int64))
            cols.append(self.col_idx[s:e] - col_lo)
            labs.append(self.labels[s:e])
        return _csr_from_coo(
            (pe - t) * self.rM,
            (ce - t) * self.cM,
            np.concatenate(rows),
            np.concatenate(cols),
            np.concatenate(labs),
            self.bp.field,
        )


def build_sc_chain(bp: CodeBlueprint, L: int) -> ScChain:
    return ScChain(bp, L)


def window_view(chain: ScChain, t: int, W: int) -> QaryParityCheck:
    return chain.window_view(t, W)


def tanner_girth(h: QaryParityCheck, cap: int = 8) -> int | None:
    """Shortest cycle length in the Tanner graph, or None if > cap.

    Diagnostic only; BFS from every variable node, stopping at depth cap/2.
    """
    var_checks = [[] for _ in range(h.n_cols)]
    check_vars = [list(h.row_entries(r)[0]) for r in range(h.n_rows)]
    for r in range(h.n_rows):
        for c in check_vars[r]:
            var_checks[c].append(r)

    best = None
    max_depth = cap // 2
    for v0 in range(h.n_cols):
        # nodes: vars 0..n_cols-1, checks n_cols..; BFS with parent tracking
        dist = {v0: 0}
        parent = {v0: -1}
        frontier = [v0]
        depth = 0
        while frontier and depth < max_depth + 1:
            nxt = []
            for u in frontier:
                if u < h.n_cols:
                    nbrs = [h.n_cols + r for r in var_checks[u]]
                else:
                    nbrs = check_vars[u - h.n_cols]
                for w in nbrs:
                    if w == parent[u]:
                        continue
                    if w in dist:
                        cyc = dist[u] + dist[w] + 1
                        if best is None or cyc < best:
                            best = cyc
                    else:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
            depth += 1
        if best is not None and best <= 4:
            break
    if best is not None and best <= cap:
        return best
    return None
