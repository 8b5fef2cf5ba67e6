# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

Twin of ``_pure``: the traversal (branch order, tie-breaking, pruning,
node accounting) matches the pure kernels step for step, so both backends
return identical sizes, witnesses and node counts.  Any change here must be
mirrored there.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

from time import perf_counter

BACKEND = "compiled"

ctypedef unsigned long long u64


cdef struct RCtx:
    int m
    int words
    u64 *masks            # per global edge: `words` occupancy words
    int *fam_start        # m + 1 entries
    int target
    double t0
    double limit          # negative: no limit
    int best
    int n_best
    int *best_picks       # 2 * m
    int n_picks
    int *picks            # 2 * m
    int *active_scratch   # (m + 2) * m
    u64 *occ_scratch      # (m + 2) * words
    long long nodes
    bint stop
    bint timed_out


cdef bint _disjoint(u64 *mask, u64 *occ, int words):
    cdef int w
    for w in range(words):
        if mask[w] & occ[w]:
            return False
    return True


cdef void _rainbow_search(RCtx *c, u64 *occ, int *active, int n_active, int depth):
    cdef int i, fam, count, ei, n_live, n_rest, branch_fam, branch_count, w
    cdef int *live
    cdef u64 *child_occ
    cdef u64 *mask

    c.nodes += 1
    if c.limit >= 0.0 and (c.nodes & 1023) == 0:
        if perf_counter() - c.t0 > c.limit:
            c.timed_out = True
    if c.timed_out:
        return
    if c.n_picks > c.best:
        c.best = c.n_picks
        c.n_best = c.n_picks
        memcpy(c.best_picks, c.picks, 2 * c.n_picks * sizeof(int))
        if c.best >= c.target:
            c.stop = True
            return

    live = c.active_scratch + depth * c.m
    n_live = 0
    branch_fam = -1
    branch_count = 0
    for i in range(n_active):
        fam = active[i]
        count = 0
        for ei in range(c.fam_start[fam], c.fam_start[fam + 1]):
            if _disjoint(c.masks + ei * c.words, occ, c.words):
                count += 1
        if count:
            live[n_live] = fam
            n_live += 1
            if branch_fam < 0 or count < branch_count:
                branch_fam = fam
                branch_count = count
    if c.n_picks + n_live <= c.best:
        return

    # drop the branch family from live in place, preserving order
    n_rest = 0
    for i in range(n_live):
        if live[i] != branch_fam:
            live[n_rest] = live[i]
            n_rest += 1

    child_occ = c.occ_scratch + (depth + 1) * c.words
    for ei in range(c.fam_start[branch_fam], c.fam_start[branch_fam + 1]):
        mask = c.masks + ei * c.words
        if not _disjoint(mask, occ, c.words):
            continue
        for w in range(c.words):
            child_occ[w] = occ[w] | mask[w]
        c.picks[2 * c.n_picks] = branch_fam
        c.picks[2 * c.n_picks + 1] = ei - c.fam_start[branch_fam]
        c.n_picks += 1
        _rainbow_search(c, child_occ, live, n_rest, depth + 1)
        c.n_picks -= 1
        if c.stop or c.timed_out:
            return
    _rainbow_search(c, occ, live, n_rest, depth + 1)


def solve_rainbow(fam_vertex_ids, n_vertices, target, time_limit=None):
    """Compiled twin of ``_pure.solve_rainbow`` (same contract)."""
    cdef int m = len(fam_vertex_ids)
    cdef int words = (n_vertices + 63) >> 6
    if words < 1:
        words = 1
    cdef int total = 0
    for family in fam_vertex_ids:
        total += len(family)

    cdef RCtx c
    c.m = m
    c.words = words
    c.target = target
    c.t0 = perf_counter()
    c.limit = -1.0 if time_limit is None else <double> time_limit
    c.best = -1
    c.n_best = 0
    c.n_picks = 0
    c.nodes = 0
    c.stop = False
    c.timed_out = False

    c.masks = <u64 *> malloc(max(total, 1) * words * sizeof(u64))
    c.fam_start = <int *> malloc((m + 1) * sizeof(int))
    c.best_picks = <int *> malloc(max(2 * m, 1) * sizeof(int))
    c.picks = <int *> malloc(max(2 * m, 1) * sizeof(int))
    c.active_scratch = <int *> malloc(max((m + 2) * m, 1) * sizeof(int))
    c.occ_scratch = <u64 *> malloc((m + 2) * words * sizeof(u64))
    if (c.masks == NULL or c.fam_start == NULL or c.best_picks == NULL
            or c.picks == NULL or c.active_scratch == NULL
            or c.occ_scratch == NULL):
        _free_rctx(&c)
        raise MemoryError()

    cdef int gi = 0, fi = 0, v
    memset(c.masks, 0, max(total, 1) * words * sizeof(u64))
    for family in fam_vertex_ids:
        c.fam_start[fi] = gi
        for edge in family:
            for v in edge:
                c.masks[gi * words + (v >> 6)] |= (<u64> 1) << (v & 63)
            gi += 1
        fi += 1
    c.fam_start[m] = gi

    cdef int *root_active = <int *> malloc(max(m, 1) * sizeof(int))
    if root_active == NULL:
        _free_rctx(&c)
        raise MemoryError()
    for fi in range(m):
        root_active[fi] = fi
    memset(c.occ_scratch, 0, words * sizeof(u64))

    try:
        _rainbow_search(&c, c.occ_scratch, root_active, m, 0)
        picks = [
            (c.best_picks[2 * i], c.best_picks[2 * i + 1])
            for i in range(c.n_best)
        ]
        best = c.best if c.best > 0 else 0
        return best, picks, c.nodes, bool(c.timed_out)
    finally:
        free(root_active)
        _free_rctx(&c)


cdef void _free_rctx(RCtx *c):
    free(c.masks)
    free(c.fam_start)
    free(c.best_picks)
    free(c.picks)
    free(c.active_scratch)
    free(c.occ_scratch)


cdef struct TCtx:
    int n
    int *cells            # n * n, 0-based symbols
    int target
    int best
    int n_best
    int *best_picks       # 2 * n
    int n_picks
    int *picks            # 2 * n
    long long nodes
    bint stop


cdef void _transversal_search(TCtx *c, int row, u64 col_mask, u64 sym_mask):
    cdef int col, sym, base
    c.nodes += 1
    if c.n_picks > c.best:
        c.best = c.n_picks
        c.n_best = c.n_picks
        memcpy(c.best_picks, c.picks, 2 * c.n_picks * sizeof(int))
        if c.best >= c.target:
            c.stop = True
            return
    if row == c.n or c.n_picks + (c.n - row) <= c.best:
        return
    base = row * c.n
    for col in range(c.n):
        if col_mask & ((<u64> 1) << col):
            continue
        sym = c.cells[base + col]
        if sym_mask & ((<u64> 1) << sym):
            continue
        c.picks[2 * c.n_picks] = row
        c.picks[2 * c.n_picks + 1] = col
        c.n_picks += 1
        _transversal_search(
            c, row + 1, col_mask | ((<u64> 1) << col), sym_mask | ((<u64> 1) << sym)
        )
        c.n_picks -= 1
        if c.stop:
            return
    _transversal_search(c, row + 1, col_mask, sym_mask)


def solve_transversal(cells, n, target):
    """Compiled twin of ``_pure.solve_transversal`` (n <= 64)."""
    if n > 64:
        raise ValueError("compiled transversal kernel handles n <= 64")
    cdef TCtx c
    c.n = n
    c.target = target
    c.best = -1
    c.n_best = 0
    c.n_picks = 0
    c.nodes = 0
    c.stop = False
    c.cells = <int *> malloc(max(n * n, 1) * sizeof(int))
    c.best_picks = <int *> malloc(max(2 * n, 1) * sizeof(int))
    c.picks = <int *> malloc(max(2 * n, 1) * sizeof(int))
    if c.cells == NULL or c.best_picks == NULL or c.picks == NULL:
        free(c.cells)
        free(c.best_picks)
        free(c.picks)
        raise MemoryError()
    cdef int i
    for i in range(n * n):
        c.cells[i] = cells[i]
    try:
        _transversal_search(&c, 0, 0, 0)
        picks = [
            (c.best_picks[2 * i], c.best_picks[2 * i + 1])
            for i in range(c.n_best)
        ]
        best = c.best if c.best > 0 else 0
        return best, picks, c.nodes
    finally:
        free(c.cells)
        free(c.best_picks)
        free(c.picks)
