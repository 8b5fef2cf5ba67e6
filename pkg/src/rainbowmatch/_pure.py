"""Pure-Python search kernels.

These are the fallback twins of the compiled kernels in ``_speedups``: the
two backends implement the same traversal step for step, so optimal sizes,
witnesses and node counts are identical (timeouts aside, which depend on
wall-clock timing).  Any change here must be mirrored there.
"""

from time import perf_counter

BACKEND = "pure"


def solve_rainbow(fam_vertex_ids, n_vertices, target, time_limit=None):
    """Exact maximum partial rainbow selection by branch and bound.

    ``fam_vertex_ids``: per family, a list of edges given as tuples of
    global vertex ids (ids unique across sides).  Branching: unrepresented
    family with the fewest currently-disjoint candidate edges first, ties by
    lowest family index, candidates in stored order; the skip branch is
    explored last.  Bound: picks so far + families that still have a
    disjoint candidate.  Stops early once ``target`` picks are reached.

    Returns ``(best_size, picks, nodes, timed_out)`` with picks as
    ``(family_index, edge_index)`` pairs.
    """
    masks = [
        [_edge_mask(edge) for edge in family] for family in fam_vertex_ids
    ]
    m = len(masks)
    state = {
        "best": -1,
        "best_picks": [],
        "nodes": 0,
        "stop": False,
        "timed_out": False,
    }
    t0 = perf_counter()
    picks = []

    def search(occ, active):
        state["nodes"] += 1
        if time_limit is not None and (state["nodes"] & 1023) == 0:
            if perf_counter() - t0 > time_limit:
                state["timed_out"] = True
        if state["timed_out"]:
            return
        if len(picks) > state["best"]:
            state["best"] = len(picks)
            state["best_picks"] = picks.copy()
            if state["best"] >= target:
                state["stop"] = True
                return
        live = []
        branch_fam = -1
        branch_count = 0
        for fam in active:
            count = 0
            for mask in masks[fam]:
                if not mask & occ:
                    count += 1
            if count:
                live.append(fam)
                if branch_fam < 0 or count < branch_count:
                    branch_fam = fam
                    branch_count = count
        if len(picks) + len(live) <= state["best"]:
            return
        rest = [fam for fam in live if fam != branch_fam]
        for ei, mask in enumerate(masks[branch_fam]):
            if mask & occ:
                continue
            picks.append((branch_fam, ei))
            search(occ | mask, rest)
            picks.pop()
            if state["stop"] or state["timed_out"]:
                return
        search(occ, rest)

    search(0, list(range(m)))
    return (
        max(state["best"], 0),
        list(state["best_picks"]),
        state["nodes"],
        state["timed_out"],
    )


def _edge_mask(vertex_ids):
    mask = 0
    for v in vertex_ids:
        mask |= 1 << v
    return mask


def solve_transversal(cells, n, target):
    """Exact maximum partial transversal of an order-``n`` square.

    ``cells`` is a flat row-major list of 0-based symbols.  Rows are
    processed in order; per row the candidate columns are tried ascending,
    then the skip-row branch.  Stops early once ``target`` cells are picked.

    Returns ``(best_size, picks, nodes)`` with picks as (row, col) pairs.
    """
    state = {"best": -1, "best_picks": [], "nodes": 0, "stop": False}
    picks = []

    def search(row, col_mask, sym_mask):
        state["nodes"] += 1
        if len(picks) > state["best"]:
            state["best"] = len(picks)
            state["best_picks"] = picks.copy()
            if state["best"] >= target:
                state["stop"] = True
                return
        if row == n or len(picks) + (n - row) <= state["best"]:
            return
        base = row * n
        for col in range(n):
            if col_mask & (1 << col):
                continue
            sym = cells[base + col]
            if sym_mask & (1 << sym):
                continue
            picks.append((row, col))
            search(row + 1, col_mask | (1 << col), sym_mask | (1 << sym))
            picks.pop()
            if state["stop"]:
                return
        search(row + 1, col_mask, sym_mask)

    search(0, 0, 0)
    return max(state["best"], 0), list(state["best_picks"]), state["nodes"]
