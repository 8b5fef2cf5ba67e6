"""Exact and heuristic rainbow-matching computation.

``max_rainbow`` is the central exact solver (branch and bound, deterministic
branching).  ``oracle_max_rainbow`` is its independent correctness oracle:
plain exhaustive enumeration sharing no search code with the solver.
``max_matching`` computes the hypergraph matching number over the pooled
edges.  ``good_edges`` implements the 3-partite good-edge diagnostic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from time import perf_counter

from . import _backend
from .core import (
    EdgeFamilySystem,
    RainbowSelection,
    _edges_meet,
    edges_disjoint,
    validate_instance,
    validate_selection,
)

RESULT_FORMAT = "rainbow-result/1"

ORACLE_PRODUCT_LIMIT = 10**7

STATUS_OPTIMAL = "optimal"
STATUS_TIMEOUT = "timeout"


class SolveTimeout(RuntimeError):
    """A time-limited solve ran out before proving optimality."""


class OracleInfeasible(RuntimeError):
    """Instance exceeds the exhaustive oracle's enumeration guard."""


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solve.

    With status ``"timeout"`` the reported size is only the best lower
    bound found; it is never silently presented as optimal.
    """

    optimal_size: int
    selection: RainbowSelection
    full: bool
    nodes_explored: int
    elapsed: float
    status: str = STATUS_OPTIMAL


@dataclass(frozen=True)
class MatchingResult:
    """Exact matching number of the pooled edge multiset, with witness."""

    size: int
    edges: tuple
    nodes_explored: int
    elapsed: float
    status: str = STATUS_OPTIMAL


def _require_valid(sys: EdgeFamilySystem) -> None:
    violations = validate_instance(sys)
    if violations:
        raise ValueError("invalid instance: " + "; ".join(violations))


def _vertex_ids(sys: EdgeFamilySystem):
    offsets = []
    total = 0
    for s in sys.universe.side_sizes:
        offsets.append(total)
        total += s
    fams = [
        [tuple(offsets[j] + c for j, c in enumerate(edge)) for edge in family]
        for family in sys.families
    ]
    return fams, total


def max_rainbow(
    sys: EdgeFamilySystem, time_limit: float | None = None, target: int | None = None
) -> SolveResult:
    """Exact maximum partial rainbow selection.

    Deterministic: branches on the unrepresented family with the fewest
    currently-disjoint candidates (ties by lowest index), candidates in
    stored order.  ``target`` stops the search early once a selection of
    that size is found (defaults to the family count, i.e. provable
    optimality).  On timeout the result carries the best-so-far size with
    status ``"timeout"``.
    """
    _require_valid(sys)
    fams, total = _vertex_ids(sys)
    goal = sys.m if target is None else min(target, sys.m)
    t0 = perf_counter()
    best, picks, nodes, timed_out = _backend.solve_rainbow(
        fams, total, goal, time_limit
    )
    elapsed = perf_counter() - t0
    return SolveResult(
        optimal_size=best,
        selection=RainbowSelection(tuple(picks)),
        full=best == sys.m,
        nodes_explored=nodes,
        elapsed=elapsed,
        status=STATUS_TIMEOUT if timed_out else STATUS_OPTIMAL,
    )


def oracle_max_rainbow(sys: EdgeFamilySystem) -> SolveResult:
    """Exhaustive enumeration of every partial selection.

    Independent oracle for ``max_rainbow``: no shared search code, no
    pruning; each family contributes "skip" or one of its edges and every
    combination is checked by pairwise disjointness.
    """
    _require_valid(sys)
    product = 1
    for family in sys.families:
        product *= len(family) + 1
        if product > ORACLE_PRODUCT_LIMIT:
            raise OracleInfeasible(
                f"selection space exceeds {ORACLE_PRODUCT_LIMIT} combinations"
            )
    t0 = perf_counter()
    options = [[None] + list(range(len(f))) for f in sys.families]
    best = -1
    best_picks = ()
    checked = 0
    for combo in itertools.product(*options):
        checked += 1
        picks = [(fi, ei) for fi, ei in enumerate(combo) if ei is not None]
        if len(picks) <= best:
            continue
        edges = [sys.families[fi][ei] for fi, ei in picks]
        if all(
            edges_disjoint(a, b) for a, b in itertools.combinations(edges, 2)
        ):
            best = len(picks)
            best_picks = tuple(picks)
    elapsed = perf_counter() - t0
    best = max(best, 0)
    return SolveResult(
        optimal_size=best,
        selection=RainbowSelection(best_picks),
        full=best == sys.m,
        nodes_explored=checked,
        elapsed=elapsed,
        status=STATUS_OPTIMAL,
    )


def has_full_rainbow(sys: EdgeFamilySystem, time_limit: float | None = None) -> bool:
    """True iff a full rainbow selection exists (early exit on witness)."""
    res = max_rainbow(sys, time_limit=time_limit)
    if res.status == STATUS_TIMEOUT and not res.full:
        raise SolveTimeout(
            f"inconclusive after timeout (best found: {res.optimal_size})"
        )
    return res.full


def greedy_rainbow(sys: EdgeFamilySystem) -> RainbowSelection:
    """Greedy pass in family order: first stored edge disjoint from all
    picks so far, else skip the family."""
    _require_valid(sys)
    picks = []
    edges = []
    for fi, family in enumerate(sys.families):
        for ei, edge in enumerate(family):
            if all(not _edges_meet(edge, used) for used in edges):
                picks.append((fi, ei))
                edges.append(edge)
                break
    return RainbowSelection(tuple(picks))


def augment_local(
    sys: EdgeFamilySystem, sel: RainbowSelection, chain_depth: int = 3
) -> RainbowSelection:
    """Grow a selection by direct extensions and bounded alternating swaps.

    Repeatedly represents an unrepresented family either with an edge
    disjoint from all picks, or by displacing exactly one conflicting pick
    and re-representing the displaced family, chaining up to
    ``chain_depth`` swaps.  The result never shrinks and each accepted
    chain grows the selection by one, so the loop terminates.
    """
    _require_valid(sys)
    if not validate_selection(sys, sel):
        raise ValueError("invalid selection")
    picks = dict(sel.picks)

    def try_represent(fam: int, depth: int) -> bool:
        for ei, edge in enumerate(sys.families[fam]):
            hit = [
                other
                for other in sorted(picks)
                if _edges_meet(edge, sys.families[other][picks[other]])
            ]
            if not hit:
                picks[fam] = ei
                return True
            if depth < chain_depth and len(hit) == 1:
                other = hit[0]
                saved = picks.pop(other)
                picks[fam] = ei
                if try_represent(other, depth + 1):
                    return True
                del picks[fam]
                picks[other] = saved
        return False

    improved = True
    while improved:
        improved = False
        for fam in range(sys.m):
            if fam not in picks and try_represent(fam, 0):
                improved = True
    return RainbowSelection(tuple(sorted(picks.items())))


def max_matching(
    sys: EdgeFamilySystem, time_limit: float | None = None
) -> MatchingResult:
    """Exact matching number over the multiset union of all families.

    Family structure is ignored: every edge occurrence becomes its own
    singleton family and the rainbow kernel packs them, which reduces to
    ordered include/exclude branch and bound over the pooled edges.
    """
    _require_valid(sys)
    pool = [edge for family in sys.families for edge in family]
    pooled = EdgeFamilySystem(
        sys.universe, tuple((edge,) for edge in pool)
    )
    fams, total = _vertex_ids(pooled)
    t0 = perf_counter()
    best, picks, nodes, timed_out = _backend.solve_rainbow(
        fams, total, len(pool), time_limit
    )
    elapsed = perf_counter() - t0
    witness = tuple(pool[fi] for fi, _ in picks)
    return MatchingResult(
        size=best,
        edges=witness,
        nodes_explored=nodes,
        elapsed=elapsed,
        status=STATUS_TIMEOUT if timed_out else STATUS_OPTIMAL,
    )


@dataclass(frozen=True)
class GoodEdgeReport:
    """Good-edge diagnostic for a selection in a 3-partite system.

    For every family ``j`` not represented in the selection, ``good_for[j]``
    lists the selection's pick families whose edges are good for family
    ``j``: at least two distinct edge occurrences of family ``j`` meet the
    pick edge and each meets the selection's vertex set in exactly one
    vertex.  ``distinct_good_for`` applies the same test counting distinct
    edge values instead of occurrences; the two differ only when a family
    repeats edges.
    """

    represented: tuple[int, ...]
    unrepresented: tuple[int, ...]
    good_for: dict
    distinct_good_for: dict


def good_edges(sys: EdgeFamilySystem, sel: RainbowSelection) -> GoodEdgeReport:
    """Classify selection edges as good for each unrepresented family."""
    if sys.universe.r != 3:
        raise ValueError("good-edge diagnostic is defined for 3-partite systems")
    _require_valid(sys)
    if not validate_selection(sys, sel):
        raise ValueError("invalid selection")
    selected = {fi: sys.families[fi][ei] for fi, ei in sel.picks}
    used = {(side, c) for edge in selected.values() for side, c in enumerate(edge)}
    represented = tuple(sorted(selected))
    unrepresented = tuple(f for f in range(sys.m) if f not in selected)

    good_for = {}
    distinct_good_for = {}
    for j in unrepresented:
        hits_one = [
            edge
            for edge in sys.families[j]
            if sum((side, c) in used for side, c in enumerate(edge)) == 1
        ]
        occ_good = []
        val_good = []
        for fi in represented:
            pick_edge = selected[fi]
            touching = [e for e in hits_one if _edges_meet(e, pick_edge)]
            if len(touching) >= 2:
                occ_good.append(fi)
            if len(set(touching)) >= 2:
                val_good.append(fi)
        good_for[j] = tuple(occ_good)
        distinct_good_for[j] = tuple(val_good)
    return GoodEdgeReport(represented, unrepresented, good_for, distinct_good_for)


# -- result interchange format (rainbow-result/1) ---------------------------

def result_to_dict(res: SolveResult, include_timing: bool = False) -> dict:
    """Wire form of a solve result.

    Timing is volatile, so ``elapsed_ms`` is reported as 0 unless timing is
    explicitly requested; this keeps identical runs byte-identical.
    """
    return {
        "format": RESULT_FORMAT,
        "optimal_size": res.optimal_size,
        "full": res.full,
        "selection": [
            {"family": f, "edge_index": e} for f, e in res.selection.picks
        ],
        "status": res.status,
        "nodes_explored": res.nodes_explored,
        "elapsed_ms": int(res.elapsed * 1000) if include_timing else 0,
    }


def dumps_result(res: SolveResult, include_timing: bool = False) -> str:
    return json.dumps(
        result_to_dict(res, include_timing), sort_keys=True, separators=(",", ":")
    )
