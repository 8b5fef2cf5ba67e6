"""Domain types and instance-level operations for partite multihypergraphs.

Conventions used throughout the package:

* Sides are positional: side ``j`` of an ``r``-partite universe supplies
  coordinate ``j`` of every edge.  Vertices are 0-based indices per side.
* An edge is a plain tuple of ``r`` ints, one vertex per side.
* Families are ordered lists of edges with multiset semantics: an edge may
  be repeated within a family and may recur across families.  Each repeat
  is a distinct edge occurrence.

All types are immutable after construction and safe to share between
concurrent workers; every operation here is a pure function.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Edge = tuple  # an edge is a tuple of r vertex indices

INSTANCE_FORMAT = "rainbow-instance/1"


class InstanceFormatError(ValueError):
    """Strict instance-file parse failure (schema, types, or bad data)."""


def _as_int(value, what):
    # bool is an int subclass; the wire format wants real integers
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class PartiteHypergraph:
    """Vertex universe: ``r`` sides with the given number of vertices each."""

    r: int
    side_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "side_sizes", tuple(int(s) for s in self.side_sizes))
        if self.r < 2:
            raise ValueError(f"need at least 2 sides, got r={self.r}")
        if len(self.side_sizes) != self.r:
            raise ValueError(
                f"side_sizes has {len(self.side_sizes)} entries for r={self.r}"
            )
        if any(s < 1 for s in self.side_sizes):
            raise ValueError("every side needs at least one vertex")

    @property
    def total_vertices(self) -> int:
        return sum(self.side_sizes)


def _edges_meet(e, f) -> bool:
    # tolerant positional check (compares the shared prefix on arity skew),
    # so derived flags can be computed even for structurally invalid input
    return any(a == b for a, b in zip(e, f))


def edges_disjoint(e: Edge, f: Edge) -> bool:
    """True iff the two edges share no vertex (equal coordinate, same side)."""
    if len(e) != len(f):
        raise ValueError(f"arity mismatch: {len(e)} vs {len(f)}")
    return not _edges_meet(e, f)


def _family_is_matching(edges) -> bool:
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if _edges_meet(edges[i], edges[j]):
                return False
    return True


@dataclass(frozen=True)
class EdgeFamilySystem:
    """Ordered edge families over a shared partite vertex universe.

    ``is_matching[i]`` is derived at construction: true iff family ``i``'s
    edges are pairwise disjoint.  Families are not required to be matchings;
    :func:`validate_instance` reports only structural violations.
    """

    universe: PartiteHypergraph
    families: tuple[tuple[Edge, ...], ...]
    is_matching: tuple[bool, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        fams = tuple(
            tuple(tuple(int(c) for c in edge) for edge in family)
            for family in self.families
        )
        object.__setattr__(self, "families", fams)
        object.__setattr__(
            self, "is_matching", tuple(_family_is_matching(f) for f in fams)
        )

    @property
    def m(self) -> int:
        """Number of families."""
        return len(self.families)

    @property
    def r(self) -> int:
        return self.universe.r

    @property
    def side_sizes(self) -> tuple[int, ...]:
        return self.universe.side_sizes

    def total_edge_occurrences(self) -> int:
        return sum(len(f) for f in self.families)


def make_system(side_sizes: Sequence[int], families: Iterable[Iterable[Edge]]) -> EdgeFamilySystem:
    """Convenience constructor from side sizes and nested edge iterables."""
    sizes = tuple(side_sizes)
    return EdgeFamilySystem(
        PartiteHypergraph(len(sizes), sizes),
        tuple(tuple(tuple(e) for e in fam) for fam in families),
    )


@dataclass(frozen=True)
class RainbowSelection:
    """Partial injective choice family -> edge occurrence.

    ``picks`` holds ``(family_index, edge_index)`` pairs.  The invariants
    (distinct families, valid indices, pairwise-disjoint edges) are checked
    against a system by :func:`validate_selection`.
    """

    picks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "picks", tuple((int(f), int(e)) for f, e in self.picks)
        )

    def __len__(self) -> int:
        return len(self.picks)

    def families(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.picks)

    def edges(self, sys: EdgeFamilySystem) -> tuple[Edge, ...]:
        return tuple(sys.families[f][e] for f, e in self.picks)


def validate_instance(sys: EdgeFamilySystem) -> list[str]:
    """Return every structural violation; an empty list means valid.

    Violations are data, not failures: wrong edge arity and out-of-range
    coordinates are reported per edge occurrence.  Whether each family is a
    matching is classified separately via ``sys.is_matching``.
    """
    violations = []
    r = sys.universe.r
    sizes = sys.universe.side_sizes
    for fi, family in enumerate(sys.families):
        for ei, edge in enumerate(family):
            if len(edge) != r:
                violations.append(
                    f"family {fi} edge {ei}: arity {len(edge)} != r={r}"
                )
                continue
            for side, coord in enumerate(edge):
                if not 0 <= coord < sizes[side]:
                    violations.append(
                        f"family {fi} edge {ei}: coordinate {coord} outside "
                        f"side {side} range [0, {sizes[side]})"
                    )
    return violations


def validate_selection(sys: EdgeFamilySystem, sel: RainbowSelection) -> bool:
    """True iff all RainbowSelection invariants hold against ``sys``."""
    fams = [f for f, _ in sel.picks]
    if len(set(fams)) != len(fams):
        return False
    for f, e in sel.picks:
        if not 0 <= f < sys.m:
            return False
        if not 0 <= e < len(sys.families[f]):
            return False
    edges = sel.edges(sys)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if len(edges[i]) != len(edges[j]) or _edges_meet(edges[i], edges[j]):
                return False
    return True


def _check_perm(perm, size, what):
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(size)):
        raise ValueError(f"{what} is not a permutation of range({size})")
    return perm


def relabel(
    sys: EdgeFamilySystem,
    side_perms: Sequence[Sequence[int]],
    family_perm: Sequence[int],
) -> EdgeFamilySystem:
    """Rename vertices within each side and reorder families.

    ``side_perms[j][v]`` is the new index of vertex ``v`` in side ``j``;
    family ``i`` moves to position ``family_perm[i]``.
    """
    if len(side_perms) != sys.universe.r:
        raise ValueError(f"need {sys.universe.r} side permutations")
    perms = [
        _check_perm(p, sys.universe.side_sizes[j], f"side {j} permutation")
        for j, p in enumerate(side_perms)
    ]
    fperm = _check_perm(family_perm, sys.m, "family permutation")
    new_families = [None] * sys.m
    for i, family in enumerate(sys.families):
        new_families[fperm[i]] = tuple(
            tuple(perms[j][c] for j, c in enumerate(edge)) for edge in family
        )
    return EdgeFamilySystem(sys.universe, tuple(new_families))


def pad_families(sys: EdgeFamilySystem, p: int) -> EdgeFamilySystem:
    """Extend every side by ``p`` fresh vertices and append to every family
    the same matching of ``p`` fresh pairwise-disjoint edges."""
    if p < 0:
        raise ValueError("padding must be non-negative")
    if p == 0:
        return sys
    old = sys.universe.side_sizes
    universe = PartiteHypergraph(sys.universe.r, tuple(s + p for s in old))
    pad = tuple(tuple(old[j] + i for j in range(sys.universe.r)) for i in range(p))
    return EdgeFamilySystem(
        universe, tuple(tuple(fam) + pad for fam in sys.families)
    )


@dataclass(frozen=True)
class IsrInstance:
    """Conflict graph + class partition: independent-transversal form.

    One vertex per (family, edge occurrence); vertices are adjacent iff the
    edges intersect; classes are the families.  Independent partial
    transversals of the classes correspond to rainbow selections of equal
    size in the source system.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "adjacency", tuple(tuple(ns) for ns in self.adjacency)
        )
        object.__setattr__(self, "classes", tuple(tuple(c) for c in self.classes))
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length != vertex count")
        seen = [v for cls in self.classes for v in cls]
        if sorted(seen) != list(range(self.vertex_count)):
            raise ValueError("classes do not partition the vertex set")
        for u, neigh in enumerate(self.adjacency):
            for v in neigh:
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if u not in self.adjacency[v]:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        vset = set(vs)
        return all(not vset.intersection(self.adjacency[v]) for v in vs)


def to_line_graph(sys: EdgeFamilySystem) -> IsrInstance:
    """Line-graph view: rainbow selections become independent transversals."""
    flat = [
        (fi, edge) for fi, family in enumerate(sys.families) for edge in family
    ]
    n = len(flat)
    adjacency = [[] for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if _edges_meet(flat[u][1], flat[v][1]):
                adjacency[u].append(v)
                adjacency[v].append(u)
    classes = []
    start = 0
    for family in sys.families:
        classes.append(tuple(range(start, start + len(family))))
        start += len(family)
    return IsrInstance(n, tuple(tuple(a) for a in adjacency), tuple(classes))


def degrees(sys: EdgeFamilySystem) -> tuple[tuple[int, ...], ...]:
    """Multiset-counted vertex degrees over all families, per side."""
    out = [[0] * s for s in sys.universe.side_sizes]
    for family in sys.families:
        for edge in family:
            for side, coord in enumerate(edge):
                out[side][coord] += 1
    return tuple(tuple(side) for side in out)


def max_degree(sys: EdgeFamilySystem) -> int:
    return max(d for side in degrees(sys) for d in side)


# -- instance interchange format (rainbow-instance/1) -----------------------

def instance_to_dict(sys: EdgeFamilySystem) -> dict:
    return {
        "format": INSTANCE_FORMAT,
        "r": sys.universe.r,
        "side_sizes": list(sys.universe.side_sizes),
        "families": [[list(edge) for edge in family] for family in sys.families],
    }


def instance_from_dict(obj) -> EdgeFamilySystem:
    """Strict parse: exact key set, exact types, fully valid instance."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    expected = {"format", "r", "side_sizes", "families"}
    unknown = set(obj) - expected
    if unknown:
        raise InstanceFormatError(f"unknown fields: {sorted(unknown)}")
    missing = expected - set(obj)
    if missing:
        raise InstanceFormatError(f"missing fields: {sorted(missing)}")
    if obj["format"] != INSTANCE_FORMAT:
        raise InstanceFormatError(f"unsupported format {obj['format']!r}")
    r = _as_int(obj["r"], "r")
    sizes = obj["side_sizes"]
    if not isinstance(sizes, list):
        raise InstanceFormatError("side_sizes must be a list")
    sizes = [_as_int(s, "side size") for s in sizes]
    if not isinstance(obj["families"], list):
        raise InstanceFormatError("families must be a list")
    families = []
    for fi, family in enumerate(obj["families"]):
        if not isinstance(family, list):
            raise InstanceFormatError(f"family {fi} must be a list")
        edges = []
        for ei, edge in enumerate(family):
            if not isinstance(edge, list):
                raise InstanceFormatError(f"family {fi} edge {ei} must be a list")
            edges.append(
                tuple(_as_int(c, f"family {fi} edge {ei} coordinate") for c in edge)
            )
        families.append(tuple(edges))
    try:
        universe = PartiteHypergraph(r, tuple(sizes))
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc
    sys = EdgeFamilySystem(universe, tuple(families))
    violations = validate_instance(sys)
    if violations:
        raise InstanceFormatError("; ".join(violations))
    return sys


def dumps_instance(sys: EdgeFamilySystem) -> str:
    return json.dumps(instance_to_dict(sys), sort_keys=True, separators=(",", ":"))


def loads_instance(text: str) -> EdgeFamilySystem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(obj)


def save_instance(sys: EdgeFamilySystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(sys))
        fh.write("\n")


def load_instance(path) -> EdgeFamilySystem:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())
