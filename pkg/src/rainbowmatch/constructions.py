"""Generators for the extremal example systems used throughout the suite.

Every generator returns a plain ``EdgeFamilySystem``; optimal values are
never baked into the result object.  The one generator whose reading of its
source is ambiguous (``wanless``) verifies its own defining property and
raises ``ConstructionIntegrityError`` rather than silently emitting a wrong
instance.
"""

from __future__ import annotations

from .core import EdgeFamilySystem, PartiteHypergraph, make_system
from .solver import has_full_rainbow


class ConstructionIntegrityError(RuntimeError):
    """A generator's self-check failed; the emitted reading would be wrong."""


def standard(k: int) -> EdgeFamilySystem:
    """k-1 copies of the identity matching plus one cyclic shift.

    2-partite, sides of size k, k families of size k; the largest rainbow
    selection has size k-1 (no full one exists).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    identity = tuple((i, i) for i in range(k))
    shift = tuple((i, (i + 1) % k) for i in range(k))
    return make_system((k, k), [identity] * (k - 1) + [shift])


def wanless(m: int) -> EdgeFamilySystem:
    """Even k = 2m: all families of size k except one of size k+1, yet no
    full rainbow selection exists.

    Reading implemented (0-based): sides of size k+1;
    P = {(i, i) : i < k};
    Q = {(i, i+1) : i < k-1} plus the wrapped edge (k-2 -> 0 on the b side),
    i.e. a (k-1)-cycle shift on indices 0..k-2;
    families 1..m = P, families m+1..2m-1 = Q + {(k-1, k-1)},
    family 2m = Q + {(k-1, k), (k, k-1)}.

    The generator verifies the no-full-rainbow property and raises on
    failure instead of emitting a wrong instance.
    """
    if m < 2:
        raise ValueError("m must be at least 2 (k = 2m >= 4)")
    k = 2 * m
    p_edges = tuple((i, i) for i in range(k))
    q_edges = tuple((i, (i + 1) % (k - 1)) for i in range(k - 1))
    mid = q_edges + ((k - 1, k - 1),)
    last = q_edges + ((k - 1, k), (k, k - 1))
    sys = make_system(
        (k + 1, k + 1), [p_edges] * m + [mid] * (m - 1) + [last]
    )
    if has_full_rainbow(sys):
        raise ConstructionIntegrityError(
            f"wanless({m}): generated system admits a full rainbow selection"
        )
    return sys


def _canonical_subsets(r: int):
    # one representative per complement pair: subsets of {0..r-1} not
    # containing r-1
    for bits in range(1 << (r - 1)):
        yield bits


def boolean_cube(r: int) -> EdgeFamilySystem:
    """2^(r-1) matchings of size 2 in an r-partite universe with sides of
    size 2, with no rainbow selection of size 2.

    Family for subset T: the edge taking vertex 0 on the sides in T and
    vertex 1 elsewhere, paired with its coordinate-wise complement.  Each
    complement pair appears once (representatives omit the last side).
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    families = []
    for bits in _canonical_subsets(r):
        e = tuple(0 if bits >> i & 1 else 1 for i in range(r))
        f = tuple(1 - c for c in e)
        families.append((e, f))
    return make_system((2,) * r, families)


def g_upper(r: int) -> EdgeFamilySystem:
    """2^(r-2) disjoint copies of the boolean-cube gadget, recombined into
    k = 2^(r-1) matchings of size k whose largest rainbow selection has
    size 2^(r-2) (one edge per copy)."""
    if r < 3:
        raise ValueError("r must be at least 3")
    copies = 1 << (r - 2)
    families = []
    for bits in _canonical_subsets(r):
        edges = []
        for copy in range(copies):
            base = 2 * copy
            e = tuple(base + (0 if bits >> i & 1 else 1) for i in range(r))
            f = tuple(base + 1 - (c - base) for c in e)
            edges.append(e)
            edges.append(f)
        families.append(tuple(edges))
    return make_system((2 * copies,) * r, families)


def absz(k: int, q: int) -> EdgeFamilySystem:
    """k repeated row-matchings plus one family of copy-local "Latin" edges
    each of which meets every row edge of its copy; the largest rainbow
    selection has size k, never k+1.

    q-partite.  Copy i occupies vertices i*q..(i+1)*q-1 in every side; its
    row edge rho is constant at i*q+rho, and its Latin edge j takes
    i*q + ((j+c) mod q) in side c.  Families 1..k are copy i's q row edges
    repeated k times (size kq); family k+1 pools all Latin edges (size kq).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if q < 2:
        raise ValueError("q must be at least 2")
    families = []
    latin_family = []
    for i in range(k):
        rows = tuple(tuple(i * q + rho for _ in range(q)) for rho in range(q))
        families.append(rows * k)
        for j in range(q):
            latin_family.append(tuple(i * q + (j + c) % q for c in range(q)))
    families.append(tuple(latin_family))
    return make_system((k * q,) * q, families)


def drisko_sharp(k: int) -> EdgeFamilySystem:
    """2k-2 matchings of size k (k-1 identity copies, k-1 shift copies);
    the largest rainbow selection has size k-1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    identity = tuple((i, i) for i in range(k))
    shift = tuple((i, (i + 1) % k) for i in range(k))
    return make_system((k, k), [identity] * (k - 1) + [shift] * (k - 1))


FANO_BASE_EDGES = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def fano_multi(d: int) -> EdgeFamilySystem:
    """Fano plane minus a vertex, every edge repeated d/2 times: a single
    d-regular 3-partite family on sides of size 2 with matching number 1."""
    if d < 2 or d % 2:
        raise ValueError("d must be even and at least 2")
    family = FANO_BASE_EDGES * (d // 2)
    return make_system((2, 2, 2), [family])
