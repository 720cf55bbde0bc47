"""Maximum clique by branch and bound with a greedy-colouring bound.

The inner kernel is compiled (``_clique_cy``) when the extension was built
and falls back to ``_clique_py`` otherwise.  Set ``SDSETS_PURE_PYTHON=1`` to
force the fallback.  Both kernels expand nodes in the same order, so results
do not depend on which one runs.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Sequence

from . import _clique_py

try:
    from . import _clique_cy
except ImportError:  # extension not built
    _clique_cy = None

DEFAULT_BUDGET = 10_000_000

if _clique_cy is not None and not os.environ.get("SDSETS_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _clique_cy is not None else [])


def get_kernel(backend: str | None = None):
    backend = backend or BACKEND
    if backend == "cython":
        if _clique_cy is None:
            raise RuntimeError("compiled clique kernel is not available")
        return _clique_cy.max_clique_kernel
    if backend == "python":
        return _clique_py.max_clique_kernel
    raise ValueError(f"unknown backend {backend!r}")


@dataclass
class CliqueResult:
    size: int
    witness: list
    optimal: bool
    expansions: int
    canonical: bool
    backend: str


def degeneracy_order(adj: Sequence[set]) -> list[int]:
    """Vertices in min-degree removal order; ties go to the smallest index."""
    nv = len(adj)
    deg = [len(a - {v}) for v, a in enumerate(adj)]
    heap = [(deg[v], v) for v in range(nv)]
    heapq.heapify(heap)
    removed = [False] * nv
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if u != v and not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def max_clique(adj: Sequence[set], budget: int = DEFAULT_BUDGET,
               backend: str | None = None) -> CliqueResult:
    """Maximum clique of the graph with neighbour sets ``adj``.

    The witness is the lexicographically smallest maximum clique (as a sorted
    index list) whenever the search finishes within ``budget`` node
    expansions; ``optimal`` is False if the size itself is not proven.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    backend = backend or BACKEND
    kernel = get_kernel(backend)
    nv = len(adj)
    if nv == 0:
        return CliqueResult(0, [], True, 0, True, backend)

    # highest-core vertices get the lowest labels
    order = degeneracy_order(adj)[::-1]
    label = {v: i for i, v in enumerate(order)}
    bits = [0] * nv
    for v in range(nv):
        b = 0
        for u in adj[v]:
            if u != v:
                b |= 1 << label[u]
        bits[label[v]] = b
    everything = (1 << nv) - 1

    found, used, complete = kernel(bits, everything, 0, 0, budget)
    first = sorted(order[i] for i in found)
    size = len(first)
    if not complete:
        return CliqueResult(size, first, False, used, False, backend)

    # lexicographically smallest clique of that size, one vertex at a time
    chosen: list[int] = []
    cand = set(range(nv))
    remaining = budget - used
    for _ in range(size):
        need = size - len(chosen)
        pick = None
        for v in sorted(cand):
            rest = {u for u in adj[v] if u in cand and u > v}
            if len(rest) < need - 1:
                continue
            if need == 1:
                pick = v
                break
            sub = 0
            for u in rest:
                sub |= 1 << label[u]
            got, spent, done = kernel(bits, sub, need - 2, need - 1, max(remaining, 1))
            used += spent
            remaining -= spent
            if not done:
                return CliqueResult(size, first, True, used, False, backend)
            if len(got) >= need - 1:
                pick = v
                cand = rest
                break
        if pick is None:  # cannot happen: a clique of this size exists
            return CliqueResult(size, first, True, used, False, backend)
        chosen.append(pick)
        if need == 1:
            break
    return CliqueResult(size, chosen, True, used, True, backend)


def brute_force_max_clique(adj: Sequence[set]) -> tuple[int, list[int]]:
    """Exhaustive subset enumeration (<= ~22 vertices): size and smallest witness."""
    import numpy as np

    nv = len(adj)
    if nv == 0:
        return 0, []
    if nv > 24:
        raise ValueError("brute force is limited to 24 vertices")
    masks = [sum(1 << u for u in adj[v] if u != v) for v in range(nv)]
    is_clique = np.zeros(1 << nv, dtype=bool)
    is_clique[0] = True
    for v in range(nv):
        lo = np.arange(1 << v, dtype=np.int64)
        ok = is_clique[: 1 << v] & ((lo & ~masks[v] & ((1 << v) - 1)) == 0)
        is_clique[(1 << v): (1 << (v + 1))] = ok
    pop = np.zeros(1 << nv, dtype=np.int8)
    for v in range(nv):
        pop[(1 << v): (1 << (v + 1))] = pop[: 1 << v] + 1
    best = int(pop[is_clique].max())
    cands = np.nonzero(is_clique & (pop == best))[0]
    witness = min(tuple(i for i in range(nv) if (int(m) >> i) & 1) for m in cands)
    return best, list(witness)
