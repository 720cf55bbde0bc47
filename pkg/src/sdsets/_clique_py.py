"""Pure-Python branch-and-bound maximum clique kernel (bitset MCQ).

Vertices are ``0..nv-1``; ``adj[v]`` is an int bitset of neighbours.  The
greedy colouring bound and the branching order are identical to the Cython
kernel in ``_clique_cy.pyx``, so both return the same clique.
"""


def max_clique_kernel(adj, cand, lower, target, budget):
    """Largest clique inside the vertex bitset ``cand`` with size > ``lower``.

    Stops early once a clique of size ``target`` is found (``target <= 0``
    disables this).  ``budget`` caps the number of node expansions.

    Returns ``(clique, expansions, complete)``; ``clique`` is ``[]`` when
    nothing larger than ``lower`` exists (or was found before the budget ran
    out), and ``complete`` is False iff the budget was exhausted.
    """
    best = [lower]
    best_clique = [[]]
    expansions = [0]
    state = [False, False]  # aborted, done
    clique = []

    def expand(P):
        expansions[0] += 1
        if expansions[0] > budget:
            state[0] = True
            return
        kmin = best[0] - len(clique)
        order, colors = [], []
        U = P
        k = 0
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U &= ~low
                Q &= ~low
                Q &= ~adj[v]
                if k > kmin:
                    order.append(v)
                    colors.append(k)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colors[i] <= best[0]:
                return
            v = order[i]
            clique.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(clique) > best[0]:
                best[0] = len(clique)
                best_clique[0] = clique[:]
                if 0 < target <= best[0]:
                    state[1] = True
            clique.pop()
            P &= ~(1 << v)
            if state[0] or state[1]:
                return

    if cand:
        expand(cand)
    return best_clique[0], expansions[0], not state[0]
