# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of ``_clique_py.max_clique_kernel`` on uint64 word bitsets."""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memcpy
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef struct State:
    int nv
    int W
    uint64_t* adj
    int* clique
    int csize
    int best
    int* best_clique
    int best_size
    int target
    long long budget
    long long expansions
    bint aborted
    bint done


cdef void expand(State* st, uint64_t* P) noexcept nogil:
    cdef int W = st.W
    cdef int w, ww, bit, v, k, kmin, count, i
    cdef bint nonempty, any_left
    cdef uint64_t* adjv
    st.expansions += 1
    if st.expansions > st.budget:
        st.aborted = True
        return
    cdef uint64_t* U = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* Q = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* newP = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef int* order = <int*> malloc(st.nv * sizeof(int))
    cdef int* colors = <int*> malloc(st.nv * sizeof(int))
    memcpy(U, P, W * sizeof(uint64_t))
    kmin = st.best - st.csize
    count = 0
    k = 0
    while True:
        any_left = False
        for w in range(W):
            if U[w]:
                any_left = True
                break
        if not any_left:
            break
        k += 1
        memcpy(Q, U, W * sizeof(uint64_t))
        for w in range(W):
            while Q[w]:
                bit = __builtin_ctzll(Q[w])
                v = w * 64 + bit
                U[w] &= ~((<uint64_t> 1) << bit)
                Q[w] &= ~((<uint64_t> 1) << bit)
                adjv = st.adj + v * W
                for ww in range(w, W):
                    Q[ww] &= ~adjv[ww]
                if k > kmin:
                    order[count] = v
                    colors[count] = k
                    count += 1
    i = count - 1
    while i >= 0:
        if st.csize + colors[i] <= st.best:
            break
        v = order[i]
        st.clique[st.csize] = v
        st.csize += 1
        adjv = st.adj + v * W
        nonempty = False
        for w in range(W):
            newP[w] = P[w] & adjv[w]
            if newP[w]:
                nonempty = True
        if nonempty:
            expand(st, newP)
        elif st.csize > st.best:
            st.best = st.csize
            st.best_size = st.csize
            memcpy(st.best_clique, st.clique, st.csize * sizeof(int))
            if 0 < st.target <= st.best:
                st.done = True
        st.csize -= 1
        P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
        if st.aborted or st.done:
            break
        i -= 1
    free(U)
    free(Q)
    free(newP)
    free(order)
    free(colors)


def max_clique_kernel(adj, cand, int lower, int target, long long budget):
    """Same contract as ``_clique_py.max_clique_kernel``."""
    cdef int nv = len(adj)
    cdef int W = max(1, (nv + 63) // 64)
    cdef int v, w
    cdef State st
    cdef uint64_t mask = 0xFFFFFFFFFFFFFFFF
    st.nv = nv
    st.W = W
    st.adj = <uint64_t*> calloc(max(nv, 1) * W, sizeof(uint64_t))
    st.clique = <int*> malloc((nv + 1) * sizeof(int))
    st.best_clique = <int*> malloc((nv + 1) * sizeof(int))
    cdef uint64_t* P = <uint64_t*> calloc(W, sizeof(uint64_t))
    try:
        for v in range(nv):
            bits = adj[v]
            for w in range(W):
                st.adj[v * W + w] = <uint64_t> ((bits >> (64 * w)) & mask)
        for w in range(W):
            P[w] = <uint64_t> ((cand >> (64 * w)) & mask)
        st.csize = 0
        st.best = lower
        st.best_size = 0
        st.target = target
        st.budget = budget
        st.expansions = 0
        st.aborted = False
        st.done = False
        if cand:
            with nogil:
                expand(&st, P)
        found = [st.best_clique[i] for i in range(st.best_size)]
        return found, st.expansions, not st.aborted
    finally:
        free(st.adj)
        free(st.clique)
        free(st.best_clique)
        free(P)
