# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled labeled BFS over a precomputed transition table."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, INT64_MAX


def labeled_bfs(trans, perm_next, long long start_state, long long start_perm,
                long long identity_perm, long long budget):
    cdef int64_t[:, ::1] tr = np.ascontiguousarray(trans, dtype=np.int64)
    cdef int64_t[:, ::1] pn = np.ascontiguousarray(perm_next, dtype=np.int64)
    cdef int64_t n_states = tr.shape[0]
    cdef int64_t n_gens = tr.shape[1]
    cdef int64_t n_perms = pn.shape[0]
    if n_perms and n_states > INT64_MAX // n_perms:
        raise OverflowError("state space does not fit in int64")
    cdef int64_t size = n_states * n_perms
    seen_arr = np.zeros(size, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_arr
    cap = min(size, budget + 1)
    queue_arr = np.empty(max(cap, 1), dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t head = 0, tail = 0
    cdef int64_t code, s, p, g, c, np_
    cdef int64_t total = 1
    cdef int64_t length = 1 if start_perm == identity_perm else 0
    code = start_state * n_perms + start_perm
    seen[code] = 1
    queue[tail] = code
    tail += 1
    while head < tail:
        code = queue[head]
        head += 1
        s = code // n_perms
        p = code - s * n_perms
        for g in range(n_gens):
            np_ = pn[p, g]
            c = tr[s, g] * n_perms + np_
            if not seen[c]:
                seen[c] = 1
                total += 1
                if np_ == identity_perm:
                    length += 1
                if total > budget:
                    return total, length, False, True
                queue[tail] = c
                tail += 1
    cdef bint closed = True
    for code in range(size):
        if not seen[code]:
            continue
        s = code // n_perms
        p = code - s * n_perms
        for g in range(n_gens):
            if not seen[tr[s, g] * n_perms + pn[p, g]]:
                closed = False
                break
        if not closed:
            break
    return total, length, closed, False


from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdint cimport int32_t


cdef inline void _cell_key(const int32_t[:, ::1] mul, const int32_t[::1] tid,
                           const int32_t[:, ::1] cells, const int32_t[::1] cell_len,
                           const int32_t[::1] ids, const int32_t[::1] pkey,
                           const int32_t[::1] cmap, bint has_parent,
                           int32_t[::1] out) noexcept nogil:
    cdef Py_ssize_t c, j, nc = cells.shape[0]
    cdef int32_t acc, src
    for c in range(nc):
        if has_parent:
            src = cmap[c]
            if src >= 0:
                out[c] = pkey[src]
                continue
        acc = ids[cells[c, 0]]
        for j in range(1, cell_len[c]):
            acc = mul[acc, ids[cells[c, j]]]
        out[c] = tid[acc]


def class_bfs(mul, inv, trace_id, cells, cell_len, cmaps, gen_pq, start, long long budget):
    cdef const int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const int32_t[::1] INV = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const int32_t[::1] TID = np.ascontiguousarray(trace_id, dtype=np.int32)
    cdef const int32_t[:, ::1] CELLS = np.ascontiguousarray(cells, dtype=np.int32)
    cdef const int32_t[::1] CLEN = np.ascontiguousarray(cell_len, dtype=np.int32)
    cdef const int32_t[:, ::1] CMAP = np.ascontiguousarray(cmaps, dtype=np.int32)
    cdef const int32_t[:, ::1] GPQ = np.ascontiguousarray(gen_pq, dtype=np.int32)
    cdef Py_ssize_t n = len(start), nc = CELLS.shape[0], ng = GPQ.shape[0]
    cdef Py_ssize_t cap = 1024
    wit_arr = np.zeros((cap, n), dtype=np.int32)
    key_arr = np.zeros((cap, nc), dtype=np.int32)
    tr_arr = np.zeros((cap, ng), dtype=np.int64)
    cdef int32_t[:, ::1] W = wit_arr
    cdef int32_t[:, ::1] K = key_arr
    cdef int64_t[:, ::1] T = tr_arr
    new_arr = np.zeros(n, dtype=np.int32)
    ck_arr = np.zeros(nc, dtype=np.int32)
    cdef int32_t[::1] NEW = new_arr
    cdef int32_t[::1] CK = ck_arr
    cdef dict index = {}
    cdef Py_ssize_t head = 0, count = 1, g, i, p, q, c
    cdef int32_t mp, mq
    for i in range(n):
        W[0, i] = start[i]
    _cell_key(M, TID, CELLS, CLEN, W[0], K[0], CMAP[0], False, K[0])
    index[PyBytes_FromStringAndSize(<char*>&K[0, 0], nc * 4)] = 0
    while head < count:
        for g in range(ng):
            for i in range(n):
                NEW[i] = W[head, i]
            p = GPQ[g, 0]
            q = GPQ[g, 1]
            mp = W[head, p]
            mq = W[head, q]
            if GPQ[g, 2]:
                NEW[p] = M[M[mp, mq], INV[mp]]
                NEW[q] = mp
            else:
                NEW[p] = mq
                NEW[q] = M[M[INV[mq], mp], mq]
            _cell_key(M, TID, CELLS, CLEN, NEW, K[head], CMAP[g], True, CK)
            kb = PyBytes_FromStringAndSize(<char*>&CK[0], nc * 4)
            found = index.get(kb)
            if found is None:
                if count >= budget:
                    return wit_arr[:count], key_arr[:count], tr_arr[:head], True
                if count == cap:
                    cap *= 2
                    wit_arr = np.resize(wit_arr, (cap, n))
                    key_arr = np.resize(key_arr, (cap, nc))
                    tr_arr = np.resize(tr_arr, (cap, ng))
                    W = wit_arr
                    K = key_arr
                    T = tr_arr
                c = count
                index[kb] = c
                for i in range(n):
                    W[c, i] = NEW[i]
                for i in range(nc):
                    K[c, i] = CK[i]
                count += 1
            else:
                c = found
            T[head, g] = c
        head += 1
    return wit_arr[:count], key_arr[:count], tr_arr[:count], False
