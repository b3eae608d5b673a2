# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled congruence enumeration kernel.

Step-for-step port of _tc_py.run: same class creation order, same
coincidence handling, same renumbering, so both kernels return
identical results.  See _tc_py for the procedure and the shared
status protocol.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

UNDEF = -1

STATUS_COMPLETE = 0
STATUS_CAPPED = 1
STATUS_WATCH_MERGED = 2

cdef int C_COMPLETE = 0
cdef int C_CAPPED = 1
cdef int C_WATCH_MERGED = 2


cdef struct State:
    int n_letters
    int n_classes
    int cap
    int max_classes
    long long steps
    long long max_steps
    int *parent
    int *table          # flat, row c starts at c * n_letters
    int *queue          # coincidence pairs, flat ring buffer
    long long q_head
    long long q_len
    long long q_cap     # in pairs


cdef inline int cfind(State *s, int c):
    while s.parent[c] != c:
        s.parent[c] = s.parent[s.parent[c]]
        c = s.parent[c]
    return c


cdef int new_class(State *s) except -2:
    # returns -1 when the class budget is exhausted
    cdef int cid = s.n_classes
    cdef int new_cap
    cdef int *p
    if cid >= s.max_classes:
        return -1
    if cid >= s.cap:
        new_cap = s.cap * 2
        p = <int *> realloc(s.parent, new_cap * sizeof(int))
        if p == NULL:
            raise MemoryError()
        s.parent = p
        p = <int *> realloc(s.table, (<size_t> new_cap) * s.n_letters * sizeof(int))
        if p == NULL:
            raise MemoryError()
        s.table = p
        s.cap = new_cap
    s.parent[cid] = cid
    if s.n_letters > 0:
        memset(s.table + (<size_t> cid) * s.n_letters, 0xFF,
               s.n_letters * sizeof(int))
    s.n_classes = cid + 1
    return cid


cdef int q_push(State *s, int a, int b) except -1:
    cdef int *p
    cdef long long i, src
    if s.q_len == s.q_cap:
        p = <int *> malloc(2 * s.q_cap * 2 * sizeof(int))
        if p == NULL:
            raise MemoryError()
        for i in range(s.q_len):
            src = ((s.q_head + i) % s.q_cap) * 2
            p[2 * i] = s.queue[src]
            p[2 * i + 1] = s.queue[src + 1]
        free(s.queue)
        s.queue = p
        s.q_head = 0
        s.q_cap = s.q_cap * 2
    cdef long long slot = ((s.q_head + s.q_len) % s.q_cap) * 2
    s.queue[slot] = a
    s.queue[slot + 1] = b
    s.q_len += 1
    return 0


cdef int trace_define(State *s, int c, int *word, int wlen) except -2:
    # returns -1 when capped
    cdef int i, a, t
    for i in range(wlen):
        s.steps += 1
        a = word[i]
        t = s.table[(<size_t> c) * s.n_letters + a]
        if t == -1:
            t = new_class(s)
            if t == -1:
                return -1
            s.table[(<size_t> c) * s.n_letters + a] = t
        else:
            t = cfind(s, t)
        c = t
    return c


cdef int coincide(State *s, int a, int b) except -1:
    cdef int u, v, k, t, w, fs, ft
    cdef size_t row_u, row_v
    q_push(s, a, b)
    while s.q_len > 0:
        u = s.queue[(s.q_head % s.q_cap) * 2]
        v = s.queue[(s.q_head % s.q_cap) * 2 + 1]
        s.q_head = (s.q_head + 1) % s.q_cap
        s.q_len -= 1
        u = cfind(s, u)
        v = cfind(s, v)
        if u == v:
            continue
        if v < u:
            w = u
            u = v
            v = w
        # smaller id survives, so class 0 is never displaced
        s.parent[v] = u
        row_v = (<size_t> v) * s.n_letters
        row_u = (<size_t> u) * s.n_letters
        for k in range(s.n_letters):
            s.steps += 1
            t = s.table[row_v + k]
            if t == -1:
                continue
            if s.table[row_u + k] == -1:
                s.table[row_u + k] = t
            else:
                fs = cfind(s, s.table[row_u + k])
                ft = cfind(s, t)
                if fs != ft:
                    q_push(s, fs, ft)
    return 0


cdef int scan(State *s, int c, int *lhs, int llen, int *rhs, int rlen) except -2:
    # returns 0 normally, 1 when capped
    cdef int p, q, d, last, t
    p = trace_define(s, c, lhs, llen)
    if p == -1:
        return 1
    if rlen == 0:
        q = cfind(s, c)
        if q != p:
            coincide(s, p, q)
        return 0
    d = trace_define(s, cfind(s, c), rhs, rlen - 1)
    if d == -1:
        return 1
    last = rhs[rlen - 1]
    s.steps += 1
    t = s.table[(<size_t> d) * s.n_letters + last]
    if t == -1:
        s.table[(<size_t> d) * s.n_letters + last] = p
    else:
        t = cfind(s, t)
        if t != p:
            coincide(s, t, p)
    return 0


cdef int trace_total(State *s, int c, int *word, int wlen):
    cdef int i
    for i in range(wlen):
        s.steps += 1
        c = cfind(s, s.table[(<size_t> c) * s.n_letters + word[i]])
    return c


def run(n_letters, relations, max_classes, max_steps, watch=None):
    """Enumerate the classes of the two-sided congruence.

    Same contract as _tc_py.run: relations are (lhs, rhs) pairs of
    letter-id tuples, watch is an optional pair of words, and the
    result is (status, table, watch_equal).
    """
    cdef State s
    cdef int n_rels = len(relations)
    cdef int *lhs_off = NULL
    cdef int *lhs_len = NULL
    cdef int *rhs_off = NULL
    cdef int *rhs_len = NULL
    cdef int *words = NULL
    cdef int *renum = NULL
    cdef int w1_off = 0, w1_len = 0, w2_off = 0, w2_len = 0
    cdef int w1 = -1, w2 = -1
    cdef int c_idx, k, t, r, rc, p, q, cid, idx
    cdef int status
    cdef long long total, pos
    cdef bint changed, has_watch
    cdef object out, row, watch_equal

    s.n_letters = n_letters
    s.n_classes = 0
    s.cap = 1024
    s.max_classes = max_classes
    s.steps = 0
    s.max_steps = max_steps
    s.parent = NULL
    s.table = NULL
    s.queue = NULL
    s.q_head = 0
    s.q_len = 0
    s.q_cap = 1024

    try:
        # flatten the relation words into one C buffer
        total = 0
        for lhs, rhs in relations:
            total += len(lhs) + len(rhs)
        has_watch = watch is not None
        if has_watch:
            total += len(watch[0]) + len(watch[1])
        words = <int *> malloc((total if total > 0 else 1) * sizeof(int))
        lhs_off = <int *> malloc((n_rels if n_rels > 0 else 1) * sizeof(int))
        lhs_len = <int *> malloc((n_rels if n_rels > 0 else 1) * sizeof(int))
        rhs_off = <int *> malloc((n_rels if n_rels > 0 else 1) * sizeof(int))
        rhs_len = <int *> malloc((n_rels if n_rels > 0 else 1) * sizeof(int))
        if (words == NULL or lhs_off == NULL or lhs_len == NULL
                or rhs_off == NULL or rhs_len == NULL):
            raise MemoryError()
        pos = 0
        r = 0
        for lhs, rhs in relations:
            lhs_off[r] = <int> pos
            lhs_len[r] = len(lhs)
            for a in lhs:
                words[pos] = a
                pos += 1
            rhs_off[r] = <int> pos
            rhs_len[r] = len(rhs)
            for a in rhs:
                words[pos] = a
                pos += 1
            r += 1
        if has_watch:
            w1_off = <int> pos
            w1_len = len(watch[0])
            for a in watch[0]:
                words[pos] = a
                pos += 1
            w2_off = <int> pos
            w2_len = len(watch[1])
            for a in watch[1]:
                words[pos] = a
                pos += 1

        s.parent = <int *> malloc(s.cap * sizeof(int))
        s.table = <int *> malloc((<size_t> s.cap)
                                 * (n_letters if n_letters > 0 else 1)
                                 * sizeof(int))
        s.queue = <int *> malloc(s.q_cap * 2 * sizeof(int))
        if s.parent == NULL or s.table == NULL or s.queue == NULL:
            raise MemoryError()
        s.parent[0] = 0
        if n_letters > 0:
            memset(s.table, 0xFF, n_letters * sizeof(int))
        s.n_classes = 1

        status = C_COMPLETE
        if has_watch:
            w1 = trace_define(&s, 0, words + w1_off, w1_len)
            if w1 == -1:
                status = C_CAPPED
            else:
                w2 = trace_define(&s, cfind(&s, 0), words + w2_off, w2_len)
                if w2 == -1:
                    status = C_CAPPED
                elif cfind(&s, w1) == cfind(&s, w2):
                    status = C_WATCH_MERGED

        if status == C_COMPLETE:
            c_idx = 0
            while c_idx < s.n_classes:
                if s.steps > s.max_steps:
                    status = C_CAPPED
                    break
                if cfind(&s, c_idx) != c_idx:
                    c_idx += 1
                    continue
                for r in range(n_rels):
                    rc = scan(&s, cfind(&s, c_idx),
                              words + lhs_off[r], lhs_len[r],
                              words + rhs_off[r], rhs_len[r])
                    if rc == 1:
                        status = C_CAPPED
                        break
                    if has_watch and w1 != -1 and cfind(&s, w1) == cfind(&s, w2):
                        status = C_WATCH_MERGED
                        break
                if status != C_COMPLETE:
                    break
                if cfind(&s, c_idx) == c_idx:
                    for k in range(s.n_letters):
                        if s.table[(<size_t> c_idx) * s.n_letters + k] == -1:
                            cid = new_class(&s)
                            if cid == -1:
                                status = C_CAPPED
                                break
                            s.table[(<size_t> c_idx) * s.n_letters + k] = cid
                    if status != C_COMPLETE:
                        break
                c_idx += 1

        # stability sweep: merged rows can violate already-scanned
        # relations, so re-scan until a pass makes no change
        if status == C_COMPLETE:
            changed = True
            while changed and status == C_COMPLETE:
                changed = False
                for c_idx in range(s.n_classes):
                    if s.steps > s.max_steps:
                        status = C_CAPPED
                        break
                    if cfind(&s, c_idx) != c_idx:
                        continue
                    for r in range(n_rels):
                        if cfind(&s, c_idx) != c_idx:
                            break
                        p = trace_total(&s, c_idx, words + lhs_off[r], lhs_len[r])
                        q = trace_total(&s, c_idx, words + rhs_off[r], rhs_len[r])
                        if p != q:
                            coincide(&s, p, q)
                            changed = True
                            if (has_watch and w1 != -1
                                    and cfind(&s, w1) == cfind(&s, w2)):
                                status = C_WATCH_MERGED
                                break
                    if status != C_COMPLETE:
                        break

        if status != C_COMPLETE:
            if status == C_WATCH_MERGED:
                return (C_WATCH_MERGED, None, True)
            return (C_CAPPED, None, None)

        renum = <int *> malloc(s.n_classes * sizeof(int))
        if renum == NULL:
            raise MemoryError()
        idx = 0
        for c_idx in range(s.n_classes):
            if cfind(&s, c_idx) == c_idx:
                renum[c_idx] = idx
                idx += 1
            else:
                renum[c_idx] = -1
        out = []
        for c_idx in range(s.n_classes):
            if renum[c_idx] == -1:
                continue
            row = []
            for k in range(s.n_letters):
                t = s.table[(<size_t> c_idx) * s.n_letters + k]
                row.append(renum[cfind(&s, t)])
            out.append(row)
        if has_watch:
            watch_equal = cfind(&s, w1) == cfind(&s, w2)
        else:
            watch_equal = None
        return (C_COMPLETE, out, watch_equal)
    finally:
        free(words)
        free(lhs_off)
        free(lhs_len)
        free(rhs_off)
        free(rhs_len)
        free(renum)
        free(s.parent)
        free(s.table)
        free(s.queue)
