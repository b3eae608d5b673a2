"""Pure-Python congruence enumeration kernel.

Table-filling over the right action of letters on classes, with
relations applied at every class and a FIFO coincidence queue.  The
compiled kernel in _tc_core implements the same procedure step for
step; both produce identical renumbered tables.

Protocol constants shared by both kernels:

    status 0  complete: table is the dense right-action table
    status 1  capped: class or step budget exhausted, no table
    status 2  the watch pair merged before completion (early exit)
"""

from collections import deque

UNDEF = -1

STATUS_COMPLETE = 0
STATUS_CAPPED = 1
STATUS_WATCH_MERGED = 2


class _Capped(Exception):
    pass


def run(n_letters, relations, max_classes, max_steps, watch=None):
    """Enumerate the classes of the two-sided congruence.

    relations: sequence of (lhs, rhs) pairs of letter-id tuples.
    watch: optional (lhs, rhs) pair; when given, the run stops as soon
    as the two words provably fall in one class.

    Returns (status, table, watch_equal).  table is a list of rows
    (one per class, class 0 = empty word) when status is 0, else None.
    watch_equal is None without a watch, else a bool (True when status
    is 2).
    """
    parent = [0]
    table = [[UNDEF] * n_letters]
    queue = deque()
    steps = 0

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def new_class():
        cid = len(parent)
        if cid >= max_classes:
            raise _Capped
        parent.append(cid)
        table.append([UNDEF] * n_letters)
        return cid

    def trace_define(c, word):
        nonlocal steps
        for a in word:
            steps += 1
            t = table[c][a]
            if t == UNDEF:
                t = new_class()
                table[c][a] = t
            else:
                t = find(t)
            c = t
        return c

    def coincide(a, b):
        nonlocal steps
        queue.append((a, b))
        while queue:
            u, v = queue.popleft()
            u = find(u)
            v = find(v)
            if u == v:
                continue
            if v < u:
                u, v = v, u
            # smaller id survives, so class 0 is never displaced
            parent[v] = u
            row_v = table[v]
            row_u = table[u]
            for k in range(n_letters):
                steps += 1
                t = row_v[k]
                if t == UNDEF:
                    continue
                s = row_u[k]
                if s == UNDEF:
                    row_u[k] = t
                else:
                    fs = find(s)
                    ft = find(t)
                    if fs != ft:
                        queue.append((fs, ft))
            table[v] = None

    def scan(c, lhs, rhs):
        nonlocal steps
        p = trace_define(c, lhs)
        if not rhs:
            q = find(c)
            if q != p:
                coincide(p, q)
            return
        d = trace_define(find(c), rhs[:-1])
        last = rhs[-1]
        steps += 1
        t = table[d][last]
        if t == UNDEF:
            table[d][last] = p
        else:
            t = find(t)
            if t != p:
                coincide(t, p)

    def trace_total(c, word):
        nonlocal steps
        for a in word:
            steps += 1
            c = find(table[c][a])
        return c

    w1 = w2 = UNDEF

    def watch_merged():
        return w1 != UNDEF and find(w1) == find(w2)

    try:
        if watch is not None:
            w1 = trace_define(0, watch[0])
            w2 = trace_define(find(0), watch[1])
            if watch_merged():
                return (STATUS_WATCH_MERGED, None, True)

        c_idx = 0
        while c_idx < len(parent):
            if steps > max_steps:
                return (STATUS_CAPPED, None, None)
            if find(c_idx) != c_idx:
                c_idx += 1
                continue
            for lhs, rhs in relations:
                scan(find(c_idx), lhs, rhs)
                if watch_merged():
                    return (STATUS_WATCH_MERGED, None, True)
            if find(c_idx) == c_idx:
                row = table[c_idx]
                for k in range(n_letters):
                    if row[k] == UNDEF:
                        row[k] = new_class()
            c_idx += 1

        # stability sweep: merged rows can violate already-scanned
        # relations, so re-scan until a pass makes no change
        changed = True
        while changed:
            changed = False
            for c_idx in range(len(parent)):
                if steps > max_steps:
                    return (STATUS_CAPPED, None, None)
                if find(c_idx) != c_idx:
                    continue
                for lhs, rhs in relations:
                    if find(c_idx) != c_idx:
                        break
                    p = trace_total(c_idx, lhs)
                    q = trace_total(c_idx, rhs)
                    if p != q:
                        coincide(p, q)
                        changed = True
                        if watch_merged():
                            return (STATUS_WATCH_MERGED, None, True)
    except _Capped:
        return (STATUS_CAPPED, None, None)

    live = [c for c in range(len(parent)) if find(c) == c]
    renumber = {c: i for i, c in enumerate(live)}
    out = [[renumber[find(t)] for t in table[c]] for c in live]
    watch_equal = None if watch is None else find(w1) == find(w2)
    return (STATUS_COMPLETE, out, watch_equal)
