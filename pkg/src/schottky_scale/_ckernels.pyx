# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; must agree exactly with ``_pykernels``."""

from libc.stdlib cimport malloc, free


cdef struct Search:
    int n
    int *flat
    int *colors
    int *slot
    int *best
    int *cur
    int *perm
    char *used


cdef bint _rec(Search *s, int k, int start, bint tight) nogil:
    cdef int n = s.n
    cdef int w, i, row, cmp
    cdef bint t, updated = False
    cdef int size
    if k == n:
        if not tight:
            size = n * (n + 1) // 2
            for i in range(size):
                s.best[i] = s.cur[i]
            return True
        return False
    for w in range(n):
        if s.used[w] or s.colors[w] != s.slot[k]:
            continue
        row = w * n
        for i in range(k):
            s.cur[start + i] = s.flat[row + s.perm[i]]
        s.cur[start + k] = s.flat[row + w]
        t = False
        if tight:
            cmp = 0
            for i in range(start, start + k + 1):
                if s.cur[i] != s.best[i]:
                    cmp = 1 if s.cur[i] > s.best[i] else -1
                    break
            if cmp < 0:
                continue
            t = cmp == 0
        s.used[w] = 1
        s.perm[k] = w
        if _rec(s, k + 1, start + k + 1, t):
            updated = True
            tight = True
        s.used[w] = 0
    return updated


cdef enum:
    MAXN = 32


cdef int _sigcmp(int *a, int la, int *b, int lb) nogil:
    cdef int i, m = la if la < lb else lb
    for i in range(m):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    if la == lb:
        return 0
    return -1 if la < lb else 1


cdef int _rank(int n, int *sig, int *slen, int width, int *out) nogil:
    # dense ranks of the signatures in sorted order; returns class count
    cdef int order[MAXN]
    cdef int i, j, x, classes
    for i in range(n):
        order[i] = i
    for i in range(1, n):
        x = order[i]
        j = i - 1
        while j >= 0 and _sigcmp(sig + order[j] * width, slen[order[j]], sig + x * width, slen[x]) > 0:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = x
    classes = 0
    for i in range(n):
        if i > 0 and _sigcmp(sig + order[i - 1] * width, slen[order[i - 1]],
                             sig + order[i] * width, slen[order[i]]) != 0:
            classes += 1
        out[order[i]] = classes
    return classes + 1


cdef void _refine(int n, int *flat, int *colors) nogil:
    cdef int width = n + 1
    cdef int sig[MAXN * (MAXN + 1)]
    cdef int slen[MAXN]
    cdef int new[MAXN]
    cdef int i, j, k, x, deg, row, classes, count
    for i in range(n):
        row = i * n
        deg = flat[row + i]
        for j in range(n):
            deg += flat[row + j]
        sig[i * width] = deg
        sig[i * width + 1] = flat[row + i]
        slen[i] = 2
    classes = _rank(n, sig, slen, width, colors)
    while True:
        for i in range(n):
            row = i * n
            sig[i * width] = colors[i]
            count = 0
            for j in range(n):
                if j != i and flat[row + j]:
                    x = colors[j] * 256 + flat[row + j]
                    k = count
                    while k > 0 and sig[i * width + k] > x:
                        sig[i * width + k + 1] = sig[i * width + k]
                        k -= 1
                    sig[i * width + k + 1] = x
                    count += 1
            slen[i] = count + 1
        count = _rank(n, sig, slen, width, new)
        for i in range(n):
            colors[i] = new[i]
        if count == classes:
            return
        classes = count


def refine_colors(int n, flat):
    if n > MAXN:
        raise ValueError(f"at most {MAXN} vertices")
    cdef int f[MAXN * MAXN]
    cdef int colors[MAXN]
    cdef int i
    for i in range(n * n):
        f[i] = flat[i]
    _refine(n, f, colors)
    return [colors[i] for i in range(n)]


def canonical_form(int n, flat):
    return canon_search(n, flat, refine_colors(n, flat))


def canon_search(int n, flat, colors):
    cdef Search s
    cdef int i, size = n * (n + 1) // 2
    s.n = n
    s.flat = <int *> malloc(n * n * sizeof(int))
    s.colors = <int *> malloc(n * sizeof(int))
    s.slot = <int *> malloc(n * sizeof(int))
    s.best = <int *> malloc(size * sizeof(int))
    s.cur = <int *> malloc(size * sizeof(int))
    s.perm = <int *> malloc(n * sizeof(int))
    s.used = <char *> malloc(n)
    try:
        for i in range(n * n):
            s.flat[i] = flat[i]
        slot = sorted(colors)
        for i in range(n):
            s.colors[i] = colors[i]
            s.slot[i] = slot[i]
            s.used[i] = 0
        for i in range(size):
            s.best[i] = -1
        with nogil:
            _rec(&s, 0, 0, True)
        return [s.best[i] for i in range(size)]
    finally:
        free(s.flat); free(s.colors); free(s.slot)
        free(s.best); free(s.cur); free(s.perm); free(s.used)


def prune_dead(succ):
    cdef int n = len(succ)
    cdef int s, t, p, top = 0
    pred = [[] for _ in range(n)]
    cdef int *outdeg = <int *> malloc(max(n, 1) * sizeof(int))
    cdef int *stack = <int *> malloc(max(n, 1) * sizeof(int))
    cdef char *alive = <char *> malloc(max(n, 1))
    try:
        for s in range(n):
            ts = succ[s]
            outdeg[s] = len(ts)
            alive[s] = 1
            for t in ts:
                pred[t].append(s)
        for s in range(n):
            if outdeg[s] == 0:
                stack[top] = s
                top += 1
                alive[s] = 0
        while top:
            top -= 1
            s = stack[top]
            for p in pred[s]:
                outdeg[p] -= 1
                if outdeg[p] == 0 and alive[p]:
                    alive[p] = 0
                    stack[top] = p
                    top += 1
        return [bool(alive[s]) for s in range(n)]
    finally:
        free(outdeg); free(stack); free(alive)
