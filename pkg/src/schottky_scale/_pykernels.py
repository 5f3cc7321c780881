"""Pure-Python kernels; reference implementation for the compiled module."""


def refine_colors(n, flat):
    """Stable vertex colouring of a multiplicity matrix.

    Colour ids are ranks of invariant signatures, so they are canonical:
    first ``(degree, loops)``, then ``(colour, sorted (colour, mult) of
    neighbours)`` until the number of classes stops growing.
    """
    deg = [0] * n
    for i in range(n):
        row = i * n
        deg[i] = sum(flat[row:row + n]) + flat[row + i]
    colors = _rank([(deg[i], flat[i * n + i]) for i in range(n)])
    while True:
        sigs = []
        for i in range(n):
            row = i * n
            nb = sorted((colors[j], flat[row + j]) for j in range(n) if j != i and flat[row + j])
            sigs.append((colors[i], tuple(nb)))
        new = _rank(sigs)
        if max(new) == max(colors):
            return new
        colors = new


def _rank(sigs):
    order = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def canonical_form(n, flat):
    """Canonical upper-triangular column sequence of a multiplicity matrix."""
    return canon_search(n, flat, refine_colors(n, flat))


def canon_search(n, flat, colors):
    """Lexicographically maximal column sequence over colour-compatible orders.

    ``flat`` is the row-major ``n x n`` multiplicity matrix and ``colors`` a
    vertex colouring whose sorted values fix which cell fills each position.
    Position ``k`` contributes the column ``M[p0][pk], ..., M[pk][pk]``.
    """
    slot = sorted(colors)
    size = n * (n + 1) // 2
    best = [-1] * size
    cur = [0] * size
    perm = [0] * n
    used = [False] * n

    def rec(k, start, tight):
        # tight: the current prefix equals best's prefix; returns True when
        # best was replaced, after which the prefix is tight again.
        if k == n:
            if not tight:
                best[:] = cur
                return True
            return False
        want = slot[k]
        updated = False
        for w in range(n):
            if used[w] or colors[w] != want:
                continue
            row = w * n
            for i in range(k):
                cur[start + i] = flat[row + perm[i]]
            cur[start + k] = flat[row + w]
            t = False
            if tight:
                cmp = 0
                for i in range(start, start + k + 1):
                    if cur[i] != best[i]:
                        cmp = 1 if cur[i] > best[i] else -1
                        break
                if cmp < 0:
                    continue
                t = cmp == 0
            used[w] = True
            perm[k] = w
            if rec(k + 1, start + k + 1, t):
                updated = True
                tight = True
            used[w] = False
        return updated

    rec(0, 0, True)
    return best


def prune_dead(succ):
    """Return the set of states of a finite digraph that reach a cycle.

    ``succ`` maps state index to a list of successor indices.  States with no
    live successor are removed repeatedly until none remain.
    """
    n = len(succ)
    pred = [[] for _ in range(n)]
    outdeg = [0] * n
    for s, ts in enumerate(succ):
        outdeg[s] = len(ts)
        for t in ts:
            pred[t].append(s)
    alive = [True] * n
    stack = [s for s in range(n) if outdeg[s] == 0]
    while stack:
        s = stack.pop()
        if not alive[s]:
            continue
        alive[s] = False
        for p in pred[s]:
            outdeg[p] -= 1
            if outdeg[p] == 0 and alive[p]:
                stack.append(p)
    return alive
