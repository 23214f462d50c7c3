# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled trace-monoid kernels; same contracts as ``_fallback``."""

cdef enum:
    MAXLEN = 64


cdef tuple _normalize(tuple word, tuple masks):
    cdef int n = len(word)
    if n > MAXLEN:
        from ._fallback import normalize
        return normalize(word, masks)
    cdef int rest[MAXLEN]
    cdef unsigned long long cmask[MAXLEN]
    cdef int i, j, x, best, best_pos, remaining = n
    cdef unsigned long long seen
    cdef list out = []
    for i in range(n):
        rest[i] = word[i]
    for i in range(len(masks)):
        cmask[i] = masks[i]
    while remaining:
        seen = 0
        best = -1
        best_pos = -1
        for i in range(remaining):
            x = rest[i]
            if (seen & ~cmask[x]) == 0 and (best < 0 or x < best):
                best = x
                best_pos = i
            seen |= (<unsigned long long>1) << x
        out.append(best)
        for j in range(best_pos, remaining - 1):
            rest[j] = rest[j + 1]
        remaining -= 1
    return tuple(out)


def normalize(word, masks):
    if len(masks) > MAXLEN:
        from ._fallback import normalize as slow
        return slow(word, masks)
    return _normalize(tuple(word), tuple(masks))


def series_mul(dict left, dict right, int bound, masks, dict cache):
    cdef dict by_degree = {}
    cdef dict out = {}
    cdef int room, d
    cdef tuple u, v, key, w
    cdef object a, b, prev
    cdef list bucket
    masks = tuple(masks)
    cdef bint fast = len(masks) <= MAXLEN
    for v, b in right.items():
        d = len(v)
        bucket = by_degree.get(d)
        if bucket is None:
            by_degree[d] = bucket = []
        bucket.append((v, b))
    cdef list degrees = sorted(by_degree)
    for u, a in left.items():
        room = bound - len(u)
        for d in degrees:
            if d > room:
                break
            for v, b in <list>by_degree[d]:
                key = u + v
                w = cache.get(key)
                if w is None:
                    w = _normalize(key, masks) if fast else normalize(key, masks)
                    cache[key] = w
                prev = out.get(w)
                out[w] = a * b if prev is None else prev + a * b
    return {w: a for w, a in out.items() if a}


def expand_word(list syllables, right, degree, int n, int bound, Py_ssize_t size):
    cdef int[::1] rt = right
    cdef int[::1] dg = degree
    cdef list s = [0] * size
    cdef list coeffs
    cdef Py_ssize_t i, v, limit = 0
    cdef int x, j
    cdef object a
    s[0] = 1
    # ids are numbered by nondecreasing degree; top-degree ids never spread
    while limit < size and dg[limit] < bound:
        limit += 1
    for x, coeffs in syllables:
        # descending ids: every target has higher degree, so is already read
        for i in range(limit - 1, -1, -1):
            a = s[i]
            if not a:
                continue
            v = i
            for j in range(1, bound - dg[i] + 1):
                v = rt[v * n + x]
                s[v] = s[v] + coeffs[j] * a
    return s
